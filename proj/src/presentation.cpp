#include "grpd/presentation.hpp"

#include <algorithm>
#include <map>

namespace grpd {

namespace {

// Arrow lookup for a left semidirect space: arrows with the same
// underlying arrow g are contiguous and ordered by source.
class ArrowIndex {
 public:
  explicit ArrowIndex(const SemidirectSpace& s) : space_(*s.groupoid) {
    const auto& proj = s.projection.on_arrows;
    first_.assign(s.projection.codomain->num_arrows(), 0);
    last_.assign(first_.size(), 0);
    for (ArrId u = static_cast<ArrId>(proj.size()); u-- > 0;) first_[proj[u]] = u;
    for (ArrId u = 0; u < proj.size(); ++u) last_[proj[u]] = u + 1;
  }

  // The arrow (g, f); kNone if there is none.
  ArrId operator()(ArrId g, Id f) const {
    Id lo = first_[g], hi = last_[g];
    while (lo < hi) {
      const Id mid = lo + (hi - lo) / 2;
      if (space_.src(mid) < f) lo = mid + 1;
      else hi = mid;
    }
    return lo < last_[g] && space_.src(lo) == f ? lo : kNone;
  }

 private:
  const FiniteGroupoid& space_;
  std::vector<Id> first_, last_;
};

std::string object_witness(const GroupoidActionOnSet& a, Id f) {
  return a.point_label(f) + " over " + a.groupoid->object_label(a.base[f]);
}

void check_bundle(const EquivariantBundleData& d) {
  const FiniteGroupoid& G = *d.groupoid;
  const GroupoidActionOnSet& F = d.bundle;
  const ActionOnSet& L = d.fiber_action;
  if (F.side != Side::kLeft) throw Refusal("the groupoid must act on the bundle from the left");
  if (L.side != Side::kRight) throw Refusal("the structure group must act on the right");
  if (L.carrier != F.carrier) throw Refusal("the structure group acts on a different set");
  if (const auto r = validate_action(F); !r.ok()) throw Refusal("bundle action invalid:\n" + r.to_string());
  if (const auto r = validate_action(L); !r.ok()) throw Refusal("structure group action invalid:\n" + r.to_string());

  const FiniteGroup& Lg = L.group;
  for (Id f = 0; f < F.carrier; ++f)
    for (Elem l = 0; l < Lg.order(); ++l) {
      const Id fl = L.act(f, l);
      if (F.base[fl] != F.base[f])
        throw Refusal("base map not invariant: " + object_witness(F, f) + " moved by " + Lg.label(l));
      for (ArrId g : G.arrows_from(F.base[f]))
        if (F.act(fl, g) != L.act(F.act(f, g), l))
          throw Refusal("actions do not commute at " + object_witness(F, f) + ", g = " +
                        G.arrow_label(g) + ", l = " + Lg.label(l));
    }

  std::vector<std::vector<Id>> fiber(G.num_objects());
  for (Id f = 0; f < F.carrier; ++f) fiber[F.base[f]].push_back(f);
  for (ObjId x = 0; x < G.num_objects(); ++x)
    if (fiber[x].empty()) throw Refusal("not principal: empty fiber over " + G.object_label(x));
  for (Id f = 0; f < F.carrier; ++f) {
    std::vector<Id> orbit;
    for (Elem l = 0; l < Lg.order(); ++l) orbit.push_back(L.act(f, l));
    std::sort(orbit.begin(), orbit.end());
    if (std::adjacent_find(orbit.begin(), orbit.end()) != orbit.end())
      throw Refusal("not principal: the action is not free at " + object_witness(F, f));
    if (orbit != fiber[F.base[f]])
      throw Refusal("not principal: the action is not transitive on the fiber over " +
                    G.object_label(F.base[f]));
  }

  if (d.k_on_groupoid.has_value() != d.k_on_bundle.has_value())
    throw Refusal("K must act on both the groupoid and the bundle");
  if (!d.k_on_groupoid) return;
  const ActionOnGroupoid& Kg = *d.k_on_groupoid;
  const ActionOnSet& Kf = *d.k_on_bundle;
  const FiniteGroup& K = Kg.group;
  if (!(Kf.group == K) || Kf.carrier != F.carrier || Kf.side != Side::kRight)
    throw Refusal("K acts inconsistently on the groupoid and the bundle");
  if (const auto r = validate_action(Kg); !r.ok()) throw Refusal("K action on the groupoid invalid:\n" + r.to_string());
  if (const auto r = validate_action(Kf); !r.ok()) throw Refusal("K action on the bundle invalid:\n" + r.to_string());
  for (Id f = 0; f < F.carrier; ++f)
    for (Elem k = 0; k < K.order(); ++k) {
      const Id fk = Kf.act(f, k);
      if (F.base[fk] != Kg.act_object(F.base[f], k))
        throw Refusal("base map not K-equivariant at " + object_witness(F, f) + ", k = " + K.label(k));
      for (Elem l = 0; l < Lg.order(); ++l)
        if (L.act(fk, l) != Kf.act(L.act(f, l), k))
          throw Refusal("K and L do not commute at " + object_witness(F, f));
      for (ArrId g : G.arrows_from(F.base[f]))
        if (Kf.act(F.act(f, g), k) != F.act(fk, Kg.act_arrow(g, k)))
          throw Refusal("(g·f)·k != (g·k)·(f·k) at " + object_witness(F, f) + ", g = " +
                        G.arrow_label(g) + ", k = " + K.label(k));
    }
}

void record_equivalence(Transcript& t, const StrictHom& phi, const std::string& what) {
  const ValidationReport hom = validate_strict_hom(phi);
  t.record(what + " is a strict homomorphism", hom.ok(), hom.ok() ? "" : hom.to_string());
  if (!hom.ok()) return;
  const EssentialEquivalence e = is_essential_equivalence(phi);
  t.record(what + " essentially surjective", e.essentially_surjective,
           e.essentially_surjective ? "" : e.witness);
  t.record(what + " fully faithful", e.fully_faithful, e.fully_faithful ? "" : e.witness);
  const EquivalenceCheck eq = is_equivalence(from_strict_hom(phi));
  t.record("bibundle of " + what + " is an equivalence", eq.ok(), eq.ok() ? "" : eq.to_string());
}

ChartedGroupoid pull_back_charts(const ChartedGroupoid& c, const SemidirectSpace& s,
                                 const std::vector<ObjId>& base) {
  ChartedGroupoid out{s.groupoid, c.n, {}, {}};
  for (ObjId p = 0; p < s.groupoid->num_objects(); ++p) out.charts.push_back(c.charts[base[p]]);
  for (ArrId u = 0; u < s.groupoid->num_arrows(); ++u) out.effect.push_back(c.effect[s.projection.on_arrows[u]]);
  return out;
}

// First object whose stabilizer is not isomorphic to the one at object 0.
ObjId stabilizer_mismatch(const FiniteGroupoid& G) {
  if (G.num_objects() == 0) return kNone;
  const Stabilizer t = stabilizer(G, 0);
  for (ObjId x = 1; x < G.num_objects(); ++x) {
    const Stabilizer s = stabilizer(G, x);
    if (s.group.order() != t.group.order() || !are_isomorphic(t.group, s.group)) return x;
  }
  return kNone;
}

}  // namespace

PrincipalQuotient principal_quotient_equivalence(const EquivariantBundleData& d,
                                                 const Limits& limits) {
  check_bundle(d);
  const FiniteGroupoid& G = *d.groupoid;
  const GroupoidActionOnSet& F = d.bundle;
  const ActionOnSet& L = d.fiber_action;
  const std::size_t l = L.group.order();

  std::size_t space_arrows = 0;
  for (Id f = 0; f < F.carrier; ++f) space_arrows += G.arrows_from(F.base[f]).size();
  limits.check(space_arrows, "arrows of G ⋉ F");
  limits.check(space_arrows * l, "arrows of (G ⋉ F) ⋊ L");

  PrincipalQuotient out;
  out.action_groupoid = semidirect_space(F);
  const FiniteGroupoid& S = *out.action_groupoid.groupoid;
  const auto& proj = out.action_groupoid.projection.on_arrows;
  const ArrowIndex index(out.action_groupoid);

  out.l_action = {L.group, out.action_groupoid.groupoid, L.table, {}};
  out.l_action.on_arrows.resize(S.num_arrows() * l);
  for (ArrId u = 0; u < S.num_arrows(); ++u)
    for (Elem e = 0; e < l; ++e) out.l_action.on_arrows[u * l + e] = index(proj[u], L.act(S.src(u), e));

  if (d.k_on_groupoid) {
    const ActionOnGroupoid& Kg = *d.k_on_groupoid;
    const ActionOnSet& Kf = *d.k_on_bundle;
    const std::size_t k = Kg.group.order();
    ActionOnGroupoid ka{Kg.group, out.action_groupoid.groupoid, Kf.table, {}};
    ka.on_arrows.resize(S.num_arrows() * k);
    for (ArrId u = 0; u < S.num_arrows(); ++u)
      for (Elem e = 0; e < k; ++e) ka.on_arrows[u * k + e] = index(Kg.act_arrow(proj[u], e), Kf.act(S.src(u), e));
    out.k_action = std::move(ka);
  }

  Transcript& t = out.transcript;
  const ValidationReport vs = validate_groupoid(S);
  t.record("G ⋉ F is a groupoid", vs.ok(), vs.ok() ? "" : vs.to_string());
  const ValidationReport vl = validate_action(out.l_action);
  t.record("L acts on G ⋉ F by automorphisms", vl.ok(), vl.ok() ? "" : vl.to_string());
  if (!vl.ok()) return out;
  if (out.k_action) {
    const ValidationReport vk = validate_action(*out.k_action);
    t.record("K acts on G ⋉ F by automorphisms", vk.ok(), vk.ok() ? "" : vk.to_string());
    if (!vk.ok()) return out;
    const std::string w = commuting_witness(*out.k_action, out.l_action);
    t.record("K and L commute on G ⋉ F", w.empty(), w);
  }

  out.quotient = semidirect_group(out.l_action);
  const FiniteGroupoid& Q = *out.quotient;
  out.projection = {out.quotient, d.groupoid, F.base, std::vector<ArrId>(Q.num_arrows())};
  for (ArrId a = 0; a < Q.num_arrows(); ++a) out.projection.on_arrows[a] = proj[a / l];
  record_equivalence(t, out.projection, "projection (G ⋉ F) ⋊ L -> G");

  if (out.k_action) {
    const ActionOnGroupoid& Kg = *d.k_on_groupoid;
    const ActionOnGroupoid& Ks = *out.k_action;
    const std::size_t k = Kg.group.order();
    bool equivariant = true;
    std::string w;
    for (ObjId f = 0; f < S.num_objects() && equivariant; ++f)
      for (Elem e = 0; e < k; ++e)
        if (F.base[Ks.act_object(f, e)] != Kg.act_object(F.base[f], e)) {
          equivariant = false;
          w = "object " + S.object_label(f);
          break;
        }
    for (ArrId a = 0; a < Q.num_arrows() && equivariant; ++a)
      for (Elem e = 0; e < k; ++e) {
        const ArrId moved = Ks.act_arrow(a / l, e) * static_cast<ArrId>(l) + a % l;
        if (out.projection.on_arrows[moved] != Kg.act_arrow(out.projection.on_arrows[a], e)) {
          equivariant = false;
          w = "arrow " + Q.arrow_label(a);
          break;
        }
      }
    t.record("projection is K-equivariant", equivariant, w);
  }
  return out;
}

FrameConstruction frame_construction(const ChartedGroupoid& c, const Limits& limits) {
  if (const auto r = validate_charted(c); !r.ok()) throw Refusal("invalid charted groupoid:\n" + r.to_string());
  const FiniteGroupoid& G = *c.base;
  const std::size_t n = c.n;
  const std::size_t nf = factorial(n);
  limits.check(G.num_objects() * nf, "frames");
  limits.check(G.num_arrows() * nf * nf, "arrows of (G ⋉ F) ⋊ Sym(n)");

  FrameConstruction out;
  out.sym = FiniteGroup::symmetric(n);
  const FiniteGroup& S = out.sym;
  std::vector<Elem> effect_elem(G.num_arrows());
  for (ArrId g = 0; g < G.num_arrows(); ++g) effect_elem[g] = S.find_permutation(c.effect[g]);

  GroupoidActionOnSet F{c.base, G.num_objects() * nf, {}, Side::kLeft, {}, {}};
  F.table.assign(F.carrier * G.num_arrows(), kNone);
  ActionOnSet L{S, F.carrier, Side::kRight, std::vector<Id>(F.carrier * nf), {}};
  for (ObjId x = 0; x < G.num_objects(); ++x)
    for (Elem i = 0; i < nf; ++i) {
      const Id p = static_cast<Id>(x * nf + i);
      F.base.push_back(x);
      F.labels.push_back("(" + G.object_label(x) + "," + perm::to_string(S.permutation(i)) + ")");
      out.frame_of.push_back(S.permutation(i));
      for (ArrId g : G.arrows_from(x))
        F.table[p * G.num_arrows() + g] = static_cast<Id>(G.tgt(g) * nf + S.mul(effect_elem[g], i));
      for (Elem s = 0; s < nf; ++s) L.table[p * nf + s] = static_cast<Id>(x * nf + S.mul(i, s));
    }
  L.labels = F.labels;

  out.quotient = principal_quotient_equivalence({c.base, F, L, std::nullopt, std::nullopt}, limits);
  out.frames = pull_back_charts(c, out.quotient.action_groupoid, F.base);

  Transcript& t = out.transcript;
  const ArrId w = effective_stabilizer_witness(out.frames);
  t.record("G ⋉ F purely ineffective", w == kNone,
           w == kNone ? "" : "arrow " + out.frames.base->arrow_label(w));

  // Loops at (x, f) project isomorphically onto S0(x).
  const LocalSystem s0 = ineffective_stabilizers(c);
  const LocalSystem s0f = ineffective_stabilizers(out.frames);
  const auto& proj = out.quotient.action_groupoid.projection.on_arrows;
  const FiniteGroupoid& H = *out.frames.base;
  std::string bad;
  for (ObjId p = 0; p < H.num_objects() && bad.empty(); ++p) {
    std::vector<ArrId> image;
    for (ArrId u : s0f.fiber[p]) image.push_back(proj[u]);
    if (image != s0.fiber[F.base[p]]) {
      bad = "fiber at " + H.object_label(p) + " does not match S0(" + G.object_label(F.base[p]) + ")";
      break;
    }
    for (ArrId u : s0f.fiber[p])
      for (ArrId v : s0f.fiber[p])
        if (proj[H.comp(u, v)] != G.comp(proj[u], proj[v])) bad = "projection not multiplicative at " + H.object_label(p);
  }
  t.record("S0 of G ⋉ F is the pullback of S0", bad.empty(), bad);
  t.append(out.quotient.transcript, "quotient: ");
  return out;
}

ArrId BandTrivialization::c(Id point, Elem a) const {
  const FiniteGroupoid& H = *g_prime.base;
  const ArrId g = phi[point][a];
  const auto& proj = quotient.action_groupoid.projection.on_arrows;
  for (ArrId u : H.arrows_from(point))
    if (proj[u] == g) return u;
  return kNone;
}

BandTrivialization band_trivialization(const ChartedGroupoid& c,
                                       const std::optional<ActionOnGroupoid>& k,
                                       const Limits& limits) {
  const FiniteGroupoid& G = *c.base;
  if (const ArrId w = effective_stabilizer_witness(c); w != kNone)
    throw Refusal("not purely ineffective: stabilizer arrow " + G.arrow_label(w) + " has effect " +
                  perm::to_string(c.effect[w]));
  if (G.num_objects() == 0) throw Refusal("the groupoid has no objects");

  BandTrivialization out;
  out.x0 = 0;
  out.band = stabilizer(G, 0);
  const FiniteGroup& T = out.band.group;
  std::vector<Stabilizer> stabs;
  for (ObjId x = 0; x < G.num_objects(); ++x) {
    stabs.push_back(stabilizer(G, x));
    if (stabs[x].group.order() != T.order() || !are_isomorphic(T, stabs[x].group))
      throw Refusal("stabilizers at " + G.object_label(0) + " and " + G.object_label(x) +
                    " are not isomorphic");
  }
  out.aut = automorphism_group(T, &out.automorphisms);
  out.center = center(T);
  const std::size_t na = out.aut.order();
  limits.check(G.num_objects() * na, "band frames");

  // Points (x, phi) ordered by x then phi.
  std::map<std::vector<ArrId>, Id> point_of;
  GroupoidActionOnSet F{c.base, 0, {}, Side::kLeft, {}, {}};
  for (ObjId x = 0; x < G.num_objects(); ++x) {
    const std::size_t first = F.base.size() + 1;
    for (const GroupHom& iso : all_isomorphisms(T, stabs[x].group)) {
      std::vector<ArrId> phi;
      for (Elem e : iso) phi.push_back(stabs[x].arrows[e]);
      point_of.emplace(phi, static_cast<Id>(out.phi.size()));
      F.base.push_back(x);
      F.labels.push_back("(" + G.object_label(x) + ",phi" + std::to_string(F.base.size() - first) + ")");
      out.phi.push_back(std::move(phi));
    }
  }
  F.carrier = out.phi.size();
  auto lookup = [&](const std::vector<ArrId>& phi) {
    auto it = point_of.find(phi);
    if (it == point_of.end()) throw Refusal("transported map is not an isomorphism onto a stabilizer");
    return it->second;
  };

  F.table.assign(F.carrier * G.num_arrows(), kNone);
  ActionOnSet A{out.aut, F.carrier, Side::kRight, std::vector<Id>(F.carrier * na), F.labels};
  std::optional<ActionOnSet> KF;
  if (k) KF = ActionOnSet{k->group, F.carrier, Side::kRight, std::vector<Id>(F.carrier * k->group.order()), F.labels};
  for (Id p = 0; p < F.carrier; ++p) {
    const auto& phi = out.phi[p];
    std::vector<ArrId> img(phi.size());
    for (ArrId g : G.arrows_from(F.base[p])) {
      for (std::size_t i = 0; i < phi.size(); ++i) img[i] = G.comp(G.comp(g, phi[i]), G.inv(g));
      F.table[p * G.num_arrows() + g] = lookup(img);
    }
    for (Elem lam = 0; lam < na; ++lam) {
      for (std::size_t i = 0; i < phi.size(); ++i) img[i] = phi[out.automorphisms[lam][i]];
      A.table[p * na + lam] = lookup(img);
    }
    if (KF)
      for (Elem e = 0; e < k->group.order(); ++e) {
        for (std::size_t i = 0; i < phi.size(); ++i) img[i] = k->act_arrow(phi[i], e);
        KF->table[p * k->group.order() + e] = lookup(img);
      }
  }

  out.quotient = principal_quotient_equivalence({c.base, F, A, k, KF}, limits);
  out.g_prime = pull_back_charts(c, out.quotient.action_groupoid, F.base);
  const FiniteGroupoid& H = *out.g_prime.base;
  const auto& proj = out.quotient.action_groupoid.projection.on_arrows;
  Transcript& t = out.transcript;

  const ArrId w = effective_stabilizer_witness(out.g_prime);
  t.record("G' purely ineffective", w == kNone, w == kNone ? "" : "arrow " + H.arrow_label(w));

  std::string bad;
  for (ObjId p = 0; p < H.num_objects() && bad.empty(); ++p) {
    std::vector<ArrId> loops;
    for (ArrId u : H.hom(p, p)) loops.push_back(proj[u]);
    std::sort(loops.begin(), loops.end());
    const Stabilizer& sx = stabs[F.base[p]];
    std::vector<ArrId> z;
    for (Elem e : center(sx.group)) z.push_back(sx.arrows[e]);
    std::sort(z.begin(), z.end());
    if (loops != z) bad = "stabilizer at " + H.object_label(p) + " is not Z(S0(" + G.object_label(F.base[p]) + "))";
  }
  t.record("stabilizer of (x, phi) is Z(S0(x))", bad.empty(), bad);

  bad.clear();
  for (ObjId p = 0; p < H.num_objects() && bad.empty(); ++p) {
    std::vector<ArrId> image;
    for (Elem a : out.center) {
      const ArrId u = out.c(p, a);
      if (u == kNone || H.src(u) != p || H.tgt(u) != p) {
        bad = "c(" + H.object_label(p) + ", " + T.label(a) + ") is not a loop";
        break;
      }
      image.push_back(u);
      for (Elem b : out.center)
        if (out.c(p, T.mul(a, b)) != H.comp(u, out.c(p, b))) bad = "c not multiplicative at " + H.object_label(p);
    }
    std::sort(image.begin(), image.end());
    if (bad.empty() && image != H.hom(p, p)) bad = "c is not onto the stabilizer at " + H.object_label(p);
  }
  t.record("c is an isomorphism of local systems", bad.empty(), bad);

  bad.clear();
  std::size_t tuples = 0;
  for (ArrId u = 0; u < H.num_arrows() && bad.empty(); ++u)
    for (Elem a : out.center) {
      ++tuples;
      if (H.comp(H.comp(u, out.c(H.src(u), a)), H.inv(u)) != out.c(H.tgt(u), a)) {
        bad = "arrow " + H.arrow_label(u) + ", a = " + T.label(a);
        break;
      }
    }
  t.record("g c(p, a) g^-1 = c(q, a)", bad.empty(), bad.empty() ? std::to_string(tuples) + " tuples" : bad);

  bad.clear();
  tuples = 0;
  const ActionOnGroupoid& la = out.quotient.l_action;
  for (ObjId p = 0; p < H.num_objects() && bad.empty(); ++p)
    for (Elem lam = 0; lam < na && bad.empty(); ++lam)
      for (Elem a : out.center) {
        ++tuples;
        const Elem back = out.automorphisms[out.aut.inv(lam)][a];
        if (la.act_arrow(out.c(p, a), lam) != out.c(la.act_object(p, lam), back)) {
          bad = "point " + H.object_label(p) + ", lambda = " + out.aut.label(lam) + ", a = " + T.label(a);
          break;
        }
      }
  t.record("c((x, phi)·lambda, lambda^-1(a)) = c((x, phi), a)·lambda", bad.empty(),
           bad.empty() ? std::to_string(tuples) + " tuples" : bad);

  if (out.quotient.k_action) {
    bad.clear();
    tuples = 0;
    const ActionOnGroupoid& ka = *out.quotient.k_action;
    for (ObjId p = 0; p < H.num_objects() && bad.empty(); ++p)
      for (Elem e = 0; e < ka.group.order() && bad.empty(); ++e)
        for (Elem a : out.center) {
          ++tuples;
          if (ka.act_arrow(out.c(p, a), e) != out.c(ka.act_object(p, e), a)) {
            bad = "point " + H.object_label(p) + ", k = " + ka.group.label(e) + ", a = " + T.label(a);
            break;
          }
        }
    t.record("c((x, phi)·k, a) = c((x, phi), a)·k", bad.empty(),
             bad.empty() ? std::to_string(tuples) + " tuples" : bad);
  }
  t.append(out.quotient.transcript, "quotient: ");
  return out;
}

PresentationCertificate present(const ChartedGroupoid& c, const Limits& limits) {
  PresentationCertificate cert;
  cert.source = c;
  cert.n = c.n;
  cert.stage = "frames";
  Transcript& t = cert.transcript;

  const FrameConstruction fr = frame_construction(c, limits);
  cert.frame_points = fr.frames.base->num_objects();
  t.append(fr.transcript, "frames: ");
  const FiniteGroupoid& H1 = *fr.frames.base;
  if (const ObjId x = stabilizer_mismatch(H1); x != kNone) {
    t.record("ineffective stabilizers of G ⋉ F all isomorphic", false,
             H1.object_label(0) + " and " + H1.object_label(x));
    return cert;
  }
  t.record("ineffective stabilizers of G ⋉ F all isomorphic", true);

  cert.stage = "band";
  const BandTrivialization band = band_trivialization(fr.frames, fr.quotient.l_action, limits);
  cert.band_points = band.g_prime.base->num_objects();
  t.append(band.transcript, "band: ");
  cert.band = band.band.group;
  cert.center = subgroup(band.band.group, band.center);

  const ActionOnGroupoid& sym_on_h = *band.quotient.k_action;
  const ActionOnGroupoid& aut_on_h = band.quotient.l_action;
  const TwoGroupSemidirect two = check_two_group_semidirect(sym_on_h, aut_on_h);
  t.record("(H ⋊ Sym(n)) ⋊ Aut(T) is isomorphic to H ⋊ (Sym(n) x Aut(T))", two.verified,
           two.verified ? "" : two.report.to_string());

  cert.presented = band.g_prime;
  cert.k_action = product_action(sym_on_h, aut_on_h);
  cert.k = cert.k_action->group;
  cert.quotient = two.combined;
  const FiniteGroupoid& HK = *cert.quotient;
  const std::size_t k = cert.k.order();

  const auto& to_h1 = band.quotient.action_groupoid.projection;
  const auto& to_g = fr.quotient.action_groupoid.projection;
  StrictHom phi{cert.quotient, c.base, std::vector<ObjId>(HK.num_objects()),
                std::vector<ArrId>(HK.num_arrows())};
  for (ObjId p = 0; p < HK.num_objects(); ++p) phi.on_objects[p] = to_g.on_objects[to_h1.on_objects[p]];
  for (ArrId a = 0; a < HK.num_arrows(); ++a) phi.on_arrows[a] = to_g.on_arrows[to_h1.on_arrows[a / k]];
  record_equivalence(t, phi, "projection H ⋊ K -> G");
  cert.projection = phi;
  cert.equivalence = from_strict_hom(phi);

  const ChartedGroupoid& H = *cert.presented;
  t.record("H purely ineffective", is_purely_ineffective(H));
  std::string bad;
  for (ObjId p = 0; p < H.base->num_objects(); ++p) {
    const Stabilizer s = stabilizer(*H.base, p);
    if (s.group.order() != cert.center.order() || !are_isomorphic(s.group, cert.center)) {
      bad = "stabilizer at " + H.base->object_label(p);
      break;
    }
  }
  t.record("stabilizers of H isomorphic to Z(T)", bad.empty(), bad);

  const CoarseMap cm = induced_coarse_map(*cert.equivalence);
  t.record("coarse classes preserved", cm.bijective, cm.witness);
  bad.clear();
  if (cm.bijective)
    for (Id i = 0; i < cm.source.size(); ++i) {
      const ObjId x = cm.source.classes[i][0];
      const StabilizerHom sh = induced_stabilizer_hom(*cert.equivalence, x, phi.on_objects[x]);
      if (!sh.isomorphism) {
        bad = "class of " + HK.object_label(x);
        break;
      }
    }
  t.record("stabilizer types preserved", cm.bijective && bad.empty(), bad);
  cert.stage = "complete";
  return cert;
}

TrivialCenterPresentation present_trivial_center(const ChartedGroupoid& c, const Limits& limits) {
  TrivialCenterPresentation out;
  out.presentation = present(c, limits);
  const PresentationCertificate& pc = out.presentation;
  if (!pc.complete()) throw Refusal("presentation stopped at stage " + pc.stage);
  if (pc.center.order() != 1)
    throw Refusal("Z(T) has order " + std::to_string(pc.center.order()));

  const FiniteGroupoid& H = *pc.presented->base;
  const std::optional<CoarseQuotient> q = equivalent_to_set(H);
  Transcript& t = out.transcript;
  t.record("H has trivial stabilizers", q.has_value());
  if (!q) return out;

  const ActionOnGroupoid& ka = *pc.k_action;
  const std::size_t k = ka.group.order();
  out.p_action = {ka.group, q->size(), Side::kRight, std::vector<Id>(q->size() * k), {}};
  for (Id i = 0; i < q->size(); ++i) {
    out.p_action.labels.push_back("[" + H.object_label(q->classes[i][0]) + "]");
    for (Elem e = 0; e < k; ++e) out.p_action.table[i * k + e] = q->class_of[ka.act_object(q->classes[i][0], e)];
  }
  const ValidationReport va = validate_action(out.p_action);
  t.record("K acts on P", va.ok(), va.ok() ? "" : va.to_string());
  if (!va.ok()) return out;
  out.translation = translation_groupoid(out.p_action);

  const FiniteGroupoid& HK = *pc.quotient;
  StrictHom psi{pc.quotient, out.translation, std::vector<ObjId>(HK.num_objects()),
                std::vector<ArrId>(HK.num_arrows())};
  for (ObjId x = 0; x < HK.num_objects(); ++x) psi.on_objects[x] = q->class_of[x];
  for (ArrId a = 0; a < HK.num_arrows(); ++a)
    psi.on_arrows[a] = static_cast<ArrId>(q->class_of[H.tgt(a / k)] * k + a % k);
  record_equivalence(t, psi, "H ⋊ K -> P ⋊ K");

  out.equivalence = decide_weak_equivalence(out.translation, c.base);
  t.record("P ⋊ K equivalent to G", out.equivalence.equivalent && out.equivalence.witness_verified,
           out.equivalence.reason);
  t.record("|P| = " + std::to_string(q->size()), true);
  return out;
}

}  // namespace grpd
