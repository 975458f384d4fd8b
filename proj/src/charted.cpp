#include "grpd/charted.hpp"

#include <algorithm>
#include <tuple>

namespace grpd {

ValidationReport validate_charted(const ChartedGroupoid& c) {
  ValidationReport r;
  if (!c.base) {
    r.structural.push_back("charted groupoid has no base groupoid");
    return r;
  }
  const FiniteGroupoid& G = *c.base;
  r.merge(validate_groupoid(G));
  if (c.charts.size() != G.num_objects()) {
    r.structural.push_back("expected " + std::to_string(G.num_objects()) + " charts, got " +
                           std::to_string(c.charts.size()));
    return r;
  }
  if (c.effect.size() != G.num_arrows()) {
    r.structural.push_back("expected " + std::to_string(G.num_arrows()) + " effects, got " +
                           std::to_string(c.effect.size()));
    return r;
  }
  for (ObjId x = 0; x < G.num_objects(); ++x)
    if (c.charts[x].size() != c.n)
      r.add("uniform chart size", G.object_label(x) + " has " + std::to_string(c.charts[x].size()) +
                                      " chart points, expected " + std::to_string(c.n));
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    if (c.effect[g].size() != c.n || !perm::is_permutation(c.effect[g])) {
      r.structural.push_back("effect of " + G.arrow_label(g) + " is not a bijection of " +
                             std::to_string(c.n) + " chart points");
      return r;
    }
  if (!r.ok()) return r;

  for (ObjId x = 0; x < G.num_objects(); ++x)
    if (!c.trivial_effect(G.unit(x))) r.add("lambda_1 = id", G.object_label(x));
  for (ArrId g = 0; g < G.num_arrows(); ++g) {
    if (c.effect[G.inv(g)] != perm::inverse(c.effect[g])) r.add("lambda_g^-1 = lambda_g^-1", G.arrow_label(g));
    for (ArrId h : G.arrows_into(G.src(g)))
      if (c.effect[G.comp(g, h)] != perm::compose(c.effect[g], c.effect[h]))
        r.add("lambda_gh = lambda_g lambda_h", "(" + G.arrow_label(g) + ", " + G.arrow_label(h) + ")");
  }
  return r;
}

namespace {

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
  return out;
}

}  // namespace

ChartedGroupoid with_trivial_charts(const GroupoidPtr& g, std::size_t n) {
  return with_effects(g, n, std::vector<Perm>(g->num_arrows(), perm::identity(n)));
}

ChartedGroupoid with_effects(const GroupoidPtr& g, std::size_t n, std::vector<Perm> effect) {
  return {g, n, std::vector<std::vector<std::string>>(g->num_objects(), index_labels(n)),
          std::move(effect)};
}

ChartedGroupoid disjoint_union(const ChartedGroupoid& a, const ChartedGroupoid& b) {
  if (a.n != b.n)
    throw Refusal("chart sizes differ: " + std::to_string(a.n) + " and " + std::to_string(b.n));
  ChartedGroupoid out{disjoint_union(*a.base, *b.base), a.n, a.charts, a.effect};
  out.charts.insert(out.charts.end(), b.charts.begin(), b.charts.end());
  out.effect.insert(out.effect.end(), b.effect.begin(), b.effect.end());
  return out;
}

FiniteGroup LocalSystem::fiber_group(ObjId x) const {
  const auto& f = fiber[x];
  std::vector<Elem> mul(f.size() * f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) {
      const ArrId gh = base->comp(f[i], f[j]);
      mul[i * f.size() + j] =
          static_cast<Elem>(std::lower_bound(f.begin(), f.end(), gh) - f.begin());
    }
  std::vector<std::string> labels;
  for (ArrId g : f) labels.push_back(base->arrow_label(g));
  return FiniteGroup::unchecked(f.size(), std::move(mul), std::move(labels));
}

LocalSystem ineffective_stabilizers(const ChartedGroupoid& c) {
  const FiniteGroupoid& G = *c.base;
  LocalSystem s{c.base, std::vector<std::vector<ArrId>>(G.num_objects())};
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    if (G.is_loop(g) && c.trivial_effect(g)) s.fiber[G.src(g)].push_back(g);
  return s;
}

Transcript check_S0_equivariance(const ChartedGroupoid& c) {
  const FiniteGroupoid& G = *c.base;
  const LocalSystem s = ineffective_stabilizers(c);
  Transcript t;
  auto in_fiber = [&](ObjId x, ArrId g) {
    return std::binary_search(s.fiber[x].begin(), s.fiber[x].end(), g);
  };

  std::size_t checked = 0;
  std::string bad;
  for (ObjId x = 0; x < G.num_objects(); ++x)
    for (ArrId g : s.fiber[x])
      for (ArrId h : G.arrows_into(x)) {
        ++checked;
        if (bad.empty() && !in_fiber(G.src(h), s.transport(h, g)))
          bad = "h^-1 g h leaves S0 for g = " + G.arrow_label(g) + ", h = " + G.arrow_label(h);
      }
  t.record("S0 closed under conjugation", bad.empty(),
           bad.empty() ? std::to_string(checked) + " conjugations" : bad);

  bad.clear();
  for (ObjId x = 0; x < G.num_objects() && bad.empty(); ++x) {
    const Stabilizer st = stabilizer(G, x);
    std::vector<Elem> elems;
    for (ArrId g : s.fiber[x]) elems.push_back(st.element_of(g));
    if (!is_subgroup(st.group, elems) || !is_normal(st.group, elems))
      bad = "S0(" + G.object_label(x) + ") is not a normal subgroup";
  }
  t.record("S0(x) normal in S_x", bad.empty(), bad);

  bad.clear();
  for (ArrId h = 0; h < G.num_arrows() && bad.empty(); ++h) {
    const auto& fx = s.fiber[G.tgt(h)];
    const auto& fy = s.fiber[G.src(h)];
    std::vector<ArrId> image;
    for (ArrId g : fx) image.push_back(s.transport(h, g));
    std::vector<ArrId> sorted = image;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != fy) {
      bad = "transport along " + G.arrow_label(h) + " is not a bijection of fibers";
      break;
    }
    for (std::size_t i = 0; i < fx.size() && bad.empty(); ++i)
      for (std::size_t j = 0; j < fx.size(); ++j)
        if (s.transport(h, G.comp(fx[i], fx[j])) != G.comp(image[i], image[j])) {
          bad = "transport along " + G.arrow_label(h) + " is not multiplicative";
          break;
        }
  }
  t.record("transport is a group isomorphism", bad.empty(), bad);
  return t;
}

Effectivization effectivization(const ChartedGroupoid& c) {
  const FiniteGroupoid& G = *c.base;
  using Key = std::tuple<ObjId, ObjId, Perm>;
  std::vector<std::pair<Key, ArrId>> keyed;
  keyed.reserve(G.num_arrows());
  for (ArrId g = 0; g < G.num_arrows(); ++g) keyed.push_back({{G.src(g), G.tgt(g), c.effect[g]}, g});
  std::sort(keyed.begin(), keyed.end());

  std::vector<ArrId> cls(G.num_arrows());
  std::vector<ArrId> rep;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i == 0 || keyed[i].first != keyed[i - 1].first) rep.push_back(keyed[i].second);
    cls[keyed[i].second] = static_cast<ArrId>(rep.size() - 1);
  }

  GroupoidBuilder b;
  for (ObjId x = 0; x < G.num_objects(); ++x) b.add_object(G.object_label(x));
  for (ArrId r : rep) b.add_arrow(G.arrow_label(r), G.src(r), G.tgt(r));
  for (ObjId x = 0; x < G.num_objects(); ++x) b.set_unit(x, cls[G.unit(x)]);
  for (ArrId a = 0; a < rep.size(); ++a) b.set_inverse(a, cls[G.inv(rep[a])]);
  GroupoidPtr eff = std::move(b).build_shared([&](ArrId u, ArrId v) { return cls[G.comp(rep[u], rep[v])]; });

  Effectivization out;
  out.result = {eff, c.n, c.charts, {}};
  for (ArrId r : rep) out.result.effect.push_back(c.effect[r]);
  std::vector<ObjId> objects(G.num_objects());
  for (ObjId x = 0; x < G.num_objects(); ++x) objects[x] = x;
  out.projection = {c.base, eff, std::move(objects), std::move(cls)};
  return out;
}

ArrId effective_stabilizer_witness(const ChartedGroupoid& c) {
  const FiniteGroupoid& G = *c.base;
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    if (G.is_loop(g) && !c.trivial_effect(g)) return g;
  return kNone;
}

bool is_purely_ineffective(const ChartedGroupoid& c) {
  return effective_stabilizer_witness(c) == kNone;
}

bool is_effective(const ChartedGroupoid& c) {
  const FiniteGroupoid& G = *c.base;
  for (ArrId g = 0; g < G.num_arrows(); ++g)
    if (G.is_loop(g) && !G.is_unit(g) && c.trivial_effect(g)) return false;
  return true;
}

CoarseEquivalence pi_coarse_equivalence(const ChartedGroupoid& c) {
  if (const ArrId w = effective_stabilizer_witness(c); w != kNone)
    throw Refusal("not purely ineffective: stabilizer arrow " + c.base->arrow_label(w) +
                  " has effect " + perm::to_string(c.effect[w]));
  CoarseEquivalence out;
  out.eff = effectivization(c);
  const FiniteGroupoid& E = *out.eff.result.base;
  const CoarseQuotient q = coarse_quotient(E);
  std::vector<std::string> labels;
  for (const auto& cls : q.classes) labels.push_back("[" + E.object_label(cls[0]) + "]");
  GroupoidPtr top = trivial_groupoid(labels);
  out.to_coarse = {out.eff.result.base, top, q.class_of, std::vector<ArrId>(E.num_arrows())};
  for (ArrId g = 0; g < E.num_arrows(); ++g) out.to_coarse.on_arrows[g] = top->unit(q.class_of[E.src(g)]);
  out.essential = is_essential_equivalence(out.to_coarse);
  out.bibundle = is_equivalence(from_strict_hom(out.to_coarse));
  return out;
}

std::optional<CoarseQuotient> equivalent_to_set(const FiniteGroupoid& g) {
  if (!all_stabilizers_trivial(g)) return std::nullopt;
  return coarse_quotient(g);
}

}  // namespace grpd
