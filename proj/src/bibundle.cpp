#include "grpd/bibundle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "grpd/construct.hpp"

namespace grpd {

namespace {

Id position(const std::vector<Id>& sorted, Id v) {
  return static_cast<Id>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

std::vector<std::vector<Id>> fibers(const std::vector<ObjId>& base, std::size_t n) {
  std::vector<std::vector<Id>> out(n);
  for (Id p = 0; p < base.size(); ++p) out[base[p]].push_back(p);
  return out;
}

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace

std::string Bibundle::element_label(Id p) const {
  return p < labels.size() ? labels[p] : std::to_string(p);
}

Principality right_principality(const Bibundle& P) {
  const FiniteGroupoid& G = *P.source;
  const FiniteGroupoid& H = *P.target;
  Principality r;
  const auto fib = fibers(P.s, G.num_objects());
  r.surjective = true;
  for (ObjId x = 0; x < G.num_objects(); ++x)
    if (fib[x].empty()) {
      r.surjective = false;
      r.witness = "no element over " + G.object_label(x);
      break;
    }
  r.free = r.transitive = true;
  std::vector<Id> stamp(P.size, kNone);
  for (Id p = 0; p < P.size && r.free && r.transitive; ++p) {
    for (ArrId h : H.arrows_into(P.t[p])) {
      const Id q = P.act_right(p, h);
      if (q == kNone || q >= P.size) continue;
      if (stamp[q] == p) {
        r.free = false;
        r.witness = "element " + P.element_label(p) + " is hit twice by " + H.arrow_label(h);
        break;
      }
      stamp[q] = p;
    }
    if (!r.free) break;
    for (Id q : fib[P.s[p]])
      if (stamp[q] != p) {
        r.transitive = false;
        r.witness = "no arrow of the target takes " + P.element_label(p) + " to " +
                    P.element_label(q) + " in the fiber over " + G.object_label(P.s[p]);
        break;
      }
  }
  return r;
}

Principality left_principality(const Bibundle& P) {
  const FiniteGroupoid& G = *P.source;
  const FiniteGroupoid& H = *P.target;
  Principality r;
  const auto fib = fibers(P.t, H.num_objects());
  r.surjective = true;
  for (ObjId y = 0; y < H.num_objects(); ++y)
    if (fib[y].empty()) {
      r.surjective = false;
      r.witness = "no element over " + H.object_label(y);
      break;
    }
  r.free = r.transitive = true;
  std::vector<Id> stamp(P.size, kNone);
  for (Id p = 0; p < P.size; ++p) {
    for (ArrId g : G.arrows_from(P.s[p])) {
      const Id q = P.act_left(g, p);
      if (q == kNone || q >= P.size) continue;
      if (stamp[q] == p) {
        r.free = false;
        r.witness = "element " + P.element_label(p) + " is hit twice by " + G.arrow_label(g);
        return r;
      }
      stamp[q] = p;
    }
    for (Id q : fib[P.t[p]])
      if (stamp[q] != p) {
        r.transitive = false;
        r.witness = "no arrow of the source takes " + P.element_label(p) + " to " +
                    P.element_label(q) + " in the fiber over " + H.object_label(P.t[p]);
        return r;
      }
  }
  return r;
}

bool right_principal_by_bijection(const Bibundle& P) {
  const FiniteGroupoid& G = *P.source;
  const FiniteGroupoid& H = *P.target;
  const auto fib = fibers(P.s, G.num_objects());
  for (const auto& f : fib)
    if (f.empty()) return false;
  std::size_t domain = 0, codomain = 0;
  std::unordered_set<std::uint64_t> image;
  for (Id p = 0; p < P.size; ++p) {
    domain += H.arrows_into(P.t[p]).size();
    codomain += fib[P.s[p]].size();
    for (ArrId h : H.arrows_into(P.t[p])) {
      const Id q = P.act_right(p, h);
      if (q == kNone || q >= P.size || P.s[q] != P.s[p]) return false;
      if (!image.insert(static_cast<std::uint64_t>(p) * P.size + q).second) return false;
    }
  }
  return domain == codomain && image.size() == codomain;
}

ValidationReport validate_bibundle(const Bibundle& P) {
  ValidationReport r;
  if (!P.source || !P.target) {
    r.structural.push_back("bibundle is missing a source or target groupoid");
    return r;
  }
  const FiniteGroupoid& G = *P.source;
  const FiniteGroupoid& H = *P.target;
  if (P.s.size() != P.size || P.t.size() != P.size || P.left.size() != G.num_arrows() * P.size ||
      P.right.size() != P.size * H.num_arrows()) {
    r.structural.push_back("bibundle tables do not match the total set");
    return r;
  }
  for (Id p = 0; p < P.size; ++p)
    if (P.s[p] >= G.num_objects() || P.t[p] >= H.num_objects()) {
      r.structural.push_back("leg of " + P.element_label(p) + " is out of range");
      return r;
    }
  for (Id v : P.left)
    if (v != kNone && v >= P.size) {
      r.structural.push_back("left action entry out of range");
      return r;
    }
  for (Id v : P.right)
    if (v != kNone && v >= P.size) {
      r.structural.push_back("right action entry out of range");
      return r;
    }

  for (ArrId g = 0; g < G.num_arrows(); ++g)
    for (Id p = 0; p < P.size; ++p) {
      const bool defined = G.src(g) == P.s[p];
      const Id gp = P.act_left(g, p);
      if (defined && gp == kNone)
        r.add("left action defined on the fiber product", G.arrow_label(g) + " on " + P.element_label(p));
      else if (!defined && gp != kNone)
        r.add("left action undefined off the fiber product", G.arrow_label(g) + " on " + P.element_label(p));
    }
  for (Id p = 0; p < P.size; ++p)
    for (ArrId h = 0; h < H.num_arrows(); ++h) {
      const bool defined = H.tgt(h) == P.t[p];
      const Id ph = P.act_right(p, h);
      if (defined && ph == kNone)
        r.add("right action defined on the fiber product", P.element_label(p) + " by " + H.arrow_label(h));
      else if (!defined && ph != kNone)
        r.add("right action undefined off the fiber product", P.element_label(p) + " by " + H.arrow_label(h));
    }
  if (!r.ok()) return r;

  bool legs_ok = true;
  for (Id p = 0; p < P.size; ++p) {
    for (ArrId g : G.arrows_from(P.s[p])) {
      const Id gp = P.act_left(g, p);
      const std::string w = G.arrow_label(g) + " on " + P.element_label(p);
      if (P.s[gp] != G.tgt(g)) r.add("s_P(g·p) = t(g)", w), legs_ok = false;
      if (P.t[gp] != P.t[p]) r.add("t_P(g·p) = t_P(p)", w), legs_ok = false;
    }
    for (ArrId h : H.arrows_into(P.t[p])) {
      const Id ph = P.act_right(p, h);
      const std::string w = P.element_label(p) + " by " + H.arrow_label(h);
      if (P.t[ph] != H.src(h)) r.add("t_P(p·h) = s(h)", w), legs_ok = false;
      if (P.s[ph] != P.s[p]) r.add("s_P(p·h) = s_P(p)", w), legs_ok = false;
    }
  }
  if (!legs_ok) return r;

  for (Id p = 0; p < P.size; ++p) {
    if (P.act_left(G.unit(P.s[p]), p) != p) r.add("1·p = p", P.element_label(p));
    if (P.act_right(p, H.unit(P.t[p])) != p) r.add("p·1 = p", P.element_label(p));
    for (ArrId h : G.arrows_from(P.s[p])) {
      const Id hp = P.act_left(h, p);
      for (ArrId g : G.arrows_from(G.tgt(h)))
        if (P.act_left(g, hp) != P.act_left(G.comp(g, h), p))
          r.add("g·(h·p) = (gh)·p",
                "(" + G.arrow_label(g) + ", " + G.arrow_label(h) + ", " + P.element_label(p) + ")");
    }
    for (ArrId g : H.arrows_into(P.t[p])) {
      const Id pg = P.act_right(p, g);
      for (ArrId h : H.arrows_into(H.src(g)))
        if (P.act_right(pg, h) != P.act_right(p, H.comp(g, h)))
          r.add("(p·g)·h = p·(gh)",
                "(" + P.element_label(p) + ", " + H.arrow_label(g) + ", " + H.arrow_label(h) + ")");
    }
    for (ArrId g : G.arrows_from(P.s[p]))
      for (ArrId h : H.arrows_into(P.t[p]))
        if (P.act_right(P.act_left(g, p), h) != P.act_left(g, P.act_right(p, h)))
          r.add("(g·p)·h = g·(p·h)",
                "(" + G.arrow_label(g) + ", " + P.element_label(p) + ", " + H.arrow_label(h) + ")");
  }
  if (!r.ok()) return r;

  const Principality pr = right_principality(P);
  if (!pr.surjective) r.add("s_P surjective", pr.witness);
  if (!pr.free) r.add("right action free", pr.witness);
  if (!pr.transitive) r.add("right action transitive on s_P fibers", pr.witness);
  return r;
}

std::string EquivalenceCheck::to_string() const {
  auto side = [](const char* name, const Principality& p) {
    std::string s = std::string(name) + ": ";
    s += p.ok() ? "principal" : "not principal (" + p.witness + ")";
    return s;
  };
  return side("right", right) + "; " + side("left", left);
}

EquivalenceCheck is_equivalence(const Bibundle& p) {
  return {right_principality(p), left_principality(p)};
}

Bibundle identity_bibundle(const GroupoidPtr& gp) {
  const FiniteGroupoid& G = *gp;
  const std::size_t n = G.num_arrows();
  Bibundle P{gp, gp, n, {}, {}, {}, {}, G.arrow_labels()};
  P.left.assign(n * n, kNone);
  P.right.assign(n * n, kNone);
  for (ArrId p = 0; p < n; ++p) {
    P.s.push_back(G.tgt(p));
    P.t.push_back(G.src(p));
  }
  for (ArrId p = 0; p < n; ++p) {
    for (ArrId g : G.arrows_from(G.tgt(p))) P.left[g * n + p] = G.comp(g, p);
    for (ArrId h : G.arrows_into(G.src(p))) P.right[p * n + h] = G.comp(p, h);
  }
  return P;
}

Bibundle from_strict_hom(const StrictHom& phi) {
  const FiniteGroupoid& G = *phi.domain;
  const FiniteGroupoid& H = *phi.codomain;
  Bibundle P{phi.domain, phi.codomain, 0, {}, {}, {}, {}, {}};
  std::vector<Id> offset(G.num_objects());
  for (ObjId x = 0; x < G.num_objects(); ++x) {
    offset[x] = static_cast<Id>(P.size);
    for (ArrId h : H.arrows_into(phi.on_objects[x])) {
      P.s.push_back(x);
      P.t.push_back(H.src(h));
      P.labels.push_back("(" + G.object_label(x) + "," + H.arrow_label(h) + ")");
      ++P.size;
    }
  }
  auto id = [&](ObjId x, ArrId h) {
    return offset[x] + position(H.arrows_into(phi.on_objects[x]), h);
  };
  P.left.assign(G.num_arrows() * P.size, kNone);
  P.right.assign(P.size * H.num_arrows(), kNone);
  for (ObjId x = 0; x < G.num_objects(); ++x)
    for (ArrId h : H.arrows_into(phi.on_objects[x])) {
      const Id p = id(x, h);
      for (ArrId g : G.arrows_from(x)) P.left[g * P.size + p] = id(G.tgt(g), H.comp(phi.on_arrows[g], h));
      for (ArrId h2 : H.arrows_into(H.src(h))) P.right[p * H.num_arrows() + h2] = id(x, H.comp(h, h2));
    }
  return P;
}

Bibundle compose(const Bibundle& P, const Bibundle& Q) {
  if (!same_groupoid(P.target, Q.source))
    throw Refusal("cannot compose: the target of the first bibundle is not the source of the second");
  const FiniteGroupoid& G = *P.source;
  const FiniteGroupoid& H = *P.target;
  const FiniteGroupoid& K = *Q.target;
  const auto fibq = fibers(Q.s, H.num_objects());

  std::vector<std::size_t> pair_offset(P.size + 1, 0);
  for (Id p = 0; p < P.size; ++p) pair_offset[p + 1] = pair_offset[p] + fibq[P.t[p]].size();
  auto pair_id = [&](Id p, Id q) { return pair_offset[p] + position(fibq[P.t[p]], q); };

  std::vector<Id> class_of(pair_offset[P.size], kNone);
  std::vector<std::pair<Id, Id>> reps;
  for (Id p = 0; p < P.size; ++p)
    for (Id q : fibq[P.t[p]]) {
      if (class_of[pair_id(p, q)] != kNone) continue;
      const Id c = static_cast<Id>(reps.size());
      reps.emplace_back(p, q);
      for (ArrId h : H.arrows_into(P.t[p])) {
        const Id ph = P.act_right(p, h);
        const Id hq = Q.act_left(H.inv(h), q);
        class_of[pair_id(ph, hq)] = c;
      }
    }

  Bibundle R{P.source, Q.target, reps.size(), {}, {}, {}, {}, {}};
  for (auto [p, q] : reps) {
    R.s.push_back(P.s[p]);
    R.t.push_back(Q.t[q]);
    R.labels.push_back("[" + P.element_label(p) + "," + Q.element_label(q) + "]");
  }
  R.left.assign(G.num_arrows() * R.size, kNone);
  R.right.assign(R.size * K.num_arrows(), kNone);
  for (Id c = 0; c < R.size; ++c) {
    auto [p, q] = reps[c];
    for (ArrId g : G.arrows_from(P.s[p])) R.left[g * R.size + c] = class_of[pair_id(P.act_left(g, p), q)];
    for (ArrId k : K.arrows_into(Q.t[q]))
      R.right[c * K.num_arrows() + k] = class_of[pair_id(p, Q.act_right(q, k))];
  }
  return R;
}

bool is_two_iso(const Bibundle& P, const Bibundle& Q, const TwoIso& a) {
  if (P.size != Q.size || a.size() != P.size) return false;
  if (!same_groupoid(P.source, Q.source) || !same_groupoid(P.target, Q.target)) return false;
  std::vector<char> hit(Q.size, 0);
  for (Id p = 0; p < P.size; ++p) {
    if (a[p] >= Q.size || hit[a[p]]) return false;
    hit[a[p]] = 1;
    if (Q.s[a[p]] != P.s[p] || Q.t[a[p]] != P.t[p]) return false;
  }
  const FiniteGroupoid& G = *P.source;
  const FiniteGroupoid& H = *P.target;
  for (Id p = 0; p < P.size; ++p) {
    for (ArrId g : G.arrows_from(P.s[p]))
      if (a[P.act_left(g, p)] != Q.act_left(g, a[p])) return false;
    for (ArrId h : H.arrows_into(P.t[p]))
      if (a[P.act_right(p, h)] != Q.act_right(a[p], h)) return false;
  }
  return true;
}

namespace {

// Backtracking over G x H-orbits of P; the image of each orbit is fixed by
// the image of its least element.
class TwoIsoSearch {
 public:
  TwoIsoSearch(const Bibundle& p, const Bibundle& q) : P_(p), Q_(q) {}

  void run(const std::function<bool(const TwoIso&)>& emit) {
    if (P_.size != Q_.size || !same_groupoid(P_.source, Q_.source) ||
        !same_groupoid(P_.target, Q_.target))
      return;
    const FiniteGroupoid& G = *P_.source;
    const FiniteGroupoid& H = *P_.target;
    std::vector<char> seen(P_.size, 0);
    for (Id p = 0; p < P_.size; ++p) {
      if (seen[p]) continue;
      reps_.push_back(p);
      for (ArrId g : G.arrows_from(P_.s[p]))
        for (ArrId h : H.arrows_into(P_.t[p])) seen[P_.act_right(P_.act_left(g, p), h)] = 1;
    }
    for (Id q = 0; q < Q_.size; ++q) candidates_[{Q_.s[q], Q_.t[q]}].push_back(q);
    map_.assign(P_.size, kNone);
    inverse_.assign(Q_.size, kNone);
    emit_ = &emit;
    search(0);
  }

 private:
  bool assign(Id p, Id q, std::vector<Id>& trail) {
    if (map_[p] != kNone) return map_[p] == q;
    if (inverse_[q] != kNone) return false;
    map_[p] = q;
    inverse_[q] = p;
    trail.push_back(p);
    return true;
  }

  void undo(std::vector<Id>& trail) {
    for (Id p : trail) {
      inverse_[map_[p]] = kNone;
      map_[p] = kNone;
    }
    trail.clear();
  }

  bool propagate(Id p, Id q, std::vector<Id>& trail) {
    const FiniteGroupoid& G = *P_.source;
    const FiniteGroupoid& H = *P_.target;
    for (ArrId g : G.arrows_from(P_.s[p])) {
      const Id gp = P_.act_left(g, p), gq = Q_.act_left(g, q);
      for (ArrId h : H.arrows_into(P_.t[p]))
        if (!assign(P_.act_right(gp, h), Q_.act_right(gq, h), trail)) return false;
    }
    return true;
  }

  bool search(std::size_t i) {
    if (i == reps_.size()) return (*emit_)(map_);
    const Id p = reps_[i];
    auto it = candidates_.find({P_.s[p], P_.t[p]});
    if (it == candidates_.end()) return true;
    std::vector<Id> trail;
    for (Id q : it->second) {
      if (inverse_[q] != kNone) continue;
      const bool ok = propagate(p, q, trail);
      if (ok && !search(i + 1)) {
        undo(trail);
        return false;
      }
      undo(trail);
    }
    return true;
  }

  const Bibundle& P_;
  const Bibundle& Q_;
  std::vector<Id> reps_;
  std::map<std::pair<ObjId, ObjId>, std::vector<Id>> candidates_;
  std::vector<Id> map_, inverse_;
  const std::function<bool(const TwoIso&)>* emit_ = nullptr;
};

}  // namespace

std::optional<TwoIso> find_two_iso(const Bibundle& p, const Bibundle& q) {
  std::optional<TwoIso> out;
  TwoIsoSearch(p, q).run([&](const TwoIso& a) {
    out = a;
    return false;
  });
  return out;
}

std::vector<TwoIso> all_two_isos(const Bibundle& p, const Bibundle& q, std::size_t cap) {
  std::vector<TwoIso> out;
  if (cap == 0) return out;
  TwoIsoSearch(p, q).run([&](const TwoIso& a) {
    out.push_back(a);
    return out.size() < cap;
  });
  return out;
}

std::size_t count_two_isos(const Bibundle& p, const Bibundle& q) {
  std::size_t n = 0;
  TwoIsoSearch(p, q).run([&](const TwoIso&) {
    ++n;
    return true;
  });
  return n;
}

EssentialEquivalence is_essential_equivalence(const StrictHom& phi) {
  const FiniteGroupoid& G = *phi.domain;
  const FiniteGroupoid& H = *phi.codomain;
  EssentialEquivalence r;

  const CoarseQuotient ch = coarse_quotient(H);
  std::vector<char> hit(ch.size(), 0);
  for (ObjId x = 0; x < G.num_objects(); ++x) hit[ch.class_of[phi.on_objects[x]]] = 1;
  r.essentially_surjective = true;
  for (Id c = 0; c < ch.size(); ++c)
    if (!hit[c]) {
      r.essentially_surjective = false;
      r.witness = "object " + H.object_label(ch.classes[c][0]) + " is not isomorphic to any image";
      break;
    }

  // Injectivity on each hom set, then a count of the pullback of (s, t).
  r.fully_faithful = true;
  std::unordered_map<std::uint64_t, ArrId> seen;
  const std::uint64_t n0 = G.num_objects(), n1 = H.num_arrows();
  for (ArrId g = 0; g < G.num_arrows() && r.fully_faithful; ++g) {
    const std::uint64_t key = (static_cast<std::uint64_t>(G.src(g)) * n0 + G.tgt(g)) * n1 + phi.on_arrows[g];
    auto [it, fresh] = seen.emplace(key, g);
    if (!fresh) {
      r.fully_faithful = false;
      r.witness = "arrows " + G.arrow_label(it->second) + " and " + G.arrow_label(g) +
                  " have the same image";
    }
  }
  if (r.fully_faithful) {
    std::vector<std::size_t> mult(H.num_objects(), 0);
    for (ObjId x = 0; x < G.num_objects(); ++x) ++mult[phi.on_objects[x]];
    std::size_t pullback = 0;
    for (ArrId h = 0; h < H.num_arrows(); ++h) pullback += mult[H.src(h)] * mult[H.tgt(h)];
    if (pullback != G.num_arrows()) {
      r.fully_faithful = false;
      r.witness = "pullback of (s, t) has " + std::to_string(pullback) + " elements, the domain has " +
                  std::to_string(G.num_arrows()) + " arrows";
    }
  }
  return r;
}

CoarseMap induced_coarse_map(const Bibundle& P) {
  CoarseMap r;
  r.source = coarse_quotient(*P.source);
  r.target = coarse_quotient(*P.target);
  r.map.assign(r.source.size(), kNone);
  r.well_defined = true;
  for (Id p = 0; p < P.size; ++p) {
    const Id a = r.source.class_of[P.s[p]], b = r.target.class_of[P.t[p]];
    if (r.map[a] == kNone) {
      r.map[a] = b;
    } else if (r.map[a] != b && r.well_defined) {
      r.well_defined = false;
      r.witness = "class of " + P.source->object_label(P.s[p]) + " goes to two classes";
    }
  }
  r.total = std::find(r.map.begin(), r.map.end(), kNone) == r.map.end();
  if (!r.total && r.witness.empty()) r.witness = "some source class has no element over it";
  std::vector<char> hit(r.target.size(), 0);
  bool injective = true;
  for (Id b : r.map) {
    if (b == kNone) continue;
    if (hit[b]) injective = false;
    hit[b] = 1;
  }
  r.bijective = r.total && r.well_defined && injective &&
                std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  return r;
}

StabilizerHom induced_stabilizer_hom(const Bibundle& P, ObjId x, ObjId y) {
  const FiniteGroupoid& G = *P.source;
  const FiniteGroupoid& H = *P.target;
  Id p = kNone;
  for (Id q = 0; q < P.size; ++q)
    if (P.s[q] == x) {
      p = q;
      break;
    }
  if (p == kNone) throw Refusal("no element over " + G.object_label(x));
  const std::vector<ArrId> h0s = H.hom(P.t[p], y);
  if (h0s.empty())
    throw Refusal("f_P([" + G.object_label(x) + "]) is not [" + H.object_label(y) + "]");
  const ArrId h0 = h0s.front();

  StabilizerHom r{stabilizer(G, x), stabilizer(H, y), {}, {}, 0, false, false};
  for (ArrId g : r.from.arrows) {
    const Id gp = P.act_left(g, p);
    ArrId h = kNone;
    for (ArrId c : H.arrows_into(P.t[p]))
      if (P.act_right(p, c) == gp) {
        h = c;
        break;
      }
    if (h == kNone || !H.is_loop(h))
      throw Refusal("no loop h with p·h = g·p for g = " + G.arrow_label(g));
    r.raw.push_back(r.to.element_of(H.comp(H.comp(h0, h), H.inv(h0))));
  }
  const FiniteGroup& Sy = r.to.group;
  for (Elem c = 0; c < Sy.order(); ++c) {
    GroupHom conj(r.raw.size());
    for (std::size_t i = 0; i < r.raw.size(); ++i) conj[i] = Sy.mul(Sy.mul(c, r.raw[i]), Sy.inv(c));
    if (c == 0 || conj < r.map) {
      r.map = std::move(conj);
      r.conjugator = c;
    }
  }
  r.homomorphism = is_homomorphism(r.from.group, Sy, r.map);
  r.isomorphism = is_isomorphism(r.from.group, Sy, r.map);
  return r;
}

Bibundle translation_bibundle(const TranslationData& d) {
  const FiniteGroup& K = d.x.group;
  const FiniteGroup& L = d.y.group;
  const std::size_t k = K.order(), l = L.order();
  if (d.s.size() != d.size || d.t.size() != d.size || d.k_left.size() != d.size * k ||
      d.l_right.size() != d.size * l)
    throw Refusal("translation data tables do not match the total set");
  for (Id p = 0; p < d.size; ++p) {
    if (d.s[p] >= d.x.carrier || d.t[p] >= d.y.carrier) throw Refusal("leg out of range");
    for (Elem e = 0; e < k; ++e)
      if (d.k_left[p * k + e] >= d.size) throw Refusal("K-action entry out of range");
    for (Elem e = 0; e < l; ++e)
      if (d.l_right[p * l + e] >= d.size) throw Refusal("L-action entry out of range");
  }
  auto kp = [&](Elem e, Id p) { return d.k_left[p * k + e]; };
  auto pl = [&](Id p, Elem e) { return d.l_right[p * l + e]; };
  auto who = [](Id p) { return "p = " + std::to_string(p); };
  for (Id p = 0; p < d.size; ++p) {
    if (kp(K.identity(), p) != p) throw Refusal("identity of K moves " + who(p));
    if (pl(p, L.identity()) != p) throw Refusal("identity of L moves " + who(p));
    for (Elem a = 0; a < k; ++a) {
      if (d.s[kp(a, p)] != d.x.act(d.s[p], K.inv(a)))
        throw Refusal("s_P(k·p) != s_P(p)·k^-1 at " + who(p) + ", k = " + K.label(a));
      if (d.t[kp(a, p)] != d.t[p])
        throw Refusal("t_P is not K-invariant at " + who(p) + ", k = " + K.label(a));
      for (Elem b = 0; b < k; ++b)
        if (kp(a, kp(b, p)) != kp(K.mul(a, b), p))
          throw Refusal("K does not act on the left at " + who(p));
      for (Elem c = 0; c < l; ++c)
        if (kp(a, pl(p, c)) != pl(kp(a, p), c))
          throw Refusal("K and L do not commute at " + who(p) + ", k = " + K.label(a) +
                        ", l = " + L.label(c));
    }
    for (Elem c = 0; c < l; ++c) {
      if (d.s[pl(p, c)] != d.s[p])
        throw Refusal("s_P is not L-invariant at " + who(p) + ", l = " + L.label(c));
      if (d.t[pl(p, c)] != d.y.act(d.t[p], c))
        throw Refusal("t_P(p·l) != t_P(p)·l at " + who(p) + ", l = " + L.label(c));
      for (Elem e = 0; e < l; ++e)
        if (pl(pl(p, c), e) != pl(p, L.mul(c, e))) throw Refusal("L does not act on the right at " + who(p));
    }
  }

  Bibundle P{translation_groupoid(d.x), translation_groupoid(d.y), d.size, d.s, d.t, {}, {}, {}};
  const FiniteGroupoid& G = *P.source;
  const FiniteGroupoid& H = *P.target;
  P.left.assign(G.num_arrows() * d.size, kNone);
  P.right.assign(d.size * H.num_arrows(), kNone);
  for (Id p = 0; p < d.size; ++p) {
    for (ArrId g : G.arrows_from(d.s[p])) P.left[g * d.size + p] = kp(g % k, p);
    for (ArrId h : H.arrows_into(d.t[p])) P.right[p * H.num_arrows() + h] = pl(p, h % l);
  }
  const Principality pr = right_principality(P);
  if (!pr.ok()) throw Refusal("s_P is not a principal L-bundle: " + pr.witness);
  return P;
}

TranslationData extract_translation_data(const Bibundle& P, const ActionOnSet& x,
                                         const ActionOnSet& y) {
  const FiniteGroup& K = x.group;
  const FiniteGroup& L = y.group;
  const std::size_t k = K.order(), l = L.order();
  TranslationData d{x, y, P.size, P.s, P.t, {}, {}};
  d.k_left.resize(P.size * k);
  d.l_right.resize(P.size * l);
  for (Id p = 0; p < P.size; ++p) {
    // (x, k): x·k -> x, so k·p uses the arrow (s_P(p)·k^-1, k).
    for (Elem e = 0; e < k; ++e)
      d.k_left[p * k + e] = P.act_left(static_cast<ArrId>(x.act(P.s[p], K.inv(e)) * k + e), p);
    for (Elem e = 0; e < l; ++e)
      d.l_right[p * l + e] = P.act_right(p, static_cast<ArrId>(P.t[p] * l + e));
  }
  return d;
}

WeakEquivalenceReport decide_weak_equivalence(const GroupoidPtr& gp, const GroupoidPtr& hp,
                                              bool build_witness) {
  const FiniteGroupoid& G = *gp;
  const FiniteGroupoid& H = *hp;
  WeakEquivalenceReport r;
  const CoarseQuotient cg = coarse_quotient(G), ch = coarse_quotient(H);
  r.classes_g = cg.size();
  r.classes_h = ch.size();
  std::vector<Stabilizer> sg, sh;
  for (const auto& c : cg.classes) {
    sg.push_back(stabilizer(G, c[0]));
    r.stabilizer_orders_g.push_back(sg.back().group.order());
  }
  for (const auto& c : ch.classes) {
    sh.push_back(stabilizer(H, c[0]));
    r.stabilizer_orders_h.push_back(sh.back().group.order());
  }
  if (cg.size() != ch.size()) {
    r.reason = "class counts differ";
    return r;
  }
  std::vector<char> used(ch.size(), 0);
  r.matching.assign(cg.size(), kNone);
  for (Id i = 0; i < cg.size(); ++i) {
    for (Id j = 0; j < ch.size(); ++j)
      if (!used[j] && sg[i].group.order() == sh[j].group.order() &&
          are_isomorphic(sg[i].group, sh[j].group)) {
        r.matching[i] = j;
        used[j] = 1;
        break;
      }
    if (r.matching[i] == kNone) {
      r.reason = "stabilizer types differ";
      r.matching.clear();
      return r;
    }
  }
  r.equivalent = true;
  r.reason = "classes matched with isomorphic stabilizers";
  if (!build_witness) return r;

  // phi(g: x -> x') = theta(a_x'^-1 g a_x) with a_x the least arrow from the
  // class representative to x.
  StrictHom phi{gp, hp, std::vector<ObjId>(G.num_objects()), std::vector<ArrId>(G.num_arrows())};
  std::vector<ArrId> a(G.num_objects(), kNone);
  std::vector<GroupHom> theta(cg.size());
  for (Id i = 0; i < cg.size(); ++i) {
    const ObjId rep = cg.classes[i][0];
    for (ArrId f : G.arrows_from(rep))
      if (a[G.tgt(f)] == kNone) a[G.tgt(f)] = f;
    theta[i] = *find_isomorphism(sg[i].group, sh[r.matching[i]].group);
    for (ObjId x : cg.classes[i]) phi.on_objects[x] = ch.classes[r.matching[i]][0];
  }
  for (ArrId g = 0; g < G.num_arrows(); ++g) {
    const Id i = cg.class_of[G.src(g)];
    const ArrId loop = G.comp(G.inv(a[G.tgt(g)]), G.comp(g, a[G.src(g)]));
    phi.on_arrows[g] = sh[r.matching[i]].arrows[theta[i][sg[i].element_of(loop)]];
  }
  const bool hom_ok = validate_strict_hom(phi).ok();
  r.witness = from_strict_hom(phi);
  r.witness_verified = hom_ok && is_equivalence(*r.witness).ok();
  return r;
}

}  // namespace grpd
