#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/bibundle.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/transcript.hpp"

namespace grpd {

// A finite groupoid with a chart L(x) of size n on every object and a chart
// bijection lambda_g: L(s(g)) -> L(t(g)) on every arrow. effect[g][i] is the
// index in L(t(g)) of the image of the i-th element of L(s(g)). A chart
// bijection stands in for the germ of a diffeomorphism at a point.
struct ChartedGroupoid {
  GroupoidPtr base;
  std::size_t n = 0;
  std::vector<std::vector<std::string>> charts;  // per object, n labels
  std::vector<Perm> effect;                      // per arrow

  const FiniteGroupoid& groupoid() const { return *base; }
  bool trivial_effect(ArrId g) const { return perm::is_identity(effect[g]); }
};

// Base groupoid axioms, uniform chart size, and functoriality of the effect.
ValidationReport validate_charted(const ChartedGroupoid& g);

// Charts {0..n-1} on every object and identity effects.
ChartedGroupoid with_trivial_charts(const GroupoidPtr& g, std::size_t n = 1);
// Charts {0..n-1} with effects given by a functor to Sym(n).
ChartedGroupoid with_effects(const GroupoidPtr& g, std::size_t n, std::vector<Perm> effect);
// Objects and arrows of `a` first, then `b`; chart sizes must agree.
ChartedGroupoid disjoint_union(const ChartedGroupoid& a, const ChartedGroupoid& b);

// S0(x) = {g in S_x | lambda_g = id}; transport along h: y -> x is
// g -> h^-1 g h, taking S0(x) to S0(y).
struct LocalSystem {
  GroupoidPtr base;
  std::vector<std::vector<ArrId>> fiber;  // ascending arrow ids

  ArrId transport(ArrId h, ArrId g) const {
    return base->comp(base->inv(h), base->comp(g, h));
  }
  FiniteGroup fiber_group(ObjId x) const;
};

LocalSystem ineffective_stabilizers(const ChartedGroupoid& g);

// Closure of S0 under conjugation by every composable arrow, normality of
// each fiber in S_x, and that transport is a group isomorphism.
Transcript check_S0_equivariance(const ChartedGroupoid& g);

struct Effectivization {
  ChartedGroupoid result;
  StrictHom projection;  // G -> G_eff
};

// Arrows identified when source, target and effect agree. Classes are
// numbered by (source, target, effect) in lexicographic order.
Effectivization effectivization(const ChartedGroupoid& g);

bool is_purely_ineffective(const ChartedGroupoid& g);
bool is_effective(const ChartedGroupoid& g);
// Least stabilizer arrow with a nontrivial effect, or kNone.
ArrId effective_stabilizer_witness(const ChartedGroupoid& g);

struct CoarseEquivalence {
  Effectivization eff;
  StrictHom to_coarse;  // G_eff -> trivial groupoid on the coarse classes
  EssentialEquivalence essential;
  EquivalenceCheck bibundle;

  bool ok() const { return essential.ok() && bibundle.ok(); }
};

// For a purely ineffective G, G_eff is equivalent to its coarse set. Throws
// Refusal naming an effective stabilizer arrow otherwise.
CoarseEquivalence pi_coarse_equivalence(const ChartedGroupoid& g);

// The coarse quotient when every stabilizer is trivial.
std::optional<CoarseQuotient> equivalent_to_set(const FiniteGroupoid& g);

}  // namespace grpd
