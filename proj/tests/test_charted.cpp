#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "corpus.hpp"
#include "oracle.hpp"

using namespace grpd;

namespace {

ChartedGroupoid b2(std::size_t n, bool swap) {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  Perm s = perm::identity(n);
  if (swap) std::swap(s[0], s[1]);
  return corpus::charted_b_group(z2, {perm::identity(n), s});
}

bool bijective(const std::vector<Id>& map, std::size_t codomain) {
  std::set<Id> seen(map.begin(), map.end());
  return map.size() == codomain && seen.size() == codomain;
}

}  // namespace

TEST_CASE("ineffective stabilizers") {
  CHECK(ineffective_stabilizers(b2(2, true)).fiber[0].size() == 1);
  CHECK(ineffective_stabilizers(b2(1, false)).fiber[0].size() == 2);
  const LocalSystem s = ineffective_stabilizers(corpus::z4_swap());
  CHECK(s.fiber[0] == std::vector<ArrId>{0, 2});
  CHECK(are_isomorphic(s.fiber_group(0), FiniteGroup::cyclic(2)));
}

TEST_CASE("S0 equivariance certificate") {
  CHECK(check_S0_equivariance(b2(2, true)).ok());
  CHECK(check_S0_equivariance(corpus::z4_swap()).ok());
  CHECK(check_S0_equivariance(disjoint_union(b2(2, true), corpus::z4_swap())).ok());
}

TEST_CASE("effectivization examples") {
  const Effectivization e = effectivization(b2(2, true));
  CHECK(bijective(e.projection.on_arrows, e.result.base->num_arrows()));

  const Effectivization z4 = effectivization(corpus::z4_swap());
  CHECK(z4.result.base->num_arrows() == 2);
  CHECK(are_isomorphic(stabilizer(*z4.result.base, 0).group, FiniteGroup::cyclic(2)));
  CHECK(validate_strict_hom(z4.projection).ok());

  const Effectivization pt = effectivization(b2(1, false));
  CHECK(pt.result.base->num_objects() == 1);
  CHECK(pt.result.base->num_arrows() == 1);
}

TEST_CASE("purely ineffective and effective predicates") {
  const ChartedGroupoid unit = with_trivial_charts(trivial_groupoid(1));
  CHECK(is_purely_ineffective(unit));
  CHECK(is_effective(unit));
  CHECK(is_purely_ineffective(b2(1, false)));
  CHECK_FALSE(is_effective(b2(1, false)));
  CHECK_FALSE(is_purely_ineffective(corpus::z4_swap()));
  CHECK_FALSE(is_effective(corpus::z4_swap()));
  CHECK(effective_stabilizer_witness(corpus::z4_swap()) == 1);
  CHECK(effective_stabilizer_witness(b2(1, false)) == kNone);
}

TEST_CASE("pi_coarse_equivalence") {
  const CoarseEquivalence pt = pi_coarse_equivalence(b2(1, false));
  CHECK(pt.ok());
  CHECK(pt.to_coarse.codomain->num_objects() == 1);

  const ChartedGroupoid two = disjoint_union(b2(1, false), with_trivial_charts(b_group(FiniteGroup::cyclic(3))));
  const CoarseEquivalence c2 = pi_coarse_equivalence(two);
  CHECK(c2.ok());
  CHECK(c2.to_coarse.codomain->num_objects() == 2);

  const CoarseEquivalence pair = pi_coarse_equivalence(with_trivial_charts(pair_groupoid(3), 2));
  CHECK(pair.ok());
  CHECK(equivalent_to_set(*pair_groupoid(3)).has_value());

  CHECK_THROWS_AS(pi_coarse_equivalence(corpus::z4_swap()), Refusal);
}

TEST_CASE("equivalent_to_set") {
  const auto p4 = equivalent_to_set(*pair_groupoid(4));
  REQUIRE(p4.has_value());
  CHECK(p4->size() == 1);
  CHECK_FALSE(equivalent_to_set(*b_group(FiniteGroup::cyclic(2))).has_value());
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const auto free6 = equivalent_to_set(*translation_groupoid(corpus::sum_action(regular_action(z3), regular_action(z3))));
  REQUIRE(free6.has_value());
  CHECK(free6->size() == 2);
}

TEST_CASE("validate_charted rejects broken charts") {
  ChartedGroupoid mixed = corpus::z4_swap();
  mixed = disjoint_union(mixed, with_trivial_charts(trivial_groupoid(1), 2));
  CHECK(validate_charted(mixed).ok());
  mixed.charts.back().push_back("extra");
  CHECK_FALSE(validate_charted(mixed).ok());

  ChartedGroupoid bad = corpus::z4_swap();
  bad.effect[2] = {1, 0};  // the square of the generator must act trivially
  CHECK_FALSE(validate_charted(bad).ok());
}

TEST_CASE("charted corpus properties") {
  const auto all = corpus::charted_corpus();
  CHECK(all.size() >= 20);
  std::set<std::size_t> sizes;
  for (const auto& [name, g] : all) {
    CAPTURE(name);
    const FiniteGroupoid& G = g.groupoid();
    sizes.insert(g.n);
    REQUIRE(validate_charted(g).ok());
    CHECK(check_S0_equivariance(g).ok());

    // Idempotence: effectivizing twice changes nothing.
    const Effectivization e1 = effectivization(g);
    const Effectivization e2 = effectivization(e1.result);
    CHECK(bijective(e2.projection.on_arrows, e2.result.base->num_arrows()));
    CHECK(e2.result.base->num_arrows() == e1.result.base->num_arrows());
    CHECK(validate_charted(e1.result).ok());
    CHECK(is_effective(e1.result));

    // PI iff every stabilizer arrow has trivial effect.
    bool trivial_on_loops = true;
    for (ArrId a = 0; a < G.num_arrows(); ++a)
      if (G.is_loop(a) && !perm::is_identity(g.effect[a])) trivial_on_loops = false;
    CHECK(is_purely_ineffective(g) == trivial_on_loops);
    CHECK(is_effective(g) == bijective(e1.projection.on_arrows, e1.result.base->num_arrows()));

    // |S_x| = |S0_x| times the number of distinct effects of loops at x.
    const LocalSystem s0 = ineffective_stabilizers(g);
    const CoarseQuotient q = coarse_quotient(G);
    for (ObjId x = 0; x < G.num_objects(); ++x) {
      std::set<Perm> effects;
      std::size_t loops = 0;
      for (ArrId a : G.hom(x, x)) {
        effects.insert(g.effect[a]);
        ++loops;
      }
      CHECK(loops == s0.fiber[x].size() * effects.size());
      const ObjId rep = q.classes[q.class_of[x]][0];
      CHECK(are_isomorphic(s0.fiber_group(x), s0.fiber_group(rep)));
    }
  }
  CHECK(sizes == std::set<std::size_t>{1, 2, 3});
}
