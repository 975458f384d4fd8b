#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "grpd/kernels.hpp"
#include "oracle.hpp"

using namespace grpd;

namespace {

bool same_tables(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.num_objects() != b.num_objects() || a.num_arrows() != b.num_arrows()) return false;
  for (ObjId x = 0; x < a.num_objects(); ++x)
    if (a.unit(x) != b.unit(x)) return false;
  for (ArrId g = 0; g < a.num_arrows(); ++g) {
    if (a.src(g) != b.src(g) || a.tgt(g) != b.tgt(g) || a.inv(g) != b.inv(g)) return false;
    for (ArrId h : a.arrows_into(a.src(g)))
      if (a.comp(g, h) != b.comp(g, h)) return false;
  }
  return true;
}

bool has_violation(const ValidationReport& r, const std::string& axiom) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.axiom == axiom; });
}

std::size_t orbit_count(const ActionOnSet& a) {
  std::vector<bool> seen(a.carrier, false);
  std::size_t n = 0;
  for (Id p = 0; p < a.carrier; ++p) {
    if (seen[p]) continue;
    ++n;
    for (Elem k = 0; k < a.group.order(); ++k) seen[a.act(p, k)] = true;
  }
  return n;
}

// B(Z/3) with the product table of a + b + [a = b = 1] mod 3.
GroupoidPtr skewed_b3() {
  GroupoidBuilder b;
  b.add_object("*");
  for (int i = 0; i < 3; ++i) b.add_arrow("a" + std::to_string(i), 0, 0);
  b.set_unit(0, 0);
  b.set_inverse(0, 0);
  b.set_inverse(1, 2);
  b.set_inverse(2, 1);
  return std::move(b).build_shared([](ArrId x, ArrId y) { return (x + y + (x == 1 && y == 1)) % 3; });
}

}  // namespace

TEST_CASE("groups: automorphism group orders") {
  CHECK(automorphism_group(FiniteGroup::cyclic(4), nullptr).order() == 2);
  CHECK(automorphism_group(corpus::v4(), nullptr).order() == 6);
  CHECK(automorphism_group(FiniteGroup::symmetric(3), nullptr).order() == 6);
  CHECK(automorphism_group(FiniteGroup::cyclic(1), nullptr).order() == 1);
  CHECK(automorphism_group(FiniteGroup::cyclic(7), nullptr).order() == 6);
  CHECK(is_abelian(corpus::v4()));
  CHECK_FALSE(is_abelian(corpus::dicyclic(2)));
  CHECK(center(corpus::dicyclic(2)).size() == 2);
  CHECK(center(FiniteGroup::symmetric(3)).size() == 1);
}

TEST_CASE("groups: isomorphism search agrees with brute force up to order 8") {
  std::vector<corpus::NamedGroup> groups;
  for (auto& g : corpus::small_groups())
    if (g.group.order() <= 8) groups.push_back(g);
  std::size_t positives = 0;
  for (const auto& a : groups)
    for (const auto& b : groups) {
      if (a.group.order() != b.group.order()) continue;
      const bool expected = oracle::isomorphic(a.group, b.group);
      CAPTURE(a.name);
      CAPTURE(b.name);
      CHECK(are_isomorphic(a.group, b.group) == expected);
      if (auto f = find_isomorphism(a.group, b.group)) CHECK(is_isomorphism(a.group, b.group, *f));
      positives += expected ? 1 : 0;
    }
  CHECK(positives == groups.size());
}

TEST_CASE("groups: from_table rejects a failed axiom") {
  // Z/3 table with one entry broken.
  std::vector<Elem> mul{0, 1, 2, 1, 2, 0, 2, 0, 0};
  CHECK_THROWS_AS(FiniteGroup::from_table(3, mul), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup::from_table(2, {0, 1, 1, 5}), StructuralError);
  CHECK(FiniteGroup::from_table(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}).order() == 3);
}

TEST_CASE("groups: the corpus tables are groups with the expected orders") {
  for (const auto& [name, g] : corpus::groups_up_to_24()) {
    CAPTURE(name);
    CHECK_NOTHROW(FiniteGroup::from_table(g.order(), g.table()));
  }
  CHECK(corpus::alternating4().order() == 12);
  CHECK(center(corpus::alternating4()).size() == 1);
  CHECK(corpus::dicyclic(3).order() == 12);
}

TEST_CASE("validate_groupoid: unit groupoid and a missing inverse") {
  CHECK(validate_groupoid(*trivial_groupoid(1)).ok());

  GroupoidBuilder b;
  b.add_object("a");
  b.add_object("b");
  b.add_arrow("1a", 0, 0);
  b.add_arrow("1b", 1, 1);
  b.add_arrow("f", 0, 1);
  b.set_unit(0, 0);
  b.set_unit(1, 1);
  b.set_inverse(0, 0);
  b.set_inverse(1, 1);
  b.set_product(0, 0, 0);
  b.set_product(1, 1, 1);
  b.set_product(2, 0, 2);
  b.set_product(1, 2, 2);
  const FiniteGroupoid g = std::move(b).build();
  const ValidationReport r = validate_groupoid(g);
  CHECK_FALSE(r.ok());
  CHECK(r.structural.empty());
  CHECK(has_violation(r, "inv missing"));
  CHECK(r.to_string().find("f") != std::string::npos);
}

TEST_CASE("validate_groupoid: dangling ids are structural") {
  GroupoidBuilder b;
  b.add_object("a");
  b.add_arrow("1", 0, 0);
  b.add_arrow("bad", 0, 7);
  b.set_unit(0, 0);
  const FiniteGroupoid g = std::move(b).build();
  const ValidationReport r = validate_groupoid(g);
  CHECK_FALSE(r.structural.empty());
}

TEST_CASE("validate_groupoid: each broken axiom is reported") {
  SUBCASE("missing products") {
    GroupoidBuilder b;
    b.add_object("*");
    b.add_arrow("e", 0, 0);
    b.add_arrow("x", 0, 0);
    b.set_unit(0, 0);
    b.set_inverse(0, 0);
    b.set_inverse(1, 1);
    b.set_product(0, 0, 0);
    CHECK(has_violation(validate_groupoid(std::move(b).build()), "comp missing"));
  }
  SUBCASE("non-associative product") {
    const GroupoidPtr g = skewed_b3();
    const ValidationReport r = validate_groupoid(*g);
    CHECK_FALSE(r.ok());
    CHECK(oracle::associativity_failures(*g) > 0);
  }
  SUBCASE("wrong inverse") {
    GroupoidBuilder b;
    b.add_object("*");
    for (int i = 0; i < 3; ++i) b.add_arrow("a" + std::to_string(i), 0, 0);
    b.set_unit(0, 0);
    b.set_inverse(0, 0);
    b.set_inverse(1, 1);
    b.set_inverse(2, 2);
    const FiniteGroupoid g = std::move(b).build([](ArrId x, ArrId y) { return (x + y) % 3; });
    CHECK(has_violation(validate_groupoid(g), "g^-1 g = 1_s(g)"));
  }
  SUBCASE("wrong unit") {
    GroupoidBuilder b;
    b.add_object("*");
    b.add_arrow("e", 0, 0);
    b.add_arrow("x", 0, 0);
    b.set_unit(0, 1);
    b.set_inverse(0, 0);
    b.set_inverse(1, 1);
    const FiniteGroupoid g = std::move(b).build([](ArrId x, ArrId y) { return x ^ y; });
    CHECK(has_violation(validate_groupoid(g), "g 1 = g"));
  }
}

TEST_CASE("kernels: serial and OpenMP scans agree with the oracle") {
  std::vector<GroupoidPtr> gs{skewed_b3(), b_group(FiniteGroup::symmetric(3)), pair_groupoid(4),
                              translation_groupoid(corpus::natural_action(3))};
  for (const auto& g : gs) {
    const auto s = kernels::serial::associativity(*g);
    const auto o = kernels::omp::associativity(*g);
    CHECK(s == o);
    CHECK(s.count == oracle::associativity_failures(*g));
    CHECK(kernels::serial::composable_triples(*g) == kernels::omp::composable_triples(*g));
  }
  // |K|^3 composable triples in B(K); n^4 in the pair groupoid.
  CHECK(kernels::serial::composable_triples(*b_group(FiniteGroup::symmetric(3))) == 216);
  CHECK(kernels::omp::composable_triples(*pair_groupoid(4)) == 256);
}

TEST_CASE("trivial_groupoid") {
  CHECK(trivial_groupoid(0)->num_objects() == 0);
  CHECK(validate_groupoid(*trivial_groupoid(0)).ok());
  const GroupoidPtr one = trivial_groupoid(std::vector<std::string>{"a"});
  CHECK(one->num_objects() == 1);
  CHECK(one->num_arrows() == 1);
  const GroupoidPtr three = trivial_groupoid(std::vector<std::string>{"a", "b", "c"});
  CHECK(three->num_arrows() == 3);
  CHECK(coarse_quotient(*three).size() == 3);
}

TEST_CASE("b_group") {
  const GroupoidPtr b1 = b_group(FiniteGroup());
  CHECK(b1->num_objects() == 1);
  CHECK(b1->num_arrows() == 1);
  const GroupoidPtr b2 = b_group(FiniteGroup::cyclic(2));
  CHECK(b2->num_objects() == 1);
  CHECK(b2->num_arrows() == 2);
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  const GroupoidPtr bs3 = b_group(s3);
  CHECK(bs3->num_arrows() == 6);
  const Stabilizer st = stabilizer(*bs3, 0);
  CHECK(st.arrows.size() == 6);
  CHECK(oracle::isomorphic(st.group, s3));
}

TEST_CASE("translation_groupoid") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const GroupoidPtr swap = translation_groupoid(regular_action(z2));
  CHECK(swap->num_objects() == 2);
  CHECK(swap->num_arrows() == 4);
  CHECK(coarse_quotient(*swap).size() == 1);
  CHECK(all_stabilizers_trivial(*swap));

  CHECK(same_tables(*translation_groupoid(trivial_action(z2, 1)), *b_group(z2)));

  const GroupoidPtr z4 = translation_groupoid(corpus::coset_action(FiniteGroup::cyclic(4), {0, 2}));
  CHECK(z4->num_objects() == 2);
  CHECK(z4->hom(0, 0).size() == 2);

  // Z/3 on itself: 9 arrows, every pair (g, h) with s(g) = t(h) counted.
  const GroupoidPtr z3 = translation_groupoid(regular_action(FiniteGroup::cyclic(3)));
  CHECK(validate_groupoid(*z3).ok());
  std::size_t pairs = 0;
  for (ArrId g = 0; g < z3->num_arrows(); ++g) pairs += z3->arrows_into(z3->src(g)).size();
  CHECK(pairs == 27);  // |X| |K|^2
  CHECK(oracle::associativity_failures(*z3) == 0);
}

TEST_CASE("translation corpus: valid, inverse is an involution, classes are orbits") {
  std::size_t checked = 0;
  for (const auto& [name, g] : corpus::small_groups()) {
    for (const auto& h : corpus::subgroups(g)) {
      const ActionOnSet a = corpus::coset_action(g, h);
      if (a.carrier > 6) continue;
      const ActionOnSet two = corpus::sum_action(a, trivial_action(g, 1));
      for (const ActionOnSet* x : {&a, &two}) {
        CAPTURE(name);
        const GroupoidPtr t = translation_groupoid(*x);
        CHECK(validate_action(*x).ok());
        CHECK(validate_groupoid(*t).ok());
        CHECK(coarse_quotient(*t).size() == orbit_count(*x));
        for (ArrId f = 0; f < t->num_arrows(); ++f) CHECK(t->inv(t->inv(f)) == f);
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("semidirect_space") {
  SUBCASE("unit groupoid acting on its objects") {
    const GroupoidPtr u = trivial_groupoid(3);
    GroupoidActionOnSet a{u, 3, {0, 1, 2}, Side::kRight, std::vector<Id>(9, kNone), {}};
    for (Id p = 0; p < 3; ++p) a.table[p * 3 + p] = p;
    const SemidirectSpace s = semidirect_space(a);
    CHECK(s.groupoid->num_objects() == 3);
    CHECK(s.groupoid->num_arrows() == 3);
    CHECK(validate_strict_hom(s.projection).ok());
  }
  SUBCASE("B(K) acting on K by right multiplication is a pair groupoid") {
    const FiniteGroup k = FiniteGroup::symmetric(3);
    const GroupoidPtr bk = b_group(k);
    GroupoidActionOnSet a{bk, 6, std::vector<ObjId>(6, 0), Side::kRight, std::vector<Id>(36), {}};
    for (Id p = 0; p < 6; ++p)
      for (Elem g = 0; g < 6; ++g) a.table[p * 6 + g] = k.mul(p, g);
    CHECK(validate_action(a).ok());
    const GroupoidPtr s = semidirect_space(a).groupoid;
    CHECK(validate_groupoid(*s).ok());
    for (ObjId x = 0; x < 6; ++x)
      for (ObjId y = 0; y < 6; ++y) CHECK(s->hom(x, y).size() == 1);
  }
  SUBCASE("left swap action of B(Z/2)") {
    GroupoidActionOnSet a{b_group(FiniteGroup::cyclic(2)), 2, {0, 0}, Side::kLeft, {0, 1, 1, 0}, {"u", "v"}};
    CHECK(validate_action(a).ok());
    const SemidirectSpace s = semidirect_space(a);
    CHECK(s.groupoid->num_objects() == 2);
    CHECK(s.groupoid->num_arrows() == 4);
    CHECK(validate_groupoid(*s.groupoid).ok());
    CHECK(validate_strict_hom(s.projection).ok());
  }
  SUBCASE("an invalid action is refused") {
    GroupoidActionOnSet a{b_group(FiniteGroup::cyclic(2)), 2, {0, 0}, Side::kLeft, {0, 0, 1, 0}, {}};
    CHECK_THROWS_AS(semidirect_space(a), Refusal);
  }
}

TEST_CASE("semidirect_group") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  SUBCASE("trivial group gives a strictly isomorphic groupoid") {
    for (const auto& [name, g] : corpus::small_groupoids(12)) {
      CAPTURE(name);
      CHECK(same_tables(*semidirect_group(trivial_action(FiniteGroup(), g)), *g));
    }
  }
  SUBCASE("a set with K acting reduces to the translation groupoid") {
    const ActionOnSet a = corpus::natural_action(3);
    CHECK(same_tables(*semidirect_group(action_on_space(a, trivial_groupoid(3))), *translation_groupoid(a)));
  }
  SUBCASE("B(Z/3) with Z/2 inverting is B(S3)") {
    const GroupoidPtr b3 = b_group(FiniteGroup::cyclic(3));
    ActionOnGroupoid a{z2, b3, {0, 0}, {0, 0, 1, 2, 2, 1}};
    CHECK(validate_action(a).ok());
    const GroupoidPtr s = semidirect_group(a);
    CHECK(s->num_arrows() == 6);
    CHECK(validate_groupoid(*s).ok());
    CHECK(oracle::isomorphic(stabilizer(*s, 0).group, FiniteGroup::symmetric(3)));
  }
}

TEST_CASE("two-group semidirect lemma") {
  SUBCASE("both trivial") {
    const GroupoidPtr g = b_group(FiniteGroup::cyclic(3));
    const TwoGroupSemidirect t = check_two_group_semidirect(trivial_action(FiniteGroup(), g),
                                                            trivial_action(FiniteGroup(), g));
    CHECK(t.verified);
    for (ArrId a = 0; a < t.iso.on_arrows.size(); ++a) CHECK(t.iso.on_arrows[a] == a);
  }
  SUBCASE("Z/2 swaps on two points") {
    const ActionOnSet swap = regular_action(FiniteGroup::cyclic(2));
    const GroupoidPtr u = trivial_groupoid(2);
    const TwoGroupSemidirect t = check_two_group_semidirect(action_on_space(swap, u), action_on_space(swap, u));
    CHECK(t.verified);
    CHECK(t.iterated->num_arrows() == 8);
    CHECK(is_strict_isomorphism(t.iso));
  }
  SUBCASE("inversion and a trivial Z/3 on B(Z/7)") {
    const GroupoidPtr b7 = b_group(FiniteGroup::cyclic(7));
    ActionOnGroupoid inv{FiniteGroup::cyclic(2), b7, {0, 0}, std::vector<ArrId>(14)};
    for (ArrId g = 0; g < 7; ++g) {
      inv.on_arrows[g * 2] = g;
      inv.on_arrows[g * 2 + 1] = (7 - g) % 7;
    }
    const TwoGroupSemidirect t = check_two_group_semidirect(inv, trivial_action(FiniteGroup::cyclic(3), b7));
    CHECK(t.verified);
    CHECK(t.combined->num_arrows() == 42);
  }
  SUBCASE("every commuting pair in the corpus") {
    const auto pairs = corpus::commuting_pairs();
    CHECK(pairs.size() >= 10);
    for (const auto& p : pairs) {
      CAPTURE(p.name);
      CHECK(commuting_witness(p.k, p.l).empty());
      const TwoGroupSemidirect t = check_two_group_semidirect(p.k, p.l);
      CHECK(t.verified);
      CHECK(is_strict_isomorphism(t.iso));
      CHECK(oracle::associativity_failures(*t.combined) == 0);
    }
  }
  SUBCASE("non-commuting actions are refused") {
    // Transpositions (0 1) and (1 2) on three points.
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    ActionOnSet a{z2, 3, Side::kRight, {0, 1, 1, 0, 2, 2}, {}};
    ActionOnSet b{z2, 3, Side::kRight, {0, 0, 1, 2, 2, 1}, {}};
    const GroupoidPtr u = trivial_groupoid(3);
    CHECK_FALSE(commuting_witness(action_on_space(a, u), action_on_space(b, u)).empty());
    CHECK_THROWS_AS(check_two_group_semidirect(action_on_space(a, u), action_on_space(b, u)), Refusal);
  }
}

TEST_CASE("coarse_quotient") {
  CHECK(coarse_quotient(*trivial_groupoid(2)).size() == 2);
  CHECK(coarse_quotient(*pair_groupoid(3)).size() == 1);
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const CoarseQuotient q = coarse_quotient(*translation_groupoid(corpus::sum_action(regular_action(z2), trivial_action(z2, 1))));
  REQUIRE(q.size() == 2);
  CHECK(q.classes[0] == std::vector<ObjId>{0, 1});
  CHECK(q.classes[1] == std::vector<ObjId>{2});
}

TEST_CASE("stabilizers and the stabilizer space") {
  CHECK(stabilizer(*trivial_groupoid(2), 1).group.order() == 1);
  const FiniteGroup q8 = corpus::dicyclic(2);
  CHECK(are_isomorphic(stabilizer(*b_group(q8), 0).group, q8));
  const GroupoidPtr p4 = pair_groupoid(4);
  CHECK(all_stabilizers_trivial(*p4));
  CHECK(stabilizer_space(p4).arrows.size() == 4);
  for (const auto& [name, g] : corpus::small_groupoids(12)) {
    CAPTURE(name);
    const StabilizerSpace s = stabilizer_space(g);
    CHECK(validate_action(s.action).ok());
    std::size_t loops = 0;
    for (ArrId a = 0; a < g->num_arrows(); ++a) loops += g->is_loop(a) ? 1 : 0;
    CHECK(s.arrows.size() == loops);
  }
}

TEST_CASE("opposite and disjoint union stay valid") {
  for (const auto& [name, g] : corpus::small_groupoids(8)) {
    CAPTURE(name);
    CHECK(validate_groupoid(*opposite(*g)).ok());
    CHECK(validate_groupoid(*disjoint_union(*g, *pair_groupoid(2))).ok());
  }
}
