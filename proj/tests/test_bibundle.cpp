#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "corpus.hpp"
#include "oracle.hpp"

using namespace grpd;

namespace {

// The trivial principal K-bundle M x K over a set, as a map M -> B(K).
Bibundle trivial_bundle(const GroupoidPtr& m, const GroupoidPtr& bk) {
  const std::size_t n = m->num_objects(), k = bk->num_arrows();
  Bibundle p{m, bk, n * k, {}, {}, std::vector<Id>(n * n * k, kNone), std::vector<Id>(n * k * k), {}};
  for (Id u = 0; u < n; ++u)
    for (Elem e = 0; e < k; ++e) {
      const Id x = static_cast<Id>(u * k + e);
      p.s.push_back(u);
      p.t.push_back(0);
      p.left[m->unit(u) * p.size + x] = x;
      for (Elem h = 0; h < k; ++h) p.right[x * k + h] = static_cast<Id>(u * k + bk->comp(e, h));
    }
  return p;
}

// The same bibundle with element i renamed sigma[i].
Bibundle relabel(const Bibundle& p, const std::vector<Id>& sigma) {
  Bibundle q = p;
  const std::size_t g1 = p.source->num_arrows(), h1 = p.target->num_arrows();
  for (Id x = 0; x < p.size; ++x) {
    q.s[sigma[x]] = p.s[x];
    q.t[sigma[x]] = p.t[x];
    for (ArrId g = 0; g < g1; ++g) {
      const Id y = p.act_left(g, x);
      q.left[g * p.size + sigma[x]] = y == kNone ? kNone : sigma[y];
    }
    for (ArrId h = 0; h < h1; ++h) {
      const Id y = p.act_right(x, h);
      q.right[sigma[x] * h1 + h] = y == kNone ? kNone : sigma[y];
    }
  }
  q.labels.clear();
  return q;
}

std::vector<Id> reversal(std::size_t n) {
  std::vector<Id> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<Id>(n - 1 - i);
  return s;
}

std::vector<Bibundle> corpus_bibundles() {
  std::vector<Bibundle> out = corpus::web().bibundles;
  for (const auto& h : corpus::hom_corpus()) out.push_back(from_strict_hom(h.hom));
  for (const auto& [name, g] : corpus::small_groupoids(6)) out.push_back(identity_bibundle(g));
  out.push_back(trivial_bundle(trivial_groupoid(2), b_group(FiniteGroup::cyclic(2))));
  out.push_back(trivial_bundle(trivial_groupoid(3), b_group(FiniteGroup::cyclic(3))));
  return out;
}

}  // namespace

TEST_CASE("validate_bibundle examples") {
  for (const auto& [name, g] : corpus::small_groupoids(12)) {
    CAPTURE(name);
    CHECK(validate_bibundle(identity_bibundle(g)).ok());
  }
  const Bibundle p = trivial_bundle(trivial_groupoid(2), b_group(FiniteGroup::cyclic(2)));
  CHECK(p.size == 4);
  CHECK(validate_bibundle(p).ok());
  CHECK(oracle::right_principal(p));

  // Drop the orbit over the second point.
  Bibundle q = p;
  q.size = 2;
  q.s.resize(2);
  q.t.resize(2);
  q.left.assign(2 * 2, kNone);
  q.left[0 * 2 + 0] = 0;
  q.left[0 * 2 + 1] = 1;
  q.right.resize(4);
  const ValidationReport r = validate_bibundle(q);
  CHECK_FALSE(r.ok());
  CHECK(r.structural.empty());
  CHECK_FALSE(right_principality(q).surjective);
  CHECK_FALSE(oracle::right_principal(q));
}

TEST_CASE("principality: three formulations agree") {
  std::vector<Bibundle> all = corpus_bibundles();
  // Break freeness: make the Z/2 action on one fiber trivial.
  Bibundle broken = trivial_bundle(trivial_groupoid(2), b_group(FiniteGroup::cyclic(2)));
  broken.right[0 * 2 + 1] = 0;
  broken.right[1 * 2 + 1] = 1;
  all.push_back(broken);
  for (const Bibundle& p : all) {
    const bool r = oracle::right_principal(p);
    CHECK(right_principality(p).ok() == r);
    CHECK(right_principal_by_bijection(p) == r);
    CHECK(left_principality(p).ok() == oracle::left_principal(p));
  }
}

TEST_CASE("identity_bibundle examples") {
  CHECK(identity_bibundle(trivial_groupoid(1)).size == 1);
  const Bibundle b = identity_bibundle(b_group(FiniteGroup::symmetric(3)));
  CHECK(b.size == 6);
  for (Id p = 0; p < b.size; ++p) CHECK((b.s[p] == 0 && b.t[p] == 0));
  CHECK(identity_bibundle(pair_groupoid(2)).size == 4);
  CHECK(is_equivalence(b).ok());
}

TEST_CASE("from_strict_hom examples") {
  const GroupoidPtr g = b_group(FiniteGroup::cyclic(3));
  CHECK(find_two_iso(from_strict_hom(identity_hom(g)), identity_bibundle(g)).has_value());

  const GroupoidPtr pt = trivial_groupoid(1), p2 = pair_groupoid(2);
  const Bibundle inc = from_strict_hom({pt, p2, {0}, {0}});
  CHECK(inc.size == 2);
  CHECK(validate_bibundle(inc).ok());
  CHECK(is_equivalence(inc).ok());

  const GroupoidPtr b4 = b_group(FiniteGroup::cyclic(4)), b2 = b_group(FiniteGroup::cyclic(2));
  const Bibundle q = from_strict_hom(corpus::b_hom(b4, b2, {0, 1, 0, 1}));
  CHECK(validate_bibundle(q).ok());
  const EquivalenceCheck eq = is_equivalence(q);
  CHECK_FALSE(eq.ok());
  CHECK(eq.right.ok());
  CHECK_FALSE(eq.left.free);
  CHECK_FALSE(is_essential_equivalence(corpus::b_hom(b4, b2, {0, 1, 0, 1})).ok());
}

TEST_CASE("compose examples") {
  const GroupoidPtr pt = trivial_groupoid(1), p2 = pair_groupoid(2);
  const Bibundle there = from_strict_hom({pt, p2, {0}, {0}});
  const Bibundle back = from_strict_hom({p2, pt, {0, 0}, {0, 0, 0, 0}});
  const Bibundle round = compose(there, back);
  CHECK(round.size == 1);
  CHECK(is_equivalence(round).ok());
  CHECK(find_two_iso(round, identity_bibundle(pt)).has_value());

  const Bibundle p = trivial_bundle(trivial_groupoid(2), b_group(FiniteGroup::cyclic(2)));
  CHECK(find_two_iso(compose(p, identity_bibundle(p.target)), p).has_value());
  CHECK(find_two_iso(compose(identity_bibundle(p.source), p), p).has_value());

  CHECK_THROWS_AS(compose(p, identity_bibundle(pt)), Refusal);
}

TEST_CASE("find_two_iso examples") {
  const Bibundle p = from_strict_hom(corpus::b_hom(b_group(FiniteGroup::cyclic(4)),
                                                   b_group(FiniteGroup::cyclic(2)), {0, 1, 0, 1}));
  const auto self = find_two_iso(p, p);
  REQUIRE(self.has_value());
  std::vector<Id> id(p.size);
  std::iota(id.begin(), id.end(), 0);
  CHECK(*self == id);

  const std::vector<Id> sigma = reversal(p.size);
  const Bibundle q = relabel(p, sigma);
  CHECK(validate_bibundle(q).ok());
  const auto found = find_two_iso(p, q);
  REQUIRE(found.has_value());
  CHECK(is_two_iso(p, q, *found));

  // Two maps from a point to a two-point set.
  const GroupoidPtr pt = trivial_groupoid(1), s2 = trivial_groupoid(2);
  CHECK_FALSE(find_two_iso(from_strict_hom({pt, s2, {0}, {0}}), from_strict_hom({pt, s2, {1}, {1}})).has_value());
}

TEST_CASE("2-iso search agrees with brute force") {
  std::size_t compared = 0;
  const std::vector<Bibundle> all = corpus_bibundles();
  for (const Bibundle& p : all) {
    if (p.size > 8) continue;
    for (const Bibundle& q : {p, relabel(p, reversal(p.size))}) {
      const std::size_t expected = oracle::two_isos(p, q);
      CHECK(count_two_isos(p, q) == expected);
      CHECK(all_two_isos(p, q).size() == expected);
      CHECK(find_two_iso(p, q).has_value() == (expected > 0));
      ++compared;
    }
  }
  CHECK(compared >= 20);
}

TEST_CASE("category laws up to 2-isomorphism") {
  const corpus::Web w = corpus::web();
  const auto& bs = w.bibundles;
  std::size_t triples = 0, pairs = 0;
  for (const Bibundle& p : bs) {
    CHECK(find_two_iso(compose(identity_bibundle(p.source), p), p).has_value());
    CHECK(find_two_iso(compose(p, identity_bibundle(p.target)), p).has_value());
    for (const Bibundle& q : bs) {
      if (p.target != q.source) continue;
      const Bibundle pq = compose(p, q);
      CHECK(validate_bibundle(pq).ok());
      ++pairs;
      for (const Bibundle& r : bs) {
        if (q.target != r.source) continue;
        const Bibundle left = compose(pq, r), right = compose(p, compose(q, r));
        CHECK(find_two_iso(left, right).has_value());
        ++triples;
      }
    }
  }
  CHECK(pairs >= 30);
  CHECK(triples >= 30);
}

TEST_CASE("from_strict_hom is functorial up to 2-isomorphism") {
  const corpus::Web w = corpus::web();
  for (const auto& f : w.homs)
    for (const auto& g : w.homs) {
      if (f.hom.codomain != g.hom.domain) continue;
      CAPTURE(f.name);
      CAPTURE(g.name);
      const Bibundle direct = from_strict_hom(compose_homs(f.hom, g.hom));
      CHECK(find_two_iso(compose(from_strict_hom(f.hom), from_strict_hom(g.hom)), direct).has_value());
    }
}

TEST_CASE("essential equivalence examples") {
  CHECK(is_essential_equivalence(identity_hom(b_group(FiniteGroup::symmetric(3)))).ok());
  for (std::size_t n = 1; n <= 5; ++n) {
    const GroupoidPtr pn = pair_groupoid(n);
    CHECK(is_essential_equivalence({trivial_groupoid(1), pn, {0}, {0}}).ok());
  }
  const EssentialEquivalence e = is_essential_equivalence({trivial_groupoid(2), pair_groupoid(2), {0, 1}, {0, 3}});
  CHECK(e.essentially_surjective);
  CHECK_FALSE(e.fully_faithful);
}

TEST_CASE("equivalence iff essential equivalence on the hom corpus") {
  const auto homs = corpus::hom_corpus();
  CHECK(homs.size() >= 10);
  std::size_t yes = 0;
  for (const auto& [name, phi] : homs) {
    CAPTURE(name);
    REQUIRE(validate_strict_hom(phi).ok());
    const bool ess = is_essential_equivalence(phi).ok();
    CHECK(is_equivalence(from_strict_hom(phi)).ok() == ess);
    if (ess) CHECK(oracle::equivalent(*phi.domain, *phi.codomain));
    yes += ess ? 1 : 0;
  }
  CHECK(yes >= 3);
  CHECK(yes < homs.size());
}

TEST_CASE("induced coarse maps and stabilizer homs") {
  const GroupoidPtr s3 = b_group(FiniteGroup::symmetric(3));
  const CoarseMap id = induced_coarse_map(identity_bibundle(translation_groupoid(corpus::natural_action(3))));
  CHECK(id.bijective);
  CHECK(id.map == std::vector<Id>{0});
  const StabilizerHom h = induced_stabilizer_hom(identity_bibundle(s3), 0, 0);
  CHECK(h.isomorphism);
  std::vector<Elem> ident(6);
  std::iota(ident.begin(), ident.end(), 0);
  CHECK(h.map == ident);

  const GroupoidPtr b2 = b_group(FiniteGroup::cyclic(2));
  const Bibundle twisted = relabel(identity_bibundle(b2), {1, 0});
  CHECK(is_equivalence(twisted).ok());
  CHECK(induced_stabilizer_hom(twisted, 0, 0).isomorphism);

  const GroupoidPtr two = disjoint_union(*b2, *trivial_groupoid(1));
  const CoarseMap to_pt = induced_coarse_map(from_strict_hom({two, trivial_groupoid(1), {0, 0}, {0, 0, 0}}));
  CHECK(to_pt.total);
  CHECK(to_pt.well_defined);
  CHECK(to_pt.map == std::vector<Id>{0, 0});
  CHECK_FALSE(to_pt.bijective);

  const CoarseMap pair = induced_coarse_map(from_strict_hom({pair_groupoid(3), trivial_groupoid(1), {0, 0, 0}, std::vector<ArrId>(9, 0)}));
  CHECK(pair.bijective);

  CHECK_THROWS_AS(induced_stabilizer_hom(identity_bibundle(two), 0, 1), Refusal);
}

TEST_CASE("equivalences induce bijections and isomorphisms") {
  std::size_t equivalences = 0, others = 0;
  for (const Bibundle& p : corpus_bibundles()) {
    const CoarseMap c = induced_coarse_map(p);
    CHECK(c.well_defined);
    CHECK(c.total);
    if (!is_equivalence(p).ok()) {
      ++others;
      continue;
    }
    ++equivalences;
    CHECK(c.bijective);
    for (ObjId x = 0; x < p.source->num_objects(); ++x) {
      const ObjId y = c.target.classes[c.map[c.source.class_of[x]]][0];
      const StabilizerHom h = induced_stabilizer_hom(p, x, y);
      CHECK(h.homomorphism);
      CHECK(h.isomorphism);
    }
  }
  CHECK(equivalences >= 5);
  CHECK(others >= 3);
}

TEST_CASE("translation bibundles") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2), triv;
  SUBCASE("identity on B(L)") {
    // K = L acting on P = L by left and right multiplication.
    const ActionOnSet pt = trivial_action(z2, 1);
    TranslationData d{pt, pt, 2, {0, 0}, {0, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}};
    const Bibundle p = translation_bibundle(d);
    CHECK(validate_bibundle(p).ok());
    CHECK(is_equivalence(p).ok());
    CHECK(find_two_iso(p, identity_bibundle(p.target)).has_value());
  }
  SUBCASE("principal L-bundle over a set") {
    const ActionOnSet x = trivial_action(triv, 3), y = trivial_action(z2, 1);
    TranslationData d{x, y, 6, {}, std::vector<Id>(6, 0), {}, {}};
    for (Id p = 0; p < 6; ++p) {
      d.s.push_back(p / 2);
      d.k_left.push_back(p);
      d.l_right.push_back(p);
      d.l_right.push_back(p ^ 1);
    }
    const Bibundle p = translation_bibundle(d);
    CHECK(validate_bibundle(p).ok());
    CHECK(find_two_iso(p, trivial_bundle(p.source, p.target)).has_value());
    const TranslationData back = extract_translation_data(p, x, y);
    CHECK(back.s == d.s);
    CHECK(back.t == d.t);
    CHECK(back.l_right == d.l_right);
  }
  SUBCASE("K = L = Z/2 on Z/2 x X") {
    const ActionOnSet x = regular_action(z2), y = trivial_action(z2, 1);
    // P = Z/2 x X with (a, u); k·(a, u) = (a, u k^-1), (a, u)·l = (a + l, u).
    TranslationData d{x, y, 4, {}, std::vector<Id>(4, 0), {}, {}};
    for (Id p = 0; p < 4; ++p) {
      const Id a = p / 2, u = p % 2;
      d.s.push_back(u);
      for (Elem k = 0; k < 2; ++k) d.k_left.push_back(a * 2 + (u ^ k));
      for (Elem l = 0; l < 2; ++l) d.l_right.push_back(((a ^ l) * 2) + u);
    }
    const Bibundle p = translation_bibundle(d);
    CHECK(validate_bibundle(p).ok());
    const TranslationData back = extract_translation_data(p, x, y);
    CHECK(back.k_left == d.k_left);
    CHECK(back.l_right == d.l_right);
  }
  SUBCASE("equivariance failure is refused") {
    const ActionOnSet x = regular_action(z2), y = trivial_action(z2, 1);
    TranslationData d{x, y, 4, {0, 0, 1, 1}, std::vector<Id>(4, 0), {0, 0, 1, 1, 2, 2, 3, 3}, {}};
    for (Id p = 0; p < 4; ++p) {
      d.l_right.push_back(p);
      d.l_right.push_back(p ^ 1);
    }
    CHECK_THROWS_AS(translation_bibundle(d), Refusal);
  }
}

TEST_CASE("decide_weak_equivalence examples") {
  const GroupoidPtr pt = trivial_groupoid(1);
  for (std::size_t n = 1; n <= 4; ++n) {
    const WeakEquivalenceReport r = decide_weak_equivalence(pair_groupoid(n), pt);
    CHECK(r.equivalent);
    CHECK(r.witness_verified);
  }
  const WeakEquivalenceReport no = decide_weak_equivalence(b_group(FiniteGroup::cyclic(4)), b_group(corpus::v4()));
  CHECK_FALSE(no.equivalent);
  CHECK(no.reason.find("stabilizer types differ") != std::string::npos);
  const GroupoidPtr b2 = b_group(FiniteGroup::cyclic(2));
  const WeakEquivalenceReport swap = decide_weak_equivalence(disjoint_union(*b2, *pt), disjoint_union(*pt, *b2));
  CHECK(swap.equivalent);
  CHECK(swap.matching == std::vector<Id>{1, 0});
  REQUIRE(swap.witness.has_value());
  CHECK(oracle::right_principal(*swap.witness));
  CHECK(oracle::left_principal(*swap.witness));
}

TEST_CASE("decide_weak_equivalence agrees with the oracle on small groupoids") {
  const auto gs = corpus::small_groupoids(8);
  std::size_t pairs = 0;
  for (const auto& a : gs)
    for (const auto& b : gs) {
      CAPTURE(a.name);
      CAPTURE(b.name);
      const WeakEquivalenceReport r = decide_weak_equivalence(a.groupoid, b.groupoid);
      CHECK(r.equivalent == oracle::equivalent(*a.groupoid, *b.groupoid));
      if (r.equivalent) CHECK(r.witness_verified);
      ++pairs;
    }
  CHECK(pairs >= 50);
}
