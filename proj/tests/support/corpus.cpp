#include "corpus.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace corpus {

FiniteGroup v4() {
  return FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
}

FiniteGroup dicyclic(std::size_t n) {
  // a^i x^j with x^2 = a^n and x a x^-1 = a^-1.
  const std::size_t m = 2 * n, order = 4 * n;
  std::vector<Elem> mul(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t p = 0; p < order; ++p) {
    const std::size_t i = p / 2, j = p % 2;
    labels[p] = "a" + std::to_string(i) + (j ? "x" : "");
    for (std::size_t q = 0; q < order; ++q) {
      const std::size_t k = q / 2, l = q % 2;
      std::size_t ri, rj;
      if (j == 0) {
        ri = (i + k) % m;
        rj = l;
      } else {
        ri = (i + m - k + (l ? n : 0)) % m;
        rj = (1 + l) % 2;
      }
      mul[p * order + q] = static_cast<Elem>(ri * 2 + rj);
    }
  }
  return FiniteGroup::from_table(order, std::move(mul), std::move(labels));
}

FiniteGroup alternating4() {
  const FiniteGroup s4 = FiniteGroup::symmetric(4);
  std::vector<Elem> even;
  for (Elem a = 0; a < s4.order(); ++a) {
    const Perm& p = s4.permutation(a);
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) inversions += p[i] > p[j] ? 1 : 0;
    if (inversions % 2 == 0) even.push_back(a);
  }
  return subgroup(s4, even);
}

std::vector<NamedGroup> small_groups() {
  std::vector<NamedGroup> out;
  for (std::size_t n = 1; n <= 12; ++n) out.push_back({"Z" + std::to_string(n), FiniteGroup::cyclic(n)});
  out.push_back({"V4", v4()});
  out.push_back({"S3", FiniteGroup::symmetric(3)});
  out.push_back({"Z2xZ4", FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4))});
  out.push_back({"Z2^3", FiniteGroup::product(v4(), FiniteGroup::cyclic(2))});
  out.push_back({"D4", FiniteGroup::dihedral(4)});
  out.push_back({"Q8", dicyclic(2)});
  out.push_back({"D5", FiniteGroup::dihedral(5)});
  out.push_back({"Z2xZ6", FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(6))});
  out.push_back({"D6", FiniteGroup::dihedral(6)});
  out.push_back({"A4", alternating4()});
  out.push_back({"Dic3", dicyclic(3)});
  return out;
}

std::vector<NamedGroup> groups_up_to_24() {
  std::vector<NamedGroup> out = small_groups();
  for (std::size_t n = 13; n <= 24; ++n) out.push_back({"Z" + std::to_string(n), FiniteGroup::cyclic(n)});
  out.push_back({"S4", FiniteGroup::symmetric(4)});
  out.push_back({"D12", FiniteGroup::dihedral(12)});
  out.push_back({"Z2xS3", FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::symmetric(3))});
  out.push_back({"Q8xZ3", FiniteGroup::product(dicyclic(2), FiniteGroup::cyclic(3))});
  return out;
}

std::vector<std::vector<Elem>> subgroups(const FiniteGroup& g) {
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<Elem>> out;
  auto add = [&](std::vector<Elem> s) {
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second) out.push_back(std::move(s));
  };
  add({g.identity()});
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = a; b < g.order(); ++b) add(generated_subgroup(g, {a, b}));
  std::vector<Elem> all(g.order());
  for (Elem a = 0; a < g.order(); ++a) all[a] = a;
  add(all);
  return out;
}

ActionOnSet coset_action(const FiniteGroup& g, const std::vector<Elem>& h) {
  std::vector<Id> coset_of(g.order(), kNone);
  std::vector<Elem> reps;
  for (Elem k = 0; k < g.order(); ++k) {
    if (coset_of[k] != kNone) continue;
    for (Elem x : h) coset_of[g.mul(x, k)] = static_cast<Id>(reps.size());
    reps.push_back(k);
  }
  ActionOnSet a{g, reps.size(), Side::kRight, std::vector<Id>(reps.size() * g.order()), {}};
  for (Id c = 0; c < reps.size(); ++c) {
    a.labels.push_back("H" + g.label(reps[c]));
    for (Elem k = 0; k < g.order(); ++k) a.table[c * g.order() + k] = coset_of[g.mul(reps[c], k)];
  }
  return a;
}

ActionOnSet sum_action(const ActionOnSet& a, const ActionOnSet& b) {
  const std::size_t k = a.group.order();
  ActionOnSet out{a.group, a.carrier + b.carrier, Side::kRight, a.table, {}};
  for (Id p = 0; p < a.carrier; ++p) out.labels.push_back("l" + a.point_label(p));
  for (Id p = 0; p < b.carrier; ++p) {
    out.labels.push_back("r" + b.point_label(p));
    for (Elem e = 0; e < k; ++e) out.table.push_back(static_cast<Id>(a.carrier + b.act(p, e)));
  }
  return out;
}

ActionOnSet natural_action(std::size_t n) {
  const FiniteGroup s = FiniteGroup::symmetric(n);
  ActionOnSet a{s, n, Side::kRight, std::vector<Id>(n * s.order()), {}};
  for (Id p = 0; p < n; ++p)
    for (Elem e = 0; e < s.order(); ++e) a.table[p * s.order() + e] = perm::inverse(s.permutation(e))[p];
  return a;
}

std::vector<NamedGroupoid> translation_corpus(std::size_t max_points) {
  std::vector<NamedGroupoid> out;
  for (const auto& [name, g] : small_groups()) {
    std::vector<ActionOnSet> actions;
    for (const auto& h : subgroups(g)) {
      if (g.order() / h.size() > max_points) continue;
      actions.push_back(coset_action(g, h));
    }
    const std::size_t transitive = actions.size();
    for (std::size_t i = 0; i < transitive; ++i)
      for (std::size_t j = i; j < transitive; ++j)
        if (actions[i].carrier + actions[j].carrier <= max_points)
          actions.push_back(sum_action(actions[i], actions[j]));
    for (std::size_t i = 0; i < actions.size(); ++i)
      out.push_back({name + "/X" + std::to_string(i), translation_groupoid(actions[i])});
  }
  return out;
}

std::vector<NamedGroupoid> b_group_corpus() {
  std::vector<NamedGroupoid> out;
  for (const auto& [name, g] : groups_up_to_24()) out.push_back({"B" + name, b_group(g)});
  return out;
}

std::vector<NamedGroupoid> small_groupoids(std::size_t max_arrows) {
  std::vector<NamedGroupoid> pool;
  for (const auto& [name, g] : small_groups())
    if (g.order() <= max_arrows) pool.push_back({"B" + name, b_group(g)});
  for (std::size_t n = 1; n <= 3; ++n) {
    pool.push_back({"pair" + std::to_string(n), pair_groupoid(n)});
    pool.push_back({"set" + std::to_string(n), trivial_groupoid(n)});
  }
  const FiniteGroup z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3), s3 = FiniteGroup::symmetric(3);
  pool.push_back({"Z2/reg", translation_groupoid(regular_action(z2))});
  pool.push_back({"Z3/reg", translation_groupoid(regular_action(z3))});
  pool.push_back({"Z2/triv2", translation_groupoid(trivial_action(z2, 2))});
  pool.push_back({"S3/nat", translation_groupoid(natural_action(3))});
  pool.push_back({"Z2/reg+pt", translation_groupoid(sum_action(regular_action(z2), trivial_action(z2, 1)))});
  pool.push_back({"Z3/reg+pt", translation_groupoid(sum_action(regular_action(z3), trivial_action(z3, 1)))});
  pool.push_back({"Z4/Z2", translation_groupoid(coset_action(FiniteGroup::cyclic(4), {0, 2}))});
  pool.push_back({"V4/Z2", translation_groupoid(coset_action(v4(), {0, 1}))});
  pool.push_back({"D4/C2", translation_groupoid(coset_action(FiniteGroup::dihedral(4), subgroups(FiniteGroup::dihedral(4))[1]))});
  pool.push_back({"S3/C2", translation_groupoid(coset_action(s3, subgroups(s3)[1]))});
  pool.push_back({"BZ2+pt", disjoint_union(*b_group(z2), *trivial_groupoid(1))});
  pool.push_back({"BZ2+BZ2", disjoint_union(*b_group(z2), *b_group(z2))});
  pool.push_back({"BZ3+pair2", disjoint_union(*b_group(z3), *pair_groupoid(2))});
  pool.push_back({"BZ4+BZ2", disjoint_union(*b_group(FiniteGroup::cyclic(4)), *b_group(z2))});
  pool.push_back({"pair2+pt", disjoint_union(*pair_groupoid(2), *trivial_groupoid(1))});
  std::vector<NamedGroupoid> out;
  for (auto& g : pool)
    if (g.groupoid->num_arrows() <= max_arrows) out.push_back(std::move(g));
  return out;
}

std::vector<std::vector<Perm>> homs_to_sym(const FiniteGroup& k, std::size_t n) {
  const FiniteGroup s = FiniteGroup::symmetric(n);
  const std::vector<Elem> gens = generators(k);
  std::vector<std::vector<Perm>> out;
  std::vector<Elem> images(gens.size(), 0);
  while (true) {
    // Extend along words in the generators; reject on a conflict.
    GroupHom f(k.order(), kNone);
    f[k.identity()] = s.identity();
    std::vector<Elem> frontier{k.identity()};
    bool ok = true;
    while (!frontier.empty() && ok) {
      std::vector<Elem> next;
      for (Elem x : frontier)
        for (std::size_t i = 0; i < gens.size(); ++i) {
          const Elem y = k.mul(x, gens[i]);
          const Elem fy = s.mul(f[x], images[i]);
          if (f[y] == kNone) {
            f[y] = fy;
            next.push_back(y);
          } else if (f[y] != fy) {
            ok = false;
          }
        }
      frontier = std::move(next);
    }
    if (ok && is_homomorphism(k, s, f)) {
      std::vector<Perm> rho;
      for (Elem x = 0; x < k.order(); ++x) rho.push_back(s.permutation(f[x]));
      out.push_back(std::move(rho));
    }
    std::size_t i = 0;
    while (i < images.size() && ++images[i] == s.order()) images[i++] = 0;
    if (i == images.size()) break;
  }
  return out;
}

ChartedGroupoid charted_b_group(const FiniteGroup& k, const std::vector<Perm>& rho) {
  return with_effects(b_group(k), rho.front().size(), rho);
}

ChartedGroupoid charted_translation(const ActionOnSet& a, const std::vector<Perm>& rho) {
  GroupoidPtr g = translation_groupoid(a);
  std::vector<Perm> effect(g->num_arrows());
  for (ArrId x = 0; x < g->num_arrows(); ++x) effect[x] = rho[x % a.group.order()];
  return with_effects(g, rho.front().size(), std::move(effect));
}

ChartedGroupoid z4_swap() {
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  std::vector<Perm> rho;
  for (Elem a = 0; a < 4; ++a) rho.push_back(a % 2 ? Perm{1, 0} : Perm{0, 1});
  ChartedGroupoid c = charted_b_group(z4, rho);
  c.charts = {{"p", "q"}};
  return c;
}

std::vector<NamedCharted> charted_corpus() {
  std::vector<NamedCharted> out;
  const std::vector<NamedGroup> groups = {{"Z2", FiniteGroup::cyclic(2)},
                                          {"Z3", FiniteGroup::cyclic(3)},
                                          {"Z4", FiniteGroup::cyclic(4)},
                                          {"V4", v4()},
                                          {"S3", FiniteGroup::symmetric(3)}};
  for (const auto& [name, g] : groups)
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto homs = homs_to_sym(g, n);
      // The trivial hom and the last nontrivial one.
      out.push_back({"B" + name + "/n" + std::to_string(n) + "/trivial", charted_b_group(g, homs.front())});
      if (homs.size() > 1)
        out.push_back({"B" + name + "/n" + std::to_string(n) + "/rho" + std::to_string(homs.size() - 1),
                       charted_b_group(g, homs.back())});
    }
  out.push_back({"BZ4/swap", z4_swap()});
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  out.push_back({"Z2reg/swap", charted_translation(regular_action(z2), homs_to_sym(z2, 2).back())});
  out.push_back({"S3nat/sign", charted_translation(natural_action(3), homs_to_sym(FiniteGroup::symmetric(3), 2).back())});
  out.push_back({"pair2/n2", with_trivial_charts(pair_groupoid(2), 2)});
  out.push_back({"BZ2swap+BZ2", disjoint_union(charted_b_group(z2, homs_to_sym(z2, 2).back()),
                                               charted_b_group(z2, homs_to_sym(z2, 2).front()))});
  out.push_back({"BZ4swap+BZ2", disjoint_union(z4_swap(), charted_b_group(z2, homs_to_sym(z2, 2).front()))});
  return out;
}

ActionOnGroupoid pair_action(const ActionOnSet& a) {
  const std::size_t n = a.carrier, k = a.group.order();
  ActionOnGroupoid out{a.group, pair_groupoid(n), std::vector<ObjId>(n * k), std::vector<ArrId>(n * n * k)};
  for (Id p = 0; p < n; ++p)
    for (Elem e = 0; e < k; ++e) out.on_objects[p * k + e] = a.act(p, e);
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j)
      for (Elem e = 0; e < k; ++e) out.on_arrows[(i * n + j) * k + e] = static_cast<ArrId>(a.act(i, e) * n + a.act(j, e));
  return out;
}

ActionOnGroupoid automorphism_action(const FiniteGroup& t) {
  std::vector<std::vector<Elem>> autos;
  const FiniteGroup aut = automorphism_group(t, &autos);
  ActionOnGroupoid out{aut, b_group(t), std::vector<ObjId>(aut.order(), 0),
                       std::vector<ArrId>(t.order() * aut.order())};
  for (Elem l = 0; l < aut.order(); ++l)
    for (Elem a = 0; a < t.order(); ++a) out.on_arrows[autos[l][a] * aut.order() + l] = a;
  return out;
}

namespace {

// Two right actions on A x B, acting on the left and right factor.
std::pair<ActionOnSet, ActionOnSet> factor_actions(const ActionOnSet& a, const ActionOnSet& b) {
  const std::size_t n = a.carrier * b.carrier;
  ActionOnSet k{a.group, n, Side::kRight, std::vector<Id>(n * a.group.order()), {}};
  ActionOnSet l{b.group, n, Side::kRight, std::vector<Id>(n * b.group.order()), {}};
  for (Id x = 0; x < a.carrier; ++x)
    for (Id y = 0; y < b.carrier; ++y) {
      const Id p = x * b.carrier + y;
      for (Elem e = 0; e < a.group.order(); ++e) k.table[p * a.group.order() + e] = a.act(x, e) * b.carrier + y;
      for (Elem e = 0; e < b.group.order(); ++e) l.table[p * b.group.order() + e] = x * b.carrier + b.act(y, e);
    }
  return {k, l};
}

}  // namespace

std::vector<CommutingPair> commuting_pairs() {
  const FiniteGroup z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3);
  const std::vector<std::pair<std::string, std::pair<ActionOnSet, ActionOnSet>>> sets = {
      {"Z2reg x Z2reg", {regular_action(z2), regular_action(z2)}},
      {"Z2reg x Z3reg", {regular_action(z2), regular_action(z3)}},
      {"Z3reg x Z2reg", {regular_action(z3), regular_action(z2)}},
      {"S3nat x Z2reg", {natural_action(3), regular_action(z2)}},
      {"V4reg x Z2triv", {regular_action(v4()), trivial_action(z2, 1)}},
      {"Z2triv2 x Z3reg", {trivial_action(z2, 2), regular_action(z3)}},
  };
  std::vector<CommutingPair> out;
  for (const auto& [name, ab] : sets) {
    auto [k, l] = factor_actions(ab.first, ab.second);
    GroupoidPtr space = trivial_groupoid(k.carrier);
    out.push_back({"set " + name, action_on_space(k, space), action_on_space(l, space)});
    ActionOnGroupoid pk = pair_action(k), pl = pair_action(l);
    pl.target = pk.target;
    out.push_back({"pair " + name, pk, pl});
  }
  for (const FiniteGroup& t : {FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)}) {
    ActionOnGroupoid a = automorphism_action(t);
    out.push_back({"Aut on B(T), trivial", a, trivial_action(FiniteGroup::cyclic(2), a.target)});
  }
  return out;
}

StrictHom b_hom(const GroupoidPtr& bk, const GroupoidPtr& bl, const GroupHom& f) {
  return {bk, bl, {0}, std::vector<ArrId>(f.begin(), f.end())};
}

std::vector<NamedHom> hom_corpus() {
  std::vector<NamedHom> out;
  const FiniteGroup z1 = FiniteGroup::cyclic(1), z2 = FiniteGroup::cyclic(2), z4 = FiniteGroup::cyclic(4);
  const FiniteGroup s3 = FiniteGroup::symmetric(3), k4 = v4();
  const GroupoidPtr b1 = b_group(z1), b2 = b_group(z2), b4 = b_group(z4), bs3 = b_group(s3), bv = b_group(k4);
  out.push_back({"BZ4 -> BZ2 (mod 2)", b_hom(b4, b2, {0, 1, 0, 1})});
  out.push_back({"BZ2 -> BZ4 (inclusion)", b_hom(b2, b4, {0, 2})});
  out.push_back({"BS3 identity", identity_hom(bs3)});
  {
    std::vector<std::vector<Elem>> autos;
    automorphism_group(s3, &autos);
    out.push_back({"BS3 automorphism", b_hom(bs3, bs3, autos.back())});
  }
  out.push_back({"BV4 -> BZ2 (first factor)", b_hom(bv, b2, {0, 0, 1, 1})});
  out.push_back({"BZ1 -> BZ2", b_hom(b1, b2, {0})});
  out.push_back({"BZ2 -> BZ1", b_hom(b2, b1, {0, 0})});
  {
    const GroupoidPtr reg = translation_groupoid(regular_action(z2));
    const GroupoidPtr pt = trivial_groupoid(1);
    out.push_back({"Z2reg -> point", {reg, pt, {0, 0}, std::vector<ArrId>(reg->num_arrows(), 0)}});
    std::vector<ArrId> to_k(reg->num_arrows());
    for (ArrId a = 0; a < reg->num_arrows(); ++a) to_k[a] = a % 2;
    out.push_back({"Z2reg -> BZ2", {reg, b2, {0, 0}, to_k}});
  }
  {
    const GroupoidPtr p3 = pair_groupoid(3);
    out.push_back({"pair3 -> point", {p3, trivial_groupoid(1), {0, 0, 0}, std::vector<ArrId>(9, 0)}});
  }
  out.push_back({"point -> set2", {trivial_groupoid(1), trivial_groupoid(2), {0}, {0}}});
  {
    // B(Z/2) into B(Z/2) ⊔ B(Z/2): fully faithful, not essentially surjective.
    const GroupoidPtr u = disjoint_union(*b2, *b2);
    out.push_back({"BZ2 -> BZ2+BZ2", {b2, u, {0}, {0, 1}}});
  }
  {
    // S3 acting on its cosets of a 2-element subgroup; the translation
    // groupoid is equivalent to B of the subgroup.
    const auto h = subgroups(s3)[1];
    const GroupoidPtr x = translation_groupoid(coset_action(s3, h));
    const GroupoidPtr bh = b_group(subgroup(s3, h));
    // Inclusion B(H) -> X ⋊ S3 at the base coset, (H, k) for k in H.
    std::vector<ArrId> arrows;
    for (Elem k : h) arrows.push_back(k);
    out.push_back({"BH -> S3/H", {bh, x, {0}, arrows}});
  }
  return out;
}

std::vector<Cover> all_covers(std::size_t points, std::size_t max_parts) {
  const std::size_t full = (std::size_t{1} << points) - 1;
  std::vector<std::size_t> subsets;
  for (std::size_t s = 1; s <= full; ++s) subsets.push_back(s);
  std::vector<Cover> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t mask) {
    if (!pick.empty() && mask == full) {
      Cover c;
      c.points = points;
      for (std::size_t s : pick) {
        std::vector<Id> part;
        for (Id u = 0; u < points; ++u)
          if (s >> u & 1) part.push_back(u);
        c.parts.push_back(std::move(part));
      }
      out.push_back(std::move(c));
    }
    if (pick.size() == max_parts) return;
    for (std::size_t i = from; i < subsets.size(); ++i) {
      pick.push_back(subsets[i]);
      rec(i + 1, mask | subsets[i]);
      pick.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

DescentDatum negated_descent() {
  const GroupoidPtr b2 = b_group(FiniteGroup::cyclic(2));
  Cover c{1, {{0}, {0}, {0}}, {"m"}, {"U1", "U2", "U3"}};
  DescentDatum d{c, b2, {}, {}};
  for (std::size_t a = 0; a < 3; ++a) {
    Bibundle p{part_groupoid(c, a), b2, 2, {0, 0}, {0, 0}, {0, 1}, {0, 1, 1, 0}, {"e", "x"}};
    d.local.push_back(p);
  }
  const std::vector<Id> id{0, 1}, swap{1, 0};
  d.transition = {{id, swap, id}, {swap, id, id}, {id, id, id}};
  return d;
}

Web web() {
  Web w;
  const FiniteGroup z2 = FiniteGroup::cyclic(2), z4 = FiniteGroup::cyclic(4);
  const GroupoidPtr pt = trivial_groupoid(1), b2 = b_group(z2), b4 = b_group(z4);
  const GroupoidPtr reg = translation_groupoid(regular_action(z2)), p2 = pair_groupoid(2);
  w.objects = {pt, b2, b4, reg, p2};
  w.homs = {
      {"b4->b2", b_hom(b4, b2, {0, 1, 0, 1})},
      {"b2->b4", b_hom(b2, b4, {0, 2})},
      {"b4 auto", b_hom(b4, b4, {0, 3, 2, 1})},
      {"b2->pt", {b2, pt, {0}, {0, 0}}},
      {"pt->b2", {pt, b2, {0}, {0}}},
      {"reg->b2", {reg, b2, {0, 0}, {0, 1, 0, 1}}},
      {"reg->pt", {reg, pt, {0, 0}, {0, 0, 0, 0}}},
      {"b2->reg", {b2, reg, {0}, {0, 0}}},
      {"p2->pt", {p2, pt, {0, 0}, {0, 0, 0, 0}}},
      {"pt->p2", {pt, p2, {1}, {3}}},
  };
  for (const GroupoidPtr& g : w.objects) w.bibundles.push_back(identity_bibundle(g));
  for (const auto& h : w.homs) w.bibundles.push_back(from_strict_hom(h.hom));
  return w;
}


}  // namespace corpus
