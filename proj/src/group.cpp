#include "grpd/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace grpd {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
  return out;
}

}  // namespace

FiniteGroup::FiniteGroup()
    : FiniteGroup(Trusted{}, 1, std::vector<Elem>{0}, {"e"}) {}

FiniteGroup::FiniteGroup(Trusted, std::size_t order, std::vector<Elem> mul,
                         std::vector<std::string> labels)
    : order_(order), mul_(std::move(mul)), labels_(std::move(labels)) {
  if (labels_.size() != order_) labels_ = default_labels(order_);
  identity_ = kNone;
  for (Elem e = 0; e < order_ && identity_ == kNone; ++e) {
    bool ok = true;
    for (Elem a = 0; a < order_ && ok; ++a)
      ok = mul_[e * order_ + a] == a && mul_[a * order_ + e] == a;
    if (ok) identity_ = e;
  }
  inv_.assign(order_, kNone);
  if (identity_ == kNone) return;
  for (Elem a = 0; a < order_; ++a)
    for (Elem b = 0; b < order_; ++b)
      if (mul_[a * order_ + b] == identity_ && mul_[b * order_ + a] == identity_) {
        inv_[a] = b;
        break;
      }
}

FiniteGroup FiniteGroup::from_table(std::size_t order, std::vector<Elem> mul,
                                    std::vector<std::string> labels) {
  if (order == 0) throw std::invalid_argument("group must be nonempty");
  if (mul.size() != order * order)
    throw StructuralError("multiplication table has " +
                          std::to_string(mul.size()) + " entries, expected " +
                          std::to_string(order * order));
  for (Elem v : mul)
    if (v >= order)
      throw StructuralError("multiplication table entry " + std::to_string(v) +
                            " out of range");
  FiniteGroup g(Trusted{}, order, std::move(mul), std::move(labels));
  if (g.identity_ == kNone) throw std::invalid_argument("no identity element");
  for (Elem a = 0; a < order; ++a)
    if (g.inv_[a] == kNone)
      throw std::invalid_argument("element " + g.labels_[a] + " has no inverse");
  for (Elem a = 0; a < order; ++a)
    for (Elem b = 0; b < order; ++b)
      for (Elem c = 0; c < order; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw std::invalid_argument("associativity fails at (" + g.labels_[a] +
                                      ", " + g.labels_[b] + ", " +
                                      g.labels_[c] + ")");
  return g;
}

FiniteGroup FiniteGroup::unchecked(std::size_t order, std::vector<Elem> mul,
                                   std::vector<std::string> labels) {
  return FiniteGroup(Trusted{}, order, std::move(mul), std::move(labels));
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  std::vector<Elem> mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<Elem>((a + b) % n);
  return FiniteGroup(Trusted{}, n, std::move(mul), default_labels(n));
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  std::vector<Perm> perms = perm::all(n);
  std::map<Perm, Elem> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Elem>(i);
  const std::size_t m = perms.size();
  std::vector<Elem> mul(m * m);
  std::vector<std::string> labels(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = perm::to_string(perms[a]);
    for (std::size_t b = 0; b < m; ++b)
      mul[a * m + b] = index.at(perm::compose(perms[a], perms[b]));
  }
  FiniteGroup g(Trusted{}, m, std::move(mul), std::move(labels));
  g.perms_ = std::move(perms);
  return g;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& lhs, const FiniteGroup& rhs) {
  const std::size_t n = lhs.order(), m = rhs.order(), nm = n * m;
  std::vector<Elem> mul(nm * nm);
  std::vector<std::string> labels(nm);
  for (std::size_t a = 0; a < nm; ++a) {
    const Elem a1 = static_cast<Elem>(a / m), a2 = static_cast<Elem>(a % m);
    labels[a] = "(" + lhs.label(a1) + "," + rhs.label(a2) + ")";
    for (std::size_t b = 0; b < nm; ++b) {
      const Elem b1 = static_cast<Elem>(b / m), b2 = static_cast<Elem>(b % m);
      mul[a * nm + b] = static_cast<Elem>(lhs.mul(a1, b1) * m + rhs.mul(a2, b2));
    }
  }
  return FiniteGroup(Trusted{}, nm, std::move(mul), std::move(labels));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  // element j * n + i is r^i s^j
  const std::size_t m = 2 * n;
  std::vector<Elem> mul(m * m);
  std::vector<std::string> labels(m);
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t i1 = a % n, j1 = a / n;
    labels[a] = "r" + std::to_string(i1) + (j1 ? "s" : "");
    for (std::size_t b = 0; b < m; ++b) {
      const std::size_t i2 = b % n, j2 = b / n;
      const std::size_t i = (j1 ? i1 + n - i2 : i1 + i2) % n;
      mul[a * m + b] = static_cast<Elem>(((j1 + j2) % 2) * n + i);
    }
  }
  return FiniteGroup(Trusted{}, m, std::move(mul), std::move(labels));
}

Elem FiniteGroup::find_permutation(const Perm& p) const {
  auto it = std::lower_bound(perms_.begin(), perms_.end(), p);
  if (it == perms_.end() || *it != p) return kNone;
  return static_cast<Elem>(it - perms_.begin());
}

std::size_t element_order(const FiniteGroup& g, Elem a) {
  std::size_t k = 1;
  for (Elem x = a; x != g.identity(); x = g.mul(x, a)) ++k;
  return k;
}

std::vector<Elem> generated_subgroup(const FiniteGroup& g,
                                     const std::vector<Elem>& gens) {
  std::vector<bool> seen(g.order(), false);
  std::deque<Elem> queue{g.identity()};
  seen[g.identity()] = true;
  while (!queue.empty()) {
    const Elem a = queue.front();
    queue.pop_front();
    for (Elem s : gens) {
      const Elem b = g.mul(a, s);
      if (!seen[b]) {
        seen[b] = true;
        queue.push_back(b);
      }
    }
  }
  std::vector<Elem> out;
  for (Elem a = 0; a < g.order(); ++a)
    if (seen[a]) out.push_back(a);
  return out;
}

std::vector<Elem> generators(const FiniteGroup& g) {
  std::vector<Elem> gens;
  std::vector<bool> covered(g.order(), false);
  covered[g.identity()] = true;
  for (Elem a = 0; a < g.order(); ++a) {
    if (covered[a]) continue;
    gens.push_back(a);
    covered.assign(g.order(), false);
    for (Elem b : generated_subgroup(g, gens)) covered[b] = true;
  }
  return gens;
}

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to,
                     const GroupHom& map) {
  if (map.size() != from.order()) return false;
  for (Elem v : map)
    if (v >= to.order()) return false;
  for (Elem a = 0; a < from.order(); ++a)
    for (Elem b = 0; b < from.order(); ++b)
      if (map[from.mul(a, b)] != to.mul(map[a], map[b])) return false;
  return true;
}

bool is_isomorphism(const FiniteGroup& from, const FiniteGroup& to,
                    const GroupHom& map) {
  if (from.order() != to.order() || !is_homomorphism(from, to, map)) return false;
  std::vector<bool> hit(to.order(), false);
  for (Elem v : map) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const FiniteGroup& from, const FiniteGroup& to, bool first_only)
      : from_(from), to_(to), first_only_(first_only), gens_(generators(from)) {
    for (Elem g : gens_) {
      std::vector<Elem> cands;
      const std::size_t ord = element_order(from_, g);
      for (Elem h = 0; h < to_.order(); ++h)
        if (element_order(to_, h) == ord) cands.push_back(h);
      candidates_.push_back(std::move(cands));
    }
  }

  std::vector<GroupHom> run() {
    if (from_.order() != to_.order()) return {};
    images_.clear();
    descend(0);
    return std::move(found_);
  }

 private:
  // Extends the generator assignment to the subgroup generated by the first
  // `depth` generators; fails on inconsistency or non-injectivity.
  bool extend(std::size_t depth, GroupHom& map) const {
    map.assign(from_.order(), kNone);
    std::vector<bool> used(to_.order(), false);
    map[from_.identity()] = to_.identity();
    used[to_.identity()] = true;
    std::deque<Elem> queue{from_.identity()};
    while (!queue.empty()) {
      const Elem a = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < depth; ++j) {
        const Elem b = from_.mul(a, gens_[j]);
        const Elem img = to_.mul(map[a], images_[j]);
        if (map[b] == kNone) {
          if (used[img]) return false;
          used[img] = true;
          map[b] = img;
          queue.push_back(b);
        } else if (map[b] != img) {
          return false;
        }
      }
    }
    return true;
  }

  void descend(std::size_t depth) {
    if (first_only_ && !found_.empty()) return;
    GroupHom map;
    if (!extend(depth, map)) return;
    if (depth == gens_.size()) {
      found_.push_back(std::move(map));
      return;
    }
    for (Elem h : candidates_[depth]) {
      images_.push_back(h);
      descend(depth + 1);
      images_.pop_back();
      if (first_only_ && !found_.empty()) return;
    }
  }

  const FiniteGroup& from_;
  const FiniteGroup& to_;
  bool first_only_;
  std::vector<Elem> gens_;
  std::vector<std::vector<Elem>> candidates_;
  std::vector<Elem> images_;
  std::vector<GroupHom> found_;
};

}  // namespace

std::optional<GroupHom> find_isomorphism(const FiniteGroup& from,
                                         const FiniteGroup& to) {
  auto found = IsoSearch(from, to, true).run();
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

std::vector<GroupHom> all_isomorphisms(const FiniteGroup& from,
                                       const FiniteGroup& to) {
  auto found = IsoSearch(from, to, false).run();
  std::sort(found.begin(), found.end());
  return found;
}

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  return find_isomorphism(a, b).has_value();
}

FiniteGroup automorphism_group(const FiniteGroup& g,
                               std::vector<std::vector<Elem>>* automorphisms) {
  std::vector<GroupHom> autos = all_isomorphisms(g, g);
  std::map<GroupHom, Elem> index;
  for (std::size_t i = 0; i < autos.size(); ++i) index[autos[i]] = static_cast<Elem>(i);
  const std::size_t m = autos.size();
  std::vector<Elem> mul(m * m);
  std::vector<std::string> labels(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = "aut" + std::to_string(a);
    for (std::size_t b = 0; b < m; ++b)
      mul[a * m + b] = index.at(perm::compose(autos[a], autos[b]));
  }
  if (automorphisms) *automorphisms = autos;
  return FiniteGroup(FiniteGroup::Trusted{}, m, std::move(mul), std::move(labels));
}

std::vector<Elem> center(const FiniteGroup& g) {
  std::vector<Elem> out;
  for (Elem a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Elem b = 0; b < g.order() && central; ++b)
      central = g.mul(a, b) == g.mul(b, a);
    if (central) out.push_back(a);
  }
  return out;
}

bool is_abelian(const FiniteGroup& g) { return center(g).size() == g.order(); }

bool is_subgroup(const FiniteGroup& g, const std::vector<Elem>& elems) {
  std::vector<bool> in(g.order(), false);
  for (Elem a : elems) {
    if (a >= g.order()) return false;
    in[a] = true;
  }
  if (!in[g.identity()]) return false;
  for (Elem a : elems) {
    if (!in[g.inv(a)]) return false;
    for (Elem b : elems)
      if (!in[g.mul(a, b)]) return false;
  }
  return true;
}

bool is_normal(const FiniteGroup& g, const std::vector<Elem>& elems) {
  if (!is_subgroup(g, elems)) return false;
  std::vector<bool> in(g.order(), false);
  for (Elem a : elems) in[a] = true;
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem a : elems)
      if (!in[g.mul(g.mul(g.inv(x), a), x)]) return false;
  return true;
}

FiniteGroup subgroup(const FiniteGroup& g, const std::vector<Elem>& elems) {
  if (!is_subgroup(g, elems)) throw std::invalid_argument("not a subgroup");
  std::vector<Elem> pos(g.order(), kNone);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<Elem>(i);
  const std::size_t m = elems.size();
  std::vector<Elem> mul(m * m);
  std::vector<std::string> labels(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = g.label(elems[a]);
    for (std::size_t b = 0; b < m; ++b) mul[a * m + b] = pos[g.mul(elems[a], elems[b])];
  }
  return FiniteGroup(FiniteGroup::Trusted{}, m, std::move(mul), std::move(labels));
}

}  // namespace grpd
