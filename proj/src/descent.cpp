#include "grpd/descent.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace grpd {

namespace {

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  return a == b || (a && b && *a == *b);
}

std::vector<std::vector<std::size_t>> parts_containing(const Cover& c) {
  std::vector<std::vector<std::size_t>> out(c.points);
  for (std::size_t a = 0; a < c.size(); ++a)
    for (Id u : c.parts[a]) out[u].push_back(a);
  return out;
}

// Elements of a bibundle from a trivial groupoid, grouped by source object.
std::vector<std::vector<Id>> fibers_of(const Bibundle& p) {
  std::vector<std::vector<Id>> out(p.source->num_objects());
  for (Id e = 0; e < p.size; ++e) out[p.s[e]].push_back(e);
  return out;
}

// A bibundle from a trivial groupoid acts only by units on the left.
void fill_unit_left(Bibundle& p) {
  p.left.assign(p.source->num_arrows() * p.size, kNone);
  for (Id e = 0; e < p.size; ++e) p.left[p.source->unit(p.s[e]) * p.size + e] = e;
}

}  // namespace

std::string Cover::point_label(Id u) const {
  return u < point_labels.size() ? point_labels[u] : std::to_string(u);
}

std::string Cover::part_label(std::size_t a) const {
  return a < part_labels.size() ? part_labels[a] : "U" + std::to_string(a + 1);
}

Id Cover::local_index(std::size_t a, Id u) const {
  const auto& p = parts[a];
  auto it = std::lower_bound(p.begin(), p.end(), u);
  return it != p.end() && *it == u ? static_cast<Id>(it - p.begin()) : kNone;
}

ValidationReport validate_cover(const Cover& c) {
  ValidationReport r;
  std::vector<char> covered(c.points, 0);
  for (std::size_t a = 0; a < c.size(); ++a) {
    const auto& p = c.parts[a];
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] >= c.points) {
        r.structural.push_back("part " + c.part_label(a) + " names a point outside M");
        return r;
      }
      if (i > 0 && p[i] <= p[i - 1]) {
        r.structural.push_back("part " + c.part_label(a) + " is not strictly ascending");
        return r;
      }
      covered[p[i]] = 1;
    }
  }
  for (Id u = 0; u < c.points; ++u)
    if (!covered[u]) r.add("union covers M", c.point_label(u));
  return r;
}

GroupoidPtr cover_groupoid(const Cover& c) {
  std::vector<std::string> labels;
  for (Id u = 0; u < c.points; ++u) labels.push_back(c.point_label(u));
  return trivial_groupoid(labels);
}

GroupoidPtr part_groupoid(const Cover& c, std::size_t a) {
  std::vector<std::string> labels;
  for (Id u : c.parts[a]) labels.push_back(c.point_label(u));
  return trivial_groupoid(labels);
}

ValidationReport validate_descent(const DescentDatum& d) {
  ValidationReport r = validate_cover(d.cover);
  if (!r.ok()) return r;
  const Cover& C = d.cover;
  const std::size_t m = C.size();
  if (d.local.size() != m || d.transition.size() != m) {
    r.structural.push_back("expected " + std::to_string(m) + " local maps and transition rows");
    return r;
  }
  for (std::size_t a = 0; a < m; ++a) {
    const Bibundle& P = d.local[a];
    if (!P.source || P.source->num_objects() != C.parts[a].size() || !same_groupoid(P.target, d.target)) {
      r.structural.push_back("local map over " + C.part_label(a) + " has the wrong source or target");
      return r;
    }
    r.merge(validate_bibundle(P), "psi " + C.part_label(a) + ": ");
    if (d.transition[a].size() != m) {
      r.structural.push_back("transition row " + C.part_label(a) + " has the wrong length");
      return r;
    }
    for (std::size_t b = 0; b < m; ++b) {
      const auto& chi = d.transition[a][b];
      if (chi.size() != P.size) {
        r.structural.push_back("transition " + C.part_label(a) + C.part_label(b) + " has the wrong length");
        return r;
      }
      for (Id e = 0; e < P.size; ++e) {
        const bool over = C.contains(b, d.point_of(a, e));
        if (over != (chi[e] != kNone) || (over && chi[e] >= d.local[b].size)) {
          r.structural.push_back("transition " + C.part_label(a) + C.part_label(b) + " at element " +
                                 P.element_label(e) + " does not match the overlap");
          return r;
        }
      }
    }
  }
  if (!r.ok()) return r;

  const FiniteGroupoid& H = *d.target;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const Bibundle& P = d.local[a];
      const Bibundle& Q = d.local[b];
      const auto& chi = d.transition[a][b];
      const std::string name = "chi " + C.part_label(a) + C.part_label(b);
      std::vector<char> hit(Q.size, 0);
      std::size_t over = 0;
      for (Id e = 0; e < P.size; ++e) {
        if (chi[e] == kNone) continue;
        ++over;
        const Id f = chi[e];
        if (hit[f]) r.add("transition injective", name + " at " + P.element_label(e));
        hit[f] = 1;
        if (d.point_of(b, f) != d.point_of(a, e)) r.add("transition preserves s", name + " at " + P.element_label(e));
        if (Q.t[f] != P.t[e]) r.add("transition preserves t", name + " at " + P.element_label(e));
        for (ArrId h : H.arrows_into(P.t[e]))
          if (Q.t[f] == P.t[e] && chi[P.act_right(e, h)] != Q.act_right(f, h))
            r.add("transition equivariant", name + " at " + P.element_label(e) + " by " + H.arrow_label(h));
      }
      std::size_t target_over = 0;
      for (Id f = 0; f < Q.size; ++f) target_over += C.contains(a, d.point_of(b, f)) ? 1 : 0;
      if (over != target_over) r.add("transition onto the overlap", name);
    }
  if (!r.ok()) return r;

  for (std::size_t a = 0; a < m; ++a)
    for (Id e = 0; e < d.local[a].size; ++e) {
      if (d.transition[a][a][e] != e)
        r.add("chi_aa = 1", C.part_label(a) + " at " + d.local[a].element_label(e));
      for (std::size_t b = 0; b < m; ++b) {
        const Id f = d.transition[a][b][e];
        if (f != kNone && d.transition[b][a][f] != e)
          r.add("chi_ba = chi_ab^-1", C.part_label(a) + C.part_label(b) + " at " + d.local[a].element_label(e));
      }
    }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (Id e = 0; e < d.local[a].size; ++e) {
          const Id u = d.point_of(a, e);
          if (!C.contains(b, u) || !C.contains(c, u)) continue;
          const Id back = d.transition[c][a][d.transition[b][c][d.transition[a][b][e]]];
          if (back != e)
            r.add("cocycle chi_ca chi_bc chi_ab = 1",
                  "(" + C.part_label(a) + ", " + C.part_label(b) + ", " + C.part_label(c) + ") at point " +
                      C.point_label(u) + ", element " + d.local[a].element_label(e));
        }
  return r;
}

DescentDatum restrict(const Bibundle& psi, const Cover& cover) {
  if (psi.source->num_objects() != cover.points)
    throw Refusal("the bibundle source does not match the covered set");
  DescentDatum d{cover, psi.target, {}, {}};
  const std::size_t m = cover.size();
  const FiniteGroupoid& H = *psi.target;
  std::vector<std::vector<Id>> local_id(m, std::vector<Id>(psi.size, kNone));
  for (std::size_t a = 0; a < m; ++a) {
    Bibundle P{part_groupoid(cover, a), psi.target, 0, {}, {}, {}, {}, {}};
    std::vector<Id> global;
    for (Id e = 0; e < psi.size; ++e) {
      const Id j = cover.local_index(a, psi.s[e]);
      if (j == kNone) continue;
      local_id[a][e] = static_cast<Id>(global.size());
      global.push_back(e);
      P.s.push_back(j);
      P.t.push_back(psi.t[e]);
      P.labels.push_back(psi.element_label(e));
    }
    P.size = global.size();
    fill_unit_left(P);
    P.right.assign(P.size * H.num_arrows(), kNone);
    for (Id i = 0; i < P.size; ++i)
      for (ArrId h : H.arrows_into(P.t[i])) P.right[i * H.num_arrows() + h] = local_id[a][psi.act_right(global[i], h)];
    d.local.push_back(std::move(P));
  }
  d.transition.assign(m, std::vector<std::vector<Id>>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      auto& chi = d.transition[a][b];
      chi.assign(d.local[a].size, kNone);
      for (Id e = 0; e < psi.size; ++e)
        if (local_id[a][e] != kNone && local_id[b][e] != kNone) chi[local_id[a][e]] = local_id[b][e];
    }
  return d;
}

GluedBundle glue(const DescentDatum& d) {
  if (const auto r = validate_descent(d); !r.ok()) throw Refusal("invalid descent datum:\n" + r.to_string());
  const Cover& C = d.cover;
  const std::size_t m = C.size();
  std::vector<std::size_t> offset(m + 1, 0);
  for (std::size_t a = 0; a < m; ++a) offset[a + 1] = offset[a] + d.local[a].size;
  std::vector<std::size_t> parent(offset[m]);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (Id e = 0; e < d.local[a].size; ++e)
        if (const Id f = d.transition[a][b][e]; f != kNone) {
          const std::size_t x = find(offset[a] + e), y = find(offset[b] + f);
          if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }

  GluedBundle out;
  Bibundle& P = out.bundle;
  P.source = cover_groupoid(C);
  P.target = d.target;
  out.class_of.resize(m);
  std::vector<Id> class_of_root(offset[m], kNone);
  std::vector<std::pair<std::size_t, Id>> reps;
  for (std::size_t a = 0; a < m; ++a) {
    out.class_of[a].resize(d.local[a].size);
    for (Id e = 0; e < d.local[a].size; ++e) {
      Id& c = class_of_root[find(offset[a] + e)];
      if (c == kNone) {
        c = static_cast<Id>(reps.size());
        reps.emplace_back(a, e);
      }
      out.class_of[a][e] = c;
    }
  }
  const FiniteGroupoid& H = *d.target;
  P.size = reps.size();
  for (auto [a, e] : reps) {
    P.s.push_back(d.point_of(a, e));
    P.t.push_back(d.local[a].t[e]);
    P.labels.push_back(C.part_label(a) + ":" + d.local[a].element_label(e));
  }
  fill_unit_left(P);
  P.right.assign(P.size * H.num_arrows(), kNone);
  for (Id c = 0; c < P.size; ++c) {
    auto [a, e] = reps[c];
    for (ArrId h : H.arrows_into(P.t[c])) P.right[c * H.num_arrows() + h] = out.class_of[a][d.local[a].act_right(e, h)];
  }
  return out;
}

bool is_descent_iso(const DescentDatum& d, const DescentDatum& e, const DescentIso& eta) {
  const std::size_t m = d.cover.size();
  if (e.cover.size() != m || eta.size() != m) return false;
  for (std::size_t a = 0; a < m; ++a)
    if (!is_two_iso(d.local[a], e.local[a], eta[a])) return false;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (Id x = 0; x < d.local[a].size; ++x) {
        const Id f = d.transition[a][b][x];
        if (f == kNone) continue;
        if (e.transition[a][b][eta[a][x]] != eta[b][f]) return false;
      }
  return true;
}

namespace {

// Descent isos split over points of M: per point, the choice on the least
// part containing it determines the rest through the transitions.
struct PointOption {
  std::vector<std::pair<std::size_t, std::pair<Id, Id>>> pairs;  // (part, (element, image))
};

std::vector<std::vector<PointOption>> descent_iso_options(const DescentDatum& d, const DescentDatum& e) {
  const Cover& C = d.cover;
  const auto containing = parts_containing(C);
  const FiniteGroupoid& H = *d.target;
  std::vector<std::vector<std::vector<Id>>> fd(C.size()), fe(C.size());
  for (std::size_t a = 0; a < C.size(); ++a) {
    fd[a] = fibers_of(d.local[a]);
    fe[a] = fibers_of(e.local[a]);
  }
  std::vector<std::vector<PointOption>> out(C.points);
  for (Id u = 0; u < C.points; ++u) {
    const auto& parts = containing[u];
    const std::size_t a0 = parts.front();
    const Id j0 = C.local_index(a0, u);
    const auto& src0 = fd[a0][j0];
    if (src0.empty() || src0.size() != fe[a0][j0].size()) continue;
    const Id x0 = src0.front();
    for (Id q : fe[a0][j0]) {
      if (e.local[a0].t[q] != d.local[a0].t[x0]) continue;
      // eta_a0 on the fiber, by equivariance from x0 -> q.
      std::vector<Id> eta0(d.local[a0].size, kNone);
      bool ok = true;
      std::vector<char> used(e.local[a0].size, 0);
      for (ArrId h : H.arrows_into(d.local[a0].t[x0])) {
        const Id x = d.local[a0].act_right(x0, h), y = e.local[a0].act_right(q, h);
        if (eta0[x] != kNone ? eta0[x] != y : used[y]) {
          ok = false;
          break;
        }
        eta0[x] = y;
        used[y] = 1;
      }
      for (Id x : src0) ok = ok && eta0[x] != kNone;
      if (!ok) continue;

      PointOption opt;
      for (std::size_t a : parts) {
        const Id j = C.local_index(a, u);
        std::vector<Id> image;
        for (Id x : fd[a][j]) {
          const Id y = a == a0 ? eta0[x] : e.transition[a0][a][eta0[d.transition[a][a0][x]]];
          image.push_back(y);
          opt.pairs.push_back({a, {x, y}});
        }
        std::vector<Id> sorted = image;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != fe[a][j]) ok = false;
      }
      if (!ok) continue;
      // Each component must be a fiberwise 2-iso and the squares must commute.
      std::vector<std::vector<Id>> eta(C.size());
      for (std::size_t a : parts) eta[a].assign(d.local[a].size, kNone);
      for (auto& [a, xy] : opt.pairs) eta[a][xy.first] = xy.second;
      for (auto& [a, xy] : opt.pairs) {
        const Id x = xy.first, y = xy.second;
        if (e.local[a].t[y] != d.local[a].t[x]) ok = false;
        for (ArrId h : H.arrows_into(d.local[a].t[x]))
          if (ok && eta[a][d.local[a].act_right(x, h)] != e.local[a].act_right(y, h)) ok = false;
        for (std::size_t b : parts)
          if (ok && e.transition[a][b][y] != eta[b][d.transition[a][b][x]]) ok = false;
      }
      if (ok) out[u].push_back(std::move(opt));
    }
  }
  return out;
}

std::size_t option_product(const std::vector<std::vector<PointOption>>& options, std::size_t cap) {
  std::size_t n = 1;
  for (const auto& o : options) {
    if (o.empty()) return 0;
    n = std::min(cap, n * o.size());
  }
  return n;
}

DescentIso assemble(const DescentDatum& d, const std::vector<std::vector<PointOption>>& options,
                    const std::vector<std::size_t>& choice) {
  DescentIso eta(d.cover.size());
  for (std::size_t a = 0; a < eta.size(); ++a) eta[a].assign(d.local[a].size, kNone);
  for (std::size_t u = 0; u < options.size(); ++u)
    for (auto& [a, xy] : options[u][choice[u]].pairs) eta[a][xy.first] = xy.second;
  return eta;
}

}  // namespace

std::vector<DescentIso> all_descent_isos(const DescentDatum& d, const DescentDatum& e) {
  std::vector<DescentIso> out;
  if (d.cover.size() != e.cover.size() || d.cover.points != e.cover.points) return out;
  const auto options = descent_iso_options(d, e);
  if (option_product(options, 1) == 0) return out;
  std::vector<std::size_t> choice(options.size(), 0);
  while (true) {
    out.push_back(assemble(d, options, choice));
    std::size_t u = options.size();
    while (u-- > 0) {
      if (++choice[u] < options[u].size()) break;
      choice[u] = 0;
    }
    if (u == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::optional<DescentIso> find_descent_iso(const DescentDatum& d, const DescentDatum& e) {
  if (d.cover.size() != e.cover.size() || d.cover.points != e.cover.points) return std::nullopt;
  const auto options = descent_iso_options(d, e);
  if (option_product(options, 1) == 0) return std::nullopt;
  return assemble(d, options, std::vector<std::size_t>(options.size(), 0));
}

TwoIso glue_iso(const GluedBundle& gd, const GluedBundle& ge, const DescentIso& eta) {
  TwoIso out(gd.bundle.size, kNone);
  for (std::size_t a = 0; a < eta.size(); ++a)
    for (Id x = 0; x < eta[a].size(); ++x) out[gd.class_of[a][x]] = ge.class_of[a][eta[a][x]];
  return out;
}

ValidationReport validate_cocycle(const BundleCocycle& c) {
  ValidationReport r = validate_cover(c.cover);
  if (!r.ok()) return r;
  const Cover& C = c.cover;
  const std::size_t m = C.size();
  if (c.k.size() != m * m * C.points) {
    r.structural.push_back("cocycle table has the wrong size");
    return r;
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (Id u = 0; u < C.points; ++u) {
        const bool over = C.contains(a, u) && C.contains(b, u);
        const Elem k = c.at(a, b, u);
        if (over != (k != kNone) || (over && k >= c.group.order())) {
          r.structural.push_back("transition " + C.part_label(a) + C.part_label(b) + " at " + C.point_label(u) +
                                 " does not match the overlap");
          return r;
        }
      }
  const FiniteGroup& K = c.group;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t d = 0; d < m; ++d)
        for (Id u : C.parts[a])
          if (C.contains(b, u) && C.contains(d, u) &&
              K.mul(c.at(a, b, u), c.at(b, d, u)) != c.at(a, d, u))
            r.add("k_ab k_bc = k_ac", "(" + C.part_label(a) + ", " + C.part_label(b) + ", " +
                                          C.part_label(d) + ") at " + C.point_label(u));
  return r;
}

Bibundle cocycle_to_bundle(const BundleCocycle& c) {
  if (const auto r = validate_cocycle(c); !r.ok()) throw Refusal("invalid cocycle:\n" + r.to_string());
  const FiniteGroup& K = c.group;
  const std::size_t k = K.order();
  Bibundle P{cover_groupoid(c.cover), b_group(K), c.cover.points * k, {}, {}, {}, {}, {}};
  for (Id u = 0; u < c.cover.points; ++u)
    for (Elem e = 0; e < k; ++e) {
      P.s.push_back(u);
      P.t.push_back(0);
      P.labels.push_back("(" + c.cover.point_label(u) + "," + K.label(e) + ")");
    }
  fill_unit_left(P);
  P.right.assign(P.size * k, kNone);
  for (Id u = 0; u < c.cover.points; ++u)
    for (Elem e = 0; e < k; ++e)
      for (Elem h = 0; h < k; ++h) P.right[(u * k + e) * k + h] = static_cast<Id>(u * k + K.mul(e, h));
  return P;
}

Elem chart_coordinate(const BundleCocycle& c, Id u, std::size_t a, Elem k) {
  std::size_t a0 = 0;
  while (a0 < c.cover.size() && !c.cover.contains(a0, u)) ++a0;
  return c.group.mul(c.at(a, a0, u), k);
}

DescentDatum cocycle_descent_datum(const BundleCocycle& c) {
  const Cover& C = c.cover;
  const FiniteGroup& K = c.group;
  const std::size_t k = K.order();
  DescentDatum d{C, b_group(K), {}, {}};
  for (std::size_t a = 0; a < C.size(); ++a) {
    Bibundle P{part_groupoid(C, a), d.target, C.parts[a].size() * k, {}, {}, {}, {}, {}};
    for (Id j = 0; j < C.parts[a].size(); ++j)
      for (Elem e = 0; e < k; ++e) {
        P.s.push_back(j);
        P.t.push_back(0);
        P.labels.push_back("(" + C.point_label(C.parts[a][j]) + "," + K.label(e) + ")");
      }
    fill_unit_left(P);
    P.right.assign(P.size * k, kNone);
    for (Id x = 0; x < P.size; ++x)
      for (Elem h = 0; h < k; ++h) P.right[x * k + h] = static_cast<Id>((x / k) * k + K.mul(x % k, h));
    d.local.push_back(std::move(P));
  }
  d.transition.assign(C.size(), std::vector<std::vector<Id>>(C.size()));
  for (std::size_t a = 0; a < C.size(); ++a)
    for (std::size_t b = 0; b < C.size(); ++b) {
      auto& chi = d.transition[a][b];
      chi.assign(d.local[a].size, kNone);
      for (Id j = 0; j < C.parts[a].size(); ++j) {
        const Id u = C.parts[a][j];
        const Id jb = C.local_index(b, u);
        if (jb == kNone) continue;
        for (Elem e = 0; e < k; ++e) chi[j * k + e] = static_cast<Id>(jb * k + K.mul(c.at(b, a, u), e));
      }
    }
  return d;
}

namespace {

// Local torsors psi_a over u are arrows_into(y[a][u]); the transition from a
// to b over u is left multiplication by arr[a][b][u]: y[a][u] -> y[b][u].
DescentDatum torsor_datum(const Cover& C, const GroupoidPtr& gp,
                          const std::vector<std::vector<ObjId>>& y,
                          const std::vector<std::vector<std::vector<ArrId>>>& arr) {
  const FiniteGroupoid& G = *gp;
  DescentDatum d{C, gp, {}, {}};
  std::vector<std::vector<Id>> offset(C.size());
  for (std::size_t a = 0; a < C.size(); ++a) {
    Bibundle P{part_groupoid(C, a), gp, 0, {}, {}, {}, {}, {}};
    for (Id j = 0; j < C.parts[a].size(); ++j) {
      offset[a].push_back(static_cast<Id>(P.s.size()));
      for (ArrId h : G.arrows_into(y[a][C.parts[a][j]])) {
        P.s.push_back(j);
        P.t.push_back(G.src(h));
        P.labels.push_back("(" + C.point_label(C.parts[a][j]) + "," + G.arrow_label(h) + ")");
      }
    }
    P.size = P.s.size();
    fill_unit_left(P);
    P.right.assign(P.size * G.num_arrows(), kNone);
    for (Id j = 0; j < C.parts[a].size(); ++j) {
      const auto& into = G.arrows_into(y[a][C.parts[a][j]]);
      for (Id i = 0; i < into.size(); ++i)
        for (ArrId h2 : G.arrows_into(G.src(into[i]))) {
          const ArrId hh = G.comp(into[i], h2);
          P.right[(offset[a][j] + i) * G.num_arrows() + h2] =
              offset[a][j] + static_cast<Id>(std::lower_bound(into.begin(), into.end(), hh) - into.begin());
        }
    }
    d.local.push_back(std::move(P));
  }
  d.transition.assign(C.size(), std::vector<std::vector<Id>>(C.size()));
  for (std::size_t a = 0; a < C.size(); ++a)
    for (std::size_t b = 0; b < C.size(); ++b) {
      auto& chi = d.transition[a][b];
      chi.assign(d.local[a].size, kNone);
      for (Id j = 0; j < C.parts[a].size(); ++j) {
        const Id u = C.parts[a][j];
        const Id jb = C.local_index(b, u);
        if (jb == kNone) continue;
        const auto& from = G.arrows_into(y[a][u]);
        const auto& to = G.arrows_into(y[b][u]);
        for (Id i = 0; i < from.size(); ++i) {
          const ArrId img = G.comp(arr[a][b][u], from[i]);
          chi[offset[a][j] + i] =
              offset[b][jb] + static_cast<Id>(std::lower_bound(to.begin(), to.end(), img) - to.begin());
        }
      }
    }
  return d;
}

// Per-point configuration: objects for each part containing u and arrows
// c_ab for a < b, satisfying c_bc c_ab = c_ac.
struct LocalChoice {
  std::vector<ObjId> y;                  // indexed like parts_containing(u)
  std::vector<std::vector<ArrId>> c;     // [i][j] for i < j
};

std::vector<LocalChoice> local_choices(const FiniteGroupoid& G, std::size_t r, std::size_t& raw) {
  std::vector<LocalChoice> out;
  LocalChoice cur{std::vector<ObjId>(r), std::vector<std::vector<ArrId>>(r, std::vector<ArrId>(r, kNone))};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) pairs.emplace_back(i, j);

  std::function<void(std::size_t)> pick_arrows = [&](std::size_t k) {
    if (k == pairs.size()) {
      ++raw;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
          for (std::size_t l = j + 1; l < r; ++l)
            if (G.comp(cur.c[j][l], cur.c[i][j]) != cur.c[i][l]) return;
      out.push_back(cur);
      return;
    }
    auto [i, j] = pairs[k];
    for (ArrId f : G.hom(cur.y[i], cur.y[j])) {
      cur.c[i][j] = f;
      pick_arrows(k + 1);
    }
  };
  std::function<void(std::size_t)> pick_objects = [&](std::size_t i) {
    if (i == r) {
      pick_arrows(0);
      return;
    }
    for (ObjId x = 0; x < G.num_objects(); ++x) {
      cur.y[i] = x;
      pick_objects(i + 1);
    }
  };
  pick_objects(0);
  return out;
}

DescentDatum datum_from_choices(const Cover& C, const GroupoidPtr& gp,
                                const std::vector<std::vector<std::size_t>>& containing,
                                const std::vector<const LocalChoice*>& at) {
  const FiniteGroupoid& G = *gp;
  std::vector<std::vector<ObjId>> y(C.size(), std::vector<ObjId>(C.points, kNone));
  std::vector<std::vector<std::vector<ArrId>>> arr(
      C.size(), std::vector<std::vector<ArrId>>(C.size(), std::vector<ArrId>(C.points, kNone)));
  for (Id u = 0; u < C.points; ++u) {
    const auto& parts = containing[u];
    const LocalChoice& ch = *at[u];
    for (std::size_t i = 0; i < parts.size(); ++i) {
      y[parts[i]][u] = ch.y[i];
      arr[parts[i]][parts[i]][u] = G.unit(ch.y[i]);
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        arr[parts[i]][parts[j]][u] = ch.c[i][j];
        arr[parts[j]][parts[i]][u] = G.inv(ch.c[i][j]);
      }
    }
  }
  return torsor_datum(C, gp, y, arr);
}

std::vector<DescentDatum> enumerate_impl(const Cover& C, const GroupoidPtr& gp, std::size_t& raw) {
  const auto containing = parts_containing(C);
  std::vector<std::vector<LocalChoice>> choices(C.points);
  std::size_t raw_total = 1;
  for (Id u = 0; u < C.points; ++u) {
    std::size_t r = 0;
    choices[u] = local_choices(*gp, containing[u].size(), r);
    raw_total *= r;
  }
  raw = raw_total;
  std::vector<DescentDatum> out;
  for (const auto& c : choices)
    if (c.empty()) return out;
  std::vector<std::size_t> idx(C.points, 0);
  while (true) {
    std::vector<const LocalChoice*> at(C.points);
    for (Id u = 0; u < C.points; ++u) at[u] = &choices[u][idx[u]];
    out.push_back(datum_from_choices(C, gp, containing, at));
    std::size_t u = C.points;
    while (u-- > 0) {
      if (++idx[u] < choices[u].size()) break;
      idx[u] = 0;
    }
    if (u == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<DescentDatum> sample_data(const Cover& C, const GroupoidPtr& gp, std::size_t n,
                                      std::uint64_t seed) {
  const FiniteGroupoid& G = *gp;
  std::mt19937_64 rng(seed);
  std::vector<DescentDatum> out;
  if (G.num_objects() == 0) return out;
  const auto containing = parts_containing(C);
  for (std::size_t s = 0; s < n; ++s) {
    // Coboundary data: chi_ab = c_b c_a^-1 through a random base object.
    std::vector<std::vector<ObjId>> y(C.size(), std::vector<ObjId>(C.points, kNone));
    std::vector<std::vector<ArrId>> c(C.size(), std::vector<ArrId>(C.points, kNone));
    std::vector<std::vector<std::vector<ArrId>>> arr(
        C.size(), std::vector<std::vector<ArrId>>(C.size(), std::vector<ArrId>(C.points, kNone)));
    for (Id u = 0; u < C.points; ++u) {
      const ObjId z = static_cast<ObjId>(rng() % G.num_objects());
      const auto& from = G.arrows_from(z);
      for (std::size_t a : containing[u]) {
        c[a][u] = from[rng() % from.size()];
        y[a][u] = G.tgt(c[a][u]);
      }
      for (std::size_t a : containing[u])
        for (std::size_t b : containing[u]) arr[a][b][u] = G.comp(c[b][u], G.inv(c[a][u]));
    }
    out.push_back(torsor_datum(C, gp, y, arr));
  }
  return out;
}

// Pointwise option counts match 2-iso counts of the glued maps, and distinct
// options glue to distinct maps.
std::string compare_homs(const DescentDatum& d, const DescentDatum& e, const GluedBundle& gd,
                         const GluedBundle& ge, const std::string& what) {
  const auto options = descent_iso_options(d, e);
  const std::size_t cap = 1'000'000;
  const std::size_t n = option_product(options, cap);
  const std::size_t m = all_two_isos(gd.bundle, ge.bundle, n + 1).size();
  if (n != m)
    return what + ": " + std::to_string(n) + " descent isos but " + std::to_string(m) + " 2-isos";
  for (std::size_t u = 0; u < options.size(); ++u) {
    std::vector<std::vector<Id>> glued;
    for (const PointOption& o : options[u]) {
      std::vector<Id> img;
      for (auto& [a, xy] : o.pairs) img.push_back(ge.class_of[a][xy.second]);
      glued.push_back(std::move(img));
    }
    std::sort(glued.begin(), glued.end());
    if (std::adjacent_find(glued.begin(), glued.end()) != glued.end())
      return what + ": two descent isos glue to the same 2-iso over point " + d.cover.point_label(static_cast<Id>(u));
  }
  return {};
}

std::string check_datum(const DescentDatum& d, const DescentDatum* prev) {
  if (const auto r = validate_descent(d); !r.ok()) return "datum invalid: " + r.to_string();
  const GluedBundle g = glue(d);
  if (const auto r = validate_bibundle(g.bundle); !r.ok()) return "glued map invalid: " + r.to_string();
  const DescentDatum back = restrict(g.bundle, d.cover);
  if (!find_descent_iso(back, d)) return "restrict(glue(D)) is not isomorphic to D";
  if (std::string w = compare_homs(d, d, g, g, "Aut"); !w.empty()) return w;
  if (prev) {
    const GluedBundle gp = glue(*prev);
    if (std::string w = compare_homs(d, *prev, g, gp, "Hom"); !w.empty()) return w;
  }
  return {};
}

}  // namespace

std::vector<DescentDatum> enumerate_descent_data(const Cover& c, const GroupoidPtr& g) {
  std::size_t raw = 0;
  return enumerate_impl(c, g, raw);
}

bool stack_check_is_exhaustive(const Cover& c, const FiniteGroupoid& g) {
  return c.points <= 3 && c.size() <= 3 && g.num_arrows() <= 6;
}

std::string StackReport::to_string() const {
  std::string s = exhaustive ? "exhaustive" : "sampled (seed " + std::to_string(seed) + ")";
  s += ": " + std::to_string(data) + " descent data checked";
  if (exhaustive) s += " of " + std::to_string(enumerated) + " candidates";
  s += ", " + std::to_string(failures) + " failures";
  if (!first_failure.empty()) s += "; first: " + first_failure;
  return s;
}

StackReport check_stack_property(const Cover& c, const GroupoidPtr& g, const StackOptions& options) {
  if (const auto r = validate_cover(c); !r.ok()) throw Refusal("invalid cover:\n" + r.to_string());
  StackReport report;
  report.exhaustive = !options.force_sample && stack_check_is_exhaustive(c, *g);
  report.seed = options.seed;
  std::vector<DescentDatum> data;
  if (report.exhaustive) {
    data = enumerate_impl(c, g, report.enumerated);
  } else {
    data = sample_data(c, g, options.samples, options.seed);
    report.enumerated = data.size();
  }
  report.data = data.size();

  std::vector<std::string> failure(data.size());
  const long n = static_cast<long>(data.size());
  if (options.parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) failure[i] = check_datum(data[i], i > 0 ? &data[i - 1] : nullptr);
  } else {
    for (long i = 0; i < n; ++i) failure[i] = check_datum(data[i], i > 0 ? &data[i - 1] : nullptr);
  }
  for (std::size_t i = 0; i < failure.size(); ++i)
    if (!failure[i].empty()) {
      if (report.failures++ == 0) report.first_failure = "datum " + std::to_string(i) + ": " + failure[i];
    }
  return report;
}

}  // namespace grpd
