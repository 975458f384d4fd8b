#include "grpd/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "grpd/kernels.hpp"

namespace grpd {

void ValidationReport::add(const std::string& axiom, const std::string& witness) {
  for (auto& v : violations) {
    if (v.axiom == axiom) {
      ++v.count;
      return;
    }
  }
  violations.push_back({axiom, 1, witness});
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (const auto& s : other.structural) structural.push_back(prefix + s);
  for (const auto& v : other.violations)
    violations.push_back({prefix + v.axiom, v.count, v.witness});
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  if (ok()) {
    os << "valid\n";
    return os.str();
  }
  for (const auto& s : structural) os << "structural: " << s << '\n';
  for (const auto& v : violations)
    os << "violated: " << v.axiom << " (" << v.count << " failures; first "
       << v.witness << ")\n";
  return os.str();
}

std::vector<ArrId> FiniteGroupoid::hom(ObjId from, ObjId to) const {
  std::vector<ArrId> out;
  for (ArrId g : from_[from])
    if (tgt_[g] == to) out.push_back(g);
  return out;
}

bool FiniteGroupoid::operator==(const FiniteGroupoid& o) const {
  return object_labels_ == o.object_labels_ && arrow_labels_ == o.arrow_labels_ &&
         src_ == o.src_ && tgt_ == o.tgt_ && unit_ == o.unit_ && inv_ == o.inv_ &&
         comp_ == o.comp_ && stray_ == o.stray_;
}

// ---------------------------------------------------------------------------

ObjId GroupoidBuilder::add_object(std::string label) {
  object_labels_.push_back(std::move(label));
  unit_.push_back(kNone);
  return static_cast<ObjId>(object_labels_.size() - 1);
}

ArrId GroupoidBuilder::add_arrow(std::string label, ObjId src, ObjId tgt) {
  const ArrId id = static_cast<ArrId>(arrow_labels_.size());
  if (src >= object_labels_.size() || tgt >= object_labels_.size()) {
    structural_.push_back("arrow " + label + " has dangling endpoint");
    src = tgt = kNone;
  }
  arrow_labels_.push_back(std::move(label));
  src_.push_back(src);
  tgt_.push_back(tgt);
  inv_.push_back(kNone);
  return id;
}

void GroupoidBuilder::set_unit(ObjId x, ArrId g) {
  if (x >= object_labels_.size() || g >= arrow_labels_.size()) {
    structural_.push_back("unit entry (" + std::to_string(x) + ", " +
                          std::to_string(g) + ") has a dangling id");
    return;
  }
  unit_[x] = g;
}

// The inverse may be an arrow added later; its range is checked in prepare().
void GroupoidBuilder::set_inverse(ArrId g, ArrId g_inv) {
  if (g >= arrow_labels_.size()) {
    structural_.push_back("inverse entry (" + std::to_string(g) + ", " +
                          std::to_string(g_inv) + ") has a dangling id");
    return;
  }
  inv_[g] = g_inv;
}

void GroupoidBuilder::set_product(ArrId g, ArrId h, ArrId gh) {
  const std::size_t n = arrow_labels_.size();
  if (g >= n || h >= n || gh >= n) {
    structural_.push_back("product entry (" + std::to_string(g) + ", " +
                          std::to_string(h) + ", " + std::to_string(gh) +
                          ") has a dangling id");
    return;
  }
  products_.push_back({g, h, gh});
}

void GroupoidBuilder::prepare(FiniteGroupoid& g) {
  g.object_labels_ = std::move(object_labels_);
  g.arrow_labels_ = std::move(arrow_labels_);
  g.src_ = std::move(src_);
  g.tgt_ = std::move(tgt_);
  g.unit_ = std::move(unit_);
  g.inv_ = std::move(inv_);
  g.structural_ = std::move(structural_);

  const std::size_t nobj = g.object_labels_.size(), narr = g.arrow_labels_.size();
  for (ArrId a = 0; a < narr; ++a)
    if (g.inv_[a] != kNone && g.inv_[a] >= narr) {
      g.structural_.push_back("inverse entry (" + std::to_string(a) + ", " +
                              std::to_string(g.inv_[a]) + ") has a dangling id");
      g.inv_[a] = kNone;
    }
  g.into_.assign(nobj, {});
  g.from_.assign(nobj, {});
  g.pos_in_target_.assign(narr, kNone);
  for (ArrId a = 0; a < narr; ++a) {
    if (g.src_[a] == kNone) continue;
    g.pos_in_target_[a] = static_cast<Id>(g.into_[g.tgt_[a]].size());
    g.into_[g.tgt_[a]].push_back(a);
    g.from_[g.src_[a]].push_back(a);
  }
  g.comp_offset_.assign(narr, 0);
  std::size_t total = 0;
  for (ArrId a = 0; a < narr; ++a) {
    g.comp_offset_[a] = total;
    if (g.src_[a] != kNone) total += g.into_[g.src_[a]].size();
  }
  g.comp_.assign(total, kNone);
}

FiniteGroupoid GroupoidBuilder::build() && {
  FiniteGroupoid g;
  auto products = std::move(products_);
  prepare(g);
  for (const auto& [a, b, ab] : products) {
    if (g.src_[a] == kNone || g.src_[b] == kNone || !g.composable(a, b)) {
      g.stray_.push_back({a, b, ab});
      continue;
    }
    ArrId& slot = g.comp_[g.comp_offset_[a] + g.pos_in_target_[b]];
    if (slot != kNone && slot != ab)
      g.structural_.push_back("conflicting products for (" + g.arrow_labels_[a] +
                              ", " + g.arrow_labels_[b] + ")");
    slot = ab;
  }
  return g;
}

FiniteGroupoid GroupoidBuilder::build(
    const std::function<ArrId(ArrId, ArrId)>& compose) && {
  FiniteGroupoid g;
  prepare(g);
  for (ArrId a = 0; a < g.num_arrows(); ++a) {
    if (g.src_[a] == kNone) continue;
    for (ArrId b : g.into_[g.src_[a]])
      g.comp_[g.comp_offset_[a] + g.pos_in_target_[b]] = compose(a, b);
  }
  return g;
}

GroupoidPtr GroupoidBuilder::build_shared(
    const std::function<ArrId(ArrId, ArrId)>& compose) && {
  return std::make_shared<const FiniteGroupoid>(std::move(*this).build(compose));
}

// ---------------------------------------------------------------------------

ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport r;
  r.structural = g.structural_issues();
  const std::size_t narr = g.num_arrows();
  auto lab = [&](ArrId a) { return a < narr ? g.arrow_label(a) : std::string("?"); };
  bool arrows_ok = true;
  for (ArrId a = 0; a < narr; ++a)
    if (g.src(a) == kNone) arrows_ok = false;
  if (!arrows_ok) return r;

  bool units_ok = true;
  for (ObjId x = 0; x < g.num_objects(); ++x) {
    const ArrId u = g.unit(x);
    if (u == kNone) {
      r.add("unit missing", "object " + g.object_label(x));
      units_ok = false;
    } else if (g.src(u) != x || g.tgt(u) != x) {
      r.add("s(1_x) = t(1_x) = x", "object " + g.object_label(x));
      units_ok = false;
    }
  }
  bool inv_ok = true;
  for (ArrId a = 0; a < narr; ++a) {
    const ArrId b = g.inv(a);
    if (b == kNone) {
      r.add("inv missing", "arrow " + lab(a));
      inv_ok = false;
    } else if (g.src(b) != g.tgt(a) || g.tgt(b) != g.src(a)) {
      r.add("s(g^-1) = t(g), t(g^-1) = s(g)", "arrow " + lab(a));
      inv_ok = false;
    }
  }
  for (const auto& [a, b, ab] : g.stray_products())
    r.add("comp defined only on composable pairs",
          "(" + lab(a) + ", " + lab(b) + ") -> " + lab(ab));

  bool comp_ok = true;
  for (ArrId a = 0; a < narr; ++a) {
    for (ArrId b : g.arrows_into(g.src(a))) {
      const ArrId ab = g.comp(a, b);
      if (ab == kNone) {
        r.add("comp missing", "(" + lab(a) + ", " + lab(b) + ")");
        comp_ok = false;
      } else if (g.src(ab) != g.src(b) || g.tgt(ab) != g.tgt(a)) {
        r.add("s(gh) = s(h), t(gh) = t(g)", "(" + lab(a) + ", " + lab(b) + ")");
        comp_ok = false;
      }
    }
  }
  if (!comp_ok) return r;

  if (units_ok) {
    for (ArrId a = 0; a < narr; ++a) {
      if (g.comp(a, g.unit(g.src(a))) != a) r.add("g 1 = g", "arrow " + lab(a));
      if (g.comp(g.unit(g.tgt(a)), a) != a) r.add("1 g = g", "arrow " + lab(a));
    }
    if (inv_ok) {
      for (ArrId a = 0; a < narr; ++a) {
        if (g.comp(g.inv(a), a) != g.unit(g.src(a)))
          r.add("g^-1 g = 1_s(g)", "arrow " + lab(a));
        if (g.comp(a, g.inv(a)) != g.unit(g.tgt(a)))
          r.add("g g^-1 = 1_t(g)", "arrow " + lab(a));
      }
    }
  }

  const kernels::TripleScan assoc = kernels::omp::associativity(g);
  if (assoc.count > 0) {
    r.violations.push_back(
        {"g(hk) = (gh)k", assoc.count,
         "(" + lab(assoc.first[0]) + ", " + lab(assoc.first[1]) + ", " +
             lab(assoc.first[2]) + ")"});
  }
  return r;
}

// ---------------------------------------------------------------------------

ValidationReport validate_strict_hom(const StrictHom& phi) {
  ValidationReport r;
  const FiniteGroupoid& g = *phi.domain;
  const FiniteGroupoid& h = *phi.codomain;
  if (phi.on_objects.size() != g.num_objects() || phi.on_arrows.size() != g.num_arrows()) {
    r.structural.push_back("hom tables do not match the domain");
    return r;
  }
  for (ObjId y : phi.on_objects)
    if (y >= h.num_objects()) r.structural.push_back("object image out of range");
  for (ArrId b : phi.on_arrows)
    if (b >= h.num_arrows()) r.structural.push_back("arrow image out of range");
  if (!r.structural.empty()) return r;

  const auto& f0 = phi.on_objects;
  const auto& f1 = phi.on_arrows;
  for (ArrId a = 0; a < g.num_arrows(); ++a) {
    if (h.src(f1[a]) != f0[g.src(a)]) r.add("commutes with s", g.arrow_label(a));
    if (h.tgt(f1[a]) != f0[g.tgt(a)]) r.add("commutes with t", g.arrow_label(a));
    if (f1[g.inv(a)] != h.inv(f1[a])) r.add("commutes with inv", g.arrow_label(a));
  }
  for (ObjId x = 0; x < g.num_objects(); ++x)
    if (f1[g.unit(x)] != h.unit(f0[x])) r.add("commutes with unit", g.object_label(x));
  if (!r.ok()) return r;
  for (ArrId a = 0; a < g.num_arrows(); ++a)
    for (ArrId b : g.arrows_into(g.src(a)))
      if (f1[g.comp(a, b)] != h.comp(f1[a], f1[b]))
        r.add("commutes with comp", "(" + g.arrow_label(a) + ", " + g.arrow_label(b) + ")");
  return r;
}

bool is_strict_isomorphism(const StrictHom& phi) {
  if (!validate_strict_hom(phi).ok()) return false;
  if (phi.domain->num_objects() != phi.codomain->num_objects() ||
      phi.domain->num_arrows() != phi.codomain->num_arrows())
    return false;
  std::vector<bool> hit_o(phi.codomain->num_objects(), false);
  for (ObjId y : phi.on_objects) {
    if (hit_o[y]) return false;
    hit_o[y] = true;
  }
  std::vector<bool> hit_a(phi.codomain->num_arrows(), false);
  for (ArrId b : phi.on_arrows) {
    if (hit_a[b]) return false;
    hit_a[b] = true;
  }
  return true;
}

StrictHom identity_hom(const GroupoidPtr& g) {
  StrictHom h{g, g, std::vector<ObjId>(g->num_objects()), std::vector<ArrId>(g->num_arrows())};
  std::iota(h.on_objects.begin(), h.on_objects.end(), ObjId{0});
  std::iota(h.on_arrows.begin(), h.on_arrows.end(), ArrId{0});
  return h;
}

StrictHom compose_homs(const StrictHom& first, const StrictHom& second) {
  StrictHom h{first.domain, second.codomain, {}, {}};
  for (ObjId y : first.on_objects) h.on_objects.push_back(second.on_objects[y]);
  for (ArrId b : first.on_arrows) h.on_arrows.push_back(second.on_arrows[b]);
  return h;
}

// ---------------------------------------------------------------------------

GroupoidPtr trivial_groupoid(const std::vector<std::string>& points) {
  GroupoidBuilder b;
  for (const auto& p : points) b.add_object(p);
  for (ObjId x = 0; x < points.size(); ++x) {
    b.add_arrow("1_" + points[x], x, x);
    b.set_unit(x, x);
    b.set_inverse(x, x);
  }
  return std::move(b).build_shared([](ArrId a, ArrId) { return a; });
}

GroupoidPtr trivial_groupoid(std::size_t n) {
  std::vector<std::string> points(n);
  for (std::size_t i = 0; i < n; ++i) points[i] = std::to_string(i);
  return trivial_groupoid(points);
}

GroupoidPtr b_group(const FiniteGroup& k) {
  GroupoidBuilder b;
  b.add_object("*");
  for (Elem a = 0; a < k.order(); ++a) b.add_arrow(k.label(a), 0, 0);
  for (Elem a = 0; a < k.order(); ++a) b.set_inverse(a, k.inv(a));
  b.set_unit(0, k.identity());
  return std::move(b).build_shared([&k](ArrId g, ArrId h) { return k.mul(g, h); });
}

GroupoidPtr pair_groupoid(std::size_t n) {
  GroupoidBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_object(std::to_string(i));
  for (ObjId i = 0; i < n; ++i)
    for (ObjId j = 0; j < n; ++j) {
      const ArrId a = b.add_arrow("(" + std::to_string(i) + "," + std::to_string(j) + ")", j, i);
      b.set_inverse(a, static_cast<ArrId>(j * n + i));
    }
  for (ObjId i = 0; i < n; ++i) b.set_unit(i, static_cast<ArrId>(i * n + i));
  return std::move(b).build_shared([n](ArrId g, ArrId h) {
    return static_cast<ArrId>((g / n) * n + h % n);
  });
}

GroupoidPtr opposite(const FiniteGroupoid& g) {
  GroupoidBuilder b;
  for (ObjId x = 0; x < g.num_objects(); ++x) b.add_object(g.object_label(x));
  for (ArrId a = 0; a < g.num_arrows(); ++a) {
    b.add_arrow(g.arrow_label(a), g.tgt(a), g.src(a));
    b.set_inverse(a, g.inv(a));
  }
  for (ObjId x = 0; x < g.num_objects(); ++x) b.set_unit(x, g.unit(x));
  return std::move(b).build_shared([&g](ArrId a, ArrId c) { return g.comp(c, a); });
}

GroupoidPtr disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& c) {
  std::set<std::string> seen_o(a.object_labels().begin(), a.object_labels().end());
  std::set<std::string> seen_a(a.arrow_labels().begin(), a.arrow_labels().end());
  bool clash = false;
  for (const auto& l : c.object_labels()) clash |= seen_o.count(l) > 0;
  for (const auto& l : c.arrow_labels()) clash |= seen_a.count(l) > 0;
  const std::string pa = clash ? "L." : "", pc = clash ? "R." : "";

  GroupoidBuilder b;
  const ObjId no = static_cast<ObjId>(a.num_objects());
  const ArrId na = static_cast<ArrId>(a.num_arrows());
  for (ObjId x = 0; x < a.num_objects(); ++x) b.add_object(pa + a.object_label(x));
  for (ObjId x = 0; x < c.num_objects(); ++x) b.add_object(pc + c.object_label(x));
  for (ArrId g = 0; g < a.num_arrows(); ++g) {
    b.add_arrow(pa + a.arrow_label(g), a.src(g), a.tgt(g));
    b.set_inverse(g, a.inv(g));
  }
  for (ArrId g = 0; g < c.num_arrows(); ++g) {
    b.add_arrow(pc + c.arrow_label(g), no + c.src(g), no + c.tgt(g));
    b.set_inverse(na + g, na + c.inv(g));
  }
  for (ObjId x = 0; x < a.num_objects(); ++x) b.set_unit(x, a.unit(x));
  for (ObjId x = 0; x < c.num_objects(); ++x) b.set_unit(no + x, na + c.unit(x));
  return std::move(b).build_shared([&](ArrId g, ArrId h) {
    if (g < na) return a.comp(g, h);
    return na + c.comp(g - na, h - na);
  });
}

// ---------------------------------------------------------------------------

CoarseQuotient coarse_quotient(const FiniteGroupoid& g) {
  const std::size_t n = g.num_objects();
  std::vector<Id> parent(n);
  std::iota(parent.begin(), parent.end(), Id{0});
  auto find = [&](Id x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (ArrId a = 0; a < g.num_arrows(); ++a) {
    Id u = find(g.src(a)), v = find(g.tgt(a));
    if (u != v) parent[std::max(u, v)] = std::min(u, v);
  }
  CoarseQuotient q;
  q.class_of.assign(n, kNone);
  std::vector<Id> class_of_root(n, kNone);
  for (ObjId x = 0; x < n; ++x) {
    const Id r = find(x);
    if (class_of_root[r] == kNone) {
      class_of_root[r] = static_cast<Id>(q.classes.size());
      q.classes.emplace_back();
    }
    q.class_of[x] = class_of_root[r];
    q.classes[class_of_root[r]].push_back(x);
  }
  return q;
}

Elem Stabilizer::element_of(ArrId g) const {
  auto it = std::lower_bound(arrows.begin(), arrows.end(), g);
  if (it == arrows.end() || *it != g) return kNone;
  return static_cast<Elem>(it - arrows.begin());
}

Stabilizer stabilizer(const FiniteGroupoid& g, ObjId x) {
  Stabilizer s;
  s.arrows = g.hom(x, x);
  const std::size_t m = s.arrows.size();
  std::vector<Elem> mul(m * m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = g.arrow_label(s.arrows[i]);
    for (std::size_t j = 0; j < m; ++j)
      mul[i * m + j] = s.element_of(g.comp(s.arrows[i], s.arrows[j]));
  }
  s.group = FiniteGroup::unchecked(m, std::move(mul), std::move(labels));
  return s;
}

bool all_stabilizers_trivial(const FiniteGroupoid& g) {
  for (ArrId a = 0; a < g.num_arrows(); ++a)
    if (g.is_loop(a) && !g.is_unit(a)) return false;
  return true;
}

}  // namespace grpd
