#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grpd/group.hpp"
#include "grpd/types.hpp"

namespace grpd {

// One violated axiom, with the number of failing tuples and the first one
// found in id order.
struct Violation {
  std::string axiom;
  std::size_t count = 0;
  std::string witness;
};

struct ValidationReport {
  std::vector<std::string> structural;
  std::vector<Violation> violations;

  bool ok() const { return structural.empty() && violations.empty(); }
  void add(const std::string& axiom, const std::string& witness);
  void merge(const ValidationReport& other, const std::string& prefix = {});
  std::string to_string() const;
};

// A finite groupoid with composition m(g, h) = gh defined iff s(g) = t(h);
// s(gh) = s(h), t(gh) = t(g).
//
// Composition is a dense table over composable pairs: the row of g is indexed
// by the position of h among the arrows whose target is s(g). Entries may be
// kNone for groupoids read from files; validate_groupoid reports those.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;

  std::size_t num_objects() const { return object_labels_.size(); }
  std::size_t num_arrows() const { return arrow_labels_.size(); }

  ObjId src(ArrId g) const { return src_[g]; }
  ObjId tgt(ArrId g) const { return tgt_[g]; }
  ArrId unit(ObjId x) const { return unit_[x]; }
  ArrId inv(ArrId g) const { return inv_[g]; }
  bool composable(ArrId g, ArrId h) const { return src_[g] == tgt_[h]; }
  // gh; requires composable(g, h).
  ArrId comp(ArrId g, ArrId h) const {
    return comp_[comp_offset_[g] + pos_in_target_[h]];
  }

  // Arrows with the given target (resp. source), ascending.
  const std::vector<ArrId>& arrows_into(ObjId x) const { return into_[x]; }
  const std::vector<ArrId>& arrows_from(ObjId x) const { return from_[x]; }
  std::vector<ArrId> hom(ObjId from, ObjId to) const;
  bool is_loop(ArrId g) const { return src_[g] == tgt_[g]; }
  bool is_unit(ArrId g) const { return unit_[src_[g]] == g; }

  const std::string& object_label(ObjId x) const { return object_labels_[x]; }
  const std::string& arrow_label(ArrId g) const { return arrow_labels_[g]; }
  const std::vector<std::string>& object_labels() const { return object_labels_; }
  const std::vector<std::string>& arrow_labels() const { return arrow_labels_; }

  const std::vector<std::string>& structural_issues() const { return structural_; }
  // Products supplied for pairs that are not composable.
  const std::vector<std::array<ArrId, 3>>& stray_products() const { return stray_; }

  // Same tables (labels included).
  bool operator==(const FiniteGroupoid& other) const;

 private:
  friend class GroupoidBuilder;

  std::vector<std::string> object_labels_, arrow_labels_;
  std::vector<ObjId> src_, tgt_;
  std::vector<ArrId> unit_, inv_;
  std::vector<std::vector<ArrId>> into_, from_;
  std::vector<Id> pos_in_target_;
  std::vector<std::size_t> comp_offset_;
  std::vector<ArrId> comp_;
  std::vector<std::array<ArrId, 3>> stray_;
  std::vector<std::string> structural_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

// Accumulates tables, then freezes them into a FiniteGroupoid. Out-of-range
// ids are recorded as structural issues and the offending entry is dropped.
class GroupoidBuilder {
 public:
  ObjId add_object(std::string label);
  ArrId add_arrow(std::string label, ObjId src, ObjId tgt);
  void set_unit(ObjId x, ArrId g);
  void set_inverse(ArrId g, ArrId g_inv);
  void set_product(ArrId g, ArrId h, ArrId gh);

  std::size_t num_objects() const { return object_labels_.size(); }
  std::size_t num_arrows() const { return arrow_labels_.size(); }

  FiniteGroupoid build() &&;
  // Fills every composable product from `compose` (explicit set_product
  // entries are ignored).
  FiniteGroupoid build(const std::function<ArrId(ArrId, ArrId)>& compose) &&;
  GroupoidPtr build_shared(const std::function<ArrId(ArrId, ArrId)>& compose) &&;

 private:
  void prepare(FiniteGroupoid& g);

  std::vector<std::string> object_labels_, arrow_labels_;
  std::vector<ObjId> src_, tgt_;
  std::vector<ArrId> unit_, inv_;
  std::vector<std::array<ArrId, 3>> products_;
  std::vector<std::string> structural_;
};

ValidationReport validate_groupoid(const FiniteGroupoid& g);

// A functor between finite groupoids.
struct StrictHom {
  GroupoidPtr domain;
  GroupoidPtr codomain;
  std::vector<ObjId> on_objects;
  std::vector<ArrId> on_arrows;
};

ValidationReport validate_strict_hom(const StrictHom& phi);
// A valid hom that is bijective on objects and on arrows.
bool is_strict_isomorphism(const StrictHom& phi);
StrictHom identity_hom(const GroupoidPtr& g);
StrictHom compose_homs(const StrictHom& first, const StrictHom& second);

GroupoidPtr trivial_groupoid(const std::vector<std::string>& points);
GroupoidPtr trivial_groupoid(std::size_t n);
GroupoidPtr b_group(const FiniteGroup& k);
// Exactly one arrow between any two of n objects; arrow (i, j): j -> i is
// numbered i * n + j.
GroupoidPtr pair_groupoid(std::size_t n);
GroupoidPtr opposite(const FiniteGroupoid& g);
// Objects and arrows of `a` first, then those of `b`.
GroupoidPtr disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);

struct CoarseQuotient {
  std::vector<Id> class_of;               // object -> class index
  std::vector<std::vector<ObjId>> classes;  // ascending; classes[i][0] is the representative

  std::size_t size() const { return classes.size(); }
};

// Classes ordered by their minimal object id.
CoarseQuotient coarse_quotient(const FiniteGroupoid& g);

// S_x as a group; element i is arrows[i] (ascending arrow ids).
struct Stabilizer {
  FiniteGroup group;
  std::vector<ArrId> arrows;

  Elem element_of(ArrId g) const;
};

Stabilizer stabilizer(const FiniteGroupoid& g, ObjId x);
bool all_stabilizers_trivial(const FiniteGroupoid& g);

}  // namespace grpd
