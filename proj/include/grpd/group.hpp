#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/types.hpp"

namespace grpd {

// A finite group given by its multiplication table. Elements are 0..n-1.
class FiniteGroup {
 public:
  // The trivial group.
  FiniteGroup();

  // Checks closure, identity, inverses and associativity; throws
  // StructuralError on an out-of-range entry and std::invalid_argument on a
  // failed group axiom.
  static FiniteGroup from_table(std::size_t order, std::vector<Elem> mul,
                                std::vector<std::string> labels = {});

  // No axiom checks; for tables produced by trusted constructions.
  static FiniteGroup unchecked(std::size_t order, std::vector<Elem> mul,
                               std::vector<std::string> labels = {});

  static FiniteGroup cyclic(std::size_t n);
  // Permutations of {0..n-1} in lexicographic order; mul(a, b) = a ∘ b.
  static FiniteGroup symmetric(std::size_t n);
  // Elements (a, b) numbered a * |rhs| + b.
  static FiniteGroup product(const FiniteGroup& lhs, const FiniteGroup& rhs);
  static FiniteGroup dihedral(std::size_t n);

  std::size_t order() const { return order_; }
  Elem mul(Elem a, Elem b) const { return mul_[a * order_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem identity() const { return identity_; }
  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Elem>& table() const { return mul_; }

  // Only meaningful for groups built by symmetric().
  const Perm& permutation(Elem a) const { return perms_[a]; }
  Elem find_permutation(const Perm& p) const;

  bool operator==(const FiniteGroup& other) const {
    return order_ == other.order_ && mul_ == other.mul_;
  }

 private:
  struct Trusted {};
  FiniteGroup(Trusted, std::size_t order, std::vector<Elem> mul,
              std::vector<std::string> labels);

  std::size_t order_ = 1;
  std::vector<Elem> mul_;
  std::vector<Elem> inv_;
  Elem identity_ = 0;
  std::vector<std::string> labels_;
  std::vector<Perm> perms_;

  friend FiniteGroup subgroup(const FiniteGroup&, const std::vector<Elem>&);
  friend FiniteGroup automorphism_group(const FiniteGroup&,
                                        std::vector<std::vector<Elem>>*);
};

using GroupHom = std::vector<Elem>;

std::size_t element_order(const FiniteGroup& g, Elem a);
// Greedy generating set: repeatedly adds the least element outside the
// subgroup generated so far.
std::vector<Elem> generators(const FiniteGroup& g);
std::vector<Elem> generated_subgroup(const FiniteGroup& g,
                                     const std::vector<Elem>& gens);

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to,
                     const GroupHom& map);
bool is_isomorphism(const FiniteGroup& from, const FiniteGroup& to,
                    const GroupHom& map);

// Backtracking over images of generators. Returns the first isomorphism in
// lexicographic order of generator images.
std::optional<GroupHom> find_isomorphism(const FiniteGroup& from,
                                         const FiniteGroup& to);
std::vector<GroupHom> all_isomorphisms(const FiniteGroup& from,
                                       const FiniteGroup& to);
bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

// Automorphisms sorted lexicographically by image table; the identity comes
// first. The group law is composition: mul(l, m) = l ∘ m.
FiniteGroup automorphism_group(const FiniteGroup& g,
                               std::vector<std::vector<Elem>>* automorphisms);

std::vector<Elem> center(const FiniteGroup& g);
bool is_abelian(const FiniteGroup& g);
bool is_subgroup(const FiniteGroup& g, const std::vector<Elem>& elems);
bool is_normal(const FiniteGroup& g, const std::vector<Elem>& elems);
// The subgroup on `elems` (which must be closed); element i of the result
// is elems[i].
FiniteGroup subgroup(const FiniteGroup& g, const std::vector<Elem>& elems);

}  // namespace grpd
