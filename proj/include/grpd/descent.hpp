#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grpd/bibundle.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

// A finite set M = {0..points-1} with a covering family of subsets.
struct Cover {
  std::size_t points = 0;
  std::vector<std::vector<Id>> parts;  // ascending point ids
  std::vector<std::string> point_labels;
  std::vector<std::string> part_labels;

  std::size_t size() const { return parts.size(); }
  std::string point_label(Id u) const;
  std::string part_label(std::size_t a) const;
  // Index of u inside part a, or kNone.
  Id local_index(std::size_t a, Id u) const;
  bool contains(std::size_t a, Id u) const { return local_index(a, u) != kNone; }
};

ValidationReport validate_cover(const Cover& c);
GroupoidPtr cover_groupoid(const Cover& c);             // M as a trivial groupoid
GroupoidPtr part_groupoid(const Cover& c, std::size_t a);  // U_a as a trivial groupoid

// Local maps psi_a: U_a -> G (sources use local point indices) and
// transitions chi[a][b]: psi_a|U_ab -> psi_b|U_ab on element ids, kNone
// away from the overlap.
struct DescentDatum {
  Cover cover;
  GroupoidPtr target;
  std::vector<Bibundle> local;
  std::vector<std::vector<std::vector<Id>>> transition;

  // Point of M under element e of psi_a.
  Id point_of(std::size_t a, Id e) const { return cover.parts[a][local[a].s[e]]; }
};

// Every psi_a is a bibundle, every chi_ab is a 2-iso of restrictions,
// chi_aa = 1, chi_ba = chi_ab^-1, and chi_ca chi_bc chi_ab = 1 on triple
// overlaps. Index mismatches are structural.
ValidationReport validate_descent(const DescentDatum& d);

// psi_a = psi over U_a; chi_ab are identities.
DescentDatum restrict(const Bibundle& psi, const Cover& cover);

struct GluedBundle {
  Bibundle bundle;
  std::vector<std::vector<Id>> class_of;  // [a][e] -> glued element
};

// (disjoint union of the psi_a) / (e ~ chi_ab(e)). Elements are ordered by
// representative, which comes from the least part. Throws Refusal if the
// datum is invalid.
GluedBundle glue(const DescentDatum& d);

// eta[a] is a 2-iso psi_a -> psi'_a with chi'_ab eta_a = eta_b chi_ab.
using DescentIso = std::vector<std::vector<Id>>;

bool is_descent_iso(const DescentDatum& d, const DescentDatum& e, const DescentIso& eta);
std::optional<DescentIso> find_descent_iso(const DescentDatum& d, const DescentDatum& e);
std::vector<DescentIso> all_descent_isos(const DescentDatum& d, const DescentDatum& e);
// The 2-iso glue(d) -> glue(e) induced by eta.
TwoIso glue_iso(const GluedBundle& gd, const GluedBundle& ge, const DescentIso& eta);

// Transitions k[a][b][u] in K for a principal K-bundle; kNone away from
// U_ab.
struct BundleCocycle {
  Cover cover;
  FiniteGroup group;
  std::vector<Elem> k;  // (a * parts + b) * points + u

  Elem at(std::size_t a, std::size_t b, Id u) const {
    return k[(a * cover.size() + b) * cover.points + u];
  }
};

// k_ab k_bc = k_ac on every triple overlap (repeated indices included).
ValidationReport validate_cocycle(const BundleCocycle& c);
// M x K with the element (u, k) read in the least part containing u.
// Throws Refusal on a cocycle violation.
Bibundle cocycle_to_bundle(const BundleCocycle& c);
// Coordinate in part a of the element (u, k).
Elem chart_coordinate(const BundleCocycle& c, Id u, std::size_t a, Elem k);
// psi_a = U_a x K, chi_ab(u, k) = (u, k_ba(u) k).
DescentDatum cocycle_descent_datum(const BundleCocycle& c);

struct StackOptions {
  std::size_t samples = 64;
  std::uint64_t seed = 1;
  bool parallel = true;
  bool force_sample = false;
};

struct StackReport {
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::size_t enumerated = 0;  // candidate data considered
  std::size_t data = 0;        // valid data checked
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  std::string to_string() const;
};

// Whether the bounds allow exhaustive enumeration: |M| <= 3, at most 3
// parts, |G1| <= 6.
bool stack_check_is_exhaustive(const Cover& c, const FiniteGroupoid& g);

// Every valid datum D (enumerated or sampled) satisfies: glue(D) is a
// bibundle, restrict(glue(D)) is isomorphic to D, Aut(D) -> Aut(glue(D)) is
// a bijection, and Hom(D, D') -> Hom(glue(D), glue(D')) is a bijection for D'
// the previous datum.
StackReport check_stack_property(const Cover& c, const GroupoidPtr& g,
                                 const StackOptions& options = {});

// All valid data on canonical local torsors, in enumeration order.
std::vector<DescentDatum> enumerate_descent_data(const Cover& c, const GroupoidPtr& g);

}  // namespace grpd
