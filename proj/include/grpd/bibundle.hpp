#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/action.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

// A Hilsum-Skandalis morphism P: G -> H. G acts on the left with base s_P,
// H on the right with base t_P:
//   g·p is defined iff s(g) = s_P(p), and then s_P(g·p) = t(g);
//   p·h is defined iff t_P(p) = t(h), and then t_P(p·h) = s(h).
// Undefined table entries hold kNone.
struct Bibundle {
  GroupoidPtr source;  // G
  GroupoidPtr target;  // H
  std::size_t size = 0;
  std::vector<ObjId> s, t;
  std::vector<Id> left;   // g * |P| + p
  std::vector<Id> right;  // p * |H1| + h
  std::vector<std::string> labels;

  Id act_left(ArrId g, Id p) const { return left[static_cast<std::size_t>(g) * size + p]; }
  Id act_right(Id p, ArrId h) const {
    return right[static_cast<std::size_t>(p) * target->num_arrows() + h];
  }
  std::string element_label(Id p) const;
};

// Principality of one side: the base map is onto, the action is free, and
// it is transitive on every fiber of the base map.
struct Principality {
  bool surjective = false;
  bool free = false;
  bool transitive = false;
  std::string witness;

  bool ok() const { return surjective && free && transitive; }
};

// H acting on the right over s_P.
Principality right_principality(const Bibundle& p);
// G acting on the left over t_P.
Principality left_principality(const Bibundle& p);
// The map (p, h) -> (p, p·h) from P x_{H0} H1 to P x_{G0} P is a bijection
// and s_P is onto.
bool right_principal_by_bijection(const Bibundle& p);

// Invariance of the legs, both action laws, compatibility and right
// principality. Table shape problems are structural.
ValidationReport validate_bibundle(const Bibundle& p);

struct EquivalenceCheck {
  Principality right, left;
  bool ok() const { return right.ok() && left.ok(); }
  std::string to_string() const;
};

EquivalenceCheck is_equivalence(const Bibundle& p);

// P = G1, s_P = t, t_P = s, both actions by multiplication.
Bibundle identity_bibundle(const GroupoidPtr& g);
// P = {(x, h) | phi(x) = t(h)} ordered by x then h, with
// g·(x, h)·h' = (t(g), phi(g) h h').
Bibundle from_strict_hom(const StrictHom& phi);
// (P x_{H0} Q) / H for (p, q)·h = (p·h, h^-1·q). Each orbit is represented by
// its least pair; elements are ordered by representative. Throws Refusal if
// the middle groupoids differ.
Bibundle compose(const Bibundle& p, const Bibundle& q);

// A 2-isomorphism is a bijection P -> Q commuting with both legs and both
// actions; map[p] is the image of p.
using TwoIso = std::vector<Id>;

bool is_two_iso(const Bibundle& p, const Bibundle& q, const TwoIso& alpha);
// First 2-iso in order of images of orbit representatives.
std::optional<TwoIso> find_two_iso(const Bibundle& p, const Bibundle& q);
// Every 2-iso, in search order. Stops after `cap` results.
std::vector<TwoIso> all_two_isos(const Bibundle& p, const Bibundle& q,
                                 std::size_t cap = static_cast<std::size_t>(-1));
std::size_t count_two_isos(const Bibundle& p, const Bibundle& q);

struct EssentialEquivalence {
  bool essentially_surjective = false;
  bool fully_faithful = false;
  std::string witness;

  bool ok() const { return essentially_surjective && fully_faithful; }
};

EssentialEquivalence is_essential_equivalence(const StrictHom& phi);

// f_P([s_P(p)]) = [t_P(p)].
struct CoarseMap {
  CoarseQuotient source, target;
  std::vector<Id> map;  // source class -> target class, kNone if unreached
  bool total = false;
  bool well_defined = false;
  bool bijective = false;
  std::string witness;
};

CoarseMap induced_coarse_map(const Bibundle& p);

// psi(g) = h0 h h0^-1 where p·h = g·p, for the least p over x and the least
// h0: t_P(p) -> y. `map` is the lexicographically least table among the
// conjugates of psi by S_y; only its conjugacy class is meaningful.
struct StabilizerHom {
  Stabilizer from, to;
  GroupHom raw;  // before conjugation
  GroupHom map;
  Elem conjugator = 0;
  bool homomorphism = false;
  bool isomorphism = false;
};

// Throws Refusal if f_P([x]) != [y].
StabilizerHom induced_stabilizer_hom(const Bibundle& p, ObjId x, ObjId y);

// Data of a map X ⋊ K -> Y ⋊ L between translation groupoids: K acts on P on
// the left with s_P(k·p) = s_P(p)·k^-1, L on the right with
// t_P(p·l) = t_P(p)·l.
struct TranslationData {
  ActionOnSet x;  // right K-action on X
  ActionOnSet y;  // right L-action on Y
  std::size_t size = 0;
  std::vector<Id> s, t;
  std::vector<Id> k_left;   // p * |K| + k
  std::vector<Id> l_right;  // p * |L| + l
};

// Throws Refusal with a witness on equivariance or principality failures.
Bibundle translation_bibundle(const TranslationData& d);
// Inverse of translation_bibundle for bibundles between translation_groupoid(x)
// and translation_groupoid(y).
TranslationData extract_translation_data(const Bibundle& p, const ActionOnSet& x,
                                         const ActionOnSet& y);

// Same class counts and a class matching with isomorphic stabilizers. When
// true, `witness` is an explicit equivalence built from a strict functor
// through chosen basepoints.
struct WeakEquivalenceReport {
  bool equivalent = false;
  std::string reason;
  std::size_t classes_g = 0, classes_h = 0;
  std::vector<std::size_t> stabilizer_orders_g, stabilizer_orders_h;
  std::vector<Id> matching;  // G class -> H class
  std::optional<Bibundle> witness;
  bool witness_verified = false;
};

WeakEquivalenceReport decide_weak_equivalence(const GroupoidPtr& g, const GroupoidPtr& h,
                                              bool build_witness = true);

}  // namespace grpd
