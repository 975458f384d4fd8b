#pragma once

#include "grpd/action.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

// X ⋊ K for a right action: arrow (x, k) = x * |K| + k goes from x·k to x;
// (x, k)(x·k, h) = (x, kh).
GroupoidPtr translation_groupoid(const ActionOnSet& a);

struct SemidirectSpace {
  GroupoidPtr groupoid;
  StrictHom projection;  // the base map extended to arrows
};

// X ⋊ G for a right action: arrows (x, g) with base(x) = t(g), ordered by x
// then g; s(x, g) = x·g, t(x, g) = x, (x, g)(x·g, h) = (x, gh).
// G ⋉ X for a left action: arrows (g, x) with s(g) = base(x), ordered by g
// then x; s(g, x) = x, t(g, x) = g·x, (g, h·x)(h, x) = (gh, x).
// Throws Refusal if the action fails its axioms.
SemidirectSpace semidirect_space(const GroupoidActionOnSet& a);

// G ⋊ K: arrows (g, k) = g * |K| + k with s(g, k) = s(g)·k, t(g, k) = t(g),
// (g, k)(g', k') = (g (g'·k^-1), kk'). Throws Refusal on an invalid action.
GroupoidPtr semidirect_group(const ActionOnGroupoid& a);

// The action of L on G ⋊ K by (g, k)·l = (g·l, k), for commuting actions.
ActionOnGroupoid lift_action(const ActionOnGroupoid& k_action,
                             const ActionOnGroupoid& l_action,
                             const GroupoidPtr& g_rtimes_k);

struct TwoGroupSemidirect {
  GroupoidPtr iterated;  // (G ⋊ K) ⋊ L
  GroupoidPtr combined;  // G ⋊ (K × L)
  StrictHom iso;         // ((g, k), l) -> (g, (k, l))
  bool verified = false;
  ValidationReport report;
};

// Builds both sides and checks the identity-on-G map is a strict
// isomorphism on every arrow. Throws Refusal with a witness when the actions
// do not commute.
TwoGroupSemidirect check_two_group_semidirect(const ActionOnGroupoid& k_action,
                                              const ActionOnGroupoid& l_action);

}  // namespace grpd
