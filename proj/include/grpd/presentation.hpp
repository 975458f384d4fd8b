#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/action.hpp"
#include "grpd/bibundle.hpp"
#include "grpd/charted.hpp"
#include "grpd/construct.hpp"
#include "grpd/transcript.hpp"

namespace grpd {

// A left G-space F over G0 with a commuting right L-action that is principal
// on the fibers of the base map, and optionally a group K acting on both G
// and F with (g·f)·k = (g·k)·(f·k).
struct EquivariantBundleData {
  GroupoidPtr groupoid;
  GroupoidActionOnSet bundle;  // left action, base map pi
  ActionOnSet fiber_action;    // right action of L on F
  std::optional<ActionOnGroupoid> k_on_groupoid;
  std::optional<ActionOnSet> k_on_bundle;  // right action of K on F
};

struct PrincipalQuotient {
  SemidirectSpace action_groupoid;          // G ⋉ F and its projection to G
  ActionOnGroupoid l_action;                // (g, f)·l = (g, f·l)
  std::optional<ActionOnGroupoid> k_action; // (g, f)·k = (g·k, f·k)
  GroupoidPtr quotient;                     // (G ⋉ F) ⋊ L
  StrictHom projection;                     // ((g, f), l) -> g
  Transcript transcript;

  bool ok() const { return transcript.ok(); }
};

// Throws Refusal if the hypotheses fail (action axioms, commuting actions,
// principality); certifies that the projection is an essential equivalence
// and that its bibundle is an equivalence.
PrincipalQuotient principal_quotient_equivalence(const EquivariantBundleData& d,
                                                 const Limits& limits = {});

// Frames (x, f) with f: {0..n-1} -> L(x) a bijection, ordered by x then f.
// G acts by g·(x, f) = (t(g), lambda_g f) and Sym(n) by (x, f)·s = (x, f s).
struct FrameConstruction {
  ChartedGroupoid frames;  // G ⋉ F with charts and effects pulled back from G
  FiniteGroup sym;         // Sym(n)
  std::vector<Perm> frame_of;  // per point of F
  PrincipalQuotient quotient;  // (G ⋉ F) ⋊ Sym(n) -> G
  Transcript transcript;

  bool ok() const { return transcript.ok(); }
};

FrameConstruction frame_construction(const ChartedGroupoid& g, const Limits& limits = {});

// F = {(x, phi) | phi: T -> S0(x) an isomorphism} with T = S0(x0) at the least
// object, ordered by x then phi. G acts by g·(x, phi) = (t(g), g phi g^-1),
// Aut(T) by (x, phi)·lambda = (x, phi lambda), and K (if given) by
// (x, phi)·k = (x·k, phi(-)·k).
struct BandTrivialization {
  ChartedGroupoid g_prime;  // G ⋉ F
  ObjId x0 = 0;
  Stabilizer band;          // T = S0(x0)
  std::vector<Elem> center;                      // Z(T) as elements of T
  FiniteGroup aut;                               // Aut(T)
  std::vector<std::vector<Elem>> automorphisms;  // element i of aut
  std::vector<std::vector<ArrId>> phi;           // per point of F, images of T
  PrincipalQuotient quotient;                    // G' ⋊ Aut(T) -> G
  Transcript transcript;

  // c((x, phi), a) = phi(a) as a loop of G' at (x, phi).
  ArrId c(Id point, Elem a) const;
  bool ok() const { return transcript.ok(); }
};

// Throws Refusal if G is not purely ineffective or two stabilizers are not
// isomorphic (naming both objects).
BandTrivialization band_trivialization(const ChartedGroupoid& g,
                                       const std::optional<ActionOnGroupoid>& k = std::nullopt,
                                       const Limits& limits = {});

struct PresentationCertificate {
  std::string stage;  // "frames", "band" or "complete"
  ChartedGroupoid source;
  std::size_t n = 0;
  std::size_t frame_points = 0, band_points = 0;
  std::optional<ChartedGroupoid> presented;  // H
  FiniteGroup band;                          // T
  FiniteGroup center;                        // Z(T)
  FiniteGroup k;                             // Sym(n) x Aut(T)
  std::optional<ActionOnGroupoid> k_action;  // on H
  GroupoidPtr quotient;                      // H ⋊ K
  std::optional<StrictHom> projection;       // H ⋊ K -> G
  std::optional<Bibundle> equivalence;       // from_strict_hom(projection)
  Transcript transcript;

  bool complete() const { return stage == "complete"; }
  bool ok() const { return complete() && transcript.ok(); }
};

// Frames, then the band with Sym(n) acting, then the combined
// Sym(n) x Aut(T) action through the two-group lemma. A stabilizer mismatch
// after the frame stage yields a partial certificate.
PresentationCertificate present(const ChartedGroupoid& g, const Limits& limits = {});

struct TrivialCenterPresentation {
  PresentationCertificate presentation;
  ActionOnSet p_action;   // K acting on the coarse set of H
  GroupoidPtr translation;  // P ⋊ K
  WeakEquivalenceReport equivalence;  // P ⋊ K vs G
  Transcript transcript;

  bool ok() const { return presentation.ok() && transcript.ok(); }
};

// Throws Refusal if the presentation is partial or Z(T) is nontrivial.
TrivialCenterPresentation present_trivial_center(const ChartedGroupoid& g,
                                                 const Limits& limits = {});

}  // namespace grpd
