#pragma once

#include <array>
#include <cstddef>

#include "grpd/groupoid.hpp"

// Exhaustive sweeps over composable tuples. Each kernel exists as a serial
// reference and an OpenMP version; both report the same count and the same
// first witness (least tuple in id order).
namespace grpd::kernels {

struct TripleScan {
  std::size_t count = 0;
  std::array<ArrId, 3> first{kNone, kNone, kNone};

  bool operator==(const TripleScan&) const = default;
};

namespace serial {
// Composable triples (g, h, k) with g(hk) != (gh)k.
TripleScan associativity(const FiniteGroupoid& g);
// Number of composable triples visited by associativity().
std::size_t composable_triples(const FiniteGroupoid& g);
}  // namespace serial

namespace omp {
TripleScan associativity(const FiniteGroupoid& g);
std::size_t composable_triples(const FiniteGroupoid& g);
}  // namespace omp

}  // namespace grpd::kernels
