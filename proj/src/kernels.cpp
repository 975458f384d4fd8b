#include "grpd/kernels.hpp"

#include <omp.h>

namespace grpd::kernels {

namespace {

// Scan of all triples whose first arrow is g.
TripleScan associativity_row(const FiniteGroupoid& G, ArrId g) {
  TripleScan out;
  for (ArrId h : G.arrows_into(G.src(g))) {
    const ArrId gh = G.comp(g, h);
    for (ArrId k : G.arrows_into(G.src(h))) {
      const ArrId hk = G.comp(h, k);
      if (gh == kNone || hk == kNone) continue;
      if (G.comp(g, hk) != G.comp(gh, k)) {
        if (out.count++ == 0) out.first = {g, h, k};
      }
    }
  }
  return out;
}

std::size_t triples_row(const FiniteGroupoid& G, ArrId g) {
  std::size_t n = 0;
  for (ArrId h : G.arrows_into(G.src(g))) n += G.arrows_into(G.src(h)).size();
  return n;
}

}  // namespace

namespace serial {

TripleScan associativity(const FiniteGroupoid& G) {
  TripleScan total;
  for (ArrId g = 0; g < G.num_arrows(); ++g) {
    const TripleScan row = associativity_row(G, g);
    if (row.count && total.count == 0) total.first = row.first;
    total.count += row.count;
  }
  return total;
}

std::size_t composable_triples(const FiniteGroupoid& G) {
  std::size_t n = 0;
  for (ArrId g = 0; g < G.num_arrows(); ++g) n += triples_row(G, g);
  return n;
}

}  // namespace serial

namespace omp {

TripleScan associativity(const FiniteGroupoid& G) {
  const long n = static_cast<long>(G.num_arrows());
  std::size_t count = 0;
  long first_row = n;
  std::array<ArrId, 3> first{kNone, kNone, kNone};
#pragma omp parallel
  {
    std::size_t local_count = 0;
    long local_row = n;
    std::array<ArrId, 3> local_first{kNone, kNone, kNone};
#pragma omp for schedule(dynamic, 16) nowait
    for (long g = 0; g < n; ++g) {
      const TripleScan row = associativity_row(G, static_cast<ArrId>(g));
      local_count += row.count;
      if (row.count && g < local_row) {
        local_row = g;
        local_first = row.first;
      }
    }
#pragma omp critical(grpd_assoc_reduce)
    {
      count += local_count;
      if (local_row < first_row) {
        first_row = local_row;
        first = local_first;
      }
    }
  }
  TripleScan out;
  out.count = count;
  if (count) out.first = first;
  return out;
}

std::size_t composable_triples(const FiniteGroupoid& G) {
  const long n = static_cast<long>(G.num_arrows());
  std::size_t total = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
  for (long g = 0; g < n; ++g) total += triples_row(G, static_cast<ArrId>(g));
  return total;
}

}  // namespace omp

}  // namespace grpd::kernels
