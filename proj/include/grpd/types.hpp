#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace grpd {

// Dense integer ids. Objects, arrows, group elements and points of finite
// sets are all numbered 0..n-1 in construction order.
using Id = std::uint32_t;
using ObjId = Id;
using ArrId = Id;
using Elem = Id;

inline constexpr Id kNone = std::numeric_limits<Id>::max();

// Permutations and chart bijections in image notation: p[i] is the image of i.
using Perm = std::vector<Id>;

// Thrown when tables index outside their declared sets.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an operation's precondition fails for a mathematical reason
// (non-commuting actions, a groupoid that is not purely ineffective, ...).
// The message carries a witness.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a derived construction would exceed the configured size bound.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  std::size_t max_size = 1'000'000;

  void check(std::size_t n, const std::string& what) const;
};

namespace perm {

Perm identity(std::size_t n);
// (p ∘ q)(i) = p(q(i))
Perm compose(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);
bool is_identity(const Perm& p);
bool is_permutation(const Perm& p);
// All permutations of {0..n-1} in lexicographic order, identity first.
std::vector<Perm> all(std::size_t n);
std::string to_string(const Perm& p);

}  // namespace perm

std::size_t factorial(std::size_t n);

}  // namespace grpd
