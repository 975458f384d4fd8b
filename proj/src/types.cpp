#include "grpd/types.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace grpd {

void Limits::check(std::size_t n, const std::string& what) const {
  if (n > max_size) {
    throw LimitExceeded(what + " would have " + std::to_string(n) +
                        " elements, above the limit of " +
                        std::to_string(max_size));
  }
}

std::size_t factorial(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

namespace perm {

Perm identity(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), Id{0});
  return p;
}

Perm compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<Id>(i);
  return r;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (Id v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<Perm> all(std::size_t n) {
  std::vector<Perm> out;
  Perm p = identity(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string to_string(const Perm& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
  os << ']';
  return os.str();
}

}  // namespace perm
}  // namespace grpd
