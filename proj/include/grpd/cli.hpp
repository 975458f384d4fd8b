#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grpd::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;  // computed false, or a refused precondition
inline constexpr int kInputError = 2;

// args excludes the program name. The report goes to `out`, diagnostics to
// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grpd::cli
