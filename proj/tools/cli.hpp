#pragma once

// Command-line front end. `run` is the whole program minus process plumbing so
// tests can drive it with in-memory streams.
//
// Exit status: 0 ok, 1 a checked inequality or invariant failed, 2 invalid
// input, 3 numerical non-convergence.

#include <iosfwd>
#include <string>
#include <vector>

namespace polarphi::cli {

enum Exit : int { ok = 0, violation = 1, invalid_input = 2, no_convergence = 3 };

inline constexpr int max_exact_dim = 200;
inline constexpr int max_mc_dim = 10;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace polarphi::cli
