#pragma once

#include <iosfwd>
#include <string>

#include "tailspace/hypercube.hpp"

namespace tailspace {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitNonconvergence = 4;

// file:<path> | elem:<l> | rademacher:<w1,w2,...> | random:<seed>[:<degree>]
// `n` is required for elem and random, optional (checked) for the others;
// pass 0 when absent.
BooleanFunction function_from_spec(const std::string& spec, int n);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tailspace
