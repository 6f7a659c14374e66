#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace h10::cli {

/// Exit codes.
inline constexpr int ok = 0;
inline constexpr int falsified = 1;
inline constexpr int usage = 2;
inline constexpr int infeasible = 3;

/// Run one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace h10::cli
