#pragma once

#include <string>
#include <vector>

namespace chq {

// Exit codes: 0 pass, 1 semantic failure, 2 input error,
// 3 internal inconsistency, 4 undetermined (no failure).
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace chq
