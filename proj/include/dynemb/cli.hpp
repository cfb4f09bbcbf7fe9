#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dynemb {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 1 runtime/module error, 2 bad flags or bounds.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace dynemb
