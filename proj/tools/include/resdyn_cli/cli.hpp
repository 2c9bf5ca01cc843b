#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace resdyn::cli {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;

// Runs one invocation. `args` excludes the program name. Payloads go to
// `out`; error objects and log lines go to `err`. Never throws.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace resdyn::cli
