#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwire {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelfcheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;

/// Entry point of the qwire tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qwire
