#pragma once

// Command-line front end.  Exit codes: 0 success, 1 parse or usage error,
// 2 validation failure.

#include <ostream>
#include <string>
#include <vector>

#include "adelic/structure.hpp"

namespace adelic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitInvalid = 2;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The JSON report printed by `classify --json`, serialized.
std::string report_json(const ModuleExpr& e);

}  // namespace adelic::cli
