#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gcontact {

/// Runs `gcontact <command> <model.json> [flags]`; `args` excludes the
/// program name.  Reports go to `out`, diagnostics to `err`.  Returns 0 when
/// the verdict holds, 1 when it fails and 2 on any error.  Every report ends
/// with the line `VERDICT: pass|fail RESIDUAL_TERMS: <count>`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcontact
