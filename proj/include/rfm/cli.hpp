#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rfm {

/// Runs the `rfm` command line. `args` excludes the program name. Returns
/// 0 on success, 1 when diagnostics were emitted and 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directories listed in RFM_PRESET_PATH.
std::vector<std::string> preset_path();

}  // namespace rfm
