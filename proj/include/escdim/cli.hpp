#pragma once

namespace escdim {

// Full command-line driver.  Exit codes: 0 success, 1 usage/config error,
// 2 evaluation failure (domain, singularity, overflow, tolerance),
// 3 empty selection.
int run_cli(int argc, const char* const* argv);

} // namespace escdim
