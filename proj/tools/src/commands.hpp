#ifndef GRAD3_TOOLS_COMMANDS_HPP
#define GRAD3_TOOLS_COMMANDS_HPP

#include "config.hpp"

namespace grad3::cli {

/**
 * Executes the resolved config: writes the primary output atomically, a
 * JSON run-manifest sidecar (<out>.manifest.json with the config echo, tool
 * version, wall time and warning count) and returns the exit code: 0 on
 * success (including partial sweeps, which only warn), 2 on numerical
 * failure. Usage failures throw before this point and exit 1.
 */
int run(const RunConfig& config);

}  // namespace grad3::cli

#endif
