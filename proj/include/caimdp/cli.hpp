#pragma once

namespace caimdp::cli {

/// Entry point of the `caimdp` tool. Returns 0 on success, 1 on a
/// validation or solver failure and 2 on a usage error. Errors are written
/// to standard error as one JSON object per line.
int run(int argc, char** argv);

}  // namespace caimdp::cli
