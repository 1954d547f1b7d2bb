#pragma once

namespace d2d {

/// Exit codes: 0 success, 1 failed validation property or internal error,
/// 2 malformed configuration or arguments, 3 numerical failure.
int run(int argc, const char* const* argv);

}  // namespace d2d
