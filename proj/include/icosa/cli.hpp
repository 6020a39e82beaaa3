#pragma once

#include <string>
#include <vector>

namespace icosa {

// Exit codes: 0 ok, 2 empty result where solutions were expected,
// 64 usage error, 65 malformed data.
constexpr int kExitOk = 0;
constexpr int kExitUnexpectedEmpty = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

int run_cli(int argc, const char* const* argv);

}  // namespace icosa
