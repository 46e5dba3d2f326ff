#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace biquad::cli {

/// Exit codes: 0 affirmative, 1 mathematically negative verdict
/// (not PSD, not DD, verification failed), 2 usage or I/O error.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biquad::cli
