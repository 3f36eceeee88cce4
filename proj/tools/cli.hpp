#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace folmod::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidation = 1;
inline constexpr int kParse = 2;
inline constexpr int kPrecondition = 3;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace folmod::cli
