#ifndef RWTAIL_CLI_HPP
#define RWTAIL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace rwtail::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

// args excludes the program name. Tables go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rwtail::cli

#endif
