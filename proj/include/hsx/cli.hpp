#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hsx {

/// Exit codes: 0 success, 2 precondition violations, 3 numeric failures,
/// 64 usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

struct OpMapping {
    std::string operation;
    std::string subcommand;
};

/// Which subcommand exercises each library operation (one entry per
/// operation).
const std::vector<OpMapping>& operation_registry();

}  // namespace hsx
