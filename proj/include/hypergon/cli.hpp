#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypergon::cli {

/// Exit codes: 0 success, 1 a verification suite failed, 2 domain rejection,
/// 3 convergence failure, 4 I/O, schema or usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace hypergon::cli
