#ifndef INSTAB_CLI_HPP
#define INSTAB_CLI_HPP

#include <iosfwd>

namespace instab {

/// Command-line front end. Exit codes: 0 success, 2 invalid input,
/// 3 consistency violation (a criterion fired but the oracle refutes it),
/// 1 any other runtime failure.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace instab

#endif
