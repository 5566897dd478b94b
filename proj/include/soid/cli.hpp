#ifndef SOID_CLI_HPP
#define SOID_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace soid {

/// Exit statuses of the command line tool.
enum ExitCode : int {
	kExitOk = 0,
	kExitNoModel = 1,    //!< no model, not total, invalid library, failed equivalence
	kExitInputError = 2,
	kExitCap = 3,
};

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace soid

#endif
