#ifndef SAG_TOOLS_CLI_HPP
#define SAG_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace sag::cli {

	// Exit codes shared by all subcommands.
	enum Exit_code : int {
		ok = 0,
		unschedulable = 1,   // also: simulated scenario misses a deadline
		usage_error = 2,     // bad flags, unreadable or malformed input
		stuck = 3,           // analysis found a vertex that can never dispatch
		disagreement = 4     // compare: ME verdict or bounds differ from the oracle
	};

	// Runs one command line (args excludes the program name).
	int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sag::cli

#endif
