#ifndef SAG_INSTANCE_IO_HPP
#define SAG_INSTANCE_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "sag/model.hpp"

namespace sag {

	struct Parse_error : std::runtime_error {
		Parse_error(std::size_t line, const std::string& what);
		std::size_t line; // 1-based; 0 when not tied to a line
	};

	// Text instance format, one directive per line, '#' starts a comment:
	//   H <int>
	//   task <id> T=<int> rmin=<int> rmax=<int> cmin=<int> cmax=<int> d=<int> p=<int>
	Problem_instance parse_instance(std::string_view text);
	std::string write_instance(const Problem_instance& inst);

	nlohmann::json instance_to_json(const Problem_instance& inst);

	// Scenario format: one `J <task> <index> r=<int> c=<int>` line per job.
	Execution_scenario parse_scenario(std::string_view text, const Problem_instance& inst);
	std::string write_scenario(const Execution_scenario& s, const Problem_instance& inst);

	std::string read_file(const std::string& path);

} // namespace sag

#endif
