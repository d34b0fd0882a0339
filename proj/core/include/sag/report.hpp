#ifndef SAG_REPORT_HPP
#define SAG_REPORT_HPP

#include <string>

#include "json.hpp"

#include "sag/analysis.hpp"
#include "sag/oracle.hpp"

namespace sag {

	// {schedulable, witness?, bounds: [{task, job, eft_min, lft_max}],
	//  stats: {levels: [{vertices, arcs}], wall_ms}}
	nlohmann::json analysis_to_json(const Problem_instance& inst, const Analysis_result& r);

	// Human-oriented summary; not a stable format.
	std::string analysis_to_text(const Problem_instance& inst, const Analysis_result& r);

	// {schedulable, scenarios_checked, failing_scenarios,
	//  bounds: [{task, job, finish_min, finish_max}], failing?: [{task, job, r, c}]}
	nlohmann::json oracle_to_json(const Problem_instance& inst, const oracle::Report& r);

	nlohmann::json trace_to_json(const Problem_instance& inst, const oracle::Simulation_trace& t);
	std::string trace_to_text(const Problem_instance& inst, const oracle::Simulation_trace& t);

} // namespace sag

#endif
