#ifndef SAG_ORACLE_HPP
#define SAG_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sag/model.hpp"
#include "sag/policy.hpp"

// Ground truth for small instances: an event-driven online scheduler and an
// exhaustive enumerator over every integer execution scenario.
namespace sag::oracle {

	struct Dispatch {
		Job_index job = no_job;
		Time start = 0;
		Time finish = 0;

		friend bool operator==(const Dispatch&, const Dispatch&) = default;
	};

	struct Miss {
		Job_index job = no_job;
		Time finish = 0;
		Time deadline = 0;

		friend bool operator==(const Miss&, const Miss&) = default;
	};

	struct Simulation_trace {
		std::vector<Dispatch> dispatches; // chronological
		std::vector<Interval> idle;       // [from, until - 1] stretches of idling
		std::vector<Miss> misses;

		bool has_miss() const { return !misses.empty(); }
		const Dispatch* find(Job_index j) const;

		friend bool operator==(const Simulation_trace&, const Simulation_trace&) = default;
	};

	struct Simulation_options {
		bool stop_at_first_miss = false;
	};

	// The scheduler runs at time 0, at every completion, and, while idle, at
	// the next release of an applicable job. Throws Model_error if the
	// scenario does not fit the instance.
	Simulation_trace simulate(const Problem_instance& inst, Policy_kind kind,
	                          const Execution_scenario& scenario,
	                          const Simulation_options& opts = {});

	struct Limits {
		std::uint64_t max_scenarios = 10'000'000;
		unsigned threads = 1;
		// false: keep enumerating after a failure to get complete extremes
		// and a failing-scenario count
		bool stop_at_first_failure = true;
	};

	struct Report {
		bool schedulable = true;
		std::uint64_t scenarios_checked = 0;
		std::uint64_t failing_scenarios = 0;
		// Per job: [min, max] finish time over all checked scenarios.
		std::vector<Interval> finish_range;
		// Lexicographically first failing scenario.
		std::optional<Execution_scenario> failing;
	};

	struct Scenario_cap_exceeded : std::runtime_error {
		Scenario_cap_exceeded(std::uint64_t count, std::uint64_t cap);
		std::uint64_t count; // saturated at UINT64_MAX
		std::uint64_t cap;
	};

	// Product over jobs of (jitter span + 1) * (variation span + 1),
	// saturated at UINT64_MAX.
	std::uint64_t scenario_count(const Problem_instance& inst);

	// Simulates every integer scenario in lexicographic order over (job,
	// release, execution). Refuses with Scenario_cap_exceeded above the cap.
	Report enumerate(const Problem_instance& inst, Policy_kind kind, const Limits& limits = {});

	// The scenario with the given lexicographic rank.
	Execution_scenario scenario_at(const Problem_instance& inst, std::uint64_t rank);

} // namespace sag::oracle

#endif
