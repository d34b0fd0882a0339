#ifndef SAG_TESTS_RANDOM_INSTANCES_HPP
#define SAG_TESTS_RANDOM_INSTANCES_HPP

#include <random>
#include <vector>

#include "sag/analysis.hpp"
#include "sag/oracle.hpp"

// Small random instances that the exhaustive oracle can still enumerate.
namespace sag::testing {

	struct Small_limits {
		std::size_t max_tasks = 3;
		Time max_span = 2;            // jitter and execution-time variation
		Time max_hyperperiod = 40;
		std::uint64_t max_scenarios = 100'000;
	};

	inline Time pick(std::mt19937_64& rng, Time lo, Time hi)
	{
		return std::uniform_int_distribution<Time>(lo, hi)(rng);
	}

	inline Problem_instance random_small_instance(std::mt19937_64& rng, const Small_limits& lim = {})
	{
		static const Time horizons[] = {6, 8, 10, 12, 16, 20, 24, 30, 40};
		for (;;) {
			std::vector<Time> choices;
			for (Time h : horizons)
				if (h <= lim.max_hyperperiod)
					choices.push_back(h);
			const Time h = choices[pick(rng, 0, static_cast<Time>(choices.size()) - 1)];
			std::vector<Time> divisors;
			for (Time d = 3; d <= h; ++d)
				if (h % d == 0)
					divisors.push_back(d);

			const auto n = static_cast<std::size_t>(pick(rng, 1, static_cast<Time>(lim.max_tasks)));
			std::vector<Task> tasks;
			for (std::size_t i = 0; i < n; ++i) {
				Task t;
				t.id = static_cast<Task_id>(i + 1);
				t.period = divisors[pick(rng, 0, static_cast<Time>(divisors.size()) - 1)];
				t.c_max = pick(rng, 1, std::max<Time>(1, t.period / 2));
				t.c_min = t.c_max - pick(rng, 0, std::min(lim.max_span, t.c_max - 1));
				t.r_max = pick(rng, 0, t.period - 1);
				t.r_min = t.r_max - pick(rng, 0, std::min(lim.max_span, t.r_max));
				t.deadline = pick(rng, t.c_max, t.period + 3);
				t.priority = static_cast<Priority>(pick(rng, 0, 2));
				tasks.push_back(t);
			}
			Problem_instance inst(std::move(tasks));
			if (inst.horizon() <= lim.max_hyperperiod && oracle::scenario_count(inst) <= lim.max_scenarios)
				return inst;
		}
	}

	// A vertex-like state: a prefix-closed finished set leaving at least one
	// job, and a finish interval somewhere in the observation window.
	struct Vertex_state {
		Job_set finished;
		Interval finish;
	};

	inline Vertex_state random_vertex_state(std::mt19937_64& rng, const Problem_instance& inst)
	{
		for (;;) {
			Vertex_state s{Job_set(inst.num_jobs()), {}};
			for (std::size_t pos = 0; pos < inst.num_tasks(); ++pos) {
				const auto done = pick(rng, 0, inst.job_count(pos));
				for (Time k = 0; k < done; ++k)
					s.finished.insert(inst.first_job(pos) + static_cast<Job_index>(k));
			}
			if (s.finished.size() == inst.num_jobs())
				continue;
			const Time eft = pick(rng, 0, inst.horizon() + 4);
			s.finish = {eft, eft + pick(rng, 0, 8)};
			return s;
		}
	}

} // namespace sag::testing

#endif
