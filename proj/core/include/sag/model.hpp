#ifndef SAG_MODEL_HPP
#define SAG_MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "sag/time.hpp"

namespace sag {

	using Task_id = std::uint32_t;
	using Job_index = std::uint32_t;
	using Priority = std::uint32_t;

	inline constexpr Job_index no_job = static_cast<Job_index>(-1);

	struct Model_error : std::invalid_argument {
		using std::invalid_argument::invalid_argument;
	};

	// Periodic task with release jitter and execution time variation.
	// Priority 0 is the highest.
	struct Task {
		Task_id id = 0;
		Time period = 1;
		Time r_min = 0;
		Time r_max = 0;
		Time c_min = 1;
		Time c_max = 1;
		Time deadline = 1;
		Priority priority = 0;

		// Throws Model_error if the basic parameter ordering is violated.
		void validate() const;

		// r_max + c_max <= d <= T; required of generated tasks only.
		bool is_constrained() const { return r_max + c_max <= deadline && deadline <= period; }

		friend bool operator==(const Task&, const Task&) = default;
	};

	struct Job {
		Task_id task_id = 0;
		std::uint32_t index = 1;   // 1-based position within the task
		std::uint32_t task_pos = 0; // position of the task in the instance
		Interval release;           // [r_min, r_max]
		Interval cost;              // [c_min, c_max]
		Time deadline = 0;
		Priority priority = 0;

		Time r_min() const { return release.lo; }
		Time r_max() const { return release.hi; }
		Time c_min() const { return cost.lo; }
		Time c_max() const { return cost.hi; }

		friend bool operator==(const Job&, const Job&) = default;
	};

	std::string job_name(const Job& j);

	// All jobs of `tasks` with earliest release strictly before `horizon`,
	// ordered by (task id, index). `tasks` must already be sorted by id.
	std::vector<Job> expand_jobs(std::span<const Task> tasks, Time horizon);

	// Least common multiple of all periods; throws Overflow_error.
	Time hyperperiod(std::span<const Task> tasks);

	using Rational = boost::rational<std::int64_t>;

	// Exact sum of c_max / T.
	Rational utilization(std::span<const Task> tasks);

	// Immutable problem instance: tasks sorted by id plus their job expansion
	// over the observation interval [0, horizon).
	class Problem_instance {
	public:
		// `horizon` defaults to the hyperperiod.
		explicit Problem_instance(std::vector<Task> tasks,
		                          std::optional<Time> horizon = std::nullopt);

		const std::vector<Task>& tasks() const { return task_list; }
		const std::vector<Job>& jobs() const { return job_list; }
		const Job& job(Job_index j) const { return job_list[j]; }
		std::size_t num_jobs() const { return job_list.size(); }
		std::size_t num_tasks() const { return task_list.size(); }
		Time horizon() const { return observation; }

		// Jobs of task at position `pos` occupy [first_job(pos), first_job(pos) + job_count(pos)).
		Job_index first_job(std::size_t pos) const { return task_first[pos]; }
		std::uint32_t job_count(std::size_t pos) const { return task_jobs[pos]; }

		// Index of J_{task,index}, or no_job.
		Job_index find_job(Task_id task, std::uint32_t index) const;

		friend bool operator==(const Problem_instance& a, const Problem_instance& b)
		{
			return a.observation == b.observation && a.task_list == b.task_list;
		}

	private:
		std::vector<Task> task_list;
		Time observation;
		std::vector<Job> job_list;
		std::vector<Job_index> task_first;
		std::vector<std::uint32_t> task_jobs;
	};

	// One concrete choice of release and execution time per job, indexed by
	// job index.
	struct Execution_scenario {
		std::vector<Time> release;
		std::vector<Time> execution;

		// Throws Model_error unless every value lies within its job's bounds.
		void validate(const Problem_instance& inst) const;

		friend bool operator==(const Execution_scenario&, const Execution_scenario&) = default;
	};

	// Latest release and longest execution for every job.
	Execution_scenario worst_case_scenario(const Problem_instance& inst);

} // namespace sag

#endif
