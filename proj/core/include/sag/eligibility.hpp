#ifndef SAG_ELIGIBILITY_HPP
#define SAG_ELIGIBILITY_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sag/job_set.hpp"
#include "sag/policy.hpp"

namespace sag {

	// multiple: a job may be eligible in several disjoint ranges while one
	// vertex is expanded. single: eligibility is decided once, at
	// max(EFT, r_min), so each job yields at most one range.
	enum class Eligibility_mode { multiple, single };

	std::string_view to_string(Eligibility_mode m);
	std::optional<Eligibility_mode> parse_mode(std::string_view name);

	// No certainly-eligible job will ever appear after the vertex's LFT.
	struct Analysis_stuck : std::runtime_error {
		static constexpr std::uint32_t unknown_vertex = static_cast<std::uint32_t>(-1);

		explicit Analysis_stuck(const std::string& what, std::uint32_t vertex = unknown_vertex)
		: std::runtime_error(what)
		, vertex(vertex)
		{
		}

		std::uint32_t vertex;
	};

	// First unfinished job of every task. `finished` must be prefix-closed
	// per task; otherwise std::logic_error (a graph bug).
	std::vector<Job_index> applicable_jobs(const Problem_instance& inst, const Job_set& finished);

	// One outgoing arc: dispatch `job` at some start time in [est, lst].
	struct Expansion {
		Job_index job = no_job;
		Time est = 0;
		Time lst = 0;

		friend bool operator==(const Expansion&, const Expansion&) = default;
	};

	// Maximal runs of consecutive integers; input must be sorted ascending.
	std::vector<Interval> to_ranges(std::span<const Time> sorted_times);

	// Eligibility rules for one vertex: its applicable jobs, the policy and
	// the critical context derived from them.
	class Eligibility_context {
	public:
		Eligibility_context(const Problem_instance& inst, Policy_kind kind,
		                    std::vector<Job_index> applicable);

		const std::vector<Job_index>& applicable() const { return jobs; }
		const Critical_context& critical() const { return crit; }
		Policy_kind policy() const { return kind; }

		// Highest Π-priority job that is certainly released and viable at t.
		Job_index certainly_eligible(Time t) const;
		// Possibly released, viable jobs that outrank certainly_eligible(t).
		std::vector<Job_index> possibly_eligible(Time t) const;
		bool eligible(Job_index j, Time t) const;

		// Number of jobs satisfying the certainly-eligible definition
		// literally (pairwise); never exceeds one.
		std::size_t count_certainly_eligible(Time t) const;

		// min{t >= lft : certainly_eligible(t) exists}; throws Analysis_stuck.
		Time exploration_bound(Time lft) const;

		// Maximal runs of t in `window` at which job j is eligible.
		std::vector<Interval> eligibility_ranges(Job_index j, Interval window) const;

		// Expansions of a vertex with finish interval `finish`, sorted by
		// (est, job index). Visits only the times at which some job's
		// release status or viability changes.
		std::vector<Expansion> next_expansions(Interval finish, Eligibility_mode mode) const;

		// Reference version of next_expansions probing every integer time.
		std::vector<Expansion> next_expansions_naive(Interval finish, Eligibility_mode mode) const;

	private:
		std::vector<Expansion> sweep(Interval finish, Eligibility_mode mode, bool every_tick) const;

		Job_index certainly_eligible_among(Time t, const std::vector<char>& pool) const;
		bool eligible_given(std::size_t pos, Time t, Job_index ce) const;
		bool viable(Job_index j, Time t) const { return crit.viable(inst.job(j), j, t); }
		// Smallest time > t at which the status of some job can change.
		Time next_boundary(Time t, Time lft) const;

		const Problem_instance& inst;
		Policy_kind kind;
		std::vector<Job_index> jobs;
		Critical_context crit;
	};

} // namespace sag

#endif
