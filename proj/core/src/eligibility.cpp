#include "sag/eligibility.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

namespace sag {

	std::string_view to_string(Eligibility_mode m)
	{
		return m == Eligibility_mode::multiple ? "me" : "se";
	}

	std::optional<Eligibility_mode> parse_mode(std::string_view name)
	{
		if (name == "me")
			return Eligibility_mode::multiple;
		if (name == "se")
			return Eligibility_mode::single;
		return std::nullopt;
	}

	std::vector<Job_index> applicable_jobs(const Problem_instance& inst, const Job_set& finished)
	{
		std::vector<Job_index> result;
		for (std::size_t pos = 0; pos < inst.num_tasks(); ++pos) {
			const Job_index first = inst.first_job(pos);
			const Job_index last = first + inst.job_count(pos);
			Job_index j = first;
			while (j < last && finished.contains(j))
				++j;
			if (j == last)
				continue;
			result.push_back(j);
			for (Job_index k = j + 1; k < last; ++k)
				if (finished.contains(k))
					throw std::logic_error("finished set is not prefix-closed for task "
					                       + std::to_string(inst.tasks()[pos].id));
		}
		return result;
	}

	std::vector<Interval> to_ranges(std::span<const Time> sorted_times)
	{
		std::vector<Interval> ranges;
		for (Time t : sorted_times) {
			if (!ranges.empty() && ranges.back().hi + 1 == t)
				ranges.back().hi = t;
			else
				ranges.push_back({t, t});
		}
		return ranges;
	}

	Eligibility_context::Eligibility_context(const Problem_instance& inst, Policy_kind kind,
	                                         std::vector<Job_index> applicable)
	: inst(inst)
	, kind(kind)
	, jobs(std::move(applicable))
	, crit(critical_context(kind, inst, jobs))
	{
	}

	Job_index Eligibility_context::certainly_eligible_among(Time t, const std::vector<char>& pool) const
	{
		Job_index best = no_job;
		for (std::size_t pos = 0; pos < jobs.size(); ++pos) {
			const Job_index j = jobs[pos];
			if (!pool[pos] || inst.job(j).r_max() > t || !viable(j, t))
				continue;
			if (pi_higher(kind, inst, j, best))
				best = j;
		}
		return best;
	}

	Job_index Eligibility_context::certainly_eligible(Time t) const
	{
		return certainly_eligible_among(t, std::vector<char>(jobs.size(), 1));
	}

	bool Eligibility_context::eligible_given(std::size_t pos, Time t, Job_index ce) const
	{
		const Job_index j = jobs[pos];
		if (j == ce)
			return true;
		const Job& job = inst.job(j);
		return job.r_min() <= t && t < job.r_max() && viable(j, t)
		    && pi_higher(kind, inst, j, ce);
	}

	std::vector<Job_index> Eligibility_context::possibly_eligible(Time t) const
	{
		const Job_index ce = certainly_eligible(t);
		std::vector<Job_index> pe;
		for (std::size_t pos = 0; pos < jobs.size(); ++pos)
			if (jobs[pos] != ce && eligible_given(pos, t, ce))
				pe.push_back(jobs[pos]);
		return pe;
	}

	bool Eligibility_context::eligible(Job_index j, Time t) const
	{
		auto it = std::find(jobs.begin(), jobs.end(), j);
		if (it == jobs.end())
			return false;
		return eligible_given(static_cast<std::size_t>(it - jobs.begin()), t, certainly_eligible(t));
	}

	std::size_t Eligibility_context::count_certainly_eligible(Time t) const
	{
		auto qualifies = [&](Job_index j) { return inst.job(j).r_max() <= t && viable(j, t); };
		std::size_t count = 0;
		for (Job_index cand : jobs) {
			if (!qualifies(cand))
				continue;
			bool dominated = false;
			for (Job_index other : jobs)
				if (other != cand && qualifies(other) && pi_higher(kind, inst, other, cand))
					dominated = true;
			if (!dominated)
				++count;
		}
		return count;
	}

	Time Eligibility_context::exploration_bound(Time lft) const
	{
		if (jobs.empty())
			throw Analysis_stuck("no applicable jobs");
		// CE existence switches on only when a job becomes certainly released
		std::vector<Time> candidates{lft};
		for (Job_index j : jobs)
			if (inst.job(j).r_max() >= lft)
				candidates.push_back(inst.job(j).r_max());
		std::sort(candidates.begin(), candidates.end());
		for (Time t : candidates)
			if (certainly_eligible(t) != no_job)
				return t;
		throw Analysis_stuck("no certainly-eligible job at or after time " + std::to_string(lft));
	}

	std::vector<Interval> Eligibility_context::eligibility_ranges(Job_index j, Interval window) const
	{
		std::vector<Time> times;
		for (Time t = window.lo; t <= window.hi; ++t)
			if (eligible(j, t))
				times.push_back(t);
		return to_ranges(times);
	}

	Time Eligibility_context::next_boundary(Time t, Time lft) const
	{
		Time next = time_infinity;
		auto consider = [&](Time c) {
			if (c > t && c < next)
				next = c;
		};
		consider(lft);
		for (Job_index j : jobs) {
			const Job& job = inst.job(j);
			consider(job.r_min());
			consider(job.r_max());
			if (crit.present() && j != crit.job)
				consider(crit.time - job.c_max() + 1); // first non-viable time
		}
		return next;
	}

	std::vector<Expansion> Eligibility_context::sweep(Interval finish, Eligibility_mode mode,
	                                                  bool every_tick) const
	{
		std::vector<Expansion> out;
		if (jobs.empty())
			return out;

		const bool single = mode == Eligibility_mode::single;
		std::vector<char> pool(jobs.size(), 1);
		std::vector<char> active(jobs.size(), 0);
		std::vector<Time> run_start(jobs.size(), 0);

		Time t = finish.lo;
		for (;;) {
			const Job_index ce = certainly_eligible_among(t, pool);
			for (std::size_t pos = 0; pos < jobs.size(); ++pos) {
				if (!pool[pos])
					continue;
				const bool el = eligible_given(pos, t, ce);
				if (single && !active[pos]) {
					const Time t_e = std::max(finish.lo, inst.job(jobs[pos]).r_min());
					if (t < t_e)
						continue;
					if (t == t_e && el) {
						active[pos] = 1;
						run_start[pos] = t;
					} else {
						pool[pos] = 0;
					}
					continue;
				}
				if (el && !active[pos]) {
					active[pos] = 1;
					run_start[pos] = t;
				} else if (!el && active[pos]) {
					out.push_back({jobs[pos], run_start[pos], t - 1});
					active[pos] = 0;
					if (single)
						pool[pos] = 0;
				}
			}

			if (t >= finish.hi && ce != no_job)
				break;

			const Time next = next_boundary(t, finish.hi);
			if (next == time_infinity && t >= finish.hi)
				throw Analysis_stuck("no certainly-eligible job at or after time "
				                     + std::to_string(finish.hi));
			t = every_tick ? t + 1 : next;
		}

		for (std::size_t pos = 0; pos < jobs.size(); ++pos)
			if (active[pos])
				out.push_back({jobs[pos], run_start[pos], t});

		std::sort(out.begin(), out.end(), [](const Expansion& a, const Expansion& b) {
			return std::tie(a.est, a.job) < std::tie(b.est, b.job);
		});
		return out;
	}

	std::vector<Expansion> Eligibility_context::next_expansions(Interval finish,
	                                                            Eligibility_mode mode) const
	{
		return sweep(finish, mode, false);
	}

	std::vector<Expansion> Eligibility_context::next_expansions_naive(Interval finish,
	                                                                  Eligibility_mode mode) const
	{
		if (mode == Eligibility_mode::single)
			return sweep(finish, mode, true);

		// every integer time of the exploration interval, job by job
		std::vector<Expansion> out;
		if (jobs.empty())
			return out;
		const Time bound = exploration_bound(finish.hi);
		for (Job_index j : jobs)
			for (const Interval& r : eligibility_ranges(j, {finish.lo, bound}))
				out.push_back({j, r.lo, r.hi});
		std::sort(out.begin(), out.end(), [](const Expansion& a, const Expansion& b) {
			return std::tie(a.est, a.job) < std::tie(b.est, b.job);
		});
		return out;
	}

} // namespace sag
