#include "sag/policy.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

namespace sag {

	std::string_view to_string(Policy_kind k)
	{
		switch (k) {
		case Policy_kind::edf:      return "edf";
		case Policy_kind::fp_edf:   return "fp-edf";
		case Policy_kind::p_fp_edf: return "p-fp-edf";
		case Policy_kind::cp:       return "cp";
		case Policy_kind::cw:       return "cw";
		}
		return "?";
	}

	std::optional<Policy_kind> parse_policy(std::string_view name)
	{
		for (auto k : all_policies)
			if (to_string(k) == name)
				return k;
		return std::nullopt;
	}

	bool pi_higher(Policy_kind kind, const Job& a, const Job& b)
	{
		if (kind == Policy_kind::edf)
			return std::tie(a.deadline, a.task_id, a.index)
			     < std::tie(b.deadline, b.task_id, b.index);
		return std::tie(a.priority, a.deadline, a.task_id, a.index)
		     < std::tie(b.priority, b.deadline, b.task_id, b.index);
	}

	bool pi_higher(Policy_kind kind, const Problem_instance& inst, Job_index a, Job_index b)
	{
		if (a == no_job)
			return false;
		if (b == no_job)
			return true;
		return pi_higher(kind, inst.job(a), inst.job(b));
	}

	Critical_context critical_context(Policy_kind kind, const Problem_instance& inst,
	                                  std::span<const Job_index> applicable)
	{
		Critical_context ctx;
		if (applicable.empty())
			return ctx;

		auto task_of = [&](Job_index j) { return inst.job(j).task_id; };

		switch (kind) {
		case Policy_kind::edf:
		case Policy_kind::fp_edf:
			return ctx;

		case Policy_kind::p_fp_edf:
			for (Job_index j : applicable) {
				const Job& job = inst.job(j);
				if (job.priority != 0)
					continue;
				if (ctx.job == no_job
				    || std::make_tuple(job.r_max(), job.task_id)
				       < std::make_tuple(inst.job(ctx.job).r_max(), task_of(ctx.job)))
					ctx.job = j;
			}
			if (ctx.present())
				ctx.time = inst.job(ctx.job).deadline - inst.job(ctx.job).c_max();
			return ctx;

		case Policy_kind::cp:
			for (Job_index j : applicable) {
				const Job& job = inst.job(j);
				if (ctx.job == no_job
				    || std::make_tuple(job.deadline, job.task_id)
				       < std::make_tuple(inst.job(ctx.job).deadline, task_of(ctx.job)))
					ctx.job = j;
			}
			ctx.time = inst.job(ctx.job).deadline - inst.job(ctx.job).c_max();
			return ctx;

		case Policy_kind::cw: {
			// latest deadline first; equal deadlines put the lower task id last
			std::vector<Job_index> order(applicable.begin(), applicable.end());
			std::sort(order.begin(), order.end(), [&](Job_index a, Job_index b) {
				return std::make_tuple(inst.job(a).deadline, task_of(a))
				     > std::make_tuple(inst.job(b).deadline, task_of(b));
			});
			Time tc = time_infinity;
			for (Job_index j : order)
				tc = std::min(tc, inst.job(j).deadline) - inst.job(j).c_max();
			ctx.job = order.back();
			ctx.time = tc;
			return ctx;
		}
		}
		return ctx;
	}

	Job_index pick(Policy_kind kind, const Problem_instance& inst, Time t,
	               std::span<const Job_index> applicable, std::span<const Time> releases)
	{
		const Critical_context crit = critical_context(kind, inst, applicable);
		Job_index best = no_job;
		for (Job_index j : applicable) {
			const Job& job = inst.job(j);
			if (releases[j] > t)
				continue;
			if (!crit.viable(job, j, t))
				continue;
			if (pi_higher(kind, inst, j, best))
				best = j;
		}
		return best;
	}

} // namespace sag
