#ifndef SAG_POLICY_HPP
#define SAG_POLICY_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sag/model.hpp"

namespace sag {

	enum class Policy_kind { edf, fp_edf, p_fp_edf, cp, cw };

	inline constexpr Policy_kind all_policies[] = {
		Policy_kind::edf, Policy_kind::fp_edf, Policy_kind::p_fp_edf,
		Policy_kind::cp, Policy_kind::cw};

	constexpr bool is_work_conserving(Policy_kind k)
	{
		return k == Policy_kind::edf || k == Policy_kind::fp_edf;
	}

	std::string_view to_string(Policy_kind k);
	// Accepts the CLI spellings edf, fp-edf, p-fp-edf, cp, cw.
	std::optional<Policy_kind> parse_policy(std::string_view name);

	// The job a non-work-conserving policy protects and the latest time it
	// may start without missing its deadline. Both present or both absent.
	struct Critical_context {
		Job_index job = no_job;
		Time time = time_infinity;

		bool present() const { return job != no_job; }

		// A job is viable at `t` unless it is not the critical job and could
		// finish after the critical time when started at `t`.
		bool viable(const Job& j, Job_index idx, Time t) const
		{
			return !present() || idx == job || t + j.c_max() <= time;
		}

		friend bool operator==(const Critical_context&, const Critical_context&) = default;
	};

	// True iff `a` has higher Π-priority than `b`, i.e. the policy picks `a`
	// out of {a, b} when both are released. A strict total order on jobs of
	// one instance. EDF orders by (d, task id); every other kind by
	// (p, d, task id).
	bool pi_higher(Policy_kind kind, const Job& a, const Job& b);

	// Same, with no_job standing for null: any job beats null.
	bool pi_higher(Policy_kind kind, const Problem_instance& inst, Job_index a, Job_index b);

	Critical_context critical_context(Policy_kind kind, const Problem_instance& inst,
	                                  std::span<const Job_index> applicable);

	// The policy function Π(t, J^A) given concrete release times (indexed by
	// job index). Returns no_job when nothing is picked.
	Job_index pick(Policy_kind kind, const Problem_instance& inst, Time t,
	               std::span<const Job_index> applicable, std::span<const Time> releases);

} // namespace sag

#endif
