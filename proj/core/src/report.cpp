#include "sag/report.hpp"

#include <sstream>

namespace sag {

	using nlohmann::json;

	namespace {

		json miss_to_json(const Problem_instance& inst, const Deadline_miss& m)
		{
			const Job& j = inst.job(m.job);
			return {{"vertex", m.vertex}, {"task", j.task_id}, {"job", j.index},
			        {"lft", m.lft}, {"deadline", m.deadline}};
		}

	} // namespace

	json analysis_to_json(const Problem_instance& inst, const Analysis_result& r)
	{
		json out;
		out["schedulable"] = r.schedulable;
		if (r.witness)
			out["witness"] = miss_to_json(inst, *r.witness);
		if (r.misses.size() > 1) {
			json all = json::array();
			for (const auto& m : r.misses)
				all.push_back(miss_to_json(inst, m));
			out["misses"] = all;
		}

		json bounds = json::array();
		for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
			const auto& b = r.finish_bounds[j];
			if (!b)
				continue;
			bounds.push_back({{"task", inst.job(j).task_id}, {"job", inst.job(j).index},
			                  {"eft_min", b->lo}, {"lft_max", b->hi}});
		}
		out["bounds"] = bounds;

		json levels = json::array();
		for (const auto& l : r.levels)
			levels.push_back({{"vertices", l.vertices}, {"arcs", l.arcs}});
		out["stats"] = {{"levels", levels},
		                {"vertices", r.vertices_created},
		                {"arcs", r.arcs_created},
		                {"wall_ms", r.wall_ms}};
		return out;
	}

	std::string analysis_to_text(const Problem_instance& inst, const Analysis_result& r)
	{
		std::ostringstream os;
		if (r.schedulable) {
			os << "schedulable: generation completed with no deadline misses\n";
		} else {
			os << "NOT schedulable\n";
			for (const auto& m : r.misses)
				os << "  deadline miss: " << job_name(inst.job(m.job)) << " may finish at " << m.lft
				   << " > deadline " << m.deadline << " (vertex v" << m.vertex << ")\n";
		}
		os << "finish-time bounds" << (r.bounds_complete ? "" : " (partial)") << ":\n";
		for (std::size_t j = 0; j < inst.num_jobs(); ++j)
			if (r.finish_bounds[j])
				os << "  " << job_name(inst.job(j)) << ' ' << *r.finish_bounds[j] << '\n';
		os << "vertices " << r.vertices_created << ", arcs " << r.arcs_created << ", "
		   << r.wall_ms << " ms\n";
		return os.str();
	}

	json oracle_to_json(const Problem_instance& inst, const oracle::Report& r)
	{
		json out;
		out["schedulable"] = r.schedulable;
		out["scenarios_checked"] = r.scenarios_checked;
		out["failing_scenarios"] = r.failing_scenarios;
		json bounds = json::array();
		for (std::size_t j = 0; j < inst.num_jobs() && j < r.finish_range.size(); ++j) {
			if (r.finish_range[j].lo > r.finish_range[j].hi)
				continue; // never observed
			bounds.push_back({{"task", inst.job(j).task_id}, {"job", inst.job(j).index},
			                  {"finish_min", r.finish_range[j].lo},
			                  {"finish_max", r.finish_range[j].hi}});
		}
		out["bounds"] = bounds;
		if (r.failing) {
			json s = json::array();
			for (std::size_t j = 0; j < inst.num_jobs(); ++j)
				s.push_back({{"task", inst.job(j).task_id}, {"job", inst.job(j).index},
				             {"r", r.failing->release[j]}, {"c", r.failing->execution[j]}});
			out["failing"] = s;
		}
		return out;
	}

	json trace_to_json(const Problem_instance& inst, const oracle::Simulation_trace& t)
	{
		json d = json::array();
		for (const auto& x : t.dispatches)
			d.push_back({{"task", inst.job(x.job).task_id}, {"job", inst.job(x.job).index},
			             {"start", x.start}, {"finish", x.finish}});
		json idle = json::array();
		for (const auto& i : t.idle)
			idle.push_back({{"from", i.lo}, {"to", i.hi}});
		json misses = json::array();
		for (const auto& m : t.misses)
			misses.push_back({{"task", inst.job(m.job).task_id}, {"job", inst.job(m.job).index},
			                  {"finish", m.finish}, {"deadline", m.deadline}});
		return {{"schedulable", !t.has_miss()}, {"dispatches", d}, {"idle", idle}, {"misses", misses}};
	}

	std::string trace_to_text(const Problem_instance& inst, const oracle::Simulation_trace& t)
	{
		std::ostringstream os;
		for (const auto& x : t.dispatches) {
			const Job& j = inst.job(x.job);
			os << job_name(j) << " runs [" << x.start << ',' << x.finish << ')';
			if (x.finish > j.deadline)
				os << "  MISS (deadline " << j.deadline << ')';
			os << '\n';
		}
		for (const auto& i : t.idle)
			os << "idle " << i << '\n';
		os << (t.has_miss() ? "deadline miss\n" : "no deadline miss\n");
		return os.str();
	}

} // namespace sag
