#include "sag/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace sag {

	std::size_t Schedule_graph::live_vertices() const
	{
		return static_cast<std::size_t>(std::count_if(vertex_store.begin(), vertex_store.end(),
		                                              [](const Vertex& v) { return v.alive; }));
	}

	std::size_t Schedule_graph::live_arcs() const
	{
		return static_cast<std::size_t>(std::count_if(arc_store.begin(), arc_store.end(),
		                                              [](const Arc& a) { return a.alive; }));
	}

	Vertex_id Graph_builder::add_root(std::size_t num_jobs)
	{
		Vertex root;
		root.id = static_cast<Vertex_id>(g.vertex_store.size());
		root.finish = {0, 0};
		root.finished = Job_set(num_jobs);
		g.vertex_store.push_back(std::move(root));
		return g.vertex_store.back().id;
	}

	Vertex_id Graph_builder::expand(Vertex_id from, const Job& job, Job_index idx, Time est, Time lst)
	{
		Vertex v;
		v.id = static_cast<Vertex_id>(g.vertex_store.size());
		v.finish = {checked_add(est, job.c_min()), checked_add(lst, job.c_max())};
		v.finished = g.vertex_store[from].finished.with(idx);
		v.level = g.vertex_store[from].level + 1;

		Arc a;
		a.id = static_cast<Arc_id>(g.arc_store.size());
		a.source = from;
		a.destination = v.id;
		a.job = idx;
		a.dispatch = {est, lst};

		v.in.push_back(a.id);
		g.vertex_store[from].out.push_back(a.id);
		g.arc_store.push_back(a);
		g.vertex_store.push_back(std::move(v));
		return g.vertex_store.back().id;
	}

	std::vector<Vertex_id> Graph_builder::merge(std::vector<Vertex_id> level)
	{
		// bucket by finished set, keeping first-appearance order
		std::unordered_map<Job_set, std::size_t> bucket_of;
		std::vector<std::vector<Vertex_id>> buckets;
		for (Vertex_id v : level) {
			auto [it, fresh] = bucket_of.try_emplace(g.vertex_store[v].finished, buckets.size());
			if (fresh)
				buckets.emplace_back();
			buckets[it->second].push_back(v);
		}

		auto absorb = [&](Vertex_id keep, Vertex_id gone) {
			Vertex& k = g.vertex_store[keep];
			Vertex& x = g.vertex_store[gone];
			k.finish = k.finish.hull(x.finish);
			for (Arc_id e : x.in) {
				Arc& arc = g.arc_store[e];
				auto twin = std::find_if(k.in.begin(), k.in.end(), [&](Arc_id f) {
					return g.arc_store[f].source == arc.source;
				});
				if (twin == k.in.end()) {
					arc.destination = keep;
					k.in.push_back(e);
					continue;
				}
				// same source twice: keep one arc, covering both dispatch windows
				Arc& kept = g.arc_store[*twin];
				kept.dispatch = kept.dispatch.hull(arc.dispatch);
				arc.alive = false;
				auto& out = g.vertex_store[arc.source].out;
				out.erase(std::remove(out.begin(), out.end(), e), out.end());
			}
			x.in.clear();
			x.alive = false;
		};

		std::vector<Vertex_id> survivors;
		for (auto& bucket : buckets) {
			std::sort(bucket.begin(), bucket.end(), [&](Vertex_id a, Vertex_id b) {
				return std::make_pair(g.vertex_store[a].finish.lo, a)
				     < std::make_pair(g.vertex_store[b].finish.lo, b);
			});
			std::size_t i = 0;
			while (i < bucket.size()) {
				// overlapping run [i, j)
				std::size_t j = i + 1;
				Time hi = g.vertex_store[bucket[i]].finish.hi;
				while (j < bucket.size() && g.vertex_store[bucket[j]].finish.lo <= hi) {
					hi = std::max(hi, g.vertex_store[bucket[j]].finish.hi);
					++j;
				}
				const Vertex_id keep = *std::min_element(bucket.begin() + static_cast<std::ptrdiff_t>(i),
				                                         bucket.begin() + static_cast<std::ptrdiff_t>(j));
				for (std::size_t k = i; k < j; ++k)
					if (bucket[k] != keep)
						absorb(keep, bucket[k]);
				survivors.push_back(keep);
				i = j;
			}
		}
		std::sort(survivors.begin(), survivors.end());
		return survivors;
	}

	std::vector<Vertex_id> merge_level(Schedule_graph& g, std::vector<Vertex_id> level)
	{
		return Graph_builder(g).merge(std::move(level));
	}

	namespace {

		struct Vertex_work {
			std::vector<Expansion> expansions;
			std::vector<std::string> violations;
			std::exception_ptr error;
		};

		std::string describe(const Vertex& v)
		{
			std::ostringstream os;
			os << 'v' << v.id << ' ' << v.finish;
			return os.str();
		}

		void audit_vertex(const Problem_instance& inst, Policy_kind kind, Eligibility_mode mode,
		                  const Vertex& v, const Eligibility_context& ctx, Vertex_work& w)
		{
			const auto reference = ctx.next_expansions_naive(v.finish, mode);
			if (reference != w.expansions)
				w.violations.push_back("sweep mismatch at " + describe(v));

			std::map<Job_index, std::vector<Expansion>> per_job;
			for (const Expansion& e : w.expansions)
				per_job[e.job].push_back(e);
			for (const auto& [j, list] : per_job) {
				if (mode == Eligibility_mode::single && list.size() > 1)
					w.violations.push_back("job " + job_name(inst.job(j))
					                       + " dispatched twice in single-eligibility mode at "
					                       + describe(v));
				if (is_work_conserving(kind)) {
					if (list.size() > 1)
						w.violations.push_back("work-conserving job " + job_name(inst.job(j))
						                       + " has several ranges at " + describe(v));
					if (list.front().est != std::max(v.finish.lo, inst.job(j).r_min()))
						w.violations.push_back("work-conserving job " + job_name(inst.job(j))
						                       + " does not start at max(EFT, r_min) at "
						                       + describe(v));
				}
			}

			Time bound;
			try {
				bound = ctx.exploration_bound(v.finish.hi);
			} catch (const Analysis_stuck&) {
				return;
			}
			for (Time t = v.finish.lo; t <= bound; ++t)
				if (ctx.count_certainly_eligible(t) > 1)
					w.violations.push_back("several certainly-eligible jobs at t=" + std::to_string(t)
					                       + " in " + describe(v));
		}

		void expand_vertex(const Problem_instance& inst, Policy_kind kind, const Analysis_options& opts,
		                   const Vertex& v, Vertex_work& w)
		{
			try {
				Eligibility_context ctx(inst, kind, applicable_jobs(inst, v.finished));
				w.expansions = ctx.next_expansions(v.finish, opts.mode);
				if (opts.audit)
					audit_vertex(inst, kind, opts.mode, v, ctx, w);
			} catch (const Analysis_stuck& e) {
				w.error = std::make_exception_ptr(Analysis_stuck(
					std::string("analysis stuck at v") + std::to_string(v.id) + ": " + e.what(), v.id));
			} catch (...) {
				w.error = std::current_exception();
			}
		}

	} // namespace

	Analysis generate(const Problem_instance& inst, Policy_kind kind, const Analysis_options& opts)
	{
		const auto started = std::chrono::steady_clock::now();
		const std::size_t n = inst.num_jobs();

		Analysis out;
		Schedule_graph& g = out.graph;
		Analysis_result& res = out.result;
		Graph_builder builder(g);

		res.finish_bounds.assign(n, std::nullopt);
		std::vector<Vertex_id> current{builder.add_root(n)};
		builder.push_level(current, true);
		res.levels.push_back({1, 0});

		for (std::size_t level = 1; level <= n; ++level) {
			std::vector<Vertex_work> work(current.size());
			const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads,
			                                  static_cast<unsigned>(current.size())));
			if (threads == 1) {
				for (std::size_t i = 0; i < current.size(); ++i)
					expand_vertex(inst, kind, opts, g.vertex(current[i]), work[i]);
			} else {
				std::vector<std::jthread> pool;
				for (unsigned w = 0; w < threads; ++w)
					pool.emplace_back([&, w] {
						for (std::size_t i = w; i < current.size(); i += threads)
							expand_vertex(inst, kind, opts, g.vertex(current[i]), work[i]);
					});
			}

			std::vector<Vertex_id> fresh;
			bool missed = false;
			for (std::size_t i = 0; i < current.size(); ++i) {
				if (work[i].error)
					std::rethrow_exception(work[i].error);
				for (auto& msg : work[i].violations)
					res.audit_violations.push_back(std::move(msg));
				for (const Expansion& e : work[i].expansions) {
					const Job& job = inst.job(e.job);
					const Vertex_id v = builder.expand(current[i], job, e.job, e.est, e.lst);
					fresh.push_back(v);

					const Interval fin = g.vertex(v).finish;
					auto& b = res.finish_bounds[e.job];
					b = b ? b->hull(fin) : fin;

					if (fin.hi > job.deadline) {
						Deadline_miss m{v, e.job, fin.hi, job.deadline};
						if (!res.witness)
							res.witness = m;
						res.misses.push_back(m);
						missed = true;
					}
				}
			}
			res.vertices_created += fresh.size();
			res.arcs_created += fresh.size();

			if (missed) {
				res.schedulable = false;
				if (!opts.exhaustive_misses) {
					res.levels.push_back({fresh.size(), fresh.size()});
					builder.push_level(std::move(fresh), false);
					break;
				}
			}

			current = builder.merge(std::move(fresh));
			std::size_t arcs = 0;
			for (Vertex_id v : current)
				arcs += g.vertex(v).in.size();
			res.levels.push_back({current.size(), arcs});
			builder.push_level(current, true);
		}

		res.vertices_created += 1; // root
		res.bounds_complete = res.schedulable
		    && std::all_of(res.finish_bounds.begin(), res.finish_bounds.end(),
		                   [](const auto& b) { return b.has_value(); });
		res.wall_ms = std::chrono::duration<double, std::milli>(
		                  std::chrono::steady_clock::now() - started).count();
		return out;
	}

	std::vector<std::string> validate_graph(const Schedule_graph& g, const Problem_instance& inst)
	{
		std::vector<std::string> problems;
		auto report = [&](const std::string& s) { problems.push_back(s); };

		if (g.levels().empty() || g.levels()[0] != std::vector<Vertex_id>{g.root()}
		    || g.vertex(g.root()).finish != Interval{0, 0})
			report("level 0 must hold exactly the root with [0,0]");

		for (const Vertex& v : g.vertices())
			if (v.finish.lo > v.finish.hi)
				report("v" + std::to_string(v.id) + " has EFT > LFT");

		for (std::size_t i = 0; i < g.levels().size(); ++i) {
			const auto& level = g.levels()[i];
			for (Vertex_id id : level) {
				const Vertex& v = g.vertex(id);
				if (!v.alive)
					report("dead vertex v" + std::to_string(id) + " listed on level " + std::to_string(i));
				if (v.level != i || v.finished.size() != i)
					report("v" + std::to_string(id) + " is on level " + std::to_string(i)
					       + " but has " + std::to_string(v.finished.size()) + " finished jobs");
			}
			if (i >= g.merged_levels())
				continue;
			for (std::size_t a = 0; a < level.size(); ++a)
				for (std::size_t b = a + 1; b < level.size(); ++b) {
					const Vertex& x = g.vertex(level[a]);
					const Vertex& y = g.vertex(level[b]);
					if (x.finished == y.finished && x.finish.intersects(y.finish))
						report("mergeable pair v" + std::to_string(x.id) + ", v" + std::to_string(y.id)
						       + " left on level " + std::to_string(i));
				}
		}

		std::map<std::pair<Vertex_id, Vertex_id>, int> pairs;
		for (const Arc& a : g.arcs()) {
			if (!a.alive)
				continue;
			if (++pairs[{a.source, a.destination}] > 1)
				report("parallel arcs v" + std::to_string(a.source) + " -> v" + std::to_string(a.destination));
			const Vertex& s = g.vertex(a.source);
			const Vertex& d = g.vertex(a.destination);
			if (!s.alive || !d.alive)
				report("arc " + std::to_string(a.id) + " touches a dead vertex");
			if (a.job >= inst.num_jobs()) {
				report("arc " + std::to_string(a.id) + " has an invalid job label");
				continue;
			}
			if (s.finished.contains(a.job) || s.finished.with(a.job) != d.finished)
				report("arc " + std::to_string(a.id) + " label inconsistent with finished sets");
		}
		return problems;
	}

} // namespace sag
