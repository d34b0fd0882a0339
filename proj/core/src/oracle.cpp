#include "sag/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

namespace sag::oracle {

	const Dispatch* Simulation_trace::find(Job_index j) const
	{
		for (const Dispatch& d : dispatches)
			if (d.job == j)
				return &d;
		return nullptr;
	}

	namespace {

		// Reusable simulation state, so enumeration does not allocate per scenario.
		class Simulator {
		public:
			Simulator(const Problem_instance& inst, Policy_kind kind)
			: inst(inst)
			, kind(kind)
			, next(inst.num_tasks())
			{
				applicable.reserve(inst.num_tasks());
			}

			// Returns true iff some job misses its deadline. Fills `finish`
			// (indexed by job) and, if given, the full trace.
			bool run(const Execution_scenario& s, std::vector<Time>& finish,
			         Simulation_trace* trace, bool stop_at_first_miss)
			{
				for (std::size_t pos = 0; pos < inst.num_tasks(); ++pos)
					next[pos] = inst.first_job(pos);

				bool missed = false;
				std::size_t done = 0;
				Time t = 0;
				while (done < inst.num_jobs()) {
					applicable.clear();
					for (std::size_t pos = 0; pos < inst.num_tasks(); ++pos)
						if (next[pos] < inst.first_job(pos) + inst.job_count(pos))
							applicable.push_back(next[pos]);

					const Job_index j = pick(kind, inst, t, applicable, s.release);
					if (j == no_job) {
						Time wake = time_infinity;
						for (Job_index a : applicable)
							if (s.release[a] > t)
								wake = std::min(wake, s.release[a]);
						if (wake == time_infinity)
							throw std::logic_error("scheduler idles with nothing left to release");
						if (trace)
							trace->idle.push_back({t, wake - 1});
						t = wake;
						continue;
					}

					const Job& job = inst.job(j);
					const Time f = t + s.execution[j];
					finish[j] = f;
					if (trace)
						trace->dispatches.push_back({j, t, f});
					if (f > job.deadline) {
						missed = true;
						if (trace)
							trace->misses.push_back({j, f, job.deadline});
						if (stop_at_first_miss)
							return true;
					}
					++next[job.task_pos];
					++done;
					t = f;
				}
				return missed;
			}

		private:
			const Problem_instance& inst;
			Policy_kind kind;
			std::vector<Job_index> next;
			std::vector<Job_index> applicable;
		};

		struct Digit {
			Time base;
			std::uint64_t span; // number of values
		};

		// Most significant first: release of job 0, execution of job 0, ...
		std::vector<Digit> digits_of(const Problem_instance& inst)
		{
			std::vector<Digit> d;
			for (const Job& j : inst.jobs()) {
				d.push_back({j.r_min(), static_cast<std::uint64_t>(j.r_max() - j.r_min() + 1)});
				d.push_back({j.c_min(), static_cast<std::uint64_t>(j.c_max() - j.c_min() + 1)});
			}
			return d;
		}

		void decode(const std::vector<Digit>& digits, std::uint64_t rank, std::vector<std::uint64_t>& value)
		{
			value.assign(digits.size(), 0);
			for (std::size_t k = digits.size(); k-- > 0;) {
				value[k] = rank % digits[k].span;
				rank /= digits[k].span;
			}
		}

		void apply(const std::vector<Digit>& digits, const std::vector<std::uint64_t>& value,
		           Execution_scenario& s)
		{
			for (std::size_t j = 0; j < s.release.size(); ++j) {
				s.release[j] = digits[2 * j].base + static_cast<Time>(value[2 * j]);
				s.execution[j] = digits[2 * j + 1].base + static_cast<Time>(value[2 * j + 1]);
			}
		}

		// Odometer increment; returns false on wrap-around.
		bool increment(const std::vector<Digit>& digits, std::vector<std::uint64_t>& value,
		               Execution_scenario& s)
		{
			for (std::size_t k = digits.size(); k-- > 0;) {
				Time& slot = (k % 2 == 0) ? s.release[k / 2] : s.execution[k / 2];
				if (++value[k] < digits[k].span) {
					++slot;
					return true;
				}
				value[k] = 0;
				slot = digits[k].base;
			}
			return false;
		}

		struct Partial {
			std::uint64_t checked = 0;
			std::uint64_t failing = 0;
			std::uint64_t first_failure = std::numeric_limits<std::uint64_t>::max();
			std::vector<Interval> range;
		};

	} // namespace

	Simulation_trace simulate(const Problem_instance& inst, Policy_kind kind,
	                          const Execution_scenario& scenario, const Simulation_options& opts)
	{
		scenario.validate(inst);
		Simulator sim(inst, kind);
		std::vector<Time> finish(inst.num_jobs(), 0);
		Simulation_trace trace;
		sim.run(scenario, finish, &trace, opts.stop_at_first_miss);
		return trace;
	}

	Scenario_cap_exceeded::Scenario_cap_exceeded(std::uint64_t count, std::uint64_t cap)
	: std::runtime_error("instance has " + (count == std::numeric_limits<std::uint64_t>::max()
	                                            ? std::string("more than 2^64")
	                                            : std::to_string(count))
	                     + " execution scenarios, above the cap of " + std::to_string(cap))
	, count(count)
	, cap(cap)
	{
	}

	std::uint64_t scenario_count(const Problem_instance& inst)
	{
		std::uint64_t total = 1;
		for (const Digit& d : digits_of(inst))
			if (__builtin_mul_overflow(total, d.span, &total))
				return std::numeric_limits<std::uint64_t>::max();
		return total;
	}

	Execution_scenario scenario_at(const Problem_instance& inst, std::uint64_t rank)
	{
		const auto digits = digits_of(inst);
		std::vector<std::uint64_t> value;
		decode(digits, rank, value);
		Execution_scenario s;
		s.release.resize(inst.num_jobs());
		s.execution.resize(inst.num_jobs());
		apply(digits, value, s);
		return s;
	}

	Report enumerate(const Problem_instance& inst, Policy_kind kind, const Limits& limits)
	{
		const std::uint64_t total = scenario_count(inst);
		if (total > limits.max_scenarios)
			throw Scenario_cap_exceeded(total, limits.max_scenarios);

		const auto digits = digits_of(inst);
		const std::size_t n = inst.num_jobs();
		const unsigned threads = static_cast<unsigned>(
			std::clamp<std::uint64_t>(limits.threads, 1, std::max<std::uint64_t>(1, total / 1024)));

		// lowest failing rank seen by any worker; later ranks can stop early
		std::atomic<std::uint64_t> best_failure{std::numeric_limits<std::uint64_t>::max()};
		std::vector<Partial> parts(threads);

		auto worker = [&](unsigned w) {
			const std::uint64_t lo = total / threads * w + std::min<std::uint64_t>(w, total % threads);
			const std::uint64_t hi = lo + total / threads + (w < total % threads ? 1 : 0);
			Partial& p = parts[w];
			p.range.assign(n, {time_infinity, std::numeric_limits<Time>::min()});
			if (lo >= hi)
				return;

			Simulator sim(inst, kind);
			std::vector<Time> finish(n, 0);
			std::vector<std::uint64_t> value;
			decode(digits, lo, value);
			Execution_scenario s;
			s.release.resize(n);
			s.execution.resize(n);
			apply(digits, value, s);

			for (std::uint64_t rank = lo; rank < hi; ++rank) {
				if (limits.stop_at_first_failure && rank > best_failure.load(std::memory_order_relaxed))
					break;
				const bool missed = sim.run(s, finish, nullptr, limits.stop_at_first_failure);
				++p.checked;
				// an aborted run leaves `finish` partially stale
				if (!missed || !limits.stop_at_first_failure) {
					for (std::size_t j = 0; j < n; ++j) {
						p.range[j].lo = std::min(p.range[j].lo, finish[j]);
						p.range[j].hi = std::max(p.range[j].hi, finish[j]);
					}
				}
				if (missed) {
					++p.failing;
					if (rank < p.first_failure)
						p.first_failure = rank;
					std::uint64_t cur = best_failure.load();
					while (rank < cur && !best_failure.compare_exchange_weak(cur, rank)) {
					}
					if (limits.stop_at_first_failure)
						break;
				}
				if (rank + 1 < hi)
					increment(digits, value, s);
			}
		};

		if (threads == 1) {
			worker(0);
		} else {
			std::vector<std::jthread> pool;
			for (unsigned w = 0; w < threads; ++w)
				pool.emplace_back(worker, w);
		}

		Report r;
		r.finish_range.assign(n, {time_infinity, std::numeric_limits<Time>::min()});
		std::uint64_t first = std::numeric_limits<std::uint64_t>::max();
		for (const Partial& p : parts) {
			r.scenarios_checked += p.checked;
			r.failing_scenarios += p.failing;
			first = std::min(first, p.first_failure);
			for (std::size_t j = 0; j < n; ++j)
				r.finish_range[j] = {std::min(r.finish_range[j].lo, p.range[j].lo),
				                     std::max(r.finish_range[j].hi, p.range[j].hi)};
		}
		if (first != std::numeric_limits<std::uint64_t>::max()) {
			r.schedulable = false;
			r.failing = scenario_at(inst, first);
		}
		return r;
	}

} // namespace sag::oracle
