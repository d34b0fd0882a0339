#include "sag/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace sag {

	std::string_view to_string(Priority_scheme s)
	{
		switch (s) {
		case Priority_scheme::zero:
			return "zero";
		case Priority_scheme::rate_monotonic:
			return "rm";
		case Priority_scheme::random:
			return "random";
		}
		return "?";
	}

	std::optional<Priority_scheme> parse_priority_scheme(std::string_view name)
	{
		for (auto s : {Priority_scheme::zero, Priority_scheme::rate_monotonic, Priority_scheme::random})
			if (to_string(s) == name)
				return s;
		return std::nullopt;
	}

	void Gen_spec::validate() const
	{
		if (n_tasks == 0)
			throw Model_error("need at least one task");
		if (!(utilization > 0 && utilization <= 1))
			throw Model_error("utilization must lie in (0, 1]");
		if (!(jitter_ratio >= 0 && jitter_ratio <= 1))
			throw Model_error("jitter ratio must lie in [0, 1]");
		if (!(variation_ratio >= 0 && variation_ratio <= 1))
			throw Model_error("variation ratio must lie in [0, 1]");
		if (periods.empty())
			throw Model_error("period set is empty");
		for (Time p : periods)
			if (p <= 0)
				throw Model_error("periods must be positive");
	}

	Time round_half_up(double x)
	{
		// the nudge absorbs representation error, e.g. 5 * 0.7 landing just below 3.5
		return static_cast<Time>(std::floor(x + 0.5 + 1e-9));
	}

	namespace {

		constexpr int max_attempts = 200;

		using Rng = std::mt19937_64;

		Time uniform(Rng& rng, Time lo, Time hi)
		{
			return std::uniform_int_distribution<Time>(lo, hi)(rng);
		}

		// Uniform point on the simplex {x >= 0, sum x = total}.
		std::vector<double> simplex(Rng& rng, std::size_t n, double total)
		{
			std::vector<double> cuts{0.0, 1.0};
			std::uniform_real_distribution<double> u(0.0, 1.0);
			for (std::size_t i = 1; i < n; ++i)
				cuts.push_back(u(rng));
			std::sort(cuts.begin(), cuts.end());
			std::vector<double> x(n);
			for (std::size_t i = 0; i < n; ++i)
				x[i] = (cuts[i + 1] - cuts[i]) * total;
			return x;
		}

		Rational total_utilization(const std::vector<Time>& c, const std::vector<Time>& t)
		{
			Rational u = 0;
			for (std::size_t i = 0; i < c.size(); ++i)
				u += Rational(c[i], t[i]);
			return u;
		}

		// Nudges C^max values one unit at a time towards the target; gives up
		// when no single step brings the total closer.
		bool repair(std::vector<Time>& c, const std::vector<Time>& t, const Rational& lo,
		            const Rational& hi, const Rational& target)
		{
			auto distance = [&](const Rational& u) { return boost::abs(u - target); };
			for (;;) {
				const Rational u = total_utilization(c, t);
				if (lo <= u && u <= hi)
					return true;
				const Time step = u < lo ? 1 : -1;
				std::size_t best = c.size();
				Rational best_dist = distance(u);
				for (std::size_t i = 0; i < c.size(); ++i) {
					const Time v = c[i] + step;
					if (v < 1 || v > t[i])
						continue;
					const Rational d = distance(u + Rational(step, t[i]));
					if (d < best_dist) {
						best_dist = d;
						best = i;
					}
				}
				if (best == c.size())
					return false;
				c[best] += step;
			}
		}

		Rational to_rational(double x)
		{
			// utilizations are given with a few decimals at most
			constexpr std::int64_t scale = 1'000'000;
			return Rational(static_cast<std::int64_t>(std::llround(x * scale)), scale);
		}

	} // namespace

	Problem_instance generate_instance(const Gen_spec& spec)
	{
		spec.validate();

		Rng rng(spec.seed);
		const Rational target = to_rational(spec.utilization);
		const Rational eps = to_rational(utilization_tolerance);
		const std::size_t n = spec.n_tasks;

		for (int attempt = 0; attempt < max_attempts; ++attempt) {
			std::vector<Time> period(n);
			for (auto& p : period)
				p = spec.periods[uniform(rng, 0, static_cast<Time>(spec.periods.size()) - 1)];

			const auto share = simplex(rng, n, spec.utilization);
			std::vector<Time> c(n);
			for (std::size_t i = 0; i < n; ++i)
				c[i] = std::clamp<Time>(round_half_up(share[i] * static_cast<double>(period[i])), 1,
				                        period[i]);
			if (!repair(c, period, target - eps, target + eps, target))
				continue;

			std::vector<Task> tasks(n);
			for (std::size_t i = 0; i < n; ++i) {
				Task& k = tasks[i];
				k.id = static_cast<Task_id>(i + 1);
				k.period = period[i];
				k.c_max = c[i];
				k.r_max = uniform(rng, 0, period[i] - c[i]);
				k.deadline = uniform(rng, k.r_max + c[i], period[i]);
				k.r_min = round_half_up(static_cast<double>(k.r_max) * (1 - spec.jitter_ratio));
				k.c_min = std::max<Time>(
					1, round_half_up(static_cast<double>(c[i]) - spec.variation_ratio * static_cast<double>(c[i] - 1)));
			}

			switch (spec.priorities) {
			case Priority_scheme::zero:
				break;
			case Priority_scheme::rate_monotonic: {
				std::vector<std::size_t> order(n);
				std::iota(order.begin(), order.end(), 0);
				std::stable_sort(order.begin(), order.end(),
				                 [&](std::size_t a, std::size_t b) { return period[a] < period[b]; });
				for (std::size_t rank = 0; rank < n; ++rank)
					tasks[order[rank]].priority = static_cast<Priority>(rank);
				break;
			}
			case Priority_scheme::random:
				for (auto& k : tasks)
					k.priority = static_cast<Priority>(uniform(rng, 0, static_cast<Time>(n) - 1));
				break;
			}

			return Problem_instance(std::move(tasks));
		}
		throw Generation_error("could not reach the target utilization within "
		                       + std::to_string(max_attempts) + " attempts");
	}

	Measured_ratios measure_ratios(const Problem_instance& inst)
	{
		Measured_ratios m;
		for (const Task& k : inst.tasks()) {
			Task_ratios r;
			if (k.r_max > 0)
				r.jitter = static_cast<double>(k.r_max - k.r_min) / static_cast<double>(k.r_max);
			if (k.c_max > 1)
				r.variation = static_cast<double>(k.c_max - k.c_min) / static_cast<double>(k.c_max - 1);
			m.tasks.push_back(r);
		}
		m.utilization = utilization(inst.tasks());
		return m;
	}

} // namespace sag
