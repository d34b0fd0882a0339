#ifndef SAG_GEN_HPP
#define SAG_GEN_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sag/model.hpp"

namespace sag {

	enum class Priority_scheme {
		zero,           // all tasks share priority 0
		rate_monotonic, // shorter period -> higher priority, ties by id
		random          // uniform in [0, n_tasks - 1]
	};

	std::string_view to_string(Priority_scheme s);
	std::optional<Priority_scheme> parse_priority_scheme(std::string_view name);

	struct Gen_spec {
		std::uint32_t n_tasks = 3;
		double utilization = 0.5;
		double jitter_ratio = 0;    // r_j
		double variation_ratio = 0; // r_c
		std::vector<Time> periods{5, 10, 20, 40};
		std::uint64_t seed = 0;
		Priority_scheme priorities = Priority_scheme::zero;

		// Throws Model_error on out-of-range parameters.
		void validate() const;
	};

	struct Generation_error : std::runtime_error {
		using std::runtime_error::runtime_error;
	};

	inline constexpr double utilization_tolerance = 0.01;

	// Tasks with ids 1..n, sum of C^max/T within utilization_tolerance of
	// the target and r_max + c_max <= d <= T; horizon is the hyperperiod.
	// Throws Generation_error when no such assignment is found.
	Problem_instance generate_instance(const Gen_spec& spec);

	struct Task_ratios {
		double jitter = 0;    // (R^max - R^min) / R^max, 0 if R^max = 0
		double variation = 0; // (C^max - C^min) / (C^max - 1), 0 if C^max = 1
	};

	struct Measured_ratios {
		std::vector<Task_ratios> tasks;
		Rational utilization;
	};

	Measured_ratios measure_ratios(const Problem_instance& inst);

	// floor(x + 1/2), tolerant of floating-point noise around the half
	Time round_half_up(double x);

} // namespace sag

#endif
