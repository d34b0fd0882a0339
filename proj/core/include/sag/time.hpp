#ifndef SAG_TIME_HPP
#define SAG_TIME_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sag {

	// Discrete time. Signed so that critical times (d - C^max folds) may
	// legitimately fall below zero; all model inputs are validated >= 0.
	using Time = std::int64_t;

	inline constexpr Time time_infinity = std::numeric_limits<Time>::max();

	struct Overflow_error : std::overflow_error {
		using std::overflow_error::overflow_error;
	};

	inline Time checked_add(Time a, Time b)
	{
		Time r;
		if (__builtin_add_overflow(a, b, &r))
			throw Overflow_error("time overflow in addition");
		return r;
	}

	inline Time checked_mul(Time a, Time b)
	{
		Time r;
		if (__builtin_mul_overflow(a, b, &r))
			throw Overflow_error("time overflow in multiplication");
		return r;
	}

	// Closed integer interval [lo, hi].
	struct Interval {
		Time lo = 0;
		Time hi = 0;

		constexpr bool contains(Time t) const { return lo <= t && t <= hi; }

		constexpr bool intersects(const Interval& other) const
		{
			return lo <= other.hi && other.lo <= hi;
		}

		constexpr Interval hull(const Interval& other) const
		{
			return {std::min(lo, other.lo), std::max(hi, other.hi)};
		}

		friend constexpr bool operator==(const Interval&, const Interval&) = default;
	};

	inline std::ostream& operator<<(std::ostream& os, const Interval& i)
	{
		return os << '[' << i.lo << ',' << i.hi << ']';
	}

} // namespace sag

#endif
