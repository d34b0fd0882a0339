#ifndef SAG_JOB_SET_HPP
#define SAG_JOB_SET_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "sag/model.hpp"

namespace sag {

	// Fixed-width bitset over the jobs of one instance.
	class Job_set {
	public:
		Job_set() = default;
		explicit Job_set(std::size_t num_jobs)
		: words((num_jobs + 63) / 64, 0)
		, width(num_jobs)
		{
		}

		bool contains(Job_index j) const { return (words[j / 64] >> (j % 64)) & 1u; }
		void insert(Job_index j) { words[j / 64] |= std::uint64_t{1} << (j % 64); }

		Job_set with(Job_index j) const
		{
			Job_set s = *this;
			s.insert(j);
			return s;
		}

		std::size_t size() const
		{
			std::size_t n = 0;
			for (auto w : words)
				n += static_cast<std::size_t>(std::popcount(w));
			return n;
		}

		std::size_t capacity() const { return width; }

		std::size_t hash() const
		{
			std::size_t h = 0xcbf29ce484222325ull;
			for (auto w : words)
				h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ull;
			return h;
		}

		friend bool operator==(const Job_set&, const Job_set&) = default;

	private:
		std::vector<std::uint64_t> words;
		std::size_t width = 0;
	};

} // namespace sag

template<>
struct std::hash<sag::Job_set> {
	std::size_t operator()(const sag::Job_set& s) const noexcept { return s.hash(); }
};

#endif
