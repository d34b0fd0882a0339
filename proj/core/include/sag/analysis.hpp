#ifndef SAG_ANALYSIS_HPP
#define SAG_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sag/eligibility.hpp"
#include "sag/job_set.hpp"
#include "sag/policy.hpp"

namespace sag {

	using Vertex_id = std::uint32_t;
	using Arc_id = std::uint32_t;

	struct Vertex {
		Vertex_id id = 0;
		Interval finish;          // [EFT, LFT]
		Job_set finished;
		std::uint32_t level = 0;  // == finished.size()
		std::vector<Arc_id> in;
		std::vector<Arc_id> out;
		bool alive = true;        // false once merged into another vertex
	};

	struct Arc {
		Arc_id id = 0;
		Vertex_id source = 0;
		Vertex_id destination = 0;
		Job_index job = no_job;
		Interval dispatch;        // [est, lst]
		bool alive = true;        // false if dropped to keep the graph simple
	};

	// Level-structured schedule abstraction graph. Merged-away vertices and
	// dropped arcs stay in storage (alive == false) so ids remain stable.
	class Schedule_graph {
	public:
		const std::vector<Vertex>& vertices() const { return vertex_store; }
		const std::vector<Arc>& arcs() const { return arc_store; }
		const Vertex& vertex(Vertex_id v) const { return vertex_store[v]; }
		const Arc& arc(Arc_id a) const { return arc_store[a]; }

		// Live vertex ids of each level, ascending.
		const std::vector<std::vector<Vertex_id>>& levels() const { return level_list; }
		Vertex_id root() const { return 0; }

		std::size_t live_vertices() const;
		std::size_t live_arcs() const;

		// Levels 0 .. merged_levels()-1 went through the merge phase; an
		// aborted generation leaves its last level unmerged.
		std::size_t merged_levels() const { return merged_count; }

	private:
		friend class Graph_builder;
		std::vector<Vertex> vertex_store;
		std::vector<Arc> arc_store;
		std::vector<std::vector<Vertex_id>> level_list;
		std::size_t merged_count = 0;
	};

	struct Deadline_miss {
		Vertex_id vertex = 0;
		Job_index job = no_job;
		Time lft = 0;
		Time deadline = 0;

		friend bool operator==(const Deadline_miss&, const Deadline_miss&) = default;
	};

	struct Level_stats {
		std::size_t vertices = 0;
		std::size_t arcs = 0;
	};

	struct Analysis_options {
		Eligibility_mode mode = Eligibility_mode::multiple;
		// keep generating after a miss and report every offending vertex
		bool exhaustive_misses = false;
		// cross-check every expansion (sweep vs. per-tick reference, CE
		// uniqueness, single-range property); slow, for testing
		bool audit = false;
		// worker threads for expanding the vertices of one level
		unsigned threads = 1;
	};

	struct Analysis_result {
		bool schedulable = true;
		std::optional<Deadline_miss> witness;    // first miss found
		std::vector<Deadline_miss> misses;       // all misses (exhaustive mode)
		// Per job: [min EFT, max LFT] over all arcs dispatching it.
		std::vector<std::optional<Interval>> finish_bounds;
		bool bounds_complete = false;
		std::vector<Level_stats> levels;         // index = level
		std::size_t vertices_created = 0;
		std::size_t arcs_created = 0;
		double wall_ms = 0;
		std::vector<std::string> audit_violations;
	};

	struct Analysis {
		Schedule_graph graph;
		Analysis_result result;
	};

	// Level-by-level graph generation: expansion, deadline check, merge.
	// Throws Analysis_stuck if some vertex can never dispatch a job.
	Analysis generate(const Problem_instance& inst, Policy_kind kind,
	                  const Analysis_options& opts = {});

	// Merge phase over the vertices of one level; exposed for testing.
	// Returns the surviving vertex ids, ascending.
	std::vector<Vertex_id> merge_level(Schedule_graph& g, std::vector<Vertex_id> level);

	// Builds graphs by hand (tests) and during generation.
	class Graph_builder {
	public:
		explicit Graph_builder(Schedule_graph& g)
		: g(g)
		{
		}

		Vertex_id add_root(std::size_t num_jobs);
		// New vertex [est + c_min, lst + c_max] reached from `from` via `job`.
		Vertex_id expand(Vertex_id from, const Job& job, Job_index idx, Time est, Time lst);
		std::vector<Vertex_id> merge(std::vector<Vertex_id> level);
		void push_level(std::vector<Vertex_id> level, bool merged)
		{
			g.level_list.push_back(std::move(level));
			if (merged)
				g.merged_count = g.level_list.size();
		}

	private:
		Schedule_graph& g;
	};

	// Structural invariants of a generated graph; empty when all hold.
	std::vector<std::string> validate_graph(const Schedule_graph& g, const Problem_instance& inst);

} // namespace sag

#endif
