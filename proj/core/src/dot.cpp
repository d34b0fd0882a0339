#include "sag/dot.hpp"

#include <sstream>

namespace sag {

	std::string export_dot(const Schedule_graph& g, const Problem_instance& inst,
	                       const Analysis_result* result)
	{
		const Vertex_id bad = (result && result->witness) ? result->witness->vertex : g.vertices().size();

		std::ostringstream os;
		os << "digraph schedule_graph {\n";
		os << "\trankdir=LR;\n";
		os << "\tnode [shape=box];\n";
		for (std::size_t level = 0; level < g.levels().size(); ++level) {
			os << "\tsubgraph level_" << level << " {\n\t\trank=same;\n";
			for (Vertex_id v : g.levels()[level]) {
				const Vertex& x = g.vertex(v);
				os << "\t\tv" << v << " [label=\"v" << v << ": " << x.finish << '"';
				if (v == bad)
					os << ", color=red, fontcolor=red";
				os << "];\n";
			}
			os << "\t}\n";
		}
		for (const Arc& a : g.arcs()) {
			if (!a.alive || !g.vertex(a.source).alive || !g.vertex(a.destination).alive)
				continue;
			os << "\tv" << a.source << " -> v" << a.destination << " [label=\""
			   << job_name(inst.job(a.job)) << '"';
			if (a.destination == bad)
				os << ", color=red, fontcolor=red";
			os << "];\n";
		}
		os << "}\n";
		return os.str();
	}

} // namespace sag
