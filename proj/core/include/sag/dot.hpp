#ifndef SAG_DOT_HPP
#define SAG_DOT_HPP

#include <string>

#include "sag/analysis.hpp"

namespace sag {

	// Graphviz rendering of the live part of a schedule graph. Vertices are
	// labeled "v<id>: [eft,lft]", arcs by their job; the vertex of the miss
	// witness (if any) and its incoming arcs are drawn in red.
	std::string export_dot(const Schedule_graph& g, const Problem_instance& inst,
	                       const Analysis_result* result = nullptr);

} // namespace sag

#endif
