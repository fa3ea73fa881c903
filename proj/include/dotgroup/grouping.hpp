#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dotgroup/mst.hpp"
#include "dotgroup/skeleton.hpp"

namespace dotgroup {

/// A grouping hypothesis: a simple polygon over a subset of the input dots.
struct Hypothesis {
    std::vector<std::size_t> dots;  // normalized index cycle
    double event_time = 0.0;
    int source_event = -1;  // index into the transformation's event log
    double saliency = 0.0;  // filled by selection
};

/// Expands a generated vertex into the initial-polygon vertices it descends from,
/// in boundary order. Throws GeometryError when the ancestry links loop.
std::vector<int> trace_to_initial(const OffsetPolygonSet& set, int vertex);

/// Replaces initial vertices by their tree nodes and drops consecutive repeats
/// (circularly).
std::vector<std::size_t> map_to_tree(const OffsetPolygonSet& set, std::span<const int> initial);

/// Removes out-and-back spurs and splits the circular node sequence into simple
/// cycles of at least three nodes.
std::vector<std::vector<std::size_t>> decompose_polygons(std::span<const std::size_t> sequence);

/// Rotates a cycle to start at its smallest index, oriented so the second entry
/// is smaller than the last.
std::vector<std::size_t> normalize_cycle(std::vector<std::size_t> cycle);

struct GroupingResult {
    SpanningTree tree;
    OffsetPolygonSet transform;  // empty when fewer than 3 dots
    std::vector<Hypothesis> hypotheses;
    std::size_t initial_vertex_count = 0;
};

GroupingResult group_detailed(const DotPattern& dots);

/// All distinct simple-polygon hypotheses for the pattern. Collinear input, or
/// fewer than three dots, yields none.
std::vector<Hypothesis> group(const DotPattern& dots);

}  // namespace dotgroup
