#include "dotgroup/grouping.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

namespace dotgroup {

std::vector<int> trace_to_initial(const OffsetPolygonSet& set, int vertex) {
    const int initial = static_cast<int>(set.initial_count);
    std::vector<int> out;
    std::vector<int> stack{vertex};
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        if (x < 0 || x >= static_cast<int>(set.vertices.size())) {
            throw GeometryError("ancestry link out of range");
        }
        if (x < initial) {
            out.push_back(x);
            continue;
        }
        const MovingVertex& v = set.vertices[x];
        // Links always point at strictly older vertices; anything else loops.
        if (v.pi_a == kNoVertex || v.pi_a >= x || v.pi_b >= x) {
            throw GeometryError("cyclic or missing ancestry link");
        }
        if (v.pi_b != kNoVertex) {
            stack.push_back(v.pi_b);
        }
        stack.push_back(v.pi_a);
    }
    return out;
}

std::vector<std::size_t> map_to_tree(const OffsetPolygonSet& set, std::span<const int> initial) {
    std::vector<std::size_t> out;
    for (int x : initial) {
        const int node = set.vertices.at(static_cast<std::size_t>(x)).tree_node;
        if (node < 0) {
            throw GeometryError("initial vertex carries no tree node");
        }
        const auto id = static_cast<std::size_t>(node);
        if (out.empty() || out.back() != id) {
            out.push_back(id);
        }
    }
    while (out.size() > 1 && out.front() == out.back()) {
        out.pop_back();
    }
    return out;
}

namespace {

std::deque<std::size_t> remove_spurs(std::span<const std::size_t> seq) {
    std::deque<std::size_t> s;
    for (std::size_t x : seq) {
        if (!s.empty() && s.back() == x) {
            continue;
        }
        if (s.size() >= 2 && s[s.size() - 2] == x) {
            s.pop_back();
            continue;
        }
        s.push_back(x);
    }
    // The interior is spur-free now; only the seam can still fold.
    bool changed = true;
    while (changed && s.size() >= 2) {
        changed = false;
        const std::size_t n = s.size();
        if (s.front() == s.back()) {
            s.pop_back();
            changed = true;
        } else if (n >= 3 && s[n - 2] == s.front()) {
            s.pop_back();
            changed = true;
        } else if (n >= 3 && s[1] == s.back()) {
            s.pop_front();
            changed = true;
        }
    }
    if (s.size() == 2) {
        s.pop_back();  // x, y, (x): a lone out-and-back edge
    }
    return s;
}

}  // namespace

std::vector<std::vector<std::size_t>> decompose_polygons(std::span<const std::size_t> sequence) {
    const std::deque<std::size_t> reduced = remove_spurs(sequence);
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<std::size_t> stack;
    std::unordered_map<std::size_t, std::size_t> where;
    for (std::size_t x : reduced) {
        const auto it = where.find(x);
        if (it == where.end()) {
            where.emplace(x, stack.size());
            stack.push_back(x);
            continue;
        }
        const std::size_t from = it->second;
        std::vector<std::size_t> cycle(stack.begin() + static_cast<std::ptrdiff_t>(from), stack.end());
        for (std::size_t k = from + 1; k < stack.size(); ++k) {
            where.erase(stack[k]);
        }
        stack.resize(from + 1);
        if (cycle.size() >= 3) {
            cycles.push_back(std::move(cycle));
        }
    }
    if (stack.size() >= 3) {
        cycles.push_back(std::move(stack));
    }
    return cycles;
}

std::vector<std::size_t> normalize_cycle(std::vector<std::size_t> cycle) {
    if (cycle.size() < 2) {
        return cycle;
    }
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    if (cycle.size() > 2 && cycle[1] > cycle.back()) {
        std::reverse(cycle.begin() + 1, cycle.end());
    }
    return cycle;
}

GroupingResult group_detailed(const DotPattern& dots) {
    GroupingResult result;
    if (dots.empty()) {
        return result;
    }
    result.tree = minimum_spanning_tree(dots);
    if (dots.size() < 3) {
        return result;
    }
    const SliverPolygon sliver = initial_polygon(result.tree, dots);
    result.initial_vertex_count = sliver.vertices.size();
    result.transform = offset_polygons(growing_polygon(sliver));

    std::set<std::vector<std::size_t>> seen;
    for (const GeneratedPolygon& g : result.transform.polygons) {
        std::vector<int> trace;
        for (int v : g.vertices) {
            const std::vector<int> t = trace_to_initial(result.transform, v);
            trace.insert(trace.end(), t.begin(), t.end());
        }
        const std::vector<std::size_t> nodes = map_to_tree(result.transform, trace);
        for (std::vector<std::size_t>& cycle : decompose_polygons(nodes)) {
            std::vector<std::size_t> key = normalize_cycle(std::move(cycle));
            if (!seen.insert(key).second) {
                continue;
            }
            std::vector<Point2> ring;
            ring.reserve(key.size());
            for (std::size_t i : key) {
                ring.push_back(dots[i]);
            }
            if (!is_simple_ring(ring)) {
                continue;
            }
            result.hypotheses.push_back({std::move(key), g.creation_time, g.event, 0.0});
        }
    }
    return result;
}

std::vector<Hypothesis> group(const DotPattern& dots) { return group_detailed(dots).hypotheses; }

}  // namespace dotgroup
