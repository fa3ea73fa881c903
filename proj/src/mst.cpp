#include "dotgroup/mst.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <tuple>

namespace dotgroup {

DotPattern::DotPattern(std::vector<Point2> points) : points_(std::move(points)) {
    std::vector<Point2> sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw GeometryError("dot pattern contains duplicate points");
    }
}

double SpanningTree::total_weight() const {
    double w = 0.0;
    for (const TreeEdge& e : edges) {
        w += e.weight;
    }
    return w;
}

std::vector<std::vector<std::size_t>> SpanningTree::adjacency() const {
    std::vector<std::vector<std::size_t>> adj(node_count);
    for (const TreeEdge& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    return adj;
}

std::size_t SpanningTree::leaf_count() const {
    std::size_t leaves = 0;
    for (const auto& nbrs : adjacency()) {
        leaves += nbrs.size() == 1 ? 1 : 0;
    }
    return leaves;
}

SpanningTree minimum_spanning_tree(const DotPattern& dots) {
    const std::size_t n = dots.size();
    if (n == 0) {
        throw GeometryError("minimum spanning tree of an empty pattern");
    }
    SpanningTree tree;
    tree.node_count = n;
    if (n == 1) {
        return tree;
    }

    // Candidate key for each node outside the tree: (weight, lo, hi).
    using Key = std::tuple<double, std::size_t, std::size_t>;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<Key> best(n, Key{kInf, n, n});
    std::vector<bool> in_tree(n, false);

    auto relax = [&](std::size_t from) {
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) {
                continue;
            }
            const Key k{distance(dots[from], dots[v]), std::min(from, v), std::max(from, v)};
            if (k < best[v]) {
                best[v] = k;
            }
        }
    };

    in_tree[0] = true;
    relax(0);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && (pick == n || best[v] < best[pick])) {
                pick = v;
            }
        }
        const auto [w, lo, hi] = best[pick];
        tree.edges.push_back({lo, hi, w});
        in_tree[pick] = true;
        relax(pick);
    }
    return tree;
}

bool MovingVertex::is_reflex() const { return wedge_angle > std::numbers::pi + 1e-12; }

double vertex_speed(double theta) {
    if (!(theta > 0.0 && theta < 2.0 * std::numbers::pi)) {
        throw GeometryError("wedge angle must lie in (0, 2*pi)");
    }
    return 1.0 / std::sin(theta / 2.0);
}

MovingVertex make_moving_vertex(Point2 origin, Vec2 in_dir, Vec2 out_dir, double birth_time) {
    MovingVertex v;
    v.origin = origin;
    v.birth_time = birth_time;
    v.in_dir = in_dir;
    v.out_dir = out_dir;

    const double turn = std::atan2(cross(in_dir, out_dir), dot(in_dir, out_dir));
    const Vec2 n1 = left_normal(in_dir);
    const Vec2 n2 = left_normal(out_dir);
    const double denom = 1.0 + dot(n1, n2);
    if (denom <= 1e-12) {
        // The incident edges fold onto each other; nothing is left to sweep here.
        v.wedge_angle = 0.0;
        v.speed = 0.0;
        v.direction = {0.0, 0.0};
        return v;
    }
    // Unique velocity that advances both incident edge lines at unit speed.
    const Vec2 vel = (n1 + n2) / denom;
    v.wedge_angle = std::numbers::pi - turn;
    v.speed = norm(vel);
    v.direction = vel / v.speed;
    return v;
}

namespace {

struct NodeRing {
    std::vector<std::size_t> nbrs;  // counter-clockwise by angle, ties by index
};

std::size_t index_in(const std::vector<std::size_t>& v, std::size_t x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

}  // namespace

SliverPolygon initial_polygon(const SpanningTree& tree, const DotPattern& dots) {
    const std::size_t n = dots.size();
    if (n < 2 || tree.node_count != n) {
        throw GeometryError("initial polygon needs a spanning tree over at least 2 dots");
    }
    if (tree.edges.size() != n - 1) {
        throw GeometryError("spanning tree must have node_count - 1 edges");
    }

    std::vector<NodeRing> rings(n);
    {
        const auto adj = tree.adjacency();
        for (std::size_t u = 0; u < n; ++u) {
            std::vector<std::pair<double, std::size_t>> keyed;
            for (std::size_t w : adj[u]) {
                const Vec2 d = dots[w] - dots[u];
                keyed.emplace_back(std::atan2(d.y, d.x), w);
            }
            std::sort(keyed.begin(), keyed.end());
            for (const auto& [angle, w] : keyed) {
                rings[u].nbrs.push_back(w);
            }
        }
    }

    SliverPolygon poly;
    auto dir = [&](std::size_t from, std::size_t to) { return normalized(dots[to] - dots[from]); };

    // Walk state: we stand at `u` having arrived along the edge from `prev`.
    const std::size_t start_u = 0;
    const std::size_t start_prev = rings[0].nbrs.front();
    std::size_t u = start_u;
    std::size_t prev = start_prev;
    do {
        const auto& nbrs = rings[u].nbrs;
        const Vec2 in = dir(prev, u);
        std::size_t next;
        if (nbrs.size() == 1) {
            // Flat cap: two vertices joined by a zero-length edge across the tip.
            const Vec2 cap = right_normal(in);
            MovingVertex a = make_moving_vertex(dots[u], in, cap, 0.0);
            MovingVertex b = make_moving_vertex(dots[u], cap, -in, 0.0);
            a.tree_node = b.tree_node = static_cast<int>(u);
            poly.vertices.push_back(a);
            poly.vertices.push_back(b);
            next = prev;
        } else {
            // The wavefront side of the incoming edge faces the clockwise wedge.
            const std::size_t k = index_in(nbrs, prev);
            next = nbrs[(k + nbrs.size() - 1) % nbrs.size()];
            MovingVertex v = make_moving_vertex(dots[u], in, dir(u, next), 0.0);
            v.tree_node = static_cast<int>(u);
            poly.vertices.push_back(v);
        }
        prev = u;
        u = next;
    } while (!(u == start_u && prev == start_prev));
    return poly;
}

}  // namespace dotgroup
