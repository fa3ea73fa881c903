#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dotgroup/geometry.hpp"

namespace dotgroup {

/// Ordered, pairwise-distinct input dots.
class DotPattern {
public:
    DotPattern() = default;
    /// Throws GeometryError on duplicate points.
    explicit DotPattern(std::vector<Point2> points);

    const std::vector<Point2>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const Point2& operator[](std::size_t i) const { return points_[i]; }

private:
    std::vector<Point2> points_;
};

struct TreeEdge {
    std::size_t a = 0;  // a < b
    std::size_t b = 0;
    double weight = 0.0;
};

struct SpanningTree {
    std::size_t node_count = 0;
    std::vector<TreeEdge> edges;  // in insertion order

    double total_weight() const;
    std::vector<std::vector<std::size_t>> adjacency() const;
    std::size_t leaf_count() const;
};

/// Euclidean MST, Prim's method grown from node 0. Equal-weight candidates are
/// resolved by the lexicographically smallest (min endpoint, max endpoint).
SpanningTree minimum_spanning_tree(const DotPattern& dots);

inline constexpr int kNoVertex = -1;

/// A polygon vertex moving along its wedge bisector. The wavefront region lies
/// to the left of both incident edges; `wedge_angle` is measured on that side.
struct MovingVertex {
    Point2 origin;
    Vec2 direction;        // unit bisector, zero for a collapsed vertex
    double speed = 0.0;
    double wedge_angle = 0.0;
    double birth_time = 0.0;
    int tree_node = kNoVertex;
    int pi_a = kNoVertex;
    int pi_b = kNoVertex;
    Vec2 in_dir;           // unit direction of the incoming edge
    Vec2 out_dir;          // unit direction of the outgoing edge

    Vec2 velocity() const { return direction * speed; }
    Point2 position(double t) const { return origin + velocity() * (t - birth_time); }
    bool is_reflex() const;
    bool is_collapsed() const { return speed == 0.0; }
};

/// 1/sin(theta/2), the bisector speed that moves both incident edges at unit speed.
double vertex_speed(double theta);

/// Builds a vertex at `origin` from the unit directions of its incident edges.
/// Antiparallel edges give a collapsed (stationary) vertex.
MovingVertex make_moving_vertex(Point2 origin, Vec2 in_dir, Vec2 out_dir, double birth_time);

/// The zero-width polygon walked around a spanning tree; vertex order is the
/// boundary walk with the outside of the tree on the left.
struct SliverPolygon {
    std::vector<MovingVertex> vertices;
};

SliverPolygon initial_polygon(const SpanningTree& tree, const DotPattern& dots);

}  // namespace dotgroup
