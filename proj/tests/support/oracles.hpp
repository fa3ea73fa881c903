#pragma once

// Independent reference implementations used only by the tests.

#include <cstdint>
#include <random>
#include <vector>

#include "dotgroup/geometry.hpp"
#include "dotgroup/mst.hpp"

namespace oracle {

using dotgroup::Point2;

struct TimedEvent {
    double time;
    Point2 location;
    bool split;
};

/// Forward-Euler simulation of a shrinking CCW simple polygon. Vertex velocities
/// come from rotating the edge direction by half the interior angle and scaling
/// by 1/sin(theta/2). Returns every edge and split event it detects.
std::vector<TimedEvent> small_step_events(const std::vector<Point2>& ccw_ring, double dt = 1e-4,
                                          double t_max = 100.0);

/// Area of P intersect Q and P union Q by even-odd point sampling on a
/// res x res grid over the joint bounding box.
struct RasterOverlap {
    double intersection;
    double union_area;
};
RasterOverlap raster_overlap(const std::vector<Point2>& p, const std::vector<Point2>& q, int res = 1024);

bool point_in_ring(const std::vector<Point2>& ring, double x, double y);

/// Minimum total weight over all spanning trees of the complete graph (n <= 7).
double brute_force_mst_weight(const std::vector<Point2>& pts);

/// Star-shaped simple polygon around the origin, CCW, with every interior
/// angle at least min_angle (radians).
std::vector<Point2> random_star_polygon(std::mt19937_64& rng, int m, double radius, double min_angle = 0.0);

/// Random labelled tree via a Pruefer sequence; edges as (a, b) with a < b.
dotgroup::SpanningTree random_tree(std::mt19937_64& rng, std::size_t n);

/// n distinct random points in [0, size)^2, rounded to a 1e-3 grid.
std::vector<Point2> random_points(std::mt19937_64& rng, std::size_t n, double size);

double min_interior_angle(const std::vector<Point2>& ccw_ring);

}  // namespace oracle
