#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dotgroup/geometry.hpp"
#include "dotgroup/mst.hpp"

namespace dotgroup {

/// Tolerance used to order events that happen at the same instant.
inline constexpr double kEventTimeEps = 1e-9;

/// A polygon whose vertices carry velocities; the region swept by the
/// wavefront lies to the left of every edge.
struct KineticPolygon {
    std::vector<MovingVertex> vertices;
    double creation_time = 0.0;
};

/// Shrinking kinetic polygon for a simple polygon (interior swept inward).
KineticPolygon shrinking_polygon(const SimplePolygon& polygon);
/// Kinetic polygon for a dot-pattern sliver (outside of the tree swept outward).
KineticPolygon growing_polygon(const SliverPolygon& sliver);

enum class EventKind { edge, split };

std::string to_string(EventKind kind);

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::edge;
    /// edge: {v, next(v)}; split: {reflex vertex, edge start, edge end};
    /// split at a vertex (pinch): {reflex vertex, hit vertex}.
    std::vector<int> participants;
    std::vector<int> created;  // vertex ids born at this event
    Point2 location;
};

struct SkeletonArc {
    Point2 a;
    Point2 b;
};

/// One polygon produced by the transformation, as a snapshot of vertex ids.
struct GeneratedPolygon {
    std::vector<int> vertices;
    double creation_time = 0.0;
    int event = -1;  // index into events; -1 for the input polygon
};

struct OffsetPolygonSet {
    /// Vertex arena; the first `initial_count` entries are the input polygon.
    std::vector<MovingVertex> vertices;
    std::size_t initial_count = 0;
    std::vector<GeneratedPolygon> polygons;
    std::vector<Event> events;
    std::vector<SkeletonArc> skeleton_arcs;
};

struct TimedPoint {
    double time = 0.0;
    Point2 location;
};

/// Earliest t >= t_now at which the two trajectories coincide.
std::optional<TimedPoint> edge_event_time(const MovingVertex& v, const MovingVertex& w,
                                          double t_now);

/// Earliest t >= t_now at which reflex vertex `v` lies on the moving segment
/// from `edge_start` to `edge_end`. Non-reflex vertices never split.
std::optional<TimedPoint> split_event_time(const MovingVertex& v, const MovingVertex& edge_start,
                                           const MovingVertex& edge_end, double t_now);

/// Runs the straight polygon transformation until no further event exists.
/// Throws GeometryError if an event time is not finite.
OffsetPolygonSet offset_polygons(const KineticPolygon& polygon);

/// Skeleton arcs of a shrinking simple polygon.
std::vector<SkeletonArc> straight_skeleton(const KineticPolygon& polygon);

/// One JSON object per line: time, kind, participant ids, location.
void write_event_log(std::ostream& out, const OffsetPolygonSet& result);

}  // namespace dotgroup
