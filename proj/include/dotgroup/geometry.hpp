#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dotgroup {

/// Coincidence tolerance in coordinate units.
inline constexpr double kGeomEps = 1e-9;

/// Raised when a geometric value violates its construction invariants.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
/// Counter-clockwise perpendicular.
constexpr Vec2 left_normal(Vec2 v) { return {-v.y, v.x}; }
constexpr Vec2 right_normal(Vec2 v) { return {v.y, -v.x}; }
Vec2 normalized(Vec2 v);

/// A dot or polygon vertex. Coordinates are always finite.
class Point2 {
public:
    constexpr Point2() = default;
    Point2(double x, double y);

    constexpr double x() const { return x_; }
    constexpr double y() const { return y_; }
    constexpr Vec2 vec() const { return {x_, y_}; }

    Point2 operator+(Vec2 v) const { return {x_ + v.x, y_ + v.y}; }
    Vec2 operator-(Point2 o) const { return {x_ - o.x_, y_ - o.y_}; }
    constexpr bool operator==(const Point2&) const = default;
    constexpr auto operator<=>(const Point2&) const = default;

private:
    double x_ = 0.0;
    double y_ = 0.0;
};

inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline double distance_sq(Point2 a, Point2 b) {
    const Vec2 d = b - a;
    return dot(d, d);
}

/// Shoelace signed area of a closed vertex ring; positive when counter-clockwise.
double signed_area(std::span<const Point2> ring);

/// True when the closed ring has no pair of non-adjacent edges that touch and
/// no adjacent edges that fold back over each other.
bool is_simple_ring(std::span<const Point2> ring);

/// Closed segment intersection test, collinear overlaps included.
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

/// Simple polygon stored counter-clockwise. Construction validates the ring and
/// reverses clockwise input.
class SimplePolygon {
public:
    explicit SimplePolygon(std::vector<Point2> vertices);

    const std::vector<Point2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point2& operator[](std::size_t i) const { return vertices_[i]; }
    /// True when the caller's ring was clockwise and got reversed.
    bool was_reversed() const { return reversed_; }

private:
    std::vector<Point2> vertices_;
    bool reversed_ = false;
};

double signed_area(const SimplePolygon& p);

/// Interior angle at vertex i, in (0, 2*pi). Values above pi mark reflex vertices.
double interior_angle(const SimplePolygon& p, std::size_t i);

struct AreaOverlap {
    double intersection = 0.0;
    double union_area = 0.0;
};

/// Exact boolean intersection/union areas of two simple polygons.
AreaOverlap area_overlap(const SimplePolygon& p, const SimplePolygon& q);

/// Area-based similarity: intersection over union, in [0, 1].
double matching_score(const SimplePolygon& p, const SimplePolygon& q);

}  // namespace dotgroup
