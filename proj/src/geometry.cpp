#include "dotgroup/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <unordered_map>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

namespace dotgroup {

namespace bg = boost::geometry;

Vec2 normalized(Vec2 v) {
    const double n = norm(v);
    if (n == 0.0) {
        throw GeometryError("cannot normalize a zero vector");
    }
    return v / n;
}

Point2::Point2(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw GeometryError("point coordinates must be finite");
    }
}

double signed_area(std::span<const Point2> ring) {
    const std::size_t n = ring.size();
    if (n < 3) {
        return 0.0;
    }
    // Translate to the first vertex to limit cancellation.
    const Point2 o = ring[0];
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        twice += cross(ring[i] - o, ring[i + 1] - o);
    }
    return 0.5 * twice;
}

namespace {

int orientation(Point2 a, Point2 b, Point2 c) {
    const double v = cross(b - a, c - a);
    const double scale = std::max({std::abs(b.x() - a.x()), std::abs(b.y() - a.y()),
                                   std::abs(c.x() - a.x()), std::abs(c.y() - a.y()), 1.0});
    if (std::abs(v) <= kGeomEps * scale) {
        return 0;
    }
    return v > 0 ? 1 : -1;
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
    return std::min(a.x(), b.x()) - kGeomEps <= p.x() && p.x() <= std::max(a.x(), b.x()) + kGeomEps &&
           std::min(a.y(), b.y()) - kGeomEps <= p.y() && p.y() <= std::max(a.y(), b.y()) + kGeomEps;
}

struct Box {
    double x0, y0, x1, y1;
};

Box segment_box(Point2 a, Point2 b) {
    return {std::min(a.x(), b.x()), std::min(a.y(), b.y()), std::max(a.x(), b.x()),
            std::max(a.y(), b.y())};
}

}  // namespace

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
        return true;
    }
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

bool is_simple_ring(std::span<const Point2> ring) {
    const std::size_t n = ring.size();
    if (n < 3) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (distance(ring[i], ring[(i + 1) % n]) <= kGeomEps) {
            return false;
        }
    }
    // Adjacent edges may only share their common vertex: reject fold-backs.
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = ring[(i + n - 1) % n];
        const Point2 b = ring[i];
        const Point2 c = ring[(i + 1) % n];
        if (orientation(a, b, c) == 0 && dot(a - b, c - b) > 0) {
            return false;
        }
    }
    if (n == 3) {
        return std::abs(signed_area(ring)) > 0.0;
    }

    // Uniform-grid broad phase over edge bounding boxes.
    double x0 = ring[0].x(), x1 = x0, y0 = ring[0].y(), y1 = y0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x0 = std::min(x0, ring[i].x());
        x1 = std::max(x1, ring[i].x());
        y0 = std::min(y0, ring[i].y());
        y1 = std::max(y1, ring[i].y());
        total += distance(ring[i], ring[(i + 1) % n]);
    }
    const double cell = std::max(total / static_cast<double>(n), 1e-12);
    const auto cols = static_cast<long long>(std::min((x1 - x0) / cell + 1.0, 4096.0));
    const auto rows = static_cast<long long>(std::min((y1 - y0) / cell + 1.0, 4096.0));
    const double cw = (x1 - x0) / static_cast<double>(cols) + 1e-12;
    const double ch = (y1 - y0) / static_cast<double>(rows) + 1e-12;
    auto col_of = [&](double x) {
        return std::clamp(static_cast<long long>((x - x0) / cw), 0LL, cols - 1);
    };
    auto row_of = [&](double y) {
        return std::clamp(static_cast<long long>((y - y0) / ch), 0LL, rows - 1);
    };

    std::unordered_map<long long, std::vector<std::size_t>> grid;
    for (std::size_t i = 0; i < n; ++i) {
        const Box bx = segment_box(ring[i], ring[(i + 1) % n]);
        for (long long r = row_of(bx.y0 - kGeomEps); r <= row_of(bx.y1 + kGeomEps); ++r) {
            for (long long c = col_of(bx.x0 - kGeomEps); c <= col_of(bx.x1 + kGeomEps); ++c) {
                grid[r * cols + c].push_back(i);
            }
        }
    }
    for (const auto& [key, edges] : grid) {
        for (std::size_t u = 0; u < edges.size(); ++u) {
            for (std::size_t v = u + 1; v < edges.size(); ++v) {
                const std::size_t i = edges[u];
                const std::size_t j = edges[v];
                const bool adjacent = (i + 1) % n == j || (j + 1) % n == i;
                if (adjacent) {
                    continue;
                }
                if (segments_intersect(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n])) {
                    return false;
                }
            }
        }
    }
    return true;
}

SimplePolygon::SimplePolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) {
        throw GeometryError("polygon needs at least 3 vertices");
    }
    if (!is_simple_ring(vertices_)) {
        throw GeometryError("polygon is not simple");
    }
    if (dotgroup::signed_area(std::span<const Point2>(vertices_)) < 0.0) {
        std::reverse(vertices_.begin(), vertices_.end());
        reversed_ = true;
    }
}

double signed_area(const SimplePolygon& p) {
    return signed_area(std::span<const Point2>(p.vertices()));
}

double interior_angle(const SimplePolygon& p, std::size_t i) {
    const std::size_t n = p.size();
    if (i >= n) {
        throw std::out_of_range("vertex index out of range");
    }
    const Vec2 to_prev = p[(i + n - 1) % n] - p[i];
    const Vec2 to_next = p[(i + 1) % n] - p[i];
    if (norm(to_prev) <= kGeomEps || norm(to_next) <= kGeomEps) {
        throw GeometryError("degenerate vertex: zero-length neighbour edge");
    }
    // Counter-clockwise storage puts the interior on the left of each edge, i.e.
    // counter-clockwise from the outgoing edge round to the incoming one.
    double a = std::atan2(cross(to_next, to_prev), dot(to_next, to_prev));
    if (a <= 0.0) {
        a += 2.0 * std::numbers::pi;
    }
    return a;
}

namespace {

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, false, true>;  // CCW, closed
using BgMulti = bg::model::multi_polygon<BgPolygon>;

BgPolygon to_boost(const SimplePolygon& p) {
    BgPolygon out;
    for (const Point2& v : p.vertices()) {
        bg::append(out.outer(), BgPoint(v.x(), v.y()));
    }
    bg::append(out.outer(), BgPoint(p[0].x(), p[0].y()));
    return out;
}

}  // namespace

AreaOverlap area_overlap(const SimplePolygon& p, const SimplePolygon& q) {
    const double ap = signed_area(p);
    const double aq = signed_area(q);
    const BgPolygon bp = to_boost(p);
    const BgPolygon bq = to_boost(q);
    double inter = 0.0;
    if (bg::intersects(bp, bq)) {
        BgMulti out;
        bg::intersection(bp, bq, out);
        inter = std::abs(bg::area(out));
    }
    inter = std::clamp(inter, 0.0, std::min(ap, aq));
    return {inter, ap + aq - inter};
}

double matching_score(const SimplePolygon& p, const SimplePolygon& q) {
    const AreaOverlap o = area_overlap(p, q);
    if (o.union_area <= 0.0) {
        return 0.0;
    }
    return std::clamp(o.intersection / o.union_area, 0.0, 1.0);
}

}  // namespace dotgroup
