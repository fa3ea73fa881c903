#include "dotgroup/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace dotgroup {

namespace {

struct Similarity {
    double scale = 1.0;
    Vec2 shift;

    Point2 apply(Point2 p) const { return Point2(0.0, 0.0) + (p.vec() * scale + shift); }
};

std::vector<Point2> every_nth(const std::vector<Point2>& boundary, std::size_t stride) {
    if (stride == 0) {
        throw std::invalid_argument("stride must be positive");
    }
    if (boundary.size() < std::max<std::size_t>(stride, 3)) {
        throw std::invalid_argument("boundary has too few points for the stride");
    }
    std::vector<Point2> kept;
    for (std::size_t i = 0; i < boundary.size(); i += stride) {
        kept.push_back(boundary[i]);
    }
    if (kept.size() < 3) {
        throw std::invalid_argument("sampling keeps fewer than 3 points");
    }
    return kept;
}

Similarity fit(const std::vector<Point2>& pts, const Box& target) {
    double x0 = pts[0].x(), x1 = x0, y0 = pts[0].y(), y1 = y0;
    for (const Point2& p : pts) {
        x0 = std::min(x0, p.x());
        x1 = std::max(x1, p.x());
        y0 = std::min(y0, p.y());
        y1 = std::max(y1, p.y());
    }
    const double w = x1 - x0;
    const double h = y1 - y0;
    if (w <= 0.0 && h <= 0.0) {
        throw std::invalid_argument("boundary has zero extent");
    }
    const double sx = w > 0.0 ? target.width() / w : std::numeric_limits<double>::infinity();
    const double sy = h > 0.0 ? target.height() / h : std::numeric_limits<double>::infinity();
    Similarity s;
    s.scale = std::min(sx, sy);
    const Vec2 center_src{0.5 * (x0 + x1), 0.5 * (y0 + y1)};
    const Vec2 center_dst{0.5 * (target.x0 + target.x1), 0.5 * (target.y0 + target.y1)};
    s.shift = center_dst - center_src * s.scale;
    return s;
}

}  // namespace

DotPattern sample_shape(const std::vector<Point2>& boundary, std::size_t stride, const Box& target) {
    const std::vector<Point2> kept = every_nth(boundary, stride);
    const Similarity s = fit(kept, target);
    std::vector<Point2> out;
    out.reserve(kept.size());
    for (const Point2& p : kept) {
        out.push_back(s.apply(p));
    }
    return DotPattern(std::move(out));
}

std::vector<Point2> fitted_outline(const std::vector<Point2>& boundary, std::size_t stride,
                                   const Box& target) {
    const Similarity s = fit(every_nth(boundary, stride), target);
    std::vector<Point2> out;
    out.reserve(boundary.size());
    for (const Point2& p : boundary) {
        out.push_back(s.apply(p));
    }
    return out;
}

double mean_spacing(const DotPattern& dots) {
    const std::size_t n = dots.size();
    if (n < 2) {
        return 0.0;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += distance(dots[i], dots[(i + 1) % n]);
    }
    return total / static_cast<double>(n);
}

DotPattern gen_noise(const DotPattern& shape_dots, const NoiseSpec& spec) {
    if (spec.s <= 0.0) {
        return {};
    }
    if (shape_dots.empty()) {
        throw std::invalid_argument("noise needs shape dots to set the grid spacing");
    }
    if (!(spec.margin_fraction >= 0.0 && spec.margin_fraction < 0.5)) {
        throw std::invalid_argument("margin fraction must lie in [0, 0.5)");
    }
    const double cell = spec.s * mean_spacing(shape_dots);
    if (!(cell > 0.0)) {
        throw std::invalid_argument("noise cell size must be positive");
    }
    const auto cols = static_cast<std::size_t>(std::floor(spec.region.width() / cell + 1e-9));
    const auto rows = static_cast<std::size_t>(std::floor(spec.region.height() / cell + 1e-9));
    const double usable = 1.0 - 2.0 * spec.margin_fraction;

    PatternRng rng(spec.seed);
    std::vector<Point2> out;
    out.reserve(cols * rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double u = rng.uniform();
            const double v = rng.uniform();
            const double x = spec.region.x0 + cell * (static_cast<double>(c) + spec.margin_fraction + usable * u);
            const double y = spec.region.y0 + cell * (static_cast<double>(r) + spec.margin_fraction + usable * v);
            out.emplace_back(x, y);
        }
    }
    return DotPattern(std::move(out));
}

DotPattern frame_circle(Point2 center, double radius, int count) {
    if (count < 3) {
        throw std::invalid_argument("frame circle needs at least 3 dots");
    }
    std::vector<Point2> out;
    for (int i = 0; i < count; ++i) {
        const double a = 2.0 * std::numbers::pi * i / count;
        out.emplace_back(center.x() + radius * std::cos(a), center.y() + radius * std::sin(a));
    }
    return DotPattern(std::move(out));
}

DotPattern assemble_pattern(const std::vector<const DotPattern*>& parts) {
    std::set<Point2> seen;
    std::vector<Point2> out;
    for (const DotPattern* part : parts) {
        for (const Point2& p : part->points()) {
            if (seen.insert(p).second) {
                out.push_back(p);
            }
        }
    }
    return DotPattern(std::move(out));
}

DotPattern subsample_edges(const BinaryMask& mask) {
    if (mask.width < 4 || mask.height < 4) {
        throw std::invalid_argument("mask must be at least 4x4");
    }
    if (mask.pixels.size() != mask.width * mask.height) {
        throw std::invalid_argument("mask pixel count does not match its size");
    }
    std::vector<Point2> out;
    for (std::size_t by = 0; by < mask.height; by += 4) {
        for (std::size_t bx = 0; bx < mask.width; bx += 4) {
            double sx = 0.0, sy = 0.0;
            int count = 0;
            for (std::size_t y = by; y < std::min(by + 4, mask.height); ++y) {
                for (std::size_t x = bx; x < std::min(bx + 4, mask.width); ++x) {
                    if (mask.at(x, y)) {
                        sx += static_cast<double>(x);
                        sy += static_cast<double>(y);
                        ++count;
                    }
                }
            }
            if (count > 0) {
                out.emplace_back(std::floor(sx / count + 0.5), std::floor(sy / count + 0.5));
            }
        }
    }
    // Rounded centroids of neighbouring blocks can coincide.
    const DotPattern raw = [&] {
        std::set<Point2> seen;
        std::vector<Point2> unique;
        for (const Point2& p : out) {
            if (seen.insert(p).second) unique.push_back(p);
        }
        return DotPattern(std::move(unique));
    }();
    return raw;
}

namespace {

std::vector<Point2> resample_closed(const std::vector<Vec2>& outline, std::size_t points) {
    const std::size_t n = outline.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        cum[i + 1] = cum[i] + norm(outline[(i + 1) % n] - outline[i]);
    }
    const double total = cum[n];
    std::vector<Point2> out;
    out.reserve(points);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < points; ++k) {
        const double d = total * static_cast<double>(k) / static_cast<double>(points);
        while (seg + 1 < n && cum[seg + 1] <= d) {
            ++seg;
        }
        const double len = cum[seg + 1] - cum[seg];
        const double f = len > 0.0 ? (d - cum[seg]) / len : 0.0;
        const Vec2 p = outline[seg] + (outline[(seg + 1) % n] - outline[seg]) * f;
        out.emplace_back(p.x, p.y);
    }
    return out;
}

std::vector<Vec2> parametric(std::size_t samples, const std::function<Vec2(double)>& f) {
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i < samples; ++i) {
        pts.push_back(f(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples)));
    }
    return pts;
}

const std::map<std::string, std::function<std::vector<Vec2>()>>& shape_table() {
    static const std::map<std::string, std::function<std::vector<Vec2>()>> table = {
        {"arrow", [] { return std::vector<Vec2>{{0, .35}, {.6, .35}, {.6, 0}, {1, .5}, {.6, 1}, {.6, .65}, {0, .65}}; }},
        {"bolt", [] { return std::vector<Vec2>{{.3, 0}, {.75, 0}, {.55, .4}, {.85, .4}, {.25, 1}, {.4, .55}, {.15, .55}}; }},
        {"boot", [] { return std::vector<Vec2>{{0, 0}, {.4, 0}, {.4, .6}, {1, .72}, {1, 1}, {0, 1}}; }},
        {"cross", [] {
             return std::vector<Vec2>{{.33, 0}, {.67, 0}, {.67, .33}, {1, .33}, {1, .67}, {.67, .67},
                                      {.67, 1}, {.33, 1}, {.33, .67}, {0, .67}, {0, .33}, {.33, .33}};
         }},
        {"drop", [] {
             return parametric(720, [](double t) { return Vec2{std::cos(t), std::sin(t) * std::sin(t / 2.0)}; });
         }},
        {"ell", [] { return std::vector<Vec2>{{0, 0}, {.4, 0}, {.4, .62}, {1, .62}, {1, 1}, {0, 1}}; }},
        {"heart", [] {
             return parametric(720, [](double t) {
                 const double s = std::sin(t);
                 return Vec2{16 * s * s * s,
                             -(13 * std::cos(t) - 5 * std::cos(2 * t) - 2 * std::cos(3 * t) - std::cos(4 * t))};
             });
         }},
        {"house", [] { return std::vector<Vec2>{{0, .42}, {.5, 0}, {1, .42}, {1, 1}, {0, 1}}; }},
        {"star", [] {
             std::vector<Vec2> pts;
             for (int i = 0; i < 10; ++i) {
                 const double r = i % 2 == 0 ? 1.0 : 0.45;
                 const double a = -std::numbers::pi / 2 + std::numbers::pi * i / 5.0;
                 pts.push_back({r * std::cos(a), r * std::sin(a)});
             }
             return pts;
         }},
        {"tee", [] { return std::vector<Vec2>{{0, 0}, {1, 0}, {1, .35}, {.66, .35}, {.66, 1}, {.34, 1}, {.34, .35}, {0, .35}}; }},
    };
    return table;
}

}  // namespace

std::vector<std::string> builtin_shape_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : shape_table()) {
        names.push_back(name);
    }
    return names;
}

std::vector<Point2> builtin_shape(const std::string& name, std::size_t points) {
    const auto& table = shape_table();
    const auto it = table.find(name);
    if (it == table.end()) {
        throw std::invalid_argument("unknown builtin shape: " + name);
    }
    if (points < 3) {
        throw std::invalid_argument("builtin shape needs at least 3 samples");
    }
    return resample_closed(it->second(), points);
}

}  // namespace dotgroup
