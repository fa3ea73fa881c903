#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "dotgroup/patterns.hpp"

using namespace dotgroup;

namespace {

std::vector<Point2> circle(std::size_t n, double r = 1.0) {
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        pts.emplace_back(r * std::cos(a), r * std::sin(a));
    }
    return pts;
}

}  // namespace

TEST_CASE("sample shape keeps every stride-th point and fits the box") {
    const DotPattern d = sample_shape(circle(100), 10);
    CHECK(d.size() == 10);
    const DotPattern all = sample_shape(circle(100), 1);
    CHECK(all.size() == 100);
    double x0 = 1e9, x1 = -1e9, y0 = 1e9, y1 = -1e9;
    for (const Point2& p : all.points()) {
        x0 = std::min(x0, p.x());
        x1 = std::max(x1, p.x());
        y0 = std::min(y0, p.y());
        y1 = std::max(y1, p.y());
    }
    CHECK(x0 == doctest::Approx(200.0));
    CHECK(x1 == doctest::Approx(800.0));
    CHECK(y0 >= 200.0 - 1e-9);
    CHECK(y1 <= 800.0 + 1e-9);
    CHECK_THROWS_AS(sample_shape(circle(5), 10), std::invalid_argument);
}

TEST_CASE("sample shape is a similarity") {
    const std::vector<Point2> src = builtin_shape("heart", 200);
    const DotPattern d = sample_shape(src, 1);
    const double ratio = distance(d[0], d[50]) / distance(src[0], src[50]);
    for (std::size_t i = 0; i < 200; i += 17) {
        for (std::size_t j = i + 3; j < 200; j += 29) {
            CHECK(std::abs(distance(d[i], d[j]) / distance(src[i], src[j]) - ratio) < 1e-9);
        }
    }
    const auto outline = fitted_outline(src, 10);
    const DotPattern sampled = sample_shape(src, 10);
    for (std::size_t i = 0; i < sampled.size(); ++i) CHECK(outline[i * 10] == sampled[i]);
}

TEST_CASE("noise grid") {
    // Four dots around a 30-unit square give mean spacing 30.
    const DotPattern shape({{300, 300}, {330, 300}, {330, 330}, {300, 330}});
    CHECK(mean_spacing(shape) == doctest::Approx(30.0));
    NoiseSpec spec;
    spec.s = 2;
    spec.seed = 5;
    const DotPattern noise = gen_noise(shape, spec);
    CHECK(noise.size() == 100);
    const double cell = 60.0;
    for (const Point2& p : noise.points()) {
        const double fx = std::fmod(p.x() - 200.0, cell) / cell;
        const double fy = std::fmod(p.y() - 200.0, cell) / cell;
        CHECK(fx >= 0.1);
        CHECK(fx <= 0.9);
        CHECK(fy >= 0.1);
        CHECK(fy <= 0.9);
    }
    for (std::size_t i = 0; i < noise.size(); ++i)
        for (std::size_t j = i + 1; j < noise.size(); ++j) CHECK(distance(noise[i], noise[j]) >= 0.2 * cell - 1e-9);

    CHECK(gen_noise(shape, spec).points() == noise.points());
    spec.seed = 6;
    CHECK(gen_noise(shape, spec).points() != noise.points());
    spec.s = 0;
    CHECK(gen_noise(shape, spec).empty());
}

TEST_CASE("frame circle") {
    const DotPattern f = frame_circle();
    REQUIRE(f.size() == 32);
    CHECK(f[0] == Point2(990, 500));
    for (std::size_t i = 0; i < 32; ++i) {
        CHECK(std::abs(distance(f[i], Point2(500, 500)) - 490) < 1e-9);
        const Vec2 a = f[i] - Point2(500, 500);
        const Vec2 b = f[(i + 1) % 32] - Point2(500, 500);
        CHECK(std::atan2(cross(a, b), dot(a, b)) == doctest::Approx(2 * std::numbers::pi / 32));
    }
    const DotPattern cross4 = frame_circle({0, 0}, 1, 4);
    CHECK(std::abs(cross4[1].x()) < 1e-12);
    CHECK(cross4[1].y() == doctest::Approx(1.0));
    CHECK_THROWS_AS(frame_circle({0, 0}, 1, 2), std::invalid_argument);
}

TEST_CASE("full patterns have distinct dots") {
    for (const std::string& name : builtin_shape_names()) {
        const DotPattern shape = sample_shape(builtin_shape(name));
        CHECK(shape.size() == 36);
        NoiseSpec spec;
        spec.s = 1;
        spec.seed = 3;
        const DotPattern noise = gen_noise(shape, spec);
        const DotPattern frame = frame_circle();
        const DotPattern all = assemble_pattern({&shape, &noise, &frame});
        CHECK(all.size() <= shape.size() + noise.size() + frame.size());
        const std::set<Point2> unique(all.points().begin(), all.points().end());
        CHECK(unique.size() == all.size());
        CHECK(is_simple_ring(builtin_shape(name)));
    }
    CHECK(builtin_shape_names().size() == 10);
    CHECK_THROWS_AS(builtin_shape("nope"), std::invalid_argument);
}

TEST_CASE("edge subsampling") {
    BinaryMask m{8, 8, std::vector<std::uint8_t>(64, 0)};
    CHECK(subsample_edges(m).empty());
    m.pixels[6 * 8 + 5] = 1;
    DotPattern d = subsample_edges(m);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == Point2(5, 6));
    m.pixels.assign(64, 0);
    m.pixels[4 * 8 + 4] = 1;
    m.pixels[6 * 8 + 6] = 1;
    d = subsample_edges(m);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == Point2(5, 5));
    m.pixels[0] = 1;
    CHECK(subsample_edges(m).size() == 2);
    CHECK_THROWS_AS(subsample_edges(BinaryMask{3, 8, std::vector<std::uint8_t>(24, 0)}), std::invalid_argument);
}
