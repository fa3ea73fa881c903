#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dotgroup/selection.hpp"

using namespace dotgroup;

namespace {

Hypothesis hyp(std::vector<std::size_t> dots) { return {std::move(dots), 0.0, -1, 0.0}; }

}  // namespace

TEST_CASE("saliency values") {
    const DotPattern sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(saliency(hyp({0, 1, 2, 3}), sq) == doctest::Approx(1.0).epsilon(1e-12));
    const DotPattern tri({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    CHECK(std::abs(saliency(hyp({0, 1, 2}), tri) - std::sqrt(3.0) / 4) < 1e-9);
    std::vector<Point2> hex;
    for (int i = 0; i < 6; ++i) hex.emplace_back(std::cos(i * 3.141592653589793 / 3), std::sin(i * 3.141592653589793 / 3));
    CHECK(saliency(hyp({0, 1, 2, 3, 4, 5}), DotPattern(hex)) == doctest::Approx(3 * std::sqrt(3.0) / 2));
}

TEST_CASE("saliency is invariant under rigid motion and scaling") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Point2> pts;
        const int n = 5;
        for (int i = 0; i < n; ++i) {
            const double a = 2 * 3.141592653589793 * (i + 0.4 * u(rng)) / n;
            pts.emplace_back((2 + u(rng)) * std::cos(a), (2 + u(rng)) * std::sin(a));
        }
        const Hypothesis h = hyp({0, 1, 2, 3, 4});
        const double base = saliency(h, DotPattern(pts));
        const double rot = 3 * u(rng), tx = 10 * u(rng), ty = 10 * u(rng), sc = 0.1 + 5 * std::abs(u(rng));
        std::vector<Point2> moved, scaled;
        for (const Point2& p : pts) {
            moved.emplace_back(p.x() * std::cos(rot) - p.y() * std::sin(rot) + tx, p.x() * std::sin(rot) + p.y() * std::cos(rot) + ty);
            scaled.emplace_back(p.x() * sc, p.y() * sc);
        }
        CHECK(std::abs(saliency(h, DotPattern(moved)) - base) < 1e-9);
        CHECK(std::abs(saliency(h, DotPattern(scaled)) - base) < 1e-9);
    }
}

TEST_CASE("the square is the most salient quadrilateral") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0, 2 * 3.141592653589793);
    const double best = saliency(hyp({0, 1, 2, 3}), DotPattern({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}));
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a{u(rng), u(rng), u(rng), u(rng)};
        std::sort(a.begin(), a.end());
        std::vector<Point2> pts;
        for (double x : a) pts.emplace_back(std::cos(x), std::sin(x));
        CHECK(saliency(hyp({0, 1, 2, 3}), DotPattern(pts)) <= best + 1e-12);
    }
}

TEST_CASE("overlap") {
    CHECK(overlap(hyp({1, 2, 3}), hyp({3, 2, 1})) == 1.0);
    CHECK(overlap(hyp({1, 2, 3}), hyp({4, 5, 6})) == 0.0);
    CHECK(overlap(hyp({1, 2, 3, 4}), hyp({3, 4, 5, 6})) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("selection") {
    // Three disjoint shapes: a unit square, a thin triangle and a regular hexagon.
    std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {10, 0}, {14, 0}, {12, 0.5}};
    for (int i = 0; i < 6; ++i) pts.emplace_back(30 + std::cos(i * 3.141592653589793 / 3), std::sin(i * 3.141592653589793 / 3));
    const DotPattern d(pts);
    const Hypothesis square = hyp({0, 1, 2, 3});
    const Hypothesis thin = hyp({4, 5, 6});
    const Hypothesis hex = hyp({7, 8, 9, 10, 11, 12});

    SUBCASE("single") {
        const auto s = select({square}, {}, d);
        REQUIRE(s.size() == 1);
        CHECK(s[0].dots == square.dots);
        CHECK(s[0].saliency == doctest::Approx(1.0));
    }
    SUBCASE("duplicates merge") {
        CHECK(select({square, square}, {}, d).size() == 1);
    }
    SUBCASE("top k by saliency") {
        const auto s = select({thin, square, hex}, {2, 0.5}, d);
        REQUIRE(s.size() == 2);
        CHECK(s[0].dots == hex.dots);
        CHECK(s[1].dots == square.dots);
    }
    SUBCASE("overlapping hypotheses keep the most salient") {
        const Hypothesis part = hyp({0, 1, 2});
        const auto s = select({part, square}, {10, 0.5}, d);
        REQUIRE(s.size() == 1);
        CHECK(s[0].dots == square.dots);
        CHECK(select({part, square}, {10, 0.9}, d).size() == 2);
    }
    SUBCASE("order of input does not matter") {
        const Hypothesis part = hyp({0, 1, 3});
        const auto a = select({thin, square, hex, part}, {3, 0.5}, d);
        const auto b = select({part, hex, thin, square}, {3, 0.5}, d);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].dots == b[i].dots);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(select({square}, {0, 0.5}, d), std::invalid_argument);
        CHECK_THROWS_AS(select({square}, {3, 1.5}, d), std::invalid_argument);
        CHECK(select({}, {}, d).empty());
    }
}
