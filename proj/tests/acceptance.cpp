// Acceptance checks, one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dotgroup/cli.hpp"
#include "dotgroup/grouping.hpp"
#include "dotgroup/io.hpp"
#include "dotgroup/patterns.hpp"
#include "dotgroup/retrieval.hpp"
#include "dotgroup/selection.hpp"
#include "dotgroup/skeleton.hpp"
#include "oracles.hpp"

using namespace dotgroup;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

OffsetPolygonSet shrink(const std::vector<Point2>& ring) { return offset_polygons(shrinking_polygon(SimplePolygon(ring))); }

Outcome sliver_counts() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(3, 50);
    int bad = 0;
    bool saw_path = false;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = size(rng);
        const SpanningTree t = oracle::random_tree(rng, n);
        const DotPattern d(oracle::random_points(rng, n, 100.0));
        const std::size_t m = initial_polygon(t, d).vertices.size();
        const std::size_t leaves = t.leaf_count();
        saw_path = saw_path || leaves == 2;
        if (m != 2 * n - 2 + leaves || m < 2 * n || m > 3 * n - 3) ++bad;
    }
    // A path is the lower extreme.
    std::vector<Point2> path;
    for (int i = 0; i < 20; ++i) path.emplace_back(i, (i % 2) * 0.3);
    const DotPattern pd(path);
    const bool path_ok = initial_polygon(minimum_spanning_tree(pd), pd).vertices.size() == 40;
    const double secs = seconds_since(t0);
    return {bad == 0 && path_ok && secs < 5.0,
            fmt("200 random trees, %d mismatches, path of 20 -> 40 vertices %s, %.2fs", bad, path_ok ? "ok" : "wrong", secs)};
}

struct PolygonSuite {
    std::vector<int> m;
    std::vector<std::size_t> events;
    std::vector<std::size_t> polygons;
    double seconds = 0.0;
};

const PolygonSuite& polygon_suite() {
    static const PolygonSuite suite = [] {
        PolygonSuite s;
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(500);
        std::uniform_int_distribution<int> size(3, 60);
        for (int trial = 0; trial < 500; ++trial) {
            const int m = size(rng);
            const OffsetPolygonSet r = shrink(oracle::random_star_polygon(rng, m, 100.0));
            s.m.push_back(m);
            s.events.push_back(r.events.size());
            s.polygons.push_back(r.polygons.size());
        }
        s.seconds = seconds_since(t0);
        return s;
    }();
    return suite;
}

Outcome event_bound() {
    const PolygonSuite& s = polygon_suite();
    int over = 0;
    for (std::size_t i = 0; i < s.m.size(); ++i) {
        if (s.events[i] > static_cast<std::size_t>(s.m[i] - 2)) ++over;
    }
    const std::size_t tri = shrink({{0, 0}, {5, 1}, {2, 4}}).events.size();
    return {over == 0 && tri == 1 && s.seconds < 30.0,
            fmt("500 polygons (m<=60): %d exceed m-2; triangle -> %zu event; %.2fs", over, tri, s.seconds)};
}

Outcome polygon_bound() {
    const PolygonSuite& s = polygon_suite();
    int over = 0;
    double mx = 0, my = 0;
    const double n = static_cast<double>(s.m.size());
    for (std::size_t i = 0; i < s.m.size(); ++i) {
        if (s.polygons[i] > static_cast<std::size_t>(2 * s.m[i] - 4)) ++over;
        mx += s.m[i];
        my += static_cast<double>(s.polygons[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < s.m.size(); ++i) {
        sxy += (s.m[i] - mx) * (static_cast<double>(s.polygons[i]) - my);
        sxx += (s.m[i] - mx) * (s.m[i] - mx);
    }
    const double slope = sxy / sxx;
    return {over == 0 && slope <= 2.1, fmt("%d exceed 2m-4; polygons vs m slope %.3f", over, slope)};
}

Outcome rectangle_skeleton() {
    const std::vector<Point2> rect{{0, 0}, {4, 0}, {4, 2}, {0, 2}};
    const OffsetPolygonSet r = shrink(rect);
    std::vector<Point2> nodes;
    auto add = [&](Point2 p) {
        for (const Point2& q : nodes)
            if (distance(p, q) <= 1e-6) return;
        nodes.push_back(p);
    };
    for (const Point2& p : rect) add(p);
    for (const SkeletonArc& a : r.skeleton_arcs) {
        add(a.a);
        add(a.b);
    }
    const std::size_t internal = nodes.size() - rect.size();
    auto has = [&](Point2 p) {
        return std::any_of(nodes.begin(), nodes.end(), [&](Point2 q) { return distance(p, q) <= 1e-6; });
    };
    // Euler on the plane graph of boundary plus arcs; drop the outer face.
    const long v = static_cast<long>(nodes.size());
    const long e = static_cast<long>(rect.size() + r.skeleton_arcs.size());
    const long faces = 2 - v + e - 1;
    const bool ok = internal == 2 && has({1, 1}) && has({3, 1}) && r.skeleton_arcs.size() == 5 && faces == 4;
    return {ok, fmt("%zu internal nodes, %zu arcs, %ld faces", internal, r.skeleton_arcs.size(), faces)};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(55);
    int unmatched = 0, events = 0, splits = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 3 + trial % 10;
        const auto ring = oracle::random_star_polygon(rng, m, 5.0);
        const OffsetPolygonSet r = shrink(ring);
        const auto ref = oracle::small_step_events(ring, 1e-4);
        std::vector<bool> used(ref.size(), false);
        for (const Event& e : r.events) {
            ++events;
            splits += e.kind == EventKind::split ? 1 : 0;
            double best = INFINITY;
            std::size_t pick = ref.size();
            for (std::size_t i = 0; i < ref.size(); ++i) {
                if (used[i]) continue;
                const double err = std::max({std::abs(ref[i].time - e.time), std::abs(ref[i].location.x() - e.location.x()),
                                             std::abs(ref[i].location.y() - e.location.y())});
                if (err < best) {
                    best = err;
                    pick = i;
                }
            }
            if (pick == ref.size() || best > 1e-2) {
                ++unmatched;
                continue;
            }
            used[pick] = true;
            worst = std::max(worst, best);
        }
    }
    return {unmatched == 0, fmt("%d events (%d splits) on 50 polygons, %d unmatched, worst error %.2e", events, splits, unmatched, worst)};
}

Outcome hypothesis_bound() {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<std::size_t> size(10, 60);
    int over = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const DotPattern d(oracle::random_points(rng, size(rng), 1000.0));
        const GroupingResult g = group_detailed(d);
        if (g.hypotheses.size() > g.initial_vertex_count) ++over;
    }
    const auto sq = group(DotPattern({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    const bool square = std::any_of(sq.begin(), sq.end(), [](const Hypothesis& h) {
        return h.dots == std::vector<std::size_t>{0, 1, 2, 3};
    });
    std::vector<Point2> line;
    for (int i = 0; i < 12; ++i) line.emplace_back(3.0 * i, 1.5 * i + 2.0);
    const bool collinear = group(DotPattern(line)).empty();
    return {over == 0 && square && collinear,
            fmt("%d of 100 patterns exceed m; square %s; collinear %s", over, square ? "found" : "missing",
                collinear ? "empty" : "non-empty")};
}

Outcome unit_values() {
    auto h = [](std::vector<std::size_t> d) { return Hypothesis{std::move(d), 0.0, -1, 0.0}; };
    const double sq = saliency(h({0, 1, 2, 3}), DotPattern({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    const double tri = saliency(h({0, 1, 2}), DotPattern({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}));
    const bool jac = overlap(h({1, 2, 3}), h({1, 2, 3})) == 1.0 && overlap(h({1, 2, 3}), h({4, 5, 6})) == 0.0 &&
                     std::abs(overlap(h({1, 2, 3, 4}), h({3, 4, 5, 6})) - 1.0 / 3.0) < 1e-15;
    const SimplePolygon a({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const SimplePolygon b({{0.5, 0}, {1.5, 0}, {1.5, 1}, {0.5, 1}});
    const SimplePolygon c({{5, 5}, {6, 5}, {6, 6}, {5, 6}});
    const bool score = std::abs(matching_score(a, a) - 1.0) < 1e-12 && matching_score(a, c) == 0.0 &&
                       std::abs(matching_score(a, b) - 1.0 / 3.0) < 1e-12;
    const bool ok = std::abs(sq - 1.0) < 1e-12 && std::abs(tri - std::sqrt(3.0) / 4) < 1e-9 && jac && score;
    return {ok, fmt("square %.12f, triangle %.12f, jaccard %s, area score %s", sq, tri, jac ? "ok" : "wrong",
                    score ? "ok" : "wrong")};
}

struct Corpus {
    std::vector<ShapeRecord> shapes;
    std::vector<std::pair<std::string, std::vector<Point2>>> outlines;
};

const Corpus& corpus() {
    static const Corpus c = [] {
        Corpus out;
        for (const std::string& name : builtin_shape_names()) {
            const auto outline = fitted_outline(builtin_shape(name));
            out.shapes.push_back({name, name, SimplePolygon(outline), false});
            out.outlines.emplace_back(name, outline);
        }
        return out;
    }();
    return c;
}

DotPattern make_pattern(const std::string& name, double s, std::uint64_t seed) {
    const DotPattern shape = sample_shape(builtin_shape(name));
    NoiseSpec spec;
    spec.s = s;
    spec.seed = seed;
    const DotPattern noise = gen_noise(shape, spec);
    const DotPattern frame = frame_circle();
    return assemble_pattern({&shape, &noise, &frame});
}

Outcome retrieval_rates() {
    const auto t0 = std::chrono::steady_clock::now();
    const Database db = build_database(corpus().shapes);
    const std::vector<std::uint64_t> seeds{1, 2, 3};
    auto rate = [&](double s, const std::vector<std::uint64_t>& use) {
        int ok = 0, total = 0;
        for (const std::string& name : builtin_shape_names()) {
            for (std::uint64_t seed : use) {
                const DotPattern d = make_pattern(name, s, seed);
                const auto sel = select(group(d), {}, d);
                ok += retrieve(sel, db, d, name).success ? 1 : 0;
                ++total;
            }
        }
        return static_cast<double>(ok) / total;
    };
    const double r0 = rate(0.0, {0});
    const double r1 = rate(1.0, seeds);
    const double secs = seconds_since(t0);
    return {r0 >= 0.8 && r1 < r0 && secs < 120.0,
            fmt("10 shapes: rate %.3f at s=0, %.3f at s=1 (seeds 1-3); %.1fs", r0, r1, secs)};
}


std::string run_capture(std::vector<std::string> args, int& code) {
    args.insert(args.begin(), "dotgroup");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

/// Runs the whole CLI pipeline into `dir` and returns every produced file's bytes.
std::vector<std::pair<std::string, std::string>> pipeline(const fs::path& dir, bool& ok) {
    fs::remove_all(dir);
    fs::create_directories(dir / "db");
    ok = true;
    int code = 0;
    std::vector<std::string> patterns;
    for (const std::string& name : builtin_shape_names()) {
        for (const std::string& s : {"0", "1", "1.5", "2"}) {
            const std::string pat = (dir / (name + "_" + s + ".json")).string();
            run_capture({"gen", "--builtin", name, "--s", s, "--seed", "17", "--out", pat, "--emit-shape",
                         (dir / "db" / (name + ".json")).string()},
                        code);
            ok = ok && code == 0;
            patterns.push_back(pat);
            const std::string stem = (dir / (name + "_" + s)).string();
            run_capture({"group", "--in", pat, "--out", stem + ".hyps.json", "--events", stem + ".events.jsonl", "--svg",
                         stem + ".svg"},
                        code);
            ok = ok && code == 0;
            run_capture({"select", "--in", pat, "--hyps", stem + ".hyps.json", "--out", stem + ".sel.json"}, code);
            ok = ok && code == 0;
        }
        run_capture({"skeleton", "--in", (dir / "db" / (name + ".json")).string(), "--out",
                     (dir / (name + ".skeleton.json")).string(), "--events", (dir / (name + ".skeleton.jsonl")).string()},
                    code);
        ok = ok && code == 0;
    }
    std::vector<std::string> args{"retrieve", "--db", (dir / "db").string(), "--out", (dir / "report.json").string(),
                                  "--table", (dir / "table.txt").string()};
    for (const std::string& p : patterns) {
        args.push_back("--in");
        args.push_back(p);
    }
    run_capture(args, code);
    ok = ok && code == 0;

    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files.emplace_back(fs::relative(entry.path(), dir).string(), read_text(entry.path()));
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

Outcome determinism() {
    const fs::path base = fs::temp_directory_path() / "dotgroup_acceptance";
    bool ok_a = false, ok_b = false;
    const auto a = pipeline(base / "a", ok_a);
    const auto b = pipeline(base / "b", ok_b);
    std::size_t differ = 0;
    if (a.size() != b.size()) {
        differ = std::max(a.size(), b.size());
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) ++differ;
        }
    }
    return {ok_a && ok_b && !a.empty() && differ == 0,
            fmt("%zu output files per run, %zu differ; all stages %s", a.size(), differ, ok_a && ok_b ? "exit 0" : "failed")};
}

Outcome scaling() {
    auto median_time = [](std::size_t n) {
        std::vector<double> times;
        for (int rep = 0; rep < 5; ++rep) {
            std::mt19937_64 rng(9000 + rep);
            const DotPattern d(oracle::random_points(rng, n, 1000.0));
            const auto t0 = std::chrono::steady_clock::now();
            const auto h = group(d);
            times.push_back(seconds_since(t0));
            if (h.empty()) times.back() += 0.0;
        }
        std::sort(times.begin(), times.end());
        return times[2];
    };
    median_time(250);  // warm up
    const double t250 = median_time(250);
    const double t500 = median_time(500);
    std::mt19937_64 rng(31337);
    const DotPattern big(oracle::random_points(rng, 1000, 1000.0));
    const auto t0 = std::chrono::steady_clock::now();
    group(big);
    const double t1000 = seconds_since(t0);
    const double ratio = t500 / t250;
    return {ratio <= 4.5 && t1000 < 60.0,
            fmt("median %.4fs at n=250, %.4fs at n=500 (x%.2f); n=1000 in %.3fs", t250, t500, ratio, t1000)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"sliver vertex count identity", sliver_counts},
        {"event count bound", event_bound},
        {"generated polygon bound", polygon_bound},
        {"rectangle skeleton", rectangle_skeleton},
        {"event oracle equivalence", oracle_equivalence},
        {"hypothesis bound", hypothesis_bound},
        {"saliency, overlap and score values", unit_values},
        {"retrieval on synthetic shapes", retrieval_rates},
        {"determinism", determinism},
        {"scaling", scaling},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %2zu %-36s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
