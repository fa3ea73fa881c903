#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dotgroup/cli.hpp"
#include "dotgroup/grouping.hpp"
#include "dotgroup/io.hpp"
#include "dotgroup/patterns.hpp"
#include "dotgroup/retrieval.hpp"
#include "dotgroup/selection.hpp"
#include "dotgroup/skeleton.hpp"

namespace py = pybind11;
using namespace dotgroup;

namespace {

using XY = std::pair<double, double>;

std::vector<Point2> to_points(const std::vector<XY>& xy) {
    std::vector<Point2> out;
    out.reserve(xy.size());
    for (const auto& [x, y] : xy) out.emplace_back(x, y);
    return out;
}

std::vector<XY> from_points(const std::vector<Point2>& pts) {
    std::vector<XY> out;
    out.reserve(pts.size());
    for (const Point2& p : pts) out.emplace_back(p.x(), p.y());
    return out;
}

DotPattern to_pattern(const std::vector<XY>& xy) { return DotPattern(to_points(xy)); }

}  // namespace

PYBIND11_MODULE(_dotgroup, m) {
    m.doc() = "Polygonal grouping of dot patterns";

    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    py::class_<Hypothesis>(m, "Hypothesis")
        .def(py::init([](std::vector<std::size_t> dots, double t) { return Hypothesis{std::move(dots), t, -1, 0.0}; }),
             py::arg("dots"), py::arg("event_time") = 0.0)
        .def_readonly("dots", &Hypothesis::dots)
        .def_readonly("event_time", &Hypothesis::event_time)
        .def_readonly("saliency", &Hypothesis::saliency)
        .def("__repr__", [](const Hypothesis& h) {
            std::ostringstream s;
            s << "Hypothesis(" << h.dots.size() << " dots, t=" << h.event_time << ")";
            return s.str();
        });

    m.def(
        "minimum_spanning_tree",
        [](const std::vector<XY>& pts) {
            std::vector<std::tuple<std::size_t, std::size_t, double>> out;
            for (const TreeEdge& e : minimum_spanning_tree(to_pattern(pts)).edges) out.emplace_back(e.a, e.b, e.weight);
            return out;
        },
        py::arg("points"), "Edges (a, b, weight) of the Euclidean minimum spanning tree.");

    m.def(
        "group", [](const std::vector<XY>& pts) { return group(to_pattern(pts)); }, py::arg("points"),
        "All simple-polygon grouping hypotheses.");

    m.def(
        "select",
        [](const std::vector<XY>& pts, const std::vector<Hypothesis>& hyps, std::size_t k, double eta) {
            return select(hyps, {k, eta}, to_pattern(pts));
        },
        py::arg("points"), py::arg("hypotheses"), py::arg("k") = 10, py::arg("eta") = 0.5);

    m.def(
        "skeleton",
        [](const std::vector<XY>& ring) {
            std::vector<std::pair<XY, XY>> out;
            for (const SkeletonArc& a : straight_skeleton(shrinking_polygon(SimplePolygon(to_points(ring))))) {
                out.push_back({{a.a.x(), a.a.y()}, {a.b.x(), a.b.y()}});
            }
            return out;
        },
        py::arg("polygon"), "Straight skeleton arcs of a simple polygon.");

    m.def(
        "matching_score",
        [](const std::vector<XY>& p, const std::vector<XY>& q) {
            return matching_score(SimplePolygon(to_points(p)), SimplePolygon(to_points(q)));
        },
        py::arg("p"), py::arg("q"));

    m.def(
        "retrieve",
        [](const std::vector<XY>& pts, const std::vector<Hypothesis>& queries,
           const std::map<std::string, std::vector<XY>>& shapes, std::optional<std::string> truth) {
            std::vector<ShapeRecord> records;
            for (const auto& [name, ring] : shapes) records.push_back({name, name, SimplePolygon(to_points(ring)), false});
            const RetrievalResult r = retrieve(queries, build_database(std::move(records)), to_pattern(pts), truth);
            py::dict d;
            d["success"] = r.success;
            d["best_shape"] = r.best_shape;
            d["score"] = r.score;
            d["best_query"] = r.best_query;
            return d;
        },
        py::arg("points"), py::arg("queries"), py::arg("shapes"), py::arg("truth") = py::none());

    m.def("builtin_shape_names", &builtin_shape_names);
    m.def(
        "builtin_shape", [](const std::string& name, std::size_t n) { return from_points(builtin_shape(name, n)); },
        py::arg("name"), py::arg("points") = 360);

    m.def(
        "generate_pattern",
        [](const std::string& name, double s, std::uint64_t seed, bool frame) {
            const std::vector<Point2> boundary = builtin_shape(name);
            const DotPattern shape = sample_shape(boundary);
            NoiseSpec spec;
            spec.s = s;
            spec.seed = seed;
            const DotPattern noise = gen_noise(shape, spec);
            const DotPattern ring = frame ? frame_circle() : DotPattern();
            py::dict d;
            d["points"] = from_points(assemble_pattern({&shape, &noise, &ring}).points());
            d["outline"] = from_points(fitted_outline(boundary));
            d["shape_count"] = shape.size();
            return d;
        },
        py::arg("shape"), py::arg("s") = 0.0, py::arg("seed") = 0, py::arg("frame") = true,
        "Builtin shape sampled into [200,800]^2 plus grid noise and the circle frame.");

    m.def(
        "subsample_edges",
        [](const std::vector<std::vector<int>>& rows) {
            BinaryMask mask;
            mask.height = rows.size();
            mask.width = rows.empty() ? 0 : rows.front().size();
            for (const auto& r : rows) {
                if (r.size() != mask.width) throw py::value_error("mask rows must have equal length");
                for (int v : r) mask.pixels.push_back(v ? 1 : 0);
            }
            return from_points(subsample_edges(mask).points());
        },
        py::arg("mask"));

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "dotgroup");
            std::vector<const char*> argv;
            for (const std::string& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
            return std::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line tool in-process; returns (exit code, stdout, stderr).");
}
