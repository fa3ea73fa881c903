#include "dotgroup/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "dotgroup/grouping.hpp"
#include "dotgroup/io.hpp"
#include "dotgroup/patterns.hpp"
#include "dotgroup/retrieval.hpp"
#include "dotgroup/selection.hpp"
#include "dotgroup/skeleton.hpp"
#include "dotgroup/svg.hpp"

namespace dotgroup {

namespace fs = std::filesystem;

namespace {

/// Bad flag values found after parsing; reported like a parse error.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<std::string> in;
    std::string out;
    std::string svg;
    std::string shape;
    std::string builtin;
    std::string emit_shape;
    std::string db;
    std::string truth;
    std::string events;
    std::string mask;
    std::string table;
    std::string hyps;
    std::size_t k = 10;
    double eta = 0.5;
    double s = 0.0;
    std::uint64_t seed = 0;
    std::size_t stride = 10;
    bool no_frame = false;
};

std::string one_line(std::string msg) {
    for (char& c : msg) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    return msg;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_atomic(path, text);
    }
}

const std::string& single_input(const Options& o) {
    if (o.in.size() != 1) {
        throw UsageError("exactly one --in file is required");
    }
    return o.in.front();
}

SelectionParams selection_params(const Options& o) {
    SelectionParams p{o.k, o.eta};
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return p;
}

int cmd_gen(const Options& o, std::ostream& out) {
    if (o.shape.empty() == o.builtin.empty()) {
        throw UsageError("gen needs exactly one of --shape or --builtin");
    }
    if (!(o.s == 0.0 || o.s > 0.0)) {
        throw UsageError("--s must be non-negative");
    }
    ShapeFile shape;
    if (!o.shape.empty()) {
        shape = read_shape(o.shape);
    } else {
        try {
            shape.points = builtin_shape(o.builtin);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        shape.name = o.builtin;
        shape.category = o.builtin;
    }
    DotPattern shape_dots;
    std::vector<Point2> outline;
    try {
        shape_dots = sample_shape(shape.points, o.stride);
        outline = fitted_outline(shape.points, o.stride);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    NoiseSpec spec;
    spec.s = o.s;
    spec.seed = o.seed;
    const DotPattern noise = gen_noise(shape_dots, spec);
    const DotPattern frame = o.no_frame ? DotPattern() : frame_circle();
    PatternFile pattern{assemble_pattern({&shape_dots, &noise, &frame}), {o.seed, o.s, shape.name}};
    emit(o.out, pattern_to_json(pattern), out);
    if (!o.emit_shape.empty()) {
        write_atomic(o.emit_shape, shape_to_json({shape.name, shape.category, outline}));
    }
    return 0;
}

std::optional<std::size_t> best_match(const std::vector<Hypothesis>& selected, const std::string& db_dir,
                                      const DotPattern& dots, const std::optional<std::string>& truth) {
    if (db_dir.empty()) {
        return selected.empty() ? std::nullopt : std::optional<std::size_t>(0);
    }
    const Database db = build_database(read_shape_directory(db_dir));
    return retrieve(selected, db, dots, truth).best_query;
}

std::optional<std::string> truth_of(const Options& o, const PatternFile& p) {
    if (!o.truth.empty()) return o.truth;
    return p.meta.shape;
}

int cmd_group(const Options& o, std::ostream& out) {
    const SelectionParams params = selection_params(o);
    const PatternFile pattern = read_pattern(single_input(o));
    const GroupingResult g = group_detailed(pattern.dots);
    emit(o.out, hypotheses_to_json(g.hypotheses), out);
    if (!o.events.empty()) {
        std::ostringstream log;
        write_event_log(log, g.transform);
        write_atomic(o.events, log.str());
    }
    if (!o.svg.empty()) {
        SvgScene scene;
        scene.dots = &pattern.dots;
        scene.tree = &g.tree;
        scene.selection = select(g.hypotheses, params, pattern.dots);
        scene.best = best_match(scene.selection, o.db, pattern.dots, truth_of(o, pattern));
        write_atomic(o.svg, render_svg(scene));
    }
    return 0;
}

int cmd_select(const Options& o, std::ostream& out) {
    const SelectionParams params = selection_params(o);
    const PatternFile pattern = read_pattern(single_input(o));
    std::vector<Hypothesis> hyps;
    SpanningTree tree;
    if (!o.hyps.empty()) {
        hyps = parse_hypotheses_json(read_text(o.hyps));
        for (const Hypothesis& h : hyps) {
            for (std::size_t i : h.dots) {
                if (i >= pattern.dots.size()) {
                    throw DataError("hypothesis refers to dot " + std::to_string(i) + " outside the pattern");
                }
            }
        }
        if (!pattern.dots.empty()) tree = minimum_spanning_tree(pattern.dots);
    } else {
        GroupingResult g = group_detailed(pattern.dots);
        hyps = std::move(g.hypotheses);
        tree = std::move(g.tree);
    }
    const std::vector<Hypothesis> selected = select(hyps, params, pattern.dots);
    emit(o.out, hypotheses_to_json(selected), out);
    if (!o.svg.empty()) {
        SvgScene scene;
        scene.dots = &pattern.dots;
        scene.tree = &tree;
        scene.selection = selected;
        scene.best = best_match(selected, o.db, pattern.dots, truth_of(o, pattern));
        write_atomic(o.svg, render_svg(scene));
    }
    return 0;
}

int cmd_skeleton(const Options& o, std::ostream& out) {
    const std::string& path = single_input(o);
    const std::string text = read_text(path);
    std::vector<Point2> ring;
    if (fs::path(path).extension() == ".csv") {
        ring = parse_pattern_csv(text).dots.points();
    } else {
        // Shape files and pattern files both carry "points".
        ring = parse_pattern_json(text).dots.points();
    }
    std::optional<SimplePolygon> poly;
    try {
        poly.emplace(ring);
    } catch (const GeometryError& e) {
        throw DataError(std::string("input is not a simple polygon: ") + e.what());
    }
    const OffsetPolygonSet set = offset_polygons(shrinking_polygon(*poly));
    std::ostringstream arcs;
    arcs << "{\"events\":" << set.events.size() << ",\"arcs\":[";
    for (std::size_t i = 0; i < set.skeleton_arcs.size(); ++i) {
        const SkeletonArc& a = set.skeleton_arcs[i];
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s[%.17g,%.17g,%.17g,%.17g]", i ? "," : "", a.a.x(), a.a.y(), a.b.x(),
                      a.b.y());
        arcs << buf;
    }
    arcs << "]}\n";
    emit(o.out, arcs.str(), out);
    if (!o.events.empty()) {
        std::ostringstream log;
        write_event_log(log, set);
        write_atomic(o.events, log.str());
    }
    if (!o.svg.empty()) {
        SvgScene scene;
        scene.outline = poly->vertices();
        scene.arcs = set.skeleton_arcs;
        write_atomic(o.svg, render_svg(scene));
    }
    return 0;
}

std::string format_level(double s) {
    std::ostringstream ss;
    ss << "s=" << s;
    return ss.str();
}

int cmd_retrieve(const Options& o, std::ostream& out) {
    if (o.in.empty()) {
        throw UsageError("retrieve needs at least one --in pattern");
    }
    if (o.db.empty()) {
        throw UsageError("retrieve needs --db");
    }
    const SelectionParams params = selection_params(o);
    Database db;
    try {
        db = build_database(read_shape_directory(o.db));
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }

    std::vector<std::string> reports;
    std::vector<std::string> row_order;
    std::map<std::string, std::map<double, TableCell>> cells;
    std::set<double> levels;
    for (const std::string& path : o.in) {
        const PatternFile pattern = read_pattern(path);
        const std::vector<Hypothesis> selected = select(group(pattern.dots), params, pattern.dots);
        const std::optional<std::string> truth = truth_of(o, pattern);
        const RetrievalResult r = retrieve(selected, db, pattern.dots, truth);
        reports.push_back(retrieval_to_json(r));
        const std::string row = truth.value_or(path);
        const double level = pattern.meta.s.value_or(0.0);
        if (!cells.count(row)) row_order.push_back(row);
        cells[row][level] = {r.score, r.success};
        levels.insert(level);
    }
    if (reports.size() == 1) {
        emit(o.out, reports.front(), out);
    } else {
        std::string all = "[\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            std::string rep = reports[i];
            rep.pop_back();
            all += rep + (i + 1 < reports.size() ? ",\n" : "\n");
        }
        emit(o.out, all + "]\n", out);
    }
    if (!o.table.empty()) {
        std::vector<std::string> columns;
        for (double l : levels) columns.push_back(format_level(l));
        std::vector<TableRow> rows;
        for (const std::string& name : row_order) {
            TableRow row{name, {}};
            for (double l : levels) {
                const auto it = cells[name].find(l);
                row.cells.push_back(it == cells[name].end() ? std::nullopt : std::optional<TableCell>(it->second));
            }
            rows.push_back(std::move(row));
        }
        write_atomic(o.table, format_table(columns, rows));
    }
    return 0;
}

int cmd_subsample(const Options& o, std::ostream& out) {
    if (o.mask.empty()) {
        throw UsageError("subsample needs --mask");
    }
    const BinaryMask mask = read_pgm(o.mask);
    DotPattern dots;
    try {
        dots = subsample_edges(mask);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
    emit(o.out, pattern_to_json({dots, {}}), out);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Group dot patterns into polygonal shape hypotheses", "dotgroup"};
    app.require_subcommand(1);
    Options o;

    auto add_in = [&](CLI::App* c, bool many) {
        if (many) {
            c->add_option("--in", o.in, "Pattern files (.json or .csv)")->required();
        } else {
            c->add_option("--in", o.in, "Input file")->required()->expected(1);
        }
    };
    auto add_sel = [&](CLI::App* c) {
        c->add_option("--k", o.k, "Number of hypotheses to keep")->capture_default_str();
        c->add_option("--eta", o.eta, "Overlap threshold for merging")->capture_default_str();
    };

    CLI::App* gen = app.add_subcommand("gen", "Generate a dot pattern from a shape");
    gen->add_option("--shape", o.shape, "Shape JSON file");
    gen->add_option("--builtin", o.builtin, "Builtin shape name");
    gen->add_option("--s", o.s, "Noise level (0 disables noise)")->capture_default_str();
    gen->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    gen->add_option("--stride", o.stride, "Keep every n-th boundary point")->check(CLI::PositiveNumber);
    gen->add_flag("--no-frame", o.no_frame, "Omit the circle frame");
    gen->add_option("--emit-shape", o.emit_shape, "Also write the fitted outline as a shape JSON");
    gen->add_option("--out", o.out, "Output pattern JSON (default stdout)");

    CLI::App* grp = app.add_subcommand("group", "List all grouping hypotheses");
    add_in(grp, false);
    add_sel(grp);
    grp->add_option("--out", o.out, "Hypotheses JSON (default stdout)");
    grp->add_option("--svg", o.svg, "SVG figure with the selected hypotheses");
    grp->add_option("--db", o.db, "Shape directory used to pick the best match in the figure");
    grp->add_option("--truth", o.truth, "Expected shape name");
    grp->add_option("--events", o.events, "Event log (JSON lines)");

    CLI::App* sel = app.add_subcommand("select", "Select salient representative hypotheses");
    add_in(sel, false);
    add_sel(sel);
    sel->add_option("--hyps", o.hyps, "Hypotheses JSON from group (recomputed if absent)");
    sel->add_option("--out", o.out, "Selected hypotheses JSON (default stdout)");
    sel->add_option("--svg", o.svg, "SVG figure");
    sel->add_option("--db", o.db, "Shape directory used to pick the best match in the figure");
    sel->add_option("--truth", o.truth, "Expected shape name");

    CLI::App* skel = app.add_subcommand("skeleton", "Straight skeleton of a simple polygon");
    add_in(skel, false);
    skel->add_option("--out", o.out, "Arcs JSON (default stdout)");
    skel->add_option("--svg", o.svg, "SVG figure");
    skel->add_option("--events", o.events, "Event log (JSON lines)");

    CLI::App* ret = app.add_subcommand("retrieve", "Match selected hypotheses against a shape database");
    add_in(ret, true);
    add_sel(ret);
    ret->add_option("--db", o.db, "Directory of shape JSON files")->required();
    ret->add_option("--truth", o.truth, "Expected shape name (default: pattern meta)");
    ret->add_option("--out", o.out, "Report JSON (default stdout)");
    ret->add_option("--table", o.table, "Text table of scores per noise level");

    CLI::App* sub = app.add_subcommand("subsample", "Turn a binary edge mask into a dot pattern");
    sub->add_option("--mask", o.mask, "PGM mask")->required();
    sub->add_option("--out", o.out, "Output pattern JSON (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "dotgroup: " << one_line(e.what()) << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(o, out);
        if (grp->parsed()) return cmd_group(o, out);
        if (sel->parsed()) return cmd_select(o, out);
        if (skel->parsed()) return cmd_skeleton(o, out);
        if (ret->parsed()) return cmd_retrieve(o, out);
        if (sub->parsed()) return cmd_subsample(o, out);
    } catch (const UsageError& e) {
        err << "dotgroup: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "dotgroup: " << one_line(e.what()) << "\n";
        return 1;
    }
    return 2;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace dotgroup
