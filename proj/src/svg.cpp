#include "dotgroup/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace dotgroup {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Bounds {
    double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
    bool set = false;

    void add(Point2 p) {
        if (!set) {
            x0 = x1 = p.x();
            y0 = y1 = p.y();
            set = true;
            return;
        }
        x0 = std::min(x0, p.x());
        x1 = std::max(x1, p.x());
        y0 = std::min(y0, p.y());
        y1 = std::max(y1, p.y());
    }
};

}  // namespace

std::string render_svg(const SvgScene& scene) {
    Bounds b;
    if (scene.dots) {
        for (const Point2& p : scene.dots->points()) b.add(p);
    }
    for (const Point2& p : scene.outline) b.add(p);
    for (const SkeletonArc& a : scene.arcs) {
        b.add(a.a);
        b.add(a.b);
    }
    const double pad = 10.0;
    const double w = std::max(b.x1 - b.x0, 1.0) + 2 * pad;
    const double h = std::max(b.y1 - b.y0, 1.0) + 2 * pad;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(b.x0 - pad) << ' ' << num(b.y0 - pad)
        << ' ' << num(w) << ' ' << num(h) << "\" width=\"" << num(w) << "\" height=\"" << num(h) << "\">\n";

    if (!scene.outline.empty()) {
        out << "<g id=\"outline\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\">\n<polyline points=\"";
        for (const Point2& p : scene.outline) out << num(p.x()) << ',' << num(p.y()) << ' ';
        out << num(scene.outline.front().x()) << ',' << num(scene.outline.front().y()) << "\"/>\n</g>\n";
    }

    if (scene.tree && scene.dots) {
        out << "<g id=\"tree\" stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n";
        for (const TreeEdge& e : scene.tree->edges) {
            const Point2 p = (*scene.dots)[e.a];
            const Point2 q = (*scene.dots)[e.b];
            out << "<line x1=\"" << num(p.x()) << "\" y1=\"" << num(p.y()) << "\" x2=\"" << num(q.x())
                << "\" y2=\"" << num(q.y()) << "\"/>\n";
        }
        out << "</g>\n";
    }

    if (!scene.arcs.empty()) {
        out << "<g id=\"skeleton\" stroke=\"#000000\" stroke-width=\"1\">\n";
        for (const SkeletonArc& a : scene.arcs) {
            out << "<line x1=\"" << num(a.a.x()) << "\" y1=\"" << num(a.a.y()) << "\" x2=\"" << num(a.b.x())
                << "\" y2=\"" << num(a.b.y()) << "\"/>\n";
        }
        out << "</g>\n";
    }

    if (scene.dots) {
        out << "<g id=\"selection\" fill=\"none\" stroke-width=\"1.5\">\n";
        // Gray first so the best match sits on top.
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < scene.selection.size(); ++i) {
            if (!scene.best || *scene.best != i) order.push_back(i);
        }
        if (scene.best && *scene.best < scene.selection.size()) order.push_back(*scene.best);
        for (std::size_t i : order) {
            const bool best = scene.best && *scene.best == i;
            out << "<polygon stroke=\"" << (best ? "#000000" : "#999999") << "\" points=\"";
            const auto& idx = scene.selection[i].dots;
            for (std::size_t k = 0; k < idx.size(); ++k) {
                const Point2 p = (*scene.dots)[idx[k]];
                out << (k ? " " : "") << num(p.x()) << ',' << num(p.y());
            }
            out << "\"/>\n";
        }
        out << "</g>\n";

        out << "<g id=\"dots\" fill=\"#000000\">\n";
        for (const Point2& p : scene.dots->points()) {
            out << "<circle cx=\"" << num(p.x()) << "\" cy=\"" << num(p.y()) << "\" r=\"2\"/>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace dotgroup
