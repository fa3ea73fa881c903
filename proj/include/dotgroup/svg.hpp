#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dotgroup/grouping.hpp"
#include "dotgroup/skeleton.hpp"

namespace dotgroup {

struct SvgScene {
    const DotPattern* dots = nullptr;
    const SpanningTree* tree = nullptr;  // optional
    std::vector<Hypothesis> selection;
    std::optional<std::size_t> best;  // index into selection drawn in black
    std::vector<SkeletonArc> arcs;
    std::vector<Point2> outline;  // optional polygon drawn underneath, e.g. a skeleton input
};

/// Standalone SVG document. The selection layer holds one <polygon> per
/// hypothesis; dots and tree edges are circles and lines.
std::string render_svg(const SvgScene& scene);

}  // namespace dotgroup
