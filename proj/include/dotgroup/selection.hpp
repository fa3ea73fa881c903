#pragma once

#include <cstddef>
#include <vector>

#include "dotgroup/grouping.hpp"

namespace dotgroup {

struct SelectionParams {
    std::size_t k = 10;
    double eta = 0.5;

    /// Throws std::invalid_argument for k == 0 or eta outside [0, 1].
    void validate() const;
};

/// Polygon area over the longest side squared.
double saliency(const Hypothesis& h, const DotPattern& dots);

/// Jaccard index of the two hypotheses' dot sets.
double overlap(const Hypothesis& p, const Hypothesis& q);

/// Merges hypotheses whose overlap reaches eta, keeps the most salient member of
/// each component, and returns the top k of those, most salient first.
std::vector<Hypothesis> select(const std::vector<Hypothesis>& hypotheses, const SelectionParams& params,
                               const DotPattern& dots);

}  // namespace dotgroup
