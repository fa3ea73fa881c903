#include "dotgroup/selection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dotgroup {

void SelectionParams::validate() const {
    if (k == 0) {
        throw std::invalid_argument("k must be positive");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("eta must lie in [0, 1]");
    }
}

double saliency(const Hypothesis& h, const DotPattern& dots) {
    const std::size_t n = h.dots.size();
    if (n < 3) {
        return 0.0;
    }
    std::vector<Point2> ring;
    ring.reserve(n);
    double longest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ring.push_back(dots[h.dots[i]]);
        longest = std::max(longest, distance_sq(dots[h.dots[i]], dots[h.dots[(i + 1) % n]]));
    }
    if (longest == 0.0) {
        return 0.0;
    }
    return std::abs(signed_area(ring)) / longest;
}

namespace {

std::vector<std::size_t> sorted_set(const Hypothesis& h) {
    std::vector<std::size_t> s = h.dots;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

double jaccard(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.empty() && b.empty()) {
        return 1.0;
    }
    std::size_t common = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

struct DisjointSets {
    std::vector<std::size_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
};

}  // namespace

double overlap(const Hypothesis& p, const Hypothesis& q) { return jaccard(sorted_set(p), sorted_set(q)); }

std::vector<Hypothesis> select(const std::vector<Hypothesis>& hypotheses, const SelectionParams& params,
                               const DotPattern& dots) {
    params.validate();
    const std::size_t n = hypotheses.size();
    std::vector<Hypothesis> scored = hypotheses;
    std::vector<std::vector<std::size_t>> sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        scored[i].dots = normalize_cycle(scored[i].dots);
        scored[i].saliency = saliency(scored[i], dots);
        sets[i] = sorted_set(scored[i]);
    }

    DisjointSets ds(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double small = static_cast<double>(std::min(sets[i].size(), sets[j].size()));
            const double large = static_cast<double>(std::max(sets[i].size(), sets[j].size()));
            if (small / large < params.eta) {
                continue;  // Jaccard cannot reach eta
            }
            if (jaccard(sets[i], sets[j]) >= params.eta) {
                ds.unite(i, j);
            }
        }
    }

    auto more_salient = [&](std::size_t a, std::size_t b) {
        if (scored[a].saliency != scored[b].saliency) {
            return scored[a].saliency > scored[b].saliency;
        }
        return scored[a].dots < scored[b].dots;
    };

    std::vector<std::size_t> rep(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = ds.find(i);
        if (rep[root] == n || more_salient(i, rep[root])) {
            rep[root] = i;
        }
    }
    std::vector<std::size_t> winners;
    for (std::size_t i = 0; i < n; ++i) {
        if (rep[i] != n) {
            winners.push_back(rep[i]);
        }
    }
    std::sort(winners.begin(), winners.end(), more_salient);
    if (winners.size() > params.k) {
        winners.resize(params.k);
    }
    std::vector<Hypothesis> out;
    out.reserve(winners.size());
    for (std::size_t i : winners) {
        out.push_back(scored[i]);
    }
    return out;
}

}  // namespace dotgroup
