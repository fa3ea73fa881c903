#include "dotgroup/retrieval.hpp"

#include <algorithm>
#include <numbers>
#include <set>
#include <stdexcept>

#include "dotgroup/patterns.hpp"

namespace dotgroup {

const ShapeRecord* Database::find(const std::string& name) const {
    for (const ShapeRecord& r : records_) {
        if (r.name == name) {
            return &r;
        }
    }
    return nullptr;
}

Database build_database(std::vector<ShapeRecord> shapes) {
    std::vector<Point2> circle;
    for (int i = 0; i < 64; ++i) {
        const double a = 2.0 * std::numbers::pi * i / 64.0;
        circle.emplace_back(kFrameCenter.x() + kFrameRadius * std::cos(a),
                            kFrameCenter.y() + kFrameRadius * std::sin(a));
    }
    const Box region = kDefaultRegion;
    std::vector<Point2> square{{region.x0, region.y0},
                               {region.x1, region.y0},
                               {region.x1, region.y1},
                               {region.x0, region.y1}};
    shapes.push_back({kCircleDistractor, "distractor", SimplePolygon(std::move(circle)), true});
    shapes.push_back({kSquareDistractor, "distractor", SimplePolygon(std::move(square)), true});

    std::set<std::string> names;
    for (const ShapeRecord& r : shapes) {
        if (!names.insert(r.name).second) {
            throw std::invalid_argument("duplicate shape name: " + r.name);
        }
    }
    std::sort(shapes.begin(), shapes.end(),
              [](const ShapeRecord& a, const ShapeRecord& b) { return a.name < b.name; });
    Database db;
    db.records_ = std::move(shapes);
    return db;
}

RetrievalResult retrieve(const std::vector<Hypothesis>& queries, const Database& db,
                         const DotPattern& dots, const std::optional<std::string>& truth) {
    RetrievalResult result;
    if (db.size() == 0) {
        return result;
    }
    for (std::size_t q = 0; q < queries.size(); ++q) {
        std::vector<Point2> ring;
        for (std::size_t i : queries[q].dots) {
            ring.push_back(dots[i]);
        }
        if (!is_simple_ring(ring)) {
            continue;
        }
        const SimplePolygon query(std::move(ring));
        // Records are in name order, so strict improvement keeps the first name on ties.
        std::size_t best = 0;
        double best_score = -1.0;
        for (std::size_t r = 0; r < db.size(); ++r) {
            const double s = matching_score(query, db.records()[r].polygon);
            if (s > best_score) {
                best_score = s;
                best = r;
            }
        }
        const ShapeRecord& rec = db.records()[best];
        result.per_query.push_back({q, rec.name, best_score, rec.ignorable});
        if (rec.ignorable) {
            continue;
        }
        const bool better = !result.best_shape || best_score > result.score ||
                            (best_score == result.score && rec.name < *result.best_shape);
        if (better) {
            result.best_shape = rec.name;
            result.score = best_score;
            result.best_query = q;
        }
    }
    result.success = result.best_shape && truth && *result.best_shape == *truth;
    return result;
}

}  // namespace dotgroup
