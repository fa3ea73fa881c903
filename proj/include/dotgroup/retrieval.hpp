#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dotgroup/grouping.hpp"

namespace dotgroup {

struct ShapeRecord {
    std::string name;
    std::string category;
    SimplePolygon polygon;  // absolute pattern coordinates
    bool ignorable = false;
};

/// Shape database with the frame-circle and noise-square distractors appended.
class Database {
public:
    const std::vector<ShapeRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    const ShapeRecord* find(const std::string& name) const;

private:
    friend Database build_database(std::vector<ShapeRecord> shapes);
    std::vector<ShapeRecord> records_;  // sorted by name
};

inline constexpr const char* kCircleDistractor = "circle";
inline constexpr const char* kSquareDistractor = "square";

/// Throws std::invalid_argument on duplicate names (distractor names included).
Database build_database(std::vector<ShapeRecord> shapes);

struct QueryMatch {
    std::size_t query = 0;
    std::string shape;
    double score = 0.0;
    bool ignored = false;  // best match was a distractor
};

struct RetrievalResult {
    std::optional<std::string> best_shape;
    double score = 0.0;
    bool success = false;
    std::optional<std::size_t> best_query;
    std::vector<QueryMatch> per_query;
};

/// Scores every query against every record with the area-based matching score.
RetrievalResult retrieve(const std::vector<Hypothesis>& queries, const Database& db,
                         const DotPattern& dots, const std::optional<std::string>& truth);

}  // namespace dotgroup
