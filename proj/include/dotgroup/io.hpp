#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>


#include "dotgroup/grouping.hpp"
#include "dotgroup/patterns.hpp"
#include "dotgroup/retrieval.hpp"

namespace dotgroup {

/// Malformed or missing input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PatternMeta {
    std::optional<std::uint64_t> seed;
    std::optional<double> s;
    std::optional<std::string> shape;
};

struct PatternFile {
    DotPattern dots;
    PatternMeta meta;
};

/// Reads a .json pattern or a .csv file with one "x,y" per line (an optional
/// non-numeric header line is skipped).
PatternFile read_pattern(const std::filesystem::path& path);
PatternFile parse_pattern_json(const std::string& text);
PatternFile parse_pattern_csv(const std::string& text);
std::string pattern_to_json(const PatternFile& pattern);

struct ShapeFile {
    std::string name;
    std::string category;
    std::vector<Point2> points;
};

ShapeFile read_shape(const std::filesystem::path& path);
ShapeFile parse_shape_json(const std::string& text);
std::string shape_to_json(const ShapeFile& shape);

/// Every *.json file in `dir` as a shape record, in file-name order.
std::vector<ShapeRecord> read_shape_directory(const std::filesystem::path& dir);

std::string hypotheses_to_json(const std::vector<Hypothesis>& hypotheses);
std::vector<Hypothesis> parse_hypotheses_json(const std::string& text);

/// Plain (P2) or raw (P5) PGM; pixels above half the max value are set.
BinaryMask read_pgm(const std::filesystem::path& path);
BinaryMask parse_pgm(const std::string& bytes);

std::string retrieval_to_json(const RetrievalResult& result);

struct TableCell {
    double score = 0.0;
    bool success = false;  // misses are starred
};

/// Rows of (shape name, score per noise level), aligned as plain text.
struct TableRow {
    std::string shape;
    std::vector<std::optional<TableCell>> cells;
};
std::string format_table(const std::vector<std::string>& columns, const std::vector<TableRow>& rows);

std::string read_text(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace dotgroup
