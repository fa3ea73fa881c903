#include "dotgroup/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace dotgroup {

using json = nlohmann::ordered_json;

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw DataError("cannot write " + path.string());
        }
        out << contents;
        out.flush();
        if (!out) {
            throw DataError("write failed for " + path.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw DataError("cannot replace " + path.string() + ": " + ec.message());
    }
}

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("malformed JSON: ") + e.what());
    }
}

std::vector<Point2> points_from(const json& j) {
    if (!j.is_array()) {
        throw DataError("\"points\" must be an array of [x, y] pairs");
    }
    std::vector<Point2> pts;
    pts.reserve(j.size());
    for (const json& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw DataError("each point must be a numeric [x, y] pair");
        }
        try {
            pts.emplace_back(p[0].get<double>(), p[1].get<double>());
        } catch (const GeometryError& e) {
            throw DataError(e.what());
        }
    }
    return pts;
}

json points_to(const std::vector<Point2>& pts) {
    json arr = json::array();
    for (const Point2& p : pts) {
        arr.push_back(json::array({p.x(), p.y()}));
    }
    return arr;
}

DotPattern make_pattern(std::vector<Point2> pts) {
    try {
        return DotPattern(std::move(pts));
    } catch (const GeometryError& e) {
        throw DataError(e.what());
    }
}

std::string lower_ext(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

}  // namespace

PatternFile parse_pattern_json(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object() || !j.contains("points")) {
        throw DataError("pattern JSON needs a \"points\" array");
    }
    PatternFile out;
    out.dots = make_pattern(points_from(j["points"]));
    if (j.contains("meta") && j["meta"].is_object()) {
        const json& m = j["meta"];
        try {
            if (m.contains("seed") && !m["seed"].is_null()) out.meta.seed = m["seed"].get<std::uint64_t>();
            if (m.contains("s") && !m["s"].is_null()) out.meta.s = m["s"].get<double>();
            if (m.contains("shape") && !m["shape"].is_null()) out.meta.shape = m["shape"].get<std::string>();
        } catch (const json::exception& e) {
            throw DataError(std::string("bad pattern meta: ") + e.what());
        }
    }
    return out;
}

PatternFile parse_pattern_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Point2> pts;
    std::size_t lineno = 0;
    auto parse_num = [](std::string_view s, double& v) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return ec == std::errc() && ptr == s.data() + s.size();
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto comma = line.find(',');
        double x = 0.0, y = 0.0;
        const bool ok = comma != std::string::npos &&
                        parse_num(std::string_view(line).substr(0, comma), x) &&
                        parse_num(std::string_view(line).substr(comma + 1), y);
        if (!ok) {
            if (lineno == 1 && pts.empty()) continue;  // header
            throw DataError("CSV line " + std::to_string(lineno) + " is not \"x,y\"");
        }
        try {
            pts.emplace_back(x, y);
        } catch (const GeometryError& e) {
            throw DataError("CSV line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return {make_pattern(std::move(pts)), {}};
}

PatternFile read_pattern(const fs::path& path) {
    const std::string text = read_text(path);
    if (lower_ext(path) == ".csv") {
        return parse_pattern_csv(text);
    }
    return parse_pattern_json(text);
}

std::string pattern_to_json(const PatternFile& pattern) {
    json j;
    j["points"] = points_to(pattern.dots.points());
    json meta = json::object();
    meta["seed"] = pattern.meta.seed ? json(*pattern.meta.seed) : json(nullptr);
    meta["s"] = pattern.meta.s ? json(*pattern.meta.s) : json(nullptr);
    meta["shape"] = pattern.meta.shape ? json(*pattern.meta.shape) : json(nullptr);
    j["meta"] = meta;
    return j.dump() + "\n";
}

ShapeFile parse_shape_json(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string() || !j.contains("points")) {
        throw DataError("shape JSON needs \"name\" and \"points\"");
    }
    ShapeFile s;
    s.name = j["name"].get<std::string>();
    if (j.contains("category") && j["category"].is_string()) {
        s.category = j["category"].get<std::string>();
    }
    s.points = points_from(j["points"]);
    return s;
}

ShapeFile read_shape(const fs::path& path) { return parse_shape_json(read_text(path)); }

std::string shape_to_json(const ShapeFile& shape) {
    json j;
    j["name"] = shape.name;
    j["category"] = shape.category;
    j["points"] = points_to(shape.points);
    return j.dump() + "\n";
}

std::vector<ShapeRecord> read_shape_directory(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw DataError("not a directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && lower_ext(entry.path()) == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<ShapeRecord> out;
    for (const fs::path& f : files) {
        ShapeFile s = read_shape(f);
        try {
            out.push_back({s.name, s.category, SimplePolygon(std::move(s.points)), false});
        } catch (const GeometryError& e) {
            throw DataError(f.filename().string() + ": " + e.what());
        }
    }
    return out;
}

std::string hypotheses_to_json(const std::vector<Hypothesis>& hypotheses) {
    json arr = json::array();
    for (const Hypothesis& h : hypotheses) {
        json o;
        o["dots"] = h.dots;
        o["event_time"] = h.event_time;
        arr.push_back(o);
    }
    return arr.dump() + "\n";
}

std::vector<Hypothesis> parse_hypotheses_json(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_array()) {
        throw DataError("hypotheses JSON must be an array");
    }
    std::vector<Hypothesis> out;
    for (const json& o : j) {
        if (!o.is_object() || !o.contains("dots") || !o["dots"].is_array()) {
            throw DataError("each hypothesis needs a \"dots\" array");
        }
        Hypothesis h;
        try {
            h.dots = o["dots"].get<std::vector<std::size_t>>();
            if (o.contains("event_time")) h.event_time = o["event_time"].get<double>();
        } catch (const json::exception& e) {
            throw DataError(std::string("bad hypothesis: ") + e.what());
        }
        out.push_back(std::move(h));
    }
    return out;
}

BinaryMask parse_pgm(const std::string& bytes) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_uint = [&](const char* what) {
        skip_ws();
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(bytes.data() + pos, bytes.data() + bytes.size(), v);
        if (ec != std::errc()) {
            throw DataError(std::string("PGM: cannot read ") + what);
        }
        pos = static_cast<std::size_t>(ptr - bytes.data());
        return v;
    };
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw DataError("not a P2/P5 PGM file");
    }
    const bool raw = bytes[1] == '5';
    pos = 2;
    BinaryMask mask;
    mask.width = read_uint("width");
    mask.height = read_uint("height");
    const std::size_t maxval = read_uint("max value");
    if (mask.width == 0 || mask.height == 0 || maxval == 0 || maxval > 65535) {
        throw DataError("PGM: bad header");
    }
    const std::size_t count = mask.width * mask.height;
    mask.pixels.resize(count);
    const std::size_t threshold = maxval / 2;
    if (raw) {
        ++pos;  // single whitespace after the header
        const std::size_t bpp = maxval > 255 ? 2 : 1;
        if (bytes.size() < pos + count * bpp) {
            throw DataError("PGM: truncated pixel data");
        }
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t v = static_cast<unsigned char>(bytes[pos + i * bpp]);
            if (bpp == 2) v = (v << 8) | static_cast<unsigned char>(bytes[pos + i * bpp + 1]);
            mask.pixels[i] = v > threshold ? 1 : 0;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            mask.pixels[i] = read_uint("pixel") > threshold ? 1 : 0;
        }
    }
    return mask;
}

BinaryMask read_pgm(const fs::path& path) { return parse_pgm(read_text(path)); }

std::string retrieval_to_json(const RetrievalResult& result) {
    json j;
    j["success"] = result.success;
    j["best_shape"] = result.best_shape ? json(*result.best_shape) : json(nullptr);
    j["score"] = result.score;
    j["best_query"] = result.best_query ? json(*result.best_query) : json(nullptr);
    json per = json::array();
    for (const QueryMatch& m : result.per_query) {
        json o;
        o["query"] = m.query;
        o["shape"] = m.shape;
        o["score"] = m.score;
        o["ignored"] = m.ignored;
        per.push_back(o);
    }
    j["queries"] = per;
    return j.dump(2) + "\n";
}

std::string format_table(const std::vector<std::string>& columns, const std::vector<TableRow>& rows) {
    std::size_t name_w = 5;
    for (const TableRow& r : rows) name_w = std::max(name_w, r.shape.size());
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(name_w)) << "shape";
    for (const std::string& c : columns) out << "  " << std::right << std::setw(7) << c << ' ';
    out << "\n";
    bool any_miss = false;
    for (const TableRow& r : rows) {
        out << std::left << std::setw(static_cast<int>(name_w)) << r.shape;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out << "  " << std::right << std::setw(8);
            if (i < r.cells.size() && r.cells[i]) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3f%s", r.cells[i]->score, r.cells[i]->success ? " " : "*");
                any_miss = any_miss || !r.cells[i]->success;
                out << buf;
            } else {
                out << "- ";
            }
        }
        out << "\n";
    }
    if (any_miss) out << "* best match was a different shape\n";
    return out.str();
}

}  // namespace dotgroup
