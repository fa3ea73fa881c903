#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dotgroup/mst.hpp"

namespace dotgroup {

struct Box {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

inline constexpr Box kDefaultRegion{200.0, 200.0, 800.0, 800.0};
inline const Point2 kFrameCenter{500.0, 500.0};
inline constexpr double kFrameRadius = 490.0;
inline constexpr int kFrameCount = 32;

struct NoiseSpec {
    double s = 0.0;  // 0 disables noise; 1 is the densest level
    std::uint64_t seed = 0;
    Box region = kDefaultRegion;
    double margin_fraction = 0.10;
};

/// Keeps every `stride`-th boundary point and fits the result into `target`
/// by a uniform scale and translation, preserving aspect.
DotPattern sample_shape(const std::vector<Point2>& boundary, std::size_t stride = 10,
                        const Box& target = kDefaultRegion);

/// The full boundary under the same similarity that `sample_shape` applies.
std::vector<Point2> fitted_outline(const std::vector<Point2>& boundary, std::size_t stride = 10,
                                   const Box& target = kDefaultRegion);

/// Mean distance between consecutive dots, closing the loop.
double mean_spacing(const DotPattern& dots);

/// One random dot per s*mu grid cell anchored at the region's low corner,
/// kept inside the cell's inner (1 - 2*margin) square. Partial cells are skipped.
DotPattern gen_noise(const DotPattern& shape_dots, const NoiseSpec& spec);

DotPattern frame_circle(Point2 center = kFrameCenter, double radius = kFrameRadius,
                        int count = kFrameCount);

/// Concatenates the parts in order, dropping later exact duplicates.
DotPattern assemble_pattern(const std::vector<const DotPattern*>& parts);

struct BinaryMask {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, nonzero = set

    bool at(std::size_t x, std::size_t y) const { return pixels[y * width + x] != 0; }
};

/// One dot per non-empty 4x4 block at the rounded centroid of its set pixels.
DotPattern subsample_edges(const BinaryMask& mask);

/// Names of the procedurally generated shapes.
std::vector<std::string> builtin_shape_names();

/// Dense closed boundary (unit scale) of a builtin shape, `points` samples
/// evenly spaced by arc length. Throws std::invalid_argument for unknown names.
std::vector<Point2> builtin_shape(const std::string& name, std::size_t points = 360);

/// std::mt19937_64 behind all pattern randomness; the bit-to-double mapping is
/// fixed here so outputs match across standard libraries.
class PatternRng {
public:
    explicit PatternRng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace dotgroup
