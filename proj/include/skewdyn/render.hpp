#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewdyn/config.hpp"
#include "skewdyn/mapfile.hpp"

namespace skewdyn {

// fiber: fixed z, pixels sweep w.  zplane: fixed w, pixels sweep z.
enum class Slice { fiber, zplane };
std::string to_string(Slice s);
Slice parse_slice(const std::string& name);

constexpr int kMaxPixelsPerSide = 8192;

struct RenderJob {
    explicit RenderJob(MapSource src, std::string label = "builtin")
        : source(std::move(src)), source_label(std::move(label)) {}

    MapSource source;
    std::string source_label;  // file name or "builtin", written to the meta file
    Slice slice = Slice::fiber;
    Complex fixed{0.5, 0.0};
    Complex center{0.0, 0.0};
    double width = 2.0;
    double height = 2.0;
    int pixels_x = 64;
    int pixels_y = 64;
    GreenFunction function = GreenFunction::Gzap;
    // Affine clamp [lo, hi] -> [0, 255]; taken from the finite values when empty.
    std::optional<std::pair<double, double>> clamp;
    std::string out_base = "render";  // writes <base>.pgm, <base>.csv, <base>.meta

    void validate() const;  // throws std::invalid_argument
    // Coordinate of pixel (ix, iy); row 0 is the top edge (largest imaginary part).
    Complex pixel_coordinate(int ix, int iy) const;
};

struct RenderResult {
    std::vector<GreenEstimate> values;  // row-major, index = iy * pixels_x + ix
    std::vector<std::uint8_t> gray;
    double clamp_lo = 0.0;
    double clamp_hi = 1.0;
};

// Computes every pixel; rows are spread over cfg.threads workers and the
// result is independent of the thread count.
RenderResult render_values(const RenderJob& job, const RunConfig& cfg);
std::uint8_t palette(double value, double lo, double hi);

// Writes the three files; throws std::runtime_error on I/O failure.
RenderResult render(const RenderJob& job, const RunConfig& cfg);

}  // namespace skewdyn
