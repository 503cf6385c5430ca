#pragma once

#include <cstdint>
#include <string>

#include "skewdyn/green.hpp"

namespace skewdyn {

struct RunConfig {
    int n_max = 64;
    double tol = 1e-10;
    double escape_radius = 1e12;
    std::uint64_t seed = 1;
    int threads = 1;

    // Defaults overridden by SKEWDYN_N_MAX, SKEWDYN_TOL, SKEWDYN_ESCAPE_RADIUS,
    // SKEWDYN_SEED and SKEWDYN_THREADS when set.
    static RunConfig from_env();
    void validate() const;  // throws std::invalid_argument
    GreenOptions green() const { return GreenOptions{n_max, tol, escape_radius}; }
    std::string str() const;
};

enum class GreenFunction { Gp, Gza, Gzi, Gzap, Gz, Gf, Gfa };
std::string to_string(GreenFunction g);
GreenFunction parse_green_function(const std::string& name);

GreenEstimate evaluate(GreenFunction g, const SkewProduct& f, const Classification& c, Complex z, Complex w,
                       const GreenOptions& opt);

// Shortest decimal that reads back to the same double; inf, -inf, nan otherwise.
std::string format_double(double v);

}  // namespace skewdyn
