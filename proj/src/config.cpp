#include "skewdyn/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace skewdyn {

namespace {

template <class T>
void override_from(const char* name, T& target) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return;
    const std::string s(raw);
    std::size_t pos = 0;
    try {
        if constexpr (std::is_same_v<T, double>) {
            target = std::stod(s, &pos);
        } else if constexpr (std::is_same_v<T, int>) {
            target = std::stoi(s, &pos);
        } else {
            target = std::stoull(s, &pos);
        }
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || pos == 0) throw std::invalid_argument(std::string(name) + ": cannot parse '" + s + "'");
}

}  // namespace

RunConfig RunConfig::from_env() {
    RunConfig cfg;
    override_from("SKEWDYN_N_MAX", cfg.n_max);
    override_from("SKEWDYN_TOL", cfg.tol);
    override_from("SKEWDYN_ESCAPE_RADIUS", cfg.escape_radius);
    override_from("SKEWDYN_SEED", cfg.seed);
    override_from("SKEWDYN_THREADS", cfg.threads);
    cfg.validate();
    return cfg;
}

void RunConfig::validate() const {
    if (n_max <= 0) throw std::invalid_argument("n_max must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(escape_radius > 1.0)) throw std::invalid_argument("escape_radius must exceed 1");
    if (threads <= 0) throw std::invalid_argument("threads must be positive");
}

std::string RunConfig::str() const {
    return "n_max=" + std::to_string(n_max) + " tol=" + format_double(tol) +
           " escape_radius=" + format_double(escape_radius) + " seed=" + std::to_string(seed);
}

std::string to_string(GreenFunction g) {
    switch (g) {
        case GreenFunction::Gp: return "Gp";
        case GreenFunction::Gza: return "Gza";
        case GreenFunction::Gzi: return "Gzi";
        case GreenFunction::Gzap: return "Gzap";
        case GreenFunction::Gz: return "Gz";
        case GreenFunction::Gf: return "Gf";
        case GreenFunction::Gfa: return "Gfa";
    }
    return "?";
}

GreenFunction parse_green_function(const std::string& name) {
    for (auto g : {GreenFunction::Gp, GreenFunction::Gza, GreenFunction::Gzi, GreenFunction::Gzap, GreenFunction::Gz,
                   GreenFunction::Gf, GreenFunction::Gfa}) {
        if (to_string(g) == name) return g;
    }
    throw std::invalid_argument("unknown function '" + name + "' (Gp, Gza, Gzi, Gzap, Gz, Gf, Gfa)");
}

GreenEstimate evaluate(GreenFunction g, const SkewProduct& f, const Classification& c, Complex z, Complex w,
                       const GreenOptions& opt) {
    switch (g) {
        case GreenFunction::Gp: return G_p(f.p(), z, opt);
        case GreenFunction::Gza: return G_z_alpha(f, c, z, w, opt);
        case GreenFunction::Gzi: return G_z_infty(f, c, z, w, opt);
        case GreenFunction::Gzap: return G_z_alpha_plus(f, c, z, w, opt);
        case GreenFunction::Gz: return G_z(f, c, z, w, opt);
        case GreenFunction::Gf: return G_f(f, c, z, w, opt);
        case GreenFunction::Gfa: return G_f_alpha(f, c, z, w, opt);
    }
    throw std::logic_error("evaluate: bad selector");
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace skewdyn
