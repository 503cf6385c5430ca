#include "skewdyn/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace skewdyn::oracles {

namespace {
constexpr double kInf = HUGE_VAL;

double log_abs(Complex x) { return x == Complex(0.0, 0.0) ? -kInf : std::log(std::abs(x)); }
}  // namespace

std::string to_string(GreenKind k) {
    switch (k) {
        case GreenKind::Gp: return "Gp";
        case GreenKind::Gza: return "Gza";
        case GreenKind::Gzi: return "Gzi";
        case GreenKind::Gz: return "Gz";
        case GreenKind::Gf: return "Gf";
        case GreenKind::Gfa: return "Gfa";
    }
    return "?";
}

double monomial_reference(int delta, int gamma, int d, Complex z, Complex w, GreenKind which) {
    if (delta < 2 || gamma < 0 || d < 0) throw std::domain_error("monomial_reference: bad exponents");
    const double lz = log_abs(z);
    const double lw = log_abs(w);
    // alpha is gamma/(delta-d) off the diagonal and 0 for the pure power w^delta.
    const bool diag = delta == d;
    const double alpha = diag ? 0.0 : static_cast<double>(gamma) / (delta - d);
    const double weighted = gamma == 0 ? lw : lw - alpha * lz;
    switch (which) {
        case GreenKind::Gp: return lz;
        case GreenKind::Gza:
            if (diag && gamma > 0) throw std::domain_error("monomial_reference: Gza undefined for delta = d, gamma > 0");
            if (d < 1) throw std::domain_error("monomial_reference: Gza needs d >= 1");
            return weighted;
        case GreenKind::Gzi:
            if (!diag) throw std::domain_error("monomial_reference: Gzi needs delta = d");
            return lw;
        case GreenKind::Gz:
            if (delta < d) return weighted;
            if (diag) {
                if (gamma == 0) return lw;
                if (std::abs(z) < 1.0) return -kInf;
                if (std::abs(z) > 1.0) return kInf;
                return lw;
            }
            if (w == Complex(0.0, 0.0)) return -kInf;
            return gamma == 0 ? 0.0 : alpha * lz;
        case GreenKind::Gf:
            if (delta < d) return std::max(0.0, weighted);
            if (diag) {
                if (gamma == 0) return std::max(lz, lw);
                if (std::abs(z) <= 1.0) return lz;
                throw std::domain_error("monomial_reference: Gf diverges for |z| > 1");
            }
            if (w == Complex(0.0, 0.0)) return lz;
            return std::max(lz, gamma == 0 ? 0.0 : alpha * lz);
        case GreenKind::Gfa:
            if (delta < d) return std::max(0.0, weighted);
            if (diag) {
                if (gamma > 0) throw std::domain_error("monomial_reference: Gfa undefined for delta = d, gamma > 0");
                return std::max(0.0, lw);
            }
            return gamma == 0 ? 0.0 : alpha * lz;
    }
    return NAN;
}

OneDimPoly::OneDimPoly(std::map<int, Complex> coeffs) {
    for (const auto& [k, c] : coeffs) {
        if (k < 0) throw std::invalid_argument("OneDimPoly: negative degree");
        if (c != Complex(0.0, 0.0)) coeffs_.emplace(k, c);
    }
    if (coeffs_.empty()) throw std::invalid_argument("OneDimPoly: zero polynomial");
    d_ = coeffs_.rbegin()->first;
    m_ = coeffs_.begin()->first;
    if (d_ < 2) throw std::invalid_argument("OneDimPoly: degree must be >= 2");
    if (m_ < 1) throw std::invalid_argument("OneDimPoly: constant term must vanish");
    if (coeffs_.rbegin()->second != Complex(1.0, 0.0)) throw std::invalid_argument("OneDimPoly: must be monic");
}

Complex OneDimPoly::operator()(Complex w) const {
    Complex acc(0.0, 0.0);
    int k = d_;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= ipow(w, k - it->first);
        acc += it->second;
        k = it->first;
    }
    return acc * ipow(w, k);
}

double OneDimPoly::escape_radius() const {
    // |h(w)| >= |w|^(d-1) (|w| - S) for |w| >= 1, S the sum of the lower |b_k|.
    double s = 0.0;
    for (const auto& [k, c] : coeffs_)
        if (k < d_) s += std::abs(c);
    return std::max(2.0, 1.0 + s);
}

double OneDimPoly::trap_radius() const {
    double total = 0.0;
    for (const auto& [k, c] : coeffs_) total += std::abs(c);
    if (m_ >= 2) {
        // |h(w)| <= total |w|^m <= |w| / 2 on this disk.
        return std::min(1.0, std::pow(1.0 / (2.0 * total), 1.0 / (m_ - 1)));
    }
    const double b1 = std::abs(coeffs_.begin()->second);
    if (b1 >= 1.0) return 0.0;
    // |h(w)| <= b1 |w| + (total - b1) |w|^2 <= (1 + b1)/2 |w|.
    return std::min(1.0, (1.0 - b1) / (2.0 * (total - b1)));
}

double G_h_infty(const OneDimPoly& h, Complex w, const EscapeOptions& opt) {
    const double trap = h.trap_radius();
    const double dd = h.degree();
    Complex u = w;
    for (int n = 0; n <= opt.n_max; ++n) {
        if (u == Complex(0.0, 0.0)) return -kInf;
        const double r = std::abs(u);
        if (r > opt.escape_radius) return std::pow(dd, -n) * std::log(r);
        if (r < trap) return 0.0;
        if (n < opt.n_max) u = h(u);
    }
    return 0.0;
}

double G_h_infty_plus(const OneDimPoly& h, Complex w, const EscapeOptions& opt) {
    return std::max(0.0, G_h_infty(h, w, opt));
}

double G_h_zero(const OneDimPoly& h, Complex w, const EscapeOptions& opt) {
    const int m = h.lowest();
    if (m < 2) throw std::domain_error("G_h_zero: needs a superattracting 0 (m >= 2)");
    const double lb = std::log(std::abs(h.coefficients().begin()->second)) / (m - 1);
    Complex u = w;
    double last = 0.0;
    for (int n = 0; n <= opt.n_max; ++n) {
        if (u == Complex(0.0, 0.0)) return -kInf;
        const double r = std::abs(u);
        if (r > opt.escape_radius) return kInf;
        last = std::pow(static_cast<double>(m), -n) * (std::log(r) + lb);
        if (r < 1e-12) return last;
        if (n < opt.n_max) u = h(u);
    }
    return last;
}

std::string to_string(JuliaMembership j) {
    switch (j) {
        case JuliaMembership::inside_filled: return "inside_filled";
        case JuliaMembership::escaping: return "escaping";
        case JuliaMembership::boundary_band: return "boundary_band";
    }
    return "?";
}

JuliaMembership julia_membership(const OneDimPoly& h, Complex w, int budget) {
    const double esc = h.escape_radius();
    const double trap = h.trap_radius();
    Complex u = w;
    for (int n = 0; n <= budget; ++n) {
        const double r = std::abs(u);
        if (r > esc) return JuliaMembership::escaping;
        if (r < trap) return JuliaMembership::inside_filled;
        if (n < budget) u = h(u);
    }
    return JuliaMembership::boundary_band;
}

SkewProduct build_semiconjugate(const SemiconjugateSpec& spec) {
    const OneDimPoly& h = spec.h;
    if (spec.alpha < 0) throw std::invalid_argument("build_semiconjugate: alpha must be a non-negative integer");
    const int delta = spec.kind == SemiconjugateKind::nondegenerate ? h.degree() : spec.delta;
    if (spec.kind == SemiconjugateKind::degenerate && delta <= h.degree()) {
        throw std::invalid_argument("build_semiconjugate: degenerate kind needs delta > deg h");
    }
    std::map<Exponent, Complex> q;
    for (const auto& [k, c] : h.coefficients()) q[{spec.alpha * (delta - k), k}] = c;
    SkewProduct f(UniPoly({{delta, Complex(1.0, 0.0)}}), BiPoly(q));

    for (int s = 0; s < 100; ++s) {
        const double t = (s + 0.5) / 100.0;
        const Complex z = std::polar(0.2 + 0.7 * t, 6.283185307179586 * std::fmod(0.618034 * s, 1.0));
        const Complex w = std::polar(1.5 * std::fmod(0.754878 * s + 0.1, 1.0), 6.283185307179586 * std::fmod(0.569840 * s, 1.0));
        const Complex lhs = f.q()(z, ipow(z, spec.alpha) * w);
        const Complex rhs = ipow(z, spec.alpha * delta) * h(w);
        if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(rhs))) {
            throw std::logic_error("build_semiconjugate: semiconjugacy check failed");
        }
    }
    return f;
}

NewtonPolygon brute_force_polygon(const std::vector<Exponent>& support) {
    if (support.empty()) throw std::invalid_argument("brute_force_polygon: empty support");
    const std::set<Exponent> pts(support.begin(), support.end());
    std::vector<Exponent> verts;
    for (const auto& p : pts) {
        bool vertex = true;
        for (const auto& q : pts) {
            if (q != p && q.first <= p.first && q.second <= p.second) vertex = false;
        }
        for (const auto& q1 : pts) {
            for (const auto& q2 : pts) {
                if (!vertex) break;
                if (!(q1.first < p.first && p.first < q2.first)) continue;
                // p on or above the segment q1 q2
                const long lhs = static_cast<long>(q2.first - p.first) * (q1.second - q2.second);
                const long rhs = static_cast<long>(p.second - q2.second) * (q2.first - q1.first);
                if (lhs <= rhs) vertex = false;
            }
        }
        if (vertex) verts.push_back(p);
    }
    NewtonPolygon out;
    out.vertices = verts;  // std::set order: increasing i, hence decreasing j
    for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
        const auto [n0, m0] = verts[k];
        const auto [n1, m1] = verts[k + 1];
        out.intercepts.emplace_back(static_cast<std::int64_t>(m0) * n1 - static_cast<std::int64_t>(m1) * n0, n1 - n0);
    }
    return out;
}

}  // namespace skewdyn::oracles
