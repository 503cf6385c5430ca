#pragma once

#include <map>
#include <string>

#include "skewdyn/algebra.hpp"
#include "skewdyn/newton.hpp"

// Reference implementations used to cross-check the numerical estimators:
// closed forms for monomial maps, 1-D escape rates, and an independent
// brute-force Newton polygon.
namespace skewdyn::oracles {

enum class GreenKind { Gp, Gza, Gzi, Gz, Gf, Gfa };
std::string to_string(GreenKind k);

// Exact limit value for f0 = (z^delta, z^gamma w^d). Throws std::domain_error
// when the function is not defined in that regime.
double monomial_reference(int delta, int gamma, int d, Complex z, Complex w, GreenKind which);

// h(w) = w^d + b_{d-1} w^{d-1} + ... + b_m w^m, d >= 2, m >= 1.
class OneDimPoly {
public:
    explicit OneDimPoly(std::map<int, Complex> coeffs);
    int degree() const { return d_; }
    int lowest() const { return m_; }
    const std::map<int, Complex>& coefficients() const { return coeffs_; }
    Complex operator()(Complex w) const;
    // Orbits leaving this disk escape to infinity.
    double escape_radius() const;
    // Disk around 0 that is mapped strictly inside itself; 0 when 0 is not attracting.
    double trap_radius() const;

private:
    std::map<int, Complex> coeffs_;
    int d_ = 0;
    int m_ = 0;
};

enum class SemiconjugateKind { degenerate, nondegenerate };

struct SemiconjugateSpec {
    OneDimPoly h;
    int alpha = 0;
    int delta = 0;  // ignored for the nondegenerate kind, which uses delta = deg h
    SemiconjugateKind kind = SemiconjugateKind::degenerate;
};

// f = (z^delta, z^(alpha delta) h(w / z^alpha)), checked against
// f o pi = pi o (z^delta, h) with pi(z, w) = (z, z^alpha w) at 100 points.
SkewProduct build_semiconjugate(const SemiconjugateSpec& spec);

struct EscapeOptions {
    int n_max = 200;
    double escape_radius = 1e12;
};

// lim d^-n log|h^n(w)|: positive on the basin of infinity, 0 on bounded orbits,
// -inf when the orbit lands on 0.
double G_h_infty(const OneDimPoly& h, Complex w, const EscapeOptions& opt = {});
// max(G_h_infty, 0)
double G_h_infty_plus(const OneDimPoly& h, Complex w, const EscapeOptions& opt = {});
// lim m^-n log|h^n(w)| on the basin of 0 (m >= 2); +inf on escaping orbits.
double G_h_zero(const OneDimPoly& h, Complex w, const EscapeOptions& opt = {});

enum class JuliaMembership { inside_filled, escaping, boundary_band };
std::string to_string(JuliaMembership j);
JuliaMembership julia_membership(const OneDimPoly& h, Complex w, int budget);

// Vertex test by dominance and segment checks over all point pairs.
NewtonPolygon brute_force_polygon(const std::vector<Exponent>& support);

}  // namespace skewdyn::oracles
