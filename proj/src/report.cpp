#include "skewdyn/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "skewdyn/blowup.hpp"
#include "skewdyn/config.hpp"
#include "skewdyn/green.hpp"
#include "skewdyn/mapfile.hpp"
#include "skewdyn/newton.hpp"
#include "skewdyn/weights.hpp"

namespace skewdyn {

namespace {

std::string exps(const std::vector<Exponent>& v) {
    std::string s;
    for (const auto& [i, j] : v) {
        if (!s.empty()) s += ' ';
        s += '(' + std::to_string(i) + ',' + std::to_string(j) + ')';
    }
    return s.empty() ? "none" : s;
}

std::string opt_rat(const std::optional<Rational>& r, const char* empty) { return r ? r->str() : empty; }

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string weight_set(const Classification& c) {
    try {
        switch (c.case_tag) {
            case CaseTag::Case1: return "none (bidisk)";
            case CaseTag::Case2: return interval_case2(c).str();
            case CaseTag::Case3: return interval_case3(c).str();
            case CaseTag::Case4: return rectangle_case4(c).str();
        }
    } catch (const std::exception& e) {
        return std::string("unavailable (") + e.what() + ")";
    }
    return "none";
}

std::string coeff(Complex b) { return format_double(b.real()) + ',' + format_double(b.imag()); }

}  // namespace

std::string analyze_report(const SkewProduct& f, const std::vector<Rational>& weights,
                           const std::optional<Rational>& blowup) {
    const Classification c = classify(f);
    std::ostringstream out;
    char hash[20];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(map_hash(f)));
    out << "map_hash: " << hash << '\n';
    out << "delta: " << c.delta << '\n';
    out << "support: " << exps(f.q().support()) << '\n';
    out << "vertices: " << exps(c.polygon.vertices) << '\n';
    out << "intercepts:";
    if (c.polygon.intercepts.empty()) out << " none";
    for (std::size_t k = 1; k <= c.polygon.intercepts.size(); ++k) out << " T" << k << '=' << c.polygon.T(k).str();
    out << '\n';
    out << "case: " << to_string(c.case_tag) << '\n';
    out << "vertex: " << c.vertex << '\n';
    out << "gamma: " << c.gamma << '\n';
    out << "d: " << c.d << '\n';
    out << "l1: " << c.l1.str() << '\n';
    out << "l2: " << opt_rat(c.l2, "inf") << '\n';
    out << "alpha: " << opt_rat(c.alpha, "undefined") << '\n';
    out << "lambda: " << c.lambda << '\n';
    out << "c_infinity: " << c.c_infinity << '\n';
    out << "two_dominant_terms: " << yes(c.two_dominant_terms) << '\n';
    out << "special_case: " << yes(c.special_case) << '\n';
    out << "d_ge_2: " << yes(c.d_ge_2) << '\n';
    out << "gamma_positive: " << yes(c.gamma_positive) << '\n';
    out << "no_convergence_theorem: " << yes(no_convergence_theorem(c)) << '\n';
    out << "weights: " << weight_set(c) << '\n';
    for (std::size_t k = 0; k < c.dominant.size(); ++k) {
        const Classification t = c.for_term(k);
        const auto& d = c.dominant[k];
        out << "dominant_term_" << k + 1 << ": vertex=" << d.vertex << " (" << c.polygon.n(d.vertex) << ','
            << c.polygon.m(d.vertex) << ") case=" << to_string(d.case_tag) << " gamma=" << d.gamma << " d=" << d.d
            << " l1=" << d.l1.str() << " l2=" << opt_rat(d.l2, "inf") << " alpha=" << opt_rat(t.alpha, "undefined")
            << " weights=" << weight_set(t) << '\n';
    }
    for (const Rational& l : weights) {
        const DValue dv = d_value(f.q(), l);
        out << "D_l[" << l.str() << "]: " << dv.d_min.str() << " attained_at=" << exps(dv.attaining)
            << " d_star=" << opt_rat(dv.d_star, "none") << '\n';
    }
    if (blowup) {
        const Rational& l = *blowup;
        const BlowupFlags fl = check_blowup_tables(f, c, l);
        out << "blowup_l: " << l.str() << '\n';
        out << "blowup_holomorphic: " << yes(fl.holomorphic) << '\n';
        out << "blowup_superattracting: " << yes(fl.superattracting) << '\n';
        out << "blowup_degenerates: " << yes(fl.degenerates) << '\n';
        if (l.is_integer() && l.num() >= 1) {
            try {
                const BlowupResult r = blowup_pi1(f, static_cast<int>(l.num()));
                out << "blowup_gamma_tilde: " << r.gamma_tilde.str() << '\n';
                out << "blowup_d_tilde: " << r.d_tilde.str() << '\n';
                out << "blowup_approximate: " << yes(r.approximate) << '\n';
                out << "blowup_q_tilde:";
                for (const auto& [e, b] : r.q_tilde.terms()) {
                    out << " (" << e.first << ',' << e.second << ")=" << coeff(b);
                }
                out << '\n';
            } catch (const std::domain_error& e) {
                out << "blowup_q_tilde: unavailable (" << e.what() << ")\n";
            }
        } else {
            out << "blowup_q_tilde: unavailable (non-integer weight; flags from the polygon only)\n";
        }
    }
    return out.str();
}

}  // namespace skewdyn
