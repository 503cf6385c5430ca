#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "skewdyn/bottcher.hpp"
#include "skewdyn/config.hpp"
#include "skewdyn/mapfile.hpp"
#include "skewdyn/render.hpp"
#include "skewdyn/report.hpp"
#include "skewdyn/verify.hpp"

namespace py = pybind11;
using namespace skewdyn;

namespace {

py::object fraction(const Rational& r) { return py::module_::import("fractions").attr("Fraction")(r.num(), r.den()); }

py::object opt_fraction(const std::optional<Rational>& r) { return r ? fraction(*r) : py::none(); }

Rational to_rational(py::handle h) {
    if (py::isinstance<py::int_>(h)) return Rational(h.cast<std::int64_t>());
    return Rational::parse(py::str(h).cast<std::string>());
}

RunConfig make_config(int n_max, double tol, double escape_radius, std::uint64_t seed, int threads) {
    RunConfig cfg;
    cfg.n_max = n_max;
    cfg.tol = tol;
    cfg.escape_radius = escape_radius;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.validate();
    return cfg;
}

py::dict classification_dict(const SkewProduct& f) {
    const Classification c = classify(f);
    py::list intercepts;
    for (const auto& t : c.polygon.intercepts) intercepts.append(fraction(t));
    py::list dominant;
    for (const auto& d : c.dominant) {
        py::dict e;
        e["vertex"] = d.vertex;
        e["case"] = to_string(d.case_tag);
        e["gamma"] = d.gamma;
        e["d"] = d.d;
        e["l1"] = fraction(d.l1);
        e["l2"] = opt_fraction(d.l2);
        dominant.append(e);
    }
    py::dict out;
    out["delta"] = c.delta;
    out["vertices"] = c.polygon.vertices;
    out["intercepts"] = intercepts;
    out["case"] = to_string(c.case_tag);
    out["vertex"] = c.vertex;
    out["gamma"] = c.gamma;
    out["d"] = c.d;
    out["l1"] = fraction(c.l1);
    out["l2"] = opt_fraction(c.l2);
    out["alpha"] = opt_fraction(c.alpha);
    out["lambda"] = c.lambda;
    out["c_infinity"] = c.c_infinity;
    out["two_dominant_terms"] = c.two_dominant_terms;
    out["special_case"] = c.special_case;
    out["no_convergence_theorem"] = no_convergence_theorem(c);
    out["dominant"] = dominant;
    return out;
}

WedgeSpec make_wedge(const std::string& family, py::handle l, py::handle l_second, double r, double r2, double r3) {
    WedgeSpec s;
    s.family = parse_wedge_family(family);
    s.l = to_rational(l);
    s.l_second = to_rational(l_second);
    s.r = r;
    s.r2 = r2;
    s.r3 = r3;
    s.validate();
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Polynomial skew products: Newton polygons, weighted Green functions, Bottcher coordinates";

    py::class_<SkewProduct>(m, "Map")
        .def(py::init([](const std::map<int, Complex>& p, const std::map<Exponent, Complex>& q) {
                 return SkewProduct(UniPoly(p), BiPoly(q));
             }),
             py::arg("p"), py::arg("q"))
        .def_static(
            "from_text", [](const std::string& text) { return parse_map(text).map; }, py::arg("text"))
        .def_static(
            "load", [](const std::string& path) { return load_map_file(path).map; }, py::arg("path"))
        .def_property_readonly("delta", &SkewProduct::delta)
        .def_property_readonly("support", [](const SkewProduct& f) { return f.q().support(); })
        .def_property_readonly("p_terms", [](const SkewProduct& f) { return f.p().terms(); })
        .def_property_readonly("q_terms", [](const SkewProduct& f) { return f.q().terms(); })
        .def_property_readonly("text", [](const SkewProduct& f) { return format_map(f); })
        .def_property_readonly("hash", [](const SkewProduct& f) { return map_hash(f); })
        .def("__call__",
             [](const SkewProduct& f, Complex z, Complex w) {
                 const Point2 r = eval_skew(f, z, w);
                 return std::make_pair(r.z, r.w);
             })
        .def("__repr__", [](const SkewProduct& f) { return "<skewdyn.Map delta=" + std::to_string(f.delta()) + ">"; });

    m.def(
        "newton_polygon",
        [](const std::vector<Exponent>& support) {
            const NewtonPolygon np = newton_polygon(support);
            py::list t;
            for (const auto& r : np.intercepts) t.append(fraction(r));
            return py::make_tuple(np.vertices, t);
        },
        py::arg("support"), "Vertices and intercepts T_k of the lower Newton polygon of a support.");

    m.def("classify", &classification_dict, py::arg("map"), "Case, dominant term, weights and alpha of a map.");

    m.def(
        "analyze",
        [](const SkewProduct& f, const std::vector<py::object>& weights, py::object blowup) {
            std::vector<Rational> ws;
            for (const auto& w : weights) ws.push_back(to_rational(w));
            std::optional<Rational> bl;
            if (!blowup.is_none()) bl = to_rational(blowup);
            return analyze_report(f, ws, bl);
        },
        py::arg("map"), py::arg("weights") = std::vector<py::object>{}, py::arg("blowup") = py::none());

    m.def(
        "green",
        [](const SkewProduct& f, const std::string& function, Complex z, Complex w, int n_max, double tol,
           double escape_radius) {
            const GreenEstimate e =
                evaluate(parse_green_function(function), f, classify(f), z, w, GreenOptions{n_max, tol, escape_radius});
            py::dict out;
            out["value"] = e.value;
            out["n_used"] = e.n_used;
            out["termination"] = to_string(e.termination);
            out["residual"] = e.residual;
            out["no_theorem"] = e.no_theorem;
            return out;
        },
        py::arg("map"), py::arg("function"), py::arg("z"), py::arg("w"), py::arg("n_max") = 64,
        py::arg("tol") = 1e-10, py::arg("escape_radius") = 1e12,
        "Evaluate Gp, Gza, Gzi, Gzap, Gz, Gf or Gfa at (z, w).");

    m.def(
        "bottcher",
        [](const SkewProduct& f, Complex z, Complex w, double r, int n_max) {
            const Classification c = classify(f);
            BottcherOptions bo;
            bo.n_max = n_max;
            const BottcherEstimate e = bottcher(f, c, dominant_wedge(c, r), z, w, bo);
            py::dict out;
            out["phi1"] = e.phi1;
            out["phi2"] = e.phi2;
            out["n_used"] = e.n_used;
            out["conj_residual"] = e.conj_residual;
            out["id_deviation"] = e.id_deviation;
            out["no_theorem"] = e.no_theorem;
            return out;
        },
        py::arg("map"), py::arg("z"), py::arg("w"), py::arg("r") = 0.1, py::arg("n_max") = 64,
        "Bottcher coordinates on the dominant wedge of radius r.");

    m.def(
        "verify_invariance",
        [](const SkewProduct& f, const std::string& family, py::object l, py::object l_second, double r, double r2,
           double r3, std::uint64_t samples, std::uint64_t seed) {
            const auto rep = verify_invariance(f, make_wedge(family, l, l_second, r, r2, r3), samples, seed);
            py::list witnesses;
            for (const auto& w : rep.witnesses) {
                witnesses.append(py::make_tuple(w.index, py::make_tuple(w.point.z, w.point.w),
                                                py::make_tuple(w.image.z, w.image.w)));
            }
            py::dict out;
            out["samples"] = rep.samples;
            out["violations"] = rep.violations;
            out["witnesses"] = witnesses;
            return out;
        },
        py::arg("map"), py::arg("family"), py::arg("l") = 0, py::arg("l_second") = 0, py::arg("r") = 0.1,
        py::arg("r2") = 0.1, py::arg("r3") = 1.0, py::arg("samples") = 10000, py::arg("seed") = 1);

    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed, int n_max, double tol) {
            std::ostringstream out;
            const bool ok = run_suite(suite, make_config(n_max, tol, 1e12, seed, 1), out);
            return py::make_tuple(ok, out.str());
        },
        py::arg("suite") = "all", py::arg("seed") = 1, py::arg("n_max") = 64, py::arg("tol") = 1e-10,
        "Run a named invariant suite; returns (passed, report).");

    m.def(
        "render",
        [](const std::string& map_text, const std::string& out_base, const std::string& function,
           const std::string& slice, Complex fixed, Complex center, double width, double height,
           std::pair<int, int> pixels, std::optional<std::pair<double, double>> clamp, int threads) {
            RenderJob job(parse_map(map_text), "python");
            job.out_base = out_base;
            job.function = parse_green_function(function);
            job.slice = parse_slice(slice);
            job.fixed = fixed;
            job.center = center;
            job.width = width;
            job.height = height;
            job.pixels_x = pixels.first;
            job.pixels_y = pixels.second;
            job.clamp = clamp;
            RenderResult r;
            {
                py::gil_scoped_release release;
                r = render(job, make_config(64, 1e-10, 1e12, 1, threads));
            }
            std::vector<double> values;
            values.reserve(r.values.size());
            for (const auto& e : r.values) values.push_back(e.value);
            return py::make_tuple(values, py::make_tuple(r.clamp_lo, r.clamp_hi));
        },
        py::arg("map_text"), py::arg("out_base"), py::arg("function") = "Gzap", py::arg("slice") = "fiber",
        py::arg("fixed") = Complex(0.5, 0.0), py::arg("center") = Complex(0.0, 0.0), py::arg("width") = 2.0,
        py::arg("height") = 2.0, py::arg("pixels") = std::make_pair(64, 64), py::arg("clamp") = py::none(),
        py::arg("threads") = 1, "Write <out_base>.pgm/.csv/.meta; returns (values, (lo, hi)).");

}
