import math
from fractions import Fraction

import pytest

import skewdyn


CUBIC = "builtin semiconjugate degenerate 1 4 ; h: 3 1 0 2 1 0\n"


def test_map_round_trip():
    f = skewdyn.Map({2: 1}, {(1, 3): 1, (5, 0): 1})
    assert f.delta == 2
    assert f.support == [(1, 3), (5, 0)]
    g = skewdyn.Map.from_text(f.text)
    assert g.hash == f.hash
    z, w = f(0.5, 0.2)
    assert z == pytest.approx(0.25)
    assert w == pytest.approx(0.5 * 0.2**3 + 0.5**5)


def test_classification_case2_with_d0():
    c = skewdyn.classify(skewdyn.Map({2: 1}, {(1, 3): 1, (5, 0): 1}))
    assert c["case"] == "Case2"
    assert (c["gamma"], c["d"]) == (5, 0)
    assert c["l1"] == Fraction(4, 3)
    assert c["l2"] is None
    assert c["alpha"] == Fraction(5, 2)


def test_newton_polygon():
    vertices, intercepts = skewdyn.newton_polygon([(0, 4), (2, 1), (3, 0), (5, 5)])
    assert vertices == [(0, 4), (2, 1), (3, 0)]
    assert intercepts == [Fraction(4), Fraction(3)]


def escape_rate_cubic(u):
    """Escape rate of h(u) = u^3 + u^2, stopped once the orbit is huge."""
    n = 0
    while abs(u) < 1e50:
        u = u**3 + u**2
        n += 1
    return math.log(abs(u)) / 3**n


def test_green_transport_matches_escape_rate():
    f = skewdyn.Map.from_text(CUBIC)
    z, w = 0.5, 1.5
    g = skewdyn.green(f, "Gza", z, w)
    assert g["termination"] in ("converged", "escaped_with_tail")
    assert g["value"] == pytest.approx(escape_rate_cubic(w / z), abs=1e-6)


def test_green_rejects_unknown_function():
    f = skewdyn.Map({2: 1}, {(1, 3): 1})
    with pytest.raises(ValueError):
        skewdyn.green(f, "nope", 0.5, 0.5)


def test_bottcher_identity_on_monomial():
    f = skewdyn.Map({2: 1}, {(1, 3): 1})
    b = skewdyn.bottcher(f, 0.05, 0.001)
    assert abs(b["phi1"] - 0.05) < 1e-14
    assert abs(b["phi2"] - 0.001) < 1e-14


def test_invariance_and_suite():
    f = skewdyn.Map({2: 1}, {(1, 3): 1})
    rep = skewdyn.verify_invariance(f, "U_l", l=1, r=0.1, samples=2000, seed=3)
    assert rep["violations"] == 0
    ok, text = skewdyn.verify("hull")
    assert ok and "PASS" in text


def test_render_single_pixel(tmp_path):
    base = str(tmp_path / "one")
    values, clamp = skewdyn.render(CUBIC, base, pixels=(1, 1))
    assert len(values) == 1
    with open(base + ".csv") as fh:
        rows = fh.read().strip().splitlines()
    assert len(rows) == 2
    with open(base + ".pgm", "rb") as fh:
        assert fh.read().startswith(b"P5\n1 1\n255\n")
    assert "map_hash" in open(base + ".meta").read()
