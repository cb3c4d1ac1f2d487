import json
from fractions import Fraction as F
from math import comb

import mpmath
import pytest
import sympy

from signiter.exact import Poly, poly_gcd
from signiter.minimal import verify_order_conditions
from signiter.pade import (
    IterationError,
    IterationSpec,
    PadeError,
    PadePair,
    build_phi,
    family_table,
    pade_approximant,
    reciprocal_pair,
    series_coefficients,
    substitute_one_minus_z_squared,
)

ALL_SPECS = [(m, 2 * s - 1 - m) for s in range(2, 7) for m in range(2 * s)]


def central_binomial(k):
    return F(comb(2 * k, k), 4**k)


def test_series_examples():
    assert series_coefficients("inv-sqrt", 4).coeffs == (1, F(1, 2), F(3, 8), F(5, 16))
    assert series_coefficients("sqrt", 4).coeffs == (1, F(-1, 2), F(-1, 8), F(-1, 16))
    assert series_coefficients("inv-sqrt", 1).coeffs == (1,)
    with pytest.raises(ValueError):
        series_coefficients("inv-sqrt", 0)
    with pytest.raises(ValueError):
        series_coefficients("log", 3)


def test_series_against_central_binomials():
    inv = series_coefficients("inv-sqrt", 20)
    sq = series_coefficients("sqrt", 20)
    for k in range(20):
        assert inv[k] == central_binomial(k)
        if k:
            assert sq[k] == -central_binomial(k) / (2 * k - 1)
            assert inv[k] > 0 and sq[k] < 0


def test_pade_examples():
    inv = series_coefficients("inv-sqrt", 3)
    p11 = pade_approximant(inv, 1, 1)
    assert (p11.P, p11.Q) == (Poly([1, F(-1, 4)]), Poly([1, F(-3, 4)]))
    p10 = pade_approximant(inv, 1, 0)
    assert (p10.P, p10.Q) == (Poly([1, F(1, 2)]), Poly([1]))
    p00 = pade_approximant(series_coefficients("sqrt", 1), 0, 0)
    assert (p00.P, p00.Q) == (Poly([1]), Poly([1]))
    with pytest.raises(ValueError):
        pade_approximant(inv, 2, 2)


def test_singular_pade_system_raises():
    # series 1 + 0*x + x^2: the (1, 1) system reads 0*q1 = -1
    from signiter.pade import PowerSeries

    s = PowerSeries((F(1), F(0), F(1)), "inv-sqrt")
    with pytest.raises(PadeError):
        pade_approximant(s, 1, 1)


@pytest.mark.parametrize("kind", ["inv-sqrt", "sqrt"])
@pytest.mark.parametrize("mu,ell", [(0, 1), (1, 1), (2, 1), (1, 2), (3, 3), (4, 2), (2, 5)])
def test_pade_matches_mpmath(kind, mu, ell):
    series = series_coefficients(kind, mu + ell + 1)
    pair = pade_approximant(series, mu, ell)
    assert pair.Q[0] == 1
    assert all(r == 0 for r in pair.residual(series))
    with mpmath.workdps(50):
        alpha = mpmath.mpf(-1) / 2 if kind == "inv-sqrt" else mpmath.mpf(1) / 2
        taylor = mpmath.taylor(lambda x: (1 - x) ** alpha, 0, mu + ell)
        p, q = mpmath.pade(taylor, mu, ell)
        for k, c in enumerate(p):
            assert abs(mpmath.mpf(pair.P[k].numerator) / pair.P[k].denominator - c) < 1e-35
        for k, c in enumerate(q):
            assert abs(mpmath.mpf(pair.Q[k].numerator) / pair.Q[k].denominator - c) < 1e-35


def test_reciprocal_examples():
    r = reciprocal_pair(PadePair(Poly([1, F(-1, 4)]), Poly([1, F(-3, 4)]), 1, 1))
    assert (r.P, r.Q) == (Poly([1, F(-3, 4)]), Poly([1, F(-1, 4)]))
    r = reciprocal_pair(PadePair(Poly([1, F(1, 2)]), Poly([1]), 1, 0))
    assert (r.P, r.Q, r.mu, r.ell) == (Poly([1]), Poly([1, F(1, 2)]), 0, 1)
    with pytest.raises(PadeError):
        reciprocal_pair(PadePair(Poly([0, 1]), Poly([1]), 1, 0))


@pytest.mark.parametrize("mu,ell", [(0, 1), (1, 0), (1, 1), (2, 3), (4, 1), (3, 3)])
def test_reciprocal_is_sqrt_approximant(mu, ell):
    inv = pade_approximant(series_coefficients("inv-sqrt", mu + ell + 1), mu, ell)
    sq_series = series_coefficients("sqrt", mu + ell + 1)
    rec = reciprocal_pair(inv)
    assert all(r == 0 for r in rec.residual(sq_series))
    direct = pade_approximant(sq_series, ell, mu)
    assert (direct.P, direct.Q) == (rec.P, rec.Q)


def test_substitution_examples():
    assert substitute_one_minus_z_squared(Poly([1, F(1, 2)])) == Poly([F(3, 2), 0, F(-1, 2)])
    assert substitute_one_minus_z_squared(Poly([0, 1])) == Poly([1, 0, -1])
    assert substitute_one_minus_z_squared(Poly([1, F(-3, 4)])) == Poly([F(1, 4), 0, F(3, 4)])


def test_named_iterations():
    newton = build_phi(2, 1)
    assert (newton.num, newton.den, newton.family, newton.s) == (
        Poly([1, 0, 1]), Poly([0, 2]), "reciprocal-pade", 2)
    ns = build_phi(3, 0)
    assert (ns.num, ns.den, ns.family) == (Poly([0, 3, 0, -1]), Poly([2]), "pade")
    halley = build_phi(3, 2)
    assert (halley.num, halley.den, halley.s) == (Poly([0, 3, 0, 1]), Poly([1, 0, 3]), 3)


@pytest.mark.parametrize("m,n,msg", [
    (2, 2, r"m\+n must be odd"),
    (1, 0, "trivial"),
    (0, 1, "at least 2"),
    (-1, 4, "nonnegative"),
])
def test_build_phi_errors(m, n, msg):
    with pytest.raises(IterationError, match=msg):
        build_phi(m, n)


@pytest.mark.parametrize("m,n", ALL_SPECS)
def test_spec_invariants(m, n):
    spec = build_phi(m, n)
    assert spec.num.degree == m and spec.den.degree == n
    assert spec.m + spec.n == 2 * spec.s - 1
    assert spec.family == ("pade" if m % 2 else "reciprocal-pade")
    assert poly_gcd(spec.num, spec.den) == Poly([1])
    # odd function: one polynomial odd, the other even
    assert {spec.num.parity(), spec.den.parity()} == {1, -1}
    assert spec.num.parity() == (-1 if m % 2 else 1)
    coeffs = spec.num.coeffs + spec.den.coeffs
    assert all(c.denominator == 1 for c in coeffs)
    from math import gcd
    from functools import reduce

    assert reduce(gcd, (c.numerator for c in coeffs)) == 1
    assert spec.den.leading > 0
    check = verify_order_conditions(spec.num, spec.den, spec.s)
    assert check.holds and check.strict_at_plus1 and check.strict_at_minus1


@pytest.mark.parametrize("m,n", [(m, n) for m, n in ALL_SPECS if m < n])
def test_reciprocity(m, n):
    f, g = build_phi(m, n), build_phi(n, m)
    lhs, rhs = f.num * g.num, f.den * g.den
    k = lhs.leading / rhs.leading
    assert lhs == rhs.scale(k)


@pytest.mark.parametrize("m,n", [(2, 1), (3, 0), (3, 2), (0, 5), (4, 3), (6, 1)])
def test_error_is_order_s_in_one_minus_z_squared(m, n):
    """phi(z) - sign(z) vanishes to order s at z = 1, checked by sympy series."""
    spec = build_phi(m, n)
    z = sympy.symbols("z")
    num = sum(sympy.Rational(c.numerator, c.denominator) * z**k for k, c in enumerate(spec.num.coeffs))
    den = sum(sympy.Rational(c.numerator, c.denominator) * z**k for k, c in enumerate(spec.den.coeffs))
    for point in (1, -1):
        ser = sympy.series(num / den - point, z, point, spec.s + 1).removeO()
        expanded = sympy.expand(ser.subs(z, z + point))
        lowest = min(sympy.Poly(expanded, z).monoms())[0]
        assert lowest == spec.s


def test_family_table():
    t2 = family_table(2)
    assert [(sp.m, sp.n) for sp in t2] == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert any((sp.m, sp.n) == (3, 2) for sp in family_table(3))
    with pytest.raises(IterationError):
        family_table(1)


@pytest.mark.parametrize("m,n", [(2, 1), (3, 2), (0, 7), (8, 5)])
def test_json_round_trip(m, n):
    spec = build_phi(m, n)
    text = spec.to_json()
    d = json.loads(text)
    assert set(d) == {"m", "n", "s", "family", "numerator", "denominator"}
    again = IterationSpec.from_dict(d)
    assert again == spec
    assert again.to_json() == text


def test_from_dict_rejects_inconsistent_record():
    d = build_phi(2, 1).to_dict()
    d["family"] = "pade"
    with pytest.raises(IterationError):
        IterationSpec.from_dict(d)
    d = build_phi(2, 1).to_dict()
    d["m"] = 3
    with pytest.raises(IterationError):
        IterationSpec.from_dict(d)
