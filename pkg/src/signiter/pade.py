"""Padé approximants to (1 - xi)^(-1/2), (1 - xi)^(1/2) and the sign iterations built from them.

With ``xi = 1 - z^2`` the identities ``sign(z) = z (1 - xi)^(-1/2)`` and
``sign(z) = (1 - xi)^(1/2) / z`` turn each Padé approximant into a rational
fixed-point iteration.  ``build_phi(m, n)`` returns the member with numerator
degree ``m`` and denominator degree ``n``:

* ``m`` odd: ``phi = z P(1 - z^2) / Q(1 - z^2)`` with ``P/Q`` the
  ``((m-1)/2, n/2)`` approximant to ``(1 - xi)^(-1/2)`` (Padé family);
* ``m`` even: ``phi = Q(1 - z^2) / (z P(1 - z^2))`` with ``P/Q`` the
  ``((n-1)/2, m/2)`` approximant to ``(1 - xi)^(-1/2)`` (reciprocal family).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .exact import ExactArithmeticError, Poly, integer_content_scale, poly_gcd, solve

SeriesKind = Literal["inv-sqrt", "sqrt"]
Family = Literal["pade", "reciprocal-pade"]

_ALPHA = {"inv-sqrt": Fraction(-1, 2), "sqrt": Fraction(1, 2)}


class PadeError(ValueError):
    """Raised when a Padé approximant cannot be formed."""


class IterationError(ValueError):
    """Raised for (m, n) pairs outside the iteration family."""


@dataclass(frozen=True)
class PowerSeries:
    """Truncated Taylor series of ``(1 - xi)^alpha`` at ``xi = 0``."""

    coeffs: tuple[Fraction, ...]
    alpha: SeriesKind

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class PadePair:
    """``P/Q`` with ``deg P <= mu``, ``deg Q <= ell`` and ``Q(0) = 1``."""

    P: Poly
    Q: Poly
    mu: int
    ell: int

    def residual(self, series: PowerSeries) -> list[Fraction]:
        """Coefficients 0..mu+ell of ``h*Q - P``; all zero for a true approximant."""
        N = self.mu + self.ell
        return [
            sum((self.Q[j] * series[i - j] for j in range(min(i, self.ell) + 1)), Fraction(0))
            - self.P[i]
            for i in range(N + 1)
        ]


def series_coefficients(alpha: SeriesKind, count: int) -> PowerSeries:
    """First ``count`` Taylor coefficients of ``(1 - xi)^alpha``, alpha = -1/2 or 1/2.

    Uses the binomial recurrence ``c[k+1] = c[k] (k - alpha) / (k + 1)``.
    """
    if alpha not in _ALPHA:
        raise ValueError(f"unsupported series {alpha!r}; expected 'inv-sqrt' or 'sqrt'")
    if count < 1:
        raise ValueError("count must be at least 1")
    a = _ALPHA[alpha]
    c = [Fraction(1)]
    for k in range(count - 1):
        c.append(c[-1] * (k - a) / (k + 1))
    return PowerSeries(tuple(c), alpha)


def pade_approximant(series: PowerSeries, mu: int, ell: int) -> PadePair:
    """Exact ``(mu, ell)`` Padé approximant by solving the coefficient-matching system.

    The denominator is normalized with ``Q(0) = 1``; its remaining coefficients
    solve ``sum_j q_j c_{i-j} = 0`` for ``i = mu+1 .. mu+ell``.
    """
    if mu < 0 or ell < 0:
        raise ValueError("Padé indices must be nonnegative")
    if len(series) < mu + ell + 1:
        raise ValueError(f"need {mu + ell + 1} series coefficients, got {len(series)}")
    c = series
    if ell:
        rows = [[c[i - j] for j in range(1, ell + 1)] for i in range(mu + 1, mu + ell + 1)]
        rhs = [-c[i] for i in range(mu + 1, mu + ell + 1)]
        try:
            q = [Fraction(1)] + solve(rows, rhs)
        except ExactArithmeticError as exc:
            raise PadeError(f"singular Padé system for ({mu}, {ell})") from exc
    else:
        q = [Fraction(1)]
    p = [sum((q[j] * c[i - j] for j in range(min(i, ell) + 1)), Fraction(0)) for i in range(mu + 1)]
    return PadePair(Poly(p), Poly(q), mu, ell)


def reciprocal_pair(pair: PadePair) -> PadePair:
    """Approximant ``Q/P`` to ``1/h`` with indices swapped, renormalized so ``P(0)`` becomes 1."""
    p0 = pair.P[0]
    if p0 == 0:
        raise PadeError("reciprocal needs a numerator with nonzero constant term")
    return PadePair(pair.Q.scale(1 / p0), pair.P.scale(1 / p0), pair.ell, pair.mu)


def substitute_one_minus_z_squared(p: Poly) -> Poly:
    """Return ``p(1 - z^2)``."""
    return p.compose(Poly([1, 0, -1]))


def canonical_pair(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Fix the free scalar of a rational function ``a/b``.

    Coefficients become coprime integers and the leading coefficient of ``b``
    is positive (of ``a`` when ``b`` is zero).
    """
    k = integer_content_scale(a.coeffs + b.coeffs)
    ref = b.leading if not b.is_zero() else a.leading
    if ref < 0:
        k = -k
    return a.scale(k), b.scale(k)


@dataclass(frozen=True)
class IterationSpec:
    """A sign iteration ``z -> num(z)/den(z)`` in canonical form."""

    m: int
    n: int
    s: int
    family: Family
    num: Poly
    den: Poly

    @property
    def label(self) -> str:
        return f"phi_{{{self.m},{self.n}}}"

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "s": self.s,
            "family": self.family,
            "numerator": self.num.to_strings(),
            "denominator": self.den.to_strings(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> IterationSpec:
        num = Poly.from_strings(d["numerator"])
        den = Poly.from_strings(d["denominator"])
        num, den = canonical_pair(num, den)
        spec = cls(int(d["m"]), int(d["n"]), int(d["s"]), d["family"], num, den)
        _check_spec(spec)
        return spec


def _check_spec(spec: IterationSpec) -> None:
    if spec.num.degree != spec.m or spec.den.degree != spec.n:
        raise IterationError(
            f"degrees ({spec.num.degree}, {spec.den.degree}) do not match ({spec.m}, {spec.n})"
        )
    if spec.m + spec.n != 2 * spec.s - 1:
        raise IterationError("m + n must equal 2s - 1")
    if poly_gcd(spec.num, spec.den).degree != 0:
        raise IterationError("numerator and denominator are not coprime")
    expected = "pade" if spec.m % 2 else "reciprocal-pade"
    if spec.family != expected:
        raise IterationError(f"family should be {expected!r} for m = {spec.m}")


def validate_degrees(m: int, n: int) -> int:
    """Check ``(m, n)`` indexes a family member and return its order ``s``."""
    if m < 0 or n < 0:
        raise IterationError("m and n must be nonnegative")
    if (m + n) % 2 == 0:
        raise IterationError("m+n must be odd")
    if (m, n) == (1, 0):
        raise IterationError("(m, n) = (1, 0) is the trivial iteration z -> z")
    if m + n < 3:
        raise IterationError("order s = (m+n+1)/2 must be at least 2")
    return (m + n + 1) // 2


def build_phi(m: int, n: int) -> IterationSpec:
    """Padé (m odd) or reciprocal Padé (m even) iteration with degrees ``(m, n)``.

    >>> spec = build_phi(2, 1)
    >>> spec.num, spec.den
    (Poly('1 + z^2'), Poly('2*z'))
    """
    s = validate_degrees(m, n)
    zpoly = Poly.z()
    if m % 2:
        approx = pade_approximant(series_coefficients("inv-sqrt", s), (m - 1) // 2, n // 2)
        num = zpoly * substitute_one_minus_z_squared(approx.P)
        den = substitute_one_minus_z_squared(approx.Q)
        family: Family = "pade"
    else:
        # (m/2, (n-1)/2) approximant to sqrt(1 - xi), obtained from the inv-sqrt table
        inv = pade_approximant(series_coefficients("inv-sqrt", s), (n - 1) // 2, m // 2)
        approx = reciprocal_pair(inv)
        num = substitute_one_minus_z_squared(approx.P)
        den = zpoly * substitute_one_minus_z_squared(approx.Q)
        family = "reciprocal-pade"
    num, den = canonical_pair(num, den)
    spec = IterationSpec(m, n, s, family, num, den)
    _check_spec(spec)
    return spec


def family_table(s: int) -> list[IterationSpec]:
    """All ``2s`` members of order ``s``, in ascending ``m``."""
    if s < 2:
        raise IterationError("order s must be at least 2")
    return [build_phi(m, 2 * s - 1 - m) for m in range(2 * s)]
