"""Order conditions at +-1 and the minimal-degree polynomial pairs satisfying them.

A rational iteration ``a/b`` has order at least ``s`` at both square roots of
unity exactly when

    a^(k)(1) = b^(k)(1),   a^(k)(-1) = -b^(k)(-1),   k = 0, ..., s-1.

These 2s linear conditions admit no nonzero solution with
``deg a + deg b < 2s - 1`` and a one-dimensional solution space when
``deg a + deg b = 2s - 1``.  This module builds that solution two ways (by
integrating up from a base case, and as an exact nullspace) and scans the
degree lattice to certify the bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Poly, falling_factorial, nullspace
from .pade import canonical_pair


class OrderError(ValueError):
    """Raised when polynomials do not define a fixed point at +-1, or on invalid degrees."""


@dataclass(frozen=True)
class OrderConditionSystem:
    """Exact ``2s x (m+n+2)`` system; columns are coefficients of ``a`` then ``b``.

    Row ``2k`` encodes ``a^(k)(1) - b^(k)(1) = 0``, row ``2k+1`` encodes
    ``a^(k)(-1) + b^(k)(-1) = 0``.
    """

    s: int
    m: int
    n: int
    matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def ncols(self) -> int:
        return self.m + self.n + 2

    def split(self, v: Sequence[Fraction]) -> tuple[Poly, Poly]:
        return Poly(v[: self.m + 1]), Poly(v[self.m + 1 :])


@dataclass(frozen=True)
class MinimalPair:
    a: Poly
    b: Poly
    m: int
    n: int
    s: int


@dataclass(frozen=True)
class OrderCheck:
    holds: bool
    strict_at_plus1: bool
    strict_at_minus1: bool

    @property
    def exact(self) -> bool:
        return self.holds and self.strict_at_plus1 and self.strict_at_minus1


def order_condition_matrix(m: int, n: int, s: int) -> OrderConditionSystem:
    if s < 1:
        raise OrderError("s must be at least 1")
    if m < -1 or n < -1:
        raise OrderError("degrees must be at least -1")
    rows = []
    for k in range(s):
        for x, sgn in ((1, -1), (-1, 1)):
            row = [Fraction(falling_factorial(j, k) * x ** max(j - k, 0)) for j in range(m + 1)]
            row += [Fraction(sgn * falling_factorial(j, k) * x ** max(j - k, 0)) for j in range(n + 1)]
            rows.append(tuple(row))
    return OrderConditionSystem(s, m, n, tuple(rows))


def exact_nullspace(system: OrderConditionSystem) -> list[list[Fraction]]:
    """Nullspace basis by fraction-preserving Gauss-Jordan elimination."""
    return nullspace(system.matrix, system.ncols)


def nullity(m: int, n: int, s: int) -> int:
    return len(exact_nullspace(order_condition_matrix(m, n, s)))


def construct_by_nullspace(m: int, n: int) -> MinimalPair:
    """The minimal pair of degrees ``(m, n)`` read off the one-dimensional nullspace."""
    s = _order_from_degrees(m, n)
    system = order_condition_matrix(m, n, s)
    basis = exact_nullspace(system)
    if len(basis) != 1:
        raise OrderError(f"expected nullity 1 for ({m}, {n}), found {len(basis)}")
    a, b = canonical_pair(*system.split(basis[0]))
    return MinimalPair(a, b, m, n, s)


def _order_from_degrees(m: int, n: int) -> int:
    if min(m, n) < -1:
        raise OrderError("degrees must be at least -1")
    if (m + n) % 2 == 0 or m + n < 1:
        raise OrderError("m+n must be odd and positive")
    return (m + n + 1) // 2


def _recursion(m: int, n: int) -> tuple[Poly, Poly]:
    s = (m + n + 1) // 2
    base = Poly([-1, 0, 1]) ** s
    if n == -1:
        return base, Poly()
    if m == -1:
        return Poly(), base
    if s == 1:
        # remaining shapes at s = 1 are (1, 0) and (0, 1)
        return (Poly.z(), Poly([1])) if m == 1 else (Poly([1]), Poly.z())
    a1, b1 = _recursion(m - 1, n - 1)
    A, B = a1.antiderivative(), b1.antiderivative()
    A1, Am1, B1, Bm1 = A(1), A(-1), B(1), B(-1)
    a = A + (B1 - Bm1 - A1 - Am1) / 2
    b = B + (A1 - Am1 - B1 - Bm1) / 2
    return a, b


def construct_by_recursion(m: int, n: int) -> MinimalPair:
    """Minimal pair by descending to a base case and integrating back up.

    Each level adds the constants that restore ``a(1) = b(1)`` and
    ``a(-1) = -b(-1)`` to the primitives of the previous level, with unit
    scale factor; the pair is canonically rescaled once at the end.
    """
    s = _order_from_degrees(m, n)
    a, b = canonical_pair(*_recursion(m, n))
    return MinimalPair(a, b, m, n, s)


def verify_order_conditions(a: Poly, b: Poly, s: int) -> OrderCheck:
    if s < 1:
        raise OrderError("s must be at least 1")
    holds = all(
        a.eval_derivative_at(k, 1) == b.eval_derivative_at(k, 1)
        and a.eval_derivative_at(k, -1) == -b.eval_derivative_at(k, -1)
        for k in range(s)
    )
    return OrderCheck(
        holds,
        a.eval_derivative_at(s, 1) != b.eval_derivative_at(s, 1),
        a.eval_derivative_at(s, -1) != -b.eval_derivative_at(s, -1),
    )


def exact_order_at_fixed_points(a: Poly, b: Poly) -> int:
    """Common exact order of convergence of ``a/b`` at 1 and -1."""
    if a(1) != b(1) or b(1) == 0 or a(-1) != -b(-1) or b(-1) == 0:
        raise OrderError("not a fixed point of the iteration")
    orders = []
    for x in (1, -1):
        # a - x*b is a nonzero polynomial here, so some derivative differs
        k = 1
        while a.eval_derivative_at(k, x) == x * b.eval_derivative_at(k, x):
            k += 1
        orders.append(k)
    return min(orders)


def equal_up_to_scalar(p1: tuple[Poly, Poly], p2: tuple[Poly, Poly]) -> bool:
    if all(p.is_zero() for p in p1) or all(p.is_zero() for p in p2):
        return all(p.is_zero() for p in p1) and all(p.is_zero() for p in p2)
    return canonical_pair(*p1) == canonical_pair(*p2)


@dataclass(frozen=True)
class ScanRecord:
    m: int
    n: int
    s: int
    nullity: int
    strict: bool | None
    expected_nullity: int

    @property
    def certified(self) -> bool:
        if self.nullity != self.expected_nullity:
            return False
        return self.strict is not False


@dataclass
class ScanReport:
    s: int
    records: list[ScanRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.certified for r in self.records)

    @property
    def failures(self) -> list[ScanRecord]:
        return [r for r in self.records if not r.certified]

    def to_list(self) -> list[dict]:
        return [
            {"m": r.m, "n": r.n, "s": r.s, "nullity": r.nullity, "strict": r.strict}
            for r in self.records
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_list(), indent=2)


def scan_pair(m: int, n: int, s: int) -> ScanRecord:
    system = order_condition_matrix(m, n, s)
    basis = exact_nullspace(system)
    expected = 1 if m + n == 2 * s - 1 else 0
    strict = None
    if len(basis) == 1:
        check = verify_order_conditions(*system.split(basis[0]), s)
        strict = check.strict_at_plus1 and check.strict_at_minus1
    return ScanRecord(m, n, s, len(basis), strict, expected)


def optimality_scan(s: int) -> ScanReport:
    """Certify the degree bound for order ``s`` over the whole degree lattice.

    Every ``(m', n')`` with ``m', n' >= 0`` and ``m' + n' <= 2s - 1`` is
    checked: nullity 0 below the bound, nullity 1 with strict s-th derivative
    inequalities on it.
    """
    if s < 2:
        raise OrderError("scan requires s >= 2")
    report = ScanReport(s)
    for total in range(2 * s):
        for m in range(total + 1):
            report.records.append(scan_pair(m, total - m, s))
    return report


def endpoint_pairs(s: int) -> list[MinimalPair]:
    """The polynomial-only pairs ``(2s, -1)`` and ``(-1, 2s)``."""
    return [construct_by_recursion(2 * s, -1), construct_by_recursion(-1, 2 * s)]
