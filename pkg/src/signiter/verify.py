"""Exact certification of the minimal-degree property for orders 2..s_max.

For each order ``s`` the suite checks

* ``scan``: nullity 0 below the degree bound and nullity 1 (with strict
  s-th derivative inequalities) on it, for nonnegative degrees;
* ``endpoint``: the polynomial-only pairs ``(2s, -1)`` and ``(-1, 2s)``;
* ``three-way``: Padé construction, integration recursion and nullspace agree;
* ``exact-order``: every family member has order exactly ``s`` at +-1;
* ``reciprocity``: ``phi_{m,n} * phi_{n,m} == 1``;
* ``derivative``: the derivative of the ``(m, n)`` pair is the ``(m-1, n-1)`` pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import Poly
from .minimal import (
    construct_by_nullspace,
    construct_by_recursion,
    equal_up_to_scalar,
    exact_order_at_fixed_points,
    optimality_scan,
    scan_pair,
    verify_order_conditions,
)
from .pade import build_phi


@dataclass(frozen=True)
class Check:
    kind: str
    s: int
    m: int
    n: int
    passed: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{mark}  {self.kind:<12} s={self.s} (m,n)=({self.m},{self.n}){tail}"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "s": self.s, "m": self.m, "n": self.n,
                "passed": self.passed, "detail": self.detail}


def reciprocity_holds(m: int, n: int) -> bool:
    """``num_mn num_nm`` and ``den_mn den_nm`` are proportional."""
    f, g = build_phi(m, n), build_phi(n, m)
    return equal_up_to_scalar((f.num * g.num, Poly([1])), (f.den * g.den, Poly([1])))


def checks_for_order(s: int) -> list[Check]:
    out: list[Check] = []
    for r in optimality_scan(s).records:
        detail = f"nullity={r.nullity}"
        if r.strict is not None:
            detail += f" strict={r.strict}"
        out.append(Check("scan", s, r.m, r.n, r.certified, detail))

    base = Poly([-1, 0, 1]) ** s
    for m, n, expected in ((2 * s, -1, (base, Poly())), (-1, 2 * s, (Poly(), base))):
        rec = scan_pair(m, n, s)
        pair = construct_by_recursion(m, n)
        ok = rec.nullity == 1 and equal_up_to_scalar((pair.a, pair.b), expected)
        out.append(Check("endpoint", s, m, n, ok, f"nullity={rec.nullity}"))

    for m in range(2 * s):
        n = 2 * s - 1 - m
        spec = build_phi(m, n)
        rec = construct_by_recursion(m, n)
        nul = construct_by_nullspace(m, n)
        p = (spec.num, spec.den)
        ok = equal_up_to_scalar(p, (rec.a, rec.b)) and equal_up_to_scalar(p, (nul.a, nul.b))
        out.append(Check("three-way", s, m, n, ok))

        chk = verify_order_conditions(spec.num, spec.den, s)
        order = exact_order_at_fixed_points(spec.num, spec.den)
        out.append(Check("exact-order", s, m, n, chk.exact and order == s, f"order={order}"))

        out.append(Check("reciprocity", s, m, n, reciprocity_holds(m, n)))

        if min(m, n) >= 0:
            lower = construct_by_recursion(m - 1, n - 1)
            ok = equal_up_to_scalar((rec.a.derivative(), rec.b.derivative()), (lower.a, lower.b))
            out.append(Check("derivative", s, m, n, ok))
    return out


def run_verification(s_max: int) -> list[Check]:
    if s_max < 2:
        raise ValueError("s_max must be at least 2")
    checks: list[Check] = []
    for s in range(2, s_max + 1):
        checks.extend(checks_for_order(s))
    return checks
