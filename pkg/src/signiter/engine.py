"""Floating-point sign iterations for scalars and dense matrices.

Any :class:`~signiter.pade.IterationSpec` can be run here.  Convergence is
local only: no scaling is applied, so starting values (or eigenvalues) far
from +-1 may leave the basin of attraction of some iterations, which is
reported through the ``status`` field rather than corrected.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg as sla

from .exact import Poly
from .pade import IterationSpec

EPS = np.finfo(float).eps
UNDERFLOW_GUARD = 1e-300
OVERFLOW_GUARD = 1e150
# smallest error trusted by the shifted error recurrence (clear of subnormals)
TINY = 1e-280

CONVERGED = "converged"
MAX_ITERATIONS = "max-iterations"
SINGULAR_STEP = "singular-step"
DIVERGED = "diverged"


class SignError(ValueError):
    """Invalid input to a sign computation."""


@dataclass
class ConvergenceReport:
    iterate_count: int = 0
    step_norms: list[float] = field(default_factory=list)
    final_residual_sq: float = float("nan")
    estimated_order: float | None = None
    status: str = MAX_ITERATIONS

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED

    def to_dict(self) -> dict:
        return {
            "iterate_count": self.iterate_count,
            "step_norms": [float(x) for x in self.step_norms],
            "final_residual_sq": float(self.final_residual_sq),
            "estimated_order": None if self.estimated_order is None else float(self.estimated_order),
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def scalar_sign(z: complex) -> int:
    """Nearest square root of unity: +1 for ``Re z > 0``, -1 for ``Re z < 0``."""
    re = complex(z).real
    if re == 0:
        raise SignError("sign undefined on imaginary axis")
    return 1 if re > 0 else -1


def _float_coeffs(p: Poly) -> list[float]:
    return [float(c) for c in p.coeffs]


def horner(coeffs: Sequence[float], z):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def estimate_order(errors: Sequence[float], floor: float = 100 * EPS) -> float | None:
    """Empirical order from consecutive error magnitudes.

    Fits ``log e[k+1] = s log e[k] + c`` by least squares over the usable
    window: the longest trailing run of strictly decreasing errors in
    ``(floor, 1)``.  Returns None when fewer than three such errors remain.

    >>> round(estimate_order([1e-1, 1e-2, 1e-4, 1e-8]), 12)
    2.0
    """
    e = [float(x) for x in errors]
    while e and not (floor < e[-1] < 1):
        e.pop()
    window = e[-1:]
    for x in reversed(e[:-1]):
        if floor < x < 1 and x > window[0]:
            window.insert(0, x)
        else:
            break
    if len(window) < 3:
        return None
    logs = np.log(window)
    slope, _ = np.polyfit(logs[:-1], logs[1:], 1)
    return float(slope)


def shifted_error_polys(spec: IterationSpec, target: int) -> tuple[list[float], list[float]]:
    """Coefficients of ``num(t+w) - t den(t+w)`` and ``den(t+w)`` for ``t = +-1``.

    ``phi(t + w) - t`` is their ratio.  The first ``s`` coefficients of the
    former vanish exactly, so the error recurrence stays accurate long after
    ``|z - t|`` drops below machine precision.
    """
    shift = Poly([target, 1])
    a, b = spec.num.compose(shift), spec.den.compose(shift)
    return _float_coeffs(a - b.scale(target)), _float_coeffs(b)


@dataclass
class ScalarRun:
    """Iterates of a scalar run and their errors against the target root."""

    target: int
    iterates: list[complex] = field(default_factory=list)
    errors: list[float] = field(default_factory=list)


def scalar_iterate(
    spec: IterationSpec,
    z0: complex,
    tol: float = 100 * EPS,
    max_iter: int = 60,
) -> tuple[complex, ConvergenceReport, ScalarRun]:
    """Run ``z -> num(z)/den(z)`` from ``z0``.

    Stops when ``|z_{k+1} - z_k| <= tol |z_{k+1}|``.  Alongside the iterates
    the error ``w_k = z_k - sign(z0)`` is propagated through the shifted
    polynomials of :func:`shifted_error_polys`; the order estimate in the
    report is taken from those errors when the run converges to ``sign(z0)``.
    """
    target = scalar_sign(z0)
    if tol <= 0:
        raise SignError("tol must be positive")
    num, den = _float_coeffs(spec.num), _float_coeffs(spec.den)
    dnum, dden = shifted_error_polys(spec, target)
    z = z0
    w = z0 - target
    run = ScalarRun(target, [z], [abs(w)])
    report = ConvergenceReport()
    for _ in range(max_iter):
        d = horner(den, z)
        if abs(d) < UNDERFLOW_GUARD:
            report.status = SINGULAR_STEP
            break
        znew = horner(num, z) / d
        if not np.isfinite(znew) or abs(znew) > OVERFLOW_GUARD:
            report.status = DIVERGED
            break
        # the shifted form only buys accuracy for small errors; far from the
        # target it can overflow, so fall back to the plain difference
        dw = horner(dden, w) if abs(w) < 1 else 0
        w = horner(dnum, w) / dw if abs(dw) >= UNDERFLOW_GUARD else znew - target
        if not np.isfinite(w):
            w = znew - target
        step = abs(znew - z) / abs(znew) if znew != 0 else abs(znew - z)
        report.step_norms.append(step)
        report.iterate_count += 1
        run.iterates.append(znew)
        run.errors.append(abs(w))
        z = znew
        if step <= tol:
            report.status = CONVERGED
            break
    if abs(z) ** 2 > 0:
        report.final_residual_sq = abs(z * z - 1) / abs(z) ** 2
    if report.converged:
        if scalar_sign(z) == target:
            report.estimated_order = estimate_order(run.errors, floor=TINY)
        else:
            report.estimated_order = estimate_order([abs(v - scalar_sign(z)) for v in run.iterates])
    return z, report, run


def matrix_poly_eval(p: Poly | Sequence[float], X: np.ndarray) -> np.ndarray:
    """``p(X)`` by Horner's scheme ``((c_d X + c_{d-1} I) X + ...)``."""
    X = _as_square(X)
    coeffs = _float_coeffs(p) if isinstance(p, Poly) else list(p)
    dtype = np.result_type(X.dtype, float)
    I = np.eye(X.shape[0], dtype=dtype)
    if not coeffs:
        return np.zeros_like(I)
    acc = coeffs[-1] * I
    for c in reversed(coeffs[:-1]):
        acc = acc @ X + c * I
    return acc


def _as_square(A) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise SignError(f"expected a square matrix, got shape {A.shape}")
    return A


def default_tol(dim: int) -> float:
    return 100 * dim * EPS


def matrix_sign_iterate(
    spec: IterationSpec,
    A,
    tol: float | None = None,
    max_iter: int = 60,
) -> tuple[np.ndarray, ConvergenceReport]:
    """Matrix sign by ``X <- den(X)^{-1} num(X)`` starting from ``X = A``.

    Each step solves ``den(X) Y = num(X)`` with an LU factorization with
    partial pivoting; an ill-conditioned ``den(X)`` stops the run with status
    ``singular-step``.
    """
    A = _as_square(A)
    X = A.astype(np.result_type(A.dtype, float), copy=True)
    if tol is None:
        tol = default_tol(X.shape[0])
    if tol <= 0:
        raise SignError("tol must be positive")
    num, den = _float_coeffs(spec.num), _float_coeffs(spec.den)
    report = ConvergenceReport()
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        X = _matrix_loop(X, num, den, spec.n, tol, max_iter, report)
    report.final_residual_sq = float(
        np.linalg.norm(X @ X - np.eye(X.shape[0])) / np.linalg.norm(X) ** 2
    )
    report.estimated_order = estimate_order(report.step_norms)
    return X, report


def _matrix_loop(X, num, den, n, tol, max_iter, report):
    for _ in range(max_iter):
        N = matrix_poly_eval(num, X)
        if n == 0:
            Xnew = N / den[0]
        else:
            D = matrix_poly_eval(den, X)
            if not (np.all(np.isfinite(D)) and np.all(np.isfinite(N))):
                report.status = DIVERGED
                break
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("error", sla.LinAlgWarning)
                    Xnew = sla.solve(D, N)
            except (np.linalg.LinAlgError, sla.LinAlgWarning):
                report.status = SINGULAR_STEP
                break
        nrm = np.linalg.norm(Xnew)
        if not np.isfinite(nrm) or nrm > OVERFLOW_GUARD:
            report.status = DIVERGED
            break
        step = np.linalg.norm(Xnew - X) / nrm
        report.step_norms.append(float(step))
        report.iterate_count += 1
        X = Xnew
        if step <= tol:
            report.status = CONVERGED
            break
    return X


def sign_residuals(S, A) -> tuple[float, float]:
    """Involution and commutation residuals of a candidate ``S = sign(A)``.

    Returns ``||S^2 - I||_F / max(1, ||S||_F^2)`` and
    ``||SA - AS||_F / (||S||_F ||A||_F)``.
    """
    S, A = _as_square(S), _as_square(A)
    if S.shape != A.shape:
        raise SignError(f"dimension mismatch {S.shape} vs {A.shape}")
    nS = np.linalg.norm(S)
    inv = np.linalg.norm(S @ S - np.eye(S.shape[0])) / max(1.0, nS**2)
    denom = nS * np.linalg.norm(A)
    comm = np.linalg.norm(S @ A - A @ S) / denom if denom else 0.0
    return float(inv), float(comm)


def build_test_matrix(
    eigenvalues: Sequence[complex],
    seed: int,
    perturbation: float = 0.3,
    return_basis: bool = False,
):
    """Seeded ``A = V D V^{-1}`` with known sign ``V sign(D) V^{-1}``.

    ``D`` is ``diag(eigenvalues)``; a conjugate-closed complex spectrum is
    placed in real 2x2 blocks instead so that ``A`` is real.  ``V`` is the identity plus a seeded Gaussian perturbation of spectral
    norm ``perturbation`` (< 1), so ``cond(V) <= (1 + p) / (1 - p)``; the
    default gives ``cond(V) <= 1.86``.  ``perturbation = 0`` gives ``V = I``.
    With ``return_basis`` the triple ``(A, S, V)`` is returned.
    """
    lam = np.asarray(eigenvalues, dtype=complex)
    if lam.size == 0:
        raise SignError("need at least one eigenvalue")
    if not 0 <= perturbation < 1:
        raise SignError("perturbation must lie in [0, 1)")
    for x in lam:
        scalar_sign(x)
    n = lam.size
    rng = np.random.default_rng(seed)
    E = rng.standard_normal((n, n))
    nE = np.linalg.norm(E, 2)
    V = np.eye(n) + (perturbation / nE) * E if nE and perturbation else np.eye(n)
    Vinv = np.linalg.inv(V)
    blocks = _real_blocks(lam)
    if blocks is None:
        D = np.diag(lam)
        sD = np.diag([float(scalar_sign(x)) for x in lam])
    else:
        D, sD = blocks
    A = V @ D @ Vinv
    S = V @ sD @ Vinv
    return (A, S, V) if return_basis else (A, S)


def _real_blocks(lam: np.ndarray):
    """Real block-diagonal form of a conjugate-closed spectrum, or None.

    Each pair ``a +- bi`` becomes ``[[a, b], [-b, a]]``, whose sign is
    ``sign(a) I``.
    """
    if np.all(lam.imag == 0):
        return np.diag(lam.real), np.diag([float(scalar_sign(x)) for x in lam])
    reals = [x.real for x in lam if x.imag == 0]
    upper = sorted((x for x in lam if x.imag > 0), key=lambda x: (x.real, x.imag))
    lower = sorted((x.conjugate() for x in lam if x.imag < 0), key=lambda x: (x.real, x.imag))
    if upper != lower:
        return None
    n = lam.size
    D, sD = np.zeros((n, n)), np.zeros((n, n))
    k = 0
    for x in reals:
        D[k, k], sD[k, k] = x, scalar_sign(x)
        k += 1
    for x in upper:
        D[k : k + 2, k : k + 2] = [[x.real, x.imag], [-x.imag, x.real]]
        sD[k : k + 2, k : k + 2] = scalar_sign(x) * np.eye(2)
        k += 2
    return D, sD


def reference_suite(
    count: int = 12,
    real_range: tuple[float, float] = (0.5, 5.0),
    imag_max: float = 3.0,
    seed: int = 2024,
) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Seeded ``(A, sign(A), V)`` triples of dimension 2..16.

    Eigenvalue real parts are drawn with magnitude in ``real_range`` and both
    signs; every third matrix has a conjugate-closed complex spectrum (real
    ``A``), every third an unpaired complex one.  ``cond(V) < 40`` by construction.
    """
    dims = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 16]
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        dim = dims[i % len(dims)]
        re = rng.uniform(*real_range, dim) * rng.choice([-1.0, 1.0], dim)
        lam = re.astype(complex)
        kind = i % 3
        if kind == 1 and dim >= 2:
            half = dim // 2
            im = rng.uniform(0.1, imag_max, half)
            lam[:half] = re[:half] + 1j * im
            lam[half : 2 * half] = re[:half] - 1j * im
        elif kind == 2:
            lam = re + 1j * rng.uniform(-imag_max, imag_max, dim)
        p = 0.3 + 0.65 * (i / max(count - 1, 1))
        out.append(build_test_matrix(lam, seed + i, perturbation=p, return_basis=True))
    return out
