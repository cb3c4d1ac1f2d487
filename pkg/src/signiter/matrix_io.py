"""Plain-text matrix files.

Line 1 holds ``rows cols``; the remaining lines hold whitespace-separated
entries in row-major order.  Real entries are plain decimals, complex entries
are written ``a+bi`` or ``a-bi``.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np


class MatrixFormatError(ValueError):
    """Raised when a matrix file cannot be parsed."""


def parse_entry(token: str) -> complex:
    """Parse ``"1.5"``, ``"-2e-3"``, ``"1+2i"``, ``"0.5-3i"`` or ``"2i"``."""
    t = token.strip()
    if t.endswith("i") and not t.lower().endswith("inf"):
        t = t[:-1] + "j"
    try:
        z = complex(t)
    except ValueError:
        raise MatrixFormatError(f"cannot parse matrix entry {token!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise MatrixFormatError(f"non-finite matrix entry {token!r}")
    return z


def format_entry(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixFormatError("first line must be 'rows cols'")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixFormatError("first line must be 'rows cols'") from None
    if rows < 1 or cols < 1:
        raise MatrixFormatError("matrix dimensions must be positive")
    tokens = " ".join(lines[1:]).split()
    if len(tokens) != rows * cols:
        raise MatrixFormatError(f"expected {rows * cols} entries, found {len(tokens)}")
    vals = np.array([parse_entry(t) for t in tokens], dtype=complex).reshape(rows, cols)
    if np.all(vals.imag == 0):
        return vals.real.copy()
    return vals


def format_matrix(X) -> str:
    X = np.asarray(X)
    if X.ndim != 2:
        raise MatrixFormatError("only 2-D arrays can be written")
    if np.iscomplexobj(X) and np.all(X.imag == 0):
        X = X.real
    lines = [f"{X.shape[0]} {X.shape[1]}"]
    lines += [" ".join(format_entry(x) for x in row) for row in X]
    return "\n".join(lines) + "\n"


def read_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_matrix(text)


def write_matrix(path, X) -> None:
    Path(path).write_text(format_matrix(X))
