"""Exact rational and polynomial arithmetic.

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Polynomials are dense, univariate, stored as a tuple
of coefficients in ascending powers with no trailing zeros, so the zero
polynomial is the empty tuple and has degree -1.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class ExactArithmeticError(ValueError):
    """Raised on invalid exact-arithmetic input (e.g. gcd of two zeros)."""


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rational(x: Fraction) -> str:
    """Serialize as ``"num/den"``, or ``"num"`` when the denominator is 1."""
    return str(Fraction(x))


class Poly:
    """Immutable dense polynomial with rational coefficients.

    Parameters
    ----------
    coeffs : iterable
        Coefficients in ascending powers.  Trailing zeros are stripped.

    Examples
    --------
    >>> (Poly([1, 1]) * Poly([-1, 1]))
    Poly('-1 + z^2')
    >>> Poly([]).degree
    -1
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c: tuple[Fraction, ...] = tuple(c)

    # construction helpers

    @classmethod
    def constant(cls, value: Scalar) -> Poly:
        return cls([value])

    @classmethod
    def z(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def zero(cls) -> Poly:
        return cls()

    # basic properties

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def leading(self) -> Fraction:
        if not self._c:
            return Fraction(0)
        return self._c[-1]

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly([other])._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k, c in enumerate(self._c):
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and c == 1:
                t = mono
            elif mono and c == -1:
                t = "-" + mono
            else:
                t = format_rational(c) + ("*" + mono if mono else "")
            terms.append(t)
        return " + ".join(terms).replace("+ -", "- ")

    # arithmetic

    def __add__(self, other) -> Poly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self._c), len(other._c))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self._c)

    def __sub__(self, other) -> Poly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative polynomial power")
        out = Poly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, k: Scalar) -> Poly:
        k = as_rational(k)
        return Poly(k * c for c in self._c)

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        """Euclidean division ``self = q*other + r`` with ``deg r < deg other``."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self._c)
        dq = len(r) - len(other._c)
        if dq < 0:
            return Poly(), self
        q = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            f = r[k + other.degree] / lead
            q[k] = f
            if f:
                for j, c in enumerate(other._c):
                    r[k + j] -= f * c
        return Poly(q), Poly(r[: other.degree])

    # calculus and evaluation

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self._c) if k > 0)

    def antiderivative(self) -> Poly:
        """Primitive with zero constant term."""
        if not self._c:
            return Poly()
        return Poly([0] + [c / (k + 1) for k, c in enumerate(self._c)])

    def __call__(self, x: Scalar) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def eval_derivative_at(self, k: int, x: Scalar) -> Fraction:
        """Exact value of the k-th derivative at ``x`` (``k = 0`` is plain evaluation)."""
        if k < 0:
            raise ValueError("derivative order must be nonnegative")
        x = as_rational(x)
        acc = Fraction(0)
        for j in range(len(self._c) - 1, k - 1, -1):
            acc = acc * x + self._c[j] * falling_factorial(j, k)
        return acc

    def compose(self, inner: Poly) -> Poly:
        """Return ``self(inner(z))`` by Horner's scheme."""
        out = Poly()
        for c in reversed(self._c):
            out = out * inner + c
        return out

    def parity(self) -> int | None:
        """+1 if even as a function, -1 if odd, None otherwise (zero counts as even)."""
        if all(c == 0 for c in self._c[1::2]):
            return 1
        if all(c == 0 for c in self._c[0::2]):
            return -1
        return None

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self._c]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> Poly:
        return cls(Fraction(s) for s in items)


def _coerce(other):
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, Fraction)):
        return Poly([other])
    return NotImplemented


def falling_factorial(j: int, k: int) -> int:
    """``j (j-1) ... (j-k+1)``; zero when ``k > j``."""
    if k > j:
        return 0
    return factorial(j) // factorial(j - k)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    if p.is_zero() and q.is_zero():
        raise ExactArithmeticError("gcd of two zero polynomials is undefined")
    while not q.is_zero():
        p, q = q, p.divmod(q)[1]
    return p.scale(1 / p.leading)


def poly_arith(p: Poly, q, op: str) -> Poly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (``q`` a rational for scale)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown polynomial operation {op!r}")


def derivative(p: Poly) -> Poly:
    return p.derivative()


def antiderivative(p: Poly) -> Poly:
    return p.antiderivative()


def eval_derivative_at(p: Poly, k: int, x: Scalar) -> Fraction:
    return p.eval_derivative_at(k, x)


def integer_content_scale(coeffs: Iterable[Fraction]) -> Fraction:
    """Factor that turns ``coeffs`` into coprime integers (positive, ignores sign).

    Multiplying every coefficient by the returned value clears denominators and
    leaves the collective gcd equal to 1.  All-zero input returns 1.
    """
    coeffs = [c for c in coeffs if c != 0]
    if not coeffs:
        return Fraction(1)
    den = lcm(*(c.denominator for c in coeffs))
    g = 0
    for c in coeffs:
        g = gcd(g, c.numerator * (den // c.denominator))
    return Fraction(den, g)


# exact dense linear algebra


def rref(rows: Sequence[Sequence[Scalar]], ncols: int | None = None):
    """Reduced row echelon form over the rationals.

    Pivots are taken as the first nonzero entry in column order, so the result
    is deterministic.  Returns ``(R, pivot_columns)``.
    """
    R = [[as_rational(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(R[0]) if R else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace, one vector per free column (free entry = 1)."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Fraction]:
    """Solve a square nonsingular system exactly; raises on singularity."""
    n = len(rows)
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    R, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ExactArithmeticError("singular linear system")
    return [R[i][n] for i in range(n)]
