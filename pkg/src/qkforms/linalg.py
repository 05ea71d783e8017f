"""Exact scalars and dense exact linear algebra over the rationals.

Scalars are `fractions.Fraction` (canonical form is guaranteed: gcd 1,
positive denominator, zero is 0/1) and Gaussian rationals are pairs of
Fractions.  Every operation in this module is exact; nothing ever touches
floating point, so downstream identity checks are plain equalities.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, SingularNormalEquations

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def rat_to_str(x: Fraction) -> str:
    """Serialize to the canonical "p" or "p/q" string (q > 0)."""
    return str(Fraction(x))


def rat_from_str(s: str) -> Fraction:
    """Parse a "p" or "p/q" string; the denominator must be a positive integer."""
    if not isinstance(s, str) or not _RATIONAL_RE.match(s.strip()):
        raise ParseError(f"not a rational string: {s!r}")
    return Fraction(s)


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex scalar a + b*i with rational a, b."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return GaussianRational(self.re * other, self.im * other)

    __rmul__ = __mul__

    def times_i(self) -> "GaussianRational":
        """Multiply by the imaginary unit."""
        return GaussianRational(-self.im, self.re)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def to_dict(self) -> dict:
        return {"re": rat_to_str(self.re), "im": rat_to_str(self.im)}

    @classmethod
    def from_dict(cls, d: dict) -> "GaussianRational":
        if not isinstance(d, dict) or set(d) != {"re", "im"}:
            raise ParseError(f"not a Gaussian rational: {d!r}")
        return cls(rat_from_str(d["re"]), rat_from_str(d["im"]))


GAUSS_ZERO = GaussianRational()
GAUSS_ONE = GaussianRational(Fraction(1), Fraction(0))


class RatMatrix:
    """Dense matrix of Fractions, row major.  Values are never mutated after
    construction; operations return fresh matrices."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, copy: bool = True):
        if copy:
            data = [[Fraction(x) for x in row] for row in data]
        self.data = data
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        z = Fraction(0)
        return cls([[z] * cols for _ in range(rows)], copy=False)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        z, o = Fraction(0), Fraction(1)
        return cls(
            [[o if i == j else z for j in range(n)] for i in range(n)], copy=False
        )

    @classmethod
    def from_columns(cls, columns, rows: int) -> "RatMatrix":
        data = [[Fraction(col[i]) for col in columns] for i in range(rows)]
        return cls(data, copy=False)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> list:
        return list(self.data[i])

    def column(self, j: int) -> list:
        return [row[j] for row in self.data]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            copy=False,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        bt = other.transpose().data
        out = []
        for arow in self.data:
            out.append([_sparse_dot(arow, bcol) for bcol in bt])
        return RatMatrix(out, copy=False)

    def matvec(self, v) -> list:
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return [_sparse_dot(row, v) for row in self.data]

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def to_lists(self):
        return [list(row) for row in self.data]

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols})"


def _sparse_dot(u, v) -> Fraction:
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc += x * y
    return Fraction(acc)


def mat_vec(m: RatMatrix, v) -> list:
    return m.matvec(v)


def dot(u, v) -> Fraction:
    return _sparse_dot(u, v)


def rref(m: RatMatrix):
    """Reduced row-echelon form.

    Returns (R, pivot_columns).  Exact Gauss-Jordan; pivots are the first
    nonzero entry in each column, scanned left to right.
    """
    a = [list(row) for row in m.data]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][c]
        if inv != 1:
            a[r] = [x * inv if x else x for x in a[r]]
        lead = a[r]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], lead)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return RatMatrix(a, copy=False), pivots


def rank(m: RatMatrix) -> int:
    """Exact rank via forward elimination (no back substitution)."""
    a = [list(row) for row in m.data]
    rows, cols = m.rows, m.cols
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        lead = a[r]
        lc = lead[c]
        for i in range(r + 1, rows):
            if a[i][c]:
                f = a[i][c] / lc
                a[i] = [x - f * y if y else x for x, y in zip(a[i], lead)]
        r += 1
        if r == rows:
            break
    return r


def kernel_basis(m: RatMatrix):
    """Exact basis of the right null space, one vector per free column."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    z, o = Fraction(0), Fraction(1)
    for f in free:
        v = [z] * m.cols
        v[f] = o
        for r, c in enumerate(pivots):
            v[c] = -reduced.data[r][f]
        basis.append(v)
    return basis


def solve_exact(m: RatMatrix, b):
    """Solve m x = b for square invertible m; None when singular."""
    if m.rows != m.cols or len(b) != m.rows:
        raise ValueError("solve_exact expects a square system")
    aug = RatMatrix(
        [list(row) + [Fraction(b[i])] for i, row in enumerate(m.data)], copy=False
    )
    reduced, pivots = rref(aug)
    if pivots != list(range(m.cols)):
        return None
    return [reduced.data[i][m.cols] for i in range(m.cols)]


def solve_least_squares_exact(m: RatMatrix, b):
    """Unique x with (m^T m) x = m^T b, solved exactly.

    Raises SingularNormalEquations when m^T m is not invertible (m does not
    have full column rank).
    """
    mt = m.transpose()
    gram = mt @ m
    rhs = mt.matvec(list(b))
    x = solve_exact(gram, rhs)
    if x is None:
        raise SingularNormalEquations(
            f"normal equations singular for {m.rows}x{m.cols} matrix"
        )
    return x


def solve_least_squares_min_norm(m: RatMatrix, b):
    """Minimum-norm solution of the (always consistent) normal equations.

    Used where m may lack full column rank: take any particular solution and
    remove its component along ker(m^T m).
    """
    mt = m.transpose()
    gram = mt @ m
    rhs = mt.matvec(list(b))
    aug = RatMatrix(
        [list(row) + [rhs[i]] for i, row in enumerate(gram.data)], copy=False
    )
    reduced, pivots = rref(aug)
    n = gram.cols
    if n in pivots:
        # m^T m x = m^T b is consistent for every b; reaching this means the
        # input matrices were inconsistent to begin with.
        raise SingularNormalEquations("inconsistent normal equations")
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = reduced.data[r][n]
    kern = kernel_basis(gram)
    if kern:
        k = RatMatrix.from_columns(kern, n)
        kt = k.transpose()
        coeffs = solve_exact(kt @ k, kt.matvec(x))
        correction = k.matvec(coeffs)
        x = [xi - ci for xi, ci in zip(x, correction)]
    return x
