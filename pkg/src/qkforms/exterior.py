"""Sparse exterior algebra over R^{4n} with orthonormal generators.

A blade is a bitmask over generator indices 0..4n-1; its grade is the
popcount.  A Form is a sparse map blade -> Fraction, homogeneous of one
degree.  Sign bookkeeping lives entirely in the operations:

* orientation: vol = e0 ^ e1 ^ ... ^ e_{4n-1};
* hodge_star(e_S) = sign(S, S^c) * e_{S^c}, the sign chosen so that
  e_S ^ star(e_S) = +vol;
* blades are orthonormal for `inner`, and star(a ^ star(b)) reproduces
  inner(a, b) exactly in every degree under this orientation.

The double star satisfies ** = (-1)^{p(4n-p)} on degree p; operators built on
top of the star are calibrated rather than assuming any fixed parity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import (
    DegreeMismatch,
    DegreeOverflow,
    DimensionMismatch,
)
from .linalg import RatMatrix

Blade = int


def blade_from_indices(indices) -> Blade:
    """Bitmask of a strictly increasing index list."""
    mask = 0
    prev = -1
    for i in indices:
        if i <= prev:
            raise ValueError(f"indices not strictly increasing: {list(indices)}")
        prev = i
        mask |= 1 << i
    return mask


def blade_indices(mask: Blade) -> tuple:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def blade_grade(mask: Blade) -> int:
    return mask.bit_count()


def merge_sign(a: Blade, b: Blade) -> int:
    """Sign of e_a ^ e_b relative to the sorted blade e_{a|b}; 0 on overlap."""
    if a & b:
        return 0
    swaps = 0
    t = b
    while t:
        low = t & -t
        swaps += (a >> low.bit_length()).bit_count()
        t ^= low
    return -1 if swaps & 1 else 1


def basis_blades(n: int, degree: int) -> list:
    """All degree-p blades over R^{4n} in the canonical order (lexicographic
    on index lists).  This ordering is part of the operator-matrix contract."""
    return [blade_from_indices(c) for c in combinations(range(4 * n), degree)]


@dataclass
class Form:
    """Homogeneous element of Lambda^p (R^{4n})^*, sparse over blades."""

    n: int
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        top = 4 * self.n
        if not 0 <= self.degree <= top:
            raise ValueError(f"degree {self.degree} out of range for n={self.n}")
        clean = {}
        limit = 1 << top
        for mask, coeff in self.terms.items():
            if not coeff:
                continue
            if mask >= limit or mask.bit_count() != self.degree:
                raise ValueError(f"blade {blade_indices(mask)} invalid for this form")
            clean[mask] = Fraction(coeff)
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int, degree: int) -> "Form":
        return cls(n, degree, {})

    @classmethod
    def scalar(cls, n: int, value) -> "Form":
        return cls(n, 0, {0: Fraction(value)})

    @classmethod
    def basis(cls, n: int, indices) -> "Form":
        mask = blade_from_indices(indices)
        return cls(n, blade_grade(mask), {mask: Fraction(1)})

    @classmethod
    def from_blade(cls, n: int, mask: Blade, coeff=1) -> "Form":
        return cls(n, blade_grade(mask), {mask: Fraction(coeff)})

    # -- structure ---------------------------------------------------------

    def coefficient(self, mask: Blade) -> Fraction:
        return self.terms.get(mask, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        """(blade, coeff) pairs in the canonical blade order."""
        return sorted(self.terms.items(), key=lambda kv: blade_indices(kv[0]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and self.n == other.n
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __add__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        out = dict(self.terms)
        for mask, c in other.terms.items():
            s = out.get(mask)
            v = c if s is None else s + c
            if v:
                out[mask] = v
            elif s is not None:
                del out[mask]
        return Form(self.n, self.degree, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.n, self.degree, {m: -c for m, c in self.terms.items()})

    def scale(self, value) -> "Form":
        value = Fraction(value)
        if not value:
            return Form.zero(self.n, self.degree)
        return Form(self.n, self.degree, {m: c * value for m, c in self.terms.items()})

    def _check_compatible(self, other: "Form"):
        if self.n != other.n:
            raise DimensionMismatch(f"n={self.n} vs n={other.n}")
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")

    def __repr__(self):
        if not self.terms:
            return f"Form(n={self.n}, degree={self.degree}, 0)"
        parts = [
            f"{c}*e{list(blade_indices(m))}" for m, c in self.sorted_terms()[:4]
        ]
        more = "" if len(self.terms) <= 4 else f" +{len(self.terms) - 4} terms"
        return f"Form(n={self.n}, degree={self.degree}, {' + '.join(parts)}{more})"


def wedge(a: Form, b: Form) -> Form:
    """Graded-anticommutative product; signs from permutation parity."""
    if a.n != b.n:
        raise DimensionMismatch(f"n={a.n} vs n={b.n}")
    deg = a.degree + b.degree
    if deg > 4 * a.n:
        raise DegreeOverflow(f"wedge degree {deg} exceeds {4 * a.n}")
    out = {}
    for sa, ca in a.terms.items():
        for sb, cb in b.terms.items():
            if sa & sb:
                continue
            s = merge_sign(sa, sb)
            key = sa | sb
            c = ca * cb if s > 0 else -(ca * cb)
            prev = out.get(key)
            v = c if prev is None else prev + c
            if v:
                out[key] = v
            elif prev is not None:
                del out[key]
    return Form(a.n, deg, out)


def hodge_star(a: Form) -> Form:
    """Star with e_S ^ star(e_S) = +vol; degree p -> 4n - p."""
    top = 4 * a.n
    full = (1 << top) - 1
    out = {}
    for mask, c in a.terms.items():
        comp = full ^ mask
        s = merge_sign(mask, comp)
        out[comp] = c if s > 0 else -c
    return Form(a.n, top - a.degree, out)


def inner(a: Form, b: Form) -> Fraction:
    """Pointwise scalar product; blades are orthonormal."""
    if a.n != b.n:
        raise DimensionMismatch(f"n={a.n} vs n={b.n}")
    if a.degree != b.degree:
        raise DegreeMismatch(f"degree {a.degree} vs {b.degree}")
    small, big = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
    acc = Fraction(0)
    for mask, c in small.items():
        d = big.get(mask)
        if d:
            acc += c * d
    return acc


def interior(v: int, a: Form) -> Form:
    """Contraction with the v-th basis vector on the first slot."""
    if not 0 <= v < 4 * a.n:
        raise ValueError(f"generator index {v} out of range")
    if a.degree == 0:
        return Form.zero(a.n, 0)
    bit = 1 << v
    below = bit - 1
    out = {}
    for mask, c in a.terms.items():
        if mask & bit:
            sign = -1 if (mask & below).bit_count() & 1 else 1
            out[mask ^ bit] = c if sign > 0 else -c
    return Form(a.n, a.degree - 1, out)


@dataclass
class LinearMap:
    """Linear endomorphism of R^{4n} carried as an exact 4n x 4n matrix."""

    n: int
    matrix: RatMatrix

    def __post_init__(self):
        d = 4 * self.n
        if self.matrix.rows != d or self.matrix.cols != d:
            raise DimensionMismatch(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, expected {d}x{d}"
            )

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, RatMatrix.identity(4 * n))

    def compose(self, other: "LinearMap") -> "LinearMap":
        if self.n != other.n:
            raise DimensionMismatch(f"n={self.n} vs n={other.n}")
        return LinearMap(self.n, self.matrix @ other.matrix)

    def is_orthogonal(self) -> bool:
        return (self.matrix.transpose() @ self.matrix) == RatMatrix.identity(4 * self.n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearMap)
            and self.n == other.n
            and self.matrix == other.matrix
        )


def pullback(g: LinearMap, a: Form) -> Form:
    """Pullback (g^* a)(v_1, ..., v_p) = a(g v_1, ..., g v_p).

    Each generator e_i is substituted by the 1-form with the i-th matrix row
    as coefficients, and the wedge is expanded term by term.
    """
    if g.n != a.n:
        raise DimensionMismatch(f"n={g.n} vs n={a.n}")
    if a.degree == 0:
        return Form(a.n, 0, dict(a.terms))
    rows = g.matrix.data
    row_forms = {}
    out = Form.zero(a.n, a.degree)
    for mask, c in a.terms.items():
        acc = Form.scalar(a.n, c)
        for i in blade_indices(mask):
            rf = row_forms.get(i)
            if rf is None:
                rf = Form(
                    a.n, 1, {1 << j: x for j, x in enumerate(rows[i]) if x}
                )
                row_forms[i] = rf
            acc = wedge(acc, rf)
            if acc.is_zero():
                break
        out = out + acc
    return out


def pullback_matrix(g: LinearMap, degree: int) -> RatMatrix:
    """Matrix of the pullback on degree-p forms in the canonical blade order."""
    blades = basis_blades(g.n, degree)
    index = {mask: i for i, mask in enumerate(blades)}
    cols = []
    for mask in blades:
        f = pullback(g, Form.from_blade(g.n, mask))
        col = [Fraction(0)] * len(blades)
        for m, c in f.terms.items():
            col[index[m]] = c
        cols.append(col)
    return RatMatrix.from_columns(cols, len(blades))


def form_to_vector(a: Form, blades) -> list:
    """Coefficient vector of a form over an ordered blade list."""
    index = {mask: i for i, mask in enumerate(blades)}
    v = [Fraction(0)] * len(blades)
    for mask, c in a.terms.items():
        v[index[mask]] = c
    return v


def vector_to_form(n: int, degree: int, blades, v) -> Form:
    return Form(n, degree, {mask: c for mask, c in zip(blades, v) if c})
