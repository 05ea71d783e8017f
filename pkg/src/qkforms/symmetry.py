"""Exact elements of Sp(1), Sp(n) and Sp(n).Sp(1) acting on R^{4n}.

Group elements are pairs (A, q) of a quaternionic symplectic-unitary matrix
and a unit quaternion, realized on column vectors as v -> A v conj(q).  The
conjugate on the right factor turns both actions into left actions, so the
realization is a group homomorphism.  Cayley transforms over the rationals
provide exact (unit-norm, exactly symplectic) samples, which makes every
invariance statement a plain equality check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, OrderExceeded, SingularCayley
from .exterior import (
    Form,
    LinearMap,
    basis_blades,
    blade_indices,
    pullback,
    pullback_matrix,
)
from .lefschetz import OperatorMatrix
from .linalg import RatMatrix


@dataclass(frozen=True)
class Quaternion:
    """Quaternion with exact rational components q0 + q1 i + q2 j + q3 k."""

    q0: Fraction = Fraction(0)
    q1: Fraction = Fraction(0)
    q2: Fraction = Fraction(0)
    q3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("q0", "q1", "q2", "q3"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def one(cls) -> "Quaternion":
        return cls(Fraction(1))

    @classmethod
    def pure(cls, x, y, z) -> "Quaternion":
        return cls(Fraction(0), Fraction(x), Fraction(y), Fraction(z))

    def components(self):
        return (self.q0, self.q1, self.q2, self.q3)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(
            self.q0 + other.q0,
            self.q1 + other.q1,
            self.q2 + other.q2,
            self.q3 + other.q3,
        )

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(
            self.q0 - other.q0,
            self.q1 - other.q1,
            self.q2 - other.q2,
            self.q3 - other.q3,
        )

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.q0, -self.q1, -self.q2, -self.q3)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        a0, a1, a2, a3 = self.components()
        b0, b1, b2, b3 = other.components()
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def scale(self, value) -> "Quaternion":
        value = Fraction(value)
        return Quaternion(
            self.q0 * value, self.q1 * value, self.q2 * value, self.q3 * value
        )

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.q0, -self.q1, -self.q2, -self.q3)

    def norm_sq(self) -> Fraction:
        return self.q0**2 + self.q1**2 + self.q2**2 + self.q3**2

    def inverse(self) -> "Quaternion":
        n = self.norm_sq()
        if not n:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conjugate().scale(Fraction(1) / n)

    def is_unit(self) -> bool:
        return self.norm_sq() == 1

    def is_pure(self) -> bool:
        return not self.q0

    def is_zero(self) -> bool:
        return not (self.q0 or self.q1 or self.q2 or self.q3)


QUAT_ZERO = Quaternion()
QUAT_ONE = Quaternion.one()


def left_mult_matrix(a: Quaternion):
    """Real 4x4 matrix of h -> a h."""
    a0, a1, a2, a3 = a.components()
    return [
        [a0, -a1, -a2, -a3],
        [a1, a0, -a3, a2],
        [a2, a3, a0, -a1],
        [a3, -a2, a1, a0],
    ]


def right_mult_matrix(q: Quaternion):
    """Real 4x4 matrix of h -> h q."""
    q0, q1, q2, q3 = q.components()
    return [
        [q0, -q1, -q2, -q3],
        [q1, q0, q3, -q2],
        [q2, -q3, q0, q1],
        [q3, q2, -q1, q0],
    ]


class QuatMatrix:
    """n x n matrix of quaternions with exact entries."""

    def __init__(self, entries):
        self.entries = [list(row) for row in entries]
        self.n = len(self.entries)
        for row in self.entries:
            if len(row) != self.n:
                raise ValueError("quaternionic matrix must be square")

    @classmethod
    def identity(cls, n: int) -> "QuatMatrix":
        return cls(
            [
                [QUAT_ONE if i == j else QUAT_ZERO for j in range(n)]
                for i in range(n)
            ]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __mul__(self, other: "QuatMatrix") -> "QuatMatrix":
        if self.n != other.n:
            raise DimensionMismatch(f"n={self.n} vs n={other.n}")
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = QUAT_ZERO
                for k in range(n):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return QuatMatrix(out)

    def dagger(self) -> "QuatMatrix":
        """Quaternionic conjugate transpose."""
        n = self.n
        return QuatMatrix(
            [[self.entries[j][i].conjugate() for j in range(n)] for i in range(n)]
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuatMatrix)
            and self.n == other.n
            and self.entries == other.entries
        )

    def is_symplectic(self) -> bool:
        return (self * self.dagger()) == QuatMatrix.identity(self.n)

    def __add__(self, other: "QuatMatrix") -> "QuatMatrix":
        return QuatMatrix(
            [
                [x + y for x, y in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "QuatMatrix") -> "QuatMatrix":
        return QuatMatrix(
            [
                [x - y for x, y in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def is_skew_hermitian(self) -> bool:
        n = self.n
        for i in range(n):
            for j in range(n):
                if self.entries[j][i].conjugate() != -self.entries[i][j]:
                    return False
        return True


def quat_matrix_inverse(m: QuatMatrix) -> QuatMatrix:
    """Exact inverse over the quaternions by left-division Gauss elimination.

    Raises SingularCayley when the matrix is singular.
    """
    n = m.n
    a = [list(row) + QuatMatrix.identity(n).entries[i] for i, row in enumerate(m.entries)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            raise SingularCayley("quaternionic matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [inv * x for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return QuatMatrix([row[n:] for row in a])


def cayley_sp1(u: Quaternion) -> Quaternion:
    """Unit quaternion (1-u)(1+u)^{-1} from a pure quaternion u."""
    if not u.is_pure():
        raise ValueError("Cayley input must be a pure quaternion")
    return (QUAT_ONE - u) * (QUAT_ONE + u).inverse()


def cayley_spn(s: QuatMatrix) -> QuatMatrix:
    """Symplectic-unitary matrix (I-S)(I+S)^{-1} from skew-Hermitian S."""
    if not s.is_skew_hermitian():
        raise ValueError("Cayley input must be skew-Hermitian")
    ident = QuatMatrix.identity(s.n)
    return (ident - s) * quat_matrix_inverse(ident + s)


@dataclass
class GroupElement:
    """Element of Sp(n).Sp(1) with its exact 4n x 4n orthogonal realization."""

    a: QuatMatrix
    q: Quaternion
    realized: LinearMap

    @property
    def n(self) -> int:
        return self.a.n

    def key(self):
        """Hashable identity of the realized transformation.  (A, q) and
        (-A, -q) realize the same element; the key quotients that out."""
        return tuple(tuple(row) for row in self.realized.matrix.data)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return realize(self.a * other.a, self.q * other.q)

    def inverse(self) -> "GroupElement":
        return realize(self.a.dagger(), self.q.conjugate())

    def is_integer(self) -> bool:
        return all(
            x.denominator == 1 for row in self.realized.matrix.data for x in row
        )


def realize(a: QuatMatrix, q: Quaternion) -> GroupElement:
    """Realize (A, q) as the real matrix of v -> A v conj(q).

    Requires exact unit norm for q and exact symplectic unitarity for A, so
    the realized matrix is exactly orthogonal.
    """
    if not q.is_unit():
        raise ValueError("Sp(1) factor must have exact unit norm")
    if not a.is_symplectic():
        raise ValueError("Sp(n) factor must satisfy A A^dagger = I exactly")
    n = a.n
    rq = right_mult_matrix(q.conjugate())
    data = [[Fraction(0)] * (4 * n) for _ in range(4 * n)]
    for alpha in range(n):
        for beta in range(n):
            entry = a[alpha, beta]
            if entry.is_zero():
                continue
            la = left_mult_matrix(entry)
            block = [
                [
                    sum(la[r][k] * rq[k][c] for k in range(4))
                    for c in range(4)
                ]
                for r in range(4)
            ]
            for r in range(4):
                for c in range(4):
                    if block[r][c]:
                        data[4 * alpha + r][4 * beta + c] = block[r][c]
    return GroupElement(a, q, LinearMap(n, RatMatrix(data, copy=False)))


def identity_element(n: int) -> GroupElement:
    return realize(QuatMatrix.identity(n), QUAT_ONE)


@dataclass
class FiniteGroup:
    """Finite set of group elements closed under product and inverse."""

    elements: list

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n(self) -> int:
        return self.elements[0].n

    def validate(self) -> bool:
        """Full closure and inverse check (quadratic; meant for tests)."""
        keys = {g.key() for g in self.elements}
        if identity_element(self.n).key() not in keys:
            return False
        for g in self.elements:
            if g.inverse().key() not in keys:
                return False
            for h in self.elements:
                if (g * h).key() not in keys:
                    return False
        return True


def group_closure(generators, max_order: int) -> FiniteGroup:
    """Breadth-first closure of the generated group.

    Raises OrderExceeded instead of looping when the closure passes
    max_order.  An empty generator list yields the trivial group; the group
    dimension then defaults to n = 1.
    """
    if max_order < 1:
        raise OrderExceeded("max_order must be at least 1")
    n = generators[0].n if generators else 1
    for g in generators:
        if g.n != n:
            raise DimensionMismatch("generators act on different dimensions")
    ident = identity_element(n)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                prod = g * h
                k = prod.key()
                if k not in seen:
                    if len(seen) >= max_order:
                        raise OrderExceeded(
                            f"group closure exceeded max order {max_order}"
                        )
                    seen[k] = prod
                    nxt.append(prod)
        frontier = nxt
    elements = sorted(seen.values(), key=lambda g: g.key())
    return FiniteGroup(elements)


def averaging_projector(group: FiniteGroup, degree: int) -> OperatorMatrix:
    """Group-average P = (1/|G|) sum of pullback matrices on degree-p forms.

    P is idempotent and its image is the space of invariant forms.
    """
    n = group.n
    dim = len(basis_blades(n, degree))
    acc = [[Fraction(0)] * dim for _ in range(dim)]
    for g in group.elements:
        m = pullback_matrix(g.realized, degree)
        for i in range(dim):
            row = m.data[i]
            arow = acc[i]
            for j in range(dim):
                if row[j]:
                    arow[j] += row[j]
    scale = Fraction(1, group.order)
    data = [[x * scale for x in row] for row in acc]
    return OperatorMatrix(degree, degree, RatMatrix(data, copy=False))


def symmetrize(group: FiniteGroup, form: Form) -> Form:
    """Group average of a single form."""
    acc = Form.zero(form.n, form.degree)
    for g in group.elements:
        acc = acc + pullback(g.realized, form)
    return acc.scale(Fraction(1, group.order))


def invariant_basis(group: FiniteGroup, degree: int):
    """Exact basis of the invariant subspace of degree-p forms.

    Built by symmetrizing every basis blade and extracting an independent
    subset by sparse elimination in the canonical blade order; this is the
    image of the averaging projector without materializing it densely.
    """
    n = group.n
    pivots = {}
    basis = []
    for mask in basis_blades(n, degree):
        candidate = symmetrize(group, Form.from_blade(n, mask))
        reduced = _reduce_against(candidate, pivots)
        if reduced.is_zero():
            continue
        lead = min(reduced.terms, key=blade_indices)
        normalized = reduced.scale(Fraction(1) / reduced.terms[lead])
        pivots[lead] = normalized
        basis.append(normalized)
    basis.sort(key=lambda f: blade_indices(min(f.terms, key=blade_indices)))
    return basis


def _reduce_against(form: Form, pivots) -> Form:
    current = form
    while not current.is_zero():
        lead = min(current.terms, key=blade_indices)
        piv = pivots.get(lead)
        if piv is None:
            return current
        current = current - piv.scale(current.terms[lead])
    return current


def is_invariant(group: FiniteGroup, form: Form) -> bool:
    return all(pullback(g.realized, form) == form for g in group.elements)
