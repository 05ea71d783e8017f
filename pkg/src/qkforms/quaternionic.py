"""Quaternionic structure on R^{4n}: frame, fundamental 2-forms, the
invariant 4-form, and the degree-raising/lowering operators L and Lambda.

Conventions (fixed once, everything downstream derives from them):

* generator index g = 4*alpha + c labels coordinate alpha in 0..n-1 and
  component c in {0: a, 1: b, 2: c, 3: d} of the quaternion
  x = x0 + x1 i + x2 j + x3 k;
* I, J, K are RIGHT multiplication by i, j, k.  Right multiplications
  compose contravariantly, so as matrices J @ I = K while I @ J = -K;
* the 2-forms use the first-slot convention omega_A(u, v) = <A u, v>;
* the 4-form is omega = omega_I^2 + omega_J^2 + omega_K^2 (equal to -6 vol
  when n = 1 under these conventions);
* L is wedge by omega; Lambda is DEFINED as the metric adjoint of L, which
  makes inner(L a, b) = inner(a, Lambda b) hold by construction.  The star
  formula star(omega ^ star(.)) agrees with Lambda only up to a per-degree
  sign; `calibrate_star_sign` measures that sign instead of assuming one.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DegreeOverflow,
    DegreeUnderflow,
    InvalidDimension,
    SignInconsistent,
)
from .exterior import (
    Form,
    LinearMap,
    basis_blades,
    hodge_star,
    merge_sign,
    wedge,
)
from .linalg import RatMatrix

# Right multiplication by i, j, k on one quaternionic coordinate block,
# derived from the multiplication table (ij = k, jk = i, ki = j).
_BLOCK_I = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
_BLOCK_J = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]
_BLOCK_K = [[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]


def _block_diagonal(n: int, block) -> LinearMap:
    d = 4 * n
    data = [[Fraction(0)] * d for _ in range(d)]
    for alpha in range(n):
        base = 4 * alpha
        for r in range(4):
            for c in range(4):
                if block[r][c]:
                    data[base + r][base + c] = Fraction(block[r][c])
    return LinearMap(n, RatMatrix(data, copy=False))


class QuatFrame:
    """Labeling of R^{4n} as H^n together with the three right-multiplication
    structures."""

    def __init__(self, n: int, I: LinearMap, J: LinearMap, K: LinearMap):
        self.n = n
        self.I = I
        self.J = J
        self.K = K

    def structures(self):
        return (self.I, self.J, self.K)


def standard_frame(n: int) -> QuatFrame:
    """The standard frame on R^{4n} (block-diagonal right multiplications)."""
    if n < 1:
        raise InvalidDimension(f"quaternionic dimension must be >= 1, got {n}")
    return QuatFrame(
        n,
        _block_diagonal(n, _BLOCK_I),
        _block_diagonal(n, _BLOCK_J),
        _block_diagonal(n, _BLOCK_K),
    )


def fundamental_two_forms(frame: QuatFrame):
    """The 2-forms omega_A(u, v) = <A u, v> for A in (I, J, K)."""
    out = []
    d = 4 * frame.n
    for structure in frame.structures():
        m = structure.matrix.data
        terms = {}
        for a in range(d):
            for b in range(a + 1, d):
                coeff = m[b][a]  # <A e_a, e_b>
                if coeff:
                    terms[(1 << a) | (1 << b)] = coeff
        out.append(Form(frame.n, 2, terms))
    return tuple(out)


class KrainesData:
    """The fundamental 4-form with its generating 2-forms and lazy caches for
    the operators built from it.  Immutable apart from memoized tables."""

    def __init__(self, frame: QuatFrame, omega_I, omega_J, omega_K, omega):
        self.frame = frame
        self.n = frame.n
        self.omega_I = omega_I
        self.omega_J = omega_J
        self.omega_K = omega_K
        self.omega = omega
        self.star_signs = {}
        self._cache = {}

    def __repr__(self):
        return f"KrainesData(n={self.n}, omega terms={len(self.omega.terms)})"


def kraines_form(frame: QuatFrame) -> KrainesData:
    """Assemble omega = omega_I^2 + omega_J^2 + omega_K^2."""
    omega_I, omega_J, omega_K = fundamental_two_forms(frame)
    omega = wedge(omega_I, omega_I) + wedge(omega_J, omega_J) + wedge(omega_K, omega_K)
    return KrainesData(frame, omega_I, omega_J, omega_K, omega)


def L_op(kd: KrainesData, a: Form) -> Form:
    """Degree-raising operator: wedge with the 4-form."""
    if a.degree + 4 > 4 * kd.n:
        raise DegreeOverflow(
            f"L on degree {a.degree} exceeds top degree {4 * kd.n}"
        )
    return wedge(kd.omega, a)

def Lambda_op(kd: KrainesData, a: Form) -> Form:
    """Degree-lowering operator, the metric adjoint of L_op.

    In the orthonormal blade basis the matrix of Lambda is the transpose of
    the matrix of L, which on a blade e_T reads
    Lambda(e_T) = sum over 4-subsets Q of T of omega_Q sign(Q, T\\Q) e_{T\\Q}.
    """
    if a.degree < 4:
        raise DegreeUnderflow(f"Lambda needs degree >= 4, got {a.degree}")
    omega_terms = kd.omega.terms
    out = {}
    for mask, c in a.terms.items():
        for q, cq in omega_terms.items():
            if q & mask == q:
                rest = mask ^ q
                s = merge_sign(q, rest)
                v = c * cq if s > 0 else -(c * cq)
                prev = out.get(rest)
                total = v if prev is None else prev + v
                if total:
                    out[rest] = total
                elif prev is not None:
                    del out[rest]
    return Form(kd.n, a.degree - 4, out)


def star_formula(kd: KrainesData, a: Form) -> Form:
    """The raw star expression star(omega ^ star(a)) without sign fixing."""
    return hodge_star(wedge(kd.omega, hodge_star(a)))


def calibrate_star_sign(kd: KrainesData, degree: int) -> int:
    """Sign eps with Lambda_op(a) = eps * star(omega ^ star(a)) on degree p.

    Verified over the full blade basis of the degree; raises SignInconsistent
    if no single sign works (that would be an implementation bug, not a
    convention issue).
    """
    if not 4 <= degree <= 4 * kd.n:
        raise DegreeUnderflow(f"calibration degree must be in 4..{4 * kd.n}")
    cached = kd.star_signs.get(degree)
    if cached is not None:
        return cached
    sign = None
    for mask in basis_blades(kd.n, degree):
        blade = Form.from_blade(kd.n, mask)
        lhs = Lambda_op(kd, blade)
        rhs = star_formula(kd, blade)
        if lhs.is_zero() and rhs.is_zero():
            continue
        if lhs == rhs:
            candidate = 1
        elif lhs == -rhs:
            candidate = -1
        else:
            raise SignInconsistent(
                f"no sign reconciles adjoint and star formula on degree {degree}"
            )
        if sign is None:
            sign = candidate
        elif sign != candidate:
            raise SignInconsistent(
                f"conflicting signs on degree {degree}"
            )
    if sign is None:
        sign = 1  # both operators vanish identically on this degree
    kd.star_signs[degree] = sign
    return sign


def omega_power(kd: KrainesData, k: int) -> Form:
    """k-fold wedge power of the 4-form."""
    out = Form.scalar(kd.n, 1)
    for _ in range(k):
        out = wedge(kd.omega, out)
    return out


def omega_top_coefficient(kd: KrainesData) -> Fraction:
    """Coefficient of the volume blade in omega^n (nonzero for every n)."""
    top = omega_power(kd, kd.n)
    vol = (1 << (4 * kd.n)) - 1
    return top.coefficient(vol)
