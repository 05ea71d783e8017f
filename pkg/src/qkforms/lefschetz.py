"""Effective forms and the degree-4 analogue of the Lefschetz decomposition.

A degree-p form splits orthogonally as a = a_e + L(eta) with a_e effective
(annihilated by Lambda): in the orthonormal blade basis Lambda is the
transpose of L, so ker(Lambda) is exactly the orthogonal complement of
im(L).  Recursing on eta yields a = sum_i L^i(components[i]) with every
component effective.  The split is computed by solving the exact normal
equations (L^T L) eta = L^T a.

The Gram matrix L^T L commutes with a large symmetry group, so its minimal
polynomial is tiny; the solver below exploits that to invert it as an
integer matrix polynomial instead of running dense rational elimination.
A dense exact fallback covers non-integer or singular cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegreeOutOfRange,
    OutOfTheoremRange,
    SingularNormalEquations,
)
from .exterior import Form, basis_blades, form_to_vector, vector_to_form
from .linalg import (
    RatMatrix,
    kernel_basis,
    rank,
    rref,
    solve_least_squares_min_norm,
)
from .quaternionic import KrainesData, L_op, Lambda_op


@dataclass
class OperatorMatrix:
    """Exact matrix of L or Lambda between canonical blade bases."""

    source_degree: int
    target_degree: int
    matrix: RatMatrix


def operator_matrix(kd: KrainesData, which: str, degree: int) -> OperatorMatrix:
    """Matrix of L (degree -> degree+4) or Lambda (degree -> degree-4).

    Columns follow the canonical blade order of the source degree, rows the
    target degree.  matrix(Lambda, p) is the transpose of matrix(L, p-4) by
    construction.
    """
    top = 4 * kd.n
    if which == "L":
        if not 0 <= degree or degree + 4 > top:
            raise DegreeOutOfRange(f"L undefined on degree {degree} for n={kd.n}")
        key = ("Lmat", degree)
        cached = kd._cache.get(key)
        if cached is None:
            cached = _build_L_matrix(kd, degree)
            kd._cache[key] = cached
        return OperatorMatrix(degree, degree + 4, cached)
    if which == "Lambda":
        if not 4 <= degree <= top:
            raise DegreeOutOfRange(f"Lambda undefined on degree {degree} for n={kd.n}")
        lmat = operator_matrix(kd, "L", degree - 4).matrix
        return OperatorMatrix(degree, degree - 4, lmat.transpose())
    raise ValueError(f"operator must be 'L' or 'Lambda', got {which!r}")


def _build_L_matrix(kd: KrainesData, degree: int) -> RatMatrix:
    src = basis_blades(kd.n, degree)
    tgt = basis_blades(kd.n, degree + 4)
    index = {mask: i for i, mask in enumerate(tgt)}
    columns = []
    for mask in src:
        image = L_op(kd, Form.from_blade(kd.n, mask))
        col = [Fraction(0)] * len(tgt)
        for m, c in image.terms.items():
            col[index[m]] = c
        columns.append(col)
    return RatMatrix.from_columns(columns, len(tgt))


def effective_basis(kd: KrainesData, degree: int):
    """Exact basis of ker Lambda on the given degree.

    Degrees 0..3 are entirely effective (Lambda lands below degree zero), so
    the full blade basis is returned there.
    """
    if not 0 <= degree <= 4 * kd.n:
        raise DegreeOutOfRange(f"degree {degree} out of range for n={kd.n}")
    if degree < 4:
        return [Form.from_blade(kd.n, m) for m in basis_blades(kd.n, degree)]
    lam = operator_matrix(kd, "Lambda", degree)
    blades = basis_blades(kd.n, degree)
    return [
        vector_to_form(kd.n, degree, blades, v) for v in kernel_basis(lam.matrix)
    ]


@dataclass
class Decomposition:
    """Result of the effective-form splitting of a degree-p form.

    components[i] has degree p - 4i and is effective; reconstruction is
    sum_i L^i components[i] + residual.  singular_degrees records recursion
    steps where the Gram matrix was singular and the minimum-norm solution
    was used (possible only outside the guaranteed range).
    """

    degree: int
    components: list
    residual: Form
    singular_degrees: list = field(default_factory=list)

    def reconstruct(self, kd: KrainesData) -> Form:
        total = Form.zero(kd.n, self.degree)
        for i, comp in enumerate(self.components):
            lifted = comp
            for _ in range(i):
                lifted = L_op(kd, lifted)
            total = total + lifted
        return total + self.residual


def lefschetz_decompose(kd: KrainesData, a: Form, force: bool = False) -> Decomposition:
    """Split a into effective components along powers of L.

    Guaranteed (unique, residual-free) for degree <= n+1; outside that range
    `force` computes the same orthogonal splitting best-effort and reports
    any singular normal-equation steps instead of failing.
    """
    p = a.degree
    if p > kd.n + 1 and not force:
        raise OutOfTheoremRange(
            f"degree {p} exceeds n+1 = {kd.n + 1}; pass force=True for best effort"
        )
    components = []
    singular = []
    work = a
    deg = p
    while deg >= 4:
        solver = _gram_solver(kd, deg)
        blades = basis_blades(kd.n, deg - 4)
        rhs = form_to_vector(Lambda_op(kd, work), blades)
        eta_vec = solver.solve(rhs)
        if eta_vec is None:
            if not force:
                raise SingularNormalEquations(
                    f"Gram matrix singular at degree {deg}"
                )
            singular.append(deg)
            lmat = operator_matrix(kd, "L", deg - 4).matrix
            eta_vec = solve_least_squares_min_norm(
                lmat, form_to_vector(work, basis_blades(kd.n, deg))
            )
        eta = vector_to_form(kd.n, deg - 4, blades, eta_vec)
        components.append(work - L_op(kd, eta))
        work = eta
        deg -= 4
    components.append(work)
    dec = Decomposition(p, components, Form.zero(kd.n, p), singular)
    dec.residual = a - dec.reconstruct(kd)
    return dec


def effective_projector(kd: KrainesData, degree: int) -> RatMatrix:
    """Orthogonal projector onto ker Lambda at the given degree (identity
    below degree 4)."""
    dim = math.comb(4 * kd.n, degree)
    if degree < 4:
        return RatMatrix.identity(dim)
    image = image_projector(kd, degree)
    ident = RatMatrix.identity(dim)
    data = [
        [ident.data[i][j] - image.data[i][j] for j in range(dim)]
        for i in range(dim)
    ]
    return RatMatrix(data, copy=False)


def image_projector(kd: KrainesData, degree: int) -> RatMatrix:
    """Orthogonal projector onto im L inside the given degree."""
    dim = math.comb(4 * kd.n, degree)
    if degree < 4:
        return RatMatrix.zeros(dim, dim)
    solver = _gram_solver(kd, degree)
    return solver.image_projector()


def rank_table(kd: KrainesData, max_degree: int):
    """Per-degree dimension/rank bookkeeping for L and the effective kernel.

    Returns one dict per degree 0..max_degree with keys degree, dim, rank_L,
    dim_effective, injective.  rank_L is 0 where L would overflow the top
    degree.  dim_effective uses rank-nullity against the transpose pair:
    dim ker Lambda_p = C(4n, p) - rank L_{p-4}.
    """
    top = 4 * kd.n
    if max_degree > top:
        raise DegreeOutOfRange(f"max degree {max_degree} exceeds {top}")
    ranks = {}
    rows = []
    for p in range(max_degree + 1):
        dim = math.comb(top, p)
        if p + 4 <= top:
            rank_L = rank(operator_matrix(kd, "L", p).matrix)
        else:
            rank_L = 0
        ranks[p] = rank_L
        if p < 4:
            dim_eff = dim
        else:
            prev = ranks.get(p - 4)
            if prev is None:
                prev = rank(operator_matrix(kd, "L", p - 4).matrix)
                ranks[p - 4] = prev
            dim_eff = dim - prev
        rows.append(
            {
                "degree": p,
                "dim": dim,
                "rank_L": rank_L,
                "dim_effective": dim_eff,
                "injective": bool(p + 4 <= top and rank_L == dim),
            }
        )
    return rows


def rank_table_csv(rows) -> str:
    lines = ["degree,dim,rank_L,dim_effective,injective"]
    for row in rows:
        lines.append(
            f"{row['degree']},{row['dim']},{row['rank_L']},"
            f"{row['dim_effective']},{str(row['injective']).lower()}"
        )
    return "\n".join(lines) + "\n"


# -- exact Gram solver -------------------------------------------------------


def _gram_solver(kd: KrainesData, degree: int) -> "_GramSolver":
    key = ("gram", degree)
    solver = kd._cache.get(key)
    if solver is None:
        solver = _GramSolver(kd, degree)
        kd._cache[key] = solver
    return solver


class _GramSolver:
    """Solves (L^T L) x = rhs exactly for L: degree-4 -> degree.

    Fast path: with integer L the Gram matrix G is integer and its minimal
    polynomial mu is short, so det-free inversion works as
    x = -(G^{m-1} + c_{m-1} G^{m-2} + ... + c_1 I) rhs / c_0
    with every product an integer operation.  Every solution is re-checked
    against G exactly.  Falls back to dense rational elimination when the
    entries are not integers or a probe polynomial fails verification.
    """

    def __init__(self, kd: KrainesData, degree: int):
        self.kd = kd
        self.degree = degree
        lmat = operator_matrix(kd, "L", degree - 4).matrix
        self.lmat = lmat
        self.src_dim = lmat.cols
        self.integer = all(
            x.denominator == 1 for row in lmat.data for x in row
        )
        self.gram = lmat.transpose() @ lmat
        self._poly = None  # (H, c0) with G^{-1} = H / c0
        self._dense_inverse = None
        self.singular = None
        if self.integer:
            self._init_min_poly()
        else:
            self._init_dense()

    def _init_min_poly(self):
        g = [[int(x) for x in row] for row in self.gram.data]
        n = self.src_dim
        mu = _min_poly_from_probes(g, n)
        if mu is None:
            self._init_dense()
            return
        c0 = mu[0]
        if c0 == 0:
            self.singular = True
            return
        # H = -(G^{m-1} + c_{m-1} G^{m-2} + ... + c_1 I)
        m = len(mu) - 1
        power = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        acc = [[-mu[1] * power[i][j] for j in range(n)] for i in range(n)]
        for k in range(2, m + 1):
            power = _int_matmul(g, power)
            coeff = 1 if k == m else mu[k]
            for i in range(n):
                arow = acc[i]
                prow = power[i]
                for j in range(n):
                    arow[j] -= coeff * prow[j]
        self._poly = (acc, c0)
        self.singular = False

    def _init_dense(self):
        reduced, pivots = rref(
            RatMatrix(
                [
                    list(row) + RatMatrix.identity(self.src_dim).row(i)
                    for i, row in enumerate(self.gram.data)
                ],
                copy=False,
            )
        )
        if pivots != list(range(self.src_dim)):
            self.singular = True
            return
        n = self.src_dim
        self._dense_inverse = RatMatrix(
            [reduced.data[i][n:] for i in range(n)], copy=False
        )
        self.singular = False

    def solve(self, rhs):
        """Exact solution of G x = rhs, or None when G is singular."""
        if self.singular:
            return None
        if self._poly is not None:
            h, c0 = self._poly
            lcm = 1
            for x in rhs:
                lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
            r = [int(x * lcm) for x in rhs]
            hr = [
                sum(hij * rj for hij, rj in zip(hrow, r) if rj)
                for hrow in h
            ]
            den = c0 * lcm
            x = [Fraction(v, den) for v in hr]
            # integer re-check of G (H r) = c0 r
            g = self.gram.data
            for i, grow in enumerate(g):
                s = sum(int(grow[j]) * hr[j] for j in range(len(hr)) if hr[j])
                if s != c0 * r[i]:
                    raise SingularNormalEquations(
                        "minimal-polynomial inverse failed verification"
                    )
            return x
        return self._dense_inverse.matvec(list(rhs))

    def image_projector(self) -> RatMatrix:
        """Dense matrix of L G^{-1} L^T (orthogonal projector onto im L)."""
        if self.singular:
            raise SingularNormalEquations(
                f"Gram matrix singular at degree {self.degree}"
            )
        lt = self.lmat.transpose()
        cols = []
        for j in range(self.lmat.rows):
            x = self.solve(lt.column(j))
            cols.append(self.lmat.matvec(x))
        return RatMatrix.from_columns(cols, self.lmat.rows)


def _int_matmul(a, b):
    n = len(a)
    bt = [[b[i][j] for i in range(n)] for j in range(n)]
    return [
        [sum(x * y for x, y in zip(arow, bcol) if x and y) for bcol in bt]
        for arow in a
    ]


def _int_matvec(a, v):
    return [sum(x * y for x, y in zip(row, v) if x and y) for row in a]


def _min_poly_from_probes(g, n):
    """Monic integer minimal polynomial of g, or None if probes fail.

    Krylov iteration on a probe vector yields the probe's minimal polynomial;
    the candidate is accepted only after verifying mu(G) = 0 on every unit
    vector, so a non-generic probe cannot produce a wrong answer.
    """
    if n == 0:
        return [1]
    for probe in ([1] * n, list(range(1, n + 1)), [i * i + 1 for i in range(n)]):
        mu = _vector_min_poly(g, probe)
        if mu is not None and _annihilates(g, mu, n):
            return mu
    return None


def _vector_min_poly(g, v):
    n = len(v)
    basis = []  # (pivot, reduced vector as Fractions, combination coeffs)
    vectors = [list(v)]
    for step in range(n + 1):
        cur = [Fraction(x) for x in vectors[step]]
        comb = [Fraction(0)] * (step + 1)
        comb[step] = Fraction(1)
        for pivot, vec, vcomb in basis:
            f = cur[pivot]
            if f:
                cur = [x - f * y for x, y in zip(cur, vec)]
                for i, c in enumerate(vcomb):
                    comb[i] -= f * c
        pivot = next((i for i, x in enumerate(cur) if x), None)
        if pivot is None:
            # monic rational dependency; integrality follows from monic
            # divisibility of the characteristic polynomial
            lead = comb[step]
            coeffs = [c / lead for c in comb]
            out = []
            for c in coeffs[:-1]:
                if c.denominator != 1:
                    return None
                out.append(int(c))
            out.append(1)
            return out
        inv = Fraction(1) / cur[pivot]
        cur = [x * inv for x in cur]
        comb = [c * inv for c in comb]
        basis.append((pivot, cur, comb))
        vectors.append(_int_matvec(g, vectors[step]))
    return None


def _annihilates(g, mu, n):
    for i in range(n):
        v = [0] * n
        v[i] = 1
        acc = [mu[0] * x for x in v]
        power = v
        for k in range(1, len(mu)):
            power = _int_matvec(g, power)
            coeff = mu[k]
            if coeff:
                acc = [a + coeff * p for a, p in zip(acc, power)]
        if any(acc):
            return False
    return True
