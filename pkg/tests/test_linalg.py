from fractions import Fraction

import pytest

from qkforms.errors import ParseError, SingularNormalEquations
from qkforms.linalg import (
    GaussianRational,
    RatMatrix,
    kernel_basis,
    rank,
    rat_from_str,
    rat_to_str,
    rref,
    solve_least_squares_exact,
    solve_least_squares_min_norm,
)


def test_rref_identity():
    m = RatMatrix.identity(3)
    reduced, pivots = rref(m)
    assert reduced == m
    assert pivots == [0, 1, 2]


def test_rref_zero():
    m = RatMatrix.zeros(2, 2)
    reduced, pivots = rref(m)
    assert reduced == m
    assert pivots == []


def test_rref_dependent_rows():
    # hand elimination: r2 <- r2 - 2 r1 clears the second row
    m = RatMatrix([[1, 2], [2, 4]])
    reduced, pivots = rref(m)
    assert reduced.to_lists() == [[1, 2], [0, 0]]
    assert pivots == [0]


def test_rref_idempotent():
    m = RatMatrix([[2, 4, 1], [1, 3, 0], [3, 7, 1]])
    reduced, _ = rref(m)
    again, _ = rref(reduced)
    assert again == reduced


def test_kernel_identity_empty():
    assert kernel_basis(RatMatrix.identity(4)) == []


def test_kernel_zero_row():
    basis = kernel_basis(RatMatrix([[0, 0, 0]]))
    assert len(basis) == 3


def test_kernel_multiply_back():
    m = RatMatrix([[1, 1, 0]])
    basis = kernel_basis(m)
    assert len(basis) == 2
    for v in basis:
        assert m.matvec(v) == [0]


def test_rank_nullity():
    m = RatMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) + len(kernel_basis(m)) == m.cols


def test_rank_transpose_symmetry():
    m = RatMatrix([[1, 2], [2, 4], [0, 1]])
    assert rank(m) == rank(m.transpose())


def test_least_squares_identity():
    m = RatMatrix.identity(3)
    b = [Fraction(1), Fraction(-2), Fraction(5, 3)]
    assert solve_least_squares_exact(m, b) == b


def test_least_squares_normal_equation():
    # columns [1, 1]; normal equations 2x = 0 + 2
    m = RatMatrix([[1], [1]])
    assert solve_least_squares_exact(m, [0, 2]) == [Fraction(1)]


def test_least_squares_exact_preimage_and_residual_orthogonality():
    m = RatMatrix([[1, 0], [1, 1], [0, 2]])
    x_true = [Fraction(3), Fraction(-1, 2)]
    b = m.matvec(x_true)
    x = solve_least_squares_exact(m, b)
    assert x == x_true
    residual = [bi - ri for bi, ri in zip(b, m.matvec(x))]
    assert residual == [0, 0, 0]
    # generic b: the residual must be orthogonal to every column
    b = [Fraction(1), Fraction(0), Fraction(1)]
    x = solve_least_squares_exact(m, b)
    residual = [bi - ri for bi, ri in zip(b, m.matvec(x))]
    for j in range(m.cols):
        assert sum(c * r for c, r in zip(m.column(j), residual)) == 0


def test_least_squares_singular_raises():
    m = RatMatrix([[1, 1], [1, 1]])
    with pytest.raises(SingularNormalEquations):
        solve_least_squares_exact(m, [1, 0])


def test_min_norm_solution_orthogonal_to_kernel():
    m = RatMatrix([[1, 1], [1, 1]])
    x = solve_least_squares_min_norm(m, [2, 2])
    # normal equations are consistent; minimum norm picks x = (1, 1)
    assert x == [Fraction(1), Fraction(1)]
    gram = m.transpose() @ m
    for v in kernel_basis(gram):
        assert sum(a * b for a, b in zip(x, v)) == 0


def test_rational_strings():
    assert rat_to_str(Fraction(-3, 6)) == "-1/2"
    assert rat_from_str("7") == 7
    assert rat_from_str("-4/8") == Fraction(-1, 2)
    for bad in ("1/0", "1/-2", "x", "1.5", ""):
        with pytest.raises(ParseError):
            rat_from_str(bad)


def test_gaussian_rational_arithmetic():
    i = GaussianRational(0, 1)
    one = GaussianRational(1, 0)
    assert i * i == -one
    z = GaussianRational(Fraction(1, 2), Fraction(-3))
    assert z.times_i() == z * i
    assert z.conjugate().conjugate() == z
    assert (z - z) == GaussianRational(0, 0)
    assert not GaussianRational(0, 0)
    assert z.to_dict() == {"re": "1/2", "im": "-3"}
    assert GaussianRational.from_dict(z.to_dict()) == z
