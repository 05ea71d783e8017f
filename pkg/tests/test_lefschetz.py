import math
import random
from fractions import Fraction

import pytest

from qkforms.errors import (
    DegreeOutOfRange,
    OutOfTheoremRange,
)
from qkforms.exterior import (
    Form,
    basis_blades,
    form_to_vector,
    inner,
)
from qkforms.lefschetz import (
    _GramSolver,
    effective_basis,
    effective_projector,
    image_projector,
    lefschetz_decompose,
    operator_matrix,
    rank_table,
    rank_table_csv,
)
from qkforms.linalg import RatMatrix, rank
from qkforms.quaternionic import L_op, Lambda_op
from qkforms.sampling import random_form


def test_operator_matrix_L0_is_omega_column(kd1):
    op = operator_matrix(kd1, "L", 0)
    assert op.matrix.cols == 1 and op.matrix.rows == 1
    assert op.matrix.data[0][0] == -6  # the single coefficient of omega


def test_operator_matrix_L0_n2_column(kd2):
    op = operator_matrix(kd2, "L", 0)
    blades = basis_blades(2, 4)
    assert op.matrix.column(0) == form_to_vector(kd2.omega, blades)


def test_lambda_matrix_is_transpose(kd2):
    lam = operator_matrix(kd2, "Lambda", 5)
    ell = operator_matrix(kd2, "L", 1)
    assert lam.matrix == ell.matrix.transpose()


def test_lambda_matrix_consistent_with_subset_formula(kd2):
    rng = random.Random(21)
    lam = operator_matrix(kd2, "Lambda", 4)
    src = basis_blades(2, 4)
    tgt = basis_blades(2, 0)
    a = random_form(rng, 2, 4)
    assert lam.matrix.matvec(form_to_vector(a, src)) == form_to_vector(
        Lambda_op(kd2, a), tgt
    )


def test_gram_matrix_symmetric_psd_diagonal(kd2):
    op = operator_matrix(kd2, "L", 1)
    gram = op.matrix.transpose() @ op.matrix
    assert gram == gram.transpose()
    for i in range(gram.rows):
        assert gram.data[i][i] > 0  # columns of an injective L are nonzero


def test_L1_has_full_column_rank_n2(kd2):
    op = operator_matrix(kd2, "L", 1)
    assert op.matrix.rows == 56 and op.matrix.cols == 8
    assert rank(op.matrix) == 8


def test_operator_matrix_range_errors(kd1):
    with pytest.raises(DegreeOutOfRange):
        operator_matrix(kd1, "L", 1)
    with pytest.raises(DegreeOutOfRange):
        operator_matrix(kd1, "Lambda", 3)
    with pytest.raises(ValueError):
        operator_matrix(kd1, "X", 0)


def test_effective_basis_low_degrees_full(kd1, kd2, kd3):
    for kd in (kd1, kd2, kd3):
        for p in range(4):
            assert len(effective_basis(kd, p)) == math.comb(4 * kd.n, p)


def test_effective_basis_dimensions(kd1, kd3):
    basis = effective_basis(kd3, 4)
    assert len(basis) == 494  # C(12, 4) - 1
    for f in basis[:10]:
        assert Lambda_op(kd3, f).is_zero()
    assert len(effective_basis(kd1, 4)) == 0


def test_decompose_omega_gives_pure_L_part(kd3):
    dec = lefschetz_decompose(kd3, kd3.omega)
    assert [c.degree for c in dec.components] == [4, 0]
    assert dec.components[0].is_zero()
    assert dec.components[1] == Form.scalar(3, 1)
    assert dec.residual.is_zero()


def test_decompose_low_degree_identity(kd2):
    rng = random.Random(22)
    a = random_form(rng, 2, 1)
    dec = lefschetz_decompose(kd2, a)
    assert dec.components == [a]
    assert dec.residual.is_zero()


def test_decompose_random_forms_n3_p4(kd3):
    rng = random.Random(23)
    for _ in range(10):
        a = random_form(rng, 3, 4)
        dec = lefschetz_decompose(kd3, a)
        assert dec.residual.is_zero()
        assert dec.reconstruct(kd3) == a
        assert Lambda_op(kd3, dec.components[0]).is_zero()


def test_decompose_effective_form_is_fixed(kd3):
    # an effective form comes back as its own sole nonzero component
    rng = random.Random(24)
    a = random_form(rng, 3, 4)
    dec = lefschetz_decompose(kd3, a)
    eff = dec.components[0]
    again = lefschetz_decompose(kd3, eff)
    assert again.components[0] == eff
    assert again.components[1].is_zero()


def test_decompose_orthogonality(kd3):
    # the effective part is orthogonal to the entire L-image
    rng = random.Random(25)
    a = random_form(rng, 3, 4)
    eff = lefschetz_decompose(kd3, a).components[0]
    for mask in basis_blades(3, 0):
        eta = Form.from_blade(3, mask)
        assert inner(eff, L_op(kd3, eta)) == 0


def test_decompose_out_of_range_raises(kd1):
    vol = Form.from_blade(1, 0b1111)
    with pytest.raises(OutOfTheoremRange):
        lefschetz_decompose(kd1, vol)
    dec = lefschetz_decompose(kd1, vol, force=True)
    assert dec.residual.is_zero()
    assert dec.reconstruct(kd1) == vol
    # vol = omega * (-1/6): pure L-image, no effective 4-part
    assert dec.components[0].is_zero()
    assert dec.components[1] == Form.scalar(1, Fraction(-1, 6))


def test_rank_table_rows(kd2):
    rows = rank_table(kd2, 8)
    assert len(rows) == 9
    by_degree = {r["degree"]: r for r in rows}
    assert by_degree[0] == {
        "degree": 0,
        "dim": 1,
        "rank_L": 1,
        "dim_effective": 1,
        "injective": True,
    }
    assert by_degree[1]["rank_L"] == 8 and by_degree[1]["injective"]
    # rank-nullity against independently computed kernels
    for p in (4, 5):
        assert by_degree[p]["dim_effective"] == len(effective_basis(kd2, p))
    assert by_degree[8]["dim"] == 1 and by_degree[8]["rank_L"] == 0


def test_rank_table_csv(kd1):
    csv = rank_table_csv(rank_table(kd1, 4))
    lines = csv.strip().splitlines()
    assert lines[0] == "degree,dim,rank_L,dim_effective,injective"
    assert lines[1] == "0,1,1,1,true"
    assert len(lines) == 6


def test_projectors(kd2):
    rng = random.Random(26)
    eff = effective_projector(kd2, 4)
    img = image_projector(kd2, 4)
    dim = 70
    ident = RatMatrix.identity(dim)
    # complementary idempotents
    assert (eff @ eff) == eff
    assert (img @ img) == img
    total = RatMatrix(
        [
            [eff.data[i][j] + img.data[i][j] for j in range(dim)]
            for i in range(dim)
        ],
        copy=False,
    )
    assert total == ident
    # image of eff is effective, image of img is in the range of L
    blades = basis_blades(2, 4)
    a = random_form(rng, 2, 4)
    from qkforms.exterior import vector_to_form

    pa = vector_to_form(2, 4, blades, eff.matvec(form_to_vector(a, blades)))
    assert Lambda_op(kd2, pa).is_zero()


def test_gram_solver_singular_path():
    # synthetic singular system exercises the dense minimum-norm fallback
    from qkforms.linalg import solve_least_squares_min_norm

    m = RatMatrix([[1, 1], [2, 2], [0, 0]])
    x = solve_least_squares_min_norm(m, [3, 6, 0])
    assert x == [Fraction(3, 2), Fraction(3, 2)]


def test_gram_solver_min_poly_matches_dense(kd2):
    solver = _GramSolver(kd2, 5)
    assert solver.integer and not solver.singular
    rng = random.Random(27)
    rhs = [Fraction(rng.randint(-5, 5)) for _ in range(solver.src_dim)]
    x = solver.solve(rhs)
    assert solver.gram.matvec(x) == rhs
