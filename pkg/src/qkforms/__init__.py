"""Exact quaternionic exterior calculus toolkit.

Everything runs over exact rationals (and Gaussian rationals for Fourier
coefficients), so the algebraic identities verified by the test suites hold
with zero tolerance.
"""

from .errors import (
    DegreeMismatch,
    DegreeOutOfRange,
    DegreeOverflow,
    DegreeUnderflow,
    DimensionMismatch,
    InvalidDimension,
    LatticeViolation,
    OrderExceeded,
    OutOfTheoremRange,
    ParseError,
    QkError,
    SignInconsistent,
    SingularCayley,
    SingularNormalEquations,
)
from .exterior import (
    Form,
    LinearMap,
    basis_blades,
    blade_from_indices,
    blade_indices,
    hodge_star,
    inner,
    interior,
    pullback,
    pullback_matrix,
    wedge,
)
from .flat_model import (
    CohomologyReport,
    FlatFoliationSpec,
    FourierForm,
    OrbifoldQuotientSpec,
    basic_betti_flat,
    chern_commutation_check,
    cohomology_L_injectivity,
    cohomology_decomposition,
    d_fourier,
    delta_fourier,
    harmonic_decomposition_check,
    harmonic_space_check,
    kraines_inequalities,
    l2_pairing,
    laplacian_fourier,
    lichnerowicz_check,
    multiplier_form,
    orbifold_betti,
    wedge_constant,
)
from .lefschetz import (
    Decomposition,
    OperatorMatrix,
    effective_basis,
    lefschetz_decompose,
    operator_matrix,
    rank_table,
    rank_table_csv,
)
from .linalg import (
    GaussianRational,
    Rational,
    RatMatrix,
    kernel_basis,
    rank,
    rat_from_str,
    rat_to_str,
    rref,
    solve_least_squares_exact,
)
from .quaternionic import (
    KrainesData,
    L_op,
    Lambda_op,
    QuatFrame,
    calibrate_star_sign,
    fundamental_two_forms,
    kraines_form,
    omega_top_coefficient,
    standard_frame,
)
from .symmetry import (
    FiniteGroup,
    GroupElement,
    QuatMatrix,
    Quaternion,
    averaging_projector,
    cayley_sp1,
    cayley_spn,
    group_closure,
    invariant_basis,
    is_invariant,
    realize,
)

__version__ = "0.1.0"
