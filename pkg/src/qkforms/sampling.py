"""Seed-reproducible random inputs for the verification suites.

Coefficients are uniform nonzero integers in [-9, 9] and sparsity is capped
at min(20, dim) blades per form.  All checks downstream are exact algebraic
identities, so the distribution details are immaterial; the only contract is
that one seed fully determines every sample.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

from .exterior import Form, blade_from_indices
from .flat_model import FourierForm
from .linalg import GaussianRational
from .symmetry import (
    GroupElement,
    QuatMatrix,
    Quaternion,
    cayley_sp1,
    cayley_spn,
    realize,
)

MAX_TERMS = 20
COEFF_BOUND = 9


def _nonzero_int(rng: random.Random, bound: int = COEFF_BOUND) -> int:
    while True:
        c = rng.randint(-bound, bound)
        if c:
            return c


def random_form(rng: random.Random, n: int, degree: int) -> Form:
    """Sparse random form with small integer coefficients."""
    dim = math.comb(4 * n, degree)
    count = min(MAX_TERMS, dim)
    masks = set()
    while len(masks) < count:
        masks.add(blade_from_indices(sorted(rng.sample(range(4 * n), degree))))
    terms = {mask: Fraction(_nonzero_int(rng)) for mask in sorted(masks)}
    return Form(n, degree, terms)


def random_fourier_form(
    rng: random.Random, q: int, degree: int, cutoff: int
) -> FourierForm:
    """Sparse random Fourier form inside the cutoff box."""
    dim = math.comb(4 * q, degree)
    count = min(MAX_TERMS, dim)
    terms = {}
    while len(terms) < count:
        xi = tuple(rng.randint(-cutoff, cutoff) for _ in range(4 * q))
        mask = blade_from_indices(sorted(rng.sample(range(4 * q), degree)))
        c = GaussianRational(
            Fraction(rng.randint(-COEFF_BOUND, COEFF_BOUND)),
            Fraction(rng.randint(-COEFF_BOUND, COEFF_BOUND)),
        )
        if c:
            terms[(xi, mask)] = c
    return FourierForm(q, degree, cutoff, terms)


def random_pure_quaternion(rng: random.Random) -> Quaternion:
    """Pure quaternion with small rational components."""
    def comp():
        return Fraction(rng.randint(-3, 3), rng.randint(1, 3))

    return Quaternion.pure(comp(), comp(), comp())


def random_sp1(rng: random.Random) -> Quaternion:
    """Exact unit quaternion via the Cayley transform."""
    return cayley_sp1(random_pure_quaternion(rng))


def random_spn(rng: random.Random, n: int) -> QuatMatrix:
    """Exact symplectic-unitary matrix via the Cayley transform of a random
    skew-Hermitian matrix."""
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = random_pure_quaternion(rng)
        for j in range(i + 1, n):
            x = Quaternion(
                Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
                Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
                Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
                Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
            )
            entries[i][j] = x
            entries[j][i] = -x.conjugate()
    return cayley_spn(QuatMatrix(entries))


def random_group_element(rng: random.Random, n: int) -> GroupElement:
    """Random element of Sp(n).Sp(1) with exact rational realization."""
    return realize(random_spn(rng, n), random_sp1(rng))


def exhaustive_blades(n: int, degree: int):
    return [blade_from_indices(c) for c in combinations(range(4 * n), degree)]
