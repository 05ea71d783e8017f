"""Effective forms and the degree-4 Lefschetz-type decomposition.

A degree-p form splits as a = a_e + L(eta) with a_e annihilated by the
lowering operator; recursing gives a = sum_i L^i(w_e^{p-4i}) with every
piece effective.  Everything below is an exact computation with a zero
residual certificate.

Run as: python3 demos/02_effective_decomposition.py
"""

import random

from qkforms import (
    L_op,
    Lambda_op,
    effective_basis,
    inner,
    kraines_form,
    lefschetz_decompose,
    rank_table,
    rank_table_csv,
    standard_frame,
)
from qkforms.sampling import random_form

print("=== L raises degree by 4, Lambda is its metric adjoint ===")
kd = kraines_form(standard_frame(3))
rng = random.Random(2024)
a = random_form(rng, 3, 1)
b = random_form(rng, 3, 5)
print("inner(L a, b) =", inner(L_op(kd, a), b))
print("inner(a, L* b)=", inner(a, Lambda_op(kd, b)), " (equal, exactly)")

print()
print("=== effective subspaces ===")
print("dim ker Lambda on degree 4 for n=3:", len(effective_basis(kd, 4)),
      "of", 495)
kd1 = kraines_form(standard_frame(1))
print("dim ker Lambda on degree 4 for n=1:", len(effective_basis(kd1, 4)),
      " (the volume form is a multiple of omega)")

print()
print("=== decomposition of a random degree-4 form, n = 3 ===")
w = random_form(rng, 3, 4)
dec = lefschetz_decompose(kd, w)
print("component degrees:", [c.degree for c in dec.components])
print("residual zero:", dec.residual.is_zero())
print("reconstruction exact:", dec.reconstruct(kd) == w)
print("effective part annihilated:",
      Lambda_op(kd, dec.components[0]).is_zero())
print("effective part orthogonal to omega:",
      inner(dec.components[0], kd.omega) == 0)

print()
print("=== omega itself is pure L-image: omega = L(1) ===")
dec_omega = lefschetz_decompose(kd, kd.omega, force=True)
print("components:", [str(c) for c in dec_omega.components])

print()
print("=== rank and dimension table for n = 2 ===")
kd2 = kraines_form(standard_frame(2))
print(rank_table_csv(rank_table(kd2, 8)))
