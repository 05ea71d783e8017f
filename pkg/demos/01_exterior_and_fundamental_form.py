"""Tour of the exact exterior algebra and the quaternionic 4-form.

Run as: python3 demos/01_exterior_and_fundamental_form.py
"""

from fractions import Fraction

from qkforms import (
    Form,
    fundamental_two_forms,
    hodge_star,
    inner,
    kraines_form,
    omega_top_coefficient,
    pullback,
    standard_frame,
    wedge,
)
from qkforms.symmetry import QuatMatrix, Quaternion, realize

print("=== blades and wedge products (all arithmetic exact) ===")
e0 = Form.basis(1, [0])
e1 = Form.basis(1, [1])
print("e0 ^ e1       =", wedge(e0, e1))
print("e1 ^ e0       =", wedge(e1, e0))

a = Form(1, 2, {0b0011: Fraction(1), 0b1100: Fraction(-1)})
print("(e01 - e23)^2 =", wedge(a, a), " (the two cross terms each give -vol)")

print()
print("=== Hodge star, orientation e0^e1^e2^e3 ===")
print("star(1)   =", hodge_star(Form.scalar(1, 1)))
print("star(e0)  =", hodge_star(e0))
print("star(vol) =", hodge_star(Form.basis(1, [0, 1, 2, 3])))

print()
print("=== the quaternionic frame on R^4 = H ===")
frame = standard_frame(1)
print("I sends 1 to i:", frame.I.matrix.matvec([1, 0, 0, 0]))
print("J then I equals K (right multiplications compose in reverse):",
      (frame.J.matrix @ frame.I.matrix) == frame.K.matrix)

omega_I, omega_J, omega_K = fundamental_two_forms(frame)
print("omega_I =", omega_I)
print("omega_J =", omega_J)
print("omega_K =", omega_K)

print()
print("=== the invariant 4-form omega = omega_I^2 + omega_J^2 + omega_K^2 ===")
kd = kraines_form(frame)
print("omega (n=1)            =", kd.omega)
print("inner(omega, omega)    =", inner(kd.omega, kd.omega))
for n in (1, 2, 3):
    kdn = kraines_form(standard_frame(n))
    print(f"volume coefficient of omega^{n} (n={n}):",
          omega_top_coefficient(kdn))

print()
print("=== invariance under an exact symplectic rotation ===")
# right multiplication by the unit quaternion 3/5 + 4/5 i (a 3-4-5 triangle)
q = Quaternion(Fraction(3, 5), Fraction(4, 5), 0, 0)
g = realize(QuatMatrix.identity(1), q)
print("g orthogonal:", g.realized.is_orthogonal())
print("pullback(g, omega) == omega:", pullback(g.realized, kd.omega) == kd.omega)
