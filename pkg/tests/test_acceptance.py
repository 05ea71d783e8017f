"""Acceptance suite: one test per criterion, all checks exact (tolerance 0).

Each test prints a single pass/fail line; run with `pytest -s` to see them
inline.  Sample counts and runtime budgets are part of the criteria.
"""

import json
import math
import random
import time

from qkforms.cli import main as cli_main
from qkforms.cli import minus_one_group, quaternion_unit_group
from qkforms.exterior import Form, basis_blades, hodge_star, inner, pullback
from qkforms.flat_model import (
    FlatFoliationSpec,
    OrbifoldQuotientSpec,
    basic_betti_flat,
    chern_commutation_check,
    cohomology_L_injectivity,
    cohomology_decomposition,
    d_fourier,
    delta_fourier,
    harmonic_space_check,
    l2_pairing,
    lichnerowicz_check,
    multiplier_form,
    laplacian_fourier,
    orbifold_betti,
)
from qkforms.lefschetz import effective_basis, lefschetz_decompose
from qkforms.quaternionic import L_op, Lambda_op, calibrate_star_sign, star_formula
from qkforms.sampling import random_form, random_fourier_form, random_group_element

# Betti numbers of T^8/Q8, computed once by the averaging oracle
# (invariant_basis dimensions) and frozen here before being asserted.
Q8_BETTI_Q2 = [1, 0, 10, 0, 22, 0, 10, 0, 1]


def _report(num, ok, detail):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    assert ok, line


def test_criterion_1_omega_invariance(kd1, kd2):
    started = time.perf_counter()
    rng = random.Random(10_001)
    ok = True
    for kd in (kd1, kd2):
        for _ in range(50):
            g = random_group_element(rng, kd.n)
            if pullback(g.realized, kd.omega) != kd.omega:
                ok = False
    elapsed = time.perf_counter() - started
    _report(
        1,
        ok and elapsed < 60,
        f"pullback(g, omega) == omega for 50 sampled g per n in (1, 2) "
        f"[{elapsed:.1f}s]",
    )


def test_criterion_2_star_parity(kd1, kd2):
    ok = True
    odd_flips = 0
    for kd in (kd1, kd2):
        top = 4 * kd.n
        for p in range(top + 1):
            sign = -1 if (p * (top - p)) % 2 else 1
            for mask in basis_blades(kd.n, p):
                blade = Form.from_blade(kd.n, mask)
                if hodge_star(hodge_star(blade)) != blade.scale(sign):
                    ok = False
                if sign < 0:
                    odd_flips += 1
    # the odd-degree sign flip is the documented convention, not a failure
    _report(
        2,
        ok and odd_flips > 0,
        f"star(star(e_S)) = (-1)^(p(4n-p)) e_S on every blade, n in (1, 2); "
        f"{odd_flips} odd-degree blades flip sign as documented",
    )


def test_criterion_3_adjointness_and_star_formula(kd1, kd2, kd3):
    rng = random.Random(10_003)
    ok_adjoint = True
    for kd in (kd1, kd2, kd3):
        top = 4 * kd.n
        for _ in range(200):
            p = rng.randint(0, top - 4)
            a = random_form(rng, kd.n, p)
            b = random_form(rng, kd.n, p + 4)
            if inner(L_op(kd, a), b) != inner(a, Lambda_op(kd, b)):
                ok_adjoint = False
    ok_star = True
    for kd in (kd1, kd2, kd3):
        for p in range(4, 4 * kd.n + 1):
            sign = calibrate_star_sign(kd, p)  # raises if no single sign works
            a = random_form(rng, kd.n, p)
            if Lambda_op(kd, a) != star_formula(kd, a).scale(sign):
                ok_star = False
    _report(
        3,
        ok_adjoint and ok_star,
        "inner(L a, b) == inner(a, Lambda b) on 200 pairs per n in (1, 2, 3); "
        "star formula holds with one calibrated sign per degree",
    )


def test_criterion_4_decomposition(kd1, kd2, kd3):
    started = time.perf_counter()
    rng = random.Random(10_004)
    ok = True
    for _ in range(25):
        a = random_form(rng, 3, 4)
        dec = lefschetz_decompose(kd3, a)
        if not dec.residual.is_zero() or dec.reconstruct(kd3) != a:
            ok = False
        for comp in dec.components:
            if comp.degree >= 4 and not Lambda_op(kd3, comp).is_zero():
                ok = False
    bookkeeping = (
        math.comb(12, 4) == 495 and len(effective_basis(kd3, 4)) == 494
    )
    full_low = all(
        len(effective_basis(kd, p)) == math.comb(4 * kd.n, p)
        for kd in (kd1, kd2, kd3)
        for p in range(4)
    )
    elapsed = time.perf_counter() - started
    _report(
        4,
        ok and bookkeeping and full_low and elapsed < 300,
        f"25 seeded degree-4 forms at n=3 split residual-free into effective "
        f"components; 495 = 494 + 1; degrees <= 3 fully effective [{elapsed:.1f}s]",
    )


def test_criterion_5_flat_injectivity_and_decomposition():
    ok = True
    details = []
    for q in (2, 3):
        spec = FlatFoliationSpec(leaf_dim=1, q=q)
        for k in range(q):
            cert = cohomology_L_injectivity(spec, k)
            if not cert["pass"]:
                ok = False
            details.append(f"q={q} k={k} rank {cert['rank']}/{cert['dim']}")
        for k in range(q + 4):  # k <= q + 3
            cert = cohomology_decomposition(spec, k)
            if not cert["pass"]:
                ok = False
    _report(
        5,
        ok,
        "L injective on H^k for k < q and residual-free decomposition of "
        f"full bases for k <= q+3, q in (2, 3); ranks: {'; '.join(details)}",
    )


def test_criterion_6_orbifold_betti_and_inequalities():
    rep_minus = orbifold_betti(OrbifoldQuotientSpec(q=2, group=minus_one_group(2)))
    ok = rep_minus.betti == [1, 0, 28, 0, 70, 0, 28, 0, 1]
    rep_q8 = orbifold_betti(OrbifoldQuotientSpec(q=2, group=quaternion_unit_group(2)))
    ok = ok and rep_q8.betti == Q8_BETTI_Q2
    for rep in (rep_minus, rep_q8):
        if not rep.taut["omega_invariant"]:
            ok = False
        if not (rep.betti[4] >= 1 == rep.betti[0]):
            ok = False
        for chain in rep.inequalities:
            if chain["asserted"] and not chain["pass"]:
                ok = False
    # a q=3 quotient exercises the nontrivial chain B^0 <= B^4
    rep3 = orbifold_betti(OrbifoldQuotientSpec(q=3, group=quaternion_unit_group(3)))
    chain0 = next(
        c for c in rep3.inequalities if c["asserted"] and c["i"] == 0
    )
    ok = ok and chain0["degrees"] == [0, 4] and chain0["pass"]
    _report(
        6,
        ok,
        f"T^8/(+-1) betti {rep_minus.betti}; Q8 betti {rep_q8.betti} matches the "
        f"frozen averaging oracle; every asserted chain holds; B^4 >= 1 = B^0",
    )


def test_criterion_7_flat_hodge_suite():
    started = time.perf_counter()
    rng = random.Random(10_007)
    ok = True
    for q in (1, 2):
        top = 4 * q
        spec = FlatFoliationSpec(leaf_dim=1, q=q)
        for _ in range(100):
            p = rng.randint(0, top - 2)
            a = random_fourier_form(rng, q, p, 1)
            if not d_fourier(d_fourier(a)).is_zero():
                ok = False
            b = random_fourier_form(rng, q, rng.randint(2, top), 1)
            if not delta_fourier(delta_fourier(b)).is_zero():
                ok = False
        for _ in range(100):
            p = rng.randint(0, top - 1)
            a = random_fourier_form(rng, q, p, 1)
            b = random_fourier_form(rng, q, p + 1, 1)
            if l2_pairing(d_fourier(a), b) != l2_pairing(a, delta_fourier(b)):
                ok = False
        for _ in range(100):
            a = random_fourier_form(rng, q, rng.randint(0, top), 1)
            if laplacian_fourier(a) != multiplier_form(a):
                ok = False
        betti = basic_betti_flat(spec).betti
        for k in range(top + 1):
            res = harmonic_space_check(spec, k, 1)
            if not res["pass"] or res["dim_harmonic"] != betti[k]:
                ok = False
    elapsed = time.perf_counter() - started
    _report(
        7,
        ok and elapsed < 180,
        f"d^2 = 0, delta^2 = 0, adjointness on 100 pairs, |xi|^2 multiplier, "
        f"harmonic space = constants with Betti dimensions, q in (1, 2) "
        f"[{elapsed:.1f}s]",
    )


def test_criterion_8_commutation_suite():
    rng = random.Random(10_008)
    spec = FlatFoliationSpec(leaf_dim=1, q=2)
    samples = [random_fourier_form(rng, 2, 4, 1) for _ in range(20)]
    ok = True
    for selector in ("effective-kernel", "L-image"):
        res = chern_commutation_check(spec, selector, samples)
        if not (res["commutes"] and res["type_preserved"]):
            ok = False
    res = chern_commutation_check(
        spec, "invariants", samples, group=minus_one_group(2)
    )
    if not (res["commutes"] and res["type_preserved"]):
        ok = False
    lich = lichnerowicz_check(
        spec, [random_fourier_form(rng, 2, 1, 1) for _ in range(20)]
    )
    ok = ok and lich["pass"]
    _report(
        8,
        ok,
        "P_W Delta = Delta P_W for effective kernel, L-image and invariants; "
        "Delta preserves type W; [L, Delta] = 0 on q=2 samples",
    )


def test_criterion_9_determinism(tmp_path):
    docs = []
    for name in ("first.json", "second.json"):
        out = tmp_path / name
        code = cli_main(
            [
                "verify",
                "--suite",
                "all",
                "--seed",
                "123",
                "--samples",
                "10",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        del doc["timing"]
        docs.append(json.dumps(doc, sort_keys=True))
    ok = docs[0] == docs[1]
    _report(
        9,
        ok,
        "verify --suite all twice with one seed: byte-identical reports "
        "(timing excluded)",
    )
