"""Command-line entry point: reproducible verification runs and file I/O.

Commands: dims, decompose, verify, orbifold-betti, laplacian-check.
Exit codes: 0 all checks pass, 1 at least one check failed, 2 input or
usage error.  Reports are JSON with sorted keys; re-running with the same
seed reproduces them byte for byte apart from the "timing" field.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import io as qkio
from .errors import OutOfTheoremRange, ParseError, QkError
from .exterior import Form, basis_blades, hodge_star, inner, pullback
from .flat_model import (
    FlatFoliationSpec,
    OrbifoldQuotientSpec,
    basic_betti_flat,
    chern_commutation_check,
    d_fourier,
    delta_fourier,
    harmonic_decomposition_check,
    harmonic_space_check,
    l2_pairing,
    lichnerowicz_check,
    orbifold_betti,
    weitzenbock_check,
)
from .lefschetz import lefschetz_decompose, rank_table, rank_table_csv
from .quaternionic import (
    L_op,
    Lambda_op,
    calibrate_star_sign,
    kraines_form,
    omega_top_coefficient,
    standard_frame,
)
from .sampling import random_form, random_fourier_form, random_group_element
from .symmetry import QUAT_ONE, Quaternion, QuatMatrix, group_closure, realize

CONVENTIONS = {
    "generator_ordering": "index 4*alpha + c with c in {0: a, 1: b, 2: c, 3: d}",
    "two_form_slots": "omega_A(u, v) = <A u, v> (right multiplication structures)",
    "orientation": "vol = e0^e1^...^e_{4n-1}; star fixed by e_S ^ *e_S = +vol",
    "fourier_derivative": "d_j e_xi = i xi_j e_xi",
}


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    q: int | None = None
    seed: int = 0
    samples: int | None = None
    cutoff: int = 1
    group_path: str | None = None
    form_path: str | None = None
    out: str | None = None
    force: bool = False

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "n": self.n,
            "q": self.q,
            "seed": self.seed,
            "samples": self.samples,
            "cutoff": self.cutoff,
            "group": self.group_path,
            "form": self.form_path,
            "force": self.force,
        }


@dataclass
class SuiteReport:
    suite: str
    config: RunConfig
    checks: list = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def overall(self) -> str:
        return "pass" if all(c["status"] != "fail" for c in self.checks) else "fail"

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config.to_dict(),
            "conventions": CONVENTIONS,
            "checks": self.checks,
            "overall": self.overall,
            "timing": {"elapsed_seconds": self.elapsed_seconds},
        }


def _check(name: str, passed: bool, witness=None, skipped: bool = False) -> dict:
    status = "skipped" if skipped else ("pass" if passed else "fail")
    out = {"name": name, "status": status}
    if witness is not None:
        out["witness"] = witness
    return out


def minus_one_group(q: int):
    """The order-2 group {+-identity} on H^q."""
    return group_closure([realize(QuatMatrix.identity(q), -QUAT_ONE)], 2)


def quaternion_unit_group(q: int):
    """The order-8 unit quaternion group acting diagonally on H^q."""
    gens = [
        realize(QuatMatrix.identity(q), Quaternion(0, 1, 0, 0)),
        realize(QuatMatrix.identity(q), Quaternion(0, 0, 1, 0)),
    ]
    return group_closure(gens, 8)


# -- suites -------------------------------------------------------------------


def kraines_suite(
    n: int,
    seed: int,
    invariance_samples: int = 50,
    adjoint_pairs: int = 200,
    decomposition_samples: int = 25,
) -> list:
    rng = random.Random(seed)
    frame = standard_frame(n)
    kd = kraines_form(frame)
    top = 4 * n
    checks = []

    ident = [[1 if i == j else 0 for j in range(top)] for i in range(top)]
    i_mat, j_mat, k_mat = (s.matrix for s in frame.structures())
    minus = [[-x for x in row] for row in ident]
    frame_ok = (
        (i_mat @ i_mat).to_lists() == minus
        and (j_mat @ j_mat).to_lists() == minus
        and (k_mat @ k_mat).to_lists() == minus
        and (j_mat @ i_mat) == k_mat
        and all(s.is_orthogonal() for s in frame.structures())
    )
    checks.append(
        _check(
            "frame_structure",
            frame_ok,
            {"note": "right multiplications compose contravariantly: J@I = K"},
        )
    )

    top_coeff = omega_top_coefficient(kd)
    checks.append(
        _check("omega_top_power_nonzero", top_coeff != 0, {"coefficient": str(top_coeff)})
    )

    parity_ok = True
    for p in range(top + 1):
        expected_sign = -1 if (p * (top - p)) % 2 else 1
        for mask in basis_blades(n, p):
            blade = Form.from_blade(n, mask)
            twice = hodge_star(hodge_star(blade))
            if twice != blade.scale(expected_sign):
                parity_ok = False
    checks.append(
        _check(
            "star_parity",
            parity_ok,
            {
                "identity": "star(star(w)) = (-1)^{p(4n-p)} w",
                "note": "odd degrees pick up -1; documented convention, not a failure",
            },
        )
    )

    inv_ok = True
    for _ in range(invariance_samples):
        g = random_group_element(rng, n)
        if pullback(g.realized, kd.omega) != kd.omega:
            inv_ok = False
    checks.append(
        _check("omega_invariance_sampled", inv_ok, {"samples": invariance_samples})
    )

    adj_ok = True
    for _ in range(adjoint_pairs):
        p = rng.randint(0, top - 4)
        a = random_form(rng, n, p)
        b = random_form(rng, n, p + 4)
        if inner(L_op(kd, a), b) != inner(a, Lambda_op(kd, b)):
            adj_ok = False
    checks.append(_check("adjointness_sampled", adj_ok, {"pairs": adjoint_pairs}))

    signs = {}
    sign_ok = True
    try:
        for p in range(4, top + 1):
            signs[str(p)] = calibrate_star_sign(kd, p)
    except QkError:
        sign_ok = False
    checks.append(_check("star_formula_single_sign", sign_ok, {"signs": signs}))

    dec_ok = True
    p_dec = min(n + 1, top)
    for _ in range(decomposition_samples):
        a = random_form(rng, n, p_dec)
        dec = lefschetz_decompose(kd, a)
        if not dec.residual.is_zero() or dec.reconstruct(kd) != a:
            dec_ok = False
        for comp in dec.components:
            if comp.degree >= 4 and not Lambda_op(kd, comp).is_zero():
                dec_ok = False
    checks.append(
        _check(
            "decomposition_sampled",
            dec_ok,
            {"degree": p_dec, "samples": decomposition_samples},
        )
    )
    return checks


def hodge_suite(q: int, cutoff: int, seed: int, samples: int = 100) -> list:
    rng = random.Random(seed)
    spec = FlatFoliationSpec(leaf_dim=1, q=q)
    top = 4 * q
    checks = []

    d2_ok = all(
        d_fourier(d_fourier(random_fourier_form(rng, q, rng.randint(0, top - 2), cutoff))).is_zero()
        for _ in range(samples)
    )
    checks.append(_check("d_squared_zero", d2_ok, {"samples": samples}))

    del2_ok = all(
        delta_fourier(
            delta_fourier(random_fourier_form(rng, q, rng.randint(2, top), cutoff))
        ).is_zero()
        for _ in range(samples)
    )
    checks.append(_check("delta_squared_zero", del2_ok, {"samples": samples}))

    adj_ok = True
    for _ in range(samples):
        p = rng.randint(0, top - 1)
        a = random_fourier_form(rng, q, p, cutoff)
        b = random_fourier_form(rng, q, p + 1, cutoff)
        if l2_pairing(d_fourier(a), b) != l2_pairing(a, delta_fourier(b)):
            adj_ok = False
    checks.append(_check("d_delta_adjoint", adj_ok, {"pairs": samples}))

    weitz_ok = all(
        weitzenbock_check(random_fourier_form(rng, q, rng.randint(0, top), cutoff))
        for _ in range(samples)
    )
    checks.append(_check("weitzenbock_multiplier", weitz_ok, {"samples": samples}))

    harmonic = [harmonic_space_check(spec, k, cutoff) for k in range(top + 1)]
    checks.append(
        _check(
            "harmonic_space_is_constants",
            all(h["pass"] for h in harmonic),
            {"dimensions": [h["dim_harmonic"] for h in harmonic]},
        )
    )

    betti_report = basic_betti_flat(spec)
    betti_match = betti_report.betti == [h["dim_harmonic"] for h in harmonic]
    checks.append(
        _check(
            "harmonic_dimensions_match_betti",
            betti_match and betti_report.taut["pass"],
            {"betti": betti_report.betti},
        )
    )

    comm_samples = [random_fourier_form(rng, q, 4, cutoff) for _ in range(max(10, samples // 10))]
    for selector in ("effective-kernel", "L-image", "invariants"):
        group = minus_one_group(q) if selector == "invariants" else None
        res = chern_commutation_check(spec, selector, comm_samples, group=group)
        checks.append(_check(f"commutation_{selector}", res["pass"], res))

    if top >= 5:
        lich_samples = [
            random_fourier_form(rng, q, 1, cutoff) for _ in range(max(10, samples // 10))
        ]
        res = lichnerowicz_check(spec, lich_samples)
        checks.append(_check("lichnerowicz_wedge_commutation", res["pass"], res))
    else:
        checks.append(
            _check(
                "lichnerowicz_wedge_commutation",
                True,
                {"note": "degree-1 samples overflow the top degree at this q"},
                skipped=True,
            )
        )

    hd = harmonic_decomposition_check(spec, min(4, q + 3))
    checks.append(_check("harmonic_decomposition", hd["pass"], hd))
    return checks


def orbifold_suite(q: int, group=None) -> list:
    if group is None:
        group = minus_one_group(q)
    spec = OrbifoldQuotientSpec(q=q, group=group)
    report = orbifold_betti(spec)
    checks = [
        _check("lattice_preserved", True, {"group_order": group.order}),
        _check("betti_numbers", True, {"betti": report.betti}),
        _check("omega_invariant_forces_B4", report.taut["pass"], report.taut),
    ]
    for cert in report.injectivity:
        checks.append(_check(f"L_injective_k{cert['k']}", cert["pass"], cert))
    for cert in report.decomposition:
        checks.append(_check(f"decomposition_k{cert['k']}", cert["pass"], cert))
    for chain in report.inequalities:
        if chain["asserted"]:
            name = f"betti_chain_i{chain['i']}_r{chain['r']}"
            checks.append(_check(name, chain["pass"], chain))
    return checks


# -- commands -------------------------------------------------------------------


def _emit(text: str, out: str | None):
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write_report(report: SuiteReport, out: str | None) -> None:
    _emit(json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n", out)


def cmd_dims(args) -> int:
    n = args.n
    if n is None or n < 1:
        print("dims requires --n >= 1", file=sys.stderr)
        return 2
    max_degree = args.max_degree if args.max_degree is not None else 4 * n
    if not 0 <= max_degree <= 4 * n:
        print(f"--max-degree must be in 0..{4 * n}", file=sys.stderr)
        return 2
    kd = kraines_form(standard_frame(n))
    _emit(rank_table_csv(rank_table(kd, max_degree)), args.out)
    return 0


def cmd_decompose(args) -> int:
    form = qkio.load_form(args.form)
    kd = kraines_form(standard_frame(form.n))
    try:
        dec = lefschetz_decompose(kd, form, force=args.force)
    except OutOfTheoremRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out_dir = Path(args.out) if args.out else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, comp in enumerate(dec.components):
        qkio.save_form(comp, out_dir / f"component_{i}.json")
    qkio.save_form(dec.residual, out_dir / "residual.json")
    reconstructed = dec.reconstruct(kd) == form
    print(
        f"degree {form.degree}: {len(dec.components)} components, "
        f"residual {'zero' if dec.residual.is_zero() else 'NONZERO'}, "
        f"reconstruction {'exact' if reconstructed else 'FAILED'}"
    )
    if dec.singular_degrees:
        print(f"singular normal equations at degrees {dec.singular_degrees}")
    return 0 if reconstructed else 1


def _run_suites(args, suites) -> int:
    config = RunConfig(
        command="verify",
        n=args.n,
        q=args.q,
        seed=args.seed,
        samples=args.samples,
        cutoff=args.cutoff,
        group_path=args.group,
        force=False,
    )
    started = time.perf_counter()
    checks = []
    for suite_name in suites:
        if suite_name == "kraines":
            n = args.n if args.n is not None else 2
            counts = {}
            if args.samples is not None:
                counts = {
                    "invariance_samples": args.samples,
                    "adjoint_pairs": args.samples,
                    "decomposition_samples": args.samples,
                }
            for c in kraines_suite(n, args.seed, **counts):
                c["name"] = f"kraines.{c['name']}"
                checks.append(c)
        elif suite_name == "hodge":
            q = args.q if args.q is not None else 1
            samples = args.samples if args.samples is not None else 100
            for c in hodge_suite(q, args.cutoff, args.seed, samples):
                c["name"] = f"hodge.{c['name']}"
                checks.append(c)
        elif suite_name == "orbifold":
            q = args.q if args.q is not None else 2
            group = qkio.load_group(args.group) if args.group else None
            for c in orbifold_suite(q, group):
                c["name"] = f"orbifold.{c['name']}"
                checks.append(c)
        else:
            raise ValueError(f"unknown suite {suite_name!r}")
    report = SuiteReport(
        suite="+".join(suites),
        config=config,
        checks=checks,
        elapsed_seconds=round(time.perf_counter() - started, 6),
    )
    _write_report(report, args.out)
    return 0 if report.overall == "pass" else 1


def cmd_verify(args) -> int:
    suites = (
        ["kraines", "hodge", "orbifold"] if args.suite == "all" else [args.suite]
    )
    return _run_suites(args, suites)


def cmd_orbifold_betti(args) -> int:
    q = args.q
    if q is None:
        print("orbifold-betti requires --q", file=sys.stderr)
        return 2
    group = qkio.load_group(args.group) if args.group else minus_one_group(q)
    spec = OrbifoldQuotientSpec(q=q, group=group)
    report = orbifold_betti(spec)
    doc = report.to_dict()
    doc["conventions"] = CONVENTIONS
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    return 0 if report.all_pass() else 1


def cmd_laplacian_check(args) -> int:
    q = args.q if args.q is not None else 1
    samples = args.samples if args.samples is not None else 100
    config = RunConfig(
        command="laplacian-check",
        q=q,
        seed=args.seed,
        samples=samples,
        cutoff=args.cutoff,
    )
    started = time.perf_counter()
    checks = [
        {"name": f"hodge.{c['name']}", **{k: v for k, v in c.items() if k != "name"}}
        for c in hodge_suite(q, args.cutoff, args.seed, samples)
    ]
    report = SuiteReport(
        suite="laplacian-check",
        config=config,
        checks=checks,
        elapsed_seconds=round(time.perf_counter() - started, 6),
    )
    _write_report(report, args.out)
    return 0 if report.overall == "pass" else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qkforms",
        description="Exact quaternionic exterior calculus verification toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_force=False):
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--q", type=int, default=None)
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--cutoff", type=int, default=1)
        p.add_argument("--group", type=str, default=None)
        p.add_argument("--form", type=str, default=None)
        p.add_argument("--out", type=str, default=None)
        if with_force:
            p.add_argument("--force", action="store_true")

    p_dims = sub.add_parser("dims", help="emit the rank/dimension CSV table")
    common(p_dims)
    p_dims.set_defaults(func=cmd_dims)

    p_dec = sub.add_parser("decompose", help="split a form file into effective components")
    common(p_dec, with_force=True)
    p_dec.set_defaults(func=cmd_decompose)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument(
        "--suite",
        choices=["kraines", "hodge", "orbifold", "all"],
        default="all",
    )
    common(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_orb = sub.add_parser("orbifold-betti", help="Betti numbers of a torus quotient")
    common(p_orb)
    p_orb.set_defaults(func=cmd_orbifold_betti)

    p_lap = sub.add_parser("laplacian-check", help="flat Hodge operator checks")
    common(p_lap)
    p_lap.set_defaults(func=cmd_laplacian_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except QkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
