"""File formats: forms, groups and Fourier forms as JSON documents.

All scalars are serialized as canonical rational strings ("p" or "p/q" with
q > 0), so round-trips are bit exact.  Term lists are emitted in the
canonical blade order to keep serialized output deterministic.
"""

from __future__ import annotations

import json

from .errors import ParseError
from .exterior import Form, blade_from_indices, blade_indices
from .flat_model import FourierForm
from .linalg import GaussianRational, rat_from_str, rat_to_str
from .symmetry import FiniteGroup, QuatMatrix, Quaternion, group_closure, realize


def form_to_dict(form: Form) -> dict:
    return {
        "n": form.n,
        "degree": form.degree,
        "terms": [
            {"coeff": rat_to_str(c), "indices": list(blade_indices(mask))}
            for mask, c in form.sorted_terms()
        ],
    }


def form_from_dict(doc: dict) -> Form:
    try:
        n = int(doc["n"])
        degree = int(doc["degree"])
        raw_terms = doc["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed form document: {exc}") from exc
    terms = {}
    for entry in raw_terms:
        try:
            coeff = rat_from_str(entry["coeff"])
            indices = [int(i) for i in entry["indices"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed form term: {entry!r}") from exc
        try:
            mask = blade_from_indices(indices)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        if len(indices) != degree:
            raise ParseError(f"term {indices} does not have degree {degree}")
        if any(i >= 4 * n for i in indices):
            raise ParseError(f"term {indices} exceeds generator count {4 * n}")
        if mask in terms:
            raise ParseError(f"duplicate blade {indices} in form document")
        terms[mask] = coeff
    try:
        return Form(n, degree, terms)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def save_form(form: Form, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(form_to_dict(form), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_form(path) -> Form:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return form_from_dict(doc)


def _quaternion_from_list(values) -> Quaternion:
    if not isinstance(values, (list, tuple)) or len(values) != 4:
        raise ParseError(f"quaternion needs 4 components, got {values!r}")
    return Quaternion(*[rat_from_str(v) for v in values])


def _quaternion_to_list(q: Quaternion):
    return [rat_to_str(c) for c in q.components()]


def group_to_dict(generators, n: int, max_order: int) -> dict:
    return {
        "n": n,
        "generators": [
            {
                "A": [
                    [_quaternion_to_list(g.a[i, j]) for j in range(n)]
                    for i in range(n)
                ],
                "q": _quaternion_to_list(g.q),
            }
            for g in generators
        ],
        "max_order": max_order,
    }


def group_from_dict(doc: dict) -> FiniteGroup:
    try:
        n = int(doc["n"])
        max_order = int(doc["max_order"])
        raw_gens = doc["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed group document: {exc}") from exc
    generators = []
    for entry in raw_gens:
        try:
            rows = entry["A"]
            q = _quaternion_from_list(entry["q"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed generator: {entry!r}") from exc
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ParseError(f"generator matrix must be {n}x{n}")
        a = QuatMatrix(
            [[_quaternion_from_list(rows[i][j]) for j in range(n)] for i in range(n)]
        )
        try:
            generators.append(realize(a, q))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    return group_closure(generators, max_order)


def load_group(path) -> FiniteGroup:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return group_from_dict(doc)


def fourier_to_dict(a: FourierForm) -> dict:
    keys = sorted(a.terms, key=lambda k: (k[0], blade_indices(k[1])))
    return {
        "q": a.q,
        "degree": a.degree,
        "cutoff": a.cutoff,
        "terms": [
            {
                "freq": list(xi),
                "coeff": a.terms[(xi, mask)].to_dict(),
                "indices": list(blade_indices(mask)),
            }
            for xi, mask in keys
        ],
    }


def fourier_from_dict(doc: dict) -> FourierForm:
    try:
        q = int(doc["q"])
        degree = int(doc["degree"])
        cutoff = int(doc["cutoff"])
        raw_terms = doc["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed Fourier document: {exc}") from exc
    terms = {}
    for entry in raw_terms:
        try:
            xi = tuple(int(x) for x in entry["freq"])
            coeff = GaussianRational.from_dict(entry["coeff"])
            mask = blade_from_indices([int(i) for i in entry["indices"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed Fourier term: {entry!r}") from exc
        key = (xi, mask)
        if key in terms:
            raise ParseError(f"duplicate Fourier term {entry!r}")
        terms[key] = coeff
    try:
        return FourierForm(q, degree, cutoff, terms)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def save_fourier(a: FourierForm, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(fourier_to_dict(a), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_fourier(path) -> FourierForm:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return fourier_from_dict(doc)
