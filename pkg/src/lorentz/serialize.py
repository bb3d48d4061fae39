"""JSON formats for every domain type, bit-exact and canonical.

Numerators and denominators travel as decimal strings so that arbitrarily
large exact rationals survive the trip.  Serialization is canonical: terms
are sorted, rationals reduced, so parse -> serialize -> parse is the
identity on canonical forms.

Ground set elements, matroid elements, and measure atoms use 0-based
indices throughout.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .matroids import Matroid, cycle_matroid, matroid_from_bases
from .mconvex import DiscreteFunction
from .measures import Measure
from .mmatrix import SquareMatrix
from .operators import OperatorTable
from .poly import HomogPoly


class LoadError(ValueError):
    """Malformed input document."""


def _fraction_from_parts(obj: dict, where: str) -> Fraction:
    try:
        num = int(obj["num"])
        den = int(obj["den"])
    except (KeyError, ValueError) as exc:
        raise LoadError(f"{where}: bad rational {obj!r}: {exc}") from None
    if den == 0:
        raise LoadError(f"{where}: zero denominator")
    return Fraction(num, den)


def _fraction_parts(x: Fraction) -> dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _fraction_from_string(s: str, where: str) -> Fraction:
    try:
        f = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise LoadError(f"{where}: bad rational {s!r}: {exc}") from None
    return f


def _require(obj: Any, key: str, kind: type, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise LoadError(f"{where}: missing key {key!r}")
    val = obj[key]
    if kind is int and isinstance(val, bool) or not isinstance(val, kind):
        raise LoadError(f"{where}: key {key!r} should be {kind.__name__}")
    return val


# -- polynomials ------------------------------------------------------------

def poly_to_dict(p: HomogPoly) -> dict:
    return {"n": p.nvars, "d": p.degree,
            "terms": [{"exp": list(e), **_fraction_parts(p.terms[e])}
                      for e in sorted(p.terms)]}


def poly_from_dict(obj: dict, where: str = "polynomial") -> HomogPoly:
    n = _require(obj, "n", int, where)
    d = _require(obj, "d", int, where)
    items = _require(obj, "terms", list, where)
    terms = {}
    for k, t in enumerate(items):
        exp = tuple(_require(t, "exp", list, f"{where}.terms[{k}]"))
        terms[exp] = terms.get(exp, Fraction(0)) + _fraction_from_parts(t, f"{where}.terms[{k}]")
    try:
        return HomogPoly(n, d, terms)
    except ValueError as exc:
        raise LoadError(f"{where}: {exc}") from None


# -- discrete functions ------------------------------------------------------

def function_to_dict(nu: DiscreteFunction) -> dict:
    return {"n": nu.nvars, "d": nu.degree,
            "values": [{"exp": list(e), **_fraction_parts(nu.values[e])}
                       for e in sorted(nu.values)]}


def function_from_dict(obj: dict, where: str = "function") -> DiscreteFunction:
    n = _require(obj, "n", int, where)
    d = _require(obj, "d", int, where)
    items = _require(obj, "values", list, where)
    values = {}
    for k, t in enumerate(items):
        exp = tuple(_require(t, "exp", list, f"{where}.values[{k}]"))
        if exp in values:
            raise LoadError(f"{where}.values[{k}]: duplicate point {exp}")
        values[exp] = _fraction_from_parts(t, f"{where}.values[{k}]")
    try:
        return DiscreteFunction(n, d, values)
    except ValueError as exc:
        raise LoadError(f"{where}: {exc}") from None


# -- matroids and graphs -----------------------------------------------------

def matroid_to_dict(m: Matroid) -> dict:
    return {"n": m.n, "bases": [list(b) for b in m.basis_sets()]}


def matroid_from_dict(obj: dict, where: str = "matroid") -> Matroid:
    n = _require(obj, "n", int, where)
    bases = _require(obj, "bases", list, where)
    try:
        return matroid_from_bases(n, bases)
    except ValueError as exc:
        raise LoadError(f"{where}: {exc}") from None


def graph_matroid_from_dict(obj: dict, where: str = "graph") -> Matroid:
    v = _require(obj, "vertices", int, where)
    edges = _require(obj, "edges", list, where)
    try:
        return cycle_matroid(v, edges)
    except ValueError as exc:
        raise LoadError(f"{where}: {exc}") from None


# -- matrices ----------------------------------------------------------------

def matrix_to_dict(a: SquareMatrix) -> dict:
    return {"n": a.n, "rows": [[str(x) for x in row] for row in a.entries]}


def matrix_from_dict(obj: dict, where: str = "matrix") -> SquareMatrix:
    n = _require(obj, "n", int, where)
    rows = _require(obj, "rows", list, where)
    if len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise LoadError(f"{where}: expected {n} rows of {n} rational strings")
    ent = [[_fraction_from_string(str(x), f"{where}.rows[{i}][{j}]")
            for j, x in enumerate(row)] for i, row in enumerate(rows)]
    return SquareMatrix(ent)


# -- measures ----------------------------------------------------------------

def measure_to_dict(mu: Measure) -> dict:
    return {"n": mu.n,
            "atoms": [{"set": list(s), **_fraction_parts(w)} for s, w in mu.atoms()]}


def measure_from_dict(obj: dict, where: str = "measure",
                      normalize: bool = False) -> Measure:
    n = _require(obj, "n", int, where)
    atoms = _require(obj, "atoms", list, where)
    weights: dict[frozenset, Fraction] = {}
    for k, a in enumerate(atoms):
        s = frozenset(_require(a, "set", list, f"{where}.atoms[{k}]"))
        if s in weights:
            raise LoadError(f"{where}.atoms[{k}]: duplicate atom {sorted(s)}")
        weights[s] = _fraction_from_parts(a, f"{where}.atoms[{k}]")
    try:
        return Measure(n, weights, normalize=normalize)
    except ValueError as exc:
        raise LoadError(f"{where}: {exc}") from None


# -- operator tables ----------------------------------------------------------

def operator_to_dict(t: OperatorTable) -> dict:
    return {"kappa": list(t.kappa), "ell": t.ell,
            "images": [{"exp": list(e), "poly": poly_to_dict(t.images[e])}
                       for e in sorted(t.images)]}


def operator_from_dict(obj: dict, where: str = "operator") -> OperatorTable:
    kappa = _require(obj, "kappa", list, where)
    ell = _require(obj, "ell", int, where)
    items = _require(obj, "images", list, where)
    images = {}
    for k, entry in enumerate(items):
        exp = tuple(_require(entry, "exp", list, f"{where}.images[{k}]"))
        poly = poly_from_dict(_require(entry, "poly", dict, f"{where}.images[{k}]"),
                              f"{where}.images[{k}].poly")
        images[exp] = poly
    try:
        return OperatorTable(kappa, ell, images)
    except ValueError as exc:
        raise LoadError(f"{where}: {exc}") from None


# -- vector configurations (zonotopes) ----------------------------------------

def vectors_from_dict(obj: dict, where: str = "vectors") -> list[list[Fraction]]:
    dim = _require(obj, "dim", int, where)
    vecs = _require(obj, "vectors", list, where)
    out = []
    for k, v in enumerate(vecs):
        if not isinstance(v, list) or len(v) != dim:
            raise LoadError(f"{where}.vectors[{k}]: expected a list of {dim} entries")
        out.append([_fraction_from_string(str(x), f"{where}.vectors[{k}]") for x in v])
    return out


def vectors_to_dict(vectors) -> dict:
    if not vectors:
        raise LoadError("vectors: empty configuration")
    return {"dim": len(vectors[0]), "vectors": [[str(x) for x in v] for v in vectors]}


# -- kind detection and roundtrip ---------------------------------------------

_KIND_KEYS = [("terms", "poly"), ("values", "function"), ("bases", "matroid"),
              ("edges", "graph"), ("rows", "matrix"), ("atoms", "measure"),
              ("images", "operator"), ("vectors", "vectors")]

_LOADERS = {
    "poly": poly_from_dict,
    "function": function_from_dict,
    "matroid": matroid_from_dict,
    "graph": graph_matroid_from_dict,
    "matrix": matrix_from_dict,
    "measure": measure_from_dict,
    "operator": operator_from_dict,
    "vectors": vectors_from_dict,
}

_DUMPERS = {
    "poly": poly_to_dict,
    "function": function_to_dict,
    "matroid": matroid_to_dict,
    "graph": matroid_to_dict,      # graphs canonicalize to their cycle matroid
    "matrix": matrix_to_dict,
    "measure": measure_to_dict,
    "operator": operator_to_dict,
    "vectors": vectors_to_dict,
}


def detect_kind(obj: Any) -> str:
    if not isinstance(obj, dict):
        raise LoadError("document root must be a JSON object")
    for key, kind in _KIND_KEYS:
        if key in obj:
            return kind
    raise LoadError(f"cannot determine document kind from keys {sorted(obj)}")


def load_document(path: str):
    """Parse any known document, returning (kind, object)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LoadError(f"{path}: invalid JSON at line {exc.lineno}, "
                            f"column {exc.colno} (char {exc.pos}): {exc.msg}") from None
    kind = detect_kind(obj)
    return kind, _LOADERS[kind](obj, kind)


def dumps_canonical(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def roundtrip(path: str) -> bool:
    """parse -> serialize -> parse; True iff the canonical forms agree."""
    kind, first = load_document(path)
    if kind == "graph":
        text = dumps_canonical(matroid_to_dict(first))
        second = matroid_from_dict(json.loads(text))
    else:
        text = dumps_canonical(_DUMPERS[kind](first))
        second = _LOADERS[kind](json.loads(text))
    return first == second
