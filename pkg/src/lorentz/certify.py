"""Decision procedures for the Lorentzian property and its relatives.

A degree-d homogeneous polynomial with nonnegative coefficients is Lorentzian
iff its support is M-convex and, for every exponent vector a of degree d-2,
the Hessian of d^a f has at most one positive eigenvalue.  All checks here
are exact; the only numeric routine is the log-concavity probe, which is a
float cross-check and says so.

The c-Rayleigh property quantifies over the whole nonnegative orthant, so it
is only ever falsified here, never certified.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from multiprocessing import Pool
from typing import Optional, Sequence

from .inertia import Inertia, inertia, is_lorentzian_signature
from .mconvex import PointSet, is_m_convex_set
from .poly import Exponent, HomogPoly, RationalLike, as_fraction, simplex

NEGATIVE_COEFFICIENT = "negative_coefficient"
SUPPORT_NOT_M_CONVEX = "support_not_m_convex"
INERTIA_VIOLATION = "inertia_violation"


@dataclass(frozen=True)
class Certificate:
    """Outcome of a Lorentzian check, with a witness when it fails."""

    verdict: bool
    failing_alpha: Optional[Exponent] = None
    failing_kind: Optional[str] = None
    detail: dict = field(default_factory=dict)
    is_zero: bool = False

    def __bool__(self) -> bool:
        return self.verdict


@dataclass(frozen=True)
class RayleighWitness:
    """An exact violation of the c-Rayleigh inequality at a rational point."""

    alpha: Exponent
    i: int
    j: int
    point: tuple[Fraction, ...]
    lhs: Fraction
    rhs: Fraction


def _support_certificate(f: HomogPoly) -> Optional[Certificate]:
    ok, wit = is_m_convex_set(PointSet(f.nvars, f.degree, f.support()))
    if ok:
        return None
    alpha, beta, i = wit
    return Certificate(False, failing_alpha=alpha, failing_kind=SUPPORT_NOT_M_CONVEX,
                       detail={"pair": (alpha, beta), "index": i})


def _coefficient_certificate(f: HomogPoly) -> Optional[Certificate]:
    for e in sorted(f.terms):
        if f.terms[e] < 0:
            return Certificate(False, failing_alpha=e, failing_kind=NEGATIVE_COEFFICIENT,
                               detail={"coefficient": f.terms[e]})
    return None


def _alpha_failure(f: HomogPoly, alpha: Exponent) -> Optional[Inertia]:
    sig = inertia(f.quadratic_hessian_after(alpha))
    return sig if sig.n_plus > 1 else None


def _alpha_failure_star(args) -> tuple[Exponent, Optional[Inertia]]:
    f, alpha = args
    return alpha, _alpha_failure(f, alpha)


def is_lorentzian(f: HomogPoly, exhaustive: bool = False, jobs: int = 1) -> Certificate:
    """Exact Lorentzian certification.

    Short-circuits on the first failing quadratic unless ``exhaustive``;
    the exhaustive scan collects every failing degree-(d-2) derivative and
    may run on ``jobs`` worker processes (verdict independent of jobs).
    """
    if f.is_zero():
        return Certificate(True, is_zero=True)
    bad = _coefficient_certificate(f)
    if bad is not None:
        return bad
    bad = _support_certificate(f)
    if bad is not None:
        return bad
    if f.degree <= 1:
        return Certificate(True)
    alphas = list(simplex(f.nvars, f.degree - 2))
    if exhaustive:
        if jobs > 1:
            with Pool(jobs) as pool:
                results = pool.map(_alpha_failure_star, ((f, a) for a in alphas),
                                   chunksize=max(1, len(alphas) // (4 * jobs)))
        else:
            results = [(a, _alpha_failure(f, a)) for a in alphas]
        failures = [(a, sig) for a, sig in results if sig is not None]
        if failures:
            alpha, sig = failures[0]
            return Certificate(False, failing_alpha=alpha, failing_kind=INERTIA_VIOLATION,
                               detail={"inertia": sig, "all_failures": failures})
        return Certificate(True)
    for alpha in alphas:
        sig = _alpha_failure(f, alpha)
        if sig is not None:
            return Certificate(False, failing_alpha=alpha, failing_kind=INERTIA_VIOLATION,
                               detail={"inertia": sig})
    return Certificate(True)


def is_strictly_lorentzian(f: HomogPoly) -> Certificate:
    """All coefficients positive (full support) and every degree-(d-2)
    derivative with Hessian signature exactly (+,-,...,-)."""
    if f.is_zero():
        return Certificate(False, failing_kind=NEGATIVE_COEFFICIENT,
                           detail={"reason": "zero polynomial"})
    for e in simplex(f.nvars, f.degree):
        if f.coeff(e) <= 0:
            return Certificate(False, failing_alpha=e, failing_kind=NEGATIVE_COEFFICIENT,
                               detail={"coefficient": f.coeff(e)})
    if f.degree <= 1:
        return Certificate(True)
    for alpha in simplex(f.nvars, f.degree - 2):
        m = f.quadratic_hessian_after(alpha)
        if not is_lorentzian_signature(m):
            return Certificate(False, failing_alpha=alpha, failing_kind=INERTIA_VIOLATION,
                               detail={"inertia": inertia(m)})
    return Certificate(True)


def hodge_riemann_at(f: HomogPoly, w: Sequence[RationalLike]) -> Inertia:
    """Exact inertia of the Hessian of f at a strictly positive point."""
    return hodge_riemann_many(f, [w])[0]


def hodge_riemann_many(f: HomogPoly,
                       points: Sequence[Sequence[RationalLike]]) -> list[Inertia]:
    """Hessian inertia at several positive points, deriving each d_i d_j once."""
    if f.degree < 2:
        raise ValueError("Hessian test needs degree >= 2")
    n = f.nvars
    second = {}
    for i in range(n):
        for j in range(i, n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            second[(i, j)] = f.derive(tuple(e))
    out = []
    for w in points:
        wf = [as_fraction(x) for x in w]
        if len(wf) != n:
            raise ValueError("point has wrong length")
        if any(x <= 0 for x in wf):
            raise ValueError("point must be strictly positive")
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), g in second.items():
            rows[i][j] = rows[j][i] = g.eval(wf)
        from .inertia import SymMatrix
        out.append(inertia(SymMatrix(rows)))
    return out


# -- c-Rayleigh falsification ----------------------------------------------
#
# Both sides of the inequality are homogeneous of the same degree in w and
# quadratic in the coefficients of f, so scaling f to integer coefficients
# and w to an integer point changes nothing; the search then runs on plain
# integers.


def _int_terms(f: HomogPoly) -> dict[Exponent, int]:
    scale = lcm(*(c.denominator for c in f.terms.values())) if f.terms else 1
    return {e: int(c * scale) for e, c in f.terms.items()}


def _derive_int(terms: dict[Exponent, int], alpha: Exponent) -> dict[Exponent, int]:
    out: dict[Exponent, int] = {}
    for e, c in terms.items():
        if any(k < ak for k, ak in zip(e, alpha)):
            continue
        mult = 1
        for k, ak in zip(e, alpha):
            for t in range(ak):
                mult *= k - t
        out[tuple(k - ak for k, ak in zip(e, alpha))] = c * mult
    return out


def _eval_int(terms: dict[Exponent, int], u: Sequence[int]) -> int:
    total = 0
    for e, c in terms.items():
        v = c
        for x, k in zip(u, e):
            if k:
                if x == 0:
                    v = 0
                    break
                v *= x ** k
        total += v
    return total


def _rayleigh_alphas(f: HomogPoly) -> list[Exponent]:
    # alpha with d^alpha f nonzero and |alpha| <= d-2; larger alpha make the
    # left side vanish, so the inequality holds there automatically
    from itertools import product
    seen: set[Exponent] = set()
    cutoff = f.degree - 2
    for e in f.terms:
        for a in product(*(range(k + 1) for k in e)):
            if sum(a) <= cutoff:
                seen.add(a)
    return sorted(seen)


def _rayleigh_violation_scaled(fint: dict[Exponent, int], derivs: dict,
                               alphas: list[Exponent], n: int,
                               c_num: int, c_den: int,
                               u: Sequence[int]) -> Optional[tuple[Exponent, int, int]]:
    values: dict[Exponent, int] = {}

    def val(beta: Exponent) -> int:
        if beta not in values:
            terms = derivs.get(beta)
            if terms is None:
                terms = _derive_int(fint, beta)
                derivs[beta] = terms
            values[beta] = _eval_int(terms, u)
        return values[beta]

    for alpha in alphas:
        base = val(alpha)
        for i in range(n):
            ai = list(alpha)
            ai[i] += 1
            vi = val(tuple(ai))
            for j in range(i, n):
                aij = list(ai)
                aij[j] += 1
                lhs = base * val(tuple(aij))
                if lhs * c_den > c_num * vi * val(tuple(alpha[:j] + (alpha[j] + 1,) + alpha[j + 1:])):
                    return alpha, i, j
    return None


def rayleigh_check_at(f: HomogPoly, c: RationalLike,
                      w: Sequence[RationalLike]) -> Optional[RayleighWitness]:
    """First exact c-Rayleigh violation of f at one nonnegative point, if any."""
    cf = as_fraction(c)
    wf = [as_fraction(x) for x in w]
    if any(x < 0 for x in wf):
        raise ValueError("point must be nonnegative")
    if not f.has_nonnegative_coeffs():
        raise ValueError("f must have nonnegative coefficients")
    den = lcm(*(x.denominator for x in wf)) if wf else 1
    u = [int(x * den) for x in wf]
    fint = _int_terms(f)
    hit = _rayleigh_violation_scaled(fint, {}, _rayleigh_alphas(f), f.nvars,
                                     cf.numerator, cf.denominator, u)
    if hit is None:
        return None
    alpha, i, j = hit
    return _exact_witness(f, cf, alpha, i, j, wf)


def _exact_witness(f: HomogPoly, c: Fraction, alpha: Exponent, i: int, j: int,
                   wf: list[Fraction]) -> RayleighWitness:
    n = f.nvars
    def bump(a, *ks):
        out = list(a)
        for k in ks:
            out[k] += 1
        return tuple(out)
    lhs = f.derive(alpha).eval(wf) * f.derive(bump(alpha, i, j)).eval(wf)
    rhs = c * f.derive(bump(alpha, i)).eval(wf) * f.derive(bump(alpha, j)).eval(wf)
    return RayleighWitness(alpha, i, j, tuple(wf), lhs, rhs)


def rayleigh_falsify(f: HomogPoly, c: RationalLike, trials: int,
                     seed: int, max_den: int = 10) -> Optional[RayleighWitness]:
    """Search for an exact c-Rayleigh violation over seeded random points.

    Points are nonnegative rationals with every boundary face reachable (a
    random subset of coordinates is zeroed each trial).  Returns the first
    violation found, or None; None certifies nothing.
    """
    cf = as_fraction(c)
    if not f.has_nonnegative_coeffs():
        raise ValueError("f must have nonnegative coefficients")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    rng = random.Random(seed)
    n = f.nvars
    fint = _int_terms(f)
    alphas = _rayleigh_alphas(f)
    derivs: dict = {}
    for _ in range(trials):
        mask = [rng.randrange(2) for _ in range(n)]
        wf = [Fraction(rng.randint(1, max_den), rng.randint(1, max_den)) if m else Fraction(0)
              for m in mask]
        den = lcm(*(x.denominator for x in wf)) if wf else 1
        u = [int(x * den) for x in wf]
        hit = _rayleigh_violation_scaled(fint, derivs, alphas, n,
                                         cf.numerator, cf.denominator, u)
        if hit is not None:
            alpha, i, j = hit
            return _exact_witness(f, cf, alpha, i, j, wf)
    return None


def log_concavity_probe(f: HomogPoly, w: Sequence[RationalLike],
                        v: Sequence[RationalLike], steps: int = 8,
                        tol: float = 1e-9) -> bool:
    """Float check that log f is concave along the segment w + t*v.

    Second differences of log f at ``steps`` interior nodes must not exceed
    ``tol``.  The step size keeps every probed point inside the open positive
    orthant.  This is a numeric cross-check of the exact inertia verdict,
    not a certificate.
    """
    wf = [as_fraction(x) for x in w]
    vf = [as_fraction(x) for x in v]
    if f.eval(wf) <= 0:
        raise ValueError("need f(w) > 0")
    if all(x == 0 for x in vf):
        return True
    # largest |t| such that w + t*v stays strictly positive, with margin
    bound = None
    for wi, vi in zip(wf, vf):
        if vi != 0:
            b = wi / abs(vi)
            bound = b if bound is None else min(bound, b)
    logs = []
    for k in range(-(steps + 1), steps + 2):
        t = Fraction(k) * Fraction(bound) / (2 * (steps + 1))
        val = f.eval([wi + t * vi for wi, vi in zip(wf, vf)])
        if val <= 0:
            return False
        logs.append(math.log(val))
    for k in range(1, len(logs) - 1):
        if logs[k + 1] - 2 * logs[k] + logs[k - 1] > tol * max(1.0, abs(logs[k])):
            return False
    return True
