"""M-convex sets and discrete functions, and their generating polynomials.

A point set lives in the discrete simplex of degree-d exponent vectors.
A discrete function maps exponent vectors to rationals; points absent from
``values`` are at +infinity (never a numeric sentinel).

The exchange property used for sets: for all alpha, beta in J and every i
with alpha_i > beta_i there is j with alpha_j < beta_j and
alpha - e_i + e_j in J.  For functions with M-convex domain, the local
exchange property over pairs at l1-distance 4 is checked, which is
equivalent to the full symmetric exchange property.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .poly import (Exponent, HomogPoly, RationalLike, as_fraction,
                   factorial_of, simplex)

SetWitness = tuple[Exponent, Exponent, int]
FnWitness = tuple[Exponent, Exponent]


class PointSet:
    """Finite subset of the degree-d discrete simplex in n variables."""

    __slots__ = ("nvars", "degree", "points")

    def __init__(self, nvars: int, degree: int, points: Iterable[Sequence[int]]):
        pts = frozenset(tuple(int(k) for k in p) for p in points)
        for p in pts:
            if len(p) != nvars:
                raise ValueError(f"point {p} has length {len(p)}, expected {nvars}")
            if any(k < 0 for k in p):
                raise ValueError(f"negative entry in {p}")
            if sum(p) != degree:
                raise ValueError(f"point {p} has degree {sum(p)}, expected {degree}")
        self.nvars = nvars
        self.degree = degree
        self.points = pts

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.nvars, self.degree, self.points) == \
               (other.nvars, other.degree, other.points)

    def __repr__(self):
        return f"PointSet({self.nvars}, {self.degree}, {sorted(self.points)})"


class DiscreteFunction:
    """Map from the discrete simplex to rationals; absent points are +infinity."""

    __slots__ = ("nvars", "degree", "values")

    def __init__(self, nvars: int, degree: int,
                 values: Mapping[Sequence[int], RationalLike]):
        vals: dict[Exponent, Fraction] = {}
        for p, v in values.items():
            p = tuple(int(k) for k in p)
            if len(p) != nvars or any(k < 0 for k in p) or sum(p) != degree:
                raise ValueError(f"point {p} is not in the degree-{degree} simplex")
            vals[p] = as_fraction(v)
        self.nvars = nvars
        self.degree = degree
        self.values = vals

    def domain(self) -> PointSet:
        return PointSet(self.nvars, self.degree, self.values.keys())

    @classmethod
    def indicator(cls, points: PointSet) -> "DiscreteFunction":
        return cls(points.nvars, points.degree, {p: 0 for p in points.points})

    def __eq__(self, other):
        if not isinstance(other, DiscreteFunction):
            return NotImplemented
        return (self.nvars, self.degree, self.values) == \
               (other.nvars, other.degree, other.values)

    def __repr__(self):
        return f"DiscreteFunction({self.nvars}, {self.degree}, {self.values!r})"


def is_m_convex_set(ps: PointSet) -> tuple[bool, Optional[SetWitness]]:
    """Exchange property check; the empty set counts as M-convex.

    On failure returns the violating (alpha, beta, i).
    """
    pts = ps.points
    n = ps.nvars
    for alpha in pts:
        for beta in pts:
            if alpha == beta:
                continue
            for i in range(n):
                if alpha[i] <= beta[i]:
                    continue
                ok = False
                for j in range(n):
                    if alpha[j] < beta[j]:
                        moved = list(alpha)
                        moved[i] -= 1
                        moved[j] += 1
                        if tuple(moved) in pts:
                            ok = True
                            break
                if not ok:
                    return False, (alpha, beta, i)
    return True, None


def is_matroid_basis_family(ps: PointSet) -> tuple[bool, Optional[SetWitness]]:
    """Nonempty 0/1 point set with the exchange property."""
    for p in ps.points:
        if any(k not in (0, 1) for k in p):
            raise ValueError(f"point {p} is not a 0/1 vector")
    if not ps.points:
        return False, None
    return is_m_convex_set(ps)


def is_m_convex_function(nu: DiscreteFunction) -> tuple[bool, Optional[FnWitness]]:
    """M-convexity of a discrete function.

    Checks that the effective domain is M-convex and, for every pair of
    domain points at l1-distance 4, that the local exchange inequality
        nu(a) + nu(b) >= nu(a - e_i + e_j) + nu(b - e_j + e_i)
    holds for some i with a_i > b_i and j with a_j < b_j.
    """
    dom_ok, wit = is_m_convex_set(nu.domain())
    if not dom_ok:
        return False, (wit[0], wit[1])
    vals = nu.values
    pts = list(vals)
    n = nu.nvars
    for a_idx, alpha in enumerate(pts):
        for beta in pts[a_idx + 1:]:
            if sum(abs(x - y) for x, y in zip(alpha, beta)) != 4:
                continue
            lhs = vals[alpha] + vals[beta]
            ok = False
            for i in range(n):
                if alpha[i] <= beta[i]:
                    continue
                for j in range(n):
                    if alpha[j] >= beta[j]:
                        continue
                    a2 = list(alpha)
                    a2[i] -= 1
                    a2[j] += 1
                    b2 = list(beta)
                    b2[j] -= 1
                    b2[i] += 1
                    va = vals.get(tuple(a2))
                    vb = vals.get(tuple(b2))
                    if va is not None and vb is not None and lhs >= va + vb:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return False, (alpha, beta)
    return True, None


def _integer_nth_root(x: int, r: int) -> tuple[int, bool]:
    # floor r-th root and exactness flag, for x >= 0
    if x < 0:
        raise ValueError("negative radicand")
    if x in (0, 1) or r == 1:
        return x, True
    root = round(x ** (1.0 / r))
    # settle float error by local search
    while root ** r > x:
        root -= 1
    while (root + 1) ** r <= x:
        root += 1
    return root, root ** r == x


def rational_power(q: Fraction, e: Fraction) -> Fraction:
    """Exact q**e for rational q > 0 and rational e, or ValueError.

    Exists when q has an exact r-th root for r the reduced denominator of e.
    """
    if q <= 0:
        raise ValueError("base must be positive")
    r = e.denominator
    p = e.numerator
    if r == 1:
        return q ** p
    num_root, num_ok = _integer_nth_root(q.numerator, r)
    den_root, den_ok = _integer_nth_root(q.denominator, r)
    if not (num_ok and den_ok):
        raise ValueError(f"{q}**(1/{r}) is irrational; supply q as an exact {r}-th power")
    return Fraction(num_root, den_root) ** p


def generating_poly_f(nu: DiscreteFunction, q: RationalLike) -> HomogPoly:
    """f^nu_q = sum over dom(nu) of q^nu(a) w^a / a!, exact.

    Requires an integer-valued nu, or a q that is an exact m-th power for m
    the lcm of the value denominators; otherwise q^nu(a) is irrational and
    a ValueError is raised.
    """
    qf = as_fraction(q)
    if qf <= 0:
        raise ValueError("q must be positive")
    terms = {p: rational_power(qf, v) / factorial_of(p)
             for p, v in nu.values.items()}
    return HomogPoly(nu.nvars, nu.degree, terms)


def generating_poly_g(nu: DiscreteFunction, q: RationalLike) -> HomogPoly:
    """g^nu_q = sum over dom(nu) of prod_i C(d, a_i) q^nu(a) w^a, exact."""
    qf = as_fraction(q)
    if qf <= 0:
        raise ValueError("q must be positive")
    d = nu.degree
    terms = {}
    for p, v in nu.values.items():
        weight = 1
        for k in p:
            weight *= math.comb(d, k)
        terms[p] = weight * rational_power(qf, v)
    return HomogPoly(nu.nvars, nu.degree, terms)


# -- polarization of discrete functions ------------------------------------
#
# Variables of the lift are pairs (i, j) with i in [n] and j in [d], flattened
# as i*d + j; the grouping map phi sends e_(i,j) to e_i.  The lift is
# supported on 0/1 points and takes the value nu(phi(.)) there; the
# projection takes the minimum over each fiber of phi.


def _group_of(nvars: int, degree: int, flat: int) -> int:
    return flat // degree


def polarize_fn(nu: DiscreteFunction) -> DiscreteFunction:
    """Multi-affine lift of nu to n*d variables; inverse of project_fn."""
    n, d = nu.nvars, nu.degree
    if d == 0:
        vals = {(): nu.values[(0,) * n]} if (0,) * n in nu.values else {}
        return DiscreteFunction(0, 0, vals)
    m = n * d
    out: dict[Exponent, Fraction] = {}

    def place(i: int, remaining: Exponent, chosen: list[int], value: Fraction):
        if i == n:
            e = [0] * m
            for flat in chosen:
                e[flat] = 1
            out[tuple(e)] = value
            return
        base = i * d
        for subset in combinations(range(base, base + d), remaining[i]):
            place(i + 1, remaining, chosen + list(subset), value)

    for p, v in nu.values.items():
        place(0, p, [], v)
    return DiscreteFunction(m, d, out)


def project_fn(mu: DiscreteFunction, nvars: int | None = None) -> DiscreteFunction:
    """Fiber-minimum of mu along the grouping of n*d variables into n groups."""
    d = mu.degree
    if nvars is None:
        if d == 0:
            raise ValueError("nvars required to project a degree-0 function")
        nvars, rem = divmod(mu.nvars, d)
        if rem:
            raise ValueError(f"{mu.nvars} variables do not split into blocks of {d}")
    if nvars * d != mu.nvars and not (d == 0 and mu.nvars == 0):
        raise ValueError(f"cannot group {mu.nvars} variables into {nvars} blocks of {d}")
    out: dict[Exponent, Fraction] = {}
    for p, v in mu.values.items():
        proj = [0] * nvars
        for flat, k in enumerate(p):
            if k:
                proj[_group_of(mu.nvars, d, flat)] += k
        key = tuple(proj)
        if key not in out or v < out[key]:
            out[key] = v
    return DiscreteFunction(nvars, d, out)


def regularize(nu: DiscreteFunction, k: int) -> DiscreteFunction:
    """Finite-everywhere M-convex relaxation nu_k with full domain.

    Computed over n*n auxiliary variables indexed by pairs (i, j): pull nu
    back along row sums, add k times the total off-diagonal mass, and push
    forward by minimizing along column sums.  Agrees with nu on dom(nu) once
    k exceeds the oscillation of nu, and is finite on the whole simplex for
    every k.
    """
    ok, wit = is_m_convex_function(nu)
    if not ok:
        raise ValueError(f"input is not M-convex (witness {wit})")
    if not nu.values:
        raise ValueError("input is identically infinite")
    n, d = nu.nvars, nu.degree
    out: dict[Exponent, Fraction] = {}
    for beta in simplex(n * n, d):
        rows = [0] * n
        cols = [0] * n
        offdiag = 0
        for flat, m in enumerate(beta):
            if m:
                i, j = divmod(flat, n)
                rows[i] += m
                cols[j] += m
                if i != j:
                    offdiag += m
        base = nu.values.get(tuple(rows))
        if base is None:
            continue
        val = base + k * offdiag
        key = tuple(cols)
        if key not in out or val < out[key]:
            out[key] = val
    return DiscreteFunction(n, d, out)
