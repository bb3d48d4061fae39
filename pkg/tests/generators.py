"""Seeded random generators shared by the property and acceptance tests.

Every generator takes an explicit random.Random so each test pins its seed.
The M-convex generator builds separable-convex values on a box slice of the
simplex (provably M-convex) and re-verifies through the checker anyway.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from lorentz import (DiscreteFunction, HomogPoly, Matroid, SymMatrix,
                     basis_generating_poly, cycle_matroid, generating_poly_f,
                     is_m_convex_function, uniform_matroid)
from lorentz.poly import simplex


def random_fraction(rng: random.Random, lo: int = -5, hi: int = 5,
                    max_den: int = 5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_positive_fraction(rng: random.Random, hi: int = 5,
                             max_den: int = 5) -> Fraction:
    return Fraction(rng.randint(1, hi), rng.randint(1, max_den))


def random_symmetric(rng: random.Random, n: int, bound: int = 5) -> SymMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = random_fraction(rng, -bound, bound)
    return SymMatrix(rows)


def random_nonsingular(rng: random.Random, n: int) -> list[list[Fraction]]:
    # unit lower times unit upper triangular with a nonzero diagonal scale
    lower = [[Fraction(1) if i == j else
              (random_fraction(rng, -2, 2) if i > j else Fraction(0))
              for j in range(n)] for i in range(n)]
    upper = [[Fraction(rng.choice([1, 2, -1])) if i == j else
              (random_fraction(rng, -2, 2) if i < j else Fraction(0))
              for j in range(n)] for i in range(n)]
    return [[sum(lower[i][k] * upper[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def random_homog(rng: random.Random, n: int, d: int, density: float = 0.7,
                 nonneg: bool = False) -> HomogPoly:
    terms = {}
    for e in simplex(n, d):
        if rng.random() < density:
            c = (random_positive_fraction(rng) if nonneg else random_fraction(rng))
            if c:
                terms[e] = c
    return HomogPoly(n, d, terms)


def random_m_convex_function(rng: random.Random, n: int, d: int) -> DiscreteFunction:
    """Separable convex integer values on a box slice of the simplex."""
    tables = []
    for _ in range(n):
        steps = sorted(rng.randint(-3, 3) for _ in range(d))
        g = [0]
        for s in steps:
            g.append(g[-1] + s)
        tables.append(g)
    lo = [rng.randint(0, 1) for _ in range(n)]
    hi = [rng.randint(max(1, d - 1), d) for _ in range(n)]
    values = {a: sum(tables[i][a[i]] for i in range(n))
              for a in simplex(n, d)
              if all(lo[i] <= a[i] <= hi[i] for i in range(n))}
    if not values:
        values = {a: sum(tables[i][a[i]] for i in range(n)) for a in simplex(n, d)}
    nu = DiscreteFunction(n, d, values)
    ok, wit = is_m_convex_function(nu)
    assert ok, f"generator produced a non-M-convex function: {wit}"
    return nu


def random_small_matroid(rng: random.Random, max_n: int = 4) -> Matroid:
    if rng.randrange(2):
        n = rng.randint(1, max_n)
        d = rng.randint(0, n)
        return uniform_matroid(d, n)
    v = rng.randint(2, 4)
    possible = list(combinations(range(v), 2))
    m = rng.randint(1, min(4, len(possible)))
    return cycle_matroid(v, rng.sample(possible, m))


def random_nonneg_matrix(rng: random.Random, rows: int, cols: int,
                         hi: int = 3) -> list[list[Fraction]]:
    return [[Fraction(rng.randint(0, hi), rng.randint(1, 3)) for _ in range(cols)]
            for _ in range(rows)]


def random_lorentzian_input(rng: random.Random) -> HomogPoly:
    """Products of nonnegative linear forms, matroid generating polynomials,
    or generating polynomials of random M-convex functions."""
    kind = rng.randrange(3)
    if kind == 0:
        n = rng.randint(2, 3)
        out = HomogPoly(n, 0, {(0,) * n: 1})
        for _ in range(rng.randint(1, 3)):
            coeffs = [Fraction(rng.randint(0, 3)) for _ in range(n)]
            if all(c == 0 for c in coeffs):
                coeffs[rng.randrange(n)] = Fraction(1)
            out = out * HomogPoly.linear_form(coeffs)
        return out
    if kind == 1:
        return basis_generating_poly(random_small_matroid(rng))
    nu = random_m_convex_function(rng, rng.randint(2, 3), rng.randint(1, 3))
    q = rng.choice([Fraction(1, 10), Fraction(1, 2), Fraction(1)])
    return generating_poly_f(nu, q)
