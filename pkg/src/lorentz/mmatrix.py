"""M-matrix recognition and the multivariate characteristic polynomial.

An M-matrix has nonpositive off-diagonal entries and nonnegative principal
minors.  Its multivariate characteristic polynomial
det(w_0 I + diag(w_1..w_n) A) expands as the sum of A_S w^S w_0^(n-|S|)
over subsets S, where A_S is the principal minor on S.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .poly import Exponent, HomogPoly, RationalLike, as_fraction


class SquareMatrix:
    """Immutable n x n rational matrix, not necessarily symmetric."""

    __slots__ = ("n", "entries")

    def __init__(self, rows: Sequence[Sequence[RationalLike]]):
        n = len(rows)
        ent = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        for row in ent:
            if len(row) != n:
                raise ValueError("matrix is not square")
        self.n = n
        self.entries = ent

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"SquareMatrix({[list(map(str, row)) for row in self.entries]})"


def bareiss_determinant(rows: Sequence[Sequence[RationalLike]]) -> Fraction:
    """Exact determinant by fraction-free Bareiss elimination.

    Rational input is scaled row-wise to integers first; the scaling is
    divided back out at the end.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    work = []
    scale = Fraction(1)
    for row in rows:
        frow = [as_fraction(x) for x in row]
        if len(frow) != n:
            raise ValueError("matrix is not square")
        den = lcm(*(x.denominator for x in frow))
        scale *= den
        work.append([int(x * den) for x in frow])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            for r in range(k + 1, n):
                if work[r][k] != 0:
                    work[k], work[r] = work[r], work[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]) // prev
            work[i][k] = 0
        prev = work[k][k]
    return Fraction(sign * work[n - 1][n - 1], 1) / scale


def principal_minor(a: SquareMatrix, subset: Iterable[int]) -> Fraction:
    """det of the S x S principal submatrix; the empty minor is 1."""
    keep = sorted(set(int(i) for i in subset))
    if keep and (keep[0] < 0 or keep[-1] >= a.n):
        raise ValueError(f"subset {keep} out of range for n={a.n}")
    return bareiss_determinant([[a.entries[i][j] for j in keep] for i in keep])


def is_m_matrix(a: SquareMatrix) -> bool:
    """Nonpositive off-diagonal entries and all 2^n - 1 principal minors >= 0."""
    n = a.n
    for i in range(n):
        for j in range(n):
            if i != j and a.entries[i][j] > 0:
                return False
    for mask in range(1, 1 << n):
        subset = [i for i in range(n) if mask >> i & 1]
        if principal_minor(a, subset) < 0:
            return False
    return True


def char_poly_multivariate(a: SquareMatrix) -> HomogPoly:
    """det(w_0 I + diag(w_1..w_n) A) as a degree-n polynomial in n+1 variables.

    Built from the 2^n principal minors; variable 0 is the homogenizing w_0.
    """
    n = a.n
    terms: dict[Exponent, Fraction] = {}
    for mask in range(1 << n):
        subset = [i for i in range(n) if mask >> i & 1]
        minor = principal_minor(a, subset)
        if minor == 0:
            continue
        e = [0] * (n + 1)
        e[0] = n - len(subset)
        for i in subset:
            e[i + 1] = 1
        terms[tuple(e)] = minor
    return HomogPoly(n + 1, n, terms)


def random_m_matrix(n: int, seed: int, bound: int = 5,
                    slack: RationalLike = 0) -> SquareMatrix:
    """Seeded diagonally dominant M-matrix: A = (s + slack) I - B for a random
    nonnegative B with s its maximum row sum; positive slack makes A
    nonsingular (strictly diagonally dominant)."""
    rng = random.Random(seed)
    b = [[Fraction(rng.randint(0, bound), rng.randint(1, bound)) for _ in range(n)]
         for _ in range(n)]
    s = (max(sum(row) for row in b) if n else Fraction(0)) + as_fraction(slack)
    return SquareMatrix([[(s if i == j else 0) - b[i][j] for j in range(n)]
                         for i in range(n)])


def random_doubly_substochastic(n: int, seed: int, parts: int = 4) -> SquareMatrix:
    """Seeded convex combination of partial permutation matrices."""
    rng = random.Random(seed)
    weights = [Fraction(rng.randint(1, 10)) for _ in range(parts)]
    total = sum(weights)
    out = [[Fraction(0)] * n for _ in range(n)]
    for w in weights:
        cols = list(range(n))
        rng.shuffle(cols)
        for i in range(n):
            if rng.randrange(2):
                out[i][cols[i]] += w / total
    return SquareMatrix(out)
