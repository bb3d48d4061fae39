"""Exact inertia (signature) of rational symmetric matrices.

The inertia is computed from the characteristic polynomial, obtained by the
Faddeev-LeVerrier recurrence, with positive/negative root counts read off by
Descartes' rule of signs.  Descartes' rule gives only an upper bound in
general, but it is exact here: symmetric matrices are real-rooted, and for
real-rooted polynomials the bound is attained.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .poly import RationalLike, as_fraction


class SymMatrix:
    """Immutable n x n rational symmetric matrix."""

    __slots__ = ("n", "entries")

    def __init__(self, rows: Sequence[Sequence[RationalLike]]):
        n = len(rows)
        ent = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        for row in ent:
            if len(row) != n:
                raise ValueError("matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if ent[i][j] != ent[j][i]:
                    raise ValueError(f"asymmetric at ({i},{j}): {ent[i][j]} != {ent[j][i]}")
        self.n = n
        self.entries = ent

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SymMatrix({[list(map(str, row)) for row in self.entries]})"

    def submatrix(self, keep: Sequence[int]) -> "SymMatrix":
        return SymMatrix([[self.entries[i][j] for j in keep] for i in keep])


@dataclass(frozen=True)
class Inertia:
    """Eigenvalue sign counts (n_plus, n_minus, n_zero), with multiplicity."""

    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def n(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero


def _integer_scaled(m: SymMatrix) -> list[list[int]]:
    # Scaling by the positive lcm of denominators leaves all eigenvalue
    # signs, hence the inertia, unchanged.
    denoms = [x.denominator for row in m.entries for x in row]
    scale = lcm(*denoms) if denoms else 1
    return [[int(x * scale) for x in row] for row in m.entries]


def char_poly(m: SymMatrix) -> list[Fraction]:
    """Coefficients [c_0=1, c_1, ..., c_n] of det(tI - M) = sum c_k t^(n-k).

    Faddeev-LeVerrier recurrence; every division is by an integer k and is
    exact in rational arithmetic.
    """
    n = m.n
    a = [[Fraction(x) for x in row] for row in m.entries]
    coeffs = [Fraction(1)]
    mk = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if k > 1:
            # M_k = A*M_{k-1} + c_{k-1} I
            prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)]
                    for i in range(n)]
            for i in range(n):
                prod[i][i] += coeffs[-1]
            mk = prod
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)]
              for i in range(n)]
        coeffs.append(Fraction(-1, k) * sum(am[i][i] for i in range(n)))
    return coeffs


def _char_poly_int(a: list[list[int]]) -> list[int]:
    # Same recurrence over the integers; the divisions by k are exact
    # because the c_k are characteristic polynomial coefficients.
    n = len(a)
    coeffs = [1]
    mk = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if k > 1:
            prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)]
                    for i in range(n)]
            for i in range(n):
                prod[i][i] += coeffs[-1]
            mk = prod
        trace = sum(sum(a[i][t] * mk[t][i] for t in range(n)) for i in range(n))
        q, r = divmod(-trace, k)
        assert r == 0
        coeffs.append(q)
    return coeffs


def _sign_changes(seq: list[int]) -> int:
    signs = [1 if x > 0 else -1 for x in seq if x != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def inertia(m: SymMatrix) -> Inertia:
    """Exact eigenvalue sign counts of a rational symmetric matrix."""
    n = m.n
    if n == 0:
        return Inertia(0, 0, 0)
    coeffs = _char_poly_int(_integer_scaled(m))
    # multiplicity of the zero eigenvalue = trailing zero coefficients
    n_zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        n_zero += 1
    # p(t) with the zero roots stripped; real-rooted, so Descartes is exact
    n_plus = _sign_changes(coeffs)
    neg = [c if (len(coeffs) - 1 - k) % 2 == 0 else -c for k, c in enumerate(coeffs)]
    n_minus = _sign_changes(neg)
    assert n_plus + n_minus + n_zero == n
    return Inertia(n_plus, n_minus, n_zero)


def at_most_one_positive(m: SymMatrix) -> bool:
    """n_plus <= 1: the quadratic-form side of the Lorentzian test."""
    return inertia(m).n_plus <= 1


def is_lorentzian_signature(m: SymMatrix) -> bool:
    """Inertia exactly (1, n-1, 0): nonsingular with signature (+,-,...,-)."""
    sig = inertia(m)
    return sig.n_plus == 1 and sig.n_zero == 0


def is_psd(m: SymMatrix) -> bool:
    return inertia(m).n_minus == 0
