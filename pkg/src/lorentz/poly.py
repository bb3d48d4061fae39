"""Exact sparse homogeneous polynomials over the rationals.

A polynomial of degree d in n variables is a dict mapping exponent tuples
(length n, entries summing to d) to nonzero Fractions.  The zero polynomial
is the empty dict with declared (nvars, degree).  All arithmetic is exact;
no floats enter anywhere.

Two coefficient conventions coexist:

  raw coefficient   a_e : the number multiplying w^e,
  normalized        c_e = e! * a_e, so that  f = sum c_e/e! w^e.

Raw coefficients are stored; the normalized form is an accessor.  This keeps
storage free of factorials while the normalized form matches the inequalities
the certifiers work with.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]

RationalLike = Fraction | int | str


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce ints, strings like '3/7', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def exponent_degree(e: Sequence[int]) -> int:
    return sum(e)


def factorial_of(e: Exponent) -> int:
    """e! = prod of factorials of the entries."""
    out = 1
    for k in e:
        out *= math.factorial(k)
    return out


def unit(n: int, i: int) -> Exponent:
    e = [0] * n
    e[i] = 1
    return tuple(e)


def simplex(n: int, d: int) -> Iterator[Exponent]:
    """Iterate the d-th discrete simplex in n variables, lexicographically.

    Materialized lazily: the simplex has C(n+d-1, d) points.
    """
    if n == 0:
        if d == 0:
            yield ()
        return
    # stars and bars: positions of n-1 bars among n-1+d slots
    for bars in combinations(range(n - 1 + d), n - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(n - 1 + d - 1 - prev)
        yield tuple(e)


class HomogPoly:
    """Homogeneous polynomial with exact rational coefficients.

    Immutable by convention: never mutate ``terms`` after construction.
    """

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int,
                 terms: Mapping[Sequence[int], RationalLike] | None = None):
        if nvars < 0 or degree < 0:
            raise ValueError("nvars and degree must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(k) for k in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
                if any(k < 0 for k in e):
                    raise ValueError(f"negative exponent in {e}")
                if sum(e) != degree:
                    raise ValueError(f"exponent {e} has degree {sum(e)}, expected {degree}")
                c = as_fraction(c)
                if c != 0:
                    clean[e] = c
        self.nvars = nvars
        self.degree = degree
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def variable(cls, n: int, i: int) -> "HomogPoly":
        return cls(n, 1, {unit(n, i): 1})

    @classmethod
    def linear_form(cls, coeffs: Sequence[RationalLike]) -> "HomogPoly":
        n = len(coeffs)
        return cls(n, 1, {unit(n, i): c for i, c in enumerate(coeffs)})

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "HomogPoly":
        return cls(nvars, degree, {})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: Sequence[int]) -> Fraction:
        """Raw coefficient of w^e."""
        return self.terms.get(tuple(e), Fraction(0))

    def normalized_coeff(self, e: Sequence[int]) -> Fraction:
        """c_e = e! * (raw coefficient of w^e)."""
        e = tuple(e)
        return self.terms.get(e, Fraction(0)) * factorial_of(e)

    def support(self) -> set[Exponent]:
        return set(self.terms)

    def has_nonnegative_coeffs(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    def is_multi_affine(self) -> bool:
        return all(all(k <= 1 for k in e) for e in self.terms)

    def var_degree_caps(self) -> tuple[int, ...]:
        """Per-variable maximum exponent over the support."""
        caps = [0] * self.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k > caps[i]:
                    caps[i] = k
        return tuple(caps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return (self.nvars == other.nvars and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if self.is_zero():
            return f"HomogPoly({self.nvars}, {self.degree}, 0)"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(f"w{i}^{k}" if k > 1 else f"w{i}"
                            for i, k in enumerate(e) if k)
            parts.append(f"{self.terms[e]}*{mono}" if mono else str(self.terms[e]))
        return f"HomogPoly({self.nvars}, {self.degree}, {' + '.join(parts)})"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if self.nvars != other.nvars or self.degree != other.degree:
            raise ValueError("can only add polynomials of equal nvars and degree")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return HomogPoly(self.nvars, self.degree, out)

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-1) * other

    def __rmul__(self, scalar: RationalLike) -> "HomogPoly":
        s = as_fraction(scalar)
        return HomogPoly(self.nvars, self.degree,
                         {e: s * c for e, c in self.terms.items()})

    def __mul__(self, other: "HomogPoly | RationalLike") -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            return self.__rmul__(other)
        if self.nvars != other.nvars:
            raise ValueError("can only multiply polynomials in the same variables")
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return HomogPoly(self.nvars, self.degree + other.degree, out)

    def __pow__(self, k: int) -> "HomogPoly":
        if k < 0:
            raise ValueError("negative power")
        out = HomogPoly(self.nvars, 0, {(0,) * self.nvars: 1})
        for _ in range(k):
            out = out * self
        return out

    # -- calculus -----------------------------------------------------

    def eval(self, w: Sequence[RationalLike]) -> Fraction:
        """Exact value at a rational point."""
        if len(w) != self.nvars:
            raise ValueError(f"point has length {len(w)}, expected {self.nvars}")
        wf = [as_fraction(x) for x in w]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(wf, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def derive(self, alpha: Sequence[int]) -> "HomogPoly":
        """Iterated partial derivative d^alpha.

        Normalized coefficients satisfy c_b(d^a f) = c_{a+b}(f).
        """
        alpha = tuple(int(k) for k in alpha)
        if len(alpha) != self.nvars:
            raise ValueError("alpha has wrong length")
        if any(k < 0 for k in alpha):
            raise ValueError("negative entry in alpha")
        a = sum(alpha)
        if a > self.degree:
            raise ValueError(f"|alpha|={a} exceeds degree {self.degree}")
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if any(k < ak for k, ak in zip(e, alpha)):
                continue
            mult = 1
            for k, ak in zip(e, alpha):
                # falling factorial k*(k-1)*...*(k-ak+1)
                for t in range(ak):
                    mult *= k - t
            out[tuple(k - ak for k, ak in zip(e, alpha))] = c * mult
        return HomogPoly(self.nvars, self.degree - a, out)

    def directional_derive(self, a: Sequence[RationalLike]) -> "HomogPoly":
        """sum_i a_i d_i f for a nonnegative direction a."""
        if len(a) != self.nvars:
            raise ValueError("direction has wrong length")
        af = [as_fraction(x) for x in a]
        if any(x < 0 for x in af):
            raise ValueError("negative entry in direction")
        if self.degree == 0:
            raise ValueError("cannot differentiate a degree-0 polynomial")
        out = HomogPoly.zero(self.nvars, self.degree - 1)
        for i, x in enumerate(af):
            if x:
                out = out + x * self.derive(unit(self.nvars, i))
        return out

    def substitute(self, rows: Sequence[Sequence[RationalLike]]) -> "HomogPoly":
        """f(Av) for a nonnegative nvars-x-m matrix A, exact expansion."""
        if len(rows) != self.nvars:
            raise ValueError(f"matrix has {len(rows)} rows, expected {self.nvars}")
        a = [[as_fraction(x) for x in row] for row in rows]
        if a:
            m = len(a[0])
            if any(len(row) != m for row in a):
                raise ValueError("ragged matrix")
        else:
            m = 0
        for row in a:
            for x in row:
                if x < 0:
                    raise ValueError("negative entry in substitution matrix")
        forms = [HomogPoly.linear_form(row) for row in a]
        # cache powers of each row form up to its needed exponent
        caps = self.var_degree_caps()
        powers: list[list[HomogPoly]] = []
        for i, form in enumerate(forms):
            p = [HomogPoly(m, 0, {(0,) * m: 1})]
            for _ in range(caps[i]):
                p.append(p[-1] * form)
            powers.append(p)
        out = HomogPoly.zero(m, self.degree)
        for e, c in self.terms.items():
            mono = HomogPoly(m, 0, {(0,) * m: c})
            for i, k in enumerate(e):
                if k:
                    mono = mono * powers[i][k]
            out = out + mono
        return out

    def hessian(self, at: Sequence[RationalLike] | None = None):
        """Exact symmetric matrix (d_i d_j f), evaluated at ``at`` if degree > 2.

        Degree-2 polynomials have a constant Hessian and ``at`` may be omitted.
        """
        from .inertia import SymMatrix
        if self.degree < 2:
            raise ValueError("Hessian needs degree >= 2")
        if self.degree > 2 and at is None:
            raise ValueError("evaluation point required for degree > 2")
        n = self.nvars
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                g = self.derive(tuple((1 if k == i else 0) + (1 if k == j else 0)
                                      for k in range(n)))
                row.append(g.eval(at) if at is not None else
                           g.terms.get((0,) * n, Fraction(0)))
            rows.append(row)
        return SymMatrix(rows)

    def quadratic_hessian_after(self, alpha: Exponent):
        """Hessian of d^alpha f when |alpha| = degree - 2, without building d^alpha f.

        Entry (i, j) is the constant d^{alpha+e_i+e_j} f, i.e. the normalized
        coefficient c_{alpha+e_i+e_j} of f.
        """
        from .inertia import SymMatrix
        if sum(alpha) != self.degree - 2:
            raise ValueError("need |alpha| = degree - 2")
        n = self.nvars
        alpha = tuple(alpha)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                e = list(alpha)
                e[i] += 1
                e[j] += 1
                rows[i][j] = rows[j][i] = self.normalized_coeff(tuple(e))
        return SymMatrix(rows)

    # -- views --------------------------------------------------------

    def bivariate_restriction(self, i: int, j: int) -> list[Fraction]:
        """Coefficients a_k of f(0,..,w_i,..,w_j,..,0) = sum a_k w_i^k w_j^(d-k).

        Only keeps terms supported on the variables i and j.
        """
        d = self.degree
        out = [Fraction(0)] * (d + 1)
        for e, c in self.terms.items():
            if all(k == 0 for idx, k in enumerate(e) if idx not in (i, j)):
                out[e[i]] += c
        return out


def total_sum(polys: Iterable[HomogPoly]) -> HomogPoly:
    it = iter(polys)
    out = next(it)
    for p in it:
        out = out + p
    return out


def validate(p: HomogPoly) -> tuple[bool, str | None]:
    """Check the representation invariants, reporting the first violation.

    Total: never raises.  The constructor enforces these, so this is mainly
    useful on objects built by deserialization or by hand.
    """
    for e, c in p.terms.items():
        if len(e) != p.nvars:
            return False, f"exponent {e} has length {len(e)}, expected {p.nvars}"
        if any(k < 0 for k in e):
            return False, f"negative exponent entry in {e}"
        if sum(e) != p.degree:
            return False, f"exponent {e} has degree {sum(e)}, expected {p.degree}"
        if c == 0:
            return False, f"stored zero coefficient at {e}"
        if not isinstance(c, Fraction):
            return False, f"non-rational coefficient at {e}"
    return True, None


def euler_pairing(p: HomogPoly, w: Sequence[RationalLike]) -> Fraction:
    """sum_i w_i * (d_i p)(w); equals degree * p(w) by Euler's identity."""
    wf = [as_fraction(x) for x in w]
    total = Fraction(0)
    for i, x in enumerate(wf):
        total += x * p.derive(unit(p.nvars, i)).eval(wf)
    return total
