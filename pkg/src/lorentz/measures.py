"""Discrete probability measures on {0,1}^n and their negative dependence.

A measure is a map from subsets of {0..n-1} to nonnegative rational weights
summing to one.  Its partition function Z is multi-affine; the measure is
Lorentzian when the homogenization of Z is a Lorentzian polynomial.

PNC and ULC are decided exactly by full enumeration.  The Rayleigh-type
properties quantify over a real orthant, so they are only falsified by
seeded sampling, in the same spirit as the polynomial certifier.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Mapping, Optional, Sequence

from .certify import Certificate, is_lorentzian
from .matroids import Matroid, independent_set_masks
from .poly import Exponent, HomogPoly, RationalLike, as_fraction


class Measure:
    """Probability measure on subsets of {0..n-1} with exact rational weights."""

    __slots__ = ("n", "weights")

    def __init__(self, n: int, weights: Mapping[int, RationalLike] | Mapping[frozenset, RationalLike],
                 normalize: bool = False):
        clean: dict[int, Fraction] = {}
        for key, w in weights.items():
            mask = key if isinstance(key, int) else _mask(key, n)
            if not 0 <= mask < (1 << n):
                raise ValueError(f"subset {key} out of range for n={n}")
            w = as_fraction(w)
            if w < 0:
                raise ValueError("weights must be nonnegative")
            if w > 0:
                clean[mask] = clean.get(mask, Fraction(0)) + w
        total = sum(clean.values())
        if normalize:
            if total == 0:
                raise ValueError("cannot normalize the zero measure")
            clean = {k: w / total for k, w in clean.items()}
        elif total != 1:
            raise ValueError(f"weights sum to {total}, not 1 (pass normalize=True?)")
        self.n = n
        self.weights = clean

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return (self.n, self.weights) == (other.n, other.weights)

    def __repr__(self):
        pretty = {tuple(i for i in range(self.n) if k >> i & 1): str(w)
                  for k, w in sorted(self.weights.items())}
        return f"Measure({self.n}, {pretty})"

    def atoms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(tuple(i for i in range(self.n) if k >> i & 1), w)
                for k, w in sorted(self.weights.items())]


def _mask(subset: Iterable[int], n: int) -> int:
    m = 0
    for i in subset:
        i = int(i)
        if not 0 <= i < n:
            raise ValueError(f"element {i} out of range")
        m |= 1 << i
    return m


def partition_homogenized(mu: Measure) -> HomogPoly:
    """w_0^n Z(w_1/w_0, ..., w_n/w_0): degree n in n+1 variables."""
    n = mu.n
    terms: dict[Exponent, Fraction] = {}
    for mask, w in mu.weights.items():
        e = [0] * (n + 1)
        e[0] = n - bin(mask).count("1")
        for i in range(n):
            if mask >> i & 1:
                e[i + 1] = 1
        terms[tuple(e)] = w
    return HomogPoly(n + 1, n, terms)


def is_lorentzian_measure(mu: Measure) -> Certificate:
    return is_lorentzian(partition_homogenized(mu))


def external_field(mu: Measure, x: Sequence[RationalLike]) -> Measure:
    """Reweight by x^S and renormalize; x must be strictly positive."""
    xf = [as_fraction(v) for v in x]
    if len(xf) != mu.n:
        raise ValueError("field has wrong length")
    if any(v <= 0 for v in xf):
        raise ValueError("external field must be strictly positive")
    scaled = {}
    for mask, w in mu.weights.items():
        factor = Fraction(1)
        for i in range(mu.n):
            if mask >> i & 1:
                factor *= xf[i]
        scaled[mask] = w * factor
    total = sum(scaled.values())
    if total == 0:
        raise ValueError("partition function vanished")
    return Measure(mu.n, {k: w / total for k, w in scaled.items()})


def matroid_measures(m: Matroid) -> tuple[Measure, Measure]:
    """(uniform on independent sets, uniform on bases)."""
    ind = independent_set_masks(m)
    mu = Measure(m.n, {mask: Fraction(1, len(ind)) for mask in ind})
    nu = Measure(m.n, {mask: Fraction(1, len(m.bases)) for mask in m.bases})
    return mu, nu


def exclusion_evolution(mu: Measure, i: int, j: int, theta: RationalLike) -> Measure:
    """Measure whose partition function is (1-theta) Z + theta (Z with i, j swapped)."""
    th = as_fraction(theta)
    if not 0 <= th <= 1:
        raise ValueError("theta must lie in [0, 1]")
    if i == j:
        raise ValueError("indices must be distinct")
    out: dict[int, Fraction] = {}
    for mask, w in mu.weights.items():
        bit_i, bit_j = mask >> i & 1, mask >> j & 1
        swapped = mask & ~((1 << i) | (1 << j))
        if bit_i:
            swapped |= 1 << j
        if bit_j:
            swapped |= 1 << i
        out[mask] = out.get(mask, Fraction(0)) + (1 - th) * w
        out[swapped] = out.get(swapped, Fraction(0)) + th * w
    return Measure(mu.n, out)


def marginal(mu: Measure, i: int) -> Fraction:
    return sum((w for mask, w in mu.weights.items() if mask >> i & 1), Fraction(0))


def pair_marginal(mu: Measure, i: int, j: int) -> Fraction:
    want = (1 << i) | (1 << j)
    return sum((w for mask, w in mu.weights.items() if mask & want == want), Fraction(0))


def rank_sequence(mu: Measure) -> list[Fraction]:
    """mu(|S| = k) for k = 0..n."""
    out = [Fraction(0)] * (mu.n + 1)
    for mask, w in mu.weights.items():
        out[bin(mask).count("1")] += w
    return out


def is_ulc(mu: Measure) -> tuple[bool, Optional[int]]:
    """Exact ultra log-concavity of the rank sequence over binomials."""
    seq = rank_sequence(mu)
    n = mu.n
    for k in range(1, n):
        lhs = seq[k] * seq[k] * comb(n, k - 1) * comb(n, k + 1)
        rhs = seq[k - 1] * seq[k + 1] * comb(n, k) ** 2
        if lhs < rhs:
            return False, k
    return True, None


def pairwise_bound_failures(mu: Measure, c: RationalLike) -> list[tuple[int, int]]:
    """Pairs (i, j) with Pr(i and j) > c Pr(i) Pr(j), decided exactly."""
    cf = as_fraction(c)
    singles = [marginal(mu, i) for i in range(mu.n)]
    bad = []
    for i in range(mu.n):
        for j in range(i + 1, mu.n):
            if pair_marginal(mu, i, j) > cf * singles[i] * singles[j]:
                bad.append((i, j))
    return bad


@dataclass(frozen=True)
class MeasureRayleighWitness:
    i: int
    j: int
    point: tuple[Fraction, ...]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class NegativeDependenceReport:
    pnc_holds: bool
    pnc_failures: tuple[tuple[int, int], ...]
    pairwise_c: Fraction
    pairwise_holds: bool
    pairwise_failures: tuple[tuple[int, int], ...]
    ulc_holds: bool
    ulc_failing_k: Optional[int]
    c_rayleigh_witness: Optional[MeasureRayleighWitness]
    strongly_rayleigh_witness: Optional[MeasureRayleighWitness]
    trials: int
    seed: int


# -- integer-cleared evaluation of Z and its first two derivatives ---------
#
# Both sides of Z * dij Z <= c * di Z * dj Z are quadratic in the weights
# and are compared at one point at a time, so the weights are scaled to
# integers and each evaluated quantity is kept as an integer numerator over
# the common denominator D^n, which cancels in the comparison.


def _scaled_weights(mu: Measure) -> dict[int, int]:
    scale = lcm(*(w.denominator for w in mu.weights.values()))
    return {mask: int(w * scale) for mask, w in mu.weights.items()}


def _z_values(wints: dict[int, int], n: int, u: Sequence[int], den: int):
    """Numerators of Z, dZ, and the pair derivatives over denominator den^n."""
    prod_cache: dict[int, int] = {0: 1}

    def subset_prod(mask: int) -> int:
        if mask in prod_cache:
            return prod_cache[mask]
        low = mask & -mask
        val = subset_prod(mask ^ low) * u[low.bit_length() - 1]
        prod_cache[mask] = val
        return val

    z = 0
    dz = [0] * n
    dz2 = [[0] * n for _ in range(n)]
    for mask, w in wints.items():
        size = bin(mask).count("1")
        z += w * subset_prod(mask) * den ** (n - size)
        for i in range(n):
            if mask >> i & 1:
                rest = mask ^ (1 << i)
                dz[i] += w * subset_prod(rest) * den ** (n - size + 1)
                for j in range(i + 1, n):
                    if mask >> j & 1:
                        val = w * subset_prod(rest ^ (1 << j)) * den ** (n - size + 2)
                        dz2[i][j] += val
    return z, dz, dz2


def _rayleigh_scan(mu: Measure, c: Fraction, trials: int, seed: int,
                   signed: bool, max_den: int = 10) -> Optional[MeasureRayleighWitness]:
    rng = random.Random(seed)
    n = mu.n
    wints = _scaled_weights(mu)
    for _ in range(trials):
        if signed:
            nums = [rng.randint(-max_den, max_den) for _ in range(n)]
        else:
            nums = [rng.randint(1, max_den) for _ in range(n)]
        dens = [rng.randint(1, max_den) for _ in range(n)]
        den = lcm(*dens)
        u = [nums[i] * (den // dens[i]) for i in range(n)]
        z, dz, dz2 = _z_values(wints, n, u, den)
        for i in range(n):
            for j in range(i + 1, n):
                if z * dz2[i][j] * c.denominator > c.numerator * dz[i] * dz[j]:
                    w = tuple(Fraction(nums[k], dens[k]) for k in range(n))
                    return _exact_measure_witness(mu, c, i, j, w)
    return None


def _exact_measure_witness(mu: Measure, c: Fraction, i: int, j: int,
                           w: tuple[Fraction, ...]) -> MeasureRayleighWitness:
    def z_eval(point, drop=()):
        total = Fraction(0)
        for mask, wt in mu.weights.items():
            if any(mask >> k & 1 == 0 for k in drop):
                continue
            term = wt
            for idx in range(mu.n):
                if mask >> idx & 1 and idx not in drop:
                    term *= point[idx]
            total += term
        return total

    lhs = z_eval(w) * z_eval(w, drop=(i, j))
    rhs = c * z_eval(w, drop=(i,)) * z_eval(w, drop=(j,))
    return MeasureRayleighWitness(i, j, w, lhs, rhs)


def negative_dependence_report(mu: Measure, c: RationalLike = 2,
                               trials: int = 1000, seed: int = 0) -> NegativeDependenceReport:
    """Exact PNC and ULC checks plus seeded Rayleigh falsification.

    PNC and the pairwise c-bound are decided exactly from marginals; ULC is
    decided exactly from the rank sequence.  The c-Rayleigh scan samples the
    positive orthant and the strongly-Rayleigh scan samples signed points;
    a None witness falsifies nothing.
    """
    cf = as_fraction(c)
    pnc_fail = tuple(pairwise_bound_failures(mu, 1))
    pair_fail = tuple(pairwise_bound_failures(mu, cf))
    ulc_ok, ulc_k = is_ulc(mu)
    cr = _rayleigh_scan(mu, cf, trials, seed, signed=False)
    sr = _rayleigh_scan(mu, Fraction(1), trials, seed + 1, signed=True)
    return NegativeDependenceReport(
        pnc_holds=not pnc_fail, pnc_failures=pnc_fail,
        pairwise_c=cf, pairwise_holds=not pair_fail, pairwise_failures=pair_fail,
        ulc_holds=ulc_ok, ulc_failing_k=ulc_k,
        c_rayleigh_witness=cr, strongly_rayleigh_witness=sr,
        trials=trials, seed=seed)
