"""Point counts over field extensions and the exact-degree point sequence.

From the Frobenius charpoly, |X(F_{q^n})| = 1 + q^n - s_n.  The number of
points whose field of definition is exactly F_{q^n} is recovered from the
counts by inclusion-exclusion over the maximal proper divisors n/p of n
(intersections of the X(F_{q^d}) collapse along gcds).  Reduced mod N^m
this yields the criterion sequence P_{N^m}(n).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .weil import PrimePower, WeilPolynomial, newton_power_sums


class NegativeNewPointsWarning(UserWarning):
    """Exact-degree count came out negative for input without curve provenance.

    This cannot happen for counts that come from an actual curve; for a
    bare Weil polynomial it signals the polynomial is not realized by one.
    """


def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class PointCountSeries:
    """|X(F_{q^n})| for n = 1..n_max, exact or as residues mod `modulus`."""

    q: int
    counts: tuple[int, ...]
    modulus: int | None = None
    from_curve: bool = False

    def __post_init__(self):
        if self.modulus is not None:
            if self.modulus < 2:
                raise ValueError("modulus must be >= 2")
            for c in self.counts:
                if not 0 <= c < self.modulus:
                    raise ValueError("modular counts must lie in [0, modulus)")

    @property
    def n_max(self) -> int:
        return len(self.counts)

    def count(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise ValueError(f"count for n={n} not available (series has n_max={self.n_max})")
        return self.counts[n - 1]


@dataclass(frozen=True)
class NewPointSeries:
    """Counts of points of exact degree n over the base field, n = 1..n_max."""

    q: int
    values: tuple[int, ...]
    modulus: int | None = None

    @property
    def n_max(self) -> int:
        return len(self.values)

    def value(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise ValueError(f"value for n={n} not available")
        return self.values[n - 1]


@dataclass(frozen=True)
class PSequence:
    """The criterion sequence: exact-degree counts reduced into [0, N^m)."""

    q: int
    prime_power: PrimePower
    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values)


def point_count(Q: WeilPolynomial, n: int) -> int:
    """Exact |X(F_{q^n})| = 1 + q^n - s_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    s = newton_power_sums(Q, n)
    return 1 + Q.q ** n - s[n - 1]


def point_count_mod(Q: WeilPolynomial, n: int, modulus: int) -> int:
    """|X(F_{q^n})| mod `modulus`, computed entirely in modular arithmetic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    s = newton_power_sums(Q, n, modulus)
    return (1 + pow(Q.q, n, modulus) - s[n - 1]) % modulus


def point_count_series(
    Q: WeilPolynomial, n_max: int, modulus: int | None = None
) -> PointCountSeries:
    """Count series for n = 1..n_max from one pass of Newton's recurrence."""
    s = newton_power_sums(Q, n_max, modulus)
    if modulus is None:
        counts = tuple(1 + Q.q ** n - s[n - 1] for n in range(1, n_max + 1))
    else:
        counts = tuple(
            (1 + pow(Q.q, n, modulus) - s[n - 1]) % modulus for n in range(1, n_max + 1)
        )
    return PointCountSeries(q=Q.q, counts=counts, modulus=modulus)


def new_points(counts: PointCountSeries, n: int):
    """Points of exact degree n, in the same mode (exact/modular) as `counts`.

    Inclusion-exclusion over subsets of the maximal proper divisors
    d_i = n/p_i, whose pairwise unions collapse along gcds; at most
    2^{omega(n)} - 1 terms, never a sum over all divisors.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return counts.count(1)
    ds = [n // p for p in _prime_factors(n)]
    overlap = 0
    for r in range(1, len(ds) + 1):
        sign = 1 if r % 2 == 1 else -1
        for combo in combinations(ds, r):
            d = 0
            for x in combo:
                d = gcd(d, x)
            overlap += sign * counts.count(d)
    value = counts.count(n) - overlap
    if counts.modulus is not None:
        return value % counts.modulus
    if value % n:
        raise ArithmeticError(
            f"degree-{n} point count {value} not divisible by {n}; corrupt series"
        )
    if value < 0:
        if counts.from_curve:
            raise ArithmeticError(
                f"negative exact-degree count R({n})={value} for curve-derived series"
            )
        warnings.warn(
            f"R({n})={value} < 0: series does not come from a curve",
            NegativeNewPointsWarning,
            stacklevel=2,
        )
    return value


def new_point_series(counts: PointCountSeries, n_max: int | None = None) -> NewPointSeries:
    """R(n) for n = 1..n_max (defaults to the full extent of `counts`)."""
    if n_max is None:
        n_max = counts.n_max
    values = tuple(new_points(counts, n) for n in range(1, n_max + 1))
    return NewPointSeries(q=counts.q, values=values, modulus=counts.modulus)


def p_sequence(Q: WeilPolynomial, pp: PrimePower, n_max: int) -> PSequence:
    """Criterion sequence P_{N^m}(n) for n = 1..n_max, all arithmetic mod N^m."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    M = pp.modulus
    series = point_count_series(Q, n_max, modulus=M)
    values = tuple(new_points(series, n) for n in range(1, n_max + 1))
    return PSequence(q=Q.q, prime_power=pp, values=values)
