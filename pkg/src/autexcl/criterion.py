"""The automorphism-order exclusion test and its two corollaries.

If a curve had an F_q-automorphism of order N^m, the running total of the
criterion sequence P_{N^m}(n) could never exceed

    B = floor(2g/(N-1)) + 2 (N^m - 1)/(N - 1),

because past the extension containing all ramification points of the
quotient map the union counts are constant mod N^m, and Riemann-Hurwitz
caps the number of ramified points by B.  So the first n with partial sum
S(n) > B certifies that no such automorphism exists.  The test is
one-directional: an Inconclusive report never asserts existence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .weil import PrimePower, WeilPolynomial, _is_prime
from .zeta import new_points, p_sequence, point_count_series


def bound(N: int, m: int, g: int) -> int:
    """The partial-sum threshold for order N^m in genus g (g >= 2).

    The geometric part (N^m - 1)/(N - 1) is summed explicitly so the whole
    computation stays in integers.
    """
    if g < 2:
        raise ValueError("criterion requires genus >= 2")
    if not _is_prime(N):
        raise ValueError(f"N={N} is not prime")
    if m < 1:
        raise ValueError("m must be >= 1")
    geometric = sum(N ** i for i in range(m))
    return (2 * g) // (N - 1) + 2 * geometric


@dataclass(frozen=True)
class ExclusionReport:
    """Outcome of scanning partial sums of P_{N^m}(n) against a bound.

    crossing_index is the minimal n with S(n) > bound, or None when the
    scan ended without a crossing (Inconclusive).
    """

    prime_power: PrimePower
    genus: int
    q: int
    bound: int
    partial_sums: tuple[int, ...]
    crossing_index: int | None

    @property
    def excluded(self) -> bool:
        return self.crossing_index is not None

    @property
    def n_scanned(self) -> int:
        return len(self.partial_sums)

    @property
    def sum_at_crossing(self) -> int:
        if self.crossing_index is None:
            raise ValueError("no crossing occurred")
        return self.partial_sums[self.crossing_index - 1]

    @property
    def final_sum(self) -> int:
        return self.partial_sums[-1] if self.partial_sums else 0

    @property
    def verdict(self) -> str:
        return "Excluded" if self.excluded else "Inconclusive"


def exclude(
    Q: WeilPolynomial,
    pp: PrimePower,
    n_max: int = 300,
    override_bound: int | None = None,
) -> ExclusionReport:
    """Scan P_{N^m} partial sums; stop at the first n with S(n) > bound.

    override_bound replaces the default threshold when a sharper cap on
    the number of ramified points is known (e.g. a fixed-point count).
    """
    if Q.genus < 2:
        raise ValueError("criterion requires genus >= 2")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    B = bound(pp.base, pp.exponent, Q.genus) if override_bound is None else override_bound
    if B < 0:
        raise ValueError("bound must be >= 0")
    seq = p_sequence(Q, pp, n_max)
    sums: list[int] = []
    total = 0
    crossing = None
    for n in range(1, n_max + 1):
        total += seq.values[n - 1]
        sums.append(total)
        if total > B:
            crossing = n
            break
    return ExclusionReport(
        prime_power=pp,
        genus=Q.genus,
        q=Q.q,
        bound=B,
        partial_sums=tuple(sums),
        crossing_index=crossing,
    )


class Witness(NamedTuple):
    """An index n0 with 2 < R(n0+1) < 2g+2, ruling out all primes N > 2g+1."""

    n0: int
    new_points: int


def large_prime_exclusion(Q: WeilPolynomial, n_max: int) -> list[Witness]:
    """All witnesses n0 < n_max; a nonempty result excludes every prime order
    N > 2g+1 at once.  Runs on the exact (arbitrary-precision) count series.
    """
    if Q.genus < 2:
        raise ValueError("criterion requires genus >= 2")
    if n_max < 2:
        return []
    series = point_count_series(Q, n_max)
    top = 2 * Q.genus + 2
    witnesses = []
    for n0 in range(1, n_max):
        r = new_points(series, n0 + 1)
        if 2 < r < top:
            witnesses.append(Witness(n0=n0, new_points=r))
    return witnesses


def ramification_lower_bound(Q: WeilPolynomial, pp: PrimePower, n_max: int) -> int:
    """Partial sum S(n_max) of the criterion sequence.

    When an automorphism of order N^m does exist, every such partial sum
    is a lower bound for how many points ramify in the quotient by it.
    """
    if Q.genus < 2:
        raise ValueError("requires genus >= 2")
    return sum(p_sequence(Q, pp, n_max).values)
