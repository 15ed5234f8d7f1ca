from __future__ import annotations

import random
from math import isqrt

from autexcl.weil import IntPolynomial, WeilPolynomial, poly_product


def quadratic_factor(q: int, a: int) -> WeilPolynomial:
    """x^2 - a x + q; a valid genus-1 Weil polynomial whenever a^2 <= 4q."""
    assert a * a <= 4 * q
    return WeilPolynomial(q, 1, IntPolynomial((q, -a, 1)))


def random_weil(rng: random.Random, q: int, g: int) -> WeilPolynomial:
    """Random valid Weil polynomial: a product of g quadratics x^2 - a x + q.

    Every root then has absolute value exactly sqrt(q), so the result
    passes validation by construction.
    """
    amax = isqrt(4 * q)
    return poly_product(quadratic_factor(q, rng.randint(-amax, amax)) for _ in range(g))


def weil_corpus(seed: int, count: int, qs=(2, 3, 5), gmax: int = 4) -> list[WeilPolynomial]:
    rng = random.Random(seed)
    return [random_weil(rng, rng.choice(qs), rng.randint(1, gmax)) for _ in range(count)]
