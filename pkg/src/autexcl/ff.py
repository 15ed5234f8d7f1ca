"""Finite fields F_{p^k} sized for exhaustive enumeration.

Elements are packed integers in [0, p^k): digit i in base p is the
coefficient of t^i in the polynomial basis for a fixed monic irreducible
modulus.  The canonical modulus for each (p, degree) is the first
irreducible in lexicographic coefficient order (constant term compared
first, each digit scanned 0..p-1), so independently built towers agree.

Fields up to a size threshold carry discrete-log tables (index calculus
over one fixed generator), making mul/inv/pow O(1); larger fields fall
back to polynomial arithmetic.  Everything is immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .weil import _is_prime

DEFAULT_FIELD_BUDGET = 2 ** 26
ZECH_TABLE_LIMIT = 2 ** 20


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by b over F_p; b must be nonzero."""
    a = a[:]
    inv_lead = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    while len(a) >= len(b) and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        _poly_trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = len(coeffs) - 1
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            if not _poly_rem(coeffs, divisor, p):
                return False
    return True


def canonical_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """First monic irreducible of the given degree in lexicographic
    coefficient order (c_0 scanned first)."""
    for tail in product(range(p), repeat=degree):
        coeffs = list(tail) + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible of degree {degree} over F_{p}")  # unreachable


def _factor(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """F_{p^k}; elements are ints in [0, p^k) packing base-p digit vectors."""

    def __init__(
        self,
        p: int,
        k: int = 1,
        modulus: tuple[int, ...] | None = None,
        max_size: int = DEFAULT_FIELD_BUDGET,
    ):
        if not _is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        size = p ** k
        if size > max_size:
            raise ValueError(f"field size {p}^{k} exceeds the enumeration budget {max_size}")
        if modulus is None:
            modulus = canonical_irreducible(p, k)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _is_irreducible(list(modulus), p):
                raise ValueError("modulus is reducible")
        self.p = p
        self.k = k
        self.order = size
        self.modulus = modulus
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._trace: list[int] | None = None
        if size <= ZECH_TABLE_LIMIT:
            self._build_tables()

    # -- representation ------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, k={self.k})"

    def digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def pack(self, digits) -> int:
        a = 0
        for d in reversed(list(digits)):
            a = a * self.p + d % self.p
        return a

    def elements(self) -> range:
        return range(self.order)

    @property
    def gen(self) -> int:
        """The image of t, i.e. packed integer p (or 0 when k == 1)."""
        return self.p if self.k > 1 else 0

    # -- core arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p, out, mul = self.p, 0, 1
        for _ in range(self.k):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += (ra + rb) % p * mul
            mul *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p, out, mul = self.p, 0, 1
        for _ in range(self.k):
            a, ra = divmod(a, p)
            out += (-ra) % p * mul
            mul *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def embed_int(self, n: int) -> int:
        """The image of the rational integer n (a prime-field constant)."""
        return n % self.p

    def _mul_poly(self, a: int, b: int) -> int:
        prod = _poly_mul(list(self.digits(a)), list(self.digits(b)), self.p)
        return self.pack(_poly_rem(prod, list(self.modulus), self.p))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._exp is not None:
            n = self.order - 1
            return self._exp[(n - self._log[a]) % n]
        return self.pow(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self._exp is not None:
            return self._exp[self._log[a] * e % (self.order - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def is_square(self, a: int) -> bool:
        if self.p == 2 or a == 0:
            return True
        if self._log is not None:
            return self._log[a] % 2 == 0
        return self.pow(a, (self.order - 1) // 2) == 1

    def sqrt_char2(self, a: int) -> int:
        """Unique square root in characteristic 2 (inverse Frobenius)."""
        if self.p != 2:
            raise ValueError("characteristic-2 square root only")
        return self.pow(a, self.order // 2) if self.order > 2 else a

    def trace_to_prime(self, a: int) -> int:
        """Absolute trace down to F_p, returned as an int in [0, p)."""
        if self._trace is not None:
            return self._trace[a]
        acc, x = 0, a
        for _ in range(self.k):
            acc = self.add(acc, x)
            x = self.pow(x, self.p)
        return acc  # lies in the prime subfield, packed as itself

    def poly_eval(self, coeffs, x: int) -> int:
        """Horner evaluation of a coefficient sequence (ascending) at x."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    # -- table construction ----------------------------------------------

    def _build_tables(self) -> None:
        q = self.order
        n = q - 1
        prime_parts = _factor(n)
        g = None
        for cand in range(2, q):
            if all(self._pow_poly(cand, n // r) != 1 for r in prime_parts):
                g = cand
                break
        if g is None:  # q == 2
            g = 1
        exp = [0] * (2 * n)
        log = [0] * q
        acc = 1
        for i in range(n):
            exp[i] = acc
            exp[i + n] = acc
            log[acc] = i
            acc = self._mul_poly(acc, g)
        if acc != 1:
            raise RuntimeError("generator order mismatch; table build failed")
        self._exp, self._log = exp, log
        if self.p == 2:
            basis_tr = []
            for i in range(self.k):
                t_i = self.pack([0] * i + [1])
                acc, x = 0, t_i
                for _ in range(self.k):
                    acc ^= x
                    x = self._pow_poly(x, 2)
                basis_tr.append(acc)
            table = [0] * q
            for a in range(q):
                t, bits = 0, a
                i = 0
                while bits:
                    if bits & 1:
                        t ^= basis_tr[i]
                    bits >>= 1
                    i += 1
                table[a] = t
            self._trace = table

    def _pow_poly(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result


@dataclass(frozen=True)
class FieldEmbedding:
    """Embedding of a field into an extension, fixed by the image of t."""

    source: FiniteField
    target: FiniteField
    gen_image: int

    def __call__(self, a: int) -> int:
        tgt = self.target
        acc = 0
        for d in reversed(self.source.digits(a)):
            acc = tgt.add(tgt.mul(acc, self.gen_image), d)
        return acc


_TOWER_CACHE: dict[tuple, FieldEmbedding] = {}


def ff_tower(base: FiniteField, n: int, max_size: int = DEFAULT_FIELD_BUDGET) -> FieldEmbedding:
    """F_{p^{kn}} with the canonical modulus, plus the embedding of `base`
    found by exhaustive root search of the base modulus in the extension."""
    if n < 1:
        raise ValueError("n must be >= 1")
    key = (base.p, base.k, base.modulus, n)
    hit = _TOWER_CACHE.get(key)
    if hit is not None:
        return hit
    if n == 1:
        emb = FieldEmbedding(base, base, base.gen)
    else:
        ext = FiniteField(base.p, base.k * n, max_size=max_size)
        root = None
        for cand in ext.elements():
            if ext.poly_eval([c % base.p for c in base.modulus], cand) == 0:
                root = cand
                break
        if root is None:
            raise RuntimeError("base modulus has no root in the extension (construction bug)")
        emb = FieldEmbedding(base, ext, root)
    _TOWER_CACHE[key] = emb
    return emb
