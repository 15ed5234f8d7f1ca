"""Exact arithmetic for Frobenius characteristic polynomials.

A genus-g curve over F_q has a monic integer charpoly of Frobenius

    Q(x) = x^{2g} + c_1 x^{2g-1} + ... + c_{2g},

whose roots pair up as alpha <-> q/alpha, forcing c_{2g-i} = q^{g-i} c_i.
Everything here works on coefficients with Newton's identities; roots are
never materialized.  All integer arithmetic is arbitrary precision, and the
power-sum recurrences can be run modulo a small integer instead, which is
the path the exclusion criterion actually uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class NonIntegralCoefficientError(ValueError):
    """Inverse Newton recursion produced a non-integer coefficient."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = n
    for d in range(2, n):
        if d * d > n:
            break
        if n % d == 0:
            p = d
            break
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients ascending (coeffs[i] is the x^i term).

    Normalized on construction: trailing zeros stripped, so the zero
    polynomial is the empty tuple and degree is len(coeffs) - 1 otherwise.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(tuple(out))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(tuple(out))

    def scale(self, k: int) -> "IntPolynomial":
        return IntPolynomial(tuple(k * c for c in self.coeffs))

    def shift(self, n: int) -> "IntPolynomial":
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return IntPolynomial((0,) * n + self.coeffs)

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return ",".join(str(c) for c in self.coeffs)


@dataclass(frozen=True)
class PrimePower:
    """A candidate automorphism order N^m with N prime and m >= 1."""

    base: int
    exponent: int

    def __post_init__(self):
        if not _is_prime(self.base):
            raise ValueError(f"{self.base} is not prime")
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")

    @property
    def modulus(self) -> int:
        return self.base ** self.exponent

    @classmethod
    def parse(cls, text: str) -> "PrimePower":
        """Parse 'N^m' or a plain prime-power integer like '8'."""
        text = text.strip()
        if "^" in text:
            n_str, m_str = text.split("^", 1)
            return cls(int(n_str), int(m_str))
        value = int(text)
        if value < 2:
            raise ValueError(f"{value} is not a prime power")
        p = value
        for d in range(2, value):
            if d * d > value:
                break
            if value % d == 0:
                p = d
                break
        m = 0
        rest = value
        while rest % p == 0:
            rest //= p
            m += 1
        if rest != 1:
            raise ValueError(f"{value} is not a prime power")
        return cls(p, m)

    def __str__(self) -> str:
        return f"{self.base}^{self.exponent}" if self.exponent > 1 else str(self.base)


@dataclass(frozen=True)
class WeilPolynomial:
    """Monic degree-2g integer polynomial attached to a genus-g curve over F_q.

    Construction enforces only shape (monic, degree 2g, q a prime power);
    the palindromic coefficient constraint and the root-size bound are
    checked by weil_validate so that corrupt inputs can be diagnosed
    rather than refused at parse time.
    """

    q: int
    genus: int
    poly: IntPolynomial

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be >= 0")
        if not _is_prime_power(self.q):
            raise ValueError(f"q={self.q} is not a prime power")
        if not self.poly.is_monic():
            raise ValueError("Weil polynomial must be monic")
        if self.poly.degree != 2 * self.genus:
            raise ValueError(
                f"degree {self.poly.degree} does not match 2*genus={2 * self.genus}"
            )

    def coefficient(self, i: int) -> int:
        """c_i, the coefficient of x^{2g-i}."""
        return self.poly.coeffs[2 * self.genus - i]


def power_sums(poly: IntPolynomial, n_max: int, modulus: int | None = None) -> tuple[int, ...]:
    """Power sums s_1..s_{n_max} of the roots of a monic polynomial.

    Newton's identities: for k <= d,  s_k = -(k*c_k + sum_{i<k} c_i s_{k-i});
    for k > d the c_k term drops out.  With a modulus, the whole recurrence
    runs in Z/modulus and results land in [0, modulus).
    """
    if not poly.is_monic():
        raise ValueError("power sums need a monic polynomial")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    d = poly.degree
    c = [poly.coeffs[d - i] for i in range(d + 1)]
    if modulus is not None:
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        c = [ci % modulus for ci in c]
    s: list[int] = []
    for k in range(1, n_max + 1):
        acc = k * c[k] if k <= d else 0
        for i in range(1, min(k - 1, d) + 1):
            acc += c[i] * s[k - 1 - i]
        val = -acc
        s.append(val % modulus if modulus is not None else val)
    return tuple(s)


def newton_power_sums(Q: WeilPolynomial, n_max: int, modulus: int | None = None) -> tuple[int, ...]:
    """Power sums of the Frobenius eigenvalues of Q, exact or mod `modulus`."""
    return power_sums(Q.poly, n_max, modulus)


def charpoly_from_power_sums(s: tuple[int, ...] | list[int], q: int, g: int) -> WeilPolynomial:
    """Rebuild the full degree-2g polynomial from s_1..s_g over F_q.

    Newton's identities pin c_1..c_g; the palindromic constraint
    c_{2g-i} = q^{g-i} c_i fills in the top half.  Raises
    NonIntegralCoefficientError when the recursion does not divide out,
    which means the supplied power sums are not those of an integer
    polynomial.
    """
    if g < 1:
        raise ValueError("genus must be >= 1")
    if len(s) != g:
        raise ValueError(f"need exactly g={g} power sums, got {len(s)}")
    c = [1]
    for k in range(1, g + 1):
        acc = s[k - 1]
        for i in range(1, k):
            acc += c[i] * s[k - 1 - i]
        if acc % k:
            raise NonIntegralCoefficientError(
                f"c_{k} = -({acc})/{k} is not an integer; inconsistent power sums"
            )
        c.append(-acc // k)
    full = list(c)
    for i in range(g - 1, -1, -1):
        full.append(q ** (g - i) * c[i])
    # full[j] is c_j, the coefficient of x^{2g-j}; store ascending
    return WeilPolynomial(q=q, genus=g, poly=IntPolynomial(tuple(reversed(full))))


def weil_validate(Q: WeilPolynomial, depth: int | None = None) -> str | None:
    """Check the palindromic constraint and the root-size bound.

    Returns None when everything holds, otherwise a description of the
    first violation.  `depth` controls how many power sums are tested
    against |s_n| <= 2g q^{n/2}; the default 2g already pins every
    coefficient.
    """
    g, q = Q.genus, Q.q
    if depth is None:
        depth = 2 * g
    for i in range(g + 1):
        expected = q ** (g - i) * Q.coefficient(i)
        actual = Q.coefficient(2 * g - i)
        if actual != expected:
            return f"functional equation fails at i={i}: c_{2*g-i}={actual}, expected q^{g-i}*c_{i}={expected}"
    if g == 0 or depth < 1:
        return None
    s = newton_power_sums(Q, depth)
    for n in range(1, depth + 1):
        if s[n - 1] ** 2 > (2 * g) ** 2 * q ** n:
            return f"power sum bound fails at n={n}: |s_n|={abs(s[n - 1])} > 2g*q^(n/2)"
    return None


def weil_base_change(Q: WeilPolynomial, k: int) -> WeilPolynomial:
    """Charpoly of Frobenius over F_{q^k}: same roots raised to the k-th power.

    Computed as s'_j = s_{jk}, rebuilt from the first g values, and checked
    against the remaining g, so corrupt input cannot slip through.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return Q
    g = Q.genus
    if g == 0:
        return WeilPolynomial(Q.q ** k, 0, Q.poly)
    s_all = newton_power_sums(Q, 2 * g * k)
    s_k = [s_all[j * k - 1] for j in range(1, 2 * g + 1)]
    Qk = charpoly_from_power_sums(s_k[:g], Q.q ** k, g)
    predicted = newton_power_sums(Qk, 2 * g)
    if tuple(predicted[g:]) != tuple(s_k[g:]):
        raise NonIntegralCoefficientError(
            "base change inconsistency: upper power sums disagree (corrupt input)"
        )
    return Qk


def hecke_to_frobenius(h: IntPolynomial, ell: int, mult: int = 1) -> WeilPolynomial:
    """Frobenius factor of an eigenvalue charpoly h at a good prime ell.

    Each root t of h contributes x^2 - t x + ell; the product over all
    roots is the integer polynomial x^{deg h} * h((x^2 + ell)/x), raised
    to the multiplicity of the factor in the Jacobian.
    """
    if not h.is_monic():
        raise ValueError("Hecke charpoly must be monic")
    if h.degree < 1:
        raise ValueError("Hecke charpoly must have degree >= 1")
    if mult < 1:
        raise ValueError("mult must be >= 1")
    if not _is_prime(ell):
        raise ValueError(f"ell={ell} is not prime")
    d = h.degree
    base = IntPolynomial((ell, 0, 1))  # x^2 + ell
    acc = IntPolynomial(())
    for i, a in enumerate(h.coeffs):
        if a:
            acc = acc + (base ** i).shift(d - i).scale(a)
    return WeilPolynomial(q=ell, genus=mult * d, poly=acc ** mult)


def poly_product(factors, unit_q: int | None = None) -> WeilPolynomial:
    """Product of Weil polynomials over a common q; genera add.

    An empty product is an error unless unit_q is given, in which case the
    genus-0 unit over that field is returned.
    """
    factors = list(factors)
    if not factors:
        if unit_q is None:
            raise ValueError("empty product (pass unit_q to get the genus-0 unit)")
        return WeilPolynomial(unit_q, 0, IntPolynomial((1,)))
    q = factors[0].q
    for f in factors[1:]:
        if f.q != q:
            raise ValueError(f"mixed base fields in product: {f.q} != {q}")
    poly = IntPolynomial((1,))
    genus = 0
    for f in factors:
        poly = poly * f.poly
        genus += f.genus
    return WeilPolynomial(q=q, genus=genus, poly=poly)
