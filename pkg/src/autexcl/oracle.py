"""Ground-truth curves: exhaustive point counts and verified automorphisms.

Two model families are supported, both with genus >= 2:

* hyperelliptic odd models y^2 + h(x) y = f(x) with deg f = 2g+1 and
  deg h <= g, so the smooth completion has exactly one point at infinity
  and |X(F_{q^n})| = (affine solutions) + 1;
* smooth plane quartics (genus 3), counted over normalized projective
  representatives so each point is seen once.

Counting is enumeration only: the point of this module is to be trusted
independently of the charpoly machinery it cross-checks.  Per-x fiber
sizes come from the quadratic character (odd characteristic), an Artin-
Schreier trace test (characteristic 2), or a root count of a quartic in
y via gcd with y^Q - y, so the work is q^n field operations rather than
q^{2n}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ff import DEFAULT_FIELD_BUDGET, FieldEmbedding, FiniteField, ff_tower
from .weil import WeilPolynomial, charpoly_from_power_sums, weil_validate
from .zeta import PointCountSeries, point_count


class BudgetExceededError(RuntimeError):
    """Requested enumeration would overrun the configured budget."""


class SingularModelError(ValueError):
    """Model failed a smoothness check at construction."""


class ValidationMismatchError(ArithmeticError):
    """Predicted counts disagree with enumeration (singular model or bug)."""


class InvalidMapError(ValueError):
    """Map does not preserve the curve, or its order exceeds the cap."""


@dataclass(frozen=True)
class CurveBudget:
    """Knobs bounding enumeration work.

    max_field caps extension sizes for hyperelliptic counting (per-x cost
    is O(1)); max_quartic_field is lower because each x costs a ~log q
    polynomial gcd; singular_search_points caps the projective scan used
    by the quartic smoothness heuristic; map_order_cap stops runaway
    order computations.
    """

    max_field: int = DEFAULT_FIELD_BUDGET
    max_quartic_field: int = 2 ** 13
    singular_search_points: int = 2 ** 17
    map_order_cap: int = 512


DEFAULT_BUDGET = CurveBudget()


def _poly_degree(coeffs: tuple[int, ...]) -> int:
    d = len(coeffs) - 1
    while d >= 0 and coeffs[d] == 0:
        d -= 1
    return d


def _poly_derivative(coeffs, F: FiniteField) -> tuple[int, ...]:
    out = []
    for i in range(1, len(coeffs)):
        out.append(F.mul(F.embed_int(i), coeffs[i]))
    return tuple(out)


def _poly_gcd_int(a, b, F: FiniteField) -> tuple[int, ...]:
    """Monic gcd of coefficient tuples over F (packed elements)."""
    a = list(a)
    b = list(b)

    def trim(c):
        while c and c[-1] == 0:
            c.pop()
        return c

    def rem(u, v):
        u = u[:]
        inv_lead = F.inv(v[-1])
        while len(u) >= len(v) and u:
            coef = F.mul(u[-1], inv_lead)
            shift = len(u) - len(v)
            for i, vi in enumerate(v):
                u[shift + i] = F.sub(u[shift + i], F.mul(coef, vi))
            trim(u)
        return u

    trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    if a:
        inv_lead = F.inv(a[-1])
        a = [F.mul(c, inv_lead) for c in a]
    return tuple(a)


# ---------------------------------------------------------------------------
# curve models


@dataclass(frozen=True)
class HyperellipticCurve:
    """y^2 + h(x) y = f(x) over `base`, odd model, coefficients packed."""

    base: FiniteField
    f: tuple[int, ...]
    h: tuple[int, ...]

    @property
    def genus(self) -> int:
        return (_poly_degree(self.f) - 1) // 2


@dataclass(frozen=True)
class PlaneQuartic:
    """Homogeneous quartic F(x,y,z) = 0 over `base`; genus 3 when smooth.

    Smoothness is heuristic: a singular-point scan over low-degree
    extensions (up to singular_search_depth) backed by the charpoly
    validation pass.  Treat the flag accordingly.
    """

    base: FiniteField
    terms: tuple[tuple[tuple[int, int, int], int], ...]
    singular_search_depth: int = 0

    @property
    def genus(self) -> int:
        return 3


CurveModel = HyperellipticCurve | PlaneQuartic


def hyperelliptic_curve(
    base: FiniteField,
    f,
    h=(),
    budget: CurveBudget = DEFAULT_BUDGET,
) -> HyperellipticCurve:
    """Validated odd hyperelliptic model of genus >= 2.

    Odd characteristic: h must be zero and f squarefree.  Characteristic 2:
    h must be nonzero and no root x0 of h (they live in extensions of
    degree <= deg h) may give a singular point, i.e. f'(x0) + h'(x0) y0 = 0
    with y0 = sqrt(f(x0)).
    """
    f = tuple(int(c) % base.order for c in f)
    h = tuple(int(c) % base.order for c in h)
    df = _poly_degree(f)
    if df < 5 or df % 2 == 0:
        raise SingularModelError(f"deg f = {df}; need odd degree 2g+1 with g >= 2")
    g = (df - 1) // 2
    if _poly_degree(h) > g:
        raise SingularModelError(f"deg h = {_poly_degree(h)} exceeds genus {g}")
    f = f[: df + 1]
    if base.p != 2:
        if _poly_degree(h) >= 0:
            raise SingularModelError("odd characteristic requires h = 0")
        fp = _poly_derivative(f, base)
        if _poly_degree(_poly_gcd_int(f, fp, base)) > 0:
            raise SingularModelError("f is not squarefree")
        h = ()
    else:
        if _poly_degree(h) < 0:
            raise SingularModelError("characteristic 2 requires h != 0")
        h = h[: _poly_degree(h) + 1]
        fp = _poly_derivative(f, base)
        hp = _poly_derivative(h, base)
        for d in range(1, max(1, _poly_degree(h)) + 1):
            emb = ff_tower(base, d, max_size=budget.max_field)
            ext = emb.target
            h_e = [emb(c) for c in h]
            f_e = [emb(c) for c in f]
            fp_e = [emb(c) for c in fp]
            hp_e = [emb(c) for c in hp]
            for x0 in ext.elements():
                if ext.poly_eval(h_e, x0) != 0:
                    continue
                y0 = ext.sqrt_char2(ext.poly_eval(f_e, x0))
                if ext.add(ext.poly_eval(fp_e, x0), ext.mul(ext.poly_eval(hp_e, x0), y0)) == 0:
                    raise SingularModelError(
                        f"singular point over F_{ext.order} at a root of h"
                    )
    return HyperellipticCurve(base=base, f=f, h=h)


def _quartic_eval(terms, F: FiniteField, x: int, y: int, z: int) -> int:
    acc = 0
    for (e1, e2, e3), c in terms:
        v = c
        if e1:
            v = F.mul(v, F.pow(x, e1))
        if e2:
            v = F.mul(v, F.pow(y, e2))
        if e3:
            v = F.mul(v, F.pow(z, e3))
        acc = F.add(acc, v)
    return acc


def _quartic_partials(terms, F: FiniteField):
    grads = []
    for axis in range(3):
        d = []
        for exps, c in terms:
            if exps[axis] == 0:
                continue
            scaled = F.mul(F.embed_int(exps[axis]), c)
            if scaled == 0:
                continue
            new = list(exps)
            new[axis] -= 1
            d.append((tuple(new), scaled))
        grads.append(tuple(d))
    return grads


def plane_quartic(
    base: FiniteField,
    terms,
    budget: CurveBudget = DEFAULT_BUDGET,
    validate: bool = True,
) -> PlaneQuartic:
    """Validated plane quartic; smoothness search is heuristic (see class doc).

    validate=False skips the singular-point scan, for enumerating point sets
    of forms that are not smooth models (the genus-3 label then means nothing).
    """
    merged: dict[tuple[int, int, int], int] = {}
    for exps, c in dict(terms).items():
        e = tuple(int(v) for v in exps)
        if len(e) != 3 or any(v < 0 for v in e) or sum(e) != 4:
            raise SingularModelError(f"monomial {e} is not homogeneous of degree 4")
        c = int(c) % base.order
        if c:
            merged[e] = base.add(merged.get(e, 0), c)
    tterms = tuple(sorted((e, c) for e, c in merged.items() if c))
    if not tterms:
        raise SingularModelError("zero form")
    depth = 0
    if validate:
        for d in range(1, 7):
            size = base.order ** d
            if size * size > budget.singular_search_points:
                break
            emb = ff_tower(base, d, max_size=budget.max_field)
            ext = emb.target
            ext_terms = tuple((e, emb(c)) for e, c in tterms)
            grads = _quartic_partials(ext_terms, ext)
            for x, y, z in _projective_reps(ext):
                if _quartic_eval(ext_terms, ext, x, y, z) != 0:
                    continue
                if all(_quartic_eval(gr, ext, x, y, z) == 0 for gr in grads):
                    raise SingularModelError(f"singular point found over F_{ext.order}")
            depth = d
    return PlaneQuartic(base=base, terms=tterms, singular_search_depth=depth)


def _projective_reps(F: FiniteField):
    """Normalized representatives of P^2(F): (x, y, 1), (x, 1, 0), (1, 0, 0)."""
    one = 1
    for x in F.elements():
        for y in F.elements():
            yield x, y, one
    for x in F.elements():
        yield x, one, 0
    yield one, 0, 0


# ---------------------------------------------------------------------------
# point counting


def _count_hyperelliptic(curve: HyperellipticCurve, ext: FiniteField, emb: FieldEmbedding) -> int:
    f = [emb(c) for c in curve.f]
    h = [emb(c) for c in curve.h]
    count = 0
    if curve.base.p != 2:
        poly_eval, is_square = ext.poly_eval, ext.is_square
        for x in ext.elements():
            fx = poly_eval(f, x)
            if fx == 0:
                count += 1
            elif is_square(fx):
                count += 2
    else:
        poly_eval, tr, mul, inv = ext.poly_eval, ext.trace_to_prime, ext.mul, ext.inv
        for x in ext.elements():
            hx = poly_eval(h, x)
            if hx == 0:
                count += 1  # unique Artin-Schreier solution
            else:
                fx = poly_eval(f, x)
                u = inv(hx)
                if tr(mul(fx, mul(u, u))) == 0:
                    count += 2
    return count + 1  # the Weierstrass point at infinity of the odd model


def _roots_in_field(coeffs: list[int], F: FiniteField) -> int:
    """Number of distinct roots in F of a univariate polynomial (packed)."""
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    if len(coeffs) == 1:
        return 0
    # gcd(P, y^Q - y): compute y^Q mod P by binary powering, subtract y
    inv_lead = F.inv(coeffs[-1])
    monic = [F.mul(c, inv_lead) for c in coeffs]

    def mulmod(u, v):
        out = [0] * (len(u) + len(v) - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    out[i + j] = F.add(out[i + j], F.mul(ui, vj))
        # reduce by monic
        while len(out) >= len(monic):
            coef = out[-1]
            if coef:
                shift = len(out) - len(monic)
                for i, mi in enumerate(monic):
                    out[shift + i] = F.sub(out[shift + i], F.mul(coef, mi))
            out.pop()
        while out and out[-1] == 0:
            out.pop()
        return out

    if len(monic) == 2:  # degree 1: single root
        return 1
    e = F.order
    result, base_poly = [1], [0, 1]
    while e:
        if e & 1:
            result = mulmod(result, base_poly)
        base_poly = mulmod(base_poly, base_poly)
        e >>= 1
    # result = y^Q mod P; subtract y
    frob = result[:]
    while len(frob) < 2:
        frob.append(0)
    frob[1] = F.sub(frob[1], 1)
    g = _poly_gcd_int(tuple(monic), tuple(frob), F)
    return max(_poly_degree(g), 0)


def _count_quartic(curve: PlaneQuartic, ext: FiniteField, emb: FieldEmbedding) -> int:
    terms = tuple((e, emb(c)) for e, c in curve.terms)
    q = ext.order
    count = 0
    # affine chart z = 1: for each x, count roots in y of F(x, y, 1)
    ycoeffs_by_x1pow: list[list[tuple[int, int]]] = [[] for _ in range(5)]
    for (e1, e2, e3), c in terms:
        ycoeffs_by_x1pow[e2].append((e1, c))
    for x in ext.elements():
        xpows = [1]
        for _ in range(4):
            xpows.append(ext.mul(xpows[-1], x))
        ycoeffs = []
        for e2 in range(5):
            acc = 0
            for e1, c in ycoeffs_by_x1pow[e2]:
                acc = ext.add(acc, ext.mul(c, xpows[e1]))
            ycoeffs.append(acc)
        while ycoeffs and ycoeffs[-1] == 0:
            ycoeffs.pop()
        if not ycoeffs:
            count += q  # the whole vertical line lies on the curve
        elif len(ycoeffs) == 1:
            pass  # nonzero constant: no solutions
        else:
            count += _roots_in_field(ycoeffs, ext)
    # line z = 0, y = 1: roots in x of F(x, 1, 0)
    xcoeffs = [0] * 5
    for (e1, e2, e3), c in terms:
        if e3 == 0:
            xcoeffs[e1] = ext.add(xcoeffs[e1], c)
    line = list(xcoeffs)
    while line and line[-1] == 0:
        line.pop()
    if not line:
        count += q  # the line z = 0 lies on the curve
    elif len(line) > 1:
        count += _roots_in_field(line, ext)
    # the point (1 : 0 : 0) lies on the curve iff the x^4 coefficient vanishes
    if xcoeffs[4] == 0:
        count += 1
    return count


def count_points(curve: CurveModel, n: int, budget: CurveBudget = DEFAULT_BUDGET) -> int:
    """|X(F_{q^n})| by exhaustive enumeration."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = curve.base.order ** n
    cap = budget.max_field if isinstance(curve, HyperellipticCurve) else budget.max_quartic_field
    if size > cap:
        raise BudgetExceededError(
            f"extension size {curve.base.order}^{n} = {size} exceeds budget {cap}"
        )
    emb = ff_tower(curve.base, n, max_size=budget.max_field)
    if isinstance(curve, HyperellipticCurve):
        return _count_hyperelliptic(curve, emb.target, emb)
    return _count_quartic(curve, emb.target, emb)


def curve_count_series(
    curve: CurveModel, n_max: int, budget: CurveBudget = DEFAULT_BUDGET
) -> PointCountSeries:
    counts = tuple(count_points(curve, n, budget) for n in range(1, n_max + 1))
    return PointCountSeries(q=curve.base.order, counts=counts, from_curve=True)


def charpoly_from_curve(curve: CurveModel, budget: CurveBudget = DEFAULT_BUDGET) -> WeilPolynomial:
    """Frobenius charpoly from counts for n <= g, then validated against
    enumeration for n = g+1..2g as far as the budget allows."""
    g = curve.genus
    q = curve.base.order
    s = []
    for n in range(1, g + 1):
        s.append(1 + q ** n - count_points(curve, n, budget))
    W = charpoly_from_power_sums(s, q, g)
    cap = budget.max_field if isinstance(curve, HyperellipticCurve) else budget.max_quartic_field
    for n in range(g + 1, 2 * g + 1):
        if q ** n > cap:
            break
        predicted = point_count(W, n)
        enumerated = count_points(curve, n, budget)
        if predicted != enumerated:
            raise ValidationMismatchError(
                f"count mismatch at n={n}: charpoly predicts {predicted}, "
                f"enumeration finds {enumerated}"
            )
    problem = weil_validate(W)
    if problem is not None:
        raise ValidationMismatchError(f"extracted charpoly invalid: {problem}")
    return W


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class HyperellipticMap:
    """x -> (a x + b)/(c x + d), y -> (e y + w(x))/(c x + d)^{g+1}."""

    mobius: tuple[int, int, int, int]
    y_scale: int
    y_shift: tuple[int, ...] = ()

    def __post_init__(self):
        w = self.y_shift
        while w and w[-1] == 0:
            w = w[:-1]
        object.__setattr__(self, "y_shift", w)


@dataclass(frozen=True)
class QuarticMap:
    """Projective linear substitution by an invertible 3x3 matrix (row-major)."""

    matrix: tuple[int, ...]


CurveMap = HyperellipticMap | QuarticMap


def canonical_involution(curve: HyperellipticCurve) -> HyperellipticMap:
    """(x, y) -> (x, -y - h(x)): the double cover's deck transformation."""
    F = curve.base
    return HyperellipticMap(
        mobius=(1, 0, 0, 1),
        y_scale=F.neg(1),
        y_shift=tuple(F.neg(c) for c in curve.h),
    )


def _fpoly_mul(a, b, F: FiniteField):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    while out and out[-1] == 0:
        out.pop()
    return out


def _fpoly_add(a, b, F: FiniteField):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    while out and out[-1] == 0:
        out.pop()
    return out


def _fpoly_scale(a, k, F: FiniteField):
    return [F.mul(c, k) for c in a]


def _fpoly_pow(a, n, F: FiniteField):
    out = [1]
    for _ in range(n):
        out = _fpoly_mul(out, a, F)
    return out


def _hyper_map_preserves(curve: HyperellipticCurve, m: HyperellipticMap) -> bool:
    F = curve.base
    g = curve.genus
    a, b, c, d = m.mobius
    if F.sub(F.mul(a, d), F.mul(b, c)) == 0 or m.y_scale == 0:
        return False
    if _poly_degree(m.y_shift) > g + 1:
        return False
    A = [b, a]
    D = [d, c]
    f, h = list(curve.f), list(curve.h)
    # Hnum = sum h_i A^i D^{g-i};  Fnum = sum f_i A^i D^{2g+1-i}
    Hnum: list[int] = []
    for i, hi in enumerate(h):
        if hi:
            term = _fpoly_mul(_fpoly_pow(A, i, F), _fpoly_pow(D, g - i, F), F)
            Hnum = _fpoly_add(Hnum, _fpoly_scale(term, hi, F), F)
    Fnum: list[int] = []
    for i, fi in enumerate(f):
        if fi:
            term = _fpoly_mul(_fpoly_pow(A, i, F), _fpoly_pow(D, 2 * g + 1 - i, F), F)
            Fnum = _fpoly_add(Fnum, _fpoly_scale(term, fi, F), F)
    e = m.y_scale
    w = list(m.y_shift)
    e2 = F.mul(e, e)
    two_e = F.mul(F.embed_int(2), e)  # vanishes in characteristic 2
    HnumD = _fpoly_mul(Hnum, D, F)
    # substitute y^2 = f - h y into (e y + w)^2 + Hnum D (e y + w) - Fnum D
    y_coef = _fpoly_add(
        _fpoly_add(_fpoly_scale(h, F.neg(e2), F), _fpoly_scale(w, two_e, F), F),
        _fpoly_scale(HnumD, e, F),
        F,
    )
    const = _fpoly_add(
        _fpoly_add(_fpoly_scale(f, e2, F), _fpoly_mul(w, w, F), F),
        _fpoly_add(_fpoly_mul(HnumD, w, F), _fpoly_scale(_fpoly_mul(Fnum, D, F), F.neg(1), F), F),
        F,
    )
    return not y_coef and not const


def _hyper_compose(m2: HyperellipticMap, m1: HyperellipticMap, g: int, F: FiniteField) -> HyperellipticMap:
    a2, b2, c2, d2 = m2.mobius
    a1, b1, c1, d1 = m1.mobius
    mobius = (
        F.add(F.mul(a2, a1), F.mul(b2, c1)),
        F.add(F.mul(a2, b1), F.mul(b2, d1)),
        F.add(F.mul(c2, a1), F.mul(d2, c1)),
        F.add(F.mul(c2, b1), F.mul(d2, d1)),
    )
    A1, D1 = [b1, a1], [d1, c1]
    w = _fpoly_scale(list(m1.y_shift), m2.y_scale, F)
    for j, wj in enumerate(m2.y_shift):
        if wj:
            term = _fpoly_mul(_fpoly_pow(A1, j, F), _fpoly_pow(D1, g + 1 - j, F), F)
            w = _fpoly_add(w, _fpoly_scale(term, wj, F), F)
    return HyperellipticMap(
        mobius=mobius,
        y_scale=F.mul(m2.y_scale, m1.y_scale),
        y_shift=tuple(w),
    )


def _hyper_is_identity(m: HyperellipticMap, g: int, F: FiniteField) -> bool:
    a, b, c, d = m.mobius
    if b != 0 or c != 0 or a != d or a == 0:
        return False
    if m.y_shift:
        return False
    return m.y_scale == F.pow(a, g + 1)


def _quartic_map_image(curve: PlaneQuartic, m: QuarticMap):
    F = curve.base
    mat = m.matrix
    rows = [mat[0:3], mat[3:6], mat[6:9]]
    # linear forms as trivariate dicts
    lin = [{(1, 0, 0): r[0], (0, 1, 0): r[1], (0, 0, 1): r[2]} for r in rows]

    def tmul(u, v):
        out: dict[tuple[int, int, int], int] = {}
        for eu, cu in u.items():
            if cu == 0:
                continue
            for ev, cv in v.items():
                if cv == 0:
                    continue
                key = (eu[0] + ev[0], eu[1] + ev[1], eu[2] + ev[2])
                out[key] = F.add(out.get(key, 0), F.mul(cu, cv))
        return {k: v for k, v in out.items() if v}

    def tpow(u, n):
        out = {(0, 0, 0): 1}
        for _ in range(n):
            out = tmul(out, u)
        return out

    image: dict[tuple[int, int, int], int] = {}
    for (e1, e2, e3), c in curve.terms:
        term = {(0, 0, 0): c}
        for axis, e in enumerate((e1, e2, e3)):
            if e:
                term = tmul(term, tpow(lin[axis], e))
        for k, v in term.items():
            image[k] = F.add(image.get(k, 0), v)
    return {k: v for k, v in image.items() if v}


def _quartic_map_preserves(curve: PlaneQuartic, m: QuarticMap) -> bool:
    F = curve.base
    mat = m.matrix
    det = _det3(mat, F)
    if det == 0:
        return False
    image = _quartic_map_image(curve, m)
    original = dict(curve.terms)
    if set(image) != set(original):
        return False
    anchor = next(iter(original))
    lam = F.mul(image[anchor], F.inv(original[anchor]))
    return all(F.mul(original[k], lam) == image[k] for k in original)


def _det3(mat, F: FiniteField) -> int:
    a, b, c, d, e, f, g, h, i = mat
    t1 = F.mul(a, F.sub(F.mul(e, i), F.mul(f, h)))
    t2 = F.mul(b, F.sub(F.mul(d, i), F.mul(f, g)))
    t3 = F.mul(c, F.sub(F.mul(d, h), F.mul(e, g)))
    return F.add(F.sub(t1, t2), t3)


def _mat3_mul(u, v, F: FiniteField):
    out = []
    for r in range(3):
        for c in range(3):
            acc = 0
            for k in range(3):
                acc = F.add(acc, F.mul(u[3 * r + k], v[3 * k + c]))
            out.append(acc)
    return tuple(out)


def _mat3_is_scalar(mat) -> bool:
    return (
        mat[1] == mat[2] == mat[3] == mat[5] == mat[6] == mat[7] == 0
        and mat[0] == mat[4] == mat[8]
        and mat[0] != 0
    )


def verify_map(curve: CurveModel, m: CurveMap, budget: CurveBudget = DEFAULT_BUDGET) -> int:
    """Check that the map preserves the defining equation, then return its
    exact order (as a transformation of the curve)."""
    if isinstance(curve, HyperellipticCurve):
        if not isinstance(m, HyperellipticMap):
            raise InvalidMapError("hyperelliptic curve needs a hyperelliptic map")
        if not _hyper_map_preserves(curve, m):
            raise InvalidMapError("map does not preserve the curve equation")
        F, g = curve.base, curve.genus
        cur = m
        for order in range(1, budget.map_order_cap + 1):
            if _hyper_is_identity(cur, g, F):
                return order
            cur = _hyper_compose(m, cur, g, F)
        raise InvalidMapError(f"order exceeds cap {budget.map_order_cap}")
    if not isinstance(m, QuarticMap):
        raise InvalidMapError("plane quartic needs a matrix map")
    if not _quartic_map_preserves(curve, m):
        raise InvalidMapError("matrix does not preserve the quartic")
    F = curve.base
    cur = m.matrix
    for order in range(1, budget.map_order_cap + 1):
        if _mat3_is_scalar(cur):
            return order
        cur = _mat3_mul(m.matrix, cur, F)
    raise InvalidMapError(f"order exceeds cap {budget.map_order_cap}")


# ---------------------------------------------------------------------------
# text format


def parse_curve_file(text: str, budget: CurveBudget = DEFAULT_BUDGET):
    """Parse the line-oriented curve format.

    curve hyperelliptic p=<p> k=<k> f=<c0,c1,...> h=<c0,...>
    curve quartic p=<p> k=<k> F=<e1,e2,e3:coeff;...>
    map matrix=<9 comma-separated entries>          (quartic only)

    Field elements are packed integers in [0, p^k) (base-p digit vectors
    in the canonical polynomial basis).  Returns (curve, map_or_None).
    """
    curve = None
    cmap = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        kv_tokens = tokens[2:] if kind == "curve" else tokens[1:]
        kv = {}
        for tok in kv_tokens:
            if "=" not in tok:
                raise ValueError(f"line {lineno}: expected key=value, got {tok!r}")
            key, val = tok.split("=", 1)
            kv[key] = val
        if kind == "curve":
            if len(tokens) < 2:
                raise ValueError(f"line {lineno}: missing curve variant")
            p = int(kv["p"])
            k = int(kv.get("k", "1"))
            base = FiniteField(p, k, max_size=budget.max_field)
            if tokens[1] == "hyperelliptic":
                f = tuple(int(c) for c in kv["f"].split(","))
                h = tuple(int(c) for c in kv["h"].split(",")) if "h" in kv else ()
                curve = hyperelliptic_curve(base, f, h, budget)
            elif tokens[1] == "quartic":
                terms = {}
                for chunk in kv["F"].split(";"):
                    mono, coeff = chunk.split(":")
                    e1, e2, e3 = (int(v) for v in mono.split(","))
                    terms[(e1, e2, e3)] = int(coeff)
                curve = plane_quartic(base, terms, budget)
            else:
                raise ValueError(f"line {lineno}: unknown curve variant {tokens[1]!r}")
        elif kind == "map":
            if "matrix" in kv:
                entries = tuple(int(v) for v in kv["matrix"].split(","))
                if len(entries) != 9:
                    raise ValueError(f"line {lineno}: matrix needs 9 entries")
                cmap = QuarticMap(matrix=entries)
            else:
                raise ValueError(f"line {lineno}: unsupported map spec")
        else:
            raise ValueError(f"line {lineno}: unknown directive {kind!r}")
    if curve is None:
        raise ValueError("no curve line found")
    return curve, cmap
