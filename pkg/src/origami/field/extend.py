"""Adjoining square roots and trisection roots, and merging towers.

Before a step is added the defining polynomial is tested for a root in the
current field; reducible steps are collapsed to the in-field root.

Square roots are searched structurally through square-root levels.  When the
newest level is a cubic one and the element involves its generator, the
search uses a rational certificate first (the Q-irreducible factors of
``minpoly(b)(P(z))`` must have a degree dividing the field degree) and then
recovers candidate coordinates with an integer-relation search on the
principal embedding; every candidate is verified by exact arithmetic before
it is used.
"""

import logging
import threading
from fractions import Fraction

import mpmath
import sympy

from ..errors import (DegenerateTrisection, IncompatibleTowers, NegativeRadicand,
                      OutOfRange, TowerTooDeep)
from .modp import has_no_root
from .polynomial import RatPolynomial, poly_gcd
from .predicates import minimal_polynomial
from .tower import (DEFAULT_MAX_HEIGHT, SQRT, TRISECT, AlgebraicNumber, Tower,
                    unflatten)

log = logging.getLogger(__name__)

_SQUARE = RatPolynomial([0, 0, 1])
_TRISECTION = RatPolynomial([0, -3, 0, 4])

_cache_lock = threading.Lock()
_sqrt_cache = {}
_join_cache = {}
_basis_cache = {}


def _rational_sqrt(q):
    from math import isqrt
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_in_field(b, tower=None):
    """Nonnegative square root of ``b`` inside ``tower`` (default: b's tower), or None."""
    b = AlgebraicNumber.rational(b)
    if tower is not None:
        b = tower.coerce(b)
    key = (b.tower, b.data)
    with _cache_lock:
        if key in _sqrt_cache:
            return _sqrt_cache[key]
    s = _sqrt(b)
    with _cache_lock:
        _sqrt_cache[key] = s
    return s


def _sqrt(b):
    if b.is_zero():
        return b
    if b.level == 0:
        r = _rational_sqrt(b.data)
        return None if r is None else AlgebraicNumber.rational(r)
    if b.sign() < 0:
        return None
    if has_no_root(SQRT, b):
        return None
    low = b.demote()
    if low.level < b.level:
        s = sqrt_in_field(low)
        if s is not None:
            return s.lift(b.tower)
        if all(st.kind == TRISECT for st in b.tower.steps[low.level:]):
            return None  # odd-degree extensions add no square roots
    t = b.tower
    k = t.height
    comps = b.components()
    if t.kind(k) == SQRT:
        a = t.param(k)
        r = t.gen(k)
        c0, c1 = comps
        if c1.is_zero():
            s = sqrt_in_field(c0)
            if s is not None:
                return s.lift(t)
            s = sqrt_in_field(c0 / a)
            if s is not None:
                return abs(s.lift(t) * r)
            return None
        n = sqrt_in_field(c0 * c0 - a * c1 * c1)
        if n is None:
            return None
        for w in ((c0 + n) / 2, (c0 - n) / 2):
            d0 = sqrt_in_field(w)
            if d0 is None or d0.is_zero():
                continue
            d1 = c1 / (2 * d0)
            s = d0.lift(t) + d1.lift(t) * r
            if s * s == b:
                return abs(s)
        return None
    if comps[1].is_zero() and comps[2].is_zero():
        s = sqrt_in_field(comps[0])
        return None if s is None else s.lift(t)
    return _sqrt_cubic_top(b)


def _relative_charpoly(x):
    """(g2, g1, g0) with t^3 + g2 t^2 + g1 t + g0 the characteristic polynomial
    of x over the field below a cubic top level."""
    t = x.tower
    g = t.gen(t.height)
    cols = [x, x * g, x * g * g]
    m = [[cols[j].components()[i] for j in range(3)] for i in range(3)]
    trace = m[0][0] + m[1][1] + m[2][2]
    minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
              + m[1][1] * m[2][2] - m[1][2] * m[2][1])
    return -trace, minors, -relative_norm(x)


def _sqrt_cubic_top(b):
    """Square root of b in L = K(y), [L:K] = 3, b not in K.

    If z^2 = b then the relative minimal polynomials satisfy
    g(x^2) = -h(x) h(-x); matching coefficients gives e0 = +-sqrt(N(b)) in K
    and e2 as a root in K of e2^4 + 2 g2 e2^2 - 8 e0 e2 + g2^2 - 4 g1, after
    which z = -(e2 b + e0) / (b + e1) with e1 = (g2 + e2^2) / 2.
    """
    g2, g1, g0 = _relative_charpoly(b)
    n = sqrt_in_field(-g0)
    if n is None:
        return None
    K = g0.tower
    for e0 in ((n, -n) if not n.is_zero() else (n,)):
        quartic = [g2 * g2 - 4 * g1, -8 * e0, 2 * g2, K.coerce(0), K.coerce(1)]
        for e2 in polynomial_roots_in_field(quartic, K):
            e1 = (g2 + e2 * e2) / 2
            z = -(e2 * b + e0) / (b + e1)
            if z * z == b:
                return abs(z)
    return None


def relative_norm(x):
    """Norm of ``x`` from its tower down to the field below the newest level."""
    t = x.tower
    k = t.height
    if k == 0:
        return x
    g = t.gen(k)
    d = t.degrees[k - 1]
    cols = [x]
    for _ in range(d - 1):
        cols.append(cols[-1] * g)
    m = [[cols[j].components()[i] for j in range(d)] for i in range(d)]
    if d == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def absolute_norm(x):
    """Norm of ``x`` down to the rationals, as a Fraction."""
    x = AlgebraicNumber.rational(x)
    while x.level:
        x = relative_norm(x)
    return x.data


def norm_polynomial(coeffs):
    """Rational polynomial prod_sigma f^sigma for ``f`` with tower coefficients.

    Computed by interpolating exact norms of ``f(t)`` at integer points.
    """
    coeffs = [AlgebraicNumber.rational(c) for c in coeffs]
    t = common_tower(*coeffs)
    coeffs = [embed(c, t) for c in coeffs]
    deg = (len(coeffs) - 1) * t.degree
    xs = list(range(-(deg // 2), deg - deg // 2 + 1))
    ys = []
    for v in xs:
        acc = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = acc * v + c
        ys.append(absolute_norm(acc))
    return RatPolynomial(_interpolate(xs, ys))


def _interpolate(xs, ys):
    """Coefficients (constant first) of the polynomial through the points, by
    Newton divided differences in exact rationals."""
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [dd[-1]]
    for i in range(n - 2, -1, -1):
        # coeffs * (x - xs[i]) + dd[i]
        shifted = [Fraction(0)] + coeffs
        for k in range(len(coeffs)):
            shifted[k] -= xs[i] * coeffs[k]
        shifted[0] += dd[i]
        coeffs = shifted
    return coeffs


def polynomial_roots_in_field(coeffs, tower=None):
    """All roots in the field of ``f = sum coeffs[i] x^i`` (tower coefficients), descending.

    A root in the field must be a root of a rational factor of the norm
    polynomial whose degree divides the field degree; candidates come from an
    integer-relation search and are verified exactly.
    """
    coeffs = [AlgebraicNumber.rational(c) for c in coeffs]
    t = common_tower(*coeffs) if tower is None else tower
    coeffs = [embed(c, t) for c in coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if len(coeffs) < 2:
        return []
    if coeffs[0].is_zero():
        k = next(i for i, c in enumerate(coeffs) if not c.is_zero())
        rest = polynomial_roots_in_field(coeffs[k:], t) if len(coeffs) - k > 1 else []
        found = rest + [AlgebraicNumber.rational(0).lift(t)]
        found.sort(key=lambda z: z.approx(20), reverse=True)
        return found
    if t.height == 0:
        poly = RatPolynomial([c.data for c in coeffs])
        return [AlgebraicNumber.rational(r) for r in reversed(rational_roots(poly))]
    n = t.degree
    cands = [f for f in _rational_factors(norm_polynomial(coeffs)) if n % f.degree == 0]
    if not cands:
        return []
    found = []
    for phi in cands:
        # a root in the field is a common root of f and some candidate factor
        g = poly_gcd(coeffs, [AlgebraicNumber.rational(c).lift(t) for c in phi.coeffs])
        if len(g) == 2:
            found.append(-g[0])
        elif len(g) > 2:
            found.extend(_roots_by_pslq(g, t))
    found.sort(key=lambda z: z.approx(20), reverse=True)
    return found


def _roots_by_pslq(coeffs, t):
    """Roots in the field of a polynomial over ``t``, from integer relations
    between its real roots and the power basis; each is verified exactly."""
    n = t.degree
    found = []
    for dps in (40 + 5 * n, 80 + 15 * n, 200 + 40 * n):
        with mpmath.workdps(dps):
            cs = [_to_mpf(c, dps) for c in reversed(coeffs)]
            roots = mpmath.polyroots(cs, maxsteps=200, extraprec=dps)
            real = sorted((mpmath.re(r) for r in roots
                           if abs(mpmath.im(r)) < mpmath.mpf(10) ** (-dps // 2)), reverse=True)
            basis = basis_values(t, dps)
            tol = mpmath.mpf(10) ** (-(dps * 3) // 4)
            for rho in real:
                if rho == 0:
                    continue
                rel = mpmath.pslq([rho] + basis, tol=tol, maxcoeff=10 ** (dps // 3),
                                  maxsteps=20000 + 2000 * n)
                if not rel or rel[0] == 0:
                    continue
                z = AlgebraicNumber(t, unflatten([Fraction(-c, rel[0]) for c in rel[1:]], t.degrees))
                acc = coeffs[-1]
                for c in reversed(coeffs[:-1]):
                    acc = acc * z + c
                if acc.is_zero() and all(z != w for w in found):
                    found.append(z)
        if len(found) == len(real):
            break
    if real and not found:
        log.warning("relation search found none of %d real roots in the field (degree %d)",
                    len(real), n)
    return found


def _rational_factors(poly):
    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(poly.coeffs)]
    _, factors = sympy.Poly(coeffs, x, domain="QQ").factor_list()
    out = []
    for f, _mult in factors:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append(RatPolynomial(cs))
    return out


def rational_roots(poly):
    """Rational roots of a rational polynomial, ascending."""
    roots = []
    for f in _rational_factors(poly):
        if f.degree == 1:
            roots.append(-f.coeffs[0] / f.coeffs[1])
    return sorted(set(roots))


def basis_values(tower, dps):
    """Principal-embedding values (mpf) of the power-product basis."""
    key = (tower, dps)
    hit = _basis_cache.get(key)
    if hit is not None:
        return hit
    bits = int(dps * 3.33) + 32
    with mpmath.workdps(dps + 10):
        vals = [mpmath.mpf(1)]
        for k in range(1, tower.height + 1):
            lo, hi = tower.gen_interval(k, tower.principal, bits)
            g = mpmath.mpf(lo + hi) / 2 / mpmath.mpf(2) ** bits
            powers = [mpmath.mpf(1)]
            for _ in range(tower.degrees[k - 1] - 1):
                powers.append(powers[-1] * g)
            vals = [v * pw for pw in powers for v in vals]
    with _cache_lock:
        _basis_cache[key] = vals
    return vals


def _to_mpf(x, dps):
    q = AlgebraicNumber.rational(x).approx(dps)
    return mpmath.mpf(q.numerator) / q.denominator


def _roots_by_relation(P, b, positive_only=False):
    """Some element ``z`` of b's field with ``P(z) == b`` (P rational), verified exactly.

    Returns a list with at most one root; callers derive the remaining roots.
    """
    t = b.tower
    n = t.degree
    m = minimal_polynomial(b)
    g = m.compose(P)
    cands = [f for f in _rational_factors(g) if n % f.degree == 0]
    if not cands:
        return []
    for dps in (40 + 5 * n, 80 + 15 * n, 200 + 40 * n):
        with mpmath.workdps(dps):
            bv = _to_mpf(b, dps)
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(P.coeffs)]
            coeffs[-1] -= bv
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=dps)
            real = [mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** (-dps // 2)]
            real.sort(reverse=True)
            if positive_only:
                real = [r for r in real if r > 0]
            basis = basis_values(t, dps)
            tol = mpmath.mpf(10) ** (-(dps * 3) // 4)
            for rho in real:
                scale = [abs(f(mpmath.mpf(1))) + 1 for f in cands]
                if min(abs(_mp_eval(f, rho)) / s for f, s in zip(cands, scale)) > mpmath.mpf(10) ** (-dps // 3):
                    continue
                rel = mpmath.pslq([rho] + basis, tol=tol, maxcoeff=10 ** (dps // 3), maxsteps=20000 + 2000 * n)
                if not rel or rel[0] == 0:
                    continue
                coords = [Fraction(-c, rel[0]) for c in rel[1:]]
                z = AlgebraicNumber(t, unflatten(coords, t.degrees))
                if _eval_rat_poly(P, z) == b:
                    return [z]
    log.warning("relation search found no root although the degree certificate allows one "
                "(field degree %d); treating the polynomial as rootless", n)
    return []


def _mp_eval(f, x):
    acc = mpmath.mpf(0)
    for c in reversed(f.coeffs):
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


def _eval_rat_poly(P, z):
    acc = AlgebraicNumber.rational(0).lift(z.tower)
    for c in reversed(P.coeffs):
        acc = acc * z + c
    return acc


def trisection_roots_in_field(u, tower=None):
    """Roots of ``4z^3 - 3z - u`` lying in ``tower`` (default: u's tower), descending."""
    u = AlgebraicNumber.rational(u)
    if tower is not None:
        u = tower.coerce(u)
    t = u.tower
    if t.height == 0:
        poly = RatPolynomial([-u.data, -3, 0, 4])
        return [AlgebraicNumber.rational(r) for r in reversed(rational_roots(poly))]
    for k in range(1, t.height + 1):
        if t.kind(k) == TRISECT and t.param(k).lift(t) == u:
            r = t.gen(k)
            return _complete_trisection_roots(r, u)
    low = u.demote()
    if low.level < t.height and all(st.kind == SQRT for st in t.steps[low.level:]):
        below = trisection_roots_in_field(low)
        if not below:
            return []
        return _complete_trisection_roots(below[0].lift(t), u)
    if has_no_root(TRISECT, u):
        return []
    roots = _roots_by_relation(_TRISECTION, u)
    if not roots:
        return []
    return _complete_trisection_roots(roots[0], u)


def _complete_trisection_roots(r, u):
    """All in-field roots given one in-field root ``r``.

    The other two are (-r +- w)/2 with w = sqrt(3(1 - r^2)).  Since
    (1 - r^2)(4r^2 - 1)^2 = 1 - u^2, w lies in the field iff 3(1 - u^2) is a
    square there, and that test runs on the lower-level element u.
    """
    roots = [r]
    r, u = unify(r, u)
    k = 4 * r * r - 1
    if k.is_zero():  # only for |u| = 1
        w = sqrt_in_field(3 * (1 - r * r))
    else:
        s = sqrt_in_field(3 * (1 - u * u))
        w = None if s is None else abs(s / k)
        if w is not None and w * w != 3 * (1 - r * r):
            raise AssertionError("trisection root completion failed")
    if w is not None:
        for z in ((-r + w) / 2, (-r - w) / 2):
            if all(z != x for x in roots):
                roots.append(z)
    roots.sort(key=lambda z: z.approx(20), reverse=True)
    return roots


def _height_check(tower, max_height):
    limit = DEFAULT_MAX_HEIGHT if max_height is None else max_height
    if tower.height >= limit:
        raise TowerTooDeep(f"tower already has {tower.height} levels (limit {limit})")


def adjoin_sqrt(tower, a, max_height=None, known_nonsquare=False):
    """Return ``(tower', s)`` with ``s >= 0`` and ``s*s == a`` exactly.

    No level is added when ``a`` is already a square in ``tower``.
    """
    a = AlgebraicNumber.rational(a)
    tower = a.tower if tower is None else tower
    a = tower.coerce(a)
    sg = a.sign()
    if sg < 0:
        raise NegativeRadicand("square root of a negative element")
    if sg == 0:
        return tower, a
    for k in range(1, tower.height + 1):
        if tower.kind(k) == SQRT and tower.param(k).lift(tower) == a:
            return tower, tower.gen(k)
    if not known_nonsquare:
        s = sqrt_in_field(a)
        if s is not None:
            return tower, s
    _height_check(tower, max_height)
    new = tower.extend(SQRT, a)
    return new, new.gen()


def adjoin_trisection_root(tower, u, max_height=None):
    """Return ``(tower', y)`` with ``y`` the largest root of ``4y^3 - 3y = u``.

    A reducible trisection polynomial does not create a cubic level; the
    largest root is then obtained from an in-field root with a square root.
    """
    u = AlgebraicNumber.rational(u)
    tower = u.tower if tower is None else tower
    u = tower.coerce(u)
    gap = (1 - u * u).sign()
    if gap == 0:
        raise DegenerateTrisection("|u| = 1 gives a repeated root")
    if gap < 0:
        raise OutOfRange("trisection needs |u| <= 1")
    for k in range(1, tower.height + 1):
        if tower.kind(k) == TRISECT and tower.param(k).lift(tower) == u:
            return tower, tower.gen(k)
    roots = trisection_roots_in_field(u)
    if roots:
        r = roots[0]
        if (r - Fraction(1, 2)).sign() > 0:
            return tower, r
        t2, w = adjoin_sqrt(tower, 3 * (1 - r * r), max_height)
        return t2, (w - r) / 2
    _height_check(tower, max_height)
    new = tower.extend(TRISECT, u)
    return new, new.gen()


# merging towers -------------------------------------------------------------


def _evaluate(x, images, target):
    """Image of ``x`` under the map sending generator k of x's tower to images[k-1]."""
    def go(data, k):
        if k == 0:
            return AlgebraicNumber.rational(data).lift(target)
        acc = go(data[-1], k - 1)
        for c in reversed(data[:-1]):
            acc = acc * images[k - 1] + go(c, k - 1)
        return acc
    return go(x.data, x.level)


def join(t1, t2):
    """Smallest tower extending ``t1`` that also contains the field of ``t2``.

    Returns ``(tower, images)`` where ``images[k-1]`` is the image of t2's
    generator k.  The map preserves principal values.
    """
    if t2.is_prefix_of(t1):
        return t1, [t1.gen(k) for k in range(1, t2.height + 1)]
    key = (t1, t2)
    with _cache_lock:
        hit = _join_cache.get(key)
    if hit is not None:
        return hit
    c = 0
    while c < min(t1.height, t2.height) and t1.steps[c] == t2.steps[c]:
        c += 1
    t = t1
    images = [t.gen(k) for k in range(1, c + 1)]
    for k in range(c + 1, t2.height + 1):
        param = _evaluate(t2.param(k), images, t)
        if t2.kind(k) == SQRT:
            t_new, g = adjoin_sqrt(t, param)
        else:
            t_new, g = adjoin_trisection_root(t, param)
        images = [im.lift(t_new) for im in images] + [g]
        t = t_new
    out = (t, images)
    with _cache_lock:
        _join_cache[key] = out
    return out


def embed(x, tower):
    """Express ``x`` as an element of ``tower`` (which must contain its field)."""
    x = AlgebraicNumber.rational(x)
    if x.tower.is_prefix_of(tower):
        return x.lift(tower)
    t, images = join(tower, x.tower)
    if t is not tower:
        raise IncompatibleTowers("target tower does not contain the element's field")
    return _evaluate(x, images, tower)


def common_tower(*xs):
    t = Tower.rationals()
    for x in xs:
        x = AlgebraicNumber.rational(x)
        t, _ = join(t, x.tower)
    return t


def unify(*xs):
    """Lift all arguments into one tower, merging towers when needed."""
    xs = [AlgebraicNumber.rational(x) for x in xs]
    t = common_tower(*xs)
    return [embed(x, t) for x in xs]


def sqrt(a):
    """Convenience: nonnegative square root of ``a`` in a (possibly extended) tower."""
    return adjoin_sqrt(None, a)[1]


def trisect_cos(u):
    """Largest root of ``4y^3 - 3y = u``, i.e. cos(arccos(u)/3)."""
    return adjoin_trisection_root(None, u)[1]
