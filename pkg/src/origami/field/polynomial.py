"""Univariate polynomials and Sturm sequences.

The list helpers (``poly_*``) work on coefficient lists ordered from the
constant term upward and only use ring/field operators, so they run over
``Fraction`` as well as over exact tower elements.  Sturm counting takes a
``sign`` callable for the coefficient field.
"""

from fractions import Fraction
from math import gcd, lcm

from ..errors import ZeroPolynomial


def _is_zero(c):
    return c == 0


def poly_trim(p):
    p = list(p)
    while p and _is_zero(p[-1]):
        p.pop()
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        if i < len(p) and i < len(q):
            out.append(p[i] + q[i])
        elif i < len(p):
            out.append(p[i])
        else:
            out.append(q[i])
    return poly_trim(out)


def poly_neg(p):
    return [-c for c in p]


def poly_sub(p, q):
    return poly_add(p, poly_neg(q))


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [None] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if _is_zero(a):
            continue
        for j, b in enumerate(q):
            t = a * b
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = p[0] - p[0]
    return poly_trim([zero if c is None else c for c in out])


def poly_scale(p, c):
    return poly_trim([a * c for a in p])


def poly_divmod(p, q):
    q = poly_trim(q)
    if not q:
        raise ZeroPolynomial("division by the zero polynomial")
    r = poly_trim(p)
    if len(r) < len(q):
        return [], r
    lead = q[-1]
    out = [None] * (len(r) - len(q) + 1)
    while len(r) >= len(q):
        k = len(r) - len(q)
        c = r[-1] / lead
        out[k] = c
        r = r[:-1]
        for i in range(len(q) - 1):
            r[k + i] = r[k + i] - c * q[i]
        r = poly_trim(r)
    zero = lead - lead
    return [zero if c is None else c for c in out], r


def poly_eval(p, x):
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * x + c
    return 0 if acc is None else acc


def poly_derivative(p):
    return poly_trim([c * i for i, c in enumerate(p)][1:])


def poly_monic(p):
    p = poly_trim(p)
    if not p:
        return p
    return [c / p[-1] for c in p]


def poly_gcd(p, q):
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def poly_compose(p, q):
    """p(q(x))."""
    acc = []
    for c in reversed(poly_trim(p)):
        acc = poly_add(poly_mul(acc, q), [c])
    return acc


def sturm_sequence(p):
    p = poly_trim(p)
    if not p:
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    seq = [p, poly_derivative(p)]
    while seq[-1]:
        r = poly_divmod(seq[-2], seq[-1])[1]
        seq.append(poly_neg(r))
    seq.pop()
    return seq


def _sign_changes(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signs_at(seq, x, sign):
    if x is None:
        return None
    return [sign(poly_eval(s, x)) for s in seq]


def sturm_count(p, lo=None, hi=None, sign=None):
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    ``None`` bounds stand for minus/plus infinity.
    """
    if sign is None:
        sign = _frac_sign
    p = poly_trim(p)
    if not p:
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    if len(p) == 1:
        return 0
    p = poly_divmod(p, poly_gcd(p, poly_derivative(p)))[0]
    seq = sturm_sequence(p)
    if lo is None:
        v_lo = [sign(s[-1]) * (-1) ** (len(s) - 1) for s in seq]
    else:
        v_lo = _signs_at(seq, lo, sign)
    if hi is None:
        v_hi = [sign(s[-1]) for s in seq]
    else:
        v_hi = _signs_at(seq, hi, sign)
    return _sign_changes(v_lo) - _sign_changes(v_hi)


def _frac_sign(c):
    return (c > 0) - (c < 0)


class RatPolynomial:
    """Polynomial with rational coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(poly_trim(Fraction(c) for c in coeffs))

    @classmethod
    def from_high(cls, coeffs):
        """Build from coefficients listed highest degree first (``8,4,-4,-1``)."""
        return cls(list(reversed(list(coeffs))))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __call__(self, x):
        return poly_eval(list(self.coeffs), x)

    def __eq__(self, other):
        if not isinstance(other, RatPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return RatPolynomial(poly_add(list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other):
        return RatPolynomial(poly_sub(list(self.coeffs), list(other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, RatPolynomial):
            return RatPolynomial(poly_mul(list(self.coeffs), list(other.coeffs)))
        return RatPolynomial(poly_scale(list(self.coeffs), Fraction(other)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = poly_divmod(list(self.coeffs), list(other.coeffs))
        return RatPolynomial(q), RatPolynomial(r)

    def derivative(self):
        return RatPolynomial(poly_derivative(list(self.coeffs)))

    def compose(self, other):
        return RatPolynomial(poly_compose(list(self.coeffs), list(other.coeffs)))

    def gcd(self, other):
        return RatPolynomial(poly_gcd(list(self.coeffs), list(other.coeffs)))

    def square_free(self):
        if self.degree < 1:
            return self
        g = self.gcd(self.derivative())
        return divmod(self, g)[0]

    def primitive(self):
        """Integer multiple with coprime coefficients and positive leading term."""
        if self.is_zero():
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return RatPolynomial([Fraction(c, g) for c in ints])

    def integer_coeffs(self, high_first=True):
        c = [int(x) for x in self.primitive().coeffs]
        return c[::-1] if high_first else c

    def real_root_count(self, interval=None):
        """Distinct real roots, optionally restricted to ``interval=(lo, hi)``
        (half-open ``(lo, hi]``, ``None`` meaning unbounded)."""
        if self.is_zero():
            raise ZeroPolynomial("the zero polynomial has no finite root count")
        lo, hi = interval if interval is not None else (None, None)
        return sturm_count(list(self.coeffs), lo, hi)

    def __repr__(self):
        return f"RatPolynomial({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                x = "x" if i == 1 else f"x^{i}"
                body = x if mag == 1 else f"{mag}*{x}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sg, body in terms[1:]:
            s += f" {sg} {body}"
        return s


def sturm_real_root_count(f, interval=None):
    """Exact number of distinct real roots of a rational polynomial."""
    if not isinstance(f, RatPolynomial):
        f = RatPolynomial(f)
    return f.real_root_count(interval)
