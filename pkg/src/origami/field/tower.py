"""Exact arithmetic in towers of real quadratic and trisection extensions.

A tower Q = F0 < F1 < ... < Fh is a sequence of steps; step ``k`` adjoins
either ``r`` with ``r^2 = a`` or ``y`` with ``4y^3 - 3y = u`` where ``a`` and
``u`` are elements of the previous field.  An element of level ``k`` is stored
as a tuple of ``d_k`` coefficients of level ``k - 1`` (the power basis in the
newest generator); level 0 elements are rationals (``gmpy2.mpq`` when gmpy2
is importable, otherwise ``Fraction``).  Flattening that nesting
gives the coordinates over the power-product basis of the whole tower.

Towers are interned, so two towers with the same steps are the same object.

Real embeddings are indexed by one root choice per level.  For a square root
step choice 0 is the nonnegative root and 1 the negative one.  For a
trisection step with ``|u| < 1`` choices 0, 1, 2 are the largest, middle and
smallest root; with ``|u| > 1`` there is a single real root (choice 0).  The
principal embedding picks choice 0 everywhere.
"""

import numbers
import threading
from fractions import Fraction
from math import isqrt

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pure-Python fallback, same results, slower
    QQ = Fraction

from ..errors import DivisionByZero, IncompatibleTowers

SQRT = "sqrt"
TRISECT = "trisect"

DEFAULT_MAX_HEIGHT = 12

_THREE_QUARTERS = QQ(3, 4)


class Step:
    __slots__ = ("kind", "param", "degree", "_key", "_quarter")

    def __init__(self, kind, param):
        if kind not in (SQRT, TRISECT):
            raise ValueError(f"unknown extension kind {kind!r}")
        self.kind = kind
        self.param = param
        self.degree = 2 if kind == SQRT else 3
        self._key = (kind, param)
        self._quarter = None

    def __eq__(self, other):
        return isinstance(other, Step) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Step({self.kind})"


def to_q(value):
    """Exact rational in the internal type; accepts ints, rationals and strings."""
    if isinstance(value, QQ):
        return value
    if isinstance(value, str):
        return QQ(value)
    if not isinstance(value, numbers.Rational):
        value = Fraction(value)
    return QQ(int(value.numerator), int(value.denominator))


_INTERN = {}
_INTERN_LOCK = threading.Lock()


class Tower:
    """An interned tower of extension steps.  Use :func:`Tower.make`."""

    __slots__ = ("steps", "degrees", "degree", "height", "_prefixes", "_zeros",
                 "_gen_cache", "_embeddings", "_lock", "__weakref__")

    def __init__(self, steps):
        self.steps = steps
        self.degrees = tuple(s.degree for s in steps)
        self.height = len(steps)
        deg = 1
        for d in self.degrees:
            deg *= d
        self.degree = deg
        self._prefixes = {}
        zeros = [QQ(0)]
        for d in self.degrees:
            zeros.append((zeros[-1],) * d)
        self._zeros = zeros
        self._gen_cache = {}
        self._embeddings = None
        self._lock = threading.Lock()

    @classmethod
    def make(cls, steps=()):
        steps = tuple(steps)
        with _INTERN_LOCK:
            t = _INTERN.get(steps)
            if t is None:
                t = cls(steps)
                _INTERN[steps] = t
        return t

    @classmethod
    def rationals(cls):
        return cls.make(())

    # structure -----------------------------------------------------------

    def prefix(self, k):
        if k == self.height:
            return self
        t = self._prefixes.get(k)
        if t is None:
            t = Tower.make(self.steps[:k])
            self._prefixes[k] = t
        return t

    def is_prefix_of(self, other):
        return self.height <= other.height and other.prefix(self.height) is self

    def extend(self, kind, param):
        """Append a step; ``param`` is an element of this tower."""
        param = self.coerce(param)
        return Tower.make(self.steps + (Step(kind, param.data),))

    def zero_data(self, k=None):
        return self._zeros[self.height if k is None else k]

    def gen(self, k=None):
        """Generator adjoined at level ``k`` (1-based), as an element of this tower."""
        if k is None:
            k = self.height
        if not 1 <= k <= self.height:
            raise IndexError(k)
        data = (self._zeros[k - 1], _one(k - 1, self._zeros)) + (self._zeros[k - 1],) * (self.degrees[k - 1] - 2)
        return AlgebraicNumber(self.prefix(k), data).lift(self)

    def param(self, k):
        """Radicand or trisection argument of level ``k``, in the field below it."""
        return AlgebraicNumber(self.prefix(k - 1), self.steps[k - 1].param)

    def kind(self, k):
        return self.steps[k - 1].kind

    def coerce(self, x):
        if isinstance(x, AlgebraicNumber):
            if x.tower is self:
                return x
            if x.tower.is_prefix_of(self):
                return x.lift(self)
            raise IncompatibleTowers("element does not belong to this tower")
        return AlgebraicNumber.rational(x).lift(self)

    def __call__(self, x):
        return self.coerce(x)

    def __repr__(self):
        kinds = "".join("S" if s.kind == SQRT else "T" for s in self.steps)
        return f"Tower(degree={self.degree}, steps={kinds or '-'})"

    # embeddings ----------------------------------------------------------

    @property
    def principal(self):
        return (0,) * self.height

    def embeddings(self):
        """All real embeddings as root-choice tuples, principal first."""
        if self._embeddings is None:
            embs = [()]
            for k in range(1, self.height + 1):
                step = self.steps[k - 1]
                nxt = []
                for e in embs:
                    if step.kind == SQRT:
                        s = sign_data(self, step.param, k - 1, e)
                        nxt.extend(e + (c,) for c in ((0, 1) if s > 0 else ()))
                    else:
                        u = step.param
                        above = sign_data(self, _sub(self, u, _one(k - 1, self._zeros), k - 1), k - 1, e)
                        below = sign_data(self, _add(self, u, _one(k - 1, self._zeros), k - 1), k - 1, e)
                        inside = above < 0 and below > 0
                        nxt.extend(e + (c,) for c in ((0, 1, 2) if inside else (0,)))
                embs = nxt
            self._embeddings = tuple(embs)
        return list(self._embeddings)

    @property
    def totally_real(self):
        return len(self.embeddings()) == self.degree

    # numeric generator enclosures ----------------------------------------

    def gen_interval(self, k, choices, prec):
        """Scaled integer enclosure ``(lo, hi)`` of generator ``k`` at 2**-prec."""
        key = (k, tuple(choices[:k - 1]), choices[k - 1], prec)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        step = self.steps[k - 1]
        c = choices[k - 1]
        pp = prec + 8
        while True:
            lo, hi = eval_interval(self, step.param, k - 1, choices, pp)
            if step.kind == SQRT:
                if lo > 0:
                    r_lo = isqrt(lo << pp)
                    r_hi = isqrt(hi << pp) + 1
                    if c == 1:
                        r_lo, r_hi = -r_hi, -r_lo
                    break
            else:
                one = 1 << pp
                if -one < lo and hi < one:
                    r_lo, r_hi = _trisection_bracket(lo, hi, pp, c)
                    break
                if lo > one or hi < -one:
                    r_lo, r_hi = _trisection_bracket(lo, hi, pp, None)
                    break
            pp *= 2
        shift = pp - prec
        out = (r_lo >> shift, -((-r_hi) >> shift))
        with self._lock:
            self._gen_cache[key] = out
        return out


def _trisection_bracket(lo, hi, p, choice):
    """Enclose the chosen real root of 4y^3 - 3y = v for v in [lo, hi] (scaled)."""
    one = 1 << p
    four_p = one * one

    def h(y, v):
        return 4 * y * y * y - 3 * four_p * y - v * four_p

    if choice is None:
        # |v| > 1: single real root, h increasing there
        if lo > 0:
            a, b, inc = one, one + 2 * max(abs(lo), abs(hi)) + one, True
        else:
            a, b, inc = -(one + 2 * max(abs(lo), abs(hi)) + one), -one, True
    elif choice == 0:
        a, b, inc = one // 2, one, True
    elif choice == 1:
        a, b, inc = -(one // 2), one // 2, False
    else:
        a, b, inc = -one, -(one // 2), True

    def floor_root(v):
        x, y = a, b
        while y - x > 1:
            m = (x + y) // 2
            val = h(m, v)
            if (val <= 0) if inc else (val >= 0):
                x = m
            else:
                y = m
        return x

    r1 = floor_root(lo)
    r2 = floor_root(hi)
    return min(r1, r2), max(r1, r2) + 1


# raw data arithmetic ------------------------------------------------------


def _one(k, zeros):
    if k == 0:
        return QQ(1)
    d = len(zeros[k])
    return (_one(k - 1, zeros),) + (zeros[k - 1],) * (d - 1)


def is_zero_data(x, k):
    if k == 0:
        return x == 0
    for c in x:
        if not is_zero_data(c, k - 1):
            return False
    return True


def _is_scalar(x, k):
    for c in x[1:]:
        if not is_zero_data(c, k - 1):
            return False
    return True


def _add(t, x, y, k):
    if k == 0:
        return x + y
    return tuple(_add(t, a, b, k - 1) for a, b in zip(x, y))


def _sub(t, x, y, k):
    if k == 0:
        return x - y
    return tuple(_sub(t, a, b, k - 1) for a, b in zip(x, y))


def _neg(x, k):
    if k == 0:
        return -x
    return tuple(_neg(a, k - 1) for a in x)


def _scale(x, f, k):
    if k == 0:
        return x * f
    return tuple(_scale(a, f, k - 1) for a in x)


def _mul(t, x, y, k):
    if k == 0:
        return x * y
    if _is_scalar(y, k):
        y0 = y[0]
        return tuple(_mul(t, a, y0, k - 1) for a in x)
    if _is_scalar(x, k):
        x0 = x[0]
        return tuple(_mul(t, x0, b, k - 1) for b in y)
    step = t.steps[k - 1]
    if step.kind == SQRT:
        x0, x1 = x
        y0, y1 = y
        a = step.param
        r0 = _add(t, _mul(t, x0, y0, k - 1), _mul(t, a, _mul(t, x1, y1, k - 1), k - 1), k - 1)
        r1 = _add(t, _mul(t, x0, y1, k - 1), _mul(t, x1, y0, k - 1), k - 1)
        return (r0, r1)
    # 4y^3 - 3y - u = 0  =>  y^3 = 3/4 y + u/4
    if step._quarter is None:
        step._quarter = _scale(step.param, QQ(1, 4), k - 1)
    qu = step._quarter
    zero = t._zeros[k - 1]
    c = [zero] * 5
    for i in range(3):
        if is_zero_data(x[i], k - 1):
            continue
        for j in range(3):
            if is_zero_data(y[j], k - 1):
                continue
            c[i + j] = _add(t, c[i + j], _mul(t, x[i], y[j], k - 1), k - 1)
    r0, r1, r2 = c[0], c[1], c[2]
    if not is_zero_data(c[3], k - 1):
        r0 = _add(t, r0, _mul(t, c[3], qu, k - 1), k - 1)
        r1 = _add(t, r1, _scale(c[3], _THREE_QUARTERS, k - 1), k - 1)
    if not is_zero_data(c[4], k - 1):
        r1 = _add(t, r1, _mul(t, c[4], qu, k - 1), k - 1)
        r2 = _add(t, r2, _scale(c[4], _THREE_QUARTERS, k - 1), k - 1)
    return (r0, r1, r2)


def _inv(t, x, k):
    if k == 0:
        return 1 / x
    zero = t._zeros[k - 1]
    if _is_scalar(x, k):
        return (_inv(t, x[0], k - 1),) + (zero,) * (len(x) - 1)
    step = t.steps[k - 1]
    if step.kind == SQRT:
        x0, x1 = x
        n = _sub(t, _mul(t, x0, x0, k - 1),
                 _mul(t, step.param, _mul(t, x1, x1, k - 1), k - 1), k - 1)
        ni = _inv(t, n, k - 1)
        return (_mul(t, x0, ni, k - 1), _neg(_mul(t, x1, ni, k - 1), k - 1))
    # solve M z = e0 where column j of M holds x * y^j
    one = _one(k, t._zeros)
    ygen = (zero, _one(k - 1, t._zeros), zero)
    cols = [x]
    cols.append(_mul(t, x, ygen, k))
    cols.append(_mul(t, cols[1], ygen, k))
    m = [[cols[j][i] for j in range(3)] + [one[i]] for i in range(3)]
    return tuple(_solve(t, m, k - 1))


def _solve(t, m, k):
    """Gauss-Jordan on an augmented matrix over level-``k`` data."""
    n = len(m)
    m = [row[:] for row in m]
    for col in range(n):
        piv = next(r for r in range(col, n) if not is_zero_data(m[r][col], k))
        m[col], m[piv] = m[piv], m[col]
        inv = _inv(t, m[col][col], k)
        m[col] = [_mul(t, v, inv, k) for v in m[col]]
        for r in range(n):
            if r != col and not is_zero_data(m[r][col], k):
                f = m[r][col]
                m[r] = [_sub(t, a, _mul(t, f, b, k), k) for a, b in zip(m[r], m[col])]
    return [row[-1] for row in m]


def _lift_data(x, zeros, k_from, k_to, degrees):
    for k in range(k_from, k_to):
        x = (x,) + (zeros[k],) * (degrees[k] - 1)
    return x


def flatten(x, k):
    if k == 0:
        return [x]
    out = []
    for c in x:
        out.extend(flatten(c, k - 1))
    return out


def unflatten(coords, degrees):
    coords = [to_q(c) for c in coords]

    def build(k, seq):
        if k == 0:
            return seq[0]
        d = degrees[k - 1]
        size = len(seq) // d
        return tuple(build(k - 1, seq[i * size:(i + 1) * size]) for i in range(d))

    return build(len(degrees), coords)


# interval evaluation -------------------------------------------------------


def _frac_interval(x, p):
    n, d = x.numerator, x.denominator
    return ((n << p) // d, -((-n << p) // d))


def _iv_mul(a, b, p):
    a0, a1 = a
    b0, b1 = b
    prods = (a0 * b0, a0 * b1, a1 * b0, a1 * b1)
    lo, hi = min(prods), max(prods)
    return (lo >> p, -((-hi) >> p))


def eval_interval(t, x, k, choices, p):
    """Enclosure of level-``k`` data under ``choices`` as integers scaled by 2**p."""
    if k == 0:
        return _frac_interval(x, p)
    if _is_scalar(x, k):
        return eval_interval(t, x[0], k - 1, choices, p)
    g = t.gen_interval(k, choices, p)
    acc = eval_interval(t, x[-1], k - 1, choices, p)
    for c in reversed(x[:-1]):
        ci = eval_interval(t, c, k - 1, choices, p)
        m = _iv_mul(acc, g, p)
        acc = (m[0] + ci[0], m[1] + ci[1])
    return acc


def sign_data(t, x, k, choices):
    if is_zero_data(x, k):
        return 0
    p = 64
    while True:
        lo, hi = eval_interval(t, x, k, choices, p)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        p *= 2


# elements ----------------------------------------------------------------


class AlgebraicNumber:
    """Immutable element of a :class:`Tower`.

    Arithmetic between elements of towers where one is a prefix of the other
    lifts automatically; unrelated towers raise :class:`IncompatibleTowers`
    (use :func:`origami.field.unify` to merge them).
    """

    __slots__ = ("tower", "data", "_interval")

    def __init__(self, tower, data):
        self.tower = tower
        self.data = data
        self._interval = None

    @classmethod
    def rational(cls, value):
        if isinstance(value, AlgebraicNumber):
            return value
        if isinstance(value, float):
            raise TypeError("binary floats never enter exact arithmetic; pass a Fraction")
        return cls(Tower.rationals(), to_q(value))

    @property
    def level(self):
        return self.tower.height

    # coercion ------------------------------------------------------------

    def lift(self, tower):
        if tower is self.tower:
            return self
        if not self.tower.is_prefix_of(tower):
            raise IncompatibleTowers("target tower does not extend this element's tower")
        data = _lift_data(self.data, tower._zeros, self.level, tower.height, tower.degrees)
        return AlgebraicNumber(tower, data)

    def _align(self, other):
        if not isinstance(other, AlgebraicNumber):
            if isinstance(other, numbers.Rational):
                return self, AlgebraicNumber.rational(other).lift(self.tower)
            return None, None
        if other.tower is self.tower:
            return self, other
        if self.tower.is_prefix_of(other.tower):
            return self.lift(other.tower), other
        if other.tower.is_prefix_of(self.tower):
            return self, other.lift(self.tower)
        raise IncompatibleTowers("neither tower is a prefix of the other")

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return AlgebraicNumber(a.tower, _add(a.tower, a.data, b.data, a.level))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return AlgebraicNumber(a.tower, _sub(a.tower, a.data, b.data, a.level))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return AlgebraicNumber(self.tower, _neg(self.data, self.level))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, numbers.Rational):
            return AlgebraicNumber(self.tower, _scale(self.data, to_q(other), self.level))
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return AlgebraicNumber(a.tower, _mul(a.tower, a.data, b.data, a.level))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by an exact zero")
        return AlgebraicNumber(self.tower, _inv(self.tower, self.data, self.level))

    def __truediv__(self, other):
        if isinstance(other, numbers.Rational):
            if other == 0:
                raise DivisionByZero("division by an exact zero")
            return AlgebraicNumber(self.tower, _scale(self.data, 1 / to_q(other), self.level))
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = AlgebraicNumber.rational(1).lift(self.tower)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # predicates ----------------------------------------------------------

    def is_zero(self):
        return is_zero_data(self.data, self.level)

    def is_rational(self):
        return self.demote().level == 0

    def to_fraction(self):
        d = self.demote()
        if d.level:
            raise ValueError("element is irrational")
        return d.data

    def demote(self):
        """Same value in the shortest prefix tower that contains it."""
        x, k = self.data, self.level
        while k and _is_scalar(x, k):
            x, k = x[0], k - 1
        if k == self.level:
            return self
        return AlgebraicNumber(self.tower.prefix(k), x)

    def components(self):
        """Coefficients over the newest generator, as elements of the field below."""
        if self.level == 0:
            return [self]
        below = self.tower.prefix(self.level - 1)
        return [AlgebraicNumber(below, c) for c in self.data]

    def coords(self):
        return flatten(self.data, self.level)

    # comparison ----------------------------------------------------------

    def __eq__(self, other):
        try:
            a, b = self._align(other)
        except IncompatibleTowers:
            from .extend import unify
            a, b = unify(self, other)
        if a is None:
            return NotImplemented
        return a.data == b.data

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        d = self.demote()
        if d.level == 0:
            return hash(d.data)
        return hash((d.tower.steps, d.data))

    def sign(self, embedding=None):
        choices = self.tower.principal if embedding is None else tuple(embedding)
        return sign_data(self.tower, self.data, self.level, choices)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return not self.is_zero()

    # numerics ------------------------------------------------------------

    def interval(self, width=Fraction(1, 10 ** 30), embedding=None):
        """Certified rational enclosure ``(lo, hi)`` with ``hi - lo < width``."""
        choices = self.tower.principal if embedding is None else tuple(embedding)
        if self.level == 0:
            return (self.data, self.data)
        width = Fraction(width)
        p = 64
        while True:
            lo, hi = eval_interval(self.tower, self.data, self.level, choices, p)
            if Fraction(hi - lo, 1 << p) < width:
                out = (Fraction(lo, 1 << p), Fraction(hi, 1 << p))
                if embedding is None:
                    self._interval = out
                return out
            p *= 2

    @property
    def cached_interval(self):
        if self._interval is None:
            self.interval(Fraction(1, 1 << 64))
        return self._interval

    def __float__(self):
        lo, hi = self.interval(Fraction(1, 1 << 60))
        return float((lo + hi) / 2)

    def approx(self, digits=30, embedding=None):
        """Midpoint of a certified enclosure of width below 10**-(digits+5)."""
        lo, hi = self.interval(Fraction(1, 10 ** (digits + 5)), embedding)
        return (lo + hi) / 2

    def __repr__(self):
        d = self.demote()
        if d.level == 0:
            return f"AlgebraicNumber({d.data})"
        return f"AlgebraicNumber(~{float(d):.12g}, degree={d.tower.degree})"
