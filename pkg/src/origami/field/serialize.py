"""JSON forms of towers and tower elements, and certified decimal strings."""

from decimal import Decimal, localcontext
from fractions import Fraction

from .tower import AlgebraicNumber, Step, Tower, flatten, unflatten

DEFAULT_DIGITS = 30
MAX_EXPONENT = 1000  # larger decimal exponents would build huge integers


def frac_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _round(q, digits):
    with localcontext() as ctx:
        ctx.prec = digits
        return +(Decimal(int(q.numerator)) / Decimal(int(q.denominator)))


def _fmt(d):
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def to_decimal(x, digits=DEFAULT_DIGITS, embedding=None):
    """``x`` rounded to ``digits`` significant digits, certified by interval refinement."""
    x = AlgebraicNumber.rational(x)
    d = x.demote()
    if d.level == 0:
        return _fmt(_round(d.data, digits))
    width = Fraction(1, 10 ** (digits + 2))
    while True:
        lo, hi = x.interval(width, embedding)
        if lo and hi and (lo > 0) == (hi > 0):
            a, b = _round(lo, digits), _round(hi, digits)
            if a == b:
                return _fmt(a)
        width /= 10 ** 8


def tower_to_json(tower):
    steps = []
    for k in range(1, tower.height + 1):
        steps.append({"kind": tower.kind(k),
                      "param": [frac_str(c) for c in tower.param(k).coords()]})
    return steps


def tower_from_json(steps):
    tower = Tower.rationals()
    for s in steps:
        coords = [Fraction(c) for c in s["param"]]
        if len(coords) != tower.degree:
            raise ValueError("step parameter has the wrong number of coordinates")
        tower = Tower.make(tower.steps + (Step(s["kind"], unflatten(coords, tower.degrees)),))
    return tower


def number_to_json(x, digits=DEFAULT_DIGITS):
    x = AlgebraicNumber.rational(x).demote()
    return {
        "tower": tower_to_json(x.tower),
        "coords": [frac_str(c) for c in flatten(x.data, x.level)],
        "decimal": to_decimal(x, digits),
    }


def number_from_json(obj):
    tower = tower_from_json(obj["tower"])
    coords = [Fraction(c) for c in obj["coords"]]
    if len(coords) != tower.degree:
        raise ValueError("coordinate vector does not match the tower degree")
    return AlgebraicNumber(tower, unflatten(coords, tower.degrees))


def parse_rational(text):
    """Exact rational from ``"p/q"``, an integer or a decimal literal (no floats)."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = str(text).strip()
    if not text:
        raise ValueError("empty rational")
    mantissa, sep, exponent = text.lower().partition("e")
    if sep:
        if "/" in mantissa or abs(int(exponent)) > MAX_EXPONENT:
            raise ValueError(f"exponent out of range in {text!r}")
    return Fraction(text)
