"""Minimal polynomials and the totally-real / totally-positive predicates."""

from fractions import Fraction

from .polynomial import RatPolynomial, sturm_count
from .tower import AlgebraicNumber


def minimal_polynomial(x):
    """Primitive integer polynomial of least degree vanishing at ``x``.

    Finds the first power ``x**k`` that is a rational combination of the
    lower powers, by incremental elimination on tower coordinates.
    """
    x = AlgebraicNumber.rational(x).demote()
    if x.level == 0:
        return RatPolynomial([-x.data, 1])
    n = x.tower.degree
    pivots = {}  # pivot column -> (row, combo)
    power = AlgebraicNumber.rational(1).lift(x.tower)
    for k in range(n + 1):
        row = power.coords()
        combo = {k: Fraction(1)}
        for col, (prow, pcombo) in pivots.items():
            f = row[col]
            if f:
                row = [a - f * b for a, b in zip(row, prow)]
                for i, c in pcombo.items():
                    combo[i] = combo.get(i, 0) - f * c
        lead = next((i for i, v in enumerate(row) if v), None)
        if lead is None:
            coeffs = [combo.get(i, Fraction(0)) for i in range(k + 1)]
            return RatPolynomial(coeffs).primitive()
        inv = 1 / row[lead]
        row = [v * inv for v in row]
        combo = {i: c * inv for i, c in combo.items()}
        # keep pivot rows fully reduced against the new pivot
        for col in list(pivots):
            prow, pcombo = pivots[col]
            f = prow[lead]
            if f:
                prow = [a - f * b for a, b in zip(prow, row)]
                merged = dict(pcombo)
                for i, c in combo.items():
                    merged[i] = merged.get(i, 0) - f * c
                pivots[col] = (prow, merged)
        pivots[lead] = (row, combo)
        power = power * x
    raise AssertionError("powers of a tower element must become dependent")


def is_totally_real(x):
    """All algebraic conjugates of ``x`` are real."""
    m = minimal_polynomial(x)
    return m.real_root_count() == m.degree


def is_totally_positive(x):
    """All algebraic conjugates of ``x`` are real and positive."""
    x = AlgebraicNumber.rational(x)
    m = minimal_polynomial(x)
    verdict = m.real_root_count() == m.degree and m.real_root_count((Fraction(0), None)) == m.degree
    if x.tower.totally_real:
        by_embedding = all(x.sign(e) > 0 for e in x.tower.embeddings())
        if by_embedding != verdict:
            raise AssertionError("Sturm and embedding signs disagree on total positivity")
    return verdict


def conjugate_count(x):
    """(real conjugates, total conjugates) of ``x``."""
    m = minimal_polynomial(x)
    return m.real_root_count(), m.degree


def sturm_count_over(coeffs, lo=None, hi=None):
    """Sturm count for a polynomial with tower coefficients (principal embedding)."""
    def sign(c):
        if isinstance(c, AlgebraicNumber):
            return c.sign()
        return (c > 0) - (c < 0)
    return sturm_count(coeffs, lo, hi, sign=sign)


def embeddings_of(tower):
    """Real embeddings of ``tower``; see :class:`Embedding`."""
    return [Embedding(tower, e) for e in tower.embeddings()]


class Embedding:
    """A real embedding given by one root choice per level."""

    __slots__ = ("tower", "choices")

    def __init__(self, tower, choices):
        self.tower = tower
        self.choices = tuple(choices)

    @property
    def is_principal(self):
        return all(c == 0 for c in self.choices)

    def sign(self, x):
        return self.tower.coerce(x).sign(self.choices)

    def evaluate(self, x, width=Fraction(1, 10 ** 30)):
        return self.tower.coerce(x).interval(width, self.choices)

    def __eq__(self, other):
        return isinstance(other, Embedding) and self.tower is other.tower and self.choices == other.choices

    def __hash__(self):
        return hash(self.choices)

    def __repr__(self):
        return f"Embedding{self.choices}"
