"""Discriminants, cubic reduction and the trigonometric solution of totally real cubics."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotCubic, NotIrreducible, NotTotallyReal
from .field import (AlgebraicNumber, RatPolynomial, adjoin_sqrt, adjoin_trisection_root,
                    common_tower, embed, is_totally_positive, polynomial_roots_in_field,
                    sqrt_in_field, trisect_cos)

Q = AlgebraicNumber.rational


@dataclass(frozen=True)
class ReducedCubic:
    """The depressed cubic x^3 + p x + q."""
    p: AlgebraicNumber
    q: AlgebraicNumber

    def __post_init__(self):
        p, q = Q(self.p), Q(self.q)
        t = common_tower(p, q)
        object.__setattr__(self, "p", embed(p, t))
        object.__setattr__(self, "q", embed(q, t))

    @property
    def tower(self):
        return self.p.tower

    def __call__(self, x):
        return x * x * x + self.p * x + self.q

    def coefficients(self):
        """Constant term first."""
        return [self.q, self.p, Q(0), Q(1)]


@dataclass(frozen=True)
class CubicSolution:
    cubic: ReducedCubic
    roots: tuple  # descending
    m: AlgebraicNumber
    u: AlgebraicNumber
    ys: tuple
    discriminant: AlgebraicNumber
    multiplicity: tuple = (1, 1, 1)

    @property
    def tower(self):
        return self.roots[0].tower


def discriminant_quadratic(b, c):
    """b^2 - 4c for x^2 + b x + c."""
    return Q(b) * b - 4 * Q(c)


def reduce_cubic(A, B, C):
    """Shift x -> x - A/3 turning x^3 + A x^2 + B x + C into x^3 + p x + q."""
    A, B, C = Q(A), Q(B), Q(C)
    p = B - A * A / 3
    q = 2 * A * A * A / 27 - A * B / 3 + C
    return ReducedCubic(p, q)


def reduce_polynomial(coeffs):
    """Reduce a cubic given by coefficients (constant term first)."""
    coeffs = [Q(c) for c in coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if len(coeffs) != 4:
        raise NotCubic(f"expected degree 3, got degree {len(coeffs) - 1}")
    lead = coeffs[3]
    return reduce_cubic(coeffs[2] / lead, coeffs[1] / lead, coeffs[0] / lead)


def discriminant_cubic(c):
    """-(27 q^2 + 4 p^3)."""
    return -(27 * c.q * c.q + 4 * c.p * c.p * c.p)


def solve_totally_real_cubic(c, q=None):
    """Three real roots of x^3 + p x + q (descending), exactly, via one trisection.

    Accepts a :class:`ReducedCubic` or ``(p, q)``.  With x = m y and
    m = sqrt(-4p/3) the cubic becomes 4y^3 - 3y = u, u = -4q/m^3.  For
    theta = arccos(u)/3 we use sin(theta) = sqrt(1 - u^2)/(4y1^2 - 1), so the
    two other roots cos(theta +- 2pi/3) need the single square root
    w = sqrt(3(1 - u^2)), taken below the trisection level.
    """
    if q is not None:
        c = ReducedCubic(c, q)
    delta = discriminant_cubic(c)
    if delta.sign() <= 0:
        raise NotTotallyReal("the cubic does not have three distinct real roots",
                             discriminant=delta)
    t, m = adjoin_sqrt(c.tower, -4 * c.p / 3)
    u = -4 * c.q / (m * m * m)
    t, w = adjoin_sqrt(t, 3 * (1 - u * u))
    t, y1 = adjoin_trisection_root(t, u)
    w, m, u = w.lift(t), m.lift(t), u.lift(t)
    half_s3 = (w / 2) / (4 * y1 * y1 - 1)
    y2 = -y1 / 2 + half_s3
    y3 = -y1 / 2 - half_s3
    ys = (y1, y2, y3)
    return CubicSolution(c, tuple(m * y for y in ys), m, u, ys, delta)


def trisection_root_set(u):
    """All three roots of 4y^3 - 3y - u, descending (|u| < 1)."""
    u = Q(u)
    return solve_totally_real_cubic(Fraction(-3, 4), -u / 4).roots


def cubic_roots_in_field(c, tower=None):
    """Roots of the reduced cubic lying in ``tower`` (default: its coefficient field)."""
    return polynomial_roots_in_field(c.coefficients(), tower)


@dataclass(frozen=True)
class CubicVerdict:
    """Outcome of the totally-real test; truthy iff the splitting field is totally real."""
    totally_real: bool
    discriminant: AlgebraicNumber
    splitting_degree: int  # over the coefficient field; 0 when not totally real

    def __bool__(self):
        return self.totally_real


def is_totally_real_cubic(f):
    """Decide whether an irreducible cubic over a totally real field has a totally real splitting field.

    ``f`` is a :class:`RatPolynomial`, a :class:`ReducedCubic`, or a list of
    tower coefficients (constant term first).
    """
    if isinstance(f, ReducedCubic):
        c = f
    else:
        coeffs = list(f.coeffs) if isinstance(f, RatPolynomial) else list(f)
        c = reduce_polynomial(coeffs)
    if cubic_roots_in_field(c):
        raise NotIrreducible("the cubic has a root in its coefficient field")
    delta = discriminant_cubic(c)
    if delta.is_zero() or not is_totally_positive(delta):
        return CubicVerdict(False, delta, 0)
    degree = 3 if sqrt_in_field(delta) is not None else 6
    return CubicVerdict(True, delta, degree)
