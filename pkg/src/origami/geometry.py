"""Points and lines with exact tower coordinates, and the basic constructions on them.

Lines are stored as ``a x + b y + c = 0`` scaled so that the first nonzero
of ``(a, b)`` is 1; equal lines therefore have equal coefficients.  Objects
built from values in different towers are merged with :func:`unify`.
"""

from .errors import CoincidentPoints, IdenticalLines, ParallelLines, PointNotOnLine
from .field import AlgebraicNumber, adjoin_sqrt, unify

Q = AlgebraicNumber.rational


class Point:
    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x, self.y = unify(x, y)

    @property
    def tower(self):
        return self.x.tower

    def coords(self):
        return (self.x, self.y)

    def __add__(self, other):
        return _combine(self, other, 1)

    def __sub__(self, other):
        return _combine(self, other, -1)

    def scale(self, k):
        return Point(self.x * k, self.y * k)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return f"Point({float(self.x):.10g}, {float(self.y):.10g})"


def _combine(p, q, sign):
    px, py, qx, qy = unify(p.x, p.y, q.x, q.y)
    return Point(px + sign * qx, py + sign * qy)


class Line:
    """The line ``a x + b y + c = 0`` in canonical scaling."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        a, b, c = unify(a, b, c)
        if a.is_zero() and b.is_zero():
            raise ValueError("a line needs (a, b) != (0, 0)")
        lead = a if not a.is_zero() else b
        if lead != 1:
            inv = lead.inverse()
            a, b, c = a * inv, b * inv, c * inv
        self.a, self.b, self.c = a, b, c

    @property
    def tower(self):
        return self.a.tower

    def coeffs(self):
        return (self.a, self.b, self.c)

    def value(self, P):
        """``a x + b y + c`` at P (zero exactly when P is on the line)."""
        a, b, c, x, y = unify(self.a, self.b, self.c, P.x, P.y)
        return a * x + b * y + c

    def contains(self, P):
        return self.value(P).is_zero()

    def normal(self):
        return (self.a, self.b)

    def direction(self):
        return (self.b, -self.a)

    def __eq__(self, other):
        if not isinstance(other, Line):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.c == other.c

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self):
        return f"Line({float(self.a):.10g}x + {float(self.b):.10g}y + {float(self.c):.10g} = 0)"


def squared_distance(P, Q_):
    d = P - Q_
    return d.x * d.x + d.y * d.y


def midpoint(P, Q_):
    return (P + Q_).scale(Q(1) / 2)


def dot(u, v):
    u0, u1, v0, v1 = unify(u[0], u[1], v[0], v[1])
    return u0 * v0 + u1 * v1


def line_through(P, Q_):
    """The line through two distinct points."""
    if P == Q_:
        raise CoincidentPoints("a line needs two distinct points")
    x1, y1, x2, y2 = unify(P.x, P.y, Q_.x, Q_.y)
    return Line(y1 - y2, x2 - x1, x1 * y2 - x2 * y1)


def _det(l1, l2):
    a1, b1, c1, a2, b2, c2 = unify(*l1.coeffs(), *l2.coeffs())
    return a1 * b2 - a2 * b1, (a1, b1, c1, a2, b2, c2)


def intersect(l1, l2):
    """The common point of two non-parallel lines."""
    det, (a1, b1, c1, a2, b2, c2) = _det(l1, l2)
    if det.is_zero():
        if l1 == l2:
            raise IdenticalLines("the lines coincide")
        raise ParallelLines("the lines are parallel")
    return Point((b1 * c2 - b2 * c1) / det, (c1 * a2 - c2 * a1) / det)


def reflect_point(P, l):
    """Mirror image of P in l."""
    a, b, c, x, y = unify(l.a, l.b, l.c, P.x, P.y)
    k = 2 * (a * x + b * y + c) / (a * a + b * b)
    return Point(x - k * a, y - k * b)


def reflect_line(m, l):
    """Mirror image of the line m in l."""
    d = m.direction()
    # two points of m: its foot from the origin and one step along it
    P = perpendicular_foot(Point(0, 0), m)
    Q_ = P + Point(d[0], d[1])
    return line_through(reflect_point(P, l), reflect_point(Q_, l))


def perpendicular_foot(P, l):
    a, b, c, x, y = unify(l.a, l.b, l.c, P.x, P.y)
    k = (a * x + b * y + c) / (a * a + b * b)
    return Point(x - k * a, y - k * b)


def perpendicular_from(P, l):
    """The line through P perpendicular to l."""
    a, b, x, y = unify(l.a, l.b, P.x, P.y)
    return Line(b, -a, a * y - b * x)


def perpendicular_at(l, P):
    """The perpendicular to l at a point P on l."""
    if not l.contains(P):
        raise PointNotOnLine("the point is not on the line")
    return perpendicular_from(P, l)


def perp_bisector(P, Q_):
    """The perpendicular bisector of the segment PQ."""
    if P == Q_:
        raise CoincidentPoints("a segment needs two distinct endpoints")
    x1, y1, x2, y2 = unify(P.x, P.y, Q_.x, Q_.y)
    return Line(x2 - x1, y2 - y1, (x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2) / 2)


def parallel_through(P, l):
    a, b, x, y = unify(l.a, l.b, P.x, P.y)
    return Line(a, b, -(a * x + b * y))


def angle_bisectors(l1, l2):
    """The two bisectors of the angles formed by two intersecting lines.

    Uses the single square root ``sqrt((a1^2 + b1^2) / (a2^2 + b2^2))``, a
    quotient of sums of squares.
    """
    det, (a1, b1, c1, a2, b2, c2) = _det(l1, l2)
    if det.is_zero():
        if l1 == l2:
            raise IdenticalLines("the lines coincide")
        raise ParallelLines("parallel lines have a midline, not bisectors",
                            midline=midline(l1, l2))
    t, rho = adjoin_sqrt(None, (a1 * a1 + b1 * b1) / (a2 * a2 + b2 * b2))
    a1, b1, c1, a2, b2, c2 = (v.lift(t) for v in (a1, b1, c1, a2, b2, c2))
    first = Line(a1 - rho * a2, b1 - rho * b2, c1 - rho * c2)
    second = Line(a1 + rho * a2, b1 + rho * b2, c1 + rho * c2)
    return first, second


def midline(l1, l2):
    """The line midway between two parallel lines."""
    a1, b1, c1, a2, b2, c2 = unify(*l1.coeffs(), *l2.coeffs())
    # canonical scaling makes the normals equal
    return Line(a1, b1, (c1 + c2) / 2)
