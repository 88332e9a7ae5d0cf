"""Worked constructions replayed with exact checks: the perpendicular bisector by
bisections, hypotenuse lengths, the regular pentagon and heptagon, and
Archimedes' neusis trisection."""

from dataclasses import dataclass, field
from fractions import Fraction

from sympy.solvers.diophantine.diophantine import sum_of_four_squares

from .axioms import (ConstructionTrace, fold_B, fold_L, fold_P, fold_perpendicular,
                     fold_perpendicular_at, fold_reflect, trisect_between_lines)
from .cubic import reduce_cubic
from .errors import (CoincidentPoints, DegenerateConfiguration, EmptyInput, NotAcute,
                     ParallelLines, UnknownRecipe)
from .field import AlgebraicNumber, adjoin_sqrt, minimal_polynomial, trisect_cos, unify
from .geometry import Point, dot, intersect, perp_bisector, reflect_point, squared_distance

Q = AlgebraicNumber.rational


@dataclass
class ConstructionRecipe:
    name: str
    axioms: frozenset
    trace: ConstructionTrace
    objects: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values()) and self.trace.profile <= self.axioms


# helpers on a trace -------------------------------------------------------


def _x_axis(tr):
    return fold_L(tr, tr[0], tr[1])


def _y_axis(tr):
    return fold_perpendicular_at(tr, _x_axis(tr), tr[0])


def _number_point(tr, x):
    """The point (x, 0): reused if present, else a rational constant or a given."""
    p = Point(x, 0)
    try:
        return tr.resolve(p)
    except Exception:
        pass
    x = Q(x)
    if x.is_rational():
        return tr.constant(x.to_fraction())
    tr.given(p)
    return p


def point_from_coords(tr, px, py):
    """(x, y) from the x-axis points (x, 0), (y, 0): perpendiculars and a reflection."""
    xa = _x_axis(tr)
    ya = _y_axis(tr)
    diag = fold_B(tr, xa, ya)[0]  # y = x
    vert = fold_perpendicular(tr, px, xa)
    py_on_y = fold_reflect(tr, py, diag)
    horiz = fold_perpendicular(tr, py_on_y, ya)
    return fold_P(tr, vert, horiz)


def _record_lean(tr, tag, op, inputs, computed, lean):
    """Record ``lean`` as the output: the same value as ``computed`` in a smaller tower."""
    if computed != lean:
        raise AssertionError(f"{op}: constructed value differs from the expected one")
    tr._record(tag, op, inputs, [lean])
    return tr.resolve(lean)


def _hypot2(tr, pa, pb):
    """Point (sqrt(a^2 + b^2), 0) from x-axis points (a, 0) and (b, 0)."""
    a, b = unify(pa.x, pb.x)
    if a.is_zero() or b.is_zero():
        pt = pb if a.is_zero() else pa
        return pt if pt.x.sign() >= 0 else tr.field_op("neg", pt)
    C = point_from_coords(tr, pa, pb)
    xa = _x_axis(tr)
    oc = fold_L(tr, tr[0], C)
    _, h = adjoin_sqrt(None, (a * a + b * b).demote())
    target = Point(h, 0)
    for bis in fold_B(tr, xa, oc):
        img = reflect_point(C, bis)
        if img.x.sign() > 0:
            return _record_lean(tr, "B", "reflect", [C, bis], img, target)
    raise AssertionError("no bisector carries the corner onto the positive axis")


def hypotenuse_points(tr, points):
    """Inductive right-triangle construction of sqrt(x1^2 + ... + xn^2)."""
    if not points:
        raise EmptyInput("need at least one length")
    acc = points[0]
    if acc.x.sign() < 0:
        acc = tr.field_op("neg", acc)
    for p in points[1:]:
        acc = _hypot2(tr, acc, p)
    return acc


def hypotenuse_sqrt(xs, trace=None):
    """sqrt(sum of squares) of the given numbers using only (L), (P), (B)."""
    xs = list(xs)
    if not xs:
        raise EmptyInput("need at least one length")
    tr = ConstructionTrace() if trace is None else trace
    pts = [_number_point(tr, x) for x in xs]
    return hypotenuse_points(tr, pts).x


def sqrt_positive_rational(tr, q):
    """sqrt(q) for a positive rational q via a four-square decomposition of n*d."""
    q = Fraction(q)
    n, d = q.numerator, q.denominator
    parts = [k for k in sum_of_four_squares(n * d) if k]
    root = hypotenuse_points(tr, [tr.constant(k) for k in parts])
    if d == 1:
        return root
    return tr.field_op("div", root, tr.constant(d))


# perpendicular bisector by bisections ----------------------------------------


def perp_bisector_fig2(trace, A, B):
    """Perpendicular bisector of AB from perpendiculars at A and B and the
    bisectors of the four right angles."""
    A, B = trace.resolve(A), trace.resolve(B)
    if A == B:
        raise CoincidentPoints("a segment needs two distinct endpoints")
    ab = fold_L(trace, A, B)
    pa = fold_perpendicular_at(trace, ab, A)
    pb = fold_perpendicular_at(trace, ab, B)
    bis_a = fold_B(trace, ab, pa)
    bis_b = fold_B(trace, ab, pb)
    pts = []
    for la in bis_a:
        for lb in bis_b:
            try:
                X = fold_P(trace, la, lb)
            except ParallelLines:
                continue
            if X not in pts:
                pts.append(X)
    C, D = pts
    line = fold_L(trace, C, D)
    assert line == perp_bisector(A, B)
    return line


def perp_bisector_recipe(A=(0, 0), B=(4, 0)):
    tr = ConstructionTrace()
    A = Point(*A) if not isinstance(A, Point) else A
    B = Point(*B) if not isinstance(B, Point) else B
    for P in (A, B):
        try:
            tr.resolve(P)
        except Exception:
            tr.given(P)
    line = perp_bisector_fig2(tr, A, B)
    checks = {"equals_kernel_perp_bisector": line == perp_bisector(A, B)}
    return ConstructionRecipe("perp-bisector", frozenset("LPB"), tr,
                              {"A": A, "B": B, "line": line}, checks)


# polygons -------------------------------------------------------------------


def _vertex_points(tr, c_pt, s_pt, n):
    """Vertices (cos 2pi k/n, sin 2pi k/n) by the angle-sum recurrence from (c, s)."""
    verts = [tr[1]]
    ck, sk = c_pt, s_pt
    for k in range(1, n):
        verts.append(point_from_coords(tr, ck, sk))
        if k < n - 1:
            ck, sk = (tr.field_op("sub", tr.field_op("mul", ck, c_pt), tr.field_op("mul", sk, s_pt)),
                      tr.field_op("add", tr.field_op("mul", sk, c_pt), tr.field_op("mul", ck, s_pt)))
    return verts


def _polygon_checks(verts):
    chord = squared_distance(verts[0], verts[1])
    n = len(verts)
    return {
        "on_unit_circle": all((v.x * v.x + v.y * v.y) == 1 for v in verts),
        "equal_chords": all(squared_distance(verts[k], verts[(k + 1) % n]) == chord for k in range(n)),
        "centroid_zero": sum((v.x for v in verts), Q(0)).is_zero()
        and sum((v.y for v in verts), Q(0)).is_zero(),
    }


def pentagon():
    """cos and sin of 2pi/5 and the vertices of the regular pentagon, by (L), (P), (B)."""
    tr = ConstructionTrace()
    one, two, four, half = tr[1], tr.constant(2), tr.constant(4), tr.constant(Fraction(1, 2))
    r5 = hypotenuse_points(tr, [one, two])
    c_pt = tr.field_op("div", tr.field_op("sub", r5, one), four)
    c5_pt = tr.field_op("div", tr.field_op("add", r5, one), four)  # cos(pi/5)
    s_pt = hypotenuse_points(tr, [c5_pt, half])
    c, s = c_pt.x, s_pt.x
    verts = _vertex_points(tr, c_pt, s_pt, 5)
    checks = {
        "minpoly": minimal_polynomial(c).integer_coeffs() == [4, 2, -1],
        "unit": (s * s + c * c) == 1,
        **_polygon_checks(verts),
    }
    recipe = ConstructionRecipe("pentagon", frozenset("LPB"), tr,
                                {"c": c, "s": s, "vertices": verts}, checks)
    return recipe


def heptagon():
    """cos and sin of 2pi/7 and the heptagon vertices, by (L), (P), (B), (T).

    The cubic t^3 + t^2 - 2t - 1 (t = 2cos(2pi/7)) is reduced, solved with one
    trisection, and the sine is obtained from the sum-of-squares identity
    4 sin^2(2pi/7) = 3 cos^2(pi/7) + 4 cos^4(3pi/7).
    """
    tr = ConstructionTrace()
    one = tr[1]
    red = reduce_cubic(1, -2, -1)
    p, q = red.p.to_fraction(), red.q.to_fraction()
    # m = sqrt(-4p/3) = 2 sqrt(7)/3,  u = -4q/m^3 = 1/sqrt(28)
    r7 = hypotenuse_points(tr, [tr.constant(2), one, one, one])
    m_pt = tr.field_op("mul", r7, tr.constant(Fraction(2, 3)))
    m = m_pt.x
    assert m * m == -4 * Q(p) / 3
    m3 = tr.field_op("mul", tr.field_op("mul", m_pt, m_pt), m_pt)
    u_pt = tr.field_op("div", tr.constant(-4 * q), m3)
    u = u_pt.x
    # the angle with cosine u: direction (u, sqrt(1 - u^2)), here 1 - u^2 = 27/28
    s_u = sqrt_positive_rational(tr, (1 - u * u).to_fraction())
    A = point_from_coords(tr, u_pt, s_u)
    xa = _x_axis(tr)
    ray = fold_L(tr, tr[0], A)
    t1, _t2 = trisect_between_lines(tr, xa, ray)
    # cos of the trisected angle: carry the unit point onto t1, then project
    y_lean = trisect_cos(u)
    y_pt = None
    for bis in fold_B(tr, xa, t1):
        img = fold_reflect(tr, tr[1], bis)
        if img.x.sign() > 0:
            perp = fold_perpendicular(tr, img, xa)
            y_pt = _record_lean(tr, "P", "intersect", [perp, xa], intersect(perp, xa), Point(y_lean, 0))
            break
    z_pt = tr.field_op("mul", m_pt, y_pt)
    t_pt = tr.field_op("sub", z_pt, tr.constant(Fraction(1, 3)))
    c_pt = tr.field_op("div", t_pt, tr.constant(2))
    c = c_pt.x
    half_sum = tr.field_op("div", tr.field_op("add", one, c_pt), tr.constant(2))
    cp_pt = tr.sqrt_totally_positive(half_sum)  # cos(pi/7)
    cp = cp_pt.x
    cp3 = tr.field_op("mul", tr.field_op("mul", cp_pt, cp_pt), cp_pt)
    c3_pt = tr.field_op("sub", tr.field_op("mul", tr.constant(4), cp3),
                        tr.field_op("mul", tr.constant(3), cp_pt))  # cos(3pi/7)
    c3 = c3_pt.x
    r3 = hypotenuse_points(tr, [one, one, one])
    leg1 = tr.field_op("mul", tr.field_op("div", r3, tr.constant(2)), cp_pt)
    leg2 = tr.field_op("mul", c3_pt, c3_pt)
    s_pt = hypotenuse_points(tr, [leg1, leg2])
    s = s_pt.x
    s, c, cp, c3 = unify(s, c, cp, c3)
    verts = _vertex_points(tr, c_pt, s_pt, 7)
    checks = {
        "cubic_residual": (8 * c ** 3 + 4 * c ** 2 - 4 * c - 1).is_zero(),
        "minpoly": minimal_polynomial(c).integer_coeffs() == [8, 4, -4, -1],
        "sine_identity": (4 * s * s - 3 * cp * cp - 4 * c3 ** 4).is_zero(),
        "unit": (s * s + c * c) == 1,
        **_polygon_checks(verts),
    }
    return ConstructionRecipe("heptagon", frozenset("LPBT"), tr,
                              {"c": c, "s": s, "cos_pi_7": cp, "cos_3pi_7": c3, "m": m, "u": u,
                               "p": p, "q": q, "vertices": verts}, checks)


# Archimedes -------------------------------------------------------------------


@dataclass
class ArchimedesReport:
    P: Point
    C: Point
    D: Point
    cos_odp: AlgebraicNumber
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())


def archimedes_demo(P, trace=None):
    """Certify Archimedes' neusis for the angle from the positive x-axis to OP.

    P must be a point of the unit circle with angle in (0, 90] degrees.  The
    trisector comes from trisect_between_lines; D on the negative x-axis and
    C on the circle are then checked to satisfy |CD| = 1 with P, C, D
    collinear.
    """
    tr = ConstructionTrace() if trace is None else trace
    if not isinstance(P, Point):
        P = Point(*P)
    if (P.x * P.x + P.y * P.y) != 1:
        raise DegenerateConfiguration("P must lie on the unit circle")
    if P.y.is_zero():
        raise DegenerateConfiguration("the angle is zero (or straight)")
    if P.y.sign() < 0 or P.x.sign() < 0:
        raise NotAcute("the angle must lie in (0, 90] degrees")
    try:
        tr.resolve(P)
    except Exception:
        tr.given(P)
    xa = _x_axis(tr)
    ray = fold_L(tr, tr[0], P)
    t1, _ = trisect_between_lines(tr, xa, ray, (Q(1), Q(0)), (P.x, P.y))
    # unit direction of the trisector: cos = y, sin = sin(phi)/(4y^2 - 1)
    y = trisect_cos(P.x)
    s3 = P.y / (4 * y * y - 1)
    assert t1.contains(Point(y, s3))
    D = Point(-2 * y, 0)
    C = Point(-y, s3)
    cd = C - D
    dp = P - D
    do = Point(0, 0) - D
    _, norm = adjoin_sqrt(None, dot((do.x, do.y), (do.x, do.y)) * dot((dp.x, dp.y), (dp.x, dp.y)))
    cos_odp = dot((do.x, do.y), (dp.x, dp.y)) / norm
    checks = {
        "cd_unit": (cd.x * cd.x + cd.y * cd.y) == 1,
        "c_on_circle": (C.x * C.x + C.y * C.y) == 1,
        "collinear": (cd.x * dp.y - cd.y * dp.x).is_zero(),
        "triple_angle": (4 * cos_odp ** 3 - 3 * cos_odp) == P.x,
    }
    return ArchimedesReport(P, C, D, cos_odp, checks)


def archimedes_recipe(P=(0, 1)):
    tr = ConstructionTrace()
    rep = archimedes_demo(Point(*P) if not isinstance(P, Point) else P, tr)
    return ConstructionRecipe("archimedes", frozenset("LPBT"), tr,
                              {"P": rep.P, "C": rep.C, "D": rep.D, "cos_odp": rep.cos_odp}, rep.checks)


RECIPES = {
    "pentagon": pentagon,
    "heptagon": heptagon,
    "perp-bisector": perp_bisector_recipe,
    "archimedes": archimedes_recipe,
}


def run_recipe(name, **options):
    try:
        fn = RECIPES[name]
    except KeyError:
        raise UnknownRecipe(f"unknown construction {name!r}", known=sorted(RECIPES)) from None
    return fn(**options)
