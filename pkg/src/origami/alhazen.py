"""Alhazen's problem: points z on the unit circle where the diameter through z
bisects the angle azb, for a and b outside the circle.

Pipeline: rotate so that ab is real and positive, form the hyperbola
H: 2qxy + sx - ry = 0 and the pencil H + lambda (x^2 + y^2 - 1), solve the
pencil cubic lambda^3 + tau lambda + qrs/2 (one trisection), split the three
degenerate conics into six lines and intersect them.

Rotating z by w turns the original-frame conic
``-Y x^2 + Y y^2 + 2X xy + S x - R y`` (X + iY = ab, R + iS = a + b) into the
rotated hyperbola, so the pencil, its cubic and the line radicands
q^2 - lambda^2 = |ab|^2 - lambda^2 are the same in both frames.  The lines are
factored in the original frame, which keeps the rotation's square roots out
of the solution tower.
"""

from dataclasses import dataclass

from .cubic import solve_totally_real_cubic
from .errors import (ComplexLinePair, ComplexPencil, DegenerateInput, DegenerateIntersection,
                     NotDegenerate, ParallelLines)
from .field import (AlgebraicNumber, adjoin_sqrt, number_to_json, polynomial_roots_in_field,
                    to_decimal, unify)
from .field.predicates import sturm_count_over
from .geometry import Line, Point, intersect

Q = AlgebraicNumber.rational
SCHEMA = "origami.alhazen/1"


def _pt(z):
    if isinstance(z, Point):
        return z
    if isinstance(z, complex):
        raise TypeError("binary floats never enter exact arithmetic; pass exact coordinates")
    x, y = z
    return Point(Q(x), Q(y))


def _mul(p, q):
    px, py, qx, qy = unify(p.x, p.y, q.x, q.y)
    return Point(px * qx - py * qy, px * qy + py * qx)


def _conj(p):
    return Point(p.x, -p.y)


def _norm2(p):
    return p.x * p.x + p.y * p.y


@dataclass(frozen=True)
class AlhazenInstance:
    """Exterior points a, b given as points (x, y) standing for x + iy."""
    a: Point
    b: Point

    def __post_init__(self):
        a, b = _pt(self.a), _pt(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if a == b:
            raise DegenerateInput("a and b must be distinct")
        for name, p in (("a", a), ("b", b)):
            if (_norm2(p) - 1).sign() <= 0:
                raise DegenerateInput(f"{name} must lie strictly outside the unit circle", point=name)


@dataclass(frozen=True)
class Rotation:
    """Multiplication by the unit complex number cos + i sin."""
    cos: AlgebraicNumber
    sin: AlgebraicNumber

    def apply(self, p):
        return _mul(Point(self.cos, self.sin), p)

    def inverse(self):
        return Rotation(self.cos, -self.sin)

    @property
    def is_identity(self):
        return self.cos == 1 and self.sin.is_zero()


def rotate_normalize(inst):
    """Rotate by -arg(ab)/2 (arg in (-pi, pi]) so that ab becomes real and positive."""
    a, b = inst.a, inst.b
    if _norm2(a).is_zero() or _norm2(b).is_zero():
        raise DegenerateInput("a and b must be nonzero")
    ab = _mul(a, b)
    X, Y = ab.x, ab.y
    if Y.is_zero() and X.sign() > 0:
        rot = Rotation(Q(1), Q(0))
    else:
        _, n = adjoin_sqrt(None, (X * X + Y * Y).demote())
        cos_full, sin_full = unify(X / n, Y / n)
        if (cos_full + 1).is_zero():
            half_c, half_s = Q(0), Q(1)
        else:
            _, half_c = adjoin_sqrt(None, (1 + cos_full) / 2)
            half_c, sin_full = unify(half_c, sin_full)
            half_s = sin_full / (2 * half_c)
        rot = Rotation(half_c, -half_s)
    rotated = AlhazenInstance(rot.apply(a), rot.apply(b))
    pr = _mul(rotated.a, rotated.b)
    assert pr.y.is_zero() and pr.x.sign() > 0
    return rotated, rot


@dataclass(frozen=True)
class PencilData:
    instance: AlhazenInstance
    rotated: AlhazenInstance
    rotation: Rotation
    q: AlgebraicNumber
    r: AlgebraicNumber
    s: AlgebraicNumber
    tau: AlgebraicNumber
    const: AlgebraicNumber  # qrs/2
    X: AlgebraicNumber
    Y: AlgebraicNumber
    R: AlgebraicNumber
    S: AlgebraicNumber

    def cubic(self):
        """f(lambda) = lambda^3 + tau lambda + qrs/2, constant term first."""
        return [self.const, self.tau, Q(0), Q(1)]

    def conic(self, lam):
        """Coefficients (xx, xy, yy, x, y, 1) of A2 + lam A1 in the original frame."""
        lam = Q(lam)
        return tuple(unify(lam - self.Y, 2 * self.X, lam + self.Y, self.S, -self.R, -lam))

    def rotated_conic(self, lam):
        lam = Q(lam)
        return tuple(unify(lam, 2 * self.q, lam, self.s, -self.r, -lam))

    def A1(self, p):
        return p.x * p.x + p.y * p.y - 1

    def A2(self, p):
        """The hyperbola's form in the original frame."""
        x, y, X, Y, R, S = unify(p.x, p.y, self.X, self.Y, self.R, self.S)
        return -Y * x * x + Y * y * y + 2 * X * x * y + S * x - R * y

    def center(self):
        """Centre of H from the linear system of its partial derivatives."""
        X, Y, R, S = unify(self.X, self.Y, self.R, self.S)
        det = -4 * (X * X + Y * Y)
        # -2Y x + 2X y = -S ; 2X x + 2Y y = R
        x = (-S * 2 * Y - 2 * X * R) / det
        y = (-2 * Y * R + 2 * X * S) / det
        return Point(x, y)


def pencil_data(rotated, rotation=None, original=None):
    """q, r, s, tau and the pencil cubic from a rotated instance (Im(ab) = 0)."""
    ab = _mul(rotated.a, rotated.b)
    if not ab.y.is_zero():
        raise DegenerateInput("the instance is not normalized: Im(ab) != 0")
    q = ab.x
    assert not q.is_zero()
    apb = rotated.a + rotated.b
    r, s = apb.x, apb.y
    tau = (s * s + r * r - 4 * q * q) / 4
    const = q * r * s / 2
    original = rotated if original is None else original
    rotation = Rotation(Q(1), Q(0)) if rotation is None else rotation
    ab0 = _mul(original.a, original.b)
    apb0 = original.a + original.b
    X, Y, R, S = ab0.x, ab0.y, apb0.x, apb0.y
    # the same cubic from the original frame: rotation invariants
    tau0 = (R * R + S * S - 4 * (X * X + Y * Y)) / 4
    const0 = (2 * R * S * X - Y * (R * R - S * S)) / 4
    if tau0 != tau or const0 != const:
        raise AssertionError("pencil cubic differs between frames")
    return PencilData(original, rotated, rotation, q, r, s, tau0.demote(), const0.demote(),
                      X, Y, R, S)


def verify_equation1(z, inst):
    """Im(ab conj(z)^2) == Im((a + b) conj(z)), exactly."""
    z = _pt(z)
    zc = _conj(z)
    lhs = _mul(_mul(inst.a, inst.b), _mul(zc, zc)).y
    rhs = _mul(inst.a + inst.b, zc).y
    return lhs == rhs


# the pencil cubic -------------------------------------------------------------


@dataclass(frozen=True)
class PencilRoots:
    roots: tuple  # descending, repeated according to multiplicity
    real_root_count: int  # distinct, by Sturm


def solve_pencil_cubic(d):
    """Three real roots of lambda^3 + tau lambda + qrs/2, exactly.

    In-field roots are split off first (qrs = 0 gives 0 and +-sqrt(-tau));
    otherwise the cubic is solved by one trisection.
    """
    p, c = d.tau, d.const
    coeffs = d.cubic()
    n_real = sturm_count_over(coeffs)
    delta = -(4 * p * p * p + 27 * c * c)
    if delta.sign() < 0:
        raise ComplexPencil("the pencil cubic has nonreal roots", discriminant=delta,
                            real_roots=n_real)
    if delta.is_zero():
        if p.is_zero():
            roots = (Q(0),) * 3
        else:
            double, simple = -3 * c / (2 * p), 3 * c / p
            roots = tuple(sorted((double, double, simple), key=lambda v: v.approx(20), reverse=True))
        return PencilRoots(tuple(unify(*roots)), n_real)
    if n_real != 3:
        raise ComplexPencil("Sturm count of the pencil cubic is not 3", real_roots=n_real)
    found = polynomial_roots_in_field(coeffs)
    if len(found) == 3:
        roots = found
    elif found:
        l0 = found[0]
        _, w = adjoin_sqrt(None, (-3 * l0 * l0 - 4 * p))
        l0, w = unify(l0, w)
        roots = [l0, (-l0 + w) / 2, (-l0 - w) / 2]
    else:
        roots = list(solve_totally_real_cubic(p, c).roots)
    roots = sorted(unify(*roots), key=lambda v: v.approx(20), reverse=True)
    for v in roots:
        if not (v * v * v + p * v + c).is_zero():
            raise AssertionError("pencil root residual is nonzero")
    return PencilRoots(tuple(roots), n_real)


# degenerate conics --------------------------------------------------------------


def _line_product(l1, l2):
    a1, b1, c1, a2, b2, c2 = unify(*l1.coeffs(), *l2.coeffs())
    return (a1 * a2, a1 * b2 + a2 * b1, b1 * b2, a1 * c2 + a2 * c1, b1 * c2 + b2 * c1, c1 * c2)


def _proportional(u, v):
    """u == k v for a nonzero k; returns k or None."""
    u, v = list(u), list(v)
    k = None
    for a, b in zip(u, v):
        if not b.is_zero():
            k = a / b
            break
    if k is None or k.is_zero():
        return None
    return k if all(a == k * b for a, b in zip(u, v)) else None


@dataclass(frozen=True)
class DegenerateConic:
    lam: AlgebraicNumber
    lines: tuple
    conic: tuple
    scale: AlgebraicNumber  # conic == scale * (product of the two line forms)
    delta: AlgebraicNumber = None  # sqrt(B^2 - AC)

    def residual_zero(self):
        prod = _line_product(*self.lines)
        return all(c == self.scale * p for c, p in zip(self.conic, prod))


def factor_degenerate(d, lam, tower=None, delta=None):
    """Split A2 + lam A1 into two lines.

    The quadratic part factors with sqrt(B^2 - AC) = sqrt(|ab|^2 - lam^2); the
    lines then pass through the singular point (or, when they are parallel,
    are found from a quadratic along their common normal).  A known value of
    that square root may be passed as ``delta``; it is checked exactly.
    """
    conic = d.conic(lam)
    A, B2, C, D, E, F = conic
    B = B2 / 2
    disc = B * B - A * C
    if disc.sign() < 0:
        raise ComplexLinePair("the degenerate conic is a pair of complex lines", lam=lam)
    if delta is None or delta.sign() < 0 or delta * delta != disc:
        _, delta = adjoin_sqrt(tower, disc)
    A, B, C, D, E, F, delta = unify(A, B, C, D, E, F, delta)
    if A.is_zero():
        normals = [(Q(0), Q(1)), (2 * B, C)]
    else:
        t1, t2 = (-B + delta) / A, (-B - delta) / A
        normals = [(Q(1), -t1), (A, -A * t2)]
    if not delta.is_zero():
        # singular point: A x + B y = -D/2, B x + C y = -E/2
        det = A * C - B * B
        x0 = (-D / 2 * C + E / 2 * B) / det
        y0 = (-E / 2 * A + D / 2 * B) / det
        lines = tuple(Line(nx, ny, -(nx * x0 + ny * y0)) for nx, ny in normals)
    else:
        nx, ny = normals[0]
        kappa = A if not A.is_zero() else C
        mu = D / nx if not nx.is_zero() else E / ny
        if D != mu * nx or E != mu * ny:
            raise NotDegenerate("the conic is not a pair of lines", lam=lam)
        disc2 = mu * mu - 4 * kappa * F
        if disc2.sign() < 0:
            raise ComplexLinePair("the parallel line pair is complex", lam=lam)
        _, w = adjoin_sqrt(None, disc2)
        nx, ny, mu, kappa, w = unify(nx, ny, mu, kappa, w)
        lines = tuple(Line(nx, ny, -(-mu + sg * w) / (2 * kappa)) for sg in (1, -1))
    prod = _line_product(*lines)
    both = unify(*conic, *prod)
    conic, prod = tuple(both[:6]), tuple(both[6:])
    k = _proportional(conic, prod)
    if k is None:
        raise NotDegenerate("the line pair does not reproduce the conic", lam=lam)
    return DegenerateConic(Q(lam), lines, conic, k, delta)


# assembling -------------------------------------------------------------------


@dataclass(frozen=True)
class SolutionSet:
    pencil: PencilData
    lambdas: tuple
    conics: tuple
    points: tuple
    lines: tuple
    incidence: tuple  # incidence[i] = indices of the lines through points[i]

    def to_json(self, digits=30):
        d = self.pencil

        def num(v):
            return number_to_json(v, digits)

        return {
            "schema": SCHEMA,
            "instance": {"a": [num(d.instance.a.x), num(d.instance.a.y)],
                         "b": [num(d.instance.b.x), num(d.instance.b.y)]},
            "pencil": {"q": num(d.q), "r": num(d.r), "s": num(d.s), "tau": num(d.tau),
                       "f": [num(c) for c in d.cubic()],
                       "roots": [num(v) for v in self.lambdas],
                       "rotation": [num(d.rotation.cos), num(d.rotation.sin)]},
            "points": [{"x": num(p.x), "y": num(p.y),
                        "decimal": [to_decimal(p.x, digits), to_decimal(p.y, digits)]}
                       for p in self.points],
            "lines": [{"conic": k // 2, "a": num(l.a), "b": num(l.b), "c": num(l.c)}
                      for k, l in enumerate(self.lines)],
            "incidence": [list(ix) for ix in self.incidence],
        }


def _angle_key(p):
    import math
    return math.atan2(float(p.y), float(p.x)) % (2 * math.pi)


def _float_line(l):
    return tuple(float(c) for c in l.coeffs())


def _float_meet(l1, l2):
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    det = a1 * b2 - a2 * b1
    if abs(det) < 1e-12 * (abs(a1) + abs(b1)) * (abs(a2) + abs(b2)):
        return None
    return (b1 * c2 - b2 * c1) / det, (c1 * a2 - c2 * a1) / det


def _near_line(l, p, tol=1e-7):
    a, b, c = l
    return abs(a * p[0] + b * p[1] + c) <= tol * (abs(a) + abs(b) + abs(c))


def assemble_solutions(d, conics):
    """Intersect lines of different degenerate conics; keep the points on both A1 and H.

    Floating point picks the candidate pairs and incidences; every kept
    point and incidence is then confirmed exactly.
    """
    lines = [l for c in conics for l in c.lines]
    flines = [_float_line(l) for l in lines]
    X, Y, R, S = (float(v) for v in (d.X, d.Y, d.R, d.S))
    scale = abs(X) + abs(Y) + abs(R) + abs(S)
    cands = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            if i // 2 == j // 2:
                continue
            m = _float_meet(flines[i], flines[j])
            if m is None:
                continue
            x, y = m
            a1 = x * x + y * y - 1
            a2 = -Y * x * x + Y * y * y + 2 * X * x * y + S * x - R * y
            if abs(a1) > 1e-7 or abs(a2) > 1e-7 * scale:
                continue
            if any(abs(x - u) < 1e-7 and abs(y - v) < 1e-7 for u, v, _, _ in cands):
                continue
            cands.append((x, y, i, j))
    pts = []
    for _, _, i, j in cands:
        P = intersect(lines[i], lines[j])
        if d.A1(P).is_zero() and d.A2(P).is_zero():
            pts.append(P)
    if len(pts) != 4:
        raise DegenerateIntersection(f"expected 4 intersection points, found {len(pts)}",
                                     found=[(float(p.x), float(p.y)) for p in pts])
    pts.sort(key=_angle_key)
    incidence = []
    for P in pts:
        fp = (float(P.x), float(P.y))
        incidence.append(tuple(k for k, l in enumerate(lines)
                               if _near_line(flines[k], fp) and l.contains(P)))
    return tuple(pts), tuple(lines), tuple(incidence)


def _third_root(d, roots):
    """sqrt(d3) from the first two roots: d1 d2 d3 = P^2 with
    P = Re(conj(ab) (a + b)^2) / 4, rational in the input coordinates."""
    if len(roots) != 2 or any(r.is_zero() for r in roots):
        return None
    P = (d.X * (d.R * d.R - d.S * d.S) + 2 * d.R * d.S * d.Y) / 4
    r1, r2, P = unify(roots[0], roots[1], P)
    return abs(P / (r1 * r2))


def solve_alhazen(inst, b=None):
    """The four points of the unit circle solving Alhazen's problem for a, b."""
    if b is not None:
        inst = AlhazenInstance(inst, b)
    elif not isinstance(inst, AlhazenInstance):
        inst = AlhazenInstance(*inst)
    rotated, rot = rotate_normalize(inst)
    d = pencil_data(rotated, rot, inst)
    lams = solve_pencil_cubic(d).roots
    tower = unify(*lams)[0].tower
    conics = []
    roots = []
    for i, lam in enumerate(lams):
        c = factor_degenerate(d, lam, tower, _third_root(d, roots) if i == 2 else None)
        conics.append(c)
        roots.append(c.delta)
        tower = unify(*c.lines[0].coeffs(), *c.lines[1].coeffs())[0].tower
    # assembly checked A1 = 0 (unit circle) and A2 = 0 (the bisector condition) exactly
    pts, lines, incidence = assemble_solutions(d, conics)
    return SolutionSet(d, tuple(lams), tuple(conics), pts, lines, incidence)
