"""Fold axioms as operations that record themselves in a construction trace.

Tags: ``L`` line through two points, ``P`` intersection point, ``B``
bisection (and the perpendiculars, reflections and square roots of totally
positive elements derived from it), ``E`` the Euclidean fold, ``T`` the
trisection fold.  The neutral tags ``seed``, ``given`` and ``field`` mark
the origin/unit seeds, externally supplied objects and field operations on
already constructed numbers; they never enter the axiom profile.

Numbers are carried in a trace as points on the x-axis.
"""

import json
from dataclasses import dataclass, field

from .errors import (CoincidentPoints, DegenerateConfiguration, InvalidTrace, NoRealFold,
                     NotTotallyReal, ParallelLines, PointNotOnLine, UnknownObject)
from .field import (AlgebraicNumber, adjoin_sqrt, is_totally_positive, number_from_json,
                    number_to_json, unify)
from .field.serialize import DEFAULT_DIGITS
from .geometry import (Line, Point, angle_bisectors, dot, intersect, line_through, perp_bisector,
                       perpendicular_at, perpendicular_from, reflect_point, squared_distance)

Q = AlgebraicNumber.rational

AXIOM_TAGS = ("L", "P", "B", "E", "T")
NEUTRAL_TAGS = ("seed", "given", "field")
TRACE_SCHEMA = "origami.trace/1"


@dataclass(frozen=True)
class TraceStep:
    tag: str
    op: str
    inputs: tuple
    outputs: tuple


@dataclass
class FoldResult:
    lines: list
    witnesses: list = field(default_factory=list)
    ids: list = field(default_factory=list)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, i):
        return self.lines[i]


def _approx_key(obj):
    vals = obj.coords() if isinstance(obj, Point) else obj.coeffs()
    return tuple(float(v) for v in vals)


def _close(k1, k2):
    # cheap filter before exact comparison; equal objects have equal floats
    return all(abs(a - b) <= 1e-9 * (1 + abs(a)) for a, b in zip(k1, k2))


class ConstructionTrace:
    """Append-only log of fold operations with an id-indexed object table."""

    def __init__(self, seeds=True):
        self.objects = []
        self.steps = []
        self._index = {}
        self._approx = []
        if seeds:
            self._record("seed", "origin", (), [Point(0, 0)])
            self._record("seed", "unit", (), [Point(1, 0)])

    # bookkeeping ------------------------------------------------------------

    @property
    def seeds(self):
        return (0, 1)

    @property
    def profile(self):
        return frozenset(s.tag for s in self.steps if s.tag in AXIOM_TAGS)

    def __getitem__(self, oid):
        try:
            return self.objects[oid]
        except (IndexError, TypeError):
            raise UnknownObject(f"no object with id {oid!r}") from None

    def id_of(self, obj):
        if isinstance(obj, int):
            self[obj]
            return obj
        oid = self._index.get(obj)
        if oid is not None and self.objects[oid] == obj:
            return oid
        key = _approx_key(obj)
        for i, o in enumerate(self.objects):
            if type(o) is type(obj) and _close(self._approx[i], key) and o == obj:
                return i
        raise UnknownObject("object is not part of this trace")

    def resolve(self, obj):
        return self[self.id_of(obj)]

    def _store(self, obj):
        try:
            return self.id_of(obj)
        except UnknownObject:
            pass
        self.objects.append(obj)
        self._approx.append(_approx_key(obj))
        oid = len(self.objects) - 1
        self._index.setdefault(obj, oid)
        return oid

    def _record(self, tag, op, inputs, outputs):
        in_ids = tuple(self.id_of(x) for x in inputs)
        out_ids = tuple(self._store(o) for o in outputs)
        self.steps.append(TraceStep(tag, op, in_ids, out_ids))
        return out_ids

    def given(self, obj):
        """Insert an externally supplied point or line."""
        return self._record("given", "given", (), [obj])[0]

    def points(self):
        return [o for o in self.objects if isinstance(o, Point)]

    def lines(self):
        return [o for o in self.objects if isinstance(o, Line)]

    def numbers(self):
        """Every coordinate and line coefficient occurring in the trace."""
        out = []
        for o in self.objects:
            out.extend(o.coords() if isinstance(o, Point) else o.coeffs())
        return out

    def validate(self):
        seen = set()
        for i, s in enumerate(self.steps):
            if s.tag not in AXIOM_TAGS + NEUTRAL_TAGS:
                raise InvalidTrace(f"step {i} has unknown tag {s.tag!r}")
            for oid in s.inputs:
                if oid not in seen:
                    raise InvalidTrace(f"step {i} uses object {oid} before it exists")
            seen.update(s.outputs)
        if len(self.steps) < 2 or self.steps[0].tag != "seed" or self.steps[1].tag != "seed":
            raise InvalidTrace("the first two steps must be the origin and unit seeds")
        if self.objects[0] != Point(0, 0) or self.objects[1] != Point(1, 0):
            raise InvalidTrace("seeds must be (0, 0) and (1, 0)")
        return True

    # JSON -------------------------------------------------------------------

    def to_json(self, digits=DEFAULT_DIGITS):
        objs = []
        for i, o in enumerate(self.objects):
            if isinstance(o, Point):
                objs.append({"id": i, "type": "point",
                             "x": number_to_json(o.x, digits), "y": number_to_json(o.y, digits)})
            else:
                objs.append({"id": i, "type": "line", "a": number_to_json(o.a, digits),
                             "b": number_to_json(o.b, digits), "c": number_to_json(o.c, digits)})
        steps = [{"index": i, "tag": s.tag, "op": s.op, "inputs": list(s.inputs),
                  "outputs": list(s.outputs)} for i, s in enumerate(self.steps)]
        return {"schema": TRACE_SCHEMA, "seeds": list(self.seeds), "objects": objs, "steps": steps,
                "profile": sorted(self.profile)}

    def dumps(self, digits=DEFAULT_DIGITS):
        return json.dumps(self.to_json(digits), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("schema") != TRACE_SCHEMA:
            raise InvalidTrace(f"unsupported trace schema {data.get('schema')!r}")
        t = cls(seeds=False)
        try:
            for k, o in enumerate(data["objects"]):
                if o["id"] != k:
                    raise InvalidTrace("object ids must be consecutive from 0")
                if o["type"] == "point":
                    obj = Point(number_from_json(o["x"]), number_from_json(o["y"]))
                elif o["type"] == "line":
                    obj = Line(number_from_json(o["a"]), number_from_json(o["b"]), number_from_json(o["c"]))
                else:
                    raise InvalidTrace(f"unknown object type {o['type']!r}")
                t.objects.append(obj)
                t._approx.append(_approx_key(obj))
                t._index.setdefault(obj, k)
            for s in data["steps"]:
                t.steps.append(TraceStep(s["tag"], s["op"], tuple(s["inputs"]), tuple(s["outputs"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidTrace(f"malformed trace: {exc}") from None
        t.validate()
        return t

    # numbers carried as x-axis points ----------------------------------------

    def number(self, oid):
        return self.resolve(oid).x

    def field_op(self, op, *args):
        """Record a field operation on constructed numbers; returns the point (result, 0)."""
        pts = [self.resolve(a) for a in args]
        xs = unify(*(p.x for p in pts))
        if op == "add":
            v = xs[0] + xs[1]
        elif op == "sub":
            v = xs[0] - xs[1]
        elif op == "mul":
            v = xs[0] * xs[1]
        elif op == "div":
            v = xs[0] / xs[1]
        elif op == "neg":
            v = -xs[0]
        else:
            raise ValueError(f"unknown field operation {op!r}")
        out = Point(v, 0)
        self._record("field", op, pts, [out])
        return out

    def constant(self, q):
        """A rational number as a point; rationals come from the unit by field operations."""
        out = Point(Q(q), 0)
        self._record("field", "rational", [self.objects[0], self.objects[1]], [out])
        return out

    def sqrt_totally_positive(self, a):
        """Square root of a constructed totally positive number (recorded as B)."""
        p = self.resolve(a)
        if not is_totally_positive(p.x):
            raise NotTotallyReal("square root of an element that is not totally positive")
        _, r = adjoin_sqrt(None, p.x)
        out = Point(r, 0)
        self._record("B", "sqrt_totally_positive", [p], [out])
        return out


# the axioms ------------------------------------------------------------------


def fold_L(trace, P, Q_):
    """(L): the line through two constructed points."""
    P, Q_ = trace.resolve(P), trace.resolve(Q_)
    line = line_through(P, Q_)
    trace._record("L", "line_through", [P, Q_], [line])
    return line


def fold_P(trace, l1, l2):
    """(P): the intersection point of two constructed lines."""
    l1, l2 = trace.resolve(l1), trace.resolve(l2)
    pt = intersect(l1, l2)
    trace._record("P", "intersect", [l1, l2], [pt])
    return pt


def fold_B(trace, l1, l2):
    """(B): both angle bisectors of two intersecting lines."""
    l1, l2 = trace.resolve(l1), trace.resolve(l2)
    b1, b2 = angle_bisectors(l1, l2)
    trace._record("B", "bisect", [l1, l2], [b1, b2])
    return b1, b2


def fold_perpendicular(trace, P, l):
    """Perpendicular from P to l (a special case of bisection)."""
    P, l = trace.resolve(P), trace.resolve(l)
    out = perpendicular_from(P, l)
    trace._record("B", "perpendicular", [P, l], [out])
    return out


def fold_perpendicular_at(trace, l, P):
    l, P = trace.resolve(l), trace.resolve(P)
    out = perpendicular_at(l, P)
    trace._record("B", "perpendicular", [P, l], [out])
    return out


def fold_reflect(trace, P, l):
    """Reflection of a point in a fold line (perpendicular, then transfer across)."""
    P, l = trace.resolve(P), trace.resolve(l)
    out = reflect_point(P, l)
    trace._record("B", "reflect", [P, l], [out])
    return out


def fold_E(trace, P, l, Q_):
    """(E): lines through Q reflecting P onto l (0, 1 or 2 of them).

    The reflected point P' lies on l at distance |QP| from Q, so it comes
    from a quadratic whose discriminant decides the count.
    """
    P, l, Q_ = trace.resolve(P), trace.resolve(l), trace.resolve(Q_)
    a, b, c, px, py, qx, qy = unify(l.a, l.b, l.c, P.x, P.y, Q_.x, Q_.y)
    # parametrize l as L0 + t*(b, -a), L0 the foot of the origin
    nn = a * a + b * b
    l0x, l0y = -a * c / nn, -b * c / nn
    dx, dy = b, -a
    ex, ey = l0x - qx, l0y - qy
    A = nn
    B = dx * ex + dy * ey
    C = ex * ex + ey * ey - squared_distance(P, Q_)
    disc = B * B - A * C
    sg = disc.sign()
    if sg < 0:
        raise NoRealFold("no fold through Q reflects P onto l", discriminant=disc)
    if sg == 0:
        ts = [-B / A]
    else:
        _, w = adjoin_sqrt(None, disc)
        ts = [(-B + w) / A, (-B - w) / A]
    lines, witnesses = [], []
    for t in ts:
        image = Point(l0x + t * dx, l0y + t * dy)
        if image == P:
            if P == Q_:
                continue  # every line through P works; no single fold is determined
            fold = line_through(Q_, P)
        else:
            fold = perp_bisector(P, image)
        if fold in lines:
            continue
        if not (fold.contains(Q_) and l.contains(reflect_point(P, fold))):
            raise AssertionError("fold (E) incidence check failed")
        lines.append(fold)
        witnesses.append({"image": image})
    if not lines:
        raise NoRealFold("the configuration determines no fold line")
    ids = trace._record("E", "fold_E", [P, l, Q_], lines)
    return FoldResult(lines, witnesses, list(ids))


def _cos_sin(e1, d):
    """cos and sin of the angle from e1 to d (a Pythagorean square root)."""
    _, n = adjoin_sqrt(None, dot(e1, e1) * dot(d, d))
    cross = dot(_rot90(e1), d)
    return dot(e1, d) / n, cross / n


def _rot90(v):
    return (-v[1], v[0])


def _acute_frame(e1, d):
    """Orient d so the angle from the line of e1 to the line of d lies in (0, 90],
    and return (d, e_perp) with e_perp = +-rot90(e1) on d's side."""
    if dot(e1, d).sign() < 0:
        d = (-d[0], -d[1])
    ep = _rot90(e1)
    if dot(ep, d).sign() < 0:
        ep = (-ep[0], -ep[1])
    return d, ep


def _trisection_cosines(u, principal_only):
    from .cubic import trisection_root_set
    from .field import trisect_cos
    if principal_only:
        return [trisect_cos(u)]
    return list(trisection_root_set(u))


def trisector_directions(e1, d, principal_only=True):
    """Directions at angle theta and 2 theta from e1 towards d, where the
    angle phi between the lines is acute and 3 theta = phi (mod 2 pi).

    With the principal root theta = phi/3.  Each entry is (dir1, dir2, y)
    with y = cos(theta); sin(theta) = sin(phi)/(4y^2 - 1) needs no new root.
    """
    d, ep = _acute_frame(e1, d)
    _, n = adjoin_sqrt(None, dot(e1, e1) * dot(d, d))
    cos_phi = dot(e1, d) / n
    sin_phi = dot(ep, d) / n  # >= 0, measured towards ep
    if sin_phi.is_zero():
        raise DegenerateConfiguration("the lines make a zero angle")
    out = []
    for y in _trisection_cosines(cos_phi, principal_only):
        y, sin_phi_, e1x, e1y, epx, epy = unify(y, sin_phi, e1[0], e1[1], ep[0], ep[1])
        s = sin_phi_ / (4 * y * y - 1)
        c2, s2 = 2 * y * y - 1, 2 * y * s
        dir1 = (y * e1x + s * epx, y * e1y + s * epy)
        dir2 = (c2 * e1x + s2 * epx, c2 * e1y + s2 * epy)
        out.append((dir1, dir2, y))
    return out


def _line_dir(P, d):
    x, y, d0, d1 = unify(P.x, P.y, d[0], d[1])
    return Line(d1, -d0, d0 * y - d1 * x)


def trisect_between_lines(trace, l1, l2, d1=None, d2=None):
    """Both internal trisectors of the acute angle from l1 to l2 (recorded as T).

    ``d1``, ``d2`` optionally fix the directions along l1 and l2; this picks
    the quadrant when the lines are perpendicular.
    """
    l1, l2 = trace.resolve(l1), trace.resolve(l2)
    X = intersect(l1, l2)
    d1 = l1.direction() if d1 is None else d1
    d2 = l2.direction() if d2 is None else d2
    (dir1, dir2, _y), = trisector_directions(d1, d2)
    t1, t2 = _line_dir(X, dir1), _line_dir(X, dir2)
    trace._record("T", "trisect", [l1, l2], [t1, t2])
    return t1, t2


def fold_T(trace, P, Q_, l, principal_only=False):
    """(T): folds putting Q's image on l and P's image on the perpendicular bisector of PQ.

    Follows the trisection recipe: l1 is perpendicular to PQ at P, l2 the
    perpendicular bisector of PQ; a trisector of the acute angle from l1 to
    l meets l2 at P', and the fold is the perpendicular bisector of P P'.
    Every real trisection root gives one fold; the principal one comes first.
    """
    P, Q_, l = trace.resolve(P), trace.resolve(Q_), trace.resolve(l)
    if P == Q_:
        raise CoincidentPoints("axiom (T) needs P != Q")
    if not l.contains(P):
        raise PointNotOnLine("l must pass through P")
    v = ((Q_ - P).x, (Q_ - P).y)
    e1 = _rot90(v)
    d = l.direction()
    if dot(d, v).is_zero():
        raise DegenerateConfiguration("l is perpendicular to PQ, so the angle to trisect is zero")
    l1 = perpendicular_at(line_through(P, Q_), P)
    l2 = perp_bisector(P, Q_)
    lines, witnesses = [], []
    for dir1, dir2, y in trisector_directions(e1, d, principal_only):
        if dot(dir1, v).is_zero():
            continue
        P_img = intersect(_line_dir(P, dir1), l2)
        fold = perp_bisector(P, P_img)
        Q_img = reflect_point(Q_, fold)
        if not (l.contains(Q_img) and l2.contains(reflect_point(P, fold))):
            raise AssertionError("fold (T) incidence check failed")
        if fold in lines:
            continue
        lines.append(fold)
        witnesses.append({"P_image": P_img, "Q_image": Q_img, "cos_theta": y, "l1": l1, "l2": l2})
    if not lines:
        raise NoRealFold("no fold satisfies axiom (T) here")
    ids = trace._record("T", "fold_T", [P, Q_, l], lines)
    return FoldResult(lines, witnesses, list(ids))


def fig3_replay(P, Q_, l, fold):
    """Forward construction of the trisection proof for a given (T) fold.

    Returns (cos OPG, cos OPH) where G = fold meets l1, H = fold meets l2
    and O lies on l on the side of G; the trisection claim is
    cos OPG = 4 cos^3 OPH - 3 cos OPH.
    """
    l1 = perpendicular_at(line_through(P, Q_), P)
    l2 = perp_bisector(P, Q_)
    try:
        H = intersect(fold, l2)
    except ParallelLines:
        raise DegenerateConfiguration("the fold is parallel to l2, so H does not exist") from None
    d = l.direction()
    try:
        G = intersect(fold, l1)
        g = ((G - P).x, (G - P).y)
    except ParallelLines:
        g = l1.direction()  # G at infinity; either side of l1 will do
    if dot(d, g).sign() < 0:
        d = (-d[0], -d[1])
    h = ((H - P).x, (H - P).y)
    cos_g, _ = _cos_sin(d, g)
    cos_h, _ = _cos_sin(d, h)
    return cos_g, cos_h
