"""Deterministic SVG rendering of exact scenes, and the four reference figures.

Exact coordinates are converted once to decimals through certified
intervals; clipping and conic sampling then run in ``decimal`` arithmetic at
a fixed precision.  Nothing computed here flows back into the exact kernel,
and no binary floating point is involved, so output is byte-identical across
runs and platforms.
"""

from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from .field import AlgebraicNumber
from .errors import ParallelLines
from .geometry import Line, Point

Q = AlgebraicNumber.rational

WORK_PREC = 50  # significant digits for decimal clipping and sampling


@dataclass(frozen=True)
class Style:
    size: int = 600  # pixels along the longer viewport side
    places: int = 2  # decimal places of pixel coordinates
    stroke: str = "#222222"
    line_stroke: str = "#3366aa"
    conic_stroke: str = "#aa3333"
    point_fill: str = "#000000"
    width: str = "1.5"
    thin: str = "1"
    radius: str = "3"
    font_size: int = 14
    samples: int = 240


@dataclass(frozen=True)
class ScenePoint:
    point: Point
    label: str = ""


@dataclass(frozen=True)
class SceneLine:
    line: Line
    label: str = ""
    dashed: bool = False


@dataclass(frozen=True)
class SceneSegment:
    start: Point
    end: Point
    dashed: bool = False


@dataclass(frozen=True)
class SceneCircle:
    center: Point
    radius: AlgebraicNumber


@dataclass(frozen=True)
class SceneConic:
    """Arcs of A x^2 + 2B xy + C y^2 + D x + E y + F = 0 inside the viewport."""
    coeffs: tuple  # (A, 2B, C, D, E, F)


@dataclass(frozen=True)
class SceneLabel:
    text: str
    at: Point


@dataclass
class RenderScene:
    objects: list = field(default_factory=list)
    viewport: tuple = None  # (xmin, ymin, xmax, ymax) as rationals; None = fit the points
    title: str = ""
    style: Style = Style()

    def add(self, obj):
        self.objects.append(obj)
        return obj


# exact -> decimal -----------------------------------------------------------


def to_dec(x, places=12):
    """Decimal value of an exact number, rounded to ``places`` decimal places.

    The rounding uses a certified enclosure much narrower than the last
    place, so the result is deterministic."""
    x = Q(x)
    d = x.demote()
    if d.level == 0:
        q = Fraction(d.data)
    else:
        lo, hi = x.interval(Fraction(1, 10 ** (places + 6)))
        q = (lo + hi) / 2
    with localcontext() as ctx:
        ctx.prec = WORK_PREC
        v = Decimal(int(q.numerator)) / Decimal(int(q.denominator))
        return v.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)


def _fit_viewport(scene):
    xs, ys = [], []
    for o in scene.objects:
        if isinstance(o, ScenePoint):
            xs.append(to_dec(o.point.x, 6))
            ys.append(to_dec(o.point.y, 6))
        elif isinstance(o, SceneCircle):
            cx, cy, r = to_dec(o.center.x, 6), to_dec(o.center.y, 6), to_dec(o.radius, 6)
            xs += [cx - r, cx + r]
            ys += [cy - r, cy + r]
    if not xs:
        return (Fraction(-1), Fraction(-1), Fraction(1), Fraction(1))
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    pad = max(hi_x - lo_x, hi_y - lo_y, Decimal(1)) / 5
    quarter = Decimal("0.25")

    def down(v):
        return Fraction((v / quarter).to_integral_value(rounding="ROUND_FLOOR")) / 4

    def up(v):
        return Fraction((v / quarter).to_integral_value(rounding="ROUND_CEILING")) / 4

    return (down(lo_x - pad), down(lo_y - pad), up(hi_x + pad), up(hi_y + pad))


class _Frame:
    """World (decimal) to pixel coordinates; y grows upward in the world."""

    def __init__(self, viewport, style):
        self.xmin, self.ymin, self.xmax, self.ymax = (
            Decimal(int(v.numerator)) / Decimal(int(v.denominator)) for v in map(Fraction, viewport))
        w, h = self.xmax - self.xmin, self.ymax - self.ymin
        self.k = Decimal(style.size) / max(w, h)
        self.width = (w * self.k).to_integral_value()
        self.height = (h * self.k).to_integral_value()
        self.quant = Decimal(1).scaleb(-style.places)

    def fmt(self, v):
        s = format(v.quantize(self.quant, rounding=ROUND_HALF_EVEN), "f")
        return "0" if s.strip("-0.") == "" else s

    def px(self, x, y):
        return self.fmt((x - self.xmin) * self.k), self.fmt((self.ymax - y) * self.k)

    def inside(self, x, y):
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax


def _clip_line(a, b, c, fr):
    """Endpoints of ax + by + c = 0 inside the viewport, or None."""
    pts = []
    if b != 0:
        for x in (fr.xmin, fr.xmax):
            y = -(c + a * x) / b
            if fr.ymin <= y <= fr.ymax:
                pts.append((x, y))
    if a != 0:
        for y in (fr.ymin, fr.ymax):
            x = -(c + b * y) / a
            if fr.xmin <= x <= fr.xmax:
                pts.append((x, y))
    uniq = []
    for p in pts:
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > Decimal("1e-20") for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    uniq.sort()
    return uniq[0], uniq[-1]


def _quadratic_roots(a, b, c):
    """Real roots of a t^2 + b t + c (decimal), as a list."""
    if a == 0:
        return [] if b == 0 else [-c / b]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    r = disc.sqrt()
    return [(-b - r) / (2 * a), (-b + r) / (2 * a)]


def _conic_polylines(coeffs, fr, samples):
    """Polylines tracing the conic: sweep x solving for y, then sweep y solving for x."""
    A, B2, C, D, E, F = coeffs
    out = []
    for axis in ("x", "y"):
        lo, hi = (fr.xmin, fr.xmax) if axis == "x" else (fr.ymin, fr.ymax)
        step = (hi - lo) / samples
        branches = [[], []]
        for i in range(samples + 1):
            t = lo + step * i
            if axis == "x":
                roots = _quadratic_roots(C, B2 * t + E, A * t * t + D * t + F)
                pts = [(t, r) for r in roots]
            else:
                roots = _quadratic_roots(A, B2 * t + D, C * t * t + E * t + F)
                pts = [(r, t) for r in roots]
            for j in range(2):
                if j < len(pts) and fr.inside(*pts[j]) and not (len(roots) == 1 and j == 1):
                    branches[j].append(pts[j])
                elif branches[j]:
                    out.append(branches[j])
                    branches[j] = []
        out.extend(b for b in branches if b)
    return [p for p in out if len(p) >= 2]


def _esc(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_svg_string(scene):
    """The SVG document for ``scene`` as a string."""
    st = scene.style
    with localcontext() as ctx:
        ctx.prec = WORK_PREC
        fr = _Frame(scene.viewport or _fit_viewport(scene), st)
        body = []
        for o in scene.objects:
            body.extend(_render(o, fr, st))
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fr.width}" height="{fr.height}" '
        f'viewBox="0 0 {fr.width} {fr.height}">',
    ]
    if scene.title:
        head.append(f"<title>{_esc(scene.title)}</title>")
    head.append(f'<rect x="0" y="0" width="{fr.width}" height="{fr.height}" fill="#ffffff"/>')
    return "\n".join(head + body + ["</svg>"]) + "\n"


def render_svg(scene, path):
    """Write the scene's SVG to ``path`` (bytes are identical across runs)."""
    text = render_svg_string(scene)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def _dash(dashed):
    return ' stroke-dasharray="6 4"' if dashed else ""


def _render(o, fr, st):
    if isinstance(o, ScenePoint):
        x, y = fr.px(to_dec(o.point.x), to_dec(o.point.y))
        out = [f'<circle cx="{x}" cy="{y}" r="{st.radius}" fill="{st.point_fill}"/>']
        if o.label:
            out.append(_text(o.label, x, y, st))
        return out
    if isinstance(o, SceneLine):
        a, b, c = (to_dec(v, 30) for v in o.line.coeffs())
        ends = _clip_line(a, b, c, fr)
        if ends is None:
            return []
        (x1, y1), (x2, y2) = fr.px(*ends[0]), fr.px(*ends[1])
        out = [f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{st.line_stroke}" '
               f'stroke-width="{st.thin}"{_dash(o.dashed)}/>']
        if o.label:
            (ax, ay), (bx, by) = ends
            f = Decimal("0.85")
            out.append(_text(o.label, *fr.px(ax + f * (bx - ax), ay + f * (by - ay)), st))
        return out
    if isinstance(o, SceneSegment):
        x1, y1 = fr.px(to_dec(o.start.x), to_dec(o.start.y))
        x2, y2 = fr.px(to_dec(o.end.x), to_dec(o.end.y))
        return [f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{st.stroke}" '
                f'stroke-width="{st.width}"{_dash(o.dashed)}/>']
    if isinstance(o, SceneCircle):
        x, y = fr.px(to_dec(o.center.x), to_dec(o.center.y))
        r = fr.fmt(to_dec(o.radius) * fr.k)
        return [f'<circle cx="{x}" cy="{y}" r="{r}" fill="none" stroke="{st.stroke}" '
                f'stroke-width="{st.width}"/>']
    if isinstance(o, SceneConic):
        coeffs = [to_dec(v, 30) for v in o.coeffs]
        out = []
        for poly in _conic_polylines(coeffs, fr, st.samples):
            pts = " ".join(",".join(fr.px(x, y)) for x, y in poly)
            out.append(f'<polyline points="{pts}" fill="none" stroke="{st.conic_stroke}" '
                       f'stroke-width="{st.width}"/>')
        return out
    if isinstance(o, SceneLabel):
        x, y = fr.px(to_dec(o.at.x), to_dec(o.at.y))
        return [_text(o.text, x, y, st)]
    raise TypeError(f"cannot render {type(o).__name__}")


def _text(label, x, y, st):
    return (f'<text x="{x}" y="{y}" dx="5" dy="-5" font-family="sans-serif" '
            f'font-size="{st.font_size}">{_esc(label)}</text>')


# scenes -----------------------------------------------------------------------


def scene_from_trace(trace, title=""):
    """Every point and line of a construction trace, points labelled by id."""
    scene = RenderScene(title=title)
    for i, o in enumerate(trace.objects):
        if isinstance(o, Line):
            scene.add(SceneLine(o))
    for i, o in enumerate(trace.objects):
        if isinstance(o, Point):
            scene.add(ScenePoint(o, str(i)))
    return scene


def archimedes_scene(P, C, D):
    O = Point(0, 0)
    scene = RenderScene(title="Archimedes trisection",
                        viewport=(Fraction(-5, 2), Fraction(-3, 2), Fraction(3, 2), Fraction(3, 2)))
    scene.add(SceneCircle(O, Q(1)))
    scene.add(SceneLine(Line(0, 1, 0), "x"))
    scene.add(SceneSegment(D, P))
    scene.add(SceneSegment(O, P))
    scene.add(SceneSegment(O, C, dashed=True))
    for name, pt in (("O", O), ("P", P), ("C", C), ("D", D)):
        scene.add(ScenePoint(pt, name))
    return scene


def perp_bisector_scene(rec):
    """Lines of a perp-bisector recipe, the result solid and the helpers dashed."""
    A, B, bis = rec.objects["A"], rec.objects["B"], rec.objects["line"]
    ax, ay, bx, by = (Fraction(to_dec(v, 6)) for v in (A.x, A.y, B.x, B.y))
    half = max(abs(bx - ax), abs(by - ay))
    cx, cy = (ax + bx) / 2, (ay + by) / 2
    scene = RenderScene(title="Perpendicular bisection",
                        viewport=(cx - half, cy - half, cx + half, cy + half))
    for l in rec.trace.lines():
        scene.add(SceneLine(l, dashed=(l != bis)))
    named = {A: "A", B: "B"}
    others = [p for p in rec.trace.points() if p not in named and p not in (Point(0, 0), Point(1, 0))]
    for p, name in zip(sorted(others, key=lambda p: -to_dec(p.y, 6)), ("C", "D")):
        named[p] = name
    for p, name in named.items():
        scene.add(ScenePoint(p, name))
    return scene


def polygon_scene(rec):
    """Unit circle and the vertices of a regular polygon recipe."""
    verts = rec.objects["vertices"]
    scene = RenderScene(title=f"Regular {rec.name}")
    scene.add(SceneCircle(Point(0, 0), Q(1)))
    n = len(verts)
    for k in range(n):
        scene.add(SceneSegment(verts[k], verts[(k + 1) % n]))
    for k, v in enumerate(verts):
        scene.add(ScenePoint(v, f"V{k}"))
    return scene


def recipe_scene(rec):
    """Diagram for a construction recipe."""
    if rec.name == "archimedes":
        return archimedes_scene(rec.objects["P"], rec.objects["C"], rec.objects["D"])
    if rec.name == "perp-bisector":
        return perp_bisector_scene(rec)
    if "vertices" in rec.objects:
        return polygon_scene(rec)
    return scene_from_trace(rec.trace, rec.name)


def alhazen_scene(sol):
    """The Alhazen pencil: circle, hyperbola, six lines and four solutions."""
    d = sol.pencil
    scene = RenderScene(title="Alhazen pencil")
    scene.add(SceneCircle(Point(0, 0), Q(1)))
    # H: -Y x^2 + 2X xy + Y y^2 + S x - R y = 0
    scene.add(SceneConic((-d.Y, 2 * d.X, d.Y, d.S, -d.R, Q(0))))
    for k, l in enumerate(sol.lines):
        scene.add(SceneLine(l, f"m{k}", dashed=True))
    scene.add(ScenePoint(d.instance.a, "a"))
    scene.add(ScenePoint(d.instance.b, "b"))
    for i, p in enumerate(sol.points):
        scene.add(ScenePoint(p, f"z{i + 1}"))
    return scene


def figure1(P=(Fraction(3, 5), Fraction(4, 5))):
    """Archimedes' neusis trisection on the unit circle."""
    from .constructions import archimedes_demo
    rep = archimedes_demo(Point(*P))
    return archimedes_scene(rep.P, rep.C, rep.D)


def figure2(A=(0, 0), B=(4, 0)):
    """Perpendicular bisector from perpendiculars and bisected right angles."""
    from .constructions import perp_bisector_recipe
    return perp_bisector_scene(perp_bisector_recipe(A, B))


def figure3(Qpt=(0, 2), O=(2, 1)):
    """Axiom (T) as angle trisection: P at the origin, l = OP."""
    from .axioms import ConstructionTrace, fold_L, fold_T
    from .geometry import intersect
    tr = ConstructionTrace()
    P = tr[0]
    Qp, Op = Point(*Qpt), Point(*O)
    tr.given(Qp)
    tr.given(Op)
    l = fold_L(tr, P, Op)
    res = fold_T(tr, P, Qp, l)
    fold, w = res.lines[0], res.witnesses[0]
    l1, l2 = w["l1"], w["l2"]
    F, H = intersect(fold, l), intersect(fold, l2)
    scene = RenderScene(title="Axiom (T) trisects an angle")
    for ln, name, dashed in ((l, "l", False), (l1, "l1", False), (l2, "l2", True), (fold, "fold", False)):
        scene.add(SceneLine(ln, name, dashed))
    scene.add(SceneSegment(P, w["P_image"], dashed=True))
    scene.add(SceneSegment(Qp, w["Q_image"], dashed=True))
    scene.add(SceneSegment(P, H))
    pts = [("O", Op), ("P", P), ("Q", Qp), ("P'", w["P_image"]), ("Q'", w["Q_image"]), ("F", F), ("H", H)]
    try:
        pts.append(("G", intersect(fold, l1)))
    except ParallelLines:
        pass
    for name, pt in pts:
        scene.add(ScenePoint(pt, name))
    return scene


def figure4(a=(2, 0), b=(3, 0)):
    """The Alhazen pencil for exterior points a and b."""
    from .alhazen import solve_alhazen
    return alhazen_scene(solve_alhazen(a, b))


FIGURES = {1: figure1, 2: figure2, 3: figure3, 4: figure4}
