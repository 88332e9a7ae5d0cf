"""Command line: constructions, trisection, cubics, classification, Alhazen,
figures and trace files.

Exit status is 0 on success, 1 on a domain error (or a failed invariant) and
2 on a usage error.  Diagnostics go to stderr as one JSON object per line.
"""

import argparse
import hashlib
import json
import sys

from . import __version__
from .errors import OrigamiError, ParseError, UnknownRecipe
from .field import AlgebraicNumber, number_to_json, parse_rational, to_decimal
from .field.serialize import DEFAULT_DIGITS
from .geometry import Line, Point

CLI_SCHEMA = "origami.cli/1"
DIAGNOSTIC_SCHEMA = "origami.diagnostic/1"

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2

USAGE_ERRORS = (ParseError, UnknownRecipe)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# argument parsing -------------------------------------------------------------


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not an exact rational: {text!r}", text=text) from exc


def _pair(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"expected 'x,y', got {text!r}", text=text)
    return tuple(_rational(p) for p in parts)


def _list(text):
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ParseError("empty coefficient list", text=text)
    return [_rational(p) for p in parts]


def _digits(text):
    try:
        n = int(text)
    except ValueError:
        raise ParseError(f"precision must be an integer, got {text!r}", text=text) from None
    if not 1 <= n <= 1000:
        raise ParseError("precision must lie in [1, 1000]", text=text)
    return n


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=str, default=str(DEFAULT_DIGITS),
                        help="significant digits of certified decimals (default 30)")
    common.add_argument("--emit-svg", metavar="PATH", help="write an SVG diagram")
    common.add_argument("--emit-trace", metavar="PATH", help="write the construction trace JSON")
    common.add_argument("--json", action="store_true", help="print the JSON report to stdout")

    p = _Parser(prog="origami", description="Exact origami constructions and certificates.")
    p.add_argument("--version", action="version", version=f"origami {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("construct", parents=[common], help="run a named construction")
    c.add_argument("name", help="pentagon, heptagon, perp-bisector or archimedes")
    c.add_argument("--point", help="archimedes: point x,y on the unit circle (default 0,1)")
    c.add_argument("--A", dest="A", help="perp-bisector: first endpoint x,y (default 0,0)")
    c.add_argument("--B", dest="B", help="perp-bisector: second endpoint x,y (default 4,0)")

    t = sub.add_parser("trisect", parents=[common], help="cos(arccos(u)/3) and the root set")
    t.add_argument("--u", required=True, help="rational u with |u| < 1")

    k = sub.add_parser("cubic", parents=[common], help="solve x^3 + p x + q with three real roots")
    k.add_argument("--p", required=True)
    k.add_argument("--q", required=True)

    s = sub.add_parser("classify", parents=[common], help="classify a minimal polynomial or a trace")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--minpoly", help="integer or rational coefficients, highest degree first")
    g.add_argument("--trace", metavar="PATH", help="trace JSON file")

    a = sub.add_parser("alhazen", parents=[common], help="solve Alhazen's problem exactly")
    a.add_argument("--a", required=True, help="exterior point x,y")
    a.add_argument("--b", required=True, help="exterior point x,y")

    r = sub.add_parser("render", parents=[common], help="write one of the reference figures")
    r.add_argument("--figure", required=True, choices=["1", "2", "3", "4"])

    tr = sub.add_parser("trace", parents=[common], help="validate and re-export a trace file")
    tr.add_argument("path")
    return p


# JSON helpers -----------------------------------------------------------------


def _num(x, digits):
    return number_to_json(x, digits)


def _obj(v, digits):
    if isinstance(v, Point):
        return {"x": _num(v.x, digits), "y": _num(v.y, digits)}
    if isinstance(v, Line):
        return {"a": _num(v.a, digits), "b": _num(v.b, digits), "c": _num(v.c, digits)}
    if isinstance(v, (list, tuple)):
        return [_obj(x, digits) for x in v]
    return _num(v, digits)


def _dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _jsonable(v):
    if isinstance(v, AlgebraicNumber):
        return v.approx(20)
    return str(v)


def _diagnostic(code, message, status, payload=None):
    line = {"schema": DIAGNOSTIC_SCHEMA, "level": "error", "code": code, "message": message,
            "exit": status, "payload": payload or {}}
    sys.stderr.write(json.dumps(line, sort_keys=True, default=_jsonable) + "\n")


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit(args, doc, svg_scene=None, trace=None, digits=DEFAULT_DIGITS):
    if args.emit_svg and svg_scene is not None:
        from .render import render_svg
        render_svg(svg_scene, args.emit_svg)
        doc["svg"] = args.emit_svg
    if args.emit_trace and trace is not None:
        _write(args.emit_trace, trace.dumps(digits))
        doc["trace"] = args.emit_trace


# subcommands ------------------------------------------------------------------


def cmd_construct(args, digits):
    from .classifier import classify_trace
    from .constructions import run_recipe
    from .render import recipe_scene
    options = {}
    if args.point is not None:
        if args.name != "archimedes":
            raise ParseError("--point applies to archimedes only")
        options["P"] = _pair(args.point)
    for key in ("A", "B"):
        if getattr(args, key) is not None:
            if args.name != "perp-bisector":
                raise ParseError(f"--{key} applies to perp-bisector only")
            options[key] = _pair(getattr(args, key))
    rec = run_recipe(args.name, **options)
    doc = {"name": rec.name, "ok": rec.ok, "checks": dict(sorted(rec.checks.items())),
           "profile": sorted(rec.trace.profile), "allowed": sorted(rec.axioms),
           "class": classify_trace(rec.trace).value,
           "objects": {k: _obj(v, digits) for k, v in sorted(rec.objects.items())}}
    _emit(args, doc, recipe_scene(rec) if args.emit_svg else None, rec.trace, digits)
    summary = [f"{rec.name}: {'ok' if rec.ok else 'FAILED'}  profile {''.join(doc['profile'])}"]
    summary += [f"  {k}: {v}" for k, v in doc["checks"].items()]
    return doc, summary, EXIT_OK if rec.ok else EXIT_DOMAIN


def cmd_trisect(args, digits):
    from .cubic import trisection_root_set
    from .field import trisect_cos
    u = _rational(args.u)
    y = trisect_cos(u)
    roots = trisection_root_set(u)
    ok = (4 * y * y * y - 3 * y - u).is_zero() and all((4 * r ** 3 - 3 * r - u).is_zero() for r in roots)
    doc = {"u": _num(u, digits), "y": _num(y, digits), "roots": [_num(r, digits) for r in roots],
           "residual_zero": ok}
    return doc, [f"y = {to_decimal(y, digits)}"] + [f"  root {to_decimal(r, digits)}" for r in roots], \
        EXIT_OK if ok else EXIT_DOMAIN


def cmd_cubic(args, digits):
    from .cubic import ReducedCubic, solve_totally_real_cubic
    c = ReducedCubic(_rational(args.p), _rational(args.q))
    sol = solve_totally_real_cubic(c)
    ok = all(c(r).is_zero() for r in sol.roots)
    doc = {"p": _num(c.p, digits), "q": _num(c.q, digits), "discriminant": _num(sol.discriminant, digits),
           "m": _num(sol.m, digits), "u": _num(sol.u, digits),
           "roots": [_num(r, digits) for r in sol.roots], "residual_zero": ok}
    return doc, [f"root {to_decimal(r, digits)}" for r in sol.roots], EXIT_OK if ok else EXIT_DOMAIN


def cmd_classify(args, digits):
    from .classifier import classify_minpoly, classify_trace
    if args.minpoly is not None:
        rep = classify_minpoly(_list(args.minpoly))
        doc = rep.to_json()
        k = doc["real_roots"]
        lines = [f"{rep.label.value}: degree {doc['degree']}, degree condition "
                 f"{doc['degree_condition']}, {k} real root{'' if k == 1 else 's'}"]
        if doc["note"]:
            lines.append(f"  {doc['note']}")
        return doc, lines, EXIT_OK
    from .axioms import ConstructionTrace
    trace = ConstructionTrace.from_json(_read(args.trace))
    label = classify_trace(trace)
    doc = {"label": label.value, "profile": sorted(trace.profile)}
    return doc, [f"{label.value}: profile {''.join(doc['profile'])}"], EXIT_OK


def cmd_alhazen(args, digits):
    from .alhazen import solve_alhazen
    from .render import alhazen_scene
    sol = solve_alhazen(_pair(args.a), _pair(args.b))
    doc = sol.to_json(digits)
    _emit(args, doc, alhazen_scene(sol) if args.emit_svg else None)
    lines = [f"z{i + 1} = ({to_decimal(p.x, digits)}, {to_decimal(p.y, digits)})  lines {list(ix)}"
             for i, (p, ix) in enumerate(zip(sol.points, sol.incidence))]
    return doc, lines, EXIT_OK


def cmd_render(args, digits):
    from .render import FIGURES, render_svg_string
    n = int(args.figure)
    text = render_svg_string(FIGURES[n]())
    doc = {"figure": n, "sha256": hashlib.sha256(text.encode()).hexdigest()}
    if args.emit_svg:
        _write(args.emit_svg, text)
        doc["svg"] = args.emit_svg
        return doc, [f"figure {n} written to {args.emit_svg}"], EXIT_OK
    if args.json:
        doc["svg_text"] = text
        return doc, [], EXIT_OK
    return doc, [text.rstrip("\n")], EXIT_OK


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_trace(args, digits):
    from .axioms import ConstructionTrace
    from .classifier import classify_trace
    from .render import scene_from_trace
    text = _read(args.path)
    trace = ConstructionTrace.from_json(text)
    trace.validate()
    again = trace.dumps(digits)
    doc = {"path": args.path, "objects": len(trace.objects), "steps": len(trace.steps),
           "profile": sorted(trace.profile), "class": classify_trace(trace).value,
           "roundtrip_identical": again == text}
    _emit(args, doc, scene_from_trace(trace) if args.emit_svg else None, trace, digits)
    return doc, [f"{doc['objects']} objects, {doc['steps']} steps, profile "
                 f"{''.join(doc['profile'])}, class {doc['class']}, "
                 f"round trip {'identical' if doc['roundtrip_identical'] else 'differs'}"], EXIT_OK


COMMANDS = {"construct": cmd_construct, "trisect": cmd_trisect, "cubic": cmd_cubic,
            "classify": cmd_classify, "alhazen": cmd_alhazen, "render": cmd_render,
            "trace": cmd_trace}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        digits = _digits(args.precision)
        doc, lines, status = COMMANDS[args.command](args, digits)
    except UsageError as exc:
        _diagnostic("usage", str(exc), EXIT_USAGE)
        return EXIT_USAGE
    except USAGE_ERRORS as exc:
        _diagnostic(exc.code, str(exc), EXIT_USAGE, exc.payload)
        return EXIT_USAGE
    except OrigamiError as exc:
        _diagnostic(exc.code, str(exc), EXIT_DOMAIN, exc.payload)
        return EXIT_DOMAIN
    except OSError as exc:
        _diagnostic("io-error", str(exc), EXIT_DOMAIN, {"path": getattr(exc, "filename", None)})
        return EXIT_DOMAIN
    except (ValueError, json.JSONDecodeError) as exc:
        _diagnostic("invalid-input", str(exc), EXIT_DOMAIN)
        return EXIT_DOMAIN
    doc = {"schema": CLI_SCHEMA, "command": args.command, "exit": status, "result": doc}
    if status != EXIT_OK:
        _diagnostic("invariant-failed", f"{args.command}: an exact check failed", status)
    if args.json:
        sys.stdout.write(_dumps(doc))
    else:
        for line in lines:
            sys.stdout.write(line + "\n")
    return status
