"""Shared generators for the property tests and the acceptance suite."""

import contextlib
from fractions import Fraction

from origami.axioms import (ConstructionTrace, fold_B, fold_L, fold_P, fold_perpendicular,
                            fold_perpendicular_at, fold_reflect, trisect_between_lines)
from origami.errors import OrigamiError
from origami.geometry import Point


def rand_q(rng, num=6, den=4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_point(rng, num=6, den=4):
    return Point(rand_q(rng, num, den), rand_q(rng, num, den))


def _random_step(tr, rng, ops):
    pts, lns = tr.points(), tr.lines()
    op = rng.choice(ops)
    if op == "L":
        a, b = rng.sample(pts, 2)
        fold_L(tr, a, b)
    elif op == "P":
        a, b = rng.sample(lns, 2)
        fold_P(tr, a, b)
    elif op == "B":
        a, b = rng.sample(lns, 2)
        fold_B(tr, a, b)
    elif op == "perp":
        fold_perpendicular(tr, rng.choice(pts), rng.choice(lns))
    else:
        fold_reflect(tr, rng.choice(pts), rng.choice(lns))


def random_lpbt_trace(rng, before=4, after=2):
    """A random trace using only (L), (P), (B) and exactly one (T) step.

    Two random rational points are given (rationals lie in every class), and
    the trisection is applied to the line through them and another line, so
    the angle is generic and the tower usually gains a cubic level.
    """
    ops = ("L", "P", "B", "perp", "reflect")
    tr = ConstructionTrace()
    xa = fold_L(tr, tr[0], tr[1])
    fold_perpendicular_at(tr, xa, tr[0])
    g1 = rand_point(rng)
    g2 = rand_point(rng)
    while g2 == g1:
        g2 = rand_point(rng)
    tr.given(g1)
    tr.given(g2)

    def steps(n):
        made = tries = 0
        while made < n and tries < 50 * n:
            tries += 1
            try:
                _random_step(tr, rng, ops)
            except OrigamiError:
                continue
            made += 1

    steps(before)
    g = fold_L(tr, g1, g2)
    others = [l for l in tr.lines() if l != g]
    rng.shuffle(others)
    for other in others:
        try:
            trisect_between_lines(tr, g, other)
            break
        except OrigamiError:
            continue
    steps(after)
    return tr


def random_exterior_point(rng):
    while True:
        x = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        y = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        if x * x + y * y > 1:
            return (x, y)


def pythagorean_point(rng):
    """A rational point of the unit circle strictly inside the first quadrant."""
    while True:
        m, n = rng.randint(2, 12), rng.randint(1, 11)
        if n < m:
            d = m * m + n * n
            return (Fraction(m * m - n * n, d), Fraction(2 * m * n, d))


# acceptance bookkeeping ----------------------------------------------------------

RESULTS = {}
TITLES = {}


@contextlib.contextmanager
def criterion(n, title):
    """Record PASS for criterion ``n`` if the block completes, FAIL otherwise.

    A criterion checked by several tests passes only if all of them do.
    """
    TITLES[n] = title
    try:
        yield
    except BaseException:
        RESULTS[n] = False
        raise
    RESULTS[n] = RESULTS.get(n, True)


def summary_lines(total=12):
    out = []
    for n in range(1, total + 1):
        if n not in RESULTS:
            status = "NOT RUN"
        else:
            status = "PASS" if RESULTS[n] else "FAIL"
        out.append(f"criterion {n:2d}: {status}  {TITLES.get(n, '')}")
    return out
