"""Exact points and lines: incidence, intersection, reflection, perpendiculars, bisectors."""

import random
from fractions import Fraction

import pytest

from helpers import rand_point
from origami.errors import CoincidentPoints, IdenticalLines, ParallelLines, PointNotOnLine
from origami.field import Q, sqrt
from origami.geometry import (Line, Point, angle_bisectors, intersect, line_through, midline,
                              perp_bisector, perpendicular_at, perpendicular_foot,
                              perpendicular_from, reflect_line, reflect_point, squared_distance)

R2, R3, R5 = sqrt(2), sqrt(3), sqrt(5)


def _algebraic_point(rng):
    return Point(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) + rng.randint(-2, 2) * R2,
                 Fraction(rng.randint(-5, 5), rng.randint(1, 3)) + rng.randint(-2, 2) * R3)


def _distinct_points(rng, make=_algebraic_point):
    P = make(rng)
    Q_ = make(rng)
    while Q_ == P:
        Q_ = make(rng)
    return P, Q_


def _perpendicular(l1, l2):
    return (l1.a * l2.a + l1.b * l2.b).is_zero()


def test_lines_through_two_points():
    assert line_through(Point(0, 0), Point(1, 1)) == Line(1, -1, 0)
    assert line_through(Point(0, 0), Point(0, 1)) == Line(1, 0, 0)
    c = (R5 - 1) / 4
    s = sqrt((5 + R5) / 8)
    P, Qp = Point(1, 0), Point(c, s)
    l = line_through(P, Qp)
    assert l.contains(P) and l.contains(Qp)
    assert not l.b.is_rational()  # an algebraic slope
    with pytest.raises(CoincidentPoints):
        line_through(P, Point(1, 0))


def test_canonical_scaling_makes_equal_lines_equal():
    assert Line(2, -2, 4) == Line(1, -1, 2) == Line(-3, 3, -6)
    assert Line(0, 5, 10) == Line(0, 1, 2)
    assert hash(Line(2, -2, 4)) == hash(Line(1, -1, 2))
    with pytest.raises(ValueError):
        Line(0, 0, 1)


def test_intersections():
    assert intersect(Line(1, 0, 0), Line(0, 1, 0)) == Point(0, 0)
    assert intersect(Line(1, -1, 0), Line(1, 1, -2)) == Point(1, 1)
    with pytest.raises(ParallelLines):
        intersect(Line(1, 1, 0), Line(2, 2, 5))
    with pytest.raises(IdenticalLines):
        intersect(Line(1, 1, 0), Line(2, 2, 0))


def test_random_algebraic_intersections_lie_on_both_lines():
    rng = random.Random(11)
    done = 0
    while done < 20:
        l1 = line_through(*_distinct_points(rng))
        l2 = line_through(*_distinct_points(rng))
        try:
            X = intersect(l1, l2)
        except ParallelLines:
            continue
        assert l1.contains(X) and l2.contains(X)
        done += 1


def test_reflection_examples():
    assert reflect_point(Point(0, 1), Line(0, 1, 0)) == Point(0, -1)
    assert reflect_point(Point(1, 2), Line(1, -1, 0)) == Point(2, 1)
    P = Point(3, 3)
    assert reflect_point(P, Line(1, -1, 0)) == P


def test_reflection_is_an_involution():
    rng = random.Random(12)
    for _ in range(100):
        P = rand_point(rng)
        A, B = _distinct_points(rng, rand_point)
        l = line_through(A, B)
        P2 = reflect_point(P, l)
        assert reflect_point(P2, l) == P
        assert squared_distance(P, A) == squared_distance(P2, A)


def test_reflection_involution_on_algebraic_instances():
    rng = random.Random(13)
    for _ in range(10):
        P = _algebraic_point(rng)
        l = line_through(*_distinct_points(rng))
        assert reflect_point(reflect_point(P, l), l) == P


def test_perpendicular_at_a_point_on_the_line():
    assert perpendicular_at(Line(0, 1, 0), Point(0, 0)) == Line(1, 0, 0)
    assert perpendicular_at(Line(1, -1, 0), Point(1, 1)) == Line(1, 1, -2)
    l = Line(R2, 1, -R3)
    P = Point(0, R3)
    m = perpendicular_at(l, P)
    assert m.contains(P) and _perpendicular(l, m)
    with pytest.raises(PointNotOnLine):
        perpendicular_at(Line(0, 1, 0), Point(0, 1))


def test_perpendicular_from_a_point():
    assert perpendicular_from(Point(0, 1), Line(0, 1, 0)) == Line(1, 0, 0)
    l = Line(1, -1, 0)
    P = Point(2, 2)
    assert perpendicular_from(P, l) == perpendicular_at(l, P)
    rng = random.Random(14)
    for _ in range(10):
        P = _algebraic_point(rng)
        l = line_through(*_distinct_points(rng))
        m = perpendicular_from(P, l)
        F = perpendicular_foot(P, l)
        assert m.contains(P) and _perpendicular(l, m)
        assert l.contains(F) and m.contains(F)


def test_perpendicular_bisector_examples():
    assert perp_bisector(Point(0, 0), Point(2, 0)) == Line(1, 0, -1)
    assert perp_bisector(Point(0, 0), Point(0, 2)) == Line(0, 1, -1)
    assert perp_bisector(Point(1, 0), Point(0, 1)) == Line(1, -1, 0)
    with pytest.raises(CoincidentPoints):
        perp_bisector(Point(1, 1), Point(1, 1))


def test_perpendicular_bisector_is_equidistant():
    rng = random.Random(15)
    for _ in range(10):
        P, Qp = _distinct_points(rng)
        m = perp_bisector(P, Qp)
        d = m.direction()
        base = intersect(m, line_through(P, Qp))
        for t in (0, 1, Fraction(-7, 3)):
            X = Point(base.x + t * d[0], base.y + t * d[1])
            assert m.contains(X)
            assert squared_distance(X, P) == squared_distance(X, Qp)


def test_angle_bisector_examples():
    b1, b2 = angle_bisectors(Line(1, 0, 0), Line(0, 1, 0))
    assert {b1, b2} == {Line(1, -1, 0), Line(1, 1, 0)}
    with pytest.raises(IdenticalLines):
        angle_bisectors(Line(1, 1, 0), Line(2, 2, 0))
    with pytest.raises(ParallelLines):
        angle_bisectors(Line(1, 1, 0), Line(1, 1, 3))
    # y = 0 and y = sqrt(3) x meet at 60 degrees; one bisector has slope tan 30 = 1/sqrt 3
    b1, b2 = angle_bisectors(Line(0, 1, 0), Line(R3, -1, 0))
    slopes = {(-b.a / b.b) if not b.b.is_zero() else None for b in (b1, b2)}
    assert 1 / R3 in slopes


def test_angle_bisectors_are_perpendicular_and_swap_the_lines():
    rng = random.Random(16)
    done = 0
    while done < 10:
        l1 = line_through(*_distinct_points(rng, rand_point))
        l2 = line_through(*_distinct_points(rng, rand_point))
        try:
            b1, b2 = angle_bisectors(l1, l2)
        except ParallelLines:
            continue
        assert _perpendicular(b1, b2)
        for b in (b1, b2):
            assert reflect_line(l1, b) == l2
            assert reflect_line(l2, b) == l1
        done += 1


def test_midline_of_parallels():
    assert midline(Line(0, 1, 0), Line(0, 1, -2)) == Line(0, 1, -1)


def test_mixed_towers_are_merged():
    P = Point(R2, 0)
    Qp = Point(0, R3)
    l = line_through(P, Qp)
    assert l.contains(P) and l.contains(Qp)
    assert squared_distance(P, Qp) == 5
    assert Point(Q(1), 2) == Point(1, Fraction(4, 2))
