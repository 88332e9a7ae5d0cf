"""Alhazen's problem: normalization, the pencil cubic, line pairs and the four solutions."""

import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from origami.alhazen import (AlhazenInstance, pencil_data, rotate_normalize, solve_alhazen,
                             verify_equation1)
from origami.errors import DegenerateInput
from origami.field import Q

FROZEN = json.loads((Path(__file__).parent / "data" / "oracle_values.json").read_text())["alhazen"]

CASES = {
    "a2_b3": ((2, 0), (3, 0)),
    "a2p2i_b3h_m3hi": ((2, 2), (Fraction(3, 2), Fraction(-3, 2))),
    "a2pi_b2mi": ((2, 1), (2, -1)),
}


@pytest.fixture(scope="module")
def solutions():
    return {name: solve_alhazen(a, b) for name, (a, b) in CASES.items()}


@pytest.mark.parametrize("name", sorted(CASES))
def test_pencil_invariants_match_oracle(solutions, name):
    d = solutions[name].pencil
    inv = FROZEN[name]
    assert d.tau == Fraction(inv["tau"])
    assert d.const == Fraction(inv["const"])


def test_rotation_makes_ab_real():
    inst = AlhazenInstance((2, 1), (3, 0))  # ab = 6 + 3i
    rotated, rot = rotate_normalize(inst)
    assert not rot.is_identity
    a, b = rotated.a, rotated.b
    assert (a.x * b.y + a.y * b.x).is_zero()  # Im(ab) = 0
    assert (a.x * b.x - a.y * b.y) ** 2 == 45  # |ab|^2
    assert rot.inverse().apply(rotated.a) == inst.a
    assert rot.inverse().apply(rotated.b) == inst.b


def test_normalized_instance_rotation_is_identity():
    for a, b in [((2, 0), (3, 0)), ((2, 2), (Fraction(3, 2), Fraction(-3, 2)))]:
        _, rot = rotate_normalize(AlhazenInstance(a, b))
        assert rot.is_identity


def test_pencil_rejects_unnormalized_instance():
    with pytest.raises(DegenerateInput):
        pencil_data(AlhazenInstance((2, 1), (3, 0)))


@pytest.mark.parametrize("name", sorted(CASES))
def test_four_solutions_on_the_unit_circle(solutions, name):
    sol = solutions[name]
    assert len(sol.points) == 4 and len(set(sol.points)) == 4
    for p in sol.points:
        assert (p.x * p.x + p.y * p.y) == 1
        assert verify_equation1(p, sol.pencil.instance)
        assert sol.pencil.A1(p).is_zero() and sol.pencil.A2(p).is_zero()


@pytest.mark.parametrize("name", sorted(CASES))
def test_each_point_lies_on_one_line_of_each_conic(solutions, name):
    sol = solutions[name]
    assert len(sol.lines) == 6
    for p, ix in zip(sol.points, sol.incidence):
        assert len(ix) == 3
        assert sorted(k // 2 for k in ix) == [0, 1, 2]
        for k in ix:
            assert sol.lines[k].contains(p)


@pytest.mark.parametrize("name", sorted(CASES))
def test_pencil_cubic_roots(solutions, name):
    sol = solutions[name]
    f = sol.pencil.cubic()
    assert len(sol.lambdas) == 3 and len(set(sol.lambdas)) == 3
    for lam in sol.lambdas:
        val = sum(c * lam ** i for i, c in enumerate(f))
        assert val.is_zero()


def _match(points, expected):
    got = sorted((float(p.x), float(p.y)) for p in points)
    want = sorted(expected)
    for (x, y), (u, v) in zip(got, want):
        assert math.isclose(x, u, abs_tol=1e-12) and math.isclose(y, v, abs_tol=1e-12)


def test_collinear_instance_exact_points(solutions):
    sol = solutions["a2_b3"]
    exact = FROZEN["a2_b3_exact"]
    want = sorted(zip((Fraction(x) for x in exact["x"]), (Fraction(y) for y in exact["y_squared"])))
    got = sorted((p.x.to_fraction(), (p.y * p.y).to_fraction()) for p in sol.points)
    assert got == want


@pytest.mark.parametrize("name", ["a2_b3", "a2p2i_b3h_m3hi"])
def test_points_agree_with_float_scan(solutions, name):
    _match(solutions[name].points, [tuple(map(float, p)) for p in FROZEN[name + "_scan"]])


def test_rotated_instance_solutions():
    sol = solve_alhazen((2, 1), (3, 0))
    assert len(sol.points) == 4
    assert all(verify_equation1(p, sol.pencil.instance) for p in sol.points)


def test_solution_json(solutions):
    data = solutions["a2p2i_b3h_m3hi"].to_json(digits=20)
    assert data["schema"] == "origami.alhazen/1"
    assert len(data["points"]) == 4 and len(data["lines"]) == 6
    assert data["pencil"]["tau"]["coords"] == ["-263/8"]
    json.dumps(data)


@pytest.mark.parametrize("a, b", [
    ((0, 0), (3, 0)),                      # interior
    ((1, 0), (3, 0)),                      # on the circle
    ((Fraction(1, 2), Fraction(1, 2)), (3, 0)),
    ((2, 2), (2, 2)),                      # equal points
])
def test_degenerate_inputs(a, b):
    with pytest.raises(DegenerateInput):
        solve_alhazen(a, b)


def test_binary_complex_input_is_rejected():
    with pytest.raises(TypeError):
        AlhazenInstance(complex(2, 1), (3, 0))


def test_instance_accepts_exact_algebraic_coordinates():
    inst = AlhazenInstance((Q(2), Q(0)), (Fraction(5, 2), 0))
    assert inst.a.x == 2 and inst.b.x == Fraction(5, 2)
