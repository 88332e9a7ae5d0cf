"""The frozen oracle table is reproducible, and the oracles agree with each other."""

import json

import mpmath
import pytest

import oracles


def test_frozen_table_matches_a_fresh_build():
    fresh = json.loads(json.dumps(oracles.build()))
    assert fresh == oracles.load_frozen()


def test_real_root_count_counts_distinct_roots():
    assert oracles.real_root_count([1, -2, 1]) == 1       # (x - 1)^2
    assert oracles.real_root_count([1, 0, -3, 2]) == 2    # (x - 1)^2 (x + 2)
    assert oracles.real_root_count([1, 0, 1]) == 0
    assert oracles.real_root_count([8, 4, -4, -1]) == 3


def test_minpoly_normalization():
    assert oracles.minpoly_high(2) == [1, -2]
    assert oracles.minpoly_high(oracles.sympy.sqrt(2) / 2) == [2, 0, -1]
    assert oracles.minpoly_high(-oracles.sympy.sqrt(3)) == [1, 0, -3]


def test_discriminant_formula():
    assert oracles.cubic_discriminant(-3, 1) == 81
    assert oracles.cubic_discriminant(0, -2) == -108


@pytest.mark.parametrize("key", ["cos_2pi_7", "cos_20deg", "cos_2pi_5"])
def test_frozen_values_agree_with_mpmath(key):
    with mpmath.workdps(40):
        ref = {"cos_2pi_7": mpmath.cos(2 * mpmath.pi / 7), "cos_20deg": mpmath.cos(mpmath.pi / 9),
               "cos_2pi_5": mpmath.cos(2 * mpmath.pi / 5)}[key]
        assert abs(mpmath.mpf(oracles.load_frozen()["values"][key]) - ref) < mpmath.mpf(10) ** -35


def test_alhazen_scan_finds_four_points_on_the_circle():
    for a, b in [((2, 0), (3, 0)), ((2, 2), (1.5, -1.5))]:
        pts = oracles.alhazen_scan(a, b)
        assert len(pts) == 4
        for x, y in pts:
            assert abs(x * x + y * y - 1) < 1e-12
