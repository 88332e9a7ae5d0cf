"""Independent oracles for derived values, and the frozen table they produce.

Nothing here imports the package: minimal polynomials come from sympy's
symbolic algebra, numeric values from mpmath, discriminants and Alhazen
invariants from plain Fraction formulas, and Alhazen solutions from a
floating-point angular scan of the bisector condition.

Run ``python3 tests/oracles.py`` to regenerate tests/data/oracle_values.json.
"""

import cmath
import json
import math
import os
import sys
from fractions import Fraction

import mpmath
import sympy

FROZEN_PATH = os.path.join(os.path.dirname(__file__), "data", "oracle_values.json")
DPS = 40


def minpoly_high(expr):
    """Primitive integer minimal polynomial, highest degree first, positive lead."""
    x = sympy.Symbol("x")
    p = sympy.Poly(sympy.minimal_polynomial(expr, x), x)
    coeffs = [int(c) for c in p.all_coeffs()]
    g = math.gcd(*coeffs)
    coeffs = [c // g for c in coeffs]
    return coeffs if coeffs[0] > 0 else [-c for c in coeffs]


def real_root_count(coeffs_high):
    """Number of distinct real roots."""
    x = sympy.Symbol("x")
    return len(set(sympy.Poly(coeffs_high, x).real_roots()))


def num(expr):
    return sympy.N(expr, DPS).__str__()


def cubic_discriminant(p, q):
    p, q = Fraction(p), Fraction(q)
    return -(27 * q * q + 4 * p ** 3)


def alhazen_invariants(a, b):
    """q, r, s, tau, qrs/2 from rational complex a, b (rotation-invariant formulas)."""
    ax, ay = map(Fraction, a)
    bx, by = map(Fraction, b)
    X, Y = ax * bx - ay * by, ax * by + ay * bx
    R, S = ax + bx, ay + by
    tau = (R * R + S * S - 4 * (X * X + Y * Y)) / 4
    const = (2 * R * S * X - Y * (R * R - S * S)) / 4
    return {"ab": [str(X), str(Y)], "tau": str(tau), "const": str(const)}


def bisector_residual(theta, a, b):
    """Im(ab conj(z)^2) - Im((a + b) conj(z)) at z = exp(i theta)."""
    zc = cmath.exp(-1j * theta)
    return (a * b * zc * zc).imag - ((a + b) * zc).imag


def alhazen_scan(a, b, samples=20000, tol=1e-15):
    """Angles in [0, 2pi) where the bisector condition holds, by sign scan and bisection.

    Returns points (cos, sin) sorted by angle; fine enough for generic inputs
    with a few exterior points of moderate size."""
    a, b = complex(*map(float, a)), complex(*map(float, b))
    two_pi = 2 * math.pi
    pts = []
    prev_t, prev_v = 0.0, bisector_residual(0.0, a, b)
    if prev_v == 0.0:
        pts.append(0.0)
    for i in range(1, samples + 1):
        t = two_pi * i / samples
        v = bisector_residual(t, a, b)
        if v == 0.0:
            if i < samples:
                pts.append(t)
        elif prev_v != 0.0 and (v > 0) != (prev_v > 0):
            lo, hi, flo = prev_t, t, prev_v
            while hi - lo > tol:
                mid = (lo + hi) / 2
                fm = bisector_residual(mid, a, b)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if (fm > 0) == (flo > 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            pts.append((lo + hi) / 2)
        prev_t, prev_v = t, v
    return [(math.cos(t), math.sin(t)) for t in pts]


def build():
    s2, s3, s5 = sympy.sqrt(2), sympy.sqrt(3), sympy.sqrt(5)
    c7 = sympy.cos(2 * sympy.pi / 7)
    out = {
        "minpoly": {
            "cos_2pi_5": minpoly_high((s5 - 1) / 4),
            "cos_2pi_7": minpoly_high(c7),
            "cos_20deg": minpoly_high(sympy.cos(sympy.pi / 9)),
            "sqrt_1_plus_sqrt2": minpoly_high(sympy.sqrt(1 + s2)),
            "sqrt_2_plus_sqrt2": minpoly_high(sympy.sqrt(2 + s2)),
            "sqrt_2_minus_sqrt2": minpoly_high(sympy.sqrt(2 - s2)),
            "one_plus_sqrt2": minpoly_high(1 + s2),
            "two_plus_sqrt2": minpoly_high(2 + s2),
            "tan_30deg": minpoly_high(1 / s3),
        },
        "real_roots": {
            "x4_m2x2_m1": real_root_count([1, 0, -2, 0, -1]),
            "x4_m4x2_p2": real_root_count([1, 0, -4, 0, 2]),
            "heptagon_cubic": real_root_count([8, 4, -4, -1]),
        },
        "values": {
            "cos_2pi_7": num(c7),
            "cos_4pi_7": num(sympy.cos(4 * sympy.pi / 7)),
            "cos_6pi_7": num(sympy.cos(6 * sympy.pi / 7)),
            "sin_2pi_7": num(sympy.sin(2 * sympy.pi / 7)),
            "cos_2pi_5": num(sympy.cos(2 * sympy.pi / 5)),
            "sin_2pi_5": num(sympy.sin(2 * sympy.pi / 5)),
            "cos_20deg": num(sympy.cos(sympy.pi / 9)),
            "cos_10deg": num(sympy.cos(sympy.pi / 18)),
            "cos_30deg": num(sympy.cos(sympy.pi / 6)),
            "heptagon_depressed_roots": [num(2 * sympy.cos(2 * k * sympy.pi / 7) + sympy.Rational(1, 3))
                                         for k in (1, 3, 2)],
            "x3_m3x_p1_roots": [num(2 * sympy.cos(2 * sympy.pi * k / 9)) for k in (1, 4, 2)],
        },
        "discriminants": {
            "heptagon": str(cubic_discriminant(Fraction(-7, 3), Fraction(-7, 27))),
            "x3_m2": str(cubic_discriminant(0, -2)),
            "x3_m3x_p1": str(cubic_discriminant(-3, 1)),
        },
        "alhazen": {
            "a2_b3": alhazen_invariants((2, 0), (3, 0)),
            "a2p2i_b3h_m3hi": alhazen_invariants((2, 2), (Fraction(3, 2), Fraction(-3, 2))),
            "a2pi_b2mi": alhazen_invariants((2, 1), (2, -1)),
            "a2_b3_scan": [[f"{x:.15f}", f"{y:.15f}"] for x, y in alhazen_scan((2, 0), (3, 0))],
            "a2p2i_b3h_m3hi_scan": [[f"{x:.15f}", f"{y:.15f}"]
                                    for x, y in alhazen_scan((2, 2), (1.5, -1.5))],
        },
    }
    # the a = 2, b = 3 points in closed form: y(12x - 5) = 0 on the unit circle
    out["alhazen"]["a2_b3_exact"] = {"x": ["1", "5/12", "-1", "5/12"],
                                     "y_squared": ["0", "119/144", "0", "119/144"]}
    return out


def load_frozen():
    with open(FROZEN_PATH, encoding="utf-8") as fh:
        return json.load(fh)


if __name__ == "__main__":
    data = build()
    os.makedirs(os.path.dirname(FROZEN_PATH), exist_ok=True)
    with open(FROZEN_PATH, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    json.dump(data, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
