"""Tower arithmetic, predicates, minimal polynomials, Sturm counts, serialization
and the modular non-membership certificate."""

import itertools
import json
import random
from fractions import Fraction

import mpmath
import pytest

import oracles
from origami.errors import (DegenerateTrisection, DivisionByZero, IncompatibleTowers,
                            NegativeRadicand, OutOfRange, TowerTooDeep, ZeroPolynomial)
from origami.field import (SQRT, TRISECT, Q, RatPolynomial, adjoin_sqrt, adjoin_trisection_root,
                           embeddings_of, is_totally_positive, is_totally_real, minimal_polynomial,
                           number_from_json, number_to_json, parse_rational, sqrt, sqrt_in_field,
                           sturm_real_root_count, to_decimal, tower_from_json, tower_to_json,
                           trisect_cos, trisection_roots_in_field, unify)
from origami.field.modp import basis_discriminant, has_no_root

FROZEN = oracles.load_frozen()
R2 = sqrt(2)


def _mixed_tower():
    """Q(sqrt 2)(y)(sqrt(1 + y^2)) with 4y^3 - 3y = sqrt(2)/3: levels S, T, S."""
    _, y = adjoin_trisection_root(None, R2 / 3)
    _, z = adjoin_sqrt(None, 1 + y * y)
    r2, y, z = unify(R2, y, z)
    return r2, y, z


R2M, YM, ZM = _mixed_tower()


def random_element(rng, gens=(R2M, YM, ZM), den=7):
    x = Q(Fraction(rng.randint(-9, 9), rng.randint(1, den)))
    for k in range(1, len(gens) + 1):
        for combo in itertools.combinations(gens, k):
            c = Fraction(rng.randint(-9, 9), rng.randint(1, den))
            term = Q(c)
            for g in combo:
                term = term * g
            x = x + term
    return x


# field operations --------------------------------------------------------------------

def test_sqrt2_squared_is_two():
    assert R2 * R2 == 2
    assert (R2 * R2).is_rational()


def test_adding_zero_is_identity():
    rng = random.Random(1)
    for _ in range(20):
        x = random_element(rng)
        assert x + 0 == x and x + Q(0) == x


def test_inverse_of_one_plus_sqrt2():
    assert 1 / (1 + R2) == R2 - 1
    assert ((1 + R2) * (R2 - 1)) == 1


def test_division_by_exact_zero():
    with pytest.raises(DivisionByZero):
        R2 / (R2 - R2)
    with pytest.raises(ZeroDivisionError):
        Q(1) / Q(0)


def test_unrelated_towers_do_not_mix_silently():
    r3 = sqrt(3)
    with pytest.raises(IncompatibleTowers):
        R2 + r3
    a, b = unify(R2, r3)
    assert a * a == 2 and b * b == 3
    assert (a * b) * (a * b) == 6


def test_tower_height_is_capped():
    t = None
    x = Q(2)
    with pytest.raises(TowerTooDeep):
        for _ in range(20):
            t, x = adjoin_sqrt(t, x + 1, known_nonsquare=False)


# signs --------------------------------------------------------------------------------

def test_sign_examples():
    assert Q(0).sign() == 0
    assert (R2 - 1).sign() == 1
    r3, r6 = sqrt(3), sqrt(6)
    w = sqrt(5 + 2 * r6)
    a, b, c = unify(R2, r3, w)
    assert (a + b - c).sign() == 0
    assert (a + b - c).is_zero()


def test_sign_agrees_with_certified_interval():
    rng = random.Random(2)
    for _ in range(1000):
        x = random_element(rng)
        lo, hi = x.interval(Fraction(1, 10 ** 30))
        assert hi - lo < Fraction(1, 10 ** 30)
        mid = (lo + hi) / 2
        if x.is_zero():
            assert x.sign() == 0
        else:
            assert x.sign() == (1 if mid > 0 else -1)
            assert lo <= mid <= hi and (lo > 0 or hi < 0)


# adjoining roots -----------------------------------------------------------------------

def test_adjoin_sqrt_examples():
    t, r = adjoin_sqrt(None, 2)
    assert t.degree == 2 and r * r == 2 and t.totally_real
    t, r = adjoin_sqrt(R2.tower, 1 + R2)
    assert t.degree == 4 and not t.totally_real and r * r == 1 + R2
    t, r = adjoin_sqrt(R2.tower, 2 + R2)
    assert t.degree == 4 and t.totally_real and r * r == 2 + R2
    assert sturm_real_root_count(RatPolynomial.from_high([1, 0, -4, 0, 2])) == 4


def test_adjoin_sqrt_of_negative_raises():
    with pytest.raises(NegativeRadicand):
        adjoin_sqrt(None, -2)
    with pytest.raises(NegativeRadicand):
        adjoin_sqrt(None, 1 - R2)


def test_adjoin_sqrt_reuses_existing_roots():
    t, r = adjoin_sqrt(R2.tower, Fraction(9, 2))
    assert t is R2.tower and r == 3 * R2 / 2
    t, r = adjoin_sqrt(R2.tower, 3 + 2 * R2)  # (1 + sqrt 2)^2
    assert t is R2.tower and r == 1 + R2


def test_squaring_returns_the_radicand_for_random_totally_positive_elements():
    rng = random.Random(3)
    for _ in range(100):
        x = random_element(rng, gens=(R2,))
        a = x * x + Fraction(rng.randint(1, 20), rng.randint(1, 5))
        assert is_totally_positive(a)
        t, r = adjoin_sqrt(None, a)
        assert r * r == a and r.sign() > 0


def test_trisection_root_u_zero_needs_no_cubic_level():
    t, y = adjoin_trisection_root(None, 0)
    assert all(s.kind == SQRT for s in t.steps)
    assert y * y == Fraction(3, 4) and y.sign() > 0


def test_trisection_root_heptagon_parameter():
    r28 = sqrt(28)
    t, w = adjoin_trisection_root(r28.tower, 1 / r28)
    assert (4 * w ** 3 - 3 * w) == 1 / r28
    assert t.kind(t.height) == TRISECT
    # w = cos(theta) with theta = arccos(1/sqrt 28) / 3
    assert abs(float(w) - float(mpmath.cos(mpmath.acos(1 / mpmath.sqrt(28)) / 3))) < 1e-14


def test_trisection_root_of_one_half():
    t, y = adjoin_trisection_root(None, Fraction(1, 2))
    assert abs(float(y) - 0.9396926207859084) < 1e-15
    assert minimal_polynomial(y).integer_coeffs() == FROZEN["minpoly"]["cos_20deg"] == [8, 0, -6, -1]


def test_trisection_errors():
    with pytest.raises(OutOfRange):
        adjoin_trisection_root(None, 2)
    with pytest.raises(OutOfRange):
        adjoin_trisection_root(None, sqrt(2 + R2))
    for u in (1, -1):
        with pytest.raises(DegenerateTrisection):
            adjoin_trisection_root(None, u)


def test_trisection_residual_for_random_rationals():
    rng = random.Random(4)
    for _ in range(100):
        u = Fraction(rng.randint(-999, 999), 1000)
        y = trisect_cos(u)
        assert (4 * y ** 3 - 3 * y - u).is_zero()
        assert abs(float(y) - float(mpmath.cos(mpmath.acos(mpmath.mpf(u.numerator) / u.denominator) / 3))) < 1e-13


def test_reducible_trisection_uses_the_in_field_root():
    # u = 4r^3 - 3r for rational r makes the trisection polynomial reducible
    r = Fraction(2, 5)
    u = 4 * r ** 3 - 3 * r
    roots = trisection_roots_in_field(u)
    assert Q(r) in roots
    y = trisect_cos(u)
    assert (4 * y ** 3 - 3 * y - u).is_zero()
    assert abs(float(y) - float(mpmath.cos(mpmath.acos(mpmath.mpf(u.numerator) / u.denominator) / 3))) < 1e-14


def test_cyclic_trisection_roots_are_all_found():
    # cos 20 degrees generates a cyclic cubic field: all three roots lie in it
    t, y = adjoin_trisection_root(None, Fraction(1, 2))
    roots = trisection_roots_in_field(t.coerce(Fraction(1, 2)))
    assert len(roots) == 3 and roots[0] == y
    t, y = adjoin_trisection_root(None, Fraction(1, 3))
    assert trisection_roots_in_field(t.coerce(Fraction(1, 3))) == [y]


def test_joining_a_tower_that_repeats_a_trisection_level():
    for n in (-5, -2, 2, 5):
        y = trisect_cos(Fraction(n, 10))
        big, y2 = unify(R2M, y)
        assert y2 == y and big.tower.degree == 36


# embeddings ---------------------------------------------------------------------------------

def test_embedding_counts():
    assert len(embeddings_of(R2.tower)) == 2
    a = sqrt(1 + R2)
    assert a.tower.degree == 4 and len(embeddings_of(a.tower)) == 2
    b = sqrt(2 + R2)
    assert len(embeddings_of(b.tower)) == 4


def test_heptagon_tower_embeddings_give_the_three_cosines():
    from origami.constructions import heptagon
    c = heptagon().objects["c"]
    values = sorted({round(float(sum(e.evaluate(c)) / 2), 20) for e in embeddings_of(c.tower)})
    expected = sorted(float(FROZEN["values"][k]) for k in ("cos_2pi_7", "cos_4pi_7", "cos_6pi_7"))
    assert len(values) == 3
    assert all(abs(v - e) < 1e-15 for v, e in zip(values, expected))


def test_embedding_count_doubles_iff_totally_positive():
    for a, positive in ((1 + R2, False), (2 + R2, True), (3 - R2, True), (R2 - 1, False)):
        before = len(embeddings_of(a.tower))
        t, _ = adjoin_sqrt(a.tower, a) if (a.sign() > 0) else (None, None)
        assert is_totally_positive(a) == positive
        assert (len(embeddings_of(t)) == 2 * before) == positive


def test_embedding_count_triples_iff_conjugates_in_range():
    u_in = sqrt(2 - R2)   # conjugate sqrt(2 + sqrt 2) > 1 is not in range
    u_ok = R2 / 3         # conjugate -sqrt(2)/3 is in range
    for u, triples in ((u_in, False), (u_ok, True)):
        before = len(embeddings_of(u.tower))
        t, _ = adjoin_trisection_root(u.tower, u)
        assert (len(embeddings_of(t)) == 3 * before) == triples


# minimal polynomials and Sturm counts ---------------------------------------------------------

def test_minimal_polynomial_examples():
    assert minimal_polynomial(R2).integer_coeffs() == [1, 0, -2]
    assert minimal_polynomial((sqrt(5) - 1) / 4).integer_coeffs() == FROZEN["minpoly"]["cos_2pi_5"]
    assert minimal_polynomial(1 + R2).integer_coeffs() == FROZEN["minpoly"]["one_plus_sqrt2"]
    assert minimal_polynomial(2 + R2).integer_coeffs() == FROZEN["minpoly"]["two_plus_sqrt2"]
    assert minimal_polynomial(1 / sqrt(3)).integer_coeffs() == FROZEN["minpoly"]["tan_30deg"]
    assert minimal_polynomial(Fraction(3, 7)).integer_coeffs() == [7, -3]


def test_minimal_polynomial_vanishes_at_the_element():
    rng = random.Random(5)
    for _ in range(15):
        x = random_element(rng)
        m = minimal_polynomial(x)
        acc = Q(0)
        for c in m.integer_coeffs():
            acc = acc * x + c
        assert acc.is_zero()
        assert 1 <= m.real_root_count() <= m.degree
        assert x.tower.degree % m.degree == 0


def test_sturm_examples():
    assert sturm_real_root_count(RatPolynomial.from_high([1, 0, -2])) == 2
    assert sturm_real_root_count(RatPolynomial.from_high([1, 0, -2, 0, -1])) == 2
    assert sturm_real_root_count(RatPolynomial.from_high([8, 4, -4, -1])) == 3
    f = RatPolynomial.from_high([1, 0, -2])
    assert f.real_root_count((Fraction(0), None)) == 1
    assert f.real_root_count((Fraction(-2), Fraction(2))) == 2
    with pytest.raises(ZeroPolynomial):
        sturm_real_root_count(RatPolynomial([]))


def test_sturm_counts_agree_with_sympy():
    rng = random.Random(6)
    for _ in range(30):
        coeffs = [rng.randint(-9, 9) for _ in range(rng.randint(2, 7))]
        if coeffs[0] == 0:
            coeffs[0] = 1
        assert sturm_real_root_count(RatPolynomial.from_high(coeffs)) == oracles.real_root_count(coeffs)


def test_totally_real_and_positive_examples():
    assert is_totally_real(R2)
    assert not is_totally_real(sqrt(1 + R2))
    assert is_totally_real(trisect_cos(Fraction(1, 2)))
    assert is_totally_positive(5)
    assert not is_totally_positive(1 + R2)
    assert is_totally_positive(2 + R2)
    assert not is_totally_positive(-1)


def test_total_positivity_is_stable_under_square_factors():
    rng = random.Random(7)
    checked = 0
    while checked < 20:
        x = random_element(rng, gens=(R2,))
        y = random_element(rng, gens=(R2,))
        if y.is_zero() or not is_totally_positive(x):
            continue
        assert is_totally_positive(x * y * y)
        checked += 1


# square roots inside a field -----------------------------------------------------------------

def test_sqrt_in_field_finds_hidden_squares():
    y, z = YM, ZM
    for x in (y, 1 + y, y * z + R2M, z - y):
        found = sqrt_in_field(x * x)
        assert found is not None and found == abs(x)
    assert sqrt_in_field(R2M) is None
    assert sqrt_in_field(YM) is None if YM.sign() > 0 else True
    half = sqrt(Fraction(1, 2))
    assert sqrt_in_field(Q(2), half.tower) == 2 * half


# modular certificate --------------------------------------------------------------------------

def _embedding_values(tower, dps=60):
    """All complex images of the generators, level by level, with mpmath."""
    mpmath.mp.dps = dps
    maps = [[]]
    for k in range(1, tower.height + 1):
        new = []
        for images in maps:
            a = _eval(tower.steps[k - 1].param, k - 1, images)
            if tower.kind(k) == SQRT:
                r = mpmath.sqrt(a)
                roots = [r, -r]
            else:
                roots = mpmath.polyroots([4, 0, -3, -a], maxsteps=200, extraprec=200)
            new.extend(images + [r] for r in roots)
        maps = new
    return maps


def _eval(data, level, images):
    if level == 0:
        q = Fraction(int(data.numerator), int(data.denominator))
        return mpmath.mpf(q.numerator) / q.denominator
    g = images[level - 1]
    return sum(_eval(c, level - 1, images) * g ** j for j, c in enumerate(data))


def _gram_discriminant(tower):
    """det(sigma_j(b_i))^2 over the power-product basis, numerically."""
    maps = _embedding_values(tower)
    exps = list(itertools.product(*(range(d) for d in tower.degrees)))
    m = mpmath.matrix(len(exps), len(maps))
    for i, e in enumerate(exps):
        for j, images in enumerate(maps):
            v = mpmath.mpc(1)
            for g, k in zip(images, e):
                v *= g ** k
            m[i, j] = v
    return mpmath.det(m) ** 2


@pytest.mark.parametrize("build", [
    lambda: R2.tower,
    lambda: unify(R2, sqrt(3))[0].tower,
    lambda: sqrt(1 + R2).tower,
    lambda: adjoin_trisection_root(None, Fraction(1, 3))[0],
    lambda: R2M.tower,
])
def test_basis_discriminant_matches_numeric_gram_determinant(build):
    tower = build()
    d = basis_discriminant(tower)
    g = _gram_discriminant(tower)
    assert abs(g.imag) < mpmath.mpf(10) ** -20 * (1 + abs(g.real))
    assert abs(g.real - mpmath.mpf(d.numerator) / d.denominator) < mpmath.mpf(10) ** -20 * (1 + abs(g.real))


def test_modular_certificate_never_rejects_a_square():
    rng = random.Random(8)
    for _ in range(40):
        x = random_element(rng)
        assert not has_no_root(SQRT, x * x)
        y = trisect_cos(Fraction(rng.randint(-9, 9), 10))
        u = 4 * y ** 3 - 3 * y
        assert not has_no_root(TRISECT, u)


def test_modular_certificate_agrees_with_exact_search():
    rng = random.Random(9)
    certified = 0
    for _ in range(40):
        x = random_element(rng)
        if has_no_root(SQRT, x):
            certified += 1
            assert x.sign() < 0 or sqrt_in_field(x) is None
    assert certified > 20


# serialization ---------------------------------------------------------------------------------

def test_number_json_round_trip():
    rng = random.Random(10)
    for _ in range(10):
        x = random_element(rng)
        doc = json.loads(json.dumps(number_to_json(x)))
        assert number_from_json(doc) == x
    t = R2M.tower
    assert tower_from_json(json.loads(json.dumps(tower_to_json(t)))) is t


def test_decimal_rendering():
    assert to_decimal(R2, 20) == "1.4142135623730950488"  # 20 significant digits
    assert to_decimal(Q(Fraction(1, 8)), 30) == "0.125"
    assert to_decimal(Q(Fraction(-1, 3)), 5) == "-0.33333"


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-0.25") == Fraction(-1, 4)
    assert parse_rational("7") == 7
    assert parse_rational("1.5e3") == 1500
    for bad in ("x", "1/0", "1e400000000000", "1e-99999", "nan", "inf"):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rational(bad)
