"""Membership in the hierarchy P < {BT, E} < ET with checkable evidence.

Verdicts are three-valued: a certificate (a tower whose side conditions all
hold), a refutation (a degree obstruction or a cubic that is not totally
real), or Unknown.  Every piece of evidence carries a ``validate`` method that
recomputes it from scratch.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .axioms import ConstructionTrace
import sympy

from .cubic import (discriminant_cubic, is_totally_real_cubic, reduce_polynomial,
                    solve_totally_real_cubic)
from .errors import InvalidTrace, NotIrreducible
from .field import (SQRT, AlgebraicNumber, RatPolynomial, adjoin_sqrt,
                    adjoin_trisection_root, is_totally_positive, minimal_polynomial,
                    number_to_json, polynomial_roots_in_field, tower_to_json)

Q = AlgebraicNumber.rational
REPORT_SCHEMA = "origami.classification/1"


class ConstructionClass(enum.Enum):
    PYTHAGOREAN = "P"
    TOTALLY_REAL_ORIGAMI = "BT"
    EUCLIDEAN = "E"
    EUCLIDEAN_TRISECTION = "ET"
    UNKNOWN = "Unknown"
    NOT_IN_ET = "NotInET"

    @property
    def symbol(self):
        return _SYMBOLS[self]

    def le(self, other):
        """Partial order P <= BT <= ET, P <= E <= ET on the four field classes."""
        return (self, other) in _ORDER


P_, BT, E_, ET = (ConstructionClass.PYTHAGOREAN, ConstructionClass.TOTALLY_REAL_ORIGAMI,
                  ConstructionClass.EUCLIDEAN, ConstructionClass.EUCLIDEAN_TRISECTION)
_SYMBOLS = {P_: "ℙ", BT: "\U0001d539\U0001d54b", E_: "\U0001d53c", ET: "\U0001d53c\U0001d54b",
            ConstructionClass.UNKNOWN: "Unknown", ConstructionClass.NOT_IN_ET: "NotInET"}
_ORDER = {(a, a) for a in (P_, BT, E_, ET)} | {(P_, BT), (P_, E_), (P_, ET), (BT, ET), (E_, ET)}


# traces ---------------------------------------------------------------------


def classify_trace(trace):
    """Least class guaranteed by the axioms a trace uses."""
    if not isinstance(trace, ConstructionTrace):
        trace = ConstructionTrace.from_json(trace)
    trace.validate()
    profile = trace.profile
    unknown = profile - set("LPBET")
    if unknown:
        raise InvalidTrace(f"unknown axiom tags {sorted(unknown)}")
    if "E" in profile:
        return ET if "T" in profile else E_
    return BT if "T" in profile else P_


# degree test ------------------------------------------------------------------


def _is_2a3b(n):
    for p in (2, 3):
        while n % p == 0:
            n //= p
    return n == 1


def check_degree_condition(x):
    """Degree of the minimal polynomial is 2^a 3^b (necessary for ET membership)."""
    return _is_2a3b(minimal_polynomial(x).degree)


@dataclass(frozen=True)
class DegreeObstruction:
    number: AlgebraicNumber
    minpoly: RatPolynomial

    def validate(self):
        m = minimal_polynomial(self.number)
        return m == self.minpoly and not _is_2a3b(m.degree)

    def to_json(self):
        return {"kind": "degree", "minpoly": self.minpoly.integer_coeffs(),
                "degree": self.minpoly.degree, "number": number_to_json(self.number)}


# tower certificates -----------------------------------------------------------


def _all_conjugates_inside(u):
    """Every conjugate of u is real and lies in (-1, 1)."""
    m = minimal_polynomial(u)
    n = m.degree
    inside = m.real_root_count((Fraction(-1), Fraction(1))) - (1 if m(Fraction(1)) == 0 else 0)
    return m.real_root_count() == n and inside == n


def _step_condition(target, kind, param):
    if target == "BT":
        if kind == SQRT:
            return "totally_positive", is_totally_positive(param)
        return "conjugates_in_unit_interval", _all_conjugates_inside(param)
    if kind == SQRT:
        return "positive", param.sign() > 0
    return "in_unit_interval", (1 - param * param).sign() > 0


@dataclass(frozen=True)
class StepCheck:
    step: int
    kind: str
    condition: str
    param: AlgebraicNumber
    passed: bool

    def to_json(self):
        return {"step": self.step, "kind": self.kind, "condition": self.condition,
                "param": number_to_json(self.param), "passed": self.passed}


@dataclass(frozen=True)
class TowerCertificate:
    """Side conditions of a tower, walked bottom-up and stopped at the first failure.

    ``target`` is "BT" (conditions at every real embedding) or "ET"
    (conditions at the principal embedding only).
    """
    target: str
    tower: object
    checks: tuple

    @property
    def passed(self):
        return len(self.checks) == self.tower.height and all(c.passed for c in self.checks)

    @property
    def failing(self):
        return next((c for c in self.checks if not c.passed), None)

    @property
    def label(self):
        if not self.passed:
            return ConstructionClass.UNKNOWN
        has_trisection = any(c.kind != SQRT for c in self.checks)
        if self.target == "BT":
            return BT if has_trisection else P_
        return ET if has_trisection else E_

    def validate(self):
        again = _walk(self.tower, self.target)
        return [(c.step, c.kind, c.condition, c.passed) for c in again.checks] == \
            [(c.step, c.kind, c.condition, c.passed) for c in self.checks] and \
            all(c.param.data == self.tower.param(c.step).data for c in self.checks)

    def to_json(self):
        return {"kind": "tower", "target": self.target, "tower": tower_to_json(self.tower),
                "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _walk(tower, target):
    checks = []
    for k in range(1, tower.height + 1):
        param = tower.param(k)
        kind = tower.kind(k)
        cond, ok = _step_condition(target, kind, param)
        checks.append(StepCheck(k, kind, cond, param, ok))
        if not ok:
            break
    return TowerCertificate(target, tower, tuple(checks))


def _as_tower(F):
    return F.demote().tower if isinstance(F, AlgebraicNumber) else F


def certify_totally_real_tower(F):
    """BT certificate: square-root radicands totally positive and every
    conjugate of each trisection parameter inside (-1, 1)."""
    return ClassificationReport.from_certificate(_walk(_as_tower(F), "BT"))


def certify_et_tower(F):
    """ET certificate: positive radicands and |u| < 1 at the real embedding
    (Euclidean square roots and real angle trisections)."""
    return ClassificationReport.from_certificate(_walk(_as_tower(F), "ET"))


# cubic obstruction ------------------------------------------------------------


def _cubic_coeffs(f):
    if isinstance(f, RatPolynomial):
        return [Q(c) for c in f.coeffs]
    if hasattr(f, "coefficients"):
        return list(f.coefficients())
    return [Q(c) for c in f]


@dataclass(frozen=True)
class CubicObstruction:
    """An irreducible cubic over a field inside ET with only one real root:
    none of its roots (real or complex) lies in ET."""
    coeffs: tuple
    discriminant: AlgebraicNumber
    base: TowerCertificate

    def validate(self):
        c = reduce_polynomial(list(self.coeffs))
        delta = discriminant_cubic(c)
        return (delta == self.discriminant and delta.sign() < 0
                and not polynomial_roots_in_field(list(self.coeffs))
                and self.base.passed and self.base.validate())

    def to_json(self):
        return {"kind": "cubic", "coeffs": [number_to_json(c) for c in self.coeffs],
                "discriminant": number_to_json(self.discriminant), "real_roots": 1,
                "base": self.base.to_json()}


def refute_via_theorem51(f, K=None):
    """Obstruction for a cubic over a field in ET that is not totally real, else None.

    ``f`` is a rational polynomial, a reduced cubic, or tower coefficients
    (constant term first).  A negative discriminant at the real embedding
    means one real and two nonreal roots; the real one is excluded by the
    splitting-field argument and the nonreal pair because their sum is minus
    the real root.  Raises NotIrreducible when f has a root in its field.
    """
    coeffs = _cubic_coeffs(f)
    c = reduce_polynomial(coeffs)
    if polynomial_roots_in_field(coeffs):
        raise NotIrreducible("the cubic has a root in its coefficient field")
    delta = discriminant_cubic(c)
    if delta.sign() >= 0:
        return None
    tower = c.tower if K is None else _as_tower(K)
    base = _walk(tower, "ET")
    if not base.passed:
        raise ValueError("the coefficient field is not certified inside ET")
    return CubicObstruction(tuple(coeffs), delta, base)


# reports ---------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    label: ConstructionClass
    evidence: object = None  # TowerCertificate, CubicObstruction, DegreeObstruction or None
    note: str = ""

    @classmethod
    def from_certificate(cls, cert):
        return cls(cert.label, cert)

    @property
    def is_witness(self):
        return isinstance(self.evidence, TowerCertificate) and self.evidence.passed

    @property
    def is_obstruction(self):
        return self.evidence is not None and not self.is_witness

    def validate(self):
        return True if self.evidence is None else self.evidence.validate()

    def to_json(self):
        return {"schema": REPORT_SCHEMA, "label": self.label.value, "symbol": self.label.symbol,
                "evidence": None if self.evidence is None else self.evidence.to_json(),
                "note": self.note}


def classify_number(x, max_depth=3):
    """Classify a real algebraic number given as a tower element.

    Degree <= 2 is Pythagorean; a cubic is BT when totally real and refuted
    otherwise; a degree outside 2^a 3^b is refuted.  Other numbers are
    certified through their own tower when it has at most ``max_depth``
    steps, else Unknown.
    """
    x = Q(x).demote()
    m = minimal_polynomial(x)
    n = m.degree
    if not _is_2a3b(n):
        return ClassificationReport(ConstructionClass.NOT_IN_ET, DegreeObstruction(x, m))
    if n <= 2:
        if n == 1:
            return ClassificationReport(P_, _walk(Q(0).tower, "BT"), "rational")
        c0, c1, c2 = m.coeffs
        t, _ = adjoin_sqrt(None, c1 * c1 - 4 * c0 * c2)
        return ClassificationReport(P_, _walk(t, "BT"), "real quadratic: one square root of its discriminant")
    if n == 3:
        if m.real_root_count() == 3:
            cert = _walk(x.tower, "BT")
            return ClassificationReport(BT, cert if cert.passed else None,
                                        "totally real cubic: one trisection after square roots")
        return ClassificationReport(ConstructionClass.NOT_IN_ET,
                                    refute_via_theorem51(m, Q(0).tower))
    if x.tower.height > max_depth:
        return ClassificationReport(ConstructionClass.UNKNOWN, None,
                                    f"tower height exceeds the search depth {max_depth}")
    for target in ("BT", "ET"):
        cert = _walk(x.tower, target)
        if cert.passed:
            return ClassificationReport(cert.label, cert)
    return ClassificationReport(ConstructionClass.UNKNOWN, _walk(x.tower, "ET"),
                                "degree 2^a 3^b but no certified tower")


@dataclass(frozen=True)
class MinpolyReport:
    """Classification of the real roots of an irreducible rational polynomial."""
    minpoly: RatPolynomial
    real_roots: int
    report: ClassificationReport

    @property
    def degree_condition(self):
        return _is_2a3b(self.minpoly.degree)

    @property
    def label(self):
        return self.report.label

    def to_json(self):
        out = self.report.to_json()
        out.update({"minpoly": self.minpoly.integer_coeffs(), "degree": self.minpoly.degree,
                    "degree_condition": self.degree_condition, "real_roots": self.real_roots,
                    "totally_real": self.real_roots == self.minpoly.degree})
        return out


def _is_irreducible(poly):
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x ** i
               for i, c in enumerate(poly.coeffs))
    _, factors = sympy.factor_list(expr, x)
    return len(factors) == 1 and factors[0][1] == 1


def classify_minpoly(poly):
    """Classify the real roots of an irreducible polynomial over Q.

    ``poly`` is a :class:`RatPolynomial` or coefficients, highest degree
    first.  Quadratics with real roots are Pythagorean; cubics are BT when
    totally real (with a tower certificate for the largest root) and refuted
    otherwise; a degree outside 2^a 3^b or the absence of real roots refutes
    membership.  Anything else is Unknown: a bare polynomial carries no tower.
    """
    if not isinstance(poly, RatPolynomial):
        poly = RatPolynomial.from_high([Fraction(c) for c in poly])
    if poly.degree < 1:
        raise ValueError("a minimal polynomial has degree at least 1")
    if not _is_irreducible(poly):
        raise NotIrreducible("the polynomial factors over Q")
    n, k = poly.degree, poly.real_root_count()

    def mk(label, evidence=None, note=""):
        return MinpolyReport(poly, k, ClassificationReport(label, evidence, note))

    if k == 0:
        return mk(ConstructionClass.NOT_IN_ET, None, "no real root, and ET consists of real numbers")
    if not _is_2a3b(n):
        return mk(ConstructionClass.NOT_IN_ET, None, f"degree {n} is not of the form 2^a 3^b")
    if n == 1:
        return mk(P_, _walk(Q(0).tower, "BT"), "rational")
    if n == 2:
        c0, c1, c2 = poly.coeffs
        t, _ = adjoin_sqrt(None, c1 * c1 - 4 * c0 * c2)
        return mk(P_, _walk(t, "BT"), "real quadratic: one square root of its discriminant")
    if n == 3:
        if k == 3:
            root = solve_totally_real_cubic(reduce_polynomial(list(poly.coeffs))).roots[0]
            cert = _walk(root.tower, "BT")
            return mk(BT, cert if cert.passed else None,
                      "totally real cubic: one trisection after square roots")
        return mk(ConstructionClass.NOT_IN_ET, refute_via_theorem51(poly, Q(0).tower))
    if k < n:
        return mk(ConstructionClass.UNKNOWN, None,
                  "not totally real, so outside BT; ET membership is not decided from the polynomial")
    return mk(ConstructionClass.UNKNOWN, None,
              "totally real of degree 2^a 3^b; no tower is available to certify")


# the normal closure of a field in ET can leave ET --------------------------------


@dataclass(frozen=True)
class ConjugateEscapeReport:
    u: AlgebraicNumber
    alpha: AlgebraicNumber
    u_conjugate: AlgebraicNumber
    bt_certificate: ClassificationReport
    et_certificate: ClassificationReport
    conjugate_obstruction: ClassificationReport
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())

    def to_json(self):
        return {"schema": REPORT_SCHEMA, "u": number_to_json(self.u),
                "alpha": number_to_json(self.alpha), "u_conjugate": number_to_json(self.u_conjugate),
                "bt_certificate": self.bt_certificate.to_json(),
                "et_certificate": self.et_certificate.to_json(),
                "conjugate_obstruction": self.conjugate_obstruction.to_json(),
                "checks": dict(self.checks)}


def corollary52_demo():
    """E = Q(u, alpha) with u = sqrt(2 - sqrt 2) and 4 alpha^3 - 3 alpha = u lies in ET,
    while its conjugate field over u' = sqrt(2 + sqrt 2) > 1 does not.

    The BT certificate of E is attempted as well; it fails at the trisection
    step because the conjugate u' lies outside [-1, 1].
    """
    _, r2 = adjoin_sqrt(None, 2)
    _, u = adjoin_sqrt(None, 2 - r2)
    _, alpha = adjoin_trisection_root(None, u)
    _, u2 = adjoin_sqrt(None, 2 + r2)
    bt = certify_totally_real_tower(alpha.tower)
    et = certify_et_tower(alpha.tower)
    obstruction = refute_via_theorem51([-u2, Q(-3), Q(0), Q(4)])
    refutation = ClassificationReport(ConstructionClass.NOT_IN_ET, obstruction)
    checks = {
        "u_at_most_one": (1 - u * u).sign() > 0,
        "u_conjugate_above_one": (u2 - 1).sign() > 0,
        "alpha_root": (4 * alpha ** 3 - 3 * alpha) == u,
        "et_certificate": et.is_witness and et.validate(),
        "bt_certificate": bt.is_witness and bt.validate(),
        "conjugate_obstructed": obstruction is not None and refutation.validate(),
    }
    return ConjugateEscapeReport(u, alpha, u2, bt, et, refutation, checks)
