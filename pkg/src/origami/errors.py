"""Exception hierarchy.

Every error carries a stable ``code`` string so the command line can report
domain failures in machine-readable form.
"""


class OrigamiError(Exception):
    code = "origami-error"

    def __init__(self, message="", **payload):
        super().__init__(message)
        self.payload = payload


# field tower
class DivisionByZero(OrigamiError, ZeroDivisionError):
    code = "division-by-zero"


class IncompatibleTowers(OrigamiError):
    code = "incompatible-towers"


class NegativeRadicand(OrigamiError):
    code = "negative-radicand"


class OutOfRange(OrigamiError):
    code = "out-of-range"


class DegenerateTrisection(OrigamiError):
    code = "degenerate-trisection"


class TowerTooDeep(OrigamiError):
    code = "tower-too-deep"


class ZeroPolynomial(OrigamiError):
    code = "zero-polynomial"


# cubics
class NotTotallyReal(OrigamiError):
    code = "not-totally-real"


class NotIrreducible(OrigamiError):
    code = "not-irreducible"


class NotCubic(OrigamiError):
    code = "not-cubic"


# geometry and folds
class CoincidentPoints(OrigamiError):
    code = "coincident-points"


class ParallelLines(OrigamiError):
    code = "parallel-lines"


class IdenticalLines(ParallelLines):
    code = "identical-lines"


class PointNotOnLine(OrigamiError):
    code = "point-not-on-line"


class UnknownObject(OrigamiError, KeyError):
    code = "unknown-object"


class NoRealFold(OrigamiError):
    code = "no-real-fold"


class DegenerateConfiguration(OrigamiError):
    code = "degenerate-configuration"


class InvalidTrace(OrigamiError):
    code = "invalid-trace"


# constructions
class EmptyInput(OrigamiError, ValueError):
    code = "empty-input"


class NotAcute(OrigamiError):
    code = "not-acute"


class UnknownRecipe(OrigamiError):
    code = "unknown-recipe"


# alhazen
class DegenerateInput(OrigamiError):
    code = "degenerate-input"


class ComplexPencil(OrigamiError):
    code = "complex-pencil"


class NotDegenerate(OrigamiError):
    code = "not-degenerate"


class ComplexLinePair(OrigamiError):
    code = "complex-line-pair"


class DegenerateIntersection(OrigamiError):
    code = "degenerate-intersection"


# cli
class ParseError(OrigamiError, ValueError):
    code = "parse-error"
