"""Exception hierarchy.

Every error raised by the library derives from :class:`LaterationError`.
The two intermediate classes tell the CLI which exit code to use: bad input
(exit 1) versus a degenerate or inconclusive numerical condition (exit 2).
"""


class LaterationError(Exception):
    """Base class for all library errors."""


class InvalidInput(LaterationError, ValueError):
    """The input violates a documented precondition."""


class NumericalCondition(LaterationError, ArithmeticError):
    """The input is admissible but numerically degenerate."""


class TooFewSatellites(InvalidInput):
    pass


class DuplicateSatellites(InvalidInput):
    pass


class CoplanarSatellites(InvalidInput):
    """All satellites lie on one affine hyperplane."""


class WrongSatelliteCount(InvalidInput):
    pass


class NotSymmetric(InvalidInput):
    pass


class ColumnRankDeficient(NumericalCondition):
    pass


class NoSolution(NumericalCondition):
    """No candidate satisfies the range equations; the times are inconsistent."""


class DegenerateQuadratic(NumericalCondition):
    """Both the quadratic and linear coefficients vanish."""


class DegenerateQuadric(NumericalCondition):
    pass


class InconsistentReduction(NumericalCondition):
    pass


class DegenerateSampling(NumericalCondition):
    pass
