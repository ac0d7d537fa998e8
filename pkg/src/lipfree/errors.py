"""Exception hierarchy shared by every module.

``InputError`` subclasses signal malformed input (CLI exit 2); ``CheckFailed``
subclasses signal that a claimed property does not hold (CLI exit 1).
"""


class LipfreeError(Exception):
    pass


class InputError(LipfreeError, ValueError):
    pass


class CheckFailed(LipfreeError):
    pass


# -- metric_core ------------------------------------------------------------

class MetricError(CheckFailed):
    """The matrix is not a metric; ``witness`` holds the offending indices."""

    def __init__(self, *witness):
        self.witness = tuple(witness)
        super().__init__(f"{type(self).__name__}{self.witness}")


class NotSquare(InputError):
    pass


class Asymmetric(MetricError):
    pass


class NonzeroDiagonal(MetricError):
    pass


class ZeroOffDiagonal(MetricError):
    pass


class TriangleViolation(MetricError):
    pass


class BasePointMissing(InputError):
    pass


class SinglePoint(InputError):
    pass


# -- lipschitz --------------------------------------------------------------

class BaseNotZero(InputError):
    pass


class ConstantTooSmall(InputError):
    pass


# -- free_norm --------------------------------------------------------------

class SupportOutOfRange(InputError):
    pass


class DualityGapExceeded(CheckFailed):
    pass


# -- reductions -------------------------------------------------------------

class RangeCollision(CheckFailed):
    pass


class RankOverflow(InputError):
    def __init__(self, needed):
        self.needed = needed
        super().__init__(f"truncation too small; need n >= {needed}")


# -- cli_verify -------------------------------------------------------------

class UnknownSuite(InputError):
    pass
