"""Exception types raised by the solver stack."""


class NumericalError(ArithmeticError):
    """A computation produced non-finite values or could not proceed."""


class RankDeficientError(NumericalError):
    """The collocation matrix carries no usable information (e.g. all zeros)."""


class DegenerateDensityError(ValueError):
    """A residual field with zero total weight cannot be normalized."""
