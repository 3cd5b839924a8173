"""Exception types shared across the package."""


class ScarfError(Exception):
    """Base class for all package errors."""


class PoleError(ScarfError, ArithmeticError):
    """Raised when the potential is evaluated too close to a pole of sech."""

    def __init__(self, x, modulus):
        super().__init__(f"|cosh(alpha0*x/2)| = {modulus:.3e} at x = {x!r}: potential pole")
        self.x = x
        self.modulus = modulus


class BranchPointError(ScarfError, ArithmeticError):
    """Raised when the asinh argument of the trajectory hits +i or -i."""

    def __init__(self, t, argument):
        super().__init__(f"asinh argument {argument!r} at branch point (t = {t!r})")
        self.t = t
        self.argument = argument


class BarrierDivergence(ScarfError, ArithmeticError):
    """The momentum denominator cosh(alpha0*x/2) vanished.

    This is not a numerical accident: along a real-energy PT trajectory it is
    the classical spectral-singularity signature, so scans catch it and
    record it as a data point.
    """

    def __init__(self, t, x):
        super().__init__(f"momentum diverges at t = {t!r} (x = {x!r})")
        self.t = t
        self.x = x


class IntegrationError(ScarfError, RuntimeError):
    """The ODE integrator stopped early; ``partial`` holds what was computed."""

    def __init__(self, message, partial=None, last_state=None):
        super().__init__(message)
        self.partial = partial
        self.last_state = last_state


class TrajectoryCheckError(ScarfError, AssertionError):
    """A sampled closed-form trajectory failed its self-consistency checks."""
