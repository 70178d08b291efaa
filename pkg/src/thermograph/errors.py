"""Exception types shared across the package."""


class CapExceededError(ValueError):
    """A dense computation would exceed the configured qubit cap."""


class SolverError(RuntimeError):
    """A root search could not produce a critical temperature."""


class NoEntanglementError(SolverError):
    """Negativity is zero at every probed temperature."""


class BracketError(SolverError):
    """No sign change was found below the upper temperature bracket."""
