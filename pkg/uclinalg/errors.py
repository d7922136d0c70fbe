__all__ = (
    "UclinalgError",
    "PreconditionError",
    "BalancingConvergenceError",
    "RankFactorizationError",
    "MatrixParseError"
)


class UclinalgError(Exception):
    """Base class of every domain failure raised by the package"""


class PreconditionError(UclinalgError, ValueError):
    """The operand does not satisfy the precondition of the requested operation"""


class BalancingConvergenceError(UclinalgError, RuntimeError):
    """A diagonal balancing iteration exhausted its sweep budget"""

    def __init__(self, dx: float, iterations: int) -> None:
        """
        A diagonal balancing iteration exhausted its sweep budget.

        Args:
            dx:          mean absolute log-adjustment of the last sweep
            iterations:  number of sweeps performed
        """
        super().__init__(f"balancing did not converge after {iterations} sweeps (dx={dx:.3e})")
        self.dx = dx
        self.iterations = iterations


class RankFactorizationError(UclinalgError, ValueError):
    """The factors given are not a valid rank factorization"""


class MatrixParseError(UclinalgError, ValueError):
    """Matrix file could not be parsed into a finite dense real matrix"""
