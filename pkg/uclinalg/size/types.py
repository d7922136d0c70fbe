import numpy as np

from uclinalg.size.base import SizeFunction

__all__ = (
    "GeometricMean",
    "PNorm",
    "RatioAB",
    "parse_size_function"
)


def _check_positive(name: str, value: float) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TypeError(f"Parameter '{name}' must be a real number")
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"Parameter '{name}' must be a finite positive number, got {value}")
    return float(value)


def _support_mean(total: np.ndarray, count: np.ndarray) -> np.ndarray:
    return np.divide(total, count, out=np.zeros_like(total, dtype=float), where=count > 0)


class GeometricMean(SizeFunction):
    """
    Geometric mean of the nonzero magnitudes.

    Balancing with this size function makes the product of the nonzero magnitudes of every row and column 1.

    >>> round(GeometricMean().size([2, 8]), 12), round(GeometricMean().size([0, 5]), 12)
    (4.0, 5.0)
    >>> GeometricMean().size([0, 0])
    0.0
    """
    __slots__ = ()
    code = 'gm'

    def sizes(self, magnitudes: np.ndarray, axis: int) -> np.ndarray:
        support = magnitudes > 0
        logs = np.log(np.where(support, magnitudes, 1.0))
        count = support.sum(axis)
        return np.where(count > 0, np.exp(_support_mean(logs.sum(axis), count)), 0.0)


class PNorm(SizeFunction):
    """
    p-norm divided by |S|^(1/p), where S is the nonzero support.  For p = 1 it is the mean nonzero magnitude.

    >>> round(PNorm(1).size([0, 2, 4]), 12), round(PNorm(2).size([3, 0, 4]), 12) == round(np.sqrt(12.5), 12)
    (3.0, True)
    """
    __slots__ = ("p",)

    def __init__(self, p: float) -> None:
        """
        Args:
            p:  positive order of the norm
        """
        self.p = _check_positive('p', p)

    @property
    def code(self) -> str:
        return f'p:{self.p:g}'

    def sizes(self, magnitudes: np.ndarray, axis: int) -> np.ndarray:
        count = (magnitudes > 0).sum(axis)
        mean_power = _support_mean((magnitudes ** self.p).sum(axis), count)
        return mean_power ** (1 / self.p)


class RatioAB(SizeFunction):
    """
    (sum |u_i|^(a+b) / sum |u_i|^a)^(1/b), continuous in the entries and needing no special treatment of zeros.

    >>> round(RatioAB(1, 1).size([1, 2]), 12)
    1.666666666667
    >>> RatioAB(0.5, 2).size([1, 1, 0, 1])
    1.0
    """
    __slots__ = ("a", "b")

    def __init__(self, a: float, b: float) -> None:
        """
        Args:
            a:  positive exponent of the denominator sum
            b:  positive exponent increment of the numerator sum
        """
        self.a = _check_positive('a', a)
        self.b = _check_positive('b', b)

    @property
    def code(self) -> str:
        return f'ab:{self.a:g}:{self.b:g}'

    def sizes(self, magnitudes: np.ndarray, axis: int) -> np.ndarray:
        numerator = (magnitudes ** (self.a + self.b)).sum(axis)
        denominator = (magnitudes ** self.a).sum(axis)
        return _support_mean(numerator, denominator) ** (1 / self.b)


def parse_size_function(text: str) -> SizeFunction:
    """
    Build a size function from its command-line spelling: ``gm``, ``p:<p>`` or ``ab:<a>:<b>``.

    >>> parse_size_function('gm'), parse_size_function('p:2'), parse_size_function('ab:1:0.5')
    (GeometricMean(), PNorm(p=2.0), RatioAB(a=1.0, b=0.5))
    """
    name, *params = text.strip().lower().split(':')
    try:
        values = [float(param) for param in params]
    except ValueError:
        raise ValueError(f"Size function parameters must be numbers, got '{text}'") from None
    if name == 'gm' and not values:
        return GeometricMean()
    if name == 'p' and len(values) == 1:
        return PNorm(values[0])
    if name == 'ab' and len(values) == 2:
        return RatioAB(*values)
    raise ValueError(f"Size function must be one of 'gm', 'p:<p>' or 'ab:<a>:<b>', got '{text}'")
