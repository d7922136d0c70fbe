import sys
from typing import Type, Generator

import numpy as np
from scipy.optimize import linear_sum_assignment

from uclinalg import globals as uc_globals

__all__ = (
    "log_print",
    "be_silent",
    "get_defined_slots",
    "multiset_distance"
)


# General purpose utility functions, attached to no particular operation.

# This log_print function will call str.format(args) and print the result to stderr.
# It returns immediately when silent mode is active, so the arguments are not even
# formatted.  Use it for all permanent logging statements.  stdout is reserved for
# results written by the CLI.
def log_print(string: str, *args) -> None:
    if uc_globals.silent_mode:
        return
    if len(args):
        print(string.format(*args), file=sys.stderr)
    else:
        print(string, file=sys.stderr)


# Accessor method for the global silent_mode variable.
def be_silent() -> bool:
    return uc_globals.silent_mode


def get_defined_slots(cls: Type) -> Generator[str, None, None]:
    """
    Field names declared through ``__slots__`` along the class hierarchy, base classes first.
    Value classes such as ``ToleranceConfig`` and the size functions build their ``__repr__`` from it.

    >>> from uclinalg.size.types import RatioAB
    >>> tuple(get_defined_slots(RatioAB))
    ('a', 'b')
    >>> from uclinalg.scaling import GeneralScaling
    >>> tuple(get_defined_slots(GeneralScaling))
    ('dl', 'dr', 'scaled', 'iterations')
    """
    for klass in reversed(cls.__mro__):
        slots = vars(klass).get('__slots__', ())
        yield from ((slots,) if isinstance(slots, str) else slots)


def multiset_distance(x: np.ndarray, y: np.ndarray) -> float:
    """
    Largest entry mismatch between two unordered collections of scalars under the optimal one-to-one matching.

    Spectra carry no natural order (eigenvalues in particular), so they are compared as multisets:
    the matching minimizing the total absolute difference is found first and the worst pair is reported.

    >>> multiset_distance(np.array([1, 2 + 1j, -3]), np.array([-3, 1, 2 + 1j]))
    0.0
    >>> multiset_distance(np.array([1.0, 2.0]), np.array([2.5, 1.0]))
    0.5

    Args:
        x:  1-D array of real or complex scalars
        y:  1-D array of the same length

    Returns:
        max |x[i] - y[match(i)]| over the optimal matching
    """
    x = np.ravel(np.asarray(x))
    y = np.ravel(np.asarray(y))
    if x.shape != y.shape:
        raise ValueError(f"Multisets of different sizes cannot be matched: {x.size} and {y.size}")
    if not x.size:
        return 0.0
    # Sorting first keeps the assignment stable when entries tie.
    x = x[np.lexsort((np.imag(x), np.real(x)))]
    y = y[np.lexsort((np.imag(y), np.real(y)))]
    cost = np.abs(x[:, None] - y[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
