from abc import ABCMeta, abstractmethod

import numpy as np

from uclinalg.utils.util import get_defined_slots

__all__ = (
    "SizeFunction",
)


class SizeFunction(metaclass=ABCMeta):
    """
    Composable size function: a nonnegative, homogeneous, permutation-invariant measure of vector magnitude
    taken over the nonzero entries only, so that appending zeros or repeating the vector does not change it
    and every nonzero binary vector has size 1.  By convention the zero vector has size 0.
    """
    __slots__ = ()

    def size(self, u: np.ndarray) -> float:
        """
        Size of a single vector.

        Args:
            u:  1-D array of real or complex scalars

        Returns:
            nonnegative size, 0 for the zero vector
        """
        magnitudes = np.abs(np.ravel(np.asarray(u)))
        return float(self.sizes(magnitudes[np.newaxis, :], axis=1)[0])

    @abstractmethod
    def sizes(self, magnitudes: np.ndarray, axis: int) -> np.ndarray:
        """
        Sizes of all rows (axis=1) or all columns (axis=0) of a nonnegative matrix at once.

        Args:
            magnitudes:  2-D array of entry magnitudes
            axis:        1 to measure rows, 0 to measure columns

        Returns:
            1-D array of sizes, 0 where the row/column is entirely zero
        """

    @property
    @abstractmethod
    def code(self) -> str:
        """Command-line spelling of the size function"""

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and all(
            getattr(self, slot) == getattr(other, slot) for slot in get_defined_slots(type(self))
        )

    def __hash__(self) -> int:
        return hash((type(self), *(getattr(self, slot) for slot in get_defined_slots(type(self)))))

    def __repr__(self) -> str:
        fields = ', '.join(f'{slot}={getattr(self, slot)!r}' for slot in get_defined_slots(type(self)))
        return f"{type(self).__name__}({fields})"
