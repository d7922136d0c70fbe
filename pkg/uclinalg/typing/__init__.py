from os import PathLike
from pathlib import Path
from typing import Union, Sequence, Any

import numpy as np

__all__ = (
    "FileName",
    "MatrixLike",
    "Matrix",
    "Vector",
    "DiagonalMatrix"
)

FileName = Union[str, PathLike, Path]
MatrixLike = Union[np.ndarray, Sequence[Sequence[Any]]]

# Dense 2-D operand, read-only after construction (see ``uclinalg.core.as_matrix``).
Matrix = np.ndarray
# 1-D array of scalars.
Vector = np.ndarray
# Diagonal matrices are carried as the 1-D array of their diagonal entries.
DiagonalMatrix = np.ndarray
