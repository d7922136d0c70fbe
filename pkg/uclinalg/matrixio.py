"""
Reading and writing dense real matrices as CSV or Matrix Market text.

CSV: one matrix row per line, comma separated, no header.  Matrix Market: ``array`` and ``coordinate``
layouts with ``real`` (or ``integer``) ``general`` headers; coordinate files are densified on read.

Results made of several blocks (e.g. the dl, dr and balanced matrix of a scaling) are written one after
the other; CSV blocks are separated by an empty line.  1-D blocks are written as columns.
"""
import io
from typing import Sequence, TextIO

import numpy as np
import pandas as pd
import scipy.io
import scipy.sparse

from uclinalg.errors import MatrixParseError
from uclinalg.typing import FileName, Matrix

__all__ = (
    "FORMATS",
    "normalize_format",
    "read_matrix",
    "write_blocks",
    "format_blocks"
)

FORMATS = ('csv', 'mm', 'matrixmarket')
_FORMAT_ALIASES = dict(zip(FORMATS, ('csv', 'mm', 'mm')))

# 6 significant digits by default; with ``exact`` every value reads back to the same double.
# scipy picks the shortest round-trip representation for Matrix Market when precision is None.
_CSV_FMT = {False: '%.6g', True: '%.17g'}
_MM_PRECISION = {False: 5, True: None}


def normalize_format(fmt: str) -> str:
    """
    >>> normalize_format('MatrixMarket'), normalize_format('csv')
    ('mm', 'csv')
    """
    try:
        return _FORMAT_ALIASES[fmt.lower()]
    except KeyError:
        raise ValueError(f"Format must be one of {FORMATS}, got '{fmt}'") from None


def _read_csv(path: FileName) -> Matrix:
    try:
        frame = pd.read_csv(path, header=None, skipinitialspace=True, dtype=np.float64,
                            float_precision='round_trip')
    except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError, TypeError, OSError) as e:
        raise MatrixParseError(f"cannot parse CSV matrix from {path}: {e}") from e
    return frame.to_numpy(dtype=np.float64)


def _read_mm(path: FileName) -> Matrix:
    try:
        _, _, _, layout, field, symmetry = scipy.io.mminfo(path)
    except Exception as e:
        raise MatrixParseError(f"cannot parse Matrix Market header of {path}: {e}") from e
    if field not in ('real', 'integer'):
        raise MatrixParseError(f"Matrix Market field must be real, got '{field}' in {path}")
    if symmetry != 'general':
        raise MatrixParseError(f"Matrix Market symmetry must be general, got '{symmetry}' in {path}")
    try:
        data = scipy.io.mmread(path)
    except Exception as e:
        raise MatrixParseError(f"cannot parse Matrix Market {layout} data of {path}: {e}") from e
    if scipy.sparse.issparse(data):
        data = data.toarray()
    return np.asarray(data, dtype=np.float64)


def read_matrix(path: FileName, fmt: str = 'csv') -> Matrix:
    """
    Read a dense real matrix.

    Args:
        path:  input file
        fmt:   ``csv`` or ``mm``

    Returns:
        2-D float64 array with finite entries

    Raises:
        MatrixParseError: the file is missing, malformed, not real, or has non-finite or missing entries
    """
    fmt = normalize_format(fmt)
    matrix = _read_csv(path) if fmt == 'csv' else _read_mm(path)
    if matrix.ndim != 2 or not matrix.size:
        raise MatrixParseError(f"{path} does not contain a non-empty matrix")
    if not np.isfinite(matrix).all():
        raise MatrixParseError(f"{path} has missing or non-finite entries")
    return matrix


def _as_block(block: np.ndarray) -> np.ndarray:
    block = np.asarray(block)
    if np.iscomplexobj(block):
        raise TypeError("Only real blocks can be written; split complex values into real and imaginary parts")
    return block.reshape(-1, 1) if block.ndim == 1 else block


def write_blocks(stream: TextIO, blocks: Sequence[np.ndarray], fmt: str = 'csv', exact: bool = False) -> None:
    """
    Write one or more real blocks to a text stream.

    >>> buffer = io.StringIO()
    >>> write_blocks(buffer, [np.array([[0.1, 0.05], [1 / 6, 1 / 12]])])
    >>> print(buffer.getvalue(), end='')
    0.1,0.05
    0.166667,0.0833333

    Args:
        stream:  text stream
        blocks:  matrices or vectors
        fmt:     ``csv`` or ``mm``
        exact:   If True: round-trip exact decimal representation.
                 If False: 6 significant digits
    """
    fmt = normalize_format(fmt)
    for i, block in enumerate(blocks):
        block = _as_block(block)
        if fmt == 'csv':
            if i:
                stream.write('\n')
            np.savetxt(stream, block, fmt=_CSV_FMT[exact], delimiter=',')
        else:
            buffer = io.BytesIO()
            scipy.io.mmwrite(buffer, block, precision=_MM_PRECISION[exact], symmetry='general')
            stream.write(buffer.getvalue().decode('ascii'))


def format_blocks(blocks: Sequence[np.ndarray], fmt: str = 'csv', exact: bool = False) -> str:
    """Text that ``write_blocks`` would produce"""
    buffer = io.StringIO()
    write_blocks(buffer, blocks, fmt, exact)
    return buffer.getvalue()
