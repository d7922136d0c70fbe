"""
Unit-invariant and scale-invariant spectral decompositions built on the general-diagonal scaling.

The UI-SVD factors A = D U S V* E where U S V* is the SVD of the balanced matrix diag(dl) A diag(dr) and
D = diag(1/dl), E = diag(1/dr).  The diagonal of S, the UI singular values, is invariant under
A -> D' A E' for any nonsingular diagonals D', E'.  Only s and quantities assembled from all five factors
are determined uniquely; D, U, V and E individually are not.
"""
from typing import Optional, Tuple, Iterator

import numpy as np
import scipy.linalg

from uclinalg.core import ToleranceConfig, resolve_config, as_matrix, svd, singular_values
from uclinalg.errors import PreconditionError
from uclinalg.inverses import ginv
from uclinalg.scaling import dscale, left_scale, right_scale
from uclinalg.typing import MatrixLike, Matrix, Vector, DiagonalMatrix
from uclinalg.utils.util import get_defined_slots

__all__ = (
    "UiSvdFactors",
    "ui_svd",
    "ui_singular_values",
    "left_ui_svd",
    "right_ui_svd",
    "si_eigenvalues",
    "ui_signature"
)


class UiSvdFactors:
    """Five factors of the unit-invariant SVD, A = diag(D) U diag(s) V* diag(E)"""

    __slots__ = (
        "D",
        "U",
        "s",
        "V",
        "E"
    )

    def __init__(self, D: DiagonalMatrix, U: Matrix, s: Vector, V: Matrix, E: DiagonalMatrix) -> None:
        """
        Args:
            D:  diagonal of the m x m left factor, the reciprocal of the left general scaling
            U:  m x m unitary matrix
            s:  UI singular values in descending order
            V:  n x n unitary matrix
            E:  diagonal of the n x n right factor, the reciprocal of the right general scaling
        """
        self.D = D
        self.U = U
        self.s = s
        self.V = V
        self.E = E

    def __iter__(self) -> Iterator:
        return iter((self.D, self.U, self.s, self.V, self.E))

    def reconstruct(self) -> Matrix:
        """The product D U S V* E"""
        k = self.s.size
        core = (self.U[:, :k] * self.s) @ self.V[:, :k].conj().T
        return self.D[:, np.newaxis] * core * self.E[np.newaxis, :]

    def ginv(self, cfg: Optional[ToleranceConfig] = None) -> Matrix:
        """
        Unit-consistent generalized inverse recovered from the factors, E^-1 V pinv(S) U* D^-1.

        Args:
            cfg:  tolerance configuration, whose rank cutoff decides which singular values are inverted

        Returns:
            n x m matrix equal to ``ginv`` of the decomposed matrix
        """
        cfg = resolve_config(cfg)
        k = self.s.size
        cutoff = cfg.rank_cutoff((self.U.shape[0], self.V.shape[0]), self.s[0])
        s_inv = np.zeros(k)
        keep = self.s > cutoff
        s_inv[keep] = 1 / self.s[keep]
        core = (self.V[:, :k] * s_inv) @ self.U[:, :k].conj().T
        return (1 / self.E)[:, np.newaxis] * core * (1 / self.D)[np.newaxis, :]

    def __repr__(self) -> str:
        fields = ', '.join(f'{slot}={getattr(self, slot)!r}' for slot in get_defined_slots(type(self)))
        return f"{type(self).__name__}({fields})"


def ui_svd(A: MatrixLike, cfg: Optional[ToleranceConfig] = None) -> UiSvdFactors:
    """
    Unit-invariant singular value decomposition.

    >>> factors = ui_svd([[0.5, -0.5], [0.5, -0.5]])
    >>> factors.s.round(12).tolist()
    [2.0, 0.0]
    >>> np.allclose(factors.reconstruct(), [[0.5, -0.5], [0.5, -0.5]])
    True

    Args:
        A:    m x n operand with at least one nonzero entry
        cfg:  tolerance configuration

    Returns:
        UiSvdFactors with full m x m U and n x n V

    Raises:
        BalancingConvergenceError:  the balancing iteration did not converge
        numpy.linalg.LinAlgError:   the SVD did not converge
    """
    scaling = dscale(A, cfg)
    U, s, V = svd(scaling.scaled)
    return UiSvdFactors(1 / scaling.dl, U, s, V, 1 / scaling.dr)


def ui_singular_values(A: MatrixLike, cfg: Optional[ToleranceConfig] = None) -> Vector:
    """
    Unit-invariant singular values: the singular values of the balanced matrix, in descending order.

    >>> ui_singular_values([[0, 3], [0.5, 0]]).round(12).tolist()
    [1.0, 1.0]
    >>> ui_singular_values([[1, 2], [3, 4]]).round(5).tolist()
    [2.01028, 0.20308]
    """
    return singular_values(dscale(A, cfg).scaled)


def left_ui_svd(A: MatrixLike,
                cfg: Optional[ToleranceConfig] = None) -> Tuple[DiagonalMatrix, Matrix, Vector, Matrix]:
    """
    Left unit-invariant SVD, A = diag(D) U diag(s) V* with U diag(s) V* the SVD of the row-normalized matrix.

    s is invariant under left nonsingular diagonal and right unitary transformations of A.

    >>> D, U, s, V = left_ui_svd([[1, 0], [0, 2]])
    >>> D.tolist(), s.tolist()
    ([1.0, 2.0], [1.0, 1.0])

    Args:
        A:    m x n operand
        cfg:  tolerance configuration, validated only: row normalization and the SVD use no threshold

    Returns:
        (D, U, s, V) with D the diagonal of the left factor
    """
    resolve_config(cfg)
    A = as_matrix(A)
    scale = left_scale(A)
    U, s, V = svd(scale[:, np.newaxis] * A)
    return 1 / scale, U, s, V


def right_ui_svd(A: MatrixLike,
                 cfg: Optional[ToleranceConfig] = None) -> Tuple[Matrix, Vector, Matrix, DiagonalMatrix]:
    """
    Right unit-invariant SVD, A = U diag(s) V* diag(E) with U diag(s) V* the SVD of the column-normalized
    matrix.

    s is invariant under right nonsingular diagonal and left unitary transformations of A.

    >>> U, s, V, E = right_ui_svd([[3, 0], [4, 0]])
    >>> E.tolist(), s.round(12).tolist()
    ([5.0, 1.0], [1.0, 0.0])

    Args:
        A:    m x n operand
        cfg:  tolerance configuration, validated only

    Returns:
        (U, s, V, E) with E the diagonal of the right factor
    """
    resolve_config(cfg)
    A = as_matrix(A)
    scale = right_scale(A)
    U, s, V = svd(A * scale[np.newaxis, :])
    return U, s, V, 1 / scale


def si_eigenvalues(A: MatrixLike, cfg: Optional[ToleranceConfig] = None) -> Vector:
    """
    Scale-invariant eigenvalues: the eigenvalues of the balanced matrix of a square operand, unordered.

    They are unchanged by A -> D A E whenever D E is nonnegative real, e.g. positive diagonals on both sides
    or a similarity D A D^-1.

    >>> np.sort(si_eigenvalues([[1, 2], [3, 4]]).real).round(5).tolist()
    [-0.20308, 2.01028]
    >>> si_eigenvalues(np.diag([3.0, 0.5, 7.0])).real.round(12).tolist()
    [1.0, 1.0, 1.0]

    Args:
        A:    square operand with at least one nonzero entry
        cfg:  tolerance configuration

    Returns:
        complex eigenvalues

    Raises:
        PreconditionError: A is not square
    """
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise PreconditionError(f"si_eigenvalues requires a square operand, got shape {A.shape}")
    return scipy.linalg.eigvals(dscale(A, cfg).scaled, check_finite=False)


SIGNATURE_MODES = ('singular', 'hadamard')


def ui_signature(A: MatrixLike,
                 k: Optional[int] = None,
                 cfg: Optional[ToleranceConfig] = None,
                 *,
                 mode: str = 'singular') -> Vector:
    """
    Unit-invariant signature of a matrix, unchanged by A -> D A E for nonsingular diagonals D, E.

    In ``singular`` mode it is the k largest UI singular values.  In ``hadamard`` mode it is the row-major
    vectorization of A o ginv(A)^T, a more discriminating signature.

    >>> ui_signature([[0.5, -0.5], [0.5, -0.5]], 1).round(12).tolist()
    [2.0]
    >>> ui_signature([[1, 2], [3, 4]], mode='hadamard').round(10).tolist()
    [-2.0, 3.0, 3.0, -2.0]

    Args:
        A:     m x n operand with at least one nonzero entry
        k:     number of singular values kept, 1 <= k <= min(m, n); required in ``singular`` mode
        cfg:   tolerance configuration
        mode:  ``singular`` or ``hadamard``

    Returns:
        1-D signature vector
    """
    A = as_matrix(A)
    if mode == 'hadamard':
        return (A * ginv(A, cfg).T).ravel()
    if mode != 'singular':
        raise ValueError(f"'mode' must be one of {SIGNATURE_MODES}, got '{mode}'")
    if k is None or isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise TypeError("'k' must be of type int in singular mode")
    if not 1 <= k <= min(A.shape):
        raise PreconditionError(f"'k' must be between 1 and {min(A.shape)}, got {k}")
    return ui_singular_values(A, cfg)[:k]
