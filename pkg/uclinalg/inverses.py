"""
Unit-consistent generalized inverses.

``linv`` is consistent with respect to left nonsingular diagonal transformations, linv(D A) = linv(A) D^-1,
``rinv`` with respect to right ones, and ``ginv`` with respect to both at once,
ginv(D A E) = E^-1 ginv(A) D^-1.  ``mixed_block_inverse`` handles state spaces where the leading variables
have incommensurate units and the trailing ones live in a common Euclidean space, so that the inverse must
be consistent with respect to blockdiag(D, R) transformations, D nonsingular diagonal and R orthonormal.
"""
from typing import Optional, Tuple

import numpy as np

from uclinalg.core import ToleranceConfig, resolve_config, as_matrix, pinv
from uclinalg.errors import PreconditionError
from uclinalg.scaling import GeneralScaling, left_scale, dscale
from uclinalg.typing import MatrixLike, Matrix
from uclinalg.utils.util import get_defined_slots

__all__ = (
    "BlockPartition",
    "linv",
    "rinv",
    "ginv",
    "mixed_block_inverse"
)


class BlockPartition:
    """
    Split of a square operand into the leading block of incommensurate-unit variables and the trailing block
    of Euclidean variables:

        A = [[W, X],
             [Y, Z]]

    with W of size m_top x m_top and Z of size n_bottom x n_bottom.
    """

    __slots__ = (
        "m_top",
        "n_bottom"
    )

    def __init__(self, m_top: int, n_bottom: int) -> None:
        """
        Args:
            m_top:     count of incommensurate-unit variables
            n_bottom:  count of Euclidean variables
        """
        for name, value in (('m_top', m_top), ('n_bottom', n_bottom)):
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"'{name}' must be of type int")
            if value < 1:
                raise ValueError(f"'{name}' must be positive, got {value}")
        self.m_top = int(m_top)
        self.n_bottom = int(n_bottom)

    @classmethod
    def for_size(cls, size: int, m_top: int) -> 'BlockPartition':
        """Partition of a size x size operand with m_top leading variables"""
        return cls(m_top, size - m_top)

    @property
    def size(self) -> int:
        return self.m_top + self.n_bottom

    def split(self, A: Matrix) -> Tuple[Matrix, Matrix, Matrix, Matrix]:
        """
        Blocks (W, X, Y, Z) of a square operand.

        >>> W, X, Y, Z = BlockPartition(1, 2).split(np.arange(9.0).reshape(3, 3))
        >>> W.tolist(), X.tolist(), Y.tolist(), Z.tolist()
        ([[0.0]], [[1.0, 2.0]], [[3.0], [6.0]], [[4.0, 5.0], [7.0, 8.0]])
        """
        if A.shape != (self.size, self.size):
            raise PreconditionError(
                f"Partition ({self.m_top}, {self.n_bottom}) requires a {self.size} x {self.size} operand, "
                f"got shape {A.shape}"
            )
        m = self.m_top
        return A[:m, :m], A[:m, m:], A[m:, :m], A[m:, m:]

    def __repr__(self) -> str:
        fields = ', '.join(f'{slot}={getattr(self, slot)!r}' for slot in get_defined_slots(type(self)))
        return f"{type(self).__name__}({fields})"


def linv(A: MatrixLike, cfg: Optional[ToleranceConfig] = None) -> Matrix:
    """
    Left unit-consistent generalized inverse, pinv(D_L A) D_L with D_L the left scale function of A.

    >>> linv([[1], [1]]).round(12).tolist()
    [[0.5, 0.5]]
    >>> linv([[2], [1]]).round(12).tolist()
    [[0.25, 0.5]]

    Args:
        A:    m x n operand
        cfg:  tolerance configuration

    Returns:
        n x m generalized inverse with linv(D A) = linv(A) D^-1 for nonsingular diagonal D
    """
    A = as_matrix(A)
    scale = left_scale(A)
    return pinv(scale[:, np.newaxis] * A, cfg) * scale[np.newaxis, :]


def rinv(A: MatrixLike, cfg: Optional[ToleranceConfig] = None) -> Matrix:
    """
    Right unit-consistent generalized inverse, the conjugate-transpose dual of ``linv``.

    >>> rinv([1, 1]).round(12).tolist()
    [[0.5], [0.5]]
    >>> rinv([2, 1]).round(12).tolist()
    [[0.25], [0.5]]

    Args:
        A:    m x n operand
        cfg:  tolerance configuration

    Returns:
        n x m generalized inverse with rinv(A D) = D^-1 rinv(A) for nonsingular diagonal D
    """
    return linv(as_matrix(A).conj().T, cfg).conj().T


def ginv(A: MatrixLike,
         cfg: Optional[ToleranceConfig] = None,
         scaling: Optional[GeneralScaling] = None) -> Matrix:
    """
    General unit-consistent generalized inverse, diag(dr) pinv(diag(dl) A diag(dr)) diag(dl).

    It is assembled as the Hadamard product of pinv of the balanced matrix with (dl dr^T)^T.  The result
    does not depend on which member of the scaling family is used.

    >>> A = np.array([[0.5, -0.5], [0.5, -0.5]])
    >>> D, E = np.diag([1.0, 2.0]), np.diag([5.0, -3.0])
    >>> ginv(D @ A @ np.linalg.inv(D)).round(10).tolist()
    [[0.5, 0.25], [-1.0, -0.5]]
    >>> np.allclose(ginv(D @ A @ E), [[1 / 10, 1 / 20], [1 / 6, 1 / 12]])
    True
    >>> np.allclose(ginv([[1, 2], [3, 4]]), [[-2, 1], [1.5, -0.5]])
    True

    Args:
        A:        m x n operand
        cfg:      tolerance configuration (rank cutoff and balancing thresholds)
        scaling:  precomputed general-diagonal scaling of A.
                  If None: computed by ``dscale``

    Returns:
        n x m generalized inverse with ginv(D A E) = E^-1 ginv(A) D^-1 for nonsingular diagonals D, E.
        The zero matrix maps to the zero matrix

    Raises:
        BalancingConvergenceError: the balancing iteration did not converge
    """
    cfg = resolve_config(cfg)
    A = as_matrix(A)
    if scaling is None:
        if not A.any():
            return np.zeros(A.shape[::-1], dtype=A.dtype)
        scaling = dscale(A, cfg)
    elif not isinstance(scaling, GeneralScaling):
        raise TypeError("'scaling' must be an instance of GeneralScaling or None")
    elif scaling.scaled.shape != A.shape:
        raise ValueError(f"Scaling of shape {scaling.scaled.shape} does not match operand of shape {A.shape}")
    return pinv(scaling.scaled, cfg) * np.outer(scaling.dl, scaling.dr).T


def _condition(M: Matrix, M_inv: Matrix) -> float:
    return max(1.0, float(np.linalg.norm(M, 2) * np.linalg.norm(M_inv, 2)))


def mixed_block_inverse(A: MatrixLike, part: BlockPartition, cfg: Optional[ToleranceConfig] = None) -> Matrix:
    """
    Generalized inverse consistent with respect to blockdiag(D, R) transformations on both sides.

    With S_W = W - X pinv(Z) Y and S_Z = Z - Y ginv(W) X the result is

        [[ ginv(S_W),                   -ginv(W) X pinv(S_Z) ],
         [ -pinv(Z) Y ginv(S_W),         pinv(S_Z)           ]]

    which reduces to the partitioned inverse when A and both Schur complements are nonsingular.

    A Schur complement vanishes whenever the nullity of A reaches the size of its block.  What is left of it
    in floating point is round-off, so anything within the rank tolerance of the magnitudes that cancelled is
    taken as zero: entrywise for S_W, which keeps the decision consistent under diagonal D, and by singular
    value for S_Z, which keeps it consistent under orthonormal R.

    >>> W, Z = np.array([[1.0, 2.0], [0.0, 3.0]]), np.array([[0.0, 2.0], [0.0, 0.0]])
    >>> A = np.block([[W, np.zeros((2, 2))], [np.zeros((2, 2)), Z]])
    >>> inverse = mixed_block_inverse(A, BlockPartition(2, 2))
    >>> np.allclose(inverse[:2, :2], ginv(W)), np.allclose(inverse[2:, 2:], pinv(Z)), not inverse[:2, 2:].any()
    (True, True, True)
    >>> mixed_block_inverse([[0.5, -0.25], [1.0, -0.5]], BlockPartition(1, 1)).any()
    False

    Args:
        A:     square operand
        part:  block partition matching the size of A
        cfg:   tolerance configuration for every inner inverse and for the cancellation test

    Returns:
        square generalized inverse of the same size as A
    """
    if not isinstance(part, BlockPartition):
        raise TypeError("'part' must be an instance of BlockPartition")
    cfg = resolve_config(cfg)
    A = as_matrix(A)
    W, X, Y, Z = part.split(A)
    roundoff = cfg.rank_cutoff(A.shape, 1.0)
    x_norms = np.linalg.norm(X, axis=1)
    y_norms = np.linalg.norm(Y, axis=0)

    Z_inv = pinv(Z, cfg)
    S_W = W - X @ Z_inv @ Y
    # |X_i pinv(Z) Y_j| <= |X_i| |pinv(Z)| |Y_j|, inflated by cond(Z) for the error in pinv(Z)
    cancelled = np.abs(W) + _condition(Z, Z_inv) * np.linalg.norm(Z_inv, 2) * np.outer(x_norms, y_norms)
    S_W[np.abs(S_W) <= roundoff * cancelled] = 0

    if W.any():
        scaling = dscale(W, cfg)
        W_inv = ginv(W, cfg, scaling)
        balanced_inv = W_inv / np.outer(scaling.dr, scaling.dl)
        # Y ginv(W) X measured through the balanced matrix, so that D cancels out
        product = (y_norms @ scaling.dr) * (scaling.dl @ x_norms) * np.linalg.norm(balanced_inv, 2)
        product *= _condition(scaling.scaled, balanced_inv)
    else:
        W_inv = np.zeros(W.shape[::-1], dtype=W.dtype)
        product = 0.0
    S_Z = Z - Y @ W_inv @ X
    floor = roundoff * (np.linalg.norm(Z, 2) + product)

    top_left = ginv(S_W, cfg)
    bottom_right = pinv(S_Z, cfg, floor=floor)
    top_right = -W_inv @ X @ bottom_right
    bottom_left = -Z_inv @ Y @ top_left
    return np.block([[top_left, top_right], [bottom_left, bottom_right]])
