"""
Dense matrix foundation of the package: validated construction of read-only operands, the singular value
decomposition, the Moore-Penrose pseudoinverse with a relative rank cutoff, numerical rank and the
rank-factorization form of the pseudoinverse, which serves as an independent oracle for the SVD route.

Every function here is pure.  Operands are converted once by ``as_matrix`` into read-only float64 or
complex128 arrays, so results may be shared freely between threads.
"""
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from uclinalg.errors import RankFactorizationError
from uclinalg.typing import MatrixLike, Matrix, Vector
from uclinalg.utils.constants import machine_eps, default_balance_tol, default_max_iter
from uclinalg.utils.util import get_defined_slots, log_print

__all__ = (
    "ToleranceConfig",
    "DEFAULT_TOLERANCE",
    "resolve_config",
    "as_matrix",
    "svd",
    "singular_values",
    "pinv",
    "rank",
    "pinv_rank_factorization",
    "penrose_residuals"
)


class ToleranceConfig:
    """Numerical thresholds shared by every operation of the package"""

    __slots__ = (
        "rank_tol",
        "balance_tol",
        "max_iter"
    )

    def __init__(self,
                 *,
                 rank_tol: Optional[float] = None,
                 balance_tol: float = default_balance_tol,
                 max_iter: int = default_max_iter) -> None:
        """
        Numerical thresholds shared by every operation of the package.

        Args:
            rank_tol:     Relative singular-value cutoff: singular values not exceeding
                          rank_tol * (largest singular value) count as zero.
                          If None: max(m, n) * machine epsilon of the operand at hand
            balance_tol:  Convergence threshold on the mean absolute log-adjustment of a balancing sweep
            max_iter:     Maximum number of balancing sweeps before giving up
        """
        if rank_tol is not None:
            if isinstance(rank_tol, bool) or not isinstance(rank_tol, (int, float)):
                raise TypeError("'rank_tol' must be a real number or None")
            if not np.isfinite(rank_tol) or rank_tol < 0:
                raise ValueError(f"'rank_tol' must be a finite nonnegative number, got {rank_tol}")
            rank_tol = float(rank_tol)
        self.rank_tol = rank_tol

        if isinstance(balance_tol, bool) or not isinstance(balance_tol, (int, float)):
            raise TypeError("'balance_tol' must be a real number")
        if not np.isfinite(balance_tol) or balance_tol <= 0:
            raise ValueError(f"'balance_tol' must be a finite positive number, got {balance_tol}")
        self.balance_tol = float(balance_tol)

        if isinstance(max_iter, bool) or not isinstance(max_iter, (int, np.integer)):
            raise TypeError("'max_iter' must be of type int")
        if max_iter < 1:
            raise ValueError(f"'max_iter' must be positive, got {max_iter}")
        self.max_iter = int(max_iter)

    def rank_cutoff(self, shape: Tuple[int, ...], s_max: float) -> float:
        """
        Absolute singular-value cutoff for an operand of the given shape.

        >>> ToleranceConfig(rank_tol=1e-3).rank_cutoff((4, 2), 10.0)
        0.01
        >>> ToleranceConfig().rank_cutoff((4, 2), 1.0) == 4 * np.finfo(float).eps
        True

        Args:
            shape:  operand shape
            s_max:  largest singular value of the operand

        Returns:
            singular values not exceeding this value are treated as zero
        """
        relative = max(shape) * machine_eps if self.rank_tol is None else self.rank_tol
        return relative * float(s_max)

    def replace(self, **changes) -> 'ToleranceConfig':
        """Copy of the config with some fields overridden"""
        fields = {slot: getattr(self, slot) for slot in get_defined_slots(type(self))}
        fields.update(changes)
        return ToleranceConfig(**fields)

    def __repr__(self) -> str:
        fields = ', '.join(f'{slot}={getattr(self, slot)!r}' for slot in get_defined_slots(type(self)))
        return f"{type(self).__name__}({fields})"


DEFAULT_TOLERANCE = ToleranceConfig()


def resolve_config(cfg: Optional[ToleranceConfig]) -> ToleranceConfig:
    if cfg is None:
        return DEFAULT_TOLERANCE
    if not isinstance(cfg, ToleranceConfig):
        raise TypeError("'cfg' must be an instance of ToleranceConfig or None")
    return cfg


def as_matrix(A: MatrixLike) -> Matrix:
    """
    Validate an operand and return it as a read-only dense 2-D array.

    Integer and boolean input is promoted to float64, complex input is kept as complex128.
    A 1-D input is read as a single row.

    >>> A = as_matrix([[1, 2], [3, 4]])
    >>> A.dtype, A.shape, A.flags.writeable
    (dtype('float64'), (2, 2), False)
    >>> as_matrix([1, -1]).shape
    (1, 2)

    Args:
        A:  array-like of real or complex scalars

    Returns:
        read-only float64 or complex128 array with two dimensions
    """
    if isinstance(A, np.ndarray) and A.ndim == 2 and A.dtype in (np.float64, np.complex128) \
            and not A.flags.writeable:
        return A
    try:
        array = np.array(A)
    except ValueError as e:
        raise ValueError(f"Operand cannot be read as a dense matrix: {e}") from e
    if array.dtype == object or not (np.issubdtype(array.dtype, np.number) or array.dtype == np.bool_):
        raise TypeError(f"Operand must contain real or complex numbers, got dtype {array.dtype}")
    if array.ndim == 1:
        array = array[np.newaxis, :]
    if array.ndim != 2:
        raise ValueError(f"Operand must be 1-D or 2-D, got {array.ndim} dimensions")
    if not array.size:
        raise ValueError(f"Operand must have at least one entry, got shape {array.shape}")
    array = array.astype(np.complex128 if np.iscomplexobj(array) else np.float64)
    if not np.isfinite(array).all():
        raise ValueError("Operand entries must be finite (no NaN or Inf)")
    array.setflags(write=False)
    return array


def _lapack_svd(A: Matrix, full_matrices: bool, compute_uv: bool):
    try:
        return scipy.linalg.svd(A, full_matrices=full_matrices, compute_uv=compute_uv,
                                check_finite=False, lapack_driver='gesdd')
    except np.linalg.LinAlgError:
        # The divide-and-conquer driver occasionally fails where the QR-iteration one does not.
        log_print("svd: gesdd did not converge on {} operand, retrying with gesvd", A.shape)
        return scipy.linalg.svd(A, full_matrices=full_matrices, compute_uv=compute_uv,
                                check_finite=False, lapack_driver='gesvd')


def svd(A: MatrixLike, full_matrices: bool = True) -> Tuple[Matrix, Vector, Matrix]:
    """
    Singular value decomposition A = U diag(s) V*.

    No sign or phase convention is imposed on the singular vectors.

    >>> U, s, V = svd([[0.5, -0.5], [0.5, -0.5]])
    >>> s.round(12).tolist()
    [1.0, 0.0]
    >>> np.allclose(U @ np.diag(s) @ V.conj().T, [[0.5, -0.5], [0.5, -0.5]])
    True

    Args:
        A:              m x n operand
        full_matrices:  If True: U is m x m and V is n x n.
                        If False: U is m x k and V is n x k with k = min(m, n)

    Returns:
        (U, s, V) with s sorted in descending order.
        Note that V is returned, not its conjugate transpose

    Raises:
        numpy.linalg.LinAlgError: both LAPACK drivers failed to converge
    """
    A = as_matrix(A)
    U, s, Vh = _lapack_svd(A, full_matrices, True)
    return U, s, Vh.conj().T


def singular_values(A: MatrixLike) -> Vector:
    """Singular values of A in descending order"""
    return _lapack_svd(as_matrix(A), False, False)


def pinv(A: MatrixLike, cfg: Optional[ToleranceConfig] = None, floor: float = 0.0) -> Matrix:
    """
    Moore-Penrose pseudoinverse computed from the SVD, singular values at or below the rank cutoff
    being treated as zero.

    >>> A = [[0.5, -0.5], [0.5, -0.5]]
    >>> pinv(A).round(10).tolist()
    [[0.5, 0.5], [-0.5, -0.5]]

    The pseudoinverse is not consistent with respect to a change of units:

    >>> D = np.diag([1.0, 2.0])
    >>> pinv(D @ A @ np.linalg.inv(D)).round(10).tolist()
    [[0.32, 0.64], [-0.16, -0.32]]

    An absolute floor drops singular values regardless of the largest one:

    >>> np.allclose(pinv([[1.0, 0.0], [0.0, 1e-3]], floor=1e-2), [[1, 0], [0, 0]])
    True

    Args:
        A:      m x n operand
        cfg:    tolerance configuration
        floor:  absolute cutoff applied on top of the relative one

    Returns:
        n x m pseudoinverse
    """
    cfg = resolve_config(cfg)
    A = as_matrix(A)
    U, s, V = svd(A, full_matrices=False)
    cutoff = max(cfg.rank_cutoff(A.shape, s[0]), floor)
    keep = s > cutoff
    return (V[:, keep] / s[keep]) @ U[:, keep].conj().T


def rank(A: MatrixLike, cfg: Optional[ToleranceConfig] = None) -> int:
    """
    Numerical rank: the count of singular values exceeding the rank cutoff.

    >>> rank([[0.5, -0.5], [0.5, -0.5]]), rank(np.zeros((2, 3))), rank(np.eye(3))
    (1, 0, 3)
    """
    cfg = resolve_config(cfg)
    A = as_matrix(A)
    s = singular_values(A)
    return int(np.count_nonzero(s > cfg.rank_cutoff(A.shape, s[0])))


def pinv_rank_factorization(F: MatrixLike, G: MatrixLike, cfg: Optional[ToleranceConfig] = None) -> Matrix:
    """
    Pseudoinverse of A = F G from a rank factorization, G* (F* A G*)^-1 F*.

    >>> pinv_rank_factorization([[1], [1]], [1, -1]).round(12).tolist()
    [[0.25, 0.25], [-0.25, -0.25]]
    >>> pinv_rank_factorization([[2], [0]], [[3]]).round(12).tolist()
    [[0.166666666667, 0.0]]

    Args:
        F:    m x r factor of full column rank
        G:    r x n factor of full row rank
        cfg:  tolerance configuration, used to decide whether F* A G* is singular

    Returns:
        n x m pseudoinverse of F G

    Raises:
        RankFactorizationError: F* A G* is numerically singular
    """
    cfg = resolve_config(cfg)
    F = as_matrix(F)
    G = as_matrix(G)
    if F.shape[1] != G.shape[0]:
        raise ValueError(f"Factors are not conformant: F is {F.shape}, G is {G.shape}")
    r = F.shape[1]
    F_h = F.conj().T
    G_h = G.conj().T
    core = F_h @ (F @ G) @ G_h
    core_rank = rank(core, cfg)
    if core_rank < r:
        raise RankFactorizationError(
            f"F* A G* has rank {core_rank} < {r}: F {F.shape} and G {G.shape} are not a rank factorization"
        )
    return G_h @ scipy.linalg.solve(core, F_h, check_finite=False)


def _relative(residual: float, reference: float) -> float:
    return residual / reference if reference > 0 else residual


def penrose_residuals(A: MatrixLike, X: MatrixLike) -> Tuple[float, float, float, float]:
    """
    Relative Frobenius residuals of the four Penrose conditions for a candidate inverse X of A.

    >>> A = [[0.5, -0.5], [0.5, -0.5]]
    >>> max(penrose_residuals(A, pinv(A))) < 1e-14
    True

    Returns:
        (|AXA - A| / |A|, |XAX - X| / |X|, |(AX)* - AX| / |AX|, |(XA)* - XA| / |XA|)
    """
    A = as_matrix(A)
    X = as_matrix(X)
    AX = A @ X
    XA = X @ A
    norm = np.linalg.norm
    return (
        _relative(norm(AX @ A - A), norm(A)),
        _relative(norm(XA @ X - X), norm(X)),
        _relative(norm(AX.conj().T - AX), norm(AX)),
        _relative(norm(XA.conj().T - XA), norm(XA))
    )