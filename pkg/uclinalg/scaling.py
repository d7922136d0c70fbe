"""
Diagonal scale functions.

The left scale function normalizes every nonzero row to unit Euclidean norm.  The general-diagonal scale
functions find positive diagonals dl, dr for which every nonzero row and column of diag(dl) A diag(dr) has
nonzero magnitudes multiplying to 1.  That balanced matrix is unique even when (dl, dr) is not, and it is
unchanged by positive diagonal rescaling, permutation and unitary-diagonal phase changes of A, which is
what makes it the foundation of the unit-consistent inverse.

Three constructions are provided: a closed form for matrices without zero entries, the log-domain
alternating mean-subtraction over the support (which handles zeros and zero rows/columns), and a
Sinkhorn-type iteration driven by a selectable size function.  Scalings are computed from |A| only; the
phases of A are carried into the balanced matrix by forming it as dl[i] * A[i, j] * dr[j].
"""
from typing import Optional, Iterator

import numpy as np

from uclinalg.core import ToleranceConfig, resolve_config, as_matrix
from uclinalg.errors import BalancingConvergenceError, PreconditionError
from uclinalg.size.base import SizeFunction
from uclinalg.size.types import GeometricMean
from uclinalg.typing import MatrixLike, Matrix, Vector, DiagonalMatrix
from uclinalg.utils.util import get_defined_slots, log_print

__all__ = (
    "GeneralScaling",
    "left_scale",
    "right_scale",
    "closed_form_general_scale",
    "dscale",
    "size_of",
    "sinkhorn_scale",
    "general_scale"
)


class GeneralScaling:
    """Positive diagonal scalings (dl, dr) together with the balanced matrix diag(dl) A diag(dr)"""

    __slots__ = (
        "dl",
        "dr",
        "scaled",
        "iterations"
    )

    def __init__(self, dl: Vector, dr: Vector, scaled: MatrixLike, iterations: int = 0) -> None:
        """
        Positive diagonal scalings (dl, dr) together with the balanced matrix diag(dl) A diag(dr).

        Args:
            dl:          diagonal of the left scaling, length m, strictly positive
            dr:          diagonal of the right scaling, length n, strictly positive
            scaled:      m x n balanced matrix
            iterations:  number of balancing sweeps performed, 0 for the closed form
        """
        scaled = as_matrix(scaled)
        dl = np.array(dl, dtype=np.float64).ravel()
        dr = np.array(dr, dtype=np.float64).ravel()
        if (dl.size, dr.size) != scaled.shape:
            raise ValueError(
                f"Scalings of lengths {dl.size} and {dr.size} do not match a scaled matrix of shape {scaled.shape}"
            )
        if not (np.isfinite(dl).all() and np.isfinite(dr).all() and (dl > 0).all() and (dr > 0).all()):
            raise ValueError("Scalings 'dl' and 'dr' must be finite and strictly positive")
        if not isinstance(iterations, (int, np.integer)) or iterations < 0:
            raise ValueError(f"'iterations' must be a nonnegative integer, got {iterations}")
        dl.setflags(write=False)
        dr.setflags(write=False)
        self.dl = dl
        self.dr = dr
        self.scaled = scaled
        self.iterations = int(iterations)

    @property
    def rank_one(self) -> Matrix:
        """Rank-1 matrix dl dr^T whose Hadamard product with A is the balanced matrix"""
        return np.outer(self.dl, self.dr)

    def __iter__(self) -> Iterator:
        # Unpacks as (dl, dr, scaled).
        return iter((self.dl, self.dr, self.scaled))

    def __repr__(self) -> str:
        fields = ', '.join(f'{slot}={getattr(self, slot)!r}' for slot in get_defined_slots(type(self)))
        return f"{type(self).__name__}({fields})"


def _apply(dl: Vector, A: Matrix, dr: Vector) -> Matrix:
    return dl[:, np.newaxis] * A * dr[np.newaxis, :]


def _require_nonzero(A: Matrix, operation: str) -> None:
    if not A.any():
        raise PreconditionError(f"{operation} requires a matrix with at least one nonzero entry")


def left_scale(A: MatrixLike) -> DiagonalMatrix:
    """
    Left scale function: the reciprocal Euclidean norm of every nonzero row, 1 for zero rows.

    diag(left_scale(A)) A is unchanged when A is replaced by D A for a nonsingular diagonal D, or by A R for
    a unitary R.

    >>> left_scale([[3, 4], [0, 0]]).tolist()
    [0.2, 1.0]
    >>> left_scale([[1, -1], [1, -1]]).round(12).tolist()
    [0.707106781187, 0.707106781187]

    Args:
        A:  m x n operand

    Returns:
        diagonal of the m x m positive scaling
    """
    A = as_matrix(A)
    norms = np.linalg.norm(A, axis=1)
    scale = np.ones(A.shape[0])
    nonzero = norms > 0
    scale[nonzero] = 1 / norms[nonzero]
    return scale


def right_scale(A: MatrixLike) -> DiagonalMatrix:
    """
    Right scale function, the left one applied to A*: reciprocal norms of the nonzero columns.

    >>> right_scale([[3, 0], [4, 0]]).tolist()
    [0.2, 1.0]
    """
    return left_scale(as_matrix(A).conj().T)


def closed_form_general_scale(A: MatrixLike) -> GeneralScaling:
    """
    General-diagonal scaling of a matrix without zero entries, in closed form.

    With L = log|A|, the balanced log-magnitudes are L - rowmean(L) - colmean(L) + mean(L), which splits into
    u 1^T + 1 v^T + L with u = mean(L)/2 - rowmean(L) and v = mean(L)/2 - colmean(L).

    >>> s = closed_form_general_scale([[1, 2], [3, 4]])
    >>> s.scaled.round(5).tolist()
    [[0.9036, 1.10668], [1.10668, 0.9036]]
    >>> s.iterations
    0
    >>> closed_form_general_scale([[2, 0.5], [0.5, 2]]).dl.round(12).tolist()
    [1.0, 1.0]

    Args:
        A:  m x n operand without zero entries

    Returns:
        GeneralScaling with iterations = 0

    Raises:
        PreconditionError: A has a zero entry; use ``dscale`` instead
    """
    A = as_matrix(A)
    magnitudes = np.abs(A)
    if not (magnitudes > 0).all():
        raise PreconditionError("closed_form_general_scale requires a matrix without zero entries; use dscale")
    L = np.log(magnitudes)
    half_mean = L.mean() / 2
    dl = np.exp(half_mean - L.mean(axis=1))
    dr = np.exp(half_mean - L.mean(axis=0))
    return GeneralScaling(dl, dr, _apply(dl, A, dr), iterations=0)


def dscale(A: MatrixLike, cfg: Optional[ToleranceConfig] = None) -> GeneralScaling:
    """
    General-diagonal scaling of an arbitrary nonzero matrix.

    Works on the log-magnitudes over the support mask: every sweep subtracts from each nonzero column the
    mean of its supported log-magnitudes, then does the same for each nonzero row, accumulating the
    subtracted means into log(dr) and log(dl).  Iteration stops once the mean absolute column adjustment
    plus the mean absolute row adjustment of a sweep falls below ``cfg.balance_tol``.  Rows and columns
    that are entirely zero keep scale 1.

    >>> dscale([[1, 2], [0, 0]]).scaled.round(12).tolist()
    [[1.0, 1.0], [0.0, 0.0]]
    >>> dscale([[2, 3], [0, 5]]).scaled.round(10).tolist()
    [[1.0, 1.0], [0.0, 1.0]]
    >>> np.allclose(dscale([[1, 2], [3, 4]]).scaled, closed_form_general_scale([[1, 2], [3, 4]]).scaled)
    True

    Args:
        A:    m x n operand with at least one nonzero entry
        cfg:  tolerance configuration (balance_tol, max_iter)

    Returns:
        GeneralScaling with the number of sweeps performed

    Raises:
        PreconditionError:          A is entirely zero
        BalancingConvergenceError:  cfg.max_iter sweeps were not enough
    """
    cfg = resolve_config(cfg)
    A = as_matrix(A)
    _require_nonzero(A, 'dscale')
    m, n = A.shape

    magnitudes = np.abs(A)
    support = magnitudes > 0
    weights = support.astype(np.float64)
    L = np.zeros((m, n))
    L[support] = np.log(magnitudes[support])

    row_counts = weights.sum(axis=1)
    col_counts = weights.sum(axis=0)
    rows = row_counts > 0
    cols = col_counts > 0
    u = np.zeros(m)
    v = np.zeros(n)

    dx = np.inf
    for sweep in range(1, cfg.max_iter + 1):
        p = L[:, cols].sum(axis=0) / col_counts[cols]
        L[:, cols] -= p * weights[:, cols]
        v[cols] -= p
        dx = np.abs(p).mean()

        p = L[rows].sum(axis=1) / row_counts[rows]
        L[rows] -= p[:, np.newaxis] * weights[rows]
        u[rows] -= p
        dx += np.abs(p).mean()

        if dx < cfg.balance_tol:
            break
    else:
        log_print("dscale: no convergence on {} operand after {} sweeps, dx={:.3e}", A.shape, cfg.max_iter, dx)
        raise BalancingConvergenceError(float(dx), cfg.max_iter)

    log_print("dscale: converged on {} operand after {} sweeps, dx={:.3e}", A.shape, sweep, dx)
    dl = np.exp(u)
    dr = np.exp(v)
    return GeneralScaling(dl, dr, _apply(dl, A, dr), iterations=sweep)


def size_of(u: MatrixLike, f: SizeFunction) -> float:
    """
    Size of a vector under a composable size function.

    >>> from uclinalg.size.types import PNorm, RatioAB
    >>> [round(size_of([1, 1, 0, 1], f), 12) for f in (GeometricMean(), PNorm(3), RatioAB(2, 1))]
    [1.0, 1.0, 1.0]

    Args:
        u:  1-D array of real or complex scalars
        f:  size function

    Returns:
        nonnegative size, 0 for the zero vector
    """
    if not isinstance(f, SizeFunction):
        raise TypeError("'f' must be an instance of SizeFunction")
    u = np.ravel(np.asarray(u))
    if not np.isfinite(u).all():
        raise ValueError("Vector entries must be finite (no NaN or Inf)")
    return f.size(u)


def sinkhorn_scale(A: MatrixLike, f: SizeFunction, cfg: Optional[ToleranceConfig] = None) -> GeneralScaling:
    """
    General-diagonal scaling by a Sinkhorn-type iteration: alternately divide every nonzero row, then every
    nonzero column, by its size under f, until the mean absolute log-adjustment of a sweep falls below
    ``cfg.balance_tol``.  Zero rows and columns keep scale 1.

    With the geometric mean the balanced matrix agrees with ``dscale``.  Other size functions may have no
    finite scaling on some supports; the iteration then fails rather than returning a partial result.

    >>> sinkhorn_scale([[2, 3], [0, 5]], GeometricMean()).scaled.round(10).tolist()
    [[1.0, 1.0], [0.0, 1.0]]

    Args:
        A:    m x n operand with at least one nonzero entry
        f:    size function driving the normalization
        cfg:  tolerance configuration (balance_tol, max_iter)

    Returns:
        GeneralScaling with the number of sweeps performed

    Raises:
        PreconditionError:          A is entirely zero
        BalancingConvergenceError:  cfg.max_iter sweeps were not enough, or the scaling diverged
    """
    if not isinstance(f, SizeFunction):
        raise TypeError("'f' must be an instance of SizeFunction")
    cfg = resolve_config(cfg)
    A = as_matrix(A)
    _require_nonzero(A, 'sinkhorn_scale')

    current = np.abs(A)
    rows = current.any(axis=1)
    cols = current.any(axis=0)
    log_dl = np.zeros(A.shape[0])
    log_dr = np.zeros(A.shape[1])

    dx = np.inf
    with np.errstate(over='ignore', under='ignore', divide='ignore', invalid='ignore'):
        for sweep in range(1, cfg.max_iter + 1):
            row_sizes = f.sizes(current[rows], axis=1)
            current[rows] /= row_sizes[:, np.newaxis]
            row_logs = np.log(row_sizes)
            log_dl[rows] -= row_logs

            col_sizes = f.sizes(current[:, cols], axis=0)
            current[:, cols] /= col_sizes
            col_logs = np.log(col_sizes)
            log_dr[cols] -= col_logs

            dx = np.abs(row_logs).mean() + np.abs(col_logs).mean()
            if not np.isfinite(dx):
                log_print("sinkhorn_scale: {} diverged on {} operand at sweep {}", f, A.shape, sweep)
                raise BalancingConvergenceError(float(dx), sweep)
            if dx < cfg.balance_tol:
                break
        else:
            log_print("sinkhorn_scale: {} did not converge on {} operand, dx={:.3e}", f, A.shape, dx)
            raise BalancingConvergenceError(float(dx), cfg.max_iter)

    log_print("sinkhorn_scale: {} converged on {} operand after {} sweeps, dx={:.3e}", f, A.shape, sweep, dx)
    dl = np.exp(log_dl)
    dr = np.exp(log_dr)
    if not (np.isfinite(dl).all() and np.isfinite(dr).all() and (dl > 0).all() and (dr > 0).all()):
        raise BalancingConvergenceError(float(dx), sweep)
    return GeneralScaling(dl, dr, _apply(dl, A, dr), iterations=sweep)


def general_scale(A: MatrixLike,
                  cfg: Optional[ToleranceConfig] = None,
                  size_fn: Optional[SizeFunction] = None) -> GeneralScaling:
    """
    General-diagonal scaling with a selectable construction: the log-domain ``dscale`` for the geometric
    mean (or when no size function is given), ``sinkhorn_scale`` otherwise.
    """
    if size_fn is None or isinstance(size_fn, GeometricMean):
        return dscale(A, cfg)
    return sinkhorn_scale(A, size_fn, cfg)
