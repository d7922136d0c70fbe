"""
Unit-consistent generalized matrix inverses, unit-invariant singular value decompositions and
the diagonal scalings they depend on.
"""
from uclinalg.core import ToleranceConfig, DEFAULT_TOLERANCE, as_matrix, svd, pinv, pinv_rank_factorization, rank
from uclinalg.decomp import UiSvdFactors, ui_svd, ui_singular_values, left_ui_svd, right_ui_svd, si_eigenvalues, \
    ui_signature
from uclinalg.inverses import BlockPartition, linv, rinv, ginv, mixed_block_inverse
from uclinalg.scaling import GeneralScaling, left_scale, right_scale, closed_form_general_scale, dscale, size_of, \
    sinkhorn_scale, general_scale
from uclinalg.size.types import GeometricMean, PNorm, RatioAB

__version__ = '1.0.0'
