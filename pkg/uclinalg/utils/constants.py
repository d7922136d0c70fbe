import numpy as np

__all__ = (
    "machine_eps",
    "default_balance_tol",
    "default_max_iter"
)

machine_eps = float(np.finfo(np.float64).eps)

# Threshold on the mean absolute log-adjustment of one balancing sweep.
default_balance_tol = 1e-12
default_max_iter = 1000
