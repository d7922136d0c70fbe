import numpy as np


def pytest_configure(config):
    # Doctests were written against NumPy 1.x scalar reprs (True rather than np.True_)
    if int(np.__version__.split('.')[0]) >= 2:
        np.set_printoptions(legacy='1.25')
