import numpy as np
import pytest

# first-quadrant and full-circle crossing tables for R=5, three decimals
R5_REAL_AXIS = [0.000, 0.546, 1.377, 2.179, 3.142, 4.105, 4.906, 5.737]
R5_IMAG_AXIS = [0.264, 0.875, 2.735, 3.548, 5.408, 6.019]
R5_PHYSICAL = [0.264, 0.546, 0.875, 1.377]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
