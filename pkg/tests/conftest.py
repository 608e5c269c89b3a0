import numpy as np
import pytest

from sparsekit import Dictionary, build_dirac_dct, build_dirac_dct_random


@pytest.fixture(scope="session")
def dd128():
    return build_dirac_dct(128)


@pytest.fixture(scope="session")
def ddr128():
    return build_dirac_dct_random(128, seed=11)


def random_unit_dictionary(d, K, seed):
    """Custom dictionary with i.i.d. random unit-norm atoms."""
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((d, K))
    m /= np.linalg.norm(m, axis=0)
    return Dictionary(matrix=m)


@pytest.fixture(scope="session")
def dict_8x16():
    return random_unit_dictionary(8, 16, seed=5)


@pytest.fixture(scope="session")
def dict_8x12():
    return random_unit_dictionary(8, 12, seed=17)


@pytest.fixture(scope="session")
def dict_6x9():
    return random_unit_dictionary(6, 9, seed=23)
