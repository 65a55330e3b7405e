import numpy as np
import pytest

from discokit import DiscotopeSpec
from discokit.dice import dice_discotope


@pytest.fixture(scope="session")
def dice():
    return dice_discotope()


@pytest.fixture(scope="session")
def seg_disc_disc():
    """Type (1,2,0): a diagonal segment plus two coordinate-plane unit discs."""
    e = np.eye(3)
    return DiscotopeSpec((
        np.array([[1.0], [1.0], [0.0]]),            # segment -1 <= x1 = x2 <= 1
        np.column_stack([e[:, 1], e[:, 2]]),        # x1 = 0 disc
        np.column_stack([e[:, 0], e[:, 2]]),        # x2 = 0 disc
    ))


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
