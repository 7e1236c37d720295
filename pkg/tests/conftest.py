import pytest

from schurgen.core import GroundColoring


@pytest.fixture
def schur_2_coloring():
    # A_1 = {1, 4}, A_2 = {2, 3}
    return GroundColoring(2, (1, 2, 2, 1))
