import pytest

from helpers import line_matrix


@pytest.fixture
def line():
    """Distance matrix of the points 0, 1, 10, 11 on a line."""
    return line_matrix()
