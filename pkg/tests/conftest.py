import pytest

from rainbowcw import PureComplex, alexander_dual_complex, diagonal_order, weight_order


@pytest.fixture(scope="session")
def order35():
    return diagonal_order(3, 5)


@pytest.fixture(scope="session")
def dual35():
    """The worked 3x5 example: dual complex {(1,2,3), (3,4,5)}."""
    return PureComplex(3, 5, [(1, 2, 3), (3, 4, 5)])


@pytest.fixture(scope="session")
def delta35(dual35):
    return alexander_dual_complex(dual35)


# Two reference 2x4 weight orders realizing the textbook cell pictures: the
# first selects the antidiagonal term on column pairs {1,2}, {1,3}, {1,4},
# {3,4} and the diagonal term on {2,3}, {2,4}; the second is antidiagonal
# exactly on {1,3} and {2,3}.
@pytest.fixture(scope="session")
def order24_left():
    return weight_order(2, 4, [(0, 3, 1, 2), (0, 0, 0, 0)])


@pytest.fixture(scope="session")
def order24_right():
    return weight_order(2, 4, [(2, 1, 3, 0), (0, 0, 0, 0)])


LEFT_VERTEX_LABELS = {
    "x[1,2] * x[2,4]",
    "x[1,2] * x[2,3]",
    "x[1,4] * x[2,3]",
    "x[1,2] * x[2,1]",
    "x[1,4] * x[2,1]",
    "x[1,3] * x[2,1]",
}

RIGHT_VERTEX_LABELS = {
    "x[1,3] * x[2,1]",
    "x[1,3] * x[2,4]",
    "x[1,2] * x[2,4]",
    "x[1,3] * x[2,2]",
    "x[1,1] * x[2,4]",
    "x[1,1] * x[2,2]",
}
