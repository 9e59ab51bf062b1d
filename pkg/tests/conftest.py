import pytest

from eclat.analysis import iter_curve_coeffs
from eclat.curve import Curve, enumerate_places
from eclat.field import PrimeField


def make_table(p, coeffs):
    return enumerate_places(Curve(PrimeField(p), coeffs))


@pytest.fixture(scope="session")
def t9():
    """F_5, y^2 = x^3 + x + 1: n = 9, eps = 1."""
    return make_table(5, (1, 0, 1, 1))


@pytest.fixture(scope="session")
def t8():
    """F_5, y^2 = x^3 - x: n = 8, eps = 4."""
    return make_table(5, (1, 0, 4, 0))


def _first_with_n(p_list, n):
    for p in p_list:
        for coeffs in iter_curve_coeffs(p):
            table = make_table(p, coeffs)
            if table.n == n:
                return table
    raise RuntimeError(f"no curve with n={n} in {p_list}")


@pytest.fixture(scope="session")
def t3():
    return _first_with_n([5, 7], 3)


@pytest.fixture(scope="session")
def t4():
    return _first_with_n([5, 7], 4)


@pytest.fixture(scope="session")
def t5():
    return _first_with_n([5, 7], 5)
