import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.finalg import chain_algebra, field_product_algebra, truncated_polynomial_algebra  # noqa: E402
from core.polyalg import PolyRing  # noqa: E402


@pytest.fixture
def trunc():
    """F_2[x,y]/(x^2, xy, y^2)"""
    return truncated_polynomial_algebra(2, 2, 2)


@pytest.fixture
def chain22():
    return chain_algebra(2, 2)


@pytest.fixture
def chain33():
    return chain_algebra(3, 3)


@pytest.fixture
def fp22():
    return field_product_algebra(2, 2)


@pytest.fixture
def F2xy():
    return PolyRing(2, ("x", "y"))
