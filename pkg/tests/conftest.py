import random

import pytest
from hypothesis import settings, strategies as st

from basilica.lamination import DIAM, Leaf
from basilica.triadic import normalize

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def angles(draw, max_level=6):
    level = draw(st.integers(0, max_level))
    return normalize(draw(st.integers(0, 2 * 3**level - 1)), level)


@st.composite
def leaves(draw, max_level=5):
    n = draw(st.integers(0, max_level))
    return DIAM if n == 0 else Leaf(draw(st.integers(0, 2 * 3 ** (n - 1) - 1)), n)


seeds = st.integers(0, 2**32 - 1)


@pytest.fixture
def rng():
    return random.Random(20240601)
