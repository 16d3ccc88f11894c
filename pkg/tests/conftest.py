import random

import numpy as np
import pytest
from hypothesis import strategies as st

from cantor_spectra.system import build_system

# a hand-drawn labeling for N = 8, D = {0, 2, 4, 6}
DRAWN_CHILD_SETS = {
    (): (0, 2, 5, 7),
    (0,): (0, 3, 5, 6),
    (2,): (0, 1, 6, 7),
    (5,): (1, 2, 3, 4),
    (7,): (0, 1, 3, 6),
    (0, 5): (2, 4, 5, 7),
    (5, 2): (1, 4, 6, 7),
}


@pytest.fixture
def s4():
    return build_system(2, 2, [0, 2])


@pytest.fixture
def s8():
    return build_system(2, 3, [0, 2, 4, 6])


@pytest.fixture
def s3():
    return build_system(3, 1, [0, 1, 2])


@pytest.fixture
def rng():
    return random.Random(20240611)


def numeric_mask(D, t, norm):
    return sum(np.exp(2j * np.pi * d * t) for d in D) / norm


@st.composite
def systems(draw, max_digits=6):
    """Random valid (p, alpha, D) triples with small N."""
    p = draw(st.sampled_from([2, 3, 5]))
    alpha = draw(st.integers(1, 3 if p < 5 else 2))
    N = p**alpha
    m = draw(st.integers(1, min(N, max_digits)))
    residues = draw(st.lists(st.integers(0, N - 1), min_size=m, max_size=m, unique=True))
    lifts = draw(st.lists(st.integers(0, 3), min_size=m, max_size=m))
    return build_system(p, alpha, [r + N * c for r, c in zip(residues, lifts)])
