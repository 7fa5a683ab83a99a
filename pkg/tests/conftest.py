import math

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from chirpframe.atoms import GaussianAtom

settings.register_profile("chirpframe", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("chirpframe")

finite = dict(allow_nan=False, allow_infinity=False)


@st.composite
def atoms_st(draw, min_re=0.5, max_re=2.0):
    c = complex(draw(st.floats(-2, 2, **finite)), draw(st.floats(-2, 2, **finite)))
    if abs(c) < 1e-3:
        c = 1.0
    w = complex(draw(st.floats(min_re, max_re, **finite)), draw(st.floats(-2, 2, **finite)))
    ell = complex(draw(st.floats(-1, 1, **finite)), draw(st.floats(-1, 1, **finite)))
    return GaussianAtom(c, w, ell)


def random_atom(rng, re=(0.5, 2.0)):
    return GaussianAtom(complex(*rng.normal(size=2)), complex(rng.uniform(*re), rng.normal()),
                        complex(*rng.normal(scale=0.5, size=2)))


@pytest.fixture
def rng():
    return np.random.default_rng(1729)


GRID = np.linspace(-3, 3, 101)
SQRT2 = math.sqrt(2)
