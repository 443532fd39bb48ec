import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import settings

from spherefib.quaternions import ImaginaryUnit, UnitQuaternion

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")


@st.composite
def unit_quaternions(draw):
    comps = [
        draw(st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)) for _ in range(4)
    ]
    norm = math.sqrt(sum(c * c for c in comps))
    if norm < 0.1:
        comps[0] += 1.0
    return UnitQuaternion(*comps)


@st.composite
def imaginary_units(draw):
    comps = [
        draw(st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)) for _ in range(3)
    ]
    norm = math.sqrt(sum(c * c for c in comps))
    if norm < 0.1:
        comps[0] += 1.0
    return ImaginaryUnit(0.0, *comps)


angles = st.floats(-math.pi, math.pi, allow_nan=False, allow_infinity=False)
latitudes = st.floats(0.0, math.pi / 6.0, allow_nan=False, allow_infinity=False)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240809)
