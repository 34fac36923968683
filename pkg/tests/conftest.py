import os
from fractions import Fraction

import numpy as np
import pytest

from ech_kit.core import ChordDescriptor, Elliptic, HalfInt, NegativeHyperbolic, OrbitDescriptor, PositiveHyperbolic, ReebDatum

SEED = int(os.environ.get("ECH_KIT_SEED", "0") or 0)


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def elliptic(theta, name="g", action=1, h1="0"):
    return OrbitDescriptor(name, Elliptic(Fraction(theta)), Fraction(action), h1)


def pos_hyp(r=0, name="h", action=1, h1="0"):
    return OrbitDescriptor(name, PositiveHyperbolic(r), Fraction(action), h1)


def neg_hyp(r=1, name="n", action=1, h1="0"):
    return OrbitDescriptor(name, NegativeHyperbolic(r), Fraction(action), h1)


def chord(cz, name="c", action=1, src="L", dst="L", h1="0"):
    return ChordDescriptor(name, HalfInt(Fraction(cz)), Fraction(action), src, dst, h1)


@pytest.fixture
def strip_datum():
    return ReebDatum([], [chord("1/2", "a", 1), chord("-1/2", "b", "1/2")], ["L"])
