import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import chord, elliptic, neg_hyp, pos_hyp
from ech_kit import cz
from ech_kit.core import HALF, HalfInt, OrbitChordSet, ReebDatum, TrivializationOffset
from ech_kit.errors import ChordParityError, ConventionError, DegeneracyError, NonDegeneracyError, ResolutionLimitError

H = lambda x: HalfInt(Fraction(x))


def rotation_cz_oracle(theta: Fraction, k: int) -> int:
    """CZ of the iterate of a rotation by 2πθ, from the rotation interval.

    The linearized flow rotates by 2πkθ; the index is 2n+1 when the total
    rotation lies strictly between n and n+1 full turns.
    """
    x = k * theta
    lo = math.floor(x)
    assert lo < x < lo + 1
    return 2 * lo + 1


def test_orbit_examples():
    g = elliptic("2/5")
    assert cz.cz_orbit_iterate(g, 1) == 1
    assert cz.cz_orbit_iterate(g, 2) == 1
    assert all(cz.cz_orbit_iterate(pos_hyp(0), k) == 0 for k in range(1, 6))
    assert cz.cz_orbit_iterate(neg_hyp(1), 3) == 3


@given(st.integers(2, 41).flatmap(lambda q: st.tuples(st.integers(1, q - 1), st.just(q))), st.integers(1, 12), st.integers(-3, 3))
def test_elliptic_iterate_matches_rotation_oracle(pq, k, d):
    theta = Fraction(*pq)
    if (k * theta).denominator == 1:
        with pytest.raises(DegeneracyError):
            cz.cz_orbit_iterate(elliptic(theta), k)
        return
    assert cz.cz_orbit_iterate(elliptic(theta), k, d) == rotation_cz_oracle(theta, k) + 2 * k * d


def test_orbit_offset_must_be_integer():
    with pytest.raises(ConventionError):
        cz.cz_orbit_iterate(elliptic("2/5"), 1, HALF)


def test_chord_examples():
    assert cz.cz_ech_chord(H("1/2"), 3) == H("3/2")
    assert cz.cz_ech_chord(H("-1/2"), 2) == -2
    for c in ["1/2", "-3/2", "5/2"]:
        assert cz.cz_ech_chord(H(c), 1) == H(c)
    with pytest.raises(ChordParityError):
        cz.cz_ech_chord(HalfInt(1), 2)


@given(st.integers(-6, 6), st.integers(1, 8))
def test_chord_term_matches_its_closed_form(n, m):
    # cz = n + 1/2: the term is m/2 + m(m+1)/2 * n
    assert cz.cz_ech_chord(HalfInt(Fraction(2 * n + 1, 2)), m).to_fraction() == Fraction(m, 2) + Fraction(m * (m + 1), 2) * n


def test_orbit_ech_term_examples():
    assert cz.cz_ech_orbit(elliptic("2/5"), 2) == 2
    assert cz.cz_ech_orbit(pos_hyp(0), 3) == 0
    assert cz.cz_ech_orbit(neg_hyp(1), 2) == 3


def test_set_examples():
    d = ReebDatum([elliptic("2/5", "g")], [chord("-1/2", "c"), chord("3/2", "c2", src="M", dst="M")], ["L", "M"])
    assert cz.cz_ech_set(OrbitChordSet(), d) == 0
    assert cz.cz_ech_set(OrbitChordSet({"c": 2}), d) == -2
    assert cz.cz_ech_set(OrbitChordSet({"g": 2, "c2": 1}), d) == H("7/2")


def test_ind_examples():
    d = ReebDatum([elliptic("2/5", "g")], [chord("1/2", "c")], ["L"])
    assert cz.cz_ind_set([("g", [2])], d) == 1
    assert cz.cz_ind_set([("g", [1, 1])], d) == 2
    assert cz.cz_ind_set([("c", [1])], d) == H("1/2")


def test_change_examples():
    g = elliptic("2/5")
    assert cz.cz_ech_change(g, 3, 0) == 0
    assert cz.cz_ech_change(g, 1, 1) == 2
    assert cz.cz_ech_change(g, 3, 1) == 12


@given(st.integers(1, 7), st.integers(-3, 3), st.booleans())
def test_change_law(m, d2, is_chord):
    if is_chord:
        el, d = chord("1/2"), HalfInt(twice=d2)
    else:
        el, d = elliptic("3/17"), HalfInt(d2)
    assert cz.cz_ech_change(el, m, d) == d * (m * (m + 1))


def test_lagrangian_path_examples():
    path = lambda f: cz.LagrangianPath.from_function(f)
    assert cz.cz_lagrangian_path(path(lambda t: math.pi * t / 2)) == H("1/2")
    assert cz.cz_lagrangian_path(path(lambda t: math.pi * 2.5 * t)) == H("5/2")
    assert cz.cz_lagrangian_path(path(lambda t: -math.pi * t / 2)) == H("-1/2")


def test_lagrangian_path_is_blind_to_the_mod_pi_representative(rng):
    t = np.linspace(0, 1, 200)
    theta = 1.3 * math.pi * t
    jumps = math.pi * rng.integers(-3, 4, size=t.size)
    assert cz.cz_lagrangian_path(cz.LagrangianPath(t, theta + jumps)) == cz.cz_lagrangian_path(cz.LagrangianPath(t, theta))


def test_lagrangian_path_errors():
    with pytest.raises(NonDegeneracyError):
        cz.cz_lagrangian_path(cz.LagrangianPath.from_function(lambda t: math.pi * t))
    with pytest.raises(ResolutionLimitError):
        cz.cz_lagrangian_path(cz.LagrangianPath(np.array([0.0, 1.0]), np.array([0.0, 0.5 * math.pi])))
