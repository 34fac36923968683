import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import chord, elliptic, neg_hyp, pos_hyp
from ech_kit.core import (
    EMPTY,
    HALF,
    HalfInt,
    OrbitChordSet,
    ReebDatum,
    TrivializationOffset,
    action_of,
    format_rational,
    parse_rational,
    parse_set_label,
    set_label,
    set_union,
    trivialization_difference,
)
from ech_kit.errors import ConventionError, InputError, NotHalfIntegral, ResolutionError

halves = st.integers(-10**6, 10**6).map(lambda n: HalfInt(twice=n))


@given(halves, halves)
def test_halfint_ring_ops_match_fractions(a, b):
    assert (a + b).to_fraction() == a.to_fraction() + b.to_fraction()
    assert (a - b).to_fraction() == a.to_fraction() - b.to_fraction()
    assert (a < b) == (a.to_fraction() < b.to_fraction())
    if a.is_integer or b.is_integer:
        assert (a * b).to_fraction() == a.to_fraction() * b.to_fraction()


@given(halves)
def test_halfint_json_roundtrip(a):
    assert HalfInt.from_json(json.loads(json.dumps(a.to_json()))) == a


def test_halfint_product_leaving_half_integers_raises():
    with pytest.raises(NotHalfIntegral):
        HALF * HALF


def test_halfint_rejects_third():
    with pytest.raises((NotHalfIntegral, InputError)):
        HalfInt(Fraction(1, 3))


def test_halve_requires_integer():
    assert HalfInt(3).halve() == HalfInt(Fraction(3, 2))
    with pytest.raises(NotHalfIntegral):
        HALF.halve()


def test_rational_text_roundtrip():
    for text in ["3/2", "-1/2", "0", "7"]:
        assert format_rational(parse_rational(text)) == text


def test_action_examples():
    e = elliptic("2/5", "e", "3/2")
    c = chord("1/2", "c", 1)
    d = ReebDatum([e], [c], ["L"])
    assert action_of(EMPTY, d) == 0
    assert action_of(OrbitChordSet({"e": 2}), d) == 3
    assert action_of(OrbitChordSet({"e": 1, "c": 1}), d) == Fraction(5, 2)


def test_unknown_name_is_a_resolution_error():
    d = ReebDatum([elliptic("2/5", "e")], [], [])
    with pytest.raises(ResolutionError, match="zz"):
        action_of(OrbitChordSet({"zz": 1}), d)


def test_union():
    g1, g2, c = OrbitChordSet({"g": 1}), OrbitChordSet({"g": 2}), OrbitChordSet({"c": 1})
    assert set_union(EMPTY, g2) == g2
    assert set_union(g1, g2) == OrbitChordSet({"g": 3})
    assert set_union(g1, c) == OrbitChordSet({"g": 1, "c": 1})


def test_trivialization_difference_examples():
    assert trivialization_difference(TrivializationOffset(), OrbitChordSet({"g": 5})) == 0
    assert trivialization_difference(TrivializationOffset(g=1), OrbitChordSet({"g": 3})) == 3
    assert trivialization_difference(TrivializationOffset(c=HALF), OrbitChordSet({"c": 2})) == 1


def test_orbit_offsets_must_be_integral():
    d = ReebDatum([elliptic("2/5", "g")], [chord("1/2")], ["L"])
    TrivializationOffset(c=HALF).check(d)
    with pytest.raises(ConventionError):
        TrivializationOffset(g=HALF).check(d)


def test_labels_roundtrip():
    for s in [EMPTY, OrbitChordSet({"c": 1, "e": 2}), OrbitChordSet({"x": 3})]:
        assert parse_set_label(set_label(s)) == s
    assert set_label(OrbitChordSet({"e": 2, "c": 1})) == "c*e^2"
    assert set_label(EMPTY) == "[]"


def test_set_rejects_bad_multiplicity():
    with pytest.raises(InputError):
        OrbitChordSet({"g": 0})


def test_datum_json_roundtrip():
    d = ReebDatum(
        [elliptic("2/5", "e", "3/2", "g"), pos_hyp(2, "h", 2), neg_hyp(-1, "n", "7/3")],
        [chord("1/2", "c", 1, "L1", "L2", "k")],
        ["L1", "L2"],
    )
    text = json.dumps(d.to_json())
    assert ReebDatum.loads(text).to_json() == d.to_json()


def test_chord_needs_strict_half_integer_index():
    with pytest.raises(InputError):
        chord(1)
