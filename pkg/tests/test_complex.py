import json
from fractions import Fraction

import pytest

from conftest import chord, elliptic, pos_hyp
from ech_kit import complex as C
from ech_kit import sampling
from ech_kit.core import EMPTY, OrbitChordSet, ReebDatum, action_of, parse_set_label
from ech_kit.errors import PositivityError, ResolutionError
from ech_kit.verification import brute_force_sets, three_clause_generator

S = parse_set_label


@pytest.fixture
def ce():
    return ReebDatum([elliptic("3/7", "e", "3/2", "g")], [chord("1/2", "c", 1, h1="h")], ["L"])


@pytest.fixture
def abcd():
    d = ReebDatum([elliptic("1/3", "a", 5), elliptic("1/5", "b", 4), elliptic("2/7", "c", 3), elliptic("3/7", "d", 1)], [], [])
    return C.ComplexSpec(d, 5, tuple(S(x) for x in "abcd"), {})


def test_enumeration_example(ce):
    got = [s.label for s in C.enumerate_sets(ce, 3)]
    assert got == ["[]", "c", "e", "c^2", "c*e", "c^3", "e^2"]


def test_enumeration_trivial_cases(ce):
    assert C.enumerate_sets(ce, Fraction(1, 2)) == [EMPTY]
    assert C.enumerate_sets(ReebDatum([], [], []), 10) == [EMPTY]


def test_enumeration_matches_product_expansion(rng):
    for _ in range(20):
        d = sampling.random_small_datum(rng)
        L = Fraction(int(rng.integers(1, 25)), 4)
        got = C.enumerate_sets(d, L)
        assert sorted(got, key=lambda s: s.label) == sorted(brute_force_sets(d, L), key=lambda s: s.label)
        assert [action_of(s, d) for s in got] == sorted(action_of(s, d) for s in got)
        for s in got:
            assert C.is_ech_generator(s, d)[0] == three_clause_generator(s, d)


def test_generator_examples():
    d = ReebDatum([elliptic("3/7", "e"), pos_hyp(0, "h")], [chord("1/2", "c1"), chord("1/2", "c2", src="L", dst="M")], ["L", "M"])
    assert C.is_ech_generator(OrbitChordSet({"e": 7}), d)[0]
    assert not C.is_ech_generator(OrbitChordSet({"h": 2}), d)[0]
    ok, reason = C.is_ech_generator(OrbitChordSet({"c1": 1, "c2": 1}), d)
    assert not ok and "'L'" in reason


def test_classes(ce):
    assert C.h1_class(EMPTY, ce) == "0"
    assert C.h1_class(OrbitChordSet({"e": 2}), ce) == "2g"
    assert C.h1_class(OrbitChordSet({"e": 1, "c": 1}), ce) == "g+h"


def test_build_examples(ce):
    assert C.build_complex(ce, 3).labels == ["[]", "c", "e", "c*e", "e^2"]
    assert C.build_complex(ReebDatum([], [], []), 3).labels == ["[]"]
    only = ReebDatum([], [chord("1/2", "c", 2)], ["L"])
    assert C.build_complex(only, 2).labels == ["[]", "c"]


def test_differential_examples(abcd):
    assert C.verify_differential(abcd, C.DifferentialCounts()).passed
    sq = C.DifferentialCounts({("a", "b"): 1, ("a", "c"): 1, ("b", "d"): 1, ("c", "d"): 1})
    assert C.verify_differential(abcd, sq).passed
    v = C.verify_differential(abcd, C.DifferentialCounts({("a", "b"): 1, ("b", "c"): 1}))
    assert not v.passed and v.witness == ("a", "c") and v.middles == ("b",)


def test_counts_are_mod_two(abcd):
    assert C.verify_differential(abcd, C.DifferentialCounts({("a", "b"): 2, ("b", "c"): 1})).passed


def test_admissibility(abcd):
    assert not C.verify_differential(abcd, C.DifferentialCounts({("d", "a"): 1})).passed
    with pytest.raises(ResolutionError):
        C.verify_differential(abcd, C.DifferentialCounts({("a", "zz"): 1}))


def test_class_must_be_preserved(ce):
    spec = C.build_complex(ce, 3)
    v = C.verify_differential(spec, C.DifferentialCounts({("e", "c"): 1}))
    assert not v.passed


def test_reordering_invariance(abcd):
    for counts in [
        C.DifferentialCounts({("a", "b"): 1, ("a", "c"): 1, ("b", "d"): 1, ("c", "d"): 1}),
        C.DifferentialCounts({("a", "b"): 1, ("b", "c"): 1}),
    ]:
        base = C.verify_differential(abcd, counts)
        for order in [(3, 2, 1, 0), (1, 3, 0, 2)]:
            again = C.verify_differential(abcd.reordered(order), counts)
            assert (again.passed, again.witness) == (base.passed, base.witness)


def test_extended_examples(abcd):
    assert C.verify_extended_differential(abcd, C.DifferentialCounts(t_entries={})).passed
    ext = C.DifferentialCounts(
        t_entries={("a", "b"): [(1, 1)], ("a", "c"): [(1, 1)], ("b", "d"): [(2, 1)], ("c", "d"): [(2, 1)]}
    )
    assert C.verify_extended_differential(abcd, ext).passed
    assert C.verify_differential(abcd, ext.specialized()).passed
    with pytest.raises(PositivityError):
        C.DifferentialCounts(t_entries={("a", "b"): [(-1, 1)]})


def test_extended_differs_from_specialization(abcd):
    # the powers of t do not cancel: ∂²a = (t + t²)·d ≠ 0, yet at t = 1 it vanishes
    ext = C.DifferentialCounts(
        t_entries={("a", "b"): [(0, 1)], ("a", "c"): [(1, 1)], ("b", "d"): [(1, 1)], ("c", "d"): [(1, 1)]}
    )
    assert not C.verify_extended_differential(abcd, ext).passed
    assert C.verify_differential(abcd, ext.specialized()).passed


def test_spec_json_roundtrip(ce):
    spec = C.build_complex(ce, 3)
    again = C.ComplexSpec.from_json(json.loads(json.dumps(spec.to_json())))
    assert again.labels == spec.labels and again.class_of == spec.class_of


def test_counts_json():
    c = C.DifferentialCounts.from_json({"entries": [{"from": "a", "to": "b", "count": 3}], "t_entries": [{"from": "a", "to": "b", "terms": [[0, 1], [2, 1]]}]})
    assert c.entries == {("a", "b"): 1}
    assert c.t_entries == {("a", "b"): 0b101}
