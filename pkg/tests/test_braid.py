import json
import math

import numpy as np
import pytest

from ech_kit import asymptotic
from ech_kit import braid as B
from ech_kit import sampling
from ech_kit.core import HALF, HalfInt
from ech_kit.errors import DisjointnessError, GenericityError, InputError, NonDegeneracyError

EPS = 0.5


def circle(fn, wraps=1):
    return B.strand_from_function(fn, B.CIRCLE, wraps)


def interval(fn):
    return B.strand_from_function(fn, B.INTERVAL)


def rotation_writhe(b: B.Braid, pairs=None) -> HalfInt:
    """Signed crossings counted as the net rotation, in half turns, of the
    line through each pair of sheets (counterclockwise positive)."""
    X, Y, *_ = B._sheets([b])
    total = 0.0
    n = X.shape[0]
    for a in range(n):
        for c in range(a + 1, n):
            if pairs is not None and not pairs(a, c):
                continue
            ang = np.arctan2(Y[a] - Y[c], X[a] - X[c])
            total += np.diff(np.unwrap(ang)).sum() / math.pi
    # each sheet pair's line returns to its start as a set, so the sum is integral
    assert abs(total - round(total)) < 1e-6
    return HalfInt(round(total))


def sheet_owner(b):
    owner = []
    for k, s in enumerate(b.strands):
        owner += [k] * s.wraps
    return owner


def test_constant_strands_have_no_crossings():
    b = B.Braid(B.CIRCLE, (circle(lambda t: (0.0, 0.0)), circle(lambda t: (1.0, 0.3))))
    assert B.writhe(b) == 0
    assert B.linking(b.sub_braid([0]), b.sub_braid([1])) == 0


def test_full_twist_anchor():
    a = circle(lambda t: (EPS * math.cos(2 * math.pi * t), EPS * math.sin(2 * math.pi * t)))
    c = circle(lambda t: (-EPS * math.cos(2 * math.pi * t), -EPS * math.sin(2 * math.pi * t)))
    assert B.writhe(B.Braid(B.CIRCLE, (a, c))) == 2
    assert B.linking(B.Braid(B.CIRCLE, (a,)), B.Braid(B.CIRCLE, (c,))) == 1


def test_half_twists_on_the_interval():
    a = interval(lambda t: (EPS * math.cos(math.pi * t), EPS * math.sin(math.pi * t)))
    c = interval(lambda t: (-EPS * math.cos(math.pi * t), -EPS * math.sin(math.pi * t)))
    assert B.writhe(B.Braid(B.INTERVAL, (a,))) == 0
    assert B.linking(B.Braid(B.INTERVAL, (a,)), B.Braid(B.INTERVAL, (c,))) == HALF
    assert B.winding(a) == HALF


def test_windings():
    assert B.winding(circle(lambda t: (EPS, 0.0))) == 0
    assert B.winding(circle(lambda t: (EPS * math.cos(-2 * math.pi * t), EPS * math.sin(-2 * math.pi * t)))) == -1
    with pytest.raises(NonDegeneracyError):
        B.winding(circle(lambda t: (EPS * math.cos(2 * math.pi * t) - EPS, EPS * math.sin(2 * math.pi * t))))


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, -1)])
def test_torus_braids(n, k):
    # n strands on a circle all turning k times: every pair crosses 2k times
    strands = tuple(
        circle(lambda t, j=j: (math.cos(2 * math.pi * (k * t + j / n)), math.sin(2 * math.pi * (k * t + j / n))))
        for j in range(n)
    )
    assert B.writhe(B.Braid(B.CIRCLE, strands)) == k * n * (n - 1)


def test_two_wrap_cable():
    s = circle(lambda t: (math.cos(math.pi * t), math.sin(math.pi * t)), wraps=2)
    assert B.writhe(B.Braid(B.CIRCLE, (s,))) == 1


def test_writhe_matches_rotation_oracle(rng):
    for k in range(60):
        base = B.CIRCLE if k % 2 == 0 else B.INTERVAL
        b = sampling.random_braid(rng, base)
        assert B.writhe(b) == rotation_writhe(b)


def test_linking_matches_rotation_oracle(rng):
    for k in range(40):
        base = B.CIRCLE if k % 2 == 0 else B.INTERVAL
        b1, b2 = sampling.random_braid(rng, base), sampling.random_braid(rng, base)
        u = b1.union(b2)
        owner = sheet_owner(u)
        n1 = len(b1.strands)
        cross = lambda a, c: (owner[a] < n1) != (owner[c] < n1)
        assert 2 * B.linking(b1, b2) == rotation_writhe(u, cross)


def test_union_identity(rng):
    for k in range(50):
        base = B.CIRCLE if k % 2 == 0 else B.INTERVAL
        b1, b2 = sampling.random_braid(rng, base), sampling.random_braid(rng, base)
        assert B.writhe(b1.union(b2)) == B.writhe(b1) + B.writhe(b2) + 2 * B.linking(b1, b2)


def test_writhe_is_invariant_under_refinement(rng):
    for k in range(20):
        b = sampling.random_braid(rng, B.CIRCLE if k % 2 else B.INTERVAL)
        assert B.writhe(b.refined(3)) == B.writhe(b)


def test_interval_writhe_is_integral(rng):
    for _ in range(30):
        assert B.writhe(sampling.random_braid(rng, B.INTERVAL)).is_integer


def test_delta_examples():
    assert B.writhe_transform_delta(1, 5) == 0
    assert B.writhe_transform_delta(2, 1) == 2
    assert B.writhe_transform_delta(3, HALF) == 3


def test_rotation_realizes_delta(rng):
    for k in range(30):
        base = B.CIRCLE if k % 2 == 0 else B.INTERVAL
        b = sampling.random_braid(rng, base)
        d = HalfInt(int(rng.integers(-2, 3))) if base == B.CIRCLE else HalfInt(twice=int(rng.integers(-4, 5)))
        assert B.writhe(B.rotate_braid(b, d)) - B.writhe(b) == B.writhe_transform_delta(b.total_multiplicity, d)


def test_collisions_are_reported():
    a = circle(lambda t: (math.cos(2 * math.pi * t), 0.0))
    c = circle(lambda t: (-math.cos(2 * math.pi * t), 0.0))
    with pytest.raises(GenericityError):
        B.writhe(B.Braid(B.CIRCLE, (a, c)))
    with pytest.raises(DisjointnessError):
        B.linking(B.Braid(B.CIRCLE, (a,)), B.Braid(B.CIRCLE, (c,)))


def test_braid_validation():
    with pytest.raises(InputError):
        B.Braid(B.INTERVAL, (interval(lambda t: (1.0, 0.5)),))
    with pytest.raises(InputError):
        B.Braid(B.CIRCLE, (B.Strand(np.array([[0, 0, 0], [1, 1, 0]]), 1),))


def test_json_roundtrip(rng):
    b = sampling.random_braid(rng, B.CIRCLE)
    again = B.Braid.loads(json.dumps(b.to_json()))
    assert B.writhe(again) == B.writhe(b)
    assert again.to_json() == b.to_json()


def test_braid_from_modes():
    op = asymptotic.model_operator(0, N=400)
    pair = next(p for p in asymptotic.spectrum_window(op, 1.0, 2.0))
    e = pair.vector / np.abs(pair.vector).max()
    b = B.braid_from_modes([[(pair.lam, e)]], s0=-1.0)
    assert B.winding(b.strands[0]) == asymptotic.eigen_winding(pair) == HALF
    two = B.braid_from_modes([[(pair.lam, e)], [(pair.lam, -e)]], s0=-1.0)
    assert B.linking(two.sub_braid([0]), two.sub_braid([1])) == asymptotic.eigen_winding(pair)
    with pytest.raises(InputError):
        B.braid_from_modes([], 1.0)


def test_writhe_bound_examples():
    flat = B.Braid(B.INTERVAL, (interval(lambda t: (1.0, 0.0)), interval(lambda t: (-1.0, 0.0))))
    for sign in "+-":
        v = B.writhe_bound_check(flat, sign)
        assert v.passed and v.slack == 0
    back = lambda s: interval(lambda t: (s * math.cos(math.pi * t), -s * math.sin(math.pi * t)))
    v = B.writhe_bound_check(B.Braid(B.INTERVAL, (back(1.0), back(-1.0))), "+")
    assert v.passed and v.writhe <= 0
    fwd = interval(lambda t: (math.cos(2 * math.pi * t), math.sin(2 * math.pi * t)))
    assert not B.writhe_bound_check(B.Braid(B.INTERVAL, (fwd,)), "+").passed
