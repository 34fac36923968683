import math

import numpy as np
import pytest

from ech_kit import asymptotic as A
from ech_kit.core import HALF, HalfInt
from ech_kit.errors import InputError, NonDegeneracyError

PI = math.pi


def half(n2):
    return HalfInt(twice=n2)


def window(l, lo, hi, N=2000):
    return A.spectrum_window(A.model_operator(l, N=N), lo, hi)


def test_model_zero_eigenvalues():
    lams = [p.lam for p in window(0, -2 * PI, 2 * PI)]
    assert np.allclose(lams, [-1.5 * PI, -0.5 * PI, 0.5 * PI, 1.5 * PI], atol=1e-3)


def test_model_one_smallest_positive():
    pos = [p for p in window(1, 0.0, 2 * PI) if p.lam > 0]
    assert abs(pos[0].lam - 0.5 * PI) < 1e-3
    assert pos[0].winding == 1


def test_empty_window():
    assert window(0, 0.1, 0.2) == []


def test_windings_of_extreme_modes():
    by_sign = lambda l: {round(p.lam / (0.5 * PI)): p.winding for p in window(l, -1.6, 1.6)}
    w0 = by_sign(0)
    assert w0[1] == HALF and w0[-1] == 0
    assert by_sign(2)[-1] == 1


@pytest.mark.parametrize("l", [-3, -1, 0, 2, 3])
def test_cz_from_spectrum_and_path(l):
    assert A.cz_from_spectrum(A.model_operator(l)) == half(2 * l + 1)
    assert A.cz_via_path(A.model_potential(l)) == half(2 * l + 1)


def test_windings_are_monotone_and_half_steps():
    pairs = window(1, -6 * PI, 6 * PI)
    w = [p.winding.twice for p in pairs]
    assert w == list(range(w[0], w[0] + len(w)))


def test_zero_potential_has_constant_kernel():
    op = A.discretize(None, N=64)
    pairs = A.spectrum_window(op, -0.1, 0.1)
    assert len(pairs) == 1 and abs(pairs[0].lam) < 1e-10
    v = pairs[0].vector
    assert np.allclose(v[:, 1], 0.0) and np.allclose(v[:, 0], v[0, 0])
    with pytest.raises(NonDegeneracyError):
        A.cz_from_spectrum(op)
    with pytest.raises(NonDegeneracyError):
        A.cz_via_path(None)


def test_grid_floor():
    with pytest.raises(InputError):
        A.discretize(None, N=10)


def test_quarter_turn_boundary_condition():
    # S = 0 between ℝ and iℝ: the path stays at ℝ, which sits just below iℝ
    assert A.cz_from_spectrum(A.discretize(None, bc=("x", "y"))) == half(-1)
    assert A.cz_via_path(None, bc=("x", "y")) == half(-1)


def test_gauge_rotation_of_both_lines(rng):
    # conjugating S by a constant rotation and rotating both lines with it
    # leaves the index unchanged
    for _ in range(5):
        S = A.TrigPotential.random(rng, max_degree=2)
        a = float(rng.uniform(0, PI))
        c, s = math.cos(a), math.sin(a)
        R = np.array([[c, -s], [s, c]])

        def rotated(t, S=S):
            s11, s12, s22 = S(np.array([t]))
            M = np.array([[s11[0], s12[0]], [s12[0], s22[0]]])
            return R @ M @ R.T

        try:
            base = A.cz_via_path(S)
        except NonDegeneracyError:
            continue
        assert A.cz_via_path(rotated, bc=(a, a)) == base
        assert A.cz_from_spectrum(A.discretize(rotated, bc=(a, a), N=800)) == base


def test_spectrum_and_path_agree_on_random_potentials(rng):
    done = 0
    while done < 10:
        S = A.TrigPotential.random(rng)
        op = A.discretize(S, N=1000)
        if A.spectrum_window(op, -0.05, 0.05):
            continue
        assert A.cz_from_spectrum(op) == A.cz_via_path(S)
        done += 1


def test_eigenvalues_converge_at_second_order():
    exact = np.array([-1.5 * PI, -0.5 * PI, 0.5 * PI, 1.5 * PI])
    errs = []
    for N in (1000, 2000, 4000):
        lams = np.array([p.lam for p in window(0, -2 * PI, 2 * PI, N=N)])
        errs.append(np.abs(lams - exact).max())
    assert errs[0] > errs[1] > errs[2]
    assert 3.0 < errs[1] / errs[2] < 5.0


def test_line_angle_forms():
    assert A.line_angle("x") == 0.0
    assert A.line_angle("y") == pytest.approx(PI / 2)
    assert A.line_angle([0, -2]) == pytest.approx(PI / 2)
    assert A.line_angle(PI) == pytest.approx(0.0)
    with pytest.raises(InputError):
        A.line_angle([0, 0])
