import math
import os
import subprocess
import sys

import numpy as np
import pytest

from ech_kit import _jit, kernels

needs_numba = pytest.mark.skipif(not _jit.JIT_AVAILABLE, reason="numba not importable")


@needs_numba
def test_unwrap_total_paths_agree(rng):
    for period in (math.pi, 2 * math.pi):
        a = np.cumsum(rng.uniform(-1, 1, size=500)) % period
        assert kernels.unwrap_total_nb(a, period) == pytest.approx(kernels.unwrap_total_np(a, period), abs=1e-12)


@needs_numba
def test_pair_crossings_paths_agree(rng):
    for _ in range(20):
        n, v = int(rng.integers(2, 6)), int(rng.integers(5, 60))
        X, Y = rng.normal(size=(n, v)), rng.normal(size=(n, v))
        X[:, -1], Y[:, -1] = X[:, 0], Y[:, 0]
        keys = np.arange(n, dtype=np.float64)
        wrap = rng.permutation(n).astype(np.float64)
        c1, k1 = kernels.pair_crossings_np(X, Y, keys, wrap, 1e-12)
        c2, k2 = kernels.pair_crossings_nb(X, Y, keys, wrap, 1e-12)
        assert np.array_equal(np.triu(c1, 1), np.triu(c2, 1)) and bool(k1) == bool(k2)


@needs_numba
def test_pair_crossings_ties_agree():
    # exact zeros of the projected separation exercise the symbolic tie-break;
    # the first sheet makes one clockwise turn around the second
    X = np.array([[0.0, 1.0, 0.0, -1.0, 0.0], [0.0, 0.0, 0.0, 0.0, 0.0]])
    Y = np.array([[1.0, 0.0, -1.0, 0.0, 1.0], [0.0, 0.0, 0.0, 0.0, 0.0]])
    keys = np.array([0.0, 1.0])
    a = kernels.pair_crossings_np(X, Y, keys, keys, 1e-12)
    b = kernels.pair_crossings_nb(X, Y, keys, keys, 1e-12)
    assert a[0][0, 1] == b[0][0, 1] == -2


@needs_numba
def test_transport_paths_agree(rng):
    for _ in range(5):
        n = 2 * int(rng.integers(10, 200)) + 1
        s11, s12, s22 = rng.normal(size=(3, n))
        assert np.allclose(kernels.transport_angles_np(s11, s12, s22), kernels.transport_angles_nb(s11, s12, s22), atol=1e-10)


def test_disable_flag_selects_numpy_path():
    code = "from ech_kit import kernels, _jit; print(_jit.JIT_ENABLED, kernels.pair_crossings is kernels.pair_crossings_np)"
    env = dict(os.environ, ECH_KIT_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout.split()
    assert out == ["False", "True"]


def test_numpy_path_reproduces_the_suite_values():
    code = (
        "from ech_kit import verification as v\n"
        "r = [v.run_criterion(n, 'fast') for n in (1, 4)]\n"
        "print(all(x.passed for x in r))\n"
    )
    env = dict(os.environ, ECH_KIT_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True, timeout=600).stdout
    assert out.strip() == "True"


def test_benchmark_script_runs():
    import pathlib

    script = pathlib.Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(script), "--repeat", "1", "--sizes", "200"], capture_output=True, text=True, check=True, timeout=600).stdout
    assert "pair_crossings" in out and "transport_angles" in out
