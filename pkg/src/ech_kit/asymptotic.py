"""Asymptotic operators ``A = −J₀ ∂ₜ − S(t)`` on ``[0, 1]`` with
Lagrangian boundary lines.

The operator is discretized on a staggered grid: ``y`` lives on the nodes
``t_j = j/N`` (``1 ≤ j ≤ N−1``; the boundary values vanish) and ``x`` on the
midpoints ``t_{j+1/2}``.  With the unknowns interleaved as
``x_{1/2}, y_1, x_{3/2}, …, y_{N−1}, x_{N−1/2}`` the matrix is symmetric
tridiagonal of size ``2N − 1``.

A pair of boundary lines ``(e^{ia₀}ℝ, e^{ia₁}ℝ)`` is reduced to the x-axis
pair by the gauge rotation ``v = R(a₀ + tδ) w`` with ``δ ∈ [0, π)`` and
``a₀ + δ ≡ a₁ (mod π)``; in the ``w`` frame the potential becomes
``RᵀSR − δ·Id``.  Eigenvalues do not change; windings are reported in the
``w`` frame, where they are half-integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from . import kernels
from .core import HalfInt
from .cz import cz_from_rotation
from .errors import InputError, NonDegeneracyError, ResolutionLimitError, SolverError

MIN_GRID = 64
KERNEL_TOL = 1e-6 * math.pi
J0 = np.array([[0.0, -1.0], [1.0, 0.0]])

# ---------------------------------------------------------------------------
# potentials


@dataclass(frozen=True)
class ConstantPotential:
    """``S(t) = [[a, b], [b, c]]`` for all ``t``."""

    s11: float
    s12: float = 0.0
    s22: Optional[float] = None

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        s22 = self.s11 if self.s22 is None else self.s22
        return (np.full(t.shape, float(self.s11)), np.full(t.shape, float(self.s12)), np.full(t.shape, float(s22)))


@dataclass(frozen=True)
class TrigPotential:
    """Symmetric trigonometric polynomial of period 1.

    ``coeffs`` has shape ``(3, 2·degree + 1)``: for each of ``s11, s12, s22``
    the constant term followed by ``(cos 2πkt, sin 2πkt)`` pairs.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.float64)
        if c.ndim != 2 or c.shape[0] != 3 or c.shape[1] % 2 != 1:
            raise InputError("trig coefficients must have shape (3, 2*degree+1)")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return (self.coeffs.shape[1] - 1) // 2

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        basis = [np.ones_like(t)]
        for k in range(1, self.degree + 1):
            basis += [np.cos(2 * math.pi * k * t), np.sin(2 * math.pi * k * t)]
        B = np.stack(basis)
        s = np.tensordot(self.coeffs, B, axes=(1, 0))
        return s[0], s[1], s[2]

    @classmethod
    def random(cls, rng: np.random.Generator, max_degree: int = 3, bound: float = 2.0) -> "TrigPotential":
        degree = int(rng.integers(0, max_degree + 1))
        return cls(rng.uniform(-bound, bound, size=(3, 2 * degree + 1)))


@dataclass(frozen=True)
class _RotatedPotential:
    """``Rᵀ S R − δ·Id`` with ``R = R(a₀ + tδ)``."""

    base: object
    a0: float
    delta: float

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        s11, s12, s22 = sample_potential(self.base, t)
        phi = self.a0 + self.delta * t
        c, s = np.cos(phi), np.sin(phi)
        # Rᵀ S R for R = [[c, -s], [s, c]]
        r11 = c * c * s11 + 2 * c * s * s12 + s * s * s22
        r22 = s * s * s11 - 2 * c * s * s12 + c * c * s22
        r12 = (c * c - s * s) * s12 + c * s * (s22 - s11)
        return r11 - self.delta, r12, r22 - self.delta


def model_potential(l: int) -> ConstantPotential:
    """``S = (π/2)(2l + 1)·Id``: spectrum ``{nπ − (π/2)(2l+1)}``, CZ ``l + 1/2``."""
    return ConstantPotential(0.5 * math.pi * (2 * l + 1))


def sample_potential(S, t) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evaluate ``S`` on the array ``t`` as ``(s11, s12, s22)``.

    ``S`` may be ``None`` (zero), a constant symmetric 2×2 array, a triple of
    callables, or a callable returning either a triple of arrays or a
    single 2×2 matrix.
    """
    t = np.asarray(t, dtype=np.float64)
    if S is None:
        z = np.zeros_like(t)
        return z, z, z
    if isinstance(S, (ConstantPotential, TrigPotential, _RotatedPotential)):
        return S(t)
    if isinstance(S, (tuple, list)) and len(S) == 3 and all(callable(f) for f in S):
        out = [np.broadcast_to(np.asarray(f(t), dtype=np.float64), t.shape) for f in S]
        return out[0], out[1], out[2]
    if callable(S):
        vals = [np.asarray(S(float(x)), dtype=np.float64) for x in t]
        M = np.stack(vals) if vals else np.zeros((0, 2, 2))
        return _split_matrix(M)
    M = np.asarray(S, dtype=np.float64)
    if M.shape == (2, 2):
        M = np.broadcast_to(M, t.shape + (2, 2))
        return _split_matrix(M)
    raise InputError("unsupported potential")


def _split_matrix(M):
    if M.shape[-2:] != (2, 2):
        raise InputError("potential values must be 2×2 matrices")
    if not np.allclose(M[..., 0, 1], M[..., 1, 0], atol=1e-12, rtol=1e-10):
        raise InputError("potential must be symmetric at every sample")
    return M[..., 0, 0], 0.5 * (M[..., 0, 1] + M[..., 1, 0]), M[..., 1, 1]


# ---------------------------------------------------------------------------
# boundary lines


def line_angle(spec) -> float:
    """Angle ``a`` of the line ``e^{ia}ℝ``, reduced into ``[0, π)``."""
    if isinstance(spec, str):
        key = spec.strip().lower()
        if key in ("x", "x-axis", "r", "real"):
            return 0.0
        if key in ("y", "y-axis", "ir", "imag"):
            return 0.5 * math.pi
        raise InputError(f"unknown boundary line {spec!r}")
    if isinstance(spec, (int, float)):
        a = float(spec)
    else:
        v = np.asarray(spec, dtype=np.float64).ravel()
        if v.shape != (2,) or not np.all(np.isfinite(v)):
            raise InputError(f"a boundary line is given by an angle or a 2-vector, got {spec!r}")
        if math.hypot(v[0], v[1]) == 0.0:
            raise InputError("the zero vector does not span a line")
        a = math.atan2(v[1], v[0])
    if not math.isfinite(a):
        raise InputError("boundary angle must be finite")
    return a % math.pi


# ---------------------------------------------------------------------------
# discretization


@dataclass(frozen=True, eq=False)
class AsymptoticOperator:
    """Staggered-grid realization (in the x-axis gauge) of ``−J₀∂ₜ − S``."""

    N: int
    diag: np.ndarray
    offdiag: np.ndarray
    a0: float
    delta: float
    potential: object = field(repr=False)

    @property
    def size(self) -> int:
        return self.diag.size

    @property
    def h(self) -> float:
        return 1.0 / self.N

    def matrix(self) -> np.ndarray:
        M = np.diag(self.diag)
        M += np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)
        return M

    def node_values(self, vec: np.ndarray) -> np.ndarray:
        """Eigenvector sampled at the nodes ``t_0 … t_N`` as ``(N+1, 2)``."""
        N = self.N
        x_mid = vec[0::2]  # N values at midpoints
        y_in = vec[1::2]  # N-1 interior nodes
        x = np.empty(N + 1)
        x[0], x[N] = x_mid[0], x_mid[-1]
        x[1:N] = 0.5 * (x_mid[:-1] + x_mid[1:])
        y = np.zeros(N + 1)
        y[1:N] = y_in
        return np.column_stack([x, y])


def discretize(S, bc=("x", "x"), N: int = 2000) -> AsymptoticOperator:
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)):
        raise InputError(f"grid size must be an integer, got {N!r}")
    N = int(N)
    if N < MIN_GRID:
        raise InputError(f"grid size must be at least {MIN_GRID}, got {N}")
    if len(bc) != 2:
        raise InputError("boundary condition must be a pair of lines")
    a0, a1 = line_angle(bc[0]), line_angle(bc[1])
    delta = (a1 - a0) % math.pi
    pot = S if (a0 == 0.0 and delta == 0.0) else _RotatedPotential(S, a0, delta)

    h = 1.0 / N
    t_mid = (np.arange(N) + 0.5) * h
    t_node = np.arange(1, N) * h
    m11, m12, _ = sample_potential(pot, t_mid)
    n11, n12, n22 = sample_potential(pot, t_node)
    _ = n11

    size = 2 * N - 1
    diag = np.empty(size)
    diag[0::2] = -m11
    diag[1::2] = -n22
    off = np.empty(size - 1)
    # off[2j]   couples x_{j+1/2} with y_{j+1}:  +1/h − s12/2
    # off[2j+1] couples y_{j+1} with x_{j+3/2}:  −1/h − s12/2
    # each s12 is averaged between the midpoint and node sample
    off[0::2] = 1.0 / h - 0.25 * (m12[:-1] + n12)
    off[1::2] = -1.0 / h - 0.25 * (m12[1:] + n12)
    return AsymptoticOperator(N, diag, off, a0, delta, pot)


def model_operator(l: int, N: int = 2000, bc=("x", "x")) -> AsymptoticOperator:
    return discretize(model_potential(l), bc, N)


# ---------------------------------------------------------------------------
# spectrum


@dataclass(frozen=True, eq=False)
class EigenPair:
    lam: float
    vector: np.ndarray  # (N+1, 2) node samples in the x-axis gauge
    winding: HalfInt

    @property
    def lambda_(self) -> float:
        return self.lam


def _winding_of_nodes(v: np.ndarray) -> HalfInt:
    r = np.hypot(v[:, 0], v[:, 1])
    if r.min() <= 1e-8 * r.max():
        raise ResolutionLimitError("eigenvector vanishes on the grid; refine the discretization")
    angles = np.arctan2(v[:, 1], v[:, 0])
    total, biggest = kernels.unwrap_total(angles, 2 * math.pi)
    if biggest >= 0.5 * math.pi:
        raise ResolutionLimitError("eigenvector turns too fast for the grid; increase N")
    return HalfInt(twice=round(total / math.pi))


def eigen_winding(pair: EigenPair) -> HalfInt:
    return _winding_of_nodes(pair.vector)


def spectrum_window(op: AsymptoticOperator, lo: float, hi: float) -> List[EigenPair]:
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise InputError(f"empty or reversed window [{lo}, {hi}]")
    try:
        lam, vecs = eigh_tridiagonal(op.diag, op.offdiag, select="v", select_range=(lo, hi))
    except (LinAlgError, ValueError) as exc:
        raise SolverError(f"tridiagonal eigensolver failed: {exc}") from None
    if lam.size == 0:
        return []
    order = np.argsort(lam)
    lam, vecs = lam[order], vecs[:, order]
    scale = 1.0 / op.h + float(np.abs(op.diag).max())
    M = vecs * 0.0
    M += op.diag[:, None] * vecs
    M[:-1] += op.offdiag[:, None] * vecs[1:]
    M[1:] += op.offdiag[:, None] * vecs[:-1]
    residual = np.linalg.norm(M - vecs * lam, axis=0)
    worst = float(residual.max())
    if worst > 1e-8 * scale:
        raise SolverError(f"eigenpair residual {worst:.3e} exceeds tolerance {1e-8 * scale:.3e}")
    gaps = np.diff(lam)
    if gaps.size and gaps.min() <= 1e-9 * (1 + np.abs(lam).max()):
        raise SolverError("eigenvalues are not simple within tolerance")
    out = []
    for k in range(lam.size):
        nodes = op.node_values(vecs[:, k])
        out.append(EigenPair(float(lam[k]), nodes, _winding_of_nodes(nodes)))
    return out


def cz_from_spectrum(op: AsymptoticOperator, start: float = 2 * math.pi) -> HalfInt:
    """Min winding over positive eigenvalues plus max over negative ones.

    Windings are monotone in the eigenvalue, so these are the windings of the
    smallest positive and the largest negative eigenvalue.
    """
    width = float(start)
    limit = 0.5 / op.h
    while True:
        pairs = spectrum_window(op, -width, width)
        for p in pairs:
            if abs(p.lam) < KERNEL_TOL:
                raise NonDegeneracyError(f"operator has an eigenvalue {p.lam:.3e} within tolerance of 0")
        pos = [p for p in pairs if p.lam > 0]
        neg = [p for p in pairs if p.lam < 0]
        if pos and neg:
            return min(p.winding for p in pos) + max(p.winding for p in neg)
        if width >= limit:
            raise SolverError("no eigenvalue of one sign within the resolvable part of the spectrum")
        width = min(2 * width, limit)


# ---------------------------------------------------------------------------
# CZ through the linearized flow


def transported_angles(S, n_steps: int, bc=("x", "x")) -> np.ndarray:
    a0, a1 = line_angle(bc[0]), line_angle(bc[1])
    delta = (a1 - a0) % math.pi
    pot = S if (a0 == 0.0 and delta == 0.0) else _RotatedPotential(S, a0, delta)
    t = np.linspace(0.0, 1.0, 2 * n_steps + 1)
    s11, s12, s22 = sample_potential(pot, t)
    return kernels.transport_angles(s11, s12, s22)


def cz_via_path(S, bc=("x", "x"), start_steps: int = 256, max_steps: int = 1 << 17) -> HalfInt:
    """CZ of the Lagrangian path ``Φₜ(ℝ)`` for the fundamental solution
    ``Φ' = J₀ S Φ``, refining RK4 steps until the answer stabilizes."""
    n = int(start_steps)
    previous = None
    while n <= max_steps:
        angles = transported_angles(S, n, bc)
        total, biggest = kernels.unwrap_total(angles, math.pi)
        if biggest < 0.25 * math.pi:
            result = cz_from_rotation(total)
            if previous is not None and result == previous[0] and abs(total - previous[1]) < 1e-6:
                return result
            previous = (result, total)
        n *= 2
    raise ResolutionLimitError("ODE integration did not stabilize; the potential is too stiff")
