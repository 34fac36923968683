"""Conley-Zehnder indices in dimension two.

Orbit iterates use the rotation-number convention
``CZ(γ^k) = 2⌊kθ⌋ + 1`` (elliptic) and ``k·r`` (hyperbolic); a
trivialization offset ``d`` adds ``2k·d``.  Chords carry their index as a
strict half-integer; an offset shifts it by ``2d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

import numpy as np

from . import kernels
from .core import (
    ZERO,
    ChordDescriptor,
    Elliptic,
    HalfInt,
    OrbitChordSet,
    OrbitDescriptor,
    ReebDatum,
    TrivializationOffset,
)
from .errors import (
    ChordParityError,
    ConventionError,
    CoverError,
    DegeneracyError,
    InputError,
    NonDegeneracyError,
    ResolutionLimitError,
)

# relative gap below which the endpoint lines count as coincident
TRANSVERSE_TOL = 1e-9


def _check_mult(m, what="multiplicity"):
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InputError(f"{what} must be a positive integer, got {m!r}")


def _orbit_offset(offset) -> int:
    d = HalfInt.coerce(offset)
    if not d.is_integer:
        raise ConventionError(f"orbit trivialization offsets must be integers, got {d}")
    return d.twice // 2


# ---------------------------------------------------------------------------
# orbits


def cz_orbit_iterate(orbit: OrbitDescriptor, k: int, offset=ZERO) -> int:
    """CZ index of the ``k``-fold iterate of ``orbit``."""
    _check_mult(k, "iterate")
    d = _orbit_offset(offset)
    kind = orbit.kind
    if isinstance(kind, Elliptic):
        kt = k * kind.theta
        if kt.denominator == 1:
            raise DegeneracyError(kind.theta, k)
        base = 2 * math.floor(kt) + 1
    else:
        base = k * kind.r
    return base + 2 * k * d


def cz_ech_orbit(orbit: OrbitDescriptor, m: int, offset=ZERO) -> int:
    _check_mult(m)
    return sum(cz_orbit_iterate(orbit, i, offset) for i in range(1, m + 1))


# ---------------------------------------------------------------------------
# chords


def cz_ech_chord(cz, m: int) -> HalfInt:
    """``m/2 + m(m+1)/2 · (cz − 1/2)`` for a chord of index ``cz``."""
    cz = HalfInt.coerce(cz)
    _check_mult(m)
    if not cz.is_strict_half:
        raise ChordParityError(f"chord CZ index must be a strict half-integer, got {cz}")
    n = (cz.twice - 1) // 2  # cz - 1/2
    return HalfInt(twice=m + m * (m + 1) * n)


def _shifted_chord_cz(chord: ChordDescriptor, offset) -> HalfInt:
    d = HalfInt.coerce(offset)
    return chord.cz + d * 2


# ---------------------------------------------------------------------------
# sets


def cz_ech_element(element, m: int, offset=ZERO) -> HalfInt:
    if isinstance(element, OrbitDescriptor):
        return HalfInt(cz_ech_orbit(element, m, offset))
    if isinstance(element, ChordDescriptor):
        return cz_ech_chord(_shifted_chord_cz(element, offset), m)
    raise InputError(f"not an orbit or chord: {element!r}")


def cz_ech_set(s: OrbitChordSet, datum: ReebDatum, offsets: TrivializationOffset = None) -> HalfInt:
    offsets = offsets or TrivializationOffset()
    total = ZERO
    for name, m in s.items():
        total += cz_ech_element(datum[name], m, offsets.of(name))
    return total


def cz_ind_set(
    ends: Iterable[Tuple[str, Sequence[int]]],
    datum: ReebDatum,
    offsets: TrivializationOffset = None,
) -> HalfInt:
    """Sum of CZ over the iterates prescribed by each end's partition."""
    offsets = offsets or TrivializationOffset()
    total = ZERO
    for name, parts in ends:
        parts = list(parts)
        if not parts:
            raise InputError(f"empty partition for {name!r}")
        el = datum[name]
        d = offsets.of(name)
        for a in parts:
            _check_mult(a, "partition part")
            if isinstance(el, ChordDescriptor):
                if a != 1:
                    raise CoverError(f"chord {name!r} strands have multiplicity 1, got part {a}")
                total += _shifted_chord_cz(el, d)
            else:
                total += cz_orbit_iterate(el, a, d)
    return total


def cz_ech_change(element, m: int, offset_d) -> HalfInt:
    """Change of the CZ^ECH term of ``(element, m)`` under offset ``offset_d``."""
    return cz_ech_element(element, m, offset_d) - cz_ech_element(element, m, ZERO)


# ---------------------------------------------------------------------------
# Lagrangian paths


@dataclass(frozen=True)
class LagrangianPath:
    """Samples ``(t, θ)`` of the line ``e^{iθ(t)}ℝ`` for ``t`` from 0 to 1.

    ``θ`` only matters modulo π; consecutive samples must differ by less
    than a quarter turn of the line (π/2) so the lift is unambiguous.
    """

    t: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=np.float64)
        theta = np.asarray(self.theta, dtype=np.float64)
        if t.ndim != 1 or t.shape != theta.shape or t.shape[0] < 2:
            raise InputError("a Lagrangian path needs matching 1-d arrays of at least two samples")
        if not (t[0] == 0.0 and t[-1] == 1.0 and np.all(np.diff(t) > 0)):
            raise InputError("sample times must increase strictly from 0 to 1")
        if not np.all(np.isfinite(theta)):
            raise InputError("angles must be finite")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def from_samples(cls, samples) -> "LagrangianPath":
        arr = np.asarray([(float(Fraction(t)), float(th)) for t, th in samples], dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 2:
            raise InputError("need at least two (t, theta) samples")
        return cls(arr[:, 0], arr[:, 1])

    @classmethod
    def from_function(cls, fn, n_samples: int = 257) -> "LagrangianPath":
        t = np.linspace(0.0, 1.0, n_samples)
        return cls(t, np.array([fn(x) for x in t], dtype=np.float64))

    def total_rotation(self) -> float:
        """Lifted angle change θ(1) − θ(0) of the line, in radians."""
        total, biggest = kernels.unwrap_total(self.theta, math.pi)
        if biggest >= 0.5 * math.pi * (1 - 1e-12):
            raise ResolutionLimitError("line angle jumps by a quarter turn between samples; refine the path")
        return total

    @property
    def endpoints_transverse(self) -> bool:
        return _transverse_gap(self.total_rotation()) is not None


def _transverse_gap(total: float):
    q = total / math.pi
    frac = q - math.floor(q)
    if frac < TRANSVERSE_TOL or frac > 1 - TRANSVERSE_TOL:
        return None
    return math.floor(q)


def cz_from_rotation(total: float) -> HalfInt:
    """CZ index of a line path that rotates by ``total`` radians from ℝ."""
    k = _transverse_gap(total)
    if k is None:
        raise NonDegeneracyError(
            f"endpoint lines are not transverse (rotation {total / math.pi:.12g}·π)"
        )
    return HalfInt(twice=2 * k + 1)


def cz_lagrangian_path(path: LagrangianPath) -> HalfInt:
    return cz_from_rotation(path.total_rotation())
