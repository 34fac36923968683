"""Braids around orbits (circle base) and chords (interval base).

A strand is a piecewise-linear map ``t ↦ (x, y)``.  Writhe and linking are
signed crossing counts of the projection to the ``(t, x)`` plane; a crossing
counts +1 when the strands rotate counterclockwise about each other, so one
full counterclockwise twist of two strands has writhe 2.

Projection genericity comes from a symbolic shear: where two sheets have
exactly equal ``x`` the tie is broken by sheet order, as if sheet ``k`` were
displaced by ``k·ε`` for an infinitesimal ``ε``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from . import kernels
from .core import HalfInt
from .errors import (
    DisjointnessError,
    GenericityError,
    InputError,
    NonDegeneracyError,
    ResolutionLimitError,
)

CIRCLE = "circle"
INTERVAL = "interval"

# absolute tolerance, scaled by the coordinate magnitude, for "two points meet"
COLLISION_RTOL = 1e-12
ROTATION_SAMPLES_PER_TURN = 64


@dataclass(frozen=True, eq=False)
class Strand:
    """Samples ``(t, x, y)``; circle strands run over ``[0, wraps]``."""

    samples: np.ndarray
    wraps: int = 1

    def __post_init__(self):
        arr = np.array(self.samples, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] < 2:
            raise InputError("strand samples must be a list of at least two [t, x, y] triples")
        if not np.all(np.isfinite(arr)):
            raise InputError("strand samples must be finite")
        if isinstance(self.wraps, bool) or not isinstance(self.wraps, (int, np.integer)) or self.wraps < 1:
            raise InputError(f"wraps must be a positive integer, got {self.wraps!r}")
        t = arr[:, 0]
        if t[0] != 0.0 or t[-1] != float(self.wraps) or np.any(np.diff(t) <= 0):
            raise InputError(f"strand times must increase strictly from 0 to {self.wraps}")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "wraps", int(self.wraps))

    @property
    def t(self):
        return self.samples[:, 0]

    @property
    def xy(self):
        return self.samples[:, 1:]

    @property
    def scale(self) -> float:
        return float(np.abs(self.xy).max())

    def sheet(self, j: int):
        """The part over ``[j, j+1]`` as (times in [0,1], x, y)."""
        t, x, y = self.samples.T
        lo, hi = float(j), float(j + 1)
        inner = (t > lo) & (t < hi)
        ts = np.concatenate(([lo], t[inner], [hi]))
        xs = np.interp(ts, t, x)
        ys = np.interp(ts, t, y)
        return ts - lo, xs, ys

    def refined(self, factor: int = 2) -> "Strand":
        """Same PL curve with ``factor − 1`` extra points in every segment."""
        s = self.samples
        pieces = [s[:1]]
        for a, b in zip(s[:-1], s[1:]):
            w = np.arange(1, factor + 1)[:, None] / factor
            pieces.append(a + w * (b - a))
        return Strand(np.vstack(pieces), self.wraps)

    def to_json(self):
        return {"wraps": self.wraps, "samples": self.samples.tolist()}


@dataclass(frozen=True, eq=False)
class Braid:
    base: str
    strands: tuple

    def __post_init__(self):
        if self.base not in (CIRCLE, INTERVAL):
            raise InputError(f"braid base must be 'circle' or 'interval', got {self.base!r}")
        strands = tuple(self.strands)
        object.__setattr__(self, "strands", strands)
        for k, s in enumerate(strands):
            x0, y0 = s.xy[0]
            x1, y1 = s.xy[-1]
            tol = _tol(s.scale)
            if self.base == INTERVAL:
                if s.wraps != 1:
                    raise InputError(f"interval strand {k} must have wraps = 1")
                if abs(y0) > tol or abs(y1) > tol:
                    raise InputError(f"interval strand {k} must start and end on the x-axis")
            elif math.hypot(x1 - x0, y1 - y0) > tol:
                raise InputError(f"circle strand {k} does not close up after {s.wraps} wraps")

    @property
    def total_multiplicity(self) -> int:
        return sum(s.wraps for s in self.strands)

    def union(self, other: "Braid") -> "Braid":
        if other.base != self.base:
            raise InputError("cannot unite braids over different bases")
        return Braid(self.base, self.strands + other.strands)

    def refined(self, factor: int = 2) -> "Braid":
        return Braid(self.base, tuple(s.refined(factor) for s in self.strands))

    def sub_braid(self, indices: Sequence[int]) -> "Braid":
        return Braid(self.base, tuple(self.strands[i] for i in indices))

    def to_json(self):
        return {"base": self.base, "strands": [s.to_json() for s in self.strands]}

    @classmethod
    def from_json(cls, obj) -> "Braid":
        if not isinstance(obj, dict) or "base" not in obj or "strands" not in obj:
            raise InputError("braid JSON needs 'base' and 'strands'")
        strands = []
        for s in obj["strands"]:
            if not isinstance(s, dict) or "samples" not in s:
                raise InputError("every strand needs 'samples'")
            strands.append(Strand(s["samples"], s.get("wraps", 1)))
        return cls(obj["base"], tuple(strands))

    @classmethod
    def loads(cls, text: str) -> "Braid":
        return cls.from_json(json.loads(text))


def _tol(scale: float) -> float:
    return COLLISION_RTOL * (1.0 + scale)


def strand_from_function(fn, base: str = CIRCLE, wraps: int = 1, n_samples: int = 257) -> Strand:
    """Sample ``fn(t) -> (x, y)`` on ``[0, wraps]`` (``[0, 1]`` for intervals)."""
    end = wraps if base == CIRCLE else 1
    t = np.linspace(0.0, float(end), n_samples)
    t[-1] = float(end)
    xy = np.array([fn(s) for s in t], dtype=np.float64)
    if base == INTERVAL:
        # snap round-off so the endpoints sit exactly on the x-axis
        for k in (0, -1):
            if abs(xy[k, 1]) < 1e-9:
                xy[k, 1] = 0.0
    elif np.allclose(xy[0], xy[-1], atol=1e-9):
        xy[-1] = xy[0]
    return Strand(np.column_stack([t, xy]), wraps if base == CIRCLE else 1)


# ---------------------------------------------------------------------------
# crossing counts


def _sheets(braids: Sequence[Braid]):
    """Flatten braids into sheets on a common grid.

    Returns ``(X, Y, keys, wrap_keys, owner, scale)``; ``owner[k]`` is the
    (braid, strand) pair that sheet ``k`` came from.
    """
    raw, owner, successor = [], [], []
    for bi, b in enumerate(braids):
        for si, s in enumerate(b.strands):
            start = len(raw)
            for j in range(s.wraps):
                raw.append(s.sheet(j))
                owner.append((bi, si))
                successor.append(start + (j + 1) % s.wraps if b.base == CIRCLE else len(raw) - 1)
    if not raw:
        return None
    grid = np.unique(np.concatenate([r[0] for r in raw]))
    X = np.empty((len(raw), grid.size))
    Y = np.empty_like(X)
    for k, (ts, xs, ys) in enumerate(raw):
        X[k] = np.interp(grid, ts, xs)
        Y[k] = np.interp(grid, ts, ys)
    keys = np.arange(len(raw), dtype=np.float64)
    wrap_keys = keys[np.asarray(successor)]
    scale = max(float(np.abs(X).max()), float(np.abs(Y).max()))
    return X, Y, keys, wrap_keys, owner, scale


def _crossing_matrix(braids: Sequence[Braid]):
    data = _sheets(braids)
    if data is None:
        return None, [], False
    X, Y, keys, wrap_keys, owner, scale = data
    counts, collided = kernels.pair_crossings(X, Y, keys, wrap_keys, _tol(scale))
    return counts, owner, bool(collided)


def writhe(b: Braid) -> HalfInt:
    counts, _, collided = _crossing_matrix([b])
    if counts is None:
        return HalfInt(0)
    if collided:
        raise GenericityError("strands meet or cross at the sample resolution; the projection is not generic")
    return HalfInt(int(np.triu(counts, 1).sum()))


def linking(b1: Braid, b2: Braid) -> HalfInt:
    """Half the signed count of crossings between the projections of ``b1`` and ``b2``."""
    if b1.base != b2.base:
        raise InputError("linking needs braids over the same base")
    counts, owner, collided = _crossing_matrix([b1, b2])
    if counts is None:
        return HalfInt(0)
    if collided:
        raise DisjointnessError("the braids are not disjoint at the sample resolution")
    total = 0
    n = len(owner)
    for a in range(n):
        for c in range(a + 1, n):
            if owner[a][0] != owner[c][0]:
                total += int(counts[a, c])
    return HalfInt(twice=total)


def winding(strand: Strand) -> HalfInt:
    """Total rotation of the strand about the origin, in full turns."""
    xy = strand.xy
    r = np.hypot(xy[:, 0], xy[:, 1])
    if np.any(r <= _tol(strand.scale)):
        raise NonDegeneracyError("strand passes through the origin")
    angles = np.arctan2(xy[:, 1], xy[:, 0])
    total, biggest = kernels.unwrap_total(angles, 2 * math.pi)
    if biggest >= math.pi * (1 - 1e-9):
        raise ResolutionLimitError("strand turns by half a revolution between samples; refine it")
    half_turns = total / math.pi
    twice = round(half_turns)
    if abs(half_turns - twice) > 1e-6:
        raise InputError("strand endpoints are not on a common line through the origin")
    return HalfInt(twice=twice)


def _min_separation(b: Braid) -> float:
    """Smallest distance between two sheets at a common time (exact for PL sheets)."""
    data = _sheets([b])
    if data is None or data[0].shape[0] < 2:
        return math.inf
    X, Y = data[0], data[1]
    best = math.inf
    for i in range(X.shape[0]):
        for j in range(i + 1, X.shape[0]):
            dx, dy = X[i] - X[j], Y[i] - Y[j]
            ax, ay = dx[:-1], dy[:-1]
            bx, by = dx[1:] - ax, dy[1:] - ay
            bb = bx * bx + by * by
            with np.errstate(divide="ignore", invalid="ignore"):
                s = np.where(bb > 0, np.clip(-(ax * bx + ay * by) / bb, 0.0, 1.0), 0.0)
            best = min(best, float(np.hypot(ax + s * bx, ay + s * by).min()), float(np.hypot(dx[-1], dy[-1])))
    return best


def rotate_braid(b: Braid, d) -> Braid:
    """Express ``b`` in a trivialization differing by ``d`` turns per wrap.

    The rotated curve is resampled finely enough that its chords stay within
    a quarter of the smallest sheet separation, so crossing counts are those
    of the exact rotated braid.
    """
    turns = float(HalfInt.coerce(d))
    step = math.inf
    if turns:
        sep = _min_separation(b)
        if sep <= 0:
            raise GenericityError("sheets meet; the braid cannot be rotated faithfully")
        omega = 2 * math.pi * abs(turns)
        radius = max(float(np.hypot(st.samples[:, 1], st.samples[:, 2]).max()) for st in b.strands)
        speed = max(
            float((np.hypot(np.diff(st.samples[:, 1]), np.diff(st.samples[:, 2])) / np.diff(st.samples[:, 0])).max())
            for st in b.strands
        )
        curvature = radius * omega**2 + 2 * speed * omega
        step = min(1.0 / (abs(turns) * ROTATION_SAMPLES_PER_TURN), math.sqrt(2 * sep / curvature) if sep < math.inf else math.inf)
    strands = []
    for st in b.strands:
        t, x, y = st.samples.T
        if turns:
            steps = np.maximum(1, np.ceil(np.diff(t) / step)).astype(int)
            fine = np.concatenate([np.linspace(a, c, k, endpoint=False) for a, c, k in zip(t[:-1], t[1:], steps)] + [t[-1:]])
            x, y = np.interp(fine, t, x), np.interp(fine, t, y)
            t = fine
        ang = 2 * math.pi * turns * t
        c, s_ = np.cos(ang), np.sin(ang)
        xr, yr = c * x - s_ * y, s_ * x + c * y
        if b.base == INTERVAL:
            yr[0], yr[-1] = 0.0, 0.0
        else:
            xr[-1], yr[-1] = xr[0], yr[0]
        strands.append(Strand(np.column_stack([t, xr, yr]), st.wraps))
    return Braid(b.base, tuple(strands))


def writhe_transform_delta(m: int, d) -> HalfInt:
    """Change of writhe of an ``m``-strand braid under a trivialization offset ``d``."""
    return HalfInt.coerce(d) * (m * (m - 1))


# ---------------------------------------------------------------------------
# braids from eigenmodes


def braid_from_modes(modes, s0: float, n_samples: int = 513) -> Braid:
    """Interval braid at slice ``s0`` whose strands are ``Σ e^{λ s0} e(t)``.

    ``modes[k]`` is the list of ``(lambda, e)`` pairs for strand ``k``; ``e``
    is either an ``(M, 2)`` array sampled on a uniform grid of ``[0, 1]`` or
    a callable ``t -> (x, y)``.
    """
    modes = list(modes)
    if not modes:
        raise InputError("no strands: the mode list is empty")
    t = np.linspace(0.0, 1.0, n_samples)
    strands = []
    for k, strand_modes in enumerate(modes):
        strand_modes = list(strand_modes)
        if not strand_modes:
            raise InputError(f"strand {k} has no modes")
        xy = np.zeros((n_samples, 2))
        for lam, e in strand_modes:
            xy += math.exp(lam * s0) * _sample_mode(e, t)
        xy[0, 1] = 0.0 if abs(xy[0, 1]) <= 1e-9 * (1 + np.abs(xy).max()) else xy[0, 1]
        xy[-1, 1] = 0.0 if abs(xy[-1, 1]) <= 1e-9 * (1 + np.abs(xy).max()) else xy[-1, 1]
        strands.append(Strand(np.column_stack([t, xy]), 1))
    b = Braid(INTERVAL, tuple(strands))
    data = _sheets([b])
    X, Y, _, _, _, scale = data
    for a in range(len(strands)):
        for c in range(a + 1, len(strands)):
            gap = np.hypot(X[a] - X[c], Y[a] - Y[c]).min()
            if gap <= 1e-9 * (1 + scale):
                raise ResolutionLimitError(
                    f"strands {a} and {c} collide at the sample resolution; try a larger s0"
                )
    return b


def _sample_mode(e, t):
    if callable(e):
        return np.array([e(s) for s in t], dtype=np.float64)
    e = np.asarray(e, dtype=np.float64)
    if e.ndim != 2 or e.shape[1] != 2 or e.shape[0] < 2:
        raise InputError("sampled modes must have shape (M, 2)")
    src = np.linspace(0.0, 1.0, e.shape[0])
    return np.column_stack([np.interp(t, src, e[:, 0]), np.interp(t, src, e[:, 1])])


# ---------------------------------------------------------------------------
# writhe bound at chord ends


@dataclass(frozen=True)
class WritheBoundVerdict:
    passed: bool
    slack: HalfInt
    writhe: HalfInt
    windings: tuple
    linkings: tuple
    trivial_expected: bool

    def to_json(self):
        return {
            "pass": self.passed,
            "slack": self.slack.to_json(),
            "writhe": self.writhe.to_json(),
            "windings": [w.to_json() for w in self.windings],
            "linkings": [[i, j, l.to_json()] for i, j, l in self.linkings],
            "trivial_expected": self.trivial_expected,
        }


def writhe_bound_check(b: Braid, sign: str) -> WritheBoundVerdict:
    """Sign conditions on writhe, windings and linkings at a chord end.

    At a positive end the writhe, every strand winding and every pairwise
    linking must be ≤ 0; at a negative end they must be ≥ 0.  The slack is
    ``−w`` (positive end) or ``w`` (negative end).
    """
    if b.base != INTERVAL:
        raise InputError("the chord writhe bound applies to interval braids")
    if sign not in ("+", "-"):
        raise InputError(f"sign must be '+' or '-', got {sign!r}")
    w = writhe(b)
    winds = tuple(winding(s) for s in b.strands)
    links = []
    for i in range(len(b.strands)):
        for j in range(i + 1, len(b.strands)):
            links.append((i, j, linking(b.sub_braid([i]), b.sub_braid([j]))))
    values = [w, *winds, *(l for _, _, l in links)]
    if sign == "+":
        ok = all(v <= 0 for v in values)
        slack = -w
    else:
        ok = all(v >= 0 for v in values)
        slack = w
    return WritheBoundVerdict(ok, slack, w, winds, tuple(links), slack == 0)
