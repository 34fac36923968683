"""Random test objects for the property suites.

Everything here draws from an explicit ``numpy.random.Generator`` so the
suites are reproducible from a single seed (``ECH_KIT_SEED``, default 0).
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .braid import CIRCLE, INTERVAL, Braid, Strand
from .core import (
    ChordDescriptor,
    Elliptic,
    HalfInt,
    NegativeHyperbolic,
    OrbitChordSet,
    OrbitDescriptor,
    PositiveHyperbolic,
    ReebDatum,
    TrivializationOffset,
)
from .index import SurfaceClassData, chi_bar_of, total_writhe
from .partitions import Partition


def default_seed() -> int:
    raw = os.environ.get("ECH_KIT_SEED", "0").strip() or "0"
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"ECH_KIT_SEED must be an integer, got {raw!r}") from None


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(default_seed() if seed is None else seed)


# ---------------------------------------------------------------------------
# a fixed mixed datum

MAX_MULT = 4


def mixed_datum() -> ReebDatum:
    """Two elliptic orbits, one orbit of each hyperbolic kind, three chords.

    The elliptic rotation numbers have prime denominators above ``MAX_MULT``
    so no iterate used by the suites is degenerate.
    """
    orbits = [
        OrbitDescriptor("e1", Elliptic(Fraction(3, 11)), Fraction(5, 4), "g"),
        OrbitDescriptor("e2", Elliptic(Fraction(7, 13)), Fraction(3, 2), "0"),
        OrbitDescriptor("h", PositiveHyperbolic(2), Fraction(2), "g"),
        OrbitDescriptor("n", NegativeHyperbolic(-1), Fraction(7, 3), "k"),
    ]
    chords = [
        ChordDescriptor("c1", HalfInt(Fraction(1, 2)), Fraction(1), "L1", "L1", "0"),
        ChordDescriptor("c2", HalfInt(Fraction(-1, 2)), Fraction(3, 4), "L1", "L2", "k"),
        ChordDescriptor("c3", HalfInt(Fraction(3, 2)), Fraction(2, 3), "L2", "L2", "0"),
    ]
    return ReebDatum(orbits, chords, ["L1", "L2"])


def random_partition(rng: np.random.Generator, m: int) -> Partition:
    parts = []
    rest = m
    while rest:
        a = int(rng.integers(1, rest + 1))
        parts.append(a)
        rest -= a
    return Partition(parts)


def random_end(rng: np.random.Generator, datum: ReebDatum, p: float = 0.45, max_mult: int = MAX_MULT) -> OrbitChordSet:
    entries = {}
    for el in datum.elements:
        if rng.random() < p:
            cap = max_mult if isinstance(el, OrbitDescriptor) else 3
            entries[el.name] = int(rng.integers(1, cap + 1))
    return OrbitChordSet(entries)


def _partitions_for(rng, end: OrbitChordSet, datum: ReebDatum):
    out = {}
    for name, m in end.items():
        if isinstance(datum[name], ChordDescriptor):
            out[name] = [1] * m
        else:
            out[name] = list(random_partition(rng, m))
    return out


def random_offsets(rng: np.random.Generator, datum: ReebDatum, lo: int = -3, hi: int = 3, half_chords: bool = False) -> TrivializationOffset:
    out = {}
    for el in datum.elements:
        if half_chords and isinstance(el, ChordDescriptor):
            out[el.name] = HalfInt(twice=int(rng.integers(2 * lo, 2 * hi + 1)))
        else:
            out[el.name] = HalfInt(int(rng.integers(lo, hi + 1)))
    return TrivializationOffset(out)


def random_surface_data(
    rng: np.random.Generator,
    datum: ReebDatum,
    pos: OrbitChordSet = None,
    neg: OrbitChordSet = None,
    with_braids: bool = False,
) -> SurfaceClassData:
    pos = random_end(rng, datum) if pos is None else pos
    neg = random_end(rng, datum) if neg is None else neg
    pos_parts = _partitions_for(rng, pos, datum)
    neg_parts = _partitions_for(rng, neg, datum)
    n_bdry = sum(m for name, m in list(pos.items()) + list(neg.items()) if isinstance(datum[name], ChordDescriptor))
    n_components = int(rng.integers(1, 3))
    circles = None
    if n_bdry:
        circles = int(rng.integers(1, min(n_components, n_bdry) + 1))
    braids = {}
    if with_braids:
        for sign, end, parts in (("+", pos, pos_parts), ("-", neg, neg_parts)):
            for name, m in end.items():
                if m > 1:
                    base = INTERVAL if isinstance(datum[name], ChordDescriptor) else CIRCLE
                    braids[(sign, name)] = random_braid(rng, base, parts[name])
    return SurfaceClassData(
        pos,
        neg,
        pos_partitions=pos_parts,
        neg_partitions=neg_parts,
        genus=int(rng.integers(0, 3)),
        n_components=n_components,
        mu=HalfInt(int(rng.integers(-6, 7))),
        q=HalfInt(twice=int(rng.integers(-8, 9))),
        delta=int(rng.integers(0, 3)),
        epsilon=int(rng.integers(0, 3)),
        braids=braids,
        n_boundary_circles=circles,
    )


def adjunction_consistent(s: SurfaceClassData, datum: ReebDatum) -> SurfaceClassData:
    """Replace ``μ`` by the unique value that makes the adjunction residual vanish."""
    from dataclasses import replace

    target = chi_bar_of(s, datum) + s.q + total_writhe(s) - 2 * s.delta - s.epsilon
    return replace(s, mu=target * 2)


# ---------------------------------------------------------------------------
# braids


def random_strand(rng: np.random.Generator, base: str, wraps: int = 1, n_points: int = None, scale: float = 1.0) -> Strand:
    end = wraps if base == CIRCLE else 1
    k = int(rng.integers(3, 9)) * wraps if n_points is None else n_points
    inner = np.sort(rng.uniform(0.0, float(end), size=k))
    t = np.concatenate(([0.0], inner, [float(end)]))
    t = np.unique(t)
    xy = rng.normal(scale=scale, size=(t.size, 2))
    if base == CIRCLE:
        xy[-1] = xy[0]
    else:
        xy[0, 1] = 0.0
        xy[-1, 1] = 0.0
    return Strand(np.column_stack([t, xy]), wraps)


def random_braid(rng: np.random.Generator, base: str, wraps: List[int] = None, n_strands: int = None) -> Braid:
    if wraps is None:
        n = int(rng.integers(1, 4)) if n_strands is None else n_strands
        wraps = [int(rng.integers(1, 3)) if base == CIRCLE else 1 for _ in range(n)]
    if base == INTERVAL:
        wraps = [1] * sum(wraps)
    return Braid(base, tuple(random_strand(rng, base, w) for w in wraps))


# ---------------------------------------------------------------------------
# potentials and small data


def random_small_datum(rng: np.random.Generator, max_elements: int = 4) -> ReebDatum:
    """Up to ``max_elements`` orbits and chords with small rational actions."""
    n = int(rng.integers(0, max_elements + 1))
    comps = ["L1", "L2"]
    orbits, chords = [], []
    for i in range(n):
        action = Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 4)))
        label = ["0", "g", "h"][int(rng.integers(0, 3))]
        kind = int(rng.integers(0, 4))
        if kind == 0:
            orbits.append(OrbitDescriptor(f"e{i}", Elliptic(Fraction(int(rng.integers(1, 10)), 11)), action, label))
        elif kind == 1:
            orbits.append(OrbitDescriptor(f"h{i}", PositiveHyperbolic(2 * int(rng.integers(-1, 2))), action, label))
        elif kind == 2:
            orbits.append(OrbitDescriptor(f"n{i}", NegativeHyperbolic(2 * int(rng.integers(-1, 2)) + 1), action, label))
        else:
            a, b = comps[int(rng.integers(0, 2))], comps[int(rng.integers(0, 2))]
            chords.append(ChordDescriptor(f"c{i}", HalfInt(twice=2 * int(rng.integers(-2, 3)) + 1), action, a, b, label))
    return ReebDatum(orbits, chords, comps)
