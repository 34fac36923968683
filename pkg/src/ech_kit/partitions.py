"""Partition conditions, branched covers of trivial cylinders and strips,
and the cover-induced partial order on partitions.

Elliptic partitions come from lattice paths: ``p⁺_θ(m)`` is read off the
upper concave hull of ``{(i, ⌊iθ⌋) : 0 ≤ i ≤ m}``.  Every lattice point on
the hull is a vertex, so an edge with displacement ``(dx, dy)`` contributes
``gcd(dx, dy)`` parts of size ``dx / gcd``.  ``p⁻_θ(m) = p⁺_{−θ}(m)``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .core import ChordDescriptor, Elliptic, NegativeHyperbolic, OrbitDescriptor, PositiveHyperbolic, ReebDatum
from .cz import cz_orbit_iterate
from .errors import CapabilityError, CoverError, DegeneracyError, InputError

LEQ_SEARCH_BOUND = 8


class Partition(tuple):
    """Non-increasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = list(parts)
        for a in parts:
            if isinstance(a, bool) or not isinstance(a, int) or a < 1:
                raise InputError(f"partition parts must be positive integers, got {a!r}")
        if not parts:
            raise InputError("a partition needs at least one part")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def total(self) -> int:
        return sum(self)

    @property
    def parts(self) -> tuple:
        return tuple(self)

    def __repr__(self):
        return f"Partition({tuple(self)!r})"


def all_partitions(m: int) -> List[Partition]:
    """Every partition of ``m``, in reverse-lexicographic order."""
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(Partition(acc))
            return
        for a in range(min(rest, cap), 0, -1):
            rec(rest - a, a, acc + [a])

    rec(m, m, [])
    return out


# ---------------------------------------------------------------------------
# lattice-path partitions


def _check_theta(theta: Fraction, m: int):
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    theta = Fraction(theta)
    for i in range(1, m + 1):
        if (i * theta).denominator == 1:
            raise DegeneracyError(theta, i)
    return theta


def _upper_hull(points: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Upper hull of points sorted by x (monotone chain, collinear points dropped)."""
    hull: List[Tuple[int, int]] = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it makes a strict right turn
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def hull_parts(points: Sequence[Tuple[int, int]]) -> Partition:
    parts = []
    hull = _upper_hull(points)
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        dx, dy = x2 - x1, y2 - y1
        g = math.gcd(dx, dy)
        parts.extend([dx // g] * g)
    return Partition(parts)


def lattice_path(theta, m: int, sign: str = "+") -> List[Tuple[int, int]]:
    """Vertices of the generating path, every lattice point on it included.

    For ``sign = "-"`` the path is the one for ``−θ``.
    """
    theta = _check_theta(theta, m)
    if _sign(sign) == "-":
        theta = -theta
    hull = _upper_hull([(i, math.floor(i * theta)) for i in range(m + 1)])
    path = [hull[0]]
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        g = math.gcd(x2 - x1, y2 - y1)
        sx, sy = (x2 - x1) // g, (y2 - y1) // g
        path.extend((x1 + k * sx, y1 + k * sy) for k in range(1, g + 1))
    return path


def partition_positive(theta, m: int) -> Partition:
    theta = _check_theta(theta, m)
    return hull_parts([(i, math.floor(i * theta)) for i in range(m + 1)])


def partition_negative(theta, m: int) -> Partition:
    theta = _check_theta(theta, m)
    return hull_parts([(i, math.floor(-i * theta)) for i in range(m + 1)])


def partition_for_orbit(orbit: OrbitDescriptor, m: int, sign: str) -> Partition:
    sign = _sign(sign)
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    kind = orbit.kind
    if isinstance(kind, PositiveHyperbolic):
        return Partition([1] * m)
    if isinstance(kind, NegativeHyperbolic):
        return Partition([2] * (m // 2) + [1] * (m % 2))
    if sign == "+":
        return partition_positive(kind.theta, m)
    return partition_negative(kind.theta, m)


def _sign(sign) -> str:
    if sign in ("+", 1, "pos", "positive"):
        return "+"
    if sign in ("-", -1, "neg", "negative"):
        return "-"
    raise InputError(f"sign must be '+' or '-', got {sign!r}")


# ---------------------------------------------------------------------------
# covers of trivial cylinders and strips


def cover_index(orbit: OrbitDescriptor, pos, neg, genus: int = 0, n_components: int = 1) -> int:
    """Fredholm index of a branched cover of the trivial cylinder over ``orbit``."""
    pos, neg = Partition(pos), Partition(neg)
    if pos.total != neg.total:
        raise CoverError(f"end totals differ: {pos.total} vs {neg.total}")
    if genus < 0 or n_components < 1:
        raise CoverError("genus must be ≥ 0 and there must be at least one component")
    if n_components > min(len(pos), len(neg)):
        raise CoverError("each component needs a positive and a negative end")
    chi = 2 * n_components - 2 * genus - len(pos) - len(neg)
    return (
        -chi
        + sum(cz_orbit_iterate(orbit, a) for a in pos)
        - sum(cz_orbit_iterate(orbit, b) for b in neg)
    )


def strip_cover_index(m: int, n_components: int, genus: int = 0, n_boundary_circles: int = None) -> int:
    """Index ``−χ̄`` of an ``m``-fold cover of a trivial strip.

    Every strand of a chord end has multiplicity one, so the CZ terms cancel
    and only the orbifold Euler characteristic of the cover remains.
    """
    h = n_components if n_boundary_circles is None else n_boundary_circles
    if not (1 <= n_components <= h <= m) or genus < 0:
        raise CoverError(
            f"need 1 ≤ components ({n_components}) ≤ boundary circles ({h}) ≤ strands ({m}) and genus ≥ 0"
        )
    chi_bar = Fraction(2 * n_components - 2 * genus - h) - Fraction(2 * m, 2)
    return int(-chi_bar)


def strip_cover_is_unbranched(m: int, n_components: int, genus: int = 0, n_boundary_circles: int = None) -> bool:
    h = n_components if n_boundary_circles is None else n_boundary_circles
    return genus == 0 and n_components == m and h == m


# ---------------------------------------------------------------------------
# partial order


def partition_leq(orbit: OrbitDescriptor, p, q, bound: int = LEQ_SEARCH_BOUND) -> bool:
    """``p ≺ q``: some genus-0 cover with positive ends ``q`` and negative
    ends ``p`` has every component of index zero."""
    p, q = Partition(p), Partition(q)
    if p.total != q.total:
        raise CoverError(f"partitions of different totals: {p.total} vs {q.total}")
    if p.total > bound:
        raise CapabilityError(f"order search is capped at m = {bound}; got m = {p.total} (unknown)")
    if isinstance(orbit.kind, Elliptic):
        _check_theta(orbit.kind.theta, p.total)
    cz = {k: cz_orbit_iterate(orbit, k) for k in range(1, p.total + 1)}
    return _decomposes(tuple(q), tuple(p), tuple(sorted(cz.items())))


@lru_cache(maxsize=None)
def _decomposes(pos: tuple, neg: tuple, cz_items: tuple) -> bool:
    if not pos and not neg:
        return True
    if not pos or not neg:
        return False
    cz = dict(cz_items)
    first, rest_pos = pos[0], pos[1:]
    for pos_sub in _sub_multisets(rest_pos):
        group_pos = (first,) + pos_sub
        total = sum(group_pos)
        for neg_sub in _sub_multisets(neg, nonempty=True):
            if sum(neg_sub) != total:
                continue
            ends = len(group_pos) + len(neg_sub)
            index = ends - 2 + sum(cz[a] for a in group_pos) - sum(cz[b] for b in neg_sub)
            if index != 0:
                continue
            if _decomposes(_remove(rest_pos, pos_sub), _remove(neg, neg_sub), cz_items):
                return True
    return False


def _sub_multisets(parts: tuple, nonempty=False):
    counts = sorted(Counter(parts).items(), reverse=True)
    ranges = [range(c + 1) for _, c in counts]
    for choice in itertools.product(*ranges):
        sub = tuple(v for (v, _), k in zip(counts, choice) for _ in range(k))
        if nonempty and not sub:
            continue
        yield sub


def _remove(parts: tuple, sub: tuple) -> tuple:
    left = Counter(parts)
    left.subtract(sub)
    return tuple(sorted(left.elements(), reverse=True))


# ---------------------------------------------------------------------------
# checker


@dataclass(frozen=True)
class EndReport:
    name: str
    sign: str
    observed: tuple
    expected: tuple
    ok: bool


@dataclass(frozen=True)
class PartitionVerdict:
    passed: bool
    ends: tuple = field(default_factory=tuple)

    def to_json(self):
        return {
            "pass": self.passed,
            "ends": [
                {"name": e.name, "sign": e.sign, "observed": list(e.observed), "expected": list(e.expected), "ok": e.ok}
                for e in self.ends
            ],
        }


def check_partition_conditions(ends, datum: ReebDatum = None) -> PartitionVerdict:
    """Compare observed end partitions with the distinguished ones.

    ``ends`` holds ``(element, sign, multiplicities)`` triples where the
    element is a descriptor or, when ``datum`` is given, a name.  Chord
    ends must consist of multiplicity-one strands, and a chord at a
    negative end must itself have multiplicity one.
    """
    reports = []
    for element, sign, mults in ends:
        if isinstance(element, str):
            if datum is None:
                raise InputError("resolving end names needs a Reeb datum")
            element = datum[element]
        sign = _sign(sign)
        observed = Partition(mults)
        m = observed.total
        if isinstance(element, ChordDescriptor):
            expected = Partition([1] * m) if sign == "+" else Partition([1])
            ok = observed == expected
        else:
            expected = partition_for_orbit(element, m, sign)
            ok = observed == expected
        reports.append(EndReport(element.name, sign, tuple(observed), tuple(expected), ok))
    return PartitionVerdict(all(r.ok for r in reports), tuple(reports))
