"""Action-filtered generators and verification of user-supplied
differentials over F2 and F2[t].

Generators are written as labels such as ``"c*e^2"``; ``"[]"`` is the empty
set.  Polynomials over F2 are stored as integer bitmasks (bit ``k`` is the
coefficient of ``t^k``).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .core import (
    EMPTY,
    ChordDescriptor,
    OrbitChordSet,
    OrbitDescriptor,
    ReebDatum,
    action_of,
    format_rational,
    parse_rational,
    parse_set_label,
    set_label,
)
from .errors import ConsistencyError, InputError, PositivityError, ResolutionError

ZERO_CLASS = "0"

# ---------------------------------------------------------------------------
# enumeration


def _set_key(s: OrbitChordSet, datum: ReebDatum):
    return (action_of(s, datum), tuple(sorted(s.items())))


def enumerate_sets(datum: ReebDatum, L) -> List[OrbitChordSet]:
    """Every orbit-chord set of action at most ``L``, ordered by action then
    by the sorted ``(name, multiplicity)`` tuple."""
    L = parse_rational(L) if isinstance(L, str) else Fraction(L)
    if L <= 0:
        raise InputError(f"action cap must be positive, got {L}")
    elements = sorted(datum.elements, key=lambda e: e.name)
    out: List[OrbitChordSet] = []

    def rec(i, budget, acc):
        if i == len(elements):
            out.append(OrbitChordSet(acc))
            return
        el = elements[i]
        m = 0
        while m * el.action <= budget:
            rec(i + 1, budget - m * el.action, acc + ([(el.name, m)] if m else []))
            m += 1

    rec(0, L, [])
    out.sort(key=lambda s: _set_key(s, datum))
    return out


# ---------------------------------------------------------------------------
# admissibility and grading


def is_ech_generator(s: OrbitChordSet, datum: ReebDatum) -> Tuple[bool, str]:
    """Hyperbolic orbits and chords appear once; each Legendrian component
    meets at most one chord."""
    s.check(datum)
    incident: Dict[str, str] = {}
    for name, m in s.items():
        el = datum[name]
        if isinstance(el, OrbitDescriptor):
            if el.is_hyperbolic and m != 1:
                return False, f"hyperbolic orbit {name!r} has multiplicity {m}"
        else:
            if m != 1:
                return False, f"chord {name!r} has multiplicity {m}"
            for comp in sorted(el.components):
                if comp in incident:
                    return False, f"chords {incident[comp]!r} and {name!r} both meet Legendrian component {comp!r}"
                incident[comp] = name
    return True, "ok"


def h1_class(s: OrbitChordSet, datum: ReebDatum) -> str:
    """Formal sum of per-element class labels, e.g. ``"2g+h"``; ``"0"`` is zero."""
    s.check(datum)
    coeff: Dict[str, int] = defaultdict(int)
    for name, m in s.items():
        label = datum[name].h1_class
        if label != ZERO_CLASS:
            coeff[label] += m
    if not coeff:
        return ZERO_CLASS
    return "+".join(lbl if c == 1 else f"{c}{lbl}" for lbl, c in sorted(coeff.items()))


# ---------------------------------------------------------------------------
# complex


@dataclass(frozen=True)
class ComplexSpec:
    datum: ReebDatum
    action_cap: Fraction
    generators: Tuple[OrbitChordSet, ...]
    class_of: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "action_cap", Fraction(self.action_cap))
        object.__setattr__(self, "generators", tuple(self.generators))
        seen = set()
        for g in self.generators:
            ok, reason = is_ech_generator(g, self.datum)
            if not ok:
                raise InputError(f"{set_label(g)} is not an ECH generator: {reason}")
            if action_of(g, self.datum) > self.action_cap:
                raise InputError(f"{set_label(g)} exceeds the action cap {self.action_cap}")
            if g in seen:
                raise InputError(f"duplicate generator {set_label(g)}")
            seen.add(g)
        classes = {set_label(g): h1_class(g, self.datum) for g in self.generators}
        given = dict(self.class_of) if self.class_of else classes
        if given != classes:
            raise ConsistencyError("class_of does not match the generators' homology classes")
        object.__setattr__(self, "class_of", classes)

    @property
    def labels(self) -> List[str]:
        return [set_label(g) for g in self.generators]

    def resolve(self, label: str) -> OrbitChordSet:
        s = parse_set_label(label)
        if s not in self.generators:
            raise ResolutionError(label, "the complex's generators")
        return s

    def action(self, s: OrbitChordSet) -> Fraction:
        return action_of(s, self.datum)

    def by_class(self) -> Dict[str, List[OrbitChordSet]]:
        groups: Dict[str, List[OrbitChordSet]] = {}
        for g in self.generators:
            groups.setdefault(self.class_of[set_label(g)], []).append(g)
        return groups

    def reordered(self, order) -> "ComplexSpec":
        return ComplexSpec(self.datum, self.action_cap, tuple(self.generators[i] for i in order), self.class_of)

    def to_json(self) -> dict:
        return {
            "datum": self.datum.to_json(),
            "action_cap": format_rational(self.action_cap),
            "generators": self.labels,
            "class_of": dict(sorted(self.class_of.items())),
        }

    @classmethod
    def from_json(cls, obj) -> "ComplexSpec":
        if not isinstance(obj, dict) or not {"datum", "action_cap", "generators"} <= set(obj):
            raise InputError("complex spec needs 'datum', 'action_cap' and 'generators'")
        datum = ReebDatum.from_json(obj["datum"])
        gens = tuple(parse_set_label(g) for g in obj["generators"])
        return cls(datum, parse_rational(obj["action_cap"]), gens, obj.get("class_of", {}))


def build_complex(datum: ReebDatum, L) -> ComplexSpec:
    sets = enumerate_sets(datum, L)
    gens = tuple(s for s in sets if is_ech_generator(s, datum)[0])
    L = parse_rational(L) if isinstance(L, str) else Fraction(L)
    return ComplexSpec(datum, L, gens, {})


# ---------------------------------------------------------------------------
# differentials


@dataclass(frozen=True)
class DifferentialCounts:
    """``entries[(a, b)]`` is the mod-2 count of ``a → b``; ``t_entries[(a, b)]``
    lists ``(exponent, count)`` terms of a polynomial in ``t``."""

    entries: Mapping[Tuple[str, str], int] = field(default_factory=dict)
    t_entries: Optional[Mapping[Tuple[str, str], tuple]] = None

    def __post_init__(self):
        reduced = {}
        for key, c in dict(self.entries).items():
            if isinstance(c, bool) or not isinstance(c, int):
                raise InputError(f"count for {key} must be an integer")
            if c % 2:
                reduced[key] = 1
        object.__setattr__(self, "entries", reduced)
        if self.t_entries is not None:
            polys = {}
            for key, terms in dict(self.t_entries).items():
                mask = 0
                for k, c in terms:
                    if isinstance(k, bool) or not isinstance(k, int):
                        raise InputError(f"t-exponent for {key} must be an integer")
                    if k < 0:
                        raise PositivityError(f"negative t-exponent {k} on {key[0]} → {key[1]}")
                    if c % 2:
                        mask ^= 1 << k
                if mask:
                    polys[key] = mask
            object.__setattr__(self, "t_entries", polys)

    def specialized(self) -> "DifferentialCounts":
        """The ``t = 1`` specialization of the polynomial entries."""
        if self.t_entries is None:
            return DifferentialCounts(self.entries)
        return DifferentialCounts({k: bin(p).count("1") for k, p in self.t_entries.items()})

    @classmethod
    def from_json(cls, obj) -> "DifferentialCounts":
        if not isinstance(obj, dict):
            raise InputError("counts must be a JSON object")
        entries = {}
        for e in obj.get("entries", []):
            if not isinstance(e, dict) or not {"from", "to"} <= set(e):
                raise InputError("each entry needs 'from' and 'to'")
            key = (e["from"], e["to"])
            entries[key] = entries.get(key, 0) + e.get("count", 1)
        t_entries = None
        if "t_entries" in obj:
            t_entries = {}
            for e in obj["t_entries"]:
                if not isinstance(e, dict) or not {"from", "to", "terms"} <= set(e):
                    raise InputError("each t-entry needs 'from', 'to' and 'terms'")
                try:
                    terms = [(k, c) for k, c in e["terms"]]
                except (TypeError, ValueError):
                    raise InputError("terms must be [exponent, count] pairs") from None
                t_entries.setdefault((e["from"], e["to"]), []).extend(terms)
        return cls(entries, t_entries)


@dataclass(frozen=True)
class DifferentialVerdict:
    passed: bool
    reason: str = "ok"
    witness: Optional[Tuple[str, str]] = None
    middles: Tuple[str, ...] = ()

    def to_json(self):
        out = {"pass": self.passed, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = {"from": self.witness[0], "to": self.witness[1], "middles": list(self.middles)}
        return out


def _resolve_keys(spec: ComplexSpec, keys):
    index = {g: i for i, g in enumerate(spec.generators)}
    out = {}
    for a, b in keys:
        out[(a, b)] = (index[spec.resolve(a)], index[spec.resolve(b)])
    return out


def _admissibility(spec: ComplexSpec, keys) -> Optional[DifferentialVerdict]:
    for (a, b) in sorted(keys):
        sa, sb = spec.resolve(a), spec.resolve(b)
        if not spec.action(sb) < spec.action(sa):
            return DifferentialVerdict(False, f"{a} → {b} does not decrease action", (a, b))
        if spec.class_of[set_label(sa)] != spec.class_of[set_label(sb)]:
            return DifferentialVerdict(False, f"{a} → {b} changes the homology class", (a, b))
    return None


def verify_differential(spec: ComplexSpec, d: DifferentialCounts) -> DifferentialVerdict:
    """Check filtration, grading and ``∂² = 0`` over F2."""
    pos = _resolve_keys(spec, d.entries)
    bad = _admissibility(spec, d.entries)
    if bad is not None:
        return bad
    n = len(spec.generators)
    rows: List[int] = [0] * n  # bitmask of targets per source
    for (a, b), (i, j) in pos.items():
        rows[i] |= 1 << j
    labels = spec.labels
    for i in range(n):
        sq = 0
        r = rows[i]
        j = 0
        while r:
            if r & 1:
                sq ^= rows[j]
            r >>= 1
            j += 1
        if sq:
            k = (sq & -sq).bit_length() - 1
            middles = tuple(labels[j] for j in range(n) if (rows[i] >> j) & 1 and (rows[j] >> k) & 1)
            return DifferentialVerdict(False, "∂² ≠ 0", (labels[i], labels[k]), middles)
    return DifferentialVerdict(True)


def _clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def verify_extended_differential(spec: ComplexSpec, d: DifferentialCounts) -> DifferentialVerdict:
    """Check ``∂² = 0`` over F2[t] and consistency with the ``t = 1`` differential."""
    if d.t_entries is None:
        raise InputError("the extended check needs t_entries")
    pos = _resolve_keys(spec, d.t_entries)
    n = len(spec.generators)
    matrix: List[Dict[int, int]] = [dict() for _ in range(n)]
    for key, (i, j) in pos.items():
        matrix[i][j] = d.t_entries[key]
    labels = spec.labels
    for i in range(n):
        acc: Dict[int, int] = defaultdict(int)
        for j, p in matrix[i].items():
            for k, q in matrix[j].items():
                acc[k] ^= _clmul(p, q)
        nonzero = sorted(k for k, v in acc.items() if v)
        if nonzero:
            k = nonzero[0]
            middles = tuple(labels[j] for j in sorted(matrix[i]) if k in matrix[j])
            return DifferentialVerdict(False, "∂² ≠ 0 over F2[t]", (labels[i], labels[k]), middles)
    special = d.specialized()
    if d.entries and d.entries != special.entries:
        diff = sorted(set(d.entries) ^ set(special.entries))
        return DifferentialVerdict(False, "t = 1 specialization differs from the plain counts", diff[0])
    plain = verify_differential(spec, special)
    if not plain.passed:
        return DifferentialVerdict(False, f"t = 1 specialization: {plain.reason}", plain.witness, plain.middles)
    return DifferentialVerdict(True)
