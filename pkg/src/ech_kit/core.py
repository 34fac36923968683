"""Exact scalars, the Reeb-data catalog, orbit-chord multisets and
trivialization offsets."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from numbers import Integral, Rational
from typing import Iterable, Iterator, Mapping, Union

from .errors import ConventionError, InputError, NotHalfIntegral, ResolutionError

# ---------------------------------------------------------------------------
# half-integers


@total_ordering
class HalfInt:
    """An exact element of (1/2)Z, stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, value=0, *, twice=None):
        if twice is not None:
            if not isinstance(twice, Integral):
                raise TypeError(f"twice must be an integer, got {twice!r}")
            object.__setattr__(self, "twice", int(twice))
            return
        if isinstance(value, HalfInt):
            t = value.twice
        elif isinstance(value, Integral):
            t = 2 * int(value)
        elif isinstance(value, Rational):
            doubled = Fraction(value) * 2
            if doubled.denominator != 1:
                raise NotHalfIntegral(f"{value} is not in (1/2)Z")
            t = int(doubled)
        elif isinstance(value, str):
            return self.__init__(parse_rational(value))
        else:
            raise TypeError(f"cannot make a HalfInt from {value!r}")
        object.__setattr__(self, "twice", t)

    def __setattr__(self, name, value):
        raise AttributeError("HalfInt is immutable")

    @classmethod
    def coerce(cls, value) -> "HalfInt":
        return value if isinstance(value, HalfInt) else cls(value)

    # queries
    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    @property
    def is_strict_half(self) -> bool:
        return self.twice % 2 != 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __int__(self):
        if not self.is_integer:
            raise NotHalfIntegral(f"{self} is not an integer")
        return self.twice // 2

    def __index__(self):
        return self.__int__()

    def __float__(self):
        return self.twice / 2

    def halve(self) -> "HalfInt":
        """Exact half; raises when the result leaves (1/2)Z."""
        if self.twice % 2:
            raise NotHalfIntegral(f"{self}/2 is not in (1/2)Z")
        return HalfInt(twice=self.twice // 2)

    # arithmetic
    def __add__(self, other):
        other = _as_halfint(other)
        if other is NotImplemented:
            return other
        return HalfInt(twice=self.twice + other.twice)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_halfint(other)
        if other is NotImplemented:
            return other
        return HalfInt(twice=self.twice - other.twice)

    def __rsub__(self, other):
        other = _as_halfint(other)
        if other is NotImplemented:
            return other
        return HalfInt(twice=other.twice - self.twice)

    def __neg__(self):
        return HalfInt(twice=-self.twice)

    def __pos__(self):
        return self

    def __abs__(self):
        return HalfInt(twice=abs(self.twice))

    def __mul__(self, other):
        if isinstance(other, Integral):
            return HalfInt(twice=self.twice * int(other))
        other = _as_halfint(other)
        if other is NotImplemented:
            return other
        prod = self.twice * other.twice
        if prod % 2:
            raise NotHalfIntegral(f"{self} * {other} is not in (1/2)Z")
        return HalfInt(twice=prod // 2)

    __rmul__ = __mul__

    # comparison and hashing
    def __eq__(self, other):
        if isinstance(other, HalfInt):
            return self.twice == other.twice
        if isinstance(other, Rational):
            return Fraction(self.twice, 2) == other
        if isinstance(other, float):
            return self.twice / 2 == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, HalfInt):
            return self.twice < other.twice
        if isinstance(other, (Rational, float)):
            return Fraction(self.twice, 2) < other
        return NotImplemented

    def __hash__(self):
        return hash(Fraction(self.twice, 2))

    def __bool__(self):
        return self.twice != 0

    def __repr__(self):
        return f"HalfInt({self})"

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def to_json(self):
        return {"twice": self.twice}

    @classmethod
    def from_json(cls, obj) -> "HalfInt":
        if isinstance(obj, dict):
            if set(obj) != {"twice"}:
                raise InputError(f"half-integer object must be {{'twice': n}}, got {obj!r}")
            tw = obj["twice"]
            if isinstance(tw, bool) or not isinstance(tw, int):
                raise InputError(f"'twice' must be an integer, got {tw!r}")
            return cls(twice=tw)
        if isinstance(obj, bool):
            raise InputError(f"not a half-integer: {obj!r}")
        if isinstance(obj, int):
            return cls(obj)
        if isinstance(obj, str):
            try:
                return cls(parse_rational(obj))
            except NotHalfIntegral as exc:
                raise InputError(str(exc)) from None
        raise InputError(f"not a half-integer: {obj!r}")


def _as_halfint(value):
    if isinstance(value, HalfInt):
        return value
    if isinstance(value, (Integral, Rational)):
        return HalfInt(value)
    return NotImplemented


ZERO = HalfInt(0)
HALF = HalfInt(twice=1)

# ---------------------------------------------------------------------------
# rationals


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"n"`` or an int into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise InputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InputError(f"rationals are serialized as 'p/q' strings, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"malformed rational {text!r}") from None


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Elliptic:
    theta: Fraction

    def __post_init__(self):
        theta = Fraction(self.theta)
        object.__setattr__(self, "theta", theta)
        if not 0 < theta < 1:
            raise InputError(f"elliptic rotation number must lie in (0, 1), got {theta}")


@dataclass(frozen=True)
class PositiveHyperbolic:
    r: int = 0

    def __post_init__(self):
        if self.r % 2:
            raise InputError(f"positive hyperbolic orbits need an even CZ index, got {self.r}")


@dataclass(frozen=True)
class NegativeHyperbolic:
    r: int = 1

    def __post_init__(self):
        if self.r % 2 == 0:
            raise InputError(f"negative hyperbolic orbits need an odd CZ index, got {self.r}")


OrbitKind = Union[Elliptic, PositiveHyperbolic, NegativeHyperbolic]


@dataclass(frozen=True)
class OrbitDescriptor:
    name: str
    kind: OrbitKind
    action: Fraction
    h1_class: str = "0"

    def __post_init__(self):
        object.__setattr__(self, "action", Fraction(self.action))
        if self.action <= 0:
            raise InputError(f"orbit {self.name!r}: action must be positive")

    @property
    def is_elliptic(self) -> bool:
        return isinstance(self.kind, Elliptic)

    @property
    def is_hyperbolic(self) -> bool:
        return not self.is_elliptic


@dataclass(frozen=True)
class ChordDescriptor:
    name: str
    cz: HalfInt
    action: Fraction
    legendrian_from: str
    legendrian_to: str
    h1_class: str = "0"

    def __post_init__(self):
        object.__setattr__(self, "cz", HalfInt.coerce(self.cz))
        object.__setattr__(self, "action", Fraction(self.action))
        if not self.cz.is_strict_half:
            raise InputError(f"chord {self.name!r}: CZ index must be a strict half-integer, got {self.cz}")
        if self.action <= 0:
            raise InputError(f"chord {self.name!r}: action must be positive")

    @property
    def components(self) -> frozenset:
        return frozenset((self.legendrian_from, self.legendrian_to))


Element = Union[OrbitDescriptor, ChordDescriptor]


@dataclass(frozen=True)
class ReebDatum:
    orbits: tuple = ()
    chords: tuple = ()
    legendrian_components: tuple = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple(self.orbits))
        object.__setattr__(self, "chords", tuple(self.chords))
        object.__setattr__(self, "legendrian_components", tuple(self.legendrian_components))
        index = {}
        for el in self.orbits + self.chords:
            if el.name in index:
                raise InputError(f"duplicate name {el.name!r} in Reeb datum")
            index[el.name] = el
        comps = set(self.legendrian_components)
        if len(comps) != len(self.legendrian_components):
            raise InputError("duplicate Legendrian component id")
        for c in self.chords:
            for end in (c.legendrian_from, c.legendrian_to):
                if end not in comps:
                    raise InputError(f"chord {c.name!r} ends on undeclared Legendrian component {end!r}")
        object.__setattr__(self, "_index", index)

    def __getitem__(self, name) -> Element:
        try:
            return self._index[name]
        except KeyError:
            raise ResolutionError(name) from None

    def __contains__(self, name):
        return name in self._index

    @property
    def names(self) -> tuple:
        return tuple(self._index)

    @property
    def elements(self) -> tuple:
        return self.orbits + self.chords

    def is_chord(self, name) -> bool:
        return isinstance(self[name], ChordDescriptor)

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        orbits = []
        for o in self.orbits:
            entry = {"name": o.name, "action": format_rational(o.action), "h1_class": o.h1_class}
            if isinstance(o.kind, Elliptic):
                entry["kind"] = {"elliptic": {"theta": format_rational(o.kind.theta)}}
            elif isinstance(o.kind, PositiveHyperbolic):
                entry["kind"] = "pos_hyperbolic"
                entry["r"] = o.kind.r
            else:
                entry["kind"] = "neg_hyperbolic"
                entry["r"] = o.kind.r
            orbits.append(entry)
        chords = [
            {
                "name": c.name,
                "cz": c.cz.to_json(),
                "action": format_rational(c.action),
                "legendrian_from": c.legendrian_from,
                "legendrian_to": c.legendrian_to,
                "h1_class": c.h1_class,
            }
            for c in self.chords
        ]
        return {"orbits": orbits, "chords": chords, "legendrian_components": list(self.legendrian_components)}

    @classmethod
    def from_json(cls, obj) -> "ReebDatum":
        if not isinstance(obj, dict):
            raise InputError("Reeb datum must be a JSON object")
        unknown = set(obj) - {"orbits", "chords", "legendrian_components"}
        if unknown:
            raise InputError(f"unknown Reeb datum keys: {sorted(unknown)}")
        orbits = [_orbit_from_json(o) for o in obj.get("orbits", [])]
        chords = [_chord_from_json(c) for c in obj.get("chords", [])]
        comps = obj.get("legendrian_components", [])
        if not isinstance(comps, list) or not all(isinstance(c, str) for c in comps):
            raise InputError("legendrian_components must be a list of strings")
        return cls(orbits, chords, comps)

    @classmethod
    def loads(cls, text: str) -> "ReebDatum":
        return cls.from_json(json.loads(text))


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing key {key!r}")
    return obj[key]


def _orbit_from_json(obj) -> OrbitDescriptor:
    name = _require(obj, "name", "orbit")
    kind = _require(obj, "kind", f"orbit {name!r}")
    if isinstance(kind, dict) and set(kind) == {"elliptic"}:
        theta = parse_rational(_require(kind["elliptic"], "theta", f"orbit {name!r}"))
        k = Elliptic(theta)
    elif kind == "pos_hyperbolic":
        k = PositiveHyperbolic(_int_field(obj, "r", name, default=0))
    elif kind == "neg_hyperbolic":
        k = NegativeHyperbolic(_int_field(obj, "r", name, default=1))
    else:
        raise InputError(f"orbit {name!r}: unknown kind {kind!r}")
    action = parse_rational(_require(obj, "action", f"orbit {name!r}"))
    return OrbitDescriptor(name, k, action, str(obj.get("h1_class", "0")))


def _int_field(obj, key, name, default):
    v = obj.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"orbit {name!r}: {key!r} must be an integer")
    return v


def _chord_from_json(obj) -> ChordDescriptor:
    name = _require(obj, "name", "chord")
    cz = HalfInt.from_json(_require(obj, "cz", f"chord {name!r}"))
    action = parse_rational(_require(obj, "action", f"chord {name!r}"))
    src = obj.get("legendrian_from", obj.get("from"))
    dst = obj.get("legendrian_to", obj.get("to"))
    if src is None or dst is None:
        raise InputError(f"chord {name!r}: missing Legendrian endpoints")
    return ChordDescriptor(name, cz, action, src, dst, str(obj.get("h1_class", "0")))


# ---------------------------------------------------------------------------
# orbit-chord sets


class OrbitChordSet(Mapping):
    """Finite multiset of simple orbits and chords, as ``name -> multiplicity``."""

    __slots__ = ("_items", "_map")

    def __init__(self, entries: Union[Mapping, Iterable] = ()):
        if isinstance(entries, Mapping):
            pairs = entries.items()
        else:
            pairs = entries
        merged: dict = {}
        for name, m in pairs:
            if isinstance(m, bool) or not isinstance(m, Integral):
                raise InputError(f"multiplicity of {name!r} must be an integer")
            if m < 1:
                raise InputError(f"multiplicity of {name!r} must be positive, got {m}")
            merged[name] = merged.get(name, 0) + int(m)
        items = tuple(sorted(merged.items()))
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "_map", dict(items))

    def __setattr__(self, name, value):
        raise AttributeError("OrbitChordSet is immutable")

    def __getitem__(self, name):
        return self._map[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._map)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return hash(self._items)

    def __eq__(self, other):
        if isinstance(other, OrbitChordSet):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self._map == dict(other)
        return NotImplemented

    def __repr__(self):
        return f"OrbitChordSet({dict(self._items)!r})"

    @property
    def total(self) -> int:
        return sum(m for _, m in self._items)

    def check(self, datum: ReebDatum) -> None:
        for name in self._map:
            datum[name]

    def decremented(self) -> "OrbitChordSet":
        """Every multiplicity reduced by one; multiplicity-one entries vanish."""
        return OrbitChordSet({n: m - 1 for n, m in self._items if m > 1})

    @property
    def label(self) -> str:
        return set_label(self)

    def to_json(self) -> dict:
        return dict(self._items)


EMPTY = OrbitChordSet()


def set_label(s: Mapping) -> str:
    """Canonical text form: ``"c*e^2"``; the empty set is ``"[]"``."""
    if not s:
        return "[]"
    parts = []
    for name, m in sorted(s.items()):
        parts.append(name if m == 1 else f"{name}^{m}")
    return "*".join(parts)


def parse_set_label(text: str) -> OrbitChordSet:
    text = text.strip()
    if text in ("[]", "", "1"):
        return EMPTY
    entries = []
    for tok in text.split("*"):
        name, _, mult = tok.partition("^")
        name = name.strip()
        if not name:
            raise InputError(f"malformed orbit-chord set label {text!r}")
        try:
            entries.append((name, int(mult) if mult else 1))
        except ValueError:
            raise InputError(f"malformed multiplicity in {text!r}") from None
    return OrbitChordSet(entries)


def set_from_json(obj) -> OrbitChordSet:
    if isinstance(obj, str):
        return parse_set_label(obj)
    if isinstance(obj, dict):
        return OrbitChordSet(obj)
    if isinstance(obj, list):
        try:
            return OrbitChordSet((str(n), m) for n, m in obj)
        except (TypeError, ValueError):
            raise InputError(f"malformed orbit-chord set {obj!r}") from None
    raise InputError(f"malformed orbit-chord set {obj!r}")


def action_of(s: OrbitChordSet, datum: ReebDatum) -> Fraction:
    return sum((m * datum[name].action for name, m in s.items()), Fraction(0))


def set_union(a: Mapping, b: Mapping) -> OrbitChordSet:
    return OrbitChordSet(list(a.items()) + list(b.items()))


# ---------------------------------------------------------------------------
# trivializations


class TrivializationOffset(Mapping):
    """Per simple orbit or chord difference of two trivializations."""

    __slots__ = ("_map",)

    def __init__(self, per_element: Mapping = None, **kwargs):
        per_element = dict(per_element or {}, **kwargs)
        object.__setattr__(self, "_map", {n: HalfInt.coerce(d) for n, d in per_element.items()})

    def __setattr__(self, name, value):
        raise AttributeError("TrivializationOffset is immutable")

    def __getitem__(self, name):
        return self._map[name]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __repr__(self):
        return f"TrivializationOffset({ {k: str(v) for k, v in self._map.items()} })"

    def of(self, name) -> HalfInt:
        return self._map.get(name, ZERO)

    def check(self, datum: ReebDatum) -> None:
        for name, d in self._map.items():
            el = datum[name]
            if isinstance(el, OrbitDescriptor) and not d.is_integer:
                raise ConventionError(f"orbit offsets are integers; {name!r} has {d}")

    def __add__(self, other: "TrivializationOffset") -> "TrivializationOffset":
        names = set(self._map) | set(other)
        return TrivializationOffset({n: self.of(n) + other.of(n) for n in names})

    def __neg__(self):
        return TrivializationOffset({n: -d for n, d in self._map.items()})

    def to_json(self) -> dict:
        return {n: d.to_json() for n, d in sorted(self._map.items())}

    @classmethod
    def from_json(cls, obj) -> "TrivializationOffset":
        if obj is None:
            return cls()
        if not isinstance(obj, dict):
            raise InputError("offsets must be a JSON object name -> {twice: n}")
        return cls({n: HalfInt.from_json(v) for n, v in obj.items()})


NO_OFFSET = TrivializationOffset()


def trivialization_difference(offsets: TrivializationOffset, s: OrbitChordSet, datum: ReebDatum = None) -> HalfInt:
    if datum is not None:
        s.check(datum)
    return sum((offsets.of(name) * m for name, m in s.items()), ZERO)


def floor_fraction(x: Fraction) -> int:
    return math.floor(x)


orbit_from_json = _orbit_from_json
chord_from_json = _chord_from_json
