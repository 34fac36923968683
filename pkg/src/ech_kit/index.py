"""ECH index, Fredholm index, adjunction residual and the inequalities
relating them, evaluated exactly on combinatorial surface-class data.

Change of trivialization
------------------------
For an end element of multiplicity ``m`` whose trivialization changes by
``d`` (applied with ``+`` at positive ends and ``−`` at negative ends):

=============  ===========
quantity       change
=============  ===========
μ              ``−2m·d``
Q              ``−m²·d``
CZ(γᵏ)         ``+2k·d``
CZ^ECH         ``+m(m+1)·d``
writhe         ``+m(m−1)·d``
linking        ``+m·n·d``
=============  ===========

With this table ``I`` is invariant and the slack of ``ind ≤ I − 2δ − ε``
is covariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Mapping, Optional, Tuple

from .braid import Braid, rotate_braid, writhe
from .core import (
    ZERO,
    ChordDescriptor,
    HalfInt,
    OrbitChordSet,
    OrbitDescriptor,
    ReebDatum,
    TrivializationOffset,
    set_from_json,
    set_union,
)
from .cz import cz_ech_set, cz_ind_set
from .errors import (
    ConsistencyError,
    InputError,
    NotHalfIntegral,
    PreconditionError,
)
from .partitions import Partition, PartitionVerdict, check_partition_conditions

POS, NEG = "+", "-"


# ---------------------------------------------------------------------------
# orbifold Euler characteristic


def euler_bar(
    genus: int,
    n_components: int,
    n_interior_punctures: int,
    n_boundary_punctures: int,
    n_boundary_circles: Optional[int] = None,
) -> HalfInt:
    """``χ(Σ) − ½χ(∂∘Σ)`` for a punctured surface.

    Each boundary circle carrying ``k ≥ 1`` punctures contributes ``k``
    Lagrangian arcs.  ``n_boundary_circles`` defaults to one per component
    when there are boundary punctures and to zero otherwise.
    """
    counts = (genus, n_components, n_interior_punctures, n_boundary_punctures)
    if any(isinstance(c, bool) or not isinstance(c, int) or c < 0 for c in counts):
        raise InputError(f"topological counts must be non-negative integers, got {counts}")
    if n_components < 1:
        raise InputError("a surface needs at least one component")
    if n_boundary_circles is None:
        h = n_components if n_boundary_punctures else 0
    else:
        h = n_boundary_circles
        if isinstance(h, bool) or not isinstance(h, int) or h < 0:
            raise InputError("boundary circle count must be a non-negative integer")
    if n_boundary_punctures and h == 0:
        raise InputError("boundary punctures need at least one boundary circle")
    if h > n_boundary_punctures and n_boundary_punctures:
        raise InputError("every boundary circle with arcs carries at least one puncture")
    chi = 2 * n_components - 2 * genus - h - n_interior_punctures
    return HalfInt(twice=2 * chi - n_boundary_punctures)


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class SurfaceClassData:
    pos_end: OrbitChordSet
    neg_end: OrbitChordSet
    pos_partitions: Mapping = field(default_factory=dict)
    neg_partitions: Mapping = field(default_factory=dict)
    genus: int = 0
    n_components: int = 1
    mu: HalfInt = ZERO
    q: HalfInt = ZERO
    delta: int = 0
    epsilon: int = 0
    braids: Mapping = field(default_factory=dict)  # (sign, name) -> Braid
    n_boundary_circles: Optional[int] = None
    chi_bar_override: Optional[HalfInt] = None

    def __post_init__(self):
        object.__setattr__(self, "pos_end", _as_set(self.pos_end))
        object.__setattr__(self, "neg_end", _as_set(self.neg_end))
        object.__setattr__(self, "mu", HalfInt.coerce(self.mu))
        object.__setattr__(self, "q", HalfInt.coerce(self.q))
        if self.chi_bar_override is not None:
            object.__setattr__(self, "chi_bar_override", HalfInt.coerce(self.chi_bar_override))
        for attr in ("genus", "delta", "epsilon"):
            v = getattr(self, attr)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise InputError(f"{attr} must be a non-negative integer, got {v!r}")
        if isinstance(self.n_components, bool) or not isinstance(self.n_components, int) or self.n_components < 1:
            raise InputError("n_components must be a positive integer")
        for attr, end in (("pos_partitions", self.pos_end), ("neg_partitions", self.neg_end)):
            parts = {}
            for name, lst in dict(getattr(self, attr)).items():
                if name not in end:
                    raise InputError(f"{attr}: {name!r} is not an end element")
                p = Partition(lst)
                if p.total != end[name]:
                    raise InputError(f"{attr}: parts of {name!r} sum to {p.total}, multiplicity is {end[name]}")
                parts[name] = p
            object.__setattr__(self, attr, parts)
        braids = {}
        for key, b in dict(self.braids).items():
            sign, name = key
            if sign not in (POS, NEG):
                raise InputError(f"braid key sign must be '+' or '-', got {sign!r}")
            end = self.pos_end if sign == POS else self.neg_end
            if name not in end:
                raise InputError(f"braid for {name!r} at the {sign} end, which does not contain it")
            if b.total_multiplicity != end[name]:
                raise InputError(f"braid for {name!r} has {b.total_multiplicity} strands, multiplicity is {end[name]}")
            braids[(sign, name)] = b
        object.__setattr__(self, "braids", braids)

    def partition(self, sign: str, name: str) -> Partition:
        end = self.pos_end if sign == POS else self.neg_end
        parts = self.pos_partitions if sign == POS else self.neg_partitions
        if name in parts:
            return parts[name]
        if end[name] == 1:
            return Partition([1])
        raise InputError(f"missing partition for {name!r} (multiplicity {end[name]}) at the {sign} end")

    def ends(self, sign: str):
        end = self.pos_end if sign == POS else self.neg_end
        return [(name, self.partition(sign, name)) for name in end]

    def check(self, datum: ReebDatum) -> None:
        self.pos_end.check(datum)
        self.neg_end.check(datum)


def _as_set(x) -> OrbitChordSet:
    return x if isinstance(x, OrbitChordSet) else OrbitChordSet(x)


@dataclass(frozen=True)
class HomologyDelta:
    maslov_class_pairing: HalfInt = ZERO
    gamma_pairing: HalfInt = ZERO

    def __post_init__(self):
        object.__setattr__(self, "maslov_class_pairing", HalfInt.coerce(self.maslov_class_pairing))
        object.__setattr__(self, "gamma_pairing", HalfInt.coerce(self.gamma_pairing))


# ---------------------------------------------------------------------------
# evaluators


def _offsets(offsets) -> TrivializationOffset:
    return offsets if offsets is not None else TrivializationOffset()


def _half_mu(mu: HalfInt) -> HalfInt:
    try:
        return mu.halve()
    except NotHalfIntegral:
        raise NotHalfIntegral(f"Maslov number must be an integer, got {mu}") from None


def _puncture_counts(s: SurfaceClassData, datum: ReebDatum) -> Tuple[int, int]:
    interior = boundary = 0
    for sign in (POS, NEG):
        for name, parts in s.ends(sign):
            if isinstance(datum[name], ChordDescriptor):
                boundary += len(parts)
            else:
                interior += len(parts)
    return interior, boundary


def chi_bar_of(s: SurfaceClassData, datum: ReebDatum) -> HalfInt:
    if s.chi_bar_override is not None:
        return s.chi_bar_override
    n_int, n_bdry = _puncture_counts(s, datum)
    return euler_bar(s.genus, s.n_components, n_int, n_bdry, s.n_boundary_circles)


def ech_index(s: SurfaceClassData, datum: ReebDatum, offsets: TrivializationOffset = None) -> HalfInt:
    """``I = Q + ½μ + CZ^ECH(Θ₊) − CZ^ECH(Θ₋)``.

    ``s.mu`` and ``s.q`` are understood in the trivialization ``offsets``
    (measured from the reference trivialization).
    """
    offsets = _offsets(offsets)
    offsets.check(datum)
    s.check(datum)
    return s.q + _half_mu(s.mu) + cz_ech_set(s.pos_end, datum, offsets) - cz_ech_set(s.neg_end, datum, offsets)


def fredholm_index(s: SurfaceClassData, datum: ReebDatum, offsets: TrivializationOffset = None) -> HalfInt:
    """``ind = −χ̄ + μ + CZ^ind(Γ₊) − CZ^ind(Γ₋)``."""
    offsets = _offsets(offsets)
    offsets.check(datum)
    s.check(datum)
    return (
        -chi_bar_of(s, datum)
        + s.mu
        + cz_ind_set(s.ends(POS), datum, offsets)
        - cz_ind_set(s.ends(NEG), datum, offsets)
    )


def total_writhe(s: SurfaceClassData) -> HalfInt:
    """Writhe at the positive ends minus writhe at the negative ends."""
    w = ZERO
    for sign, end in ((POS, s.pos_end), (NEG, s.neg_end)):
        for name, m in end.items():
            b = s.braids.get((sign, name))
            if b is None:
                if m > 1:
                    raise PreconditionError(
                        f"the {sign} end has {name!r} with multiplicity {m} but no braid"
                    )
                continue
            bw = writhe(b)
            w = w + bw if sign == POS else w - bw
    return w


def adjunction_residual(s: SurfaceClassData, datum: ReebDatum) -> HalfInt:
    """``½μ − (χ̄ + Q + w − 2δ − ε)``; zero exactly on adjunction-consistent data."""
    s.check(datum)
    return _half_mu(s.mu) - (chi_bar_of(s, datum) + s.q + total_writhe(s) - 2 * s.delta - s.epsilon)


@dataclass(frozen=True)
class InequalityVerdict:
    passed: bool
    slack: HalfInt
    I: HalfInt
    ind: HalfInt
    equality: bool
    partition_conditions: Optional[PartitionVerdict] = None

    def to_json(self):
        out = {
            "check": "ineq",
            "pass": self.passed,
            "slack": self.slack.to_json(),
            "I": self.I.to_json(),
            "ind": self.ind.to_json(),
            "equality": self.equality,
        }
        if self.partition_conditions is not None:
            out["partition_conditions"] = self.partition_conditions.to_json()
        return out


def index_inequality_check(s: SurfaceClassData, datum: ReebDatum, offsets: TrivializationOffset = None) -> InequalityVerdict:
    I = ech_index(s, datum, offsets)
    ind = fredholm_index(s, datum, offsets)
    slack = I - ind - 2 * s.delta - s.epsilon
    pc = None
    if slack == 0:
        ends = [(datum[n], POS, p) for n, p in s.ends(POS)] + [(datum[n], NEG, p) for n, p in s.ends(NEG)]
        pc = check_partition_conditions(ends)
    return InequalityVerdict(slack >= 0, slack, I, ind, slack == 0, pc)


@dataclass(frozen=True)
class UnionVerdict:
    passed: bool
    slack: HalfInt
    I_union: HalfInt
    I_c: HalfInt
    I_d: HalfInt

    def to_json(self):
        return {
            "check": "union",
            "pass": self.passed,
            "slack": self.slack.to_json(),
            "I_union": self.I_union.to_json(),
            "I_c": self.I_c.to_json(),
            "I_d": self.I_d.to_json(),
        }


def union_data(c: SurfaceClassData, d: SurfaceClassData, union_q_cross) -> SurfaceClassData:
    """Data of the union current; ``Q(C ∪ D) = Q(C) + Q(D) + 2·Q(C, D)``."""
    return SurfaceClassData(
        set_union(c.pos_end, d.pos_end),
        set_union(c.neg_end, d.neg_end),
        mu=c.mu + d.mu,
        q=c.q + d.q + HalfInt.coerce(union_q_cross) * 2,
    )


def union_index_check(
    c: SurfaceClassData,
    d: SurfaceClassData,
    geometric_intersection,
    union_q_cross,
    linking,
    datum: ReebDatum,
    offsets: TrivializationOffset = None,
) -> UnionVerdict:
    geometric_intersection = HalfInt.coerce(geometric_intersection)
    union_q_cross = HalfInt.coerce(union_q_cross)
    linking = HalfInt.coerce(linking)
    if geometric_intersection != union_q_cross + linking:
        raise ConsistencyError(
            f"C·D = {geometric_intersection} but Q(C,D) + l(C,D) = {union_q_cross + linking}"
        )
    I_c = ech_index(c, datum, offsets)
    I_d = ech_index(d, datum, offsets)
    I_u = ech_index(union_data(c, d, union_q_cross), datum, offsets)
    slack = I_u - (I_c + I_d + 2 * geometric_intersection)
    return UnionVerdict(slack >= 0, slack, I_u, I_c, I_d)


def index_ambiguity(delta_h: HomologyDelta) -> HalfInt:
    """``½⟨μ, B − A⟩ + 2·Q(Γ, B − A)``."""
    try:
        half = delta_h.maslov_class_pairing.halve()
    except NotHalfIntegral:
        raise NotHalfIntegral("the Maslov class pairing must be an integer") from None
    return half + 2 * delta_h.gamma_pairing


@dataclass(frozen=True)
class BoundVerdict:
    passed: bool
    slack: HalfInt
    lhs: HalfInt
    rhs: HalfInt

    def to_json(self):
        return {
            "check": "bound",
            "pass": self.passed,
            "slack": self.slack.to_json(),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        }


def topological_bound_check(s: SurfaceClassData, datum: ReebDatum, offsets: TrivializationOffset = None) -> BoundVerdict:
    """``−χ̄ ≤ −½μ + Q + CZ^ECH(Ξ̌₊) − CZ^ECH(Ξ̌₋)`` with every multiplicity
    reduced by one in ``Ξ̌``."""
    from .complex import is_ech_generator

    offsets = _offsets(offsets)
    offsets.check(datum)
    s.check(datum)
    for label, end in (("positive", s.pos_end), ("negative", s.neg_end)):
        ok, reason = is_ech_generator(end, datum)
        if not ok:
            raise PreconditionError(f"the {label} end is not an ECH generator: {reason}")
    lhs = -chi_bar_of(s, datum)
    rhs = (
        -_half_mu(s.mu)
        + s.q
        + cz_ech_set(s.pos_end.decremented(), datum, offsets)
        - cz_ech_set(s.neg_end.decremented(), datum, offsets)
    )
    return BoundVerdict(lhs <= rhs, rhs - lhs, lhs, rhs)


# ---------------------------------------------------------------------------
# trivialization change


def apply_trivialization_change(
    s: SurfaceClassData, datum: ReebDatum, offsets: TrivializationOffset
) -> SurfaceClassData:
    """The same class described in the trivialization shifted by ``offsets``."""
    offsets.check(datum)
    s.check(datum)
    d_mu, d_q = ZERO, ZERO
    for sign, end in ((POS, s.pos_end), (NEG, s.neg_end)):
        eps = 1 if sign == POS else -1
        for name, m in end.items():
            d = offsets.of(name)
            d_mu += d * (-2 * m * eps)
            d_q += d * (-m * m * eps)
    braids = {key: rotate_braid(b, offsets.of(key[1])) for key, b in s.braids.items()}
    return replace(s, mu=s.mu + d_mu, q=s.q + d_q, braids=braids)


# ---------------------------------------------------------------------------
# composition


def compose(upper: SurfaceClassData, lower: SurfaceClassData, datum: ReebDatum) -> SurfaceClassData:
    """Stack ``upper`` on ``lower`` along the common middle end."""
    if upper.neg_end != lower.pos_end:
        raise ConsistencyError("the negative end of the upper piece must equal the positive end of the lower piece")
    return SurfaceClassData(
        upper.pos_end,
        lower.neg_end,
        pos_partitions=upper.pos_partitions,
        neg_partitions=lower.neg_partitions,
        mu=upper.mu + lower.mu,
        q=upper.q + lower.q,
        chi_bar_override=chi_bar_of(upper, datum) + chi_bar_of(lower, datum),
    )


# ---------------------------------------------------------------------------
# gluing parity


def gluing_count_parity(middle: OrbitChordSet, datum: ReebDatum) -> str:
    """Parity of the number of gluings of a broken pair along ``middle``.

    Elliptic and chord factors are odd; a hyperbolic factor is odd exactly
    when its multiplicity is one.
    """
    middle = _as_set(middle)
    middle.check(datum)
    seen: Dict[str, str] = {}
    odd = True
    for name, m in middle.items():
        el = datum[name]
        if isinstance(el, ChordDescriptor):
            if m != 1:
                raise PreconditionError(f"chord {name!r} appears with multiplicity {m}; gluing pairs never share multiply covered chords")
            for comp in sorted(el.components):
                if comp in seen:
                    raise PreconditionError(
                        f"chords {seen[comp]!r} and {name!r} both meet Legendrian component {comp!r}"
                    )
                seen[comp] = name
        elif isinstance(el, OrbitDescriptor) and el.is_hyperbolic and m != 1:
            odd = False
    return "odd" if odd else "even"


# ---------------------------------------------------------------------------
# JSON


def surface_data_from_json(obj) -> SurfaceClassData:
    if not isinstance(obj, dict):
        raise InputError("surface class data must be a JSON object")
    known = {
        "pos_end", "neg_end", "pos_partitions", "neg_partitions", "genus", "n_components",
        "mu", "q", "delta", "epsilon", "braids", "n_boundary_circles", "chi_bar",
    }
    unknown = set(obj) - known
    if unknown:
        raise InputError(f"unknown surface data keys: {sorted(unknown)}")
    braids = {}
    for entry in obj.get("braids", []):
        if not isinstance(entry, dict) or not {"sign", "name", "braid"} <= set(entry):
            raise InputError("each braid entry needs 'sign', 'name' and 'braid'")
        braids[(entry["sign"], entry["name"])] = Braid.from_json(entry["braid"])
    chi = obj.get("chi_bar")
    return SurfaceClassData(
        set_from_json(obj.get("pos_end", {})),
        set_from_json(obj.get("neg_end", {})),
        pos_partitions={k: list(v) for k, v in obj.get("pos_partitions", {}).items()},
        neg_partitions={k: list(v) for k, v in obj.get("neg_partitions", {}).items()},
        genus=obj.get("genus", 0),
        n_components=obj.get("n_components", 1),
        mu=HalfInt.from_json(obj.get("mu", 0)),
        q=HalfInt.from_json(obj.get("q", 0)),
        delta=obj.get("delta", 0),
        epsilon=obj.get("epsilon", 0),
        braids=braids,
        n_boundary_circles=obj.get("n_boundary_circles"),
        chi_bar_override=None if chi is None else HalfInt.from_json(chi),
    )


def surface_data_to_json(s: SurfaceClassData) -> dict:
    out = {
        "pos_end": s.pos_end.to_json(),
        "neg_end": s.neg_end.to_json(),
        "pos_partitions": {k: list(v) for k, v in s.pos_partitions.items()},
        "neg_partitions": {k: list(v) for k, v in s.neg_partitions.items()},
        "genus": s.genus,
        "n_components": s.n_components,
        "mu": s.mu.to_json(),
        "q": s.q.to_json(),
        "delta": s.delta,
        "epsilon": s.epsilon,
        "braids": [{"sign": k[0], "name": k[1], "braid": b.to_json()} for k, b in sorted(s.braids.items())],
    }
    if s.n_boundary_circles is not None:
        out["n_boundary_circles"] = s.n_boundary_circles
    if s.chi_bar_override is not None:
        out["chi_bar"] = s.chi_bar_override.to_json()
    return out
