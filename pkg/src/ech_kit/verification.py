"""Acceptance criteria as executable suites.

``run_suite("full")`` runs every criterion at full size; ``"fast"`` shrinks
sample counts and grid sizes for quick smoke runs.  Each criterion yields a
list of named checks; it passes when all of them do.  Library code is always
reached through module attributes so that deliberately broken builds (for
example a flipped crossing sign) are detected.
"""

from __future__ import annotations

import itertools
import math
import time
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple


from . import asymptotic, braid, complex as cx, core, errors, index, partitions, sampling

SUITES: Dict[str, Dict[str, object]] = {
    "full": {
        "spectrum_N": 4000,
        "spectrum_budget": 30.0,
        "xval_count": 100,
        "xval_N": 2000,
        "xval_budget": 60.0,
        "partition_qmax": 12,
        "partition_mmax": 8,
        "leq_qmax": 12,
        "leq_mmax": 6,
        "union_braids": 200,
        "invariance_data": 500,
        "composition_data": 200,
        "integrality_data": 200,
        "complex_data": 20,
        "complex_cap": 6,
    },
    "fast": {
        "spectrum_N": 1000,
        "spectrum_budget": 30.0,
        "xval_count": 20,
        "xval_N": 1000,
        "xval_budget": 60.0,
        "partition_qmax": 9,
        "partition_mmax": 6,
        "leq_qmax": 7,
        "leq_mmax": 5,
        "union_braids": 40,
        "invariance_data": 100,
        "composition_data": 40,
        "integrality_data": 40,
        "complex_data": 8,
        "complex_cap": 4,
    },
}

Check = Tuple[str, bool, str]


@dataclass
class CriterionResult:
    number: int
    name: str
    checks: List[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok, _ in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c[1]]

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] criterion {self.number}: {self.name} ({self.seconds:.2f}s)"
        bad = self.failures()
        if bad:
            line += " -- " + "; ".join(f"{label}: {detail}" for label, _, detail in bad)
        return line

    def to_json(self):
        return {
            "criterion": self.number,
            "name": self.name,
            "pass": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [{"check": label, "pass": ok, "detail": detail} for label, ok, detail in self.checks],
        }


class _Recorder:
    def __init__(self):
        self.checks: List[Check] = []

    def check(self, label: str, ok: bool, detail: str = ""):
        self.checks.append((label, bool(ok), detail if not ok else (detail or "ok")))

    def guarded(self, label: str, fn: Callable[[], Tuple[bool, str]]):
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        self.check(label, ok, detail)


# ---------------------------------------------------------------------------
# 1. model operator spectrum


def criterion_spectrum(p, rng, rec: _Recorder):
    N = p["spectrum_N"]
    start = time.perf_counter()
    for l in range(-2, 3):
        def one(l=l):
            op = asymptotic.model_operator(l, N=N)
            lo, hi = -5 * math.pi, 5 * math.pi
            pairs = asymptotic.spectrum_window(op, lo, hi)
            c = 0.5 * math.pi * (2 * l + 1)
            expected_n = [n for n in range(-20, 21) if lo <= n * math.pi - c <= hi]
            if len(pairs) != len(expected_n):
                return False, f"{len(pairs)} eigenvalues in window, expected {len(expected_n)}"
            for pair, n in zip(pairs, expected_n):
                lam = pair.lam
                k = round(lam / (0.5 * math.pi))
                if k % 2 == 0 or abs(lam - k * 0.5 * math.pi) > 1e-3 * (1 + abs(lam)):
                    return False, f"λ = {lam:.9g} is not an odd multiple of π/2"
                if abs(lam - (n * math.pi - c)) > 1e-3 * (1 + abs(lam)):
                    return False, f"λ = {lam:.9g}, expected {n * math.pi - c:.9g}"
                if pair.winding != core.HalfInt(Fraction(n, 2)):
                    return False, f"winding {pair.winding} at λ = {lam:.6g}, expected {Fraction(n, 2)}"
            windings = [pr.winding for pr in pairs]
            if any(b.twice - a.twice != 1 for a, b in zip(windings, windings[1:])):
                return False, "windings are not strictly monotone in half steps"
            predicted = {core.HalfInt(Fraction(n, 2)) for n in expected_n}
            if set(windings) != predicted or len(set(windings)) != len(windings):
                return False, "windings are not a bijection onto the predicted range"
            got = asymptotic.cz_from_spectrum(op)
            if got != core.HalfInt(Fraction(2 * l + 1, 2)):
                return False, f"CZ from spectrum {got}, expected {l}+1/2"
            return True, f"{len(pairs)} eigenpairs"

        rec.guarded(f"model l={l}", one)
    elapsed = time.perf_counter() - start
    rec.check("runtime", elapsed < p["spectrum_budget"], f"{elapsed:.2f}s (budget {p['spectrum_budget']}s)")


# ---------------------------------------------------------------------------
# 2. CZ cross-validation

NONDEGENERACY_MARGIN = 1e-2


def criterion_cross_validation(p, rng, rec: _Recorder):
    start = time.perf_counter()
    agree = tried = 0
    mismatches = []
    while agree + len(mismatches) < p["xval_count"]:
        tried += 1
        if tried > 20 * p["xval_count"]:
            break
        S = asymptotic.TrigPotential.random(rng)
        op = asymptotic.discretize(S, N=p["xval_N"])
        near = asymptotic.spectrum_window(op, -NONDEGENERACY_MARGIN, NONDEGENERACY_MARGIN)
        if near:
            continue  # degenerate within the margin: not a valid sample
        try:
            a = asymptotic.cz_from_spectrum(op)
            b = asymptotic.cz_via_path(S)
        except Exception as exc:
            mismatches.append(f"{type(exc).__name__}: {exc}")
            continue
        if a == b:
            agree += 1
        else:
            mismatches.append(f"spectrum {a} vs path {b}")
    elapsed = time.perf_counter() - start
    rec.check(
        f"{p['xval_count']} random potentials",
        agree == p["xval_count"],
        f"{agree} agree, {len(mismatches)} disagree" + (f" (first: {mismatches[0]})" if mismatches else ""),
    )
    rec.check("runtime", elapsed < p["xval_budget"], f"{elapsed:.2f}s (budget {p['xval_budget']}s)")


# ---------------------------------------------------------------------------
# 3. partitions


def _rationals(qmax: int):
    for q in range(2, qmax + 1):
        for num in range(1, q):
            if math.gcd(num, q) == 1:
                yield Fraction(num, q)


def _nondegenerate(theta: Fraction, m: int) -> bool:
    return all((i * theta).denominator != 1 for i in range(1, m + 1))


def brute_force_positive(theta: Fraction, m: int) -> partitions.Partition:
    """Maximal concave lattice path below ``y = θx`` by exhaustive search.

    Enumerates every concave path from ``(0, 0)`` to ``(m, ⌊mθ⌋)`` with lattice
    vertices on or below the line, keeps the one lying above all others, and
    reads off the horizontal displacements between consecutive lattice
    points on it.
    """
    Y = math.floor(m * theta)
    best = None
    for k in range(m):
        for xs in itertools.combinations(range(1, m), k):
            ranges = [range(math.ceil(Fraction(x * Y, m)), math.floor(x * theta) + 1) for x in xs]
            for ys in itertools.product(*ranges):
                verts = [(0, 0), *zip(xs, ys), (m, Y)]
                slopes = [Fraction(b[1] - a[1], b[0] - a[0]) for a, b in zip(verts, verts[1:])]
                if any(s2 > s1 for s1, s2 in zip(slopes, slopes[1:])):
                    continue
                heights = _heights(verts, m)
                if best is None or all(h >= b for h, b in zip(heights, best[1])):
                    best = (verts, heights)
    verts, heights = best
    # every path must lie below the maximal one
    lattice_x = [x for x in range(m + 1) if heights[x].denominator == 1]
    return partitions.Partition([b - a for a, b in zip(lattice_x, lattice_x[1:])])


def _heights(verts, m):
    out = []
    j = 0
    for x in range(m + 1):
        while verts[j + 1][0] < x:
            j += 1
        (x1, y1), (x2, y2) = verts[j], verts[j + 1]
        out.append(Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (x - x1))
    return out


def criterion_partitions(p, rng, rec: _Recorder):
    # hyperbolic tables
    def hyperbolic():
        ph = core.OrbitDescriptor("h", core.PositiveHyperbolic(0), 1)
        nh = core.OrbitDescriptor("n", core.NegativeHyperbolic(1), 1)
        for m in range(1, 9):
            for sign in "+-":
                if tuple(partitions.partition_for_orbit(ph, m, sign)) != (1,) * m:
                    return False, f"positive hyperbolic m={m}"
                want = (2,) * (m // 2) + (1,) * (m % 2)
                if tuple(partitions.partition_for_orbit(nh, m, sign)) != want:
                    return False, f"negative hyperbolic m={m}"
        return True, "m ≤ 8, both signs"

    rec.guarded("hyperbolic tables", hyperbolic)

    def elliptic_properties():
        count = 0
        for theta in _rationals(p["partition_qmax"]):
            for m in range(1, p["partition_mmax"] + 1):
                if not _nondegenerate(theta, m):
                    continue
                count += 1
                part = partitions.partition_positive(theta, m)
                path = partitions.lattice_path(theta, m, "+")
                slopes = [Fraction(b[1] - a[1], b[0] - a[0]) for a, b in zip(path, path[1:])]
                if any(s2 > s1 for s1, s2 in zip(slopes, slopes[1:])):
                    return False, f"θ={theta}, m={m}: path not concave"
                if any(y > theta * x for x, y in path):
                    return False, f"θ={theta}, m={m}: vertex above y = θx"
                if part.total != m:
                    return False, f"θ={theta}, m={m}: parts sum to {part.total}"
                if sorted((b[0] - a[0] for a, b in zip(path, path[1:])), reverse=True) != list(part):
                    return False, f"θ={theta}, m={m}: parts differ from path displacements"
                if brute_force_positive(theta, m) != part:
                    return False, f"θ={theta}, m={m}: brute force gives {tuple(brute_force_positive(theta, m))}"
        return True, f"{count} (θ, m) pairs"

    rec.guarded("elliptic p+ concave/below-line/sum", elliptic_properties)

    def five_eighths():
        got = partitions.partition_positive(Fraction(5, 8), 3)
        oracle = brute_force_positive(Fraction(5, 8), 3)
        return got == (2, 1) and oracle == (2, 1), f"got {tuple(got)}, brute force {tuple(oracle)}"

    rec.guarded("p+_{5/8}(3) = (2,1)", five_eighths)

    def small_theta():
        for m in range(1, p["partition_mmax"] + 1):
            for theta in _rationals(p["partition_qmax"]):
                if not (0 < theta < Fraction(1, m)) or not _nondegenerate(theta, m):
                    continue
                got = partitions.partition_positive(theta, m)
                oracle = brute_force_positive(theta, m)
                if got != (m,) or oracle != (m,):
                    return False, f"θ={theta}, m={m}: got {tuple(got)}, brute force {tuple(oracle)}, expected ({m},)"
        return True, "all θ < 1/m"

    rec.guarded("θ in (0,1/m) gives (m)", small_theta)

    def order():
        count = 0
        for theta in _rationals(p["leq_qmax"]):
            orbit = core.OrbitDescriptor("g", core.Elliptic(theta), 1)
            for m in range(1, p["leq_mmax"] + 1):
                if not _nondegenerate(theta, m):
                    continue
                P = partitions.all_partitions(m)
                leq = {(a, b): partitions.partition_leq(orbit, a, b) for a in P for b in P}
                for a in P:
                    if not leq[(a, a)]:
                        return False, f"θ={theta}: not reflexive at {tuple(a)}"
                    for b in P:
                        if a != b and leq[(a, b)] and leq[(b, a)]:
                            return False, f"θ={theta}: {tuple(a)} and {tuple(b)} violate antisymmetry"
                pp = partitions.partition_positive(theta, m)
                pm = partitions.partition_negative(theta, m)
                for x in P:
                    if x != pp and leq[(x, pp)]:
                        return False, f"θ={theta}, m={m}: {tuple(x)} ≺ p+ = {tuple(pp)}"
                    if x != pm and leq[(pm, x)]:
                        return False, f"θ={theta}, m={m}: p- = {tuple(pm)} ≺ {tuple(x)}"
                count += 1
        return True, f"{count} (θ, m) pairs"

    rec.guarded("≺ reflexive/antisymmetric, p+ minimal, p- maximal", order)


# ---------------------------------------------------------------------------
# 4. writhe


def _twist_pair(base=braid.CIRCLE, eps=0.5):
    turn = 2 * math.pi if base == braid.CIRCLE else math.pi
    a = braid.strand_from_function(lambda t: (eps * math.cos(turn * t), eps * math.sin(turn * t)), base)
    b = braid.strand_from_function(lambda t: (-eps * math.cos(turn * t), -eps * math.sin(turn * t)), base)
    return a, b


def criterion_writhe(p, rng, rec: _Recorder):
    def union():
        for k in range(p["union_braids"]):
            base = braid.CIRCLE if k % 2 == 0 else braid.INTERVAL
            b1 = sampling.random_braid(rng, base)
            b2 = sampling.random_braid(rng, base)
            lhs = braid.writhe(b1.union(b2))
            rhs = braid.writhe(b1) + braid.writhe(b2) + 2 * braid.linking(b1, b2)
            if lhs != rhs:
                return False, f"sample {k}: {lhs} ≠ {rhs}"
        return True, f"{p['union_braids']} random braid pairs"

    rec.guarded("union identity", union)

    def anchor():
        a, b = _twist_pair()
        w = braid.writhe(braid.Braid(braid.CIRCLE, (a, b)))
        l = braid.linking(braid.Braid(braid.CIRCLE, (a,)), braid.Braid(braid.CIRCLE, (b,)))
        return w == 2 and l == 1, f"writhe {w}, linking {l}"

    rec.guarded("full-twist anchor", anchor)

    def delta():
        for k in range(40):
            base = braid.CIRCLE if k % 2 == 0 else braid.INTERVAL
            b = sampling.random_braid(rng, base)
            m = b.total_multiplicity
            d = core.HalfInt(int(rng.integers(-2, 3))) if base == braid.CIRCLE else core.HalfInt(twice=int(rng.integers(-4, 5)))
            got = braid.writhe(braid.rotate_braid(b, d)) - braid.writhe(b)
            want = braid.writhe_transform_delta(m, d)
            if got != want or want != d * (m * (m - 1)):
                return False, f"m={m}, d={d}: writhe changed by {got}, formula {want}"
        return True, "40 random braids"

    rec.guarded("trivialization delta m(m-1)d", delta)


# ---------------------------------------------------------------------------
# 5. index


def _strip_datum():
    return core.ReebDatum(
        [],
        [
            core.ChordDescriptor("a", core.HalfInt(Fraction(1, 2)), 1, "L", "L"),
            core.ChordDescriptor("b", core.HalfInt(Fraction(-1, 2)), Fraction(1, 2), "L", "L"),
        ],
        ["L"],
    )


def criterion_index(p, rng, rec: _Recorder):
    datum = sampling.mixed_datum()

    def invariance():
        for k in range(p["invariance_data"]):
            s = sampling.random_surface_data(rng, datum)
            off = sampling.random_offsets(rng, datum)
            before = index.ech_index(s, datum)
            after = index.ech_index(index.apply_trivialization_change(s, datum, off), datum, off)
            if before != after:
                return False, f"sample {k}: I = {before} became {after}"
        return True, f"{p['invariance_data']} random data/offsets"

    rec.guarded("trivialization invariance of I", invariance)

    def composition():
        for k in range(p["composition_data"]):
            top = sampling.random_end(rng, datum)
            mid = sampling.random_end(rng, datum)
            bot = sampling.random_end(rng, datum)
            A = sampling.random_surface_data(rng, datum, top, mid)
            B = sampling.random_surface_data(rng, datum, mid, bot)
            off = sampling.random_offsets(rng, datum)
            AB = index.compose(A, B, datum)
            if index.ech_index(AB, datum, off) != index.ech_index(A, datum, off) + index.ech_index(B, datum, off):
                return False, f"sample {k}: I(A∘B) ≠ I(A) + I(B)"
        return True, f"{p['composition_data']} composable pairs"

    rec.guarded("composition additivity", composition)

    def integrality():
        for k in range(p["integrality_data"]):
            s = sampling.random_surface_data(rng, datum, with_braids=True)
            s = sampling.adjunction_consistent(s, datum)
            if index.adjunction_residual(s, datum) != 0:
                return False, f"sample {k}: could not make the data adjunction-consistent"
            I = index.ech_index(s, datum)
            if not I.is_integer:
                return False, f"sample {k}: I = {I} is not an integer"
        return True, f"{p['integrality_data']} adjunction-consistent data"

    rec.guarded("integrality of I", integrality)

    def covariance():
        for k in range(p["invariance_data"]):
            s = sampling.random_surface_data(rng, datum)
            off = sampling.random_offsets(rng, datum)
            a = index.index_inequality_check(s, datum).slack
            b = index.index_inequality_check(index.apply_trivialization_change(s, datum, off), datum, off).slack
            if a != b:
                return False, f"sample {k}: slack {a} became {b}"
        return True, f"{p['invariance_data']} random data/offsets"

    rec.guarded("inequality slack covariance", covariance)

    def strip():
        d = _strip_datum()
        s = index.SurfaceClassData({"a": 1}, {"b": 1})
        v = index.index_inequality_check(s, d)
        trivial = index.SurfaceClassData({"a": 1}, {"a": 1})
        tv = index.index_inequality_check(trivial, d)
        ok = v.I == 1 and v.ind == 1 and v.passed and v.slack == 0 and tv.passed and tv.slack == 0
        return ok, f"I = {v.I}, ind = {v.ind}, slack = {v.slack}; trivial strip slack {tv.slack}"

    rec.guarded("strip example I = ind = 1", strip)


# ---------------------------------------------------------------------------
# 6. complex


def brute_force_sets(datum: core.ReebDatum, L: Fraction) -> List[core.OrbitChordSet]:
    els = list(datum.elements)
    ranges = [range(int(L // e.action) + 1) for e in els]
    out = []
    for mults in itertools.product(*ranges):
        if sum(m * e.action for m, e in zip(mults, els)) <= L:
            out.append(core.OrbitChordSet({e.name: m for e, m in zip(els, mults) if m}))
    return out


def three_clause_generator(s: core.OrbitChordSet, datum: core.ReebDatum) -> bool:
    hyper_ok = all(m == 1 for n, m in s.items() if isinstance(datum[n], core.OrbitDescriptor) and datum[n].is_hyperbolic)
    chord_ok = all(m == 1 for n, m in s.items() if isinstance(datum[n], core.ChordDescriptor))
    comps = [c for n in s if isinstance(datum[n], core.ChordDescriptor) for c in datum[n].components]
    return hyper_ok and chord_ok and len(comps) == len(set(comps))


def _abcd_spec():
    datum = core.ReebDatum(
        [
            core.OrbitDescriptor("a", core.Elliptic(Fraction(1, 3)), 5),
            core.OrbitDescriptor("b", core.Elliptic(Fraction(1, 5)), 4),
            core.OrbitDescriptor("c", core.Elliptic(Fraction(2, 7)), 3),
            core.OrbitDescriptor("d", core.Elliptic(Fraction(3, 7)), 1),
        ],
        [],
        [],
    )
    gens = tuple(core.OrbitChordSet({x: 1}) for x in "abcd")
    return cx.ComplexSpec(datum, 5, gens, {})


def criterion_complex(p, rng, rec: _Recorder):
    def enumeration():
        for k in range(p["complex_data"]):
            datum = sampling.random_small_datum(rng)
            L = Fraction(int(rng.integers(1, 4 * p["complex_cap"] + 1)), 4)
            got = cx.enumerate_sets(datum, L)
            oracle = brute_force_sets(datum, L)
            if len(got) != len(set(got)):
                return False, f"sample {k}: duplicates"
            if set(got) != set(oracle):
                return False, f"sample {k}: enumeration differs from brute force"
            keys = [(core.action_of(s, datum), tuple(sorted(s.items()))) for s in got]
            if keys != sorted(keys):
                return False, f"sample {k}: not in action order"
            for s in got:
                if cx.is_ech_generator(s, datum)[0] != three_clause_generator(s, datum):
                    return False, f"sample {k}: generator filter disagrees on {s.label}"
        return True, f"{p['complex_data']} random data"

    rec.guarded("enumeration and generator filter vs oracles", enumeration)

    def squares():
        spec = _abcd_spec()
        good = cx.DifferentialCounts({("a", "b"): 1, ("a", "c"): 1, ("b", "d"): 1, ("c", "d"): 1})
        bad = cx.DifferentialCounts({("a", "b"): 1, ("b", "c"): 1})
        v1 = cx.verify_differential(spec, good)
        v2 = cx.verify_differential(spec, bad)
        ok = v1.passed and not v2.passed and v2.witness == ("a", "c") and v2.middles == ("b",)
        return ok, f"square-zero example {'passes' if v1.passed else 'fails'}; non-square witness {v2.witness} via {v2.middles}"

    rec.guarded("∂² verifier examples", squares)

    def extended():
        spec = _abcd_spec()
        ext = cx.DifferentialCounts(
            t_entries={("a", "b"): [(1, 1)], ("a", "c"): [(1, 1)], ("b", "d"): [(2, 1)], ("c", "d"): [(2, 1)]}
        )
        if not cx.verify_extended_differential(spec, ext).passed:
            return False, "worked F2[t] example fails"
        labels = spec.labels
        pairs = [(x, y) for x in labels for y in labels if spec.action(spec.resolve(y)) < spec.action(spec.resolve(x))]
        tried = passed = 0
        for _ in range(200):
            terms = {}
            for pr in pairs:
                if rng.random() < 0.5:
                    terms[pr] = [(int(rng.integers(0, 4)), 1) for _ in range(int(rng.integers(1, 3)))]
            d = cx.DifferentialCounts(t_entries=terms)
            tried += 1
            if cx.verify_extended_differential(spec, d).passed:
                passed += 1
                if not cx.verify_differential(spec, d.specialized()).passed:
                    return False, "a passing extended differential has a failing t = 1 specialization"
        return True, f"{passed}/{tried} random extended differentials pass, all specializations consistent"

    rec.guarded("extended F2[t] verifier vs t=1", extended)


# ---------------------------------------------------------------------------
# 7. gluing parity


def criterion_gluing(p, rng, rec: _Recorder):
    def parity():
        datum = sampling.mixed_datum()
        names = list(datum.names)
        count = 0
        for total in range(1, 4):
            for combo in itertools.combinations_with_replacement(names, total):
                s = core.OrbitChordSet([(n, 1) for n in combo])
                count += 1
                try:
                    odd = index.gluing_count_parity(s, datum) == "odd"
                except errors.PreconditionError:
                    odd = False
                if odd != cx.is_ech_generator(s, datum)[0]:
                    return False, f"{s.label}: parity {'odd' if odd else 'not odd'} but generator = {not odd}"
        return True, f"{count} middle sets"

    rec.guarded("odd iff ECH generator", parity)


# ---------------------------------------------------------------------------

CRITERIA: List[Tuple[int, str, Callable]] = [
    (1, "model-operator spectrum", criterion_spectrum),
    (2, "CZ cross-validation", criterion_cross_validation),
    (3, "partition suite", criterion_partitions),
    (4, "writhe suite", criterion_writhe),
    (5, "index suite", criterion_index),
    (6, "complex suite", criterion_complex),
    (7, "gluing parity", criterion_gluing),
]


def run_criterion(number: int, suite: str = "full", seed: Optional[int] = None) -> CriterionResult:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    params = SUITES[suite]
    for num, name, fn in CRITERIA:
        if num == number:
            rng = sampling.make_rng(seed)
            rec = _Recorder()
            start = time.perf_counter()
            try:
                fn(params, rng, rec)
            except Exception as exc:
                rec.check("suite crashed", False, "".join(traceback.format_exception_only(type(exc), exc)).strip())
            return CriterionResult(num, name, rec.checks, time.perf_counter() - start)
    raise ValueError(f"no criterion {number}")


def run_suite(suite: str = "full", seed: Optional[int] = None, only=None) -> List[CriterionResult]:
    numbers = [n for n, _, _ in CRITERIA if only is None or n in only]
    return [run_criterion(n, suite, seed) for n in numbers]
