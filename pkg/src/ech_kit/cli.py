"""``ech-kit`` command line.

Every subcommand prints one JSON document on stdout.  Exit codes:
0 success/pass, 2 checker fail, 3 precondition or validation error,
4 numeric error.  ``ECH_KIT_SEED`` seeds the property suites.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import asymptotic, braid, cz, index, partitions, verification
from . import complex as cx
from .core import HalfInt, ReebDatum, TrivializationOffset, chord_from_json, orbit_from_json, parse_rational, set_from_json
from .errors import InputError, NumericError, PreconditionError

EXIT_OK, EXIT_FAIL, EXIT_PRECONDITION, EXIT_NUMERIC = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    """Usage errors are validation errors (exit 3), not checker failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PRECONDITION, f"{self.prog}: error: {message}\n")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


def load_json(path: str):
    """Read JSON from ``path`` (``-`` is stdin); syntax errors carry line/column."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg} (char {exc.pos})") from None


def _datum(args, payload=None) -> ReebDatum:
    if getattr(args, "datum", None):
        return ReebDatum.from_json(load_json(args.datum))
    if isinstance(payload, dict) and "datum" in payload:
        return ReebDatum.from_json(payload["datum"])
    raise InputError("a Reeb datum is required (--datum FILE or a 'datum' key in the payload)")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands


def _cz_request(req):
    if not isinstance(req, dict) or "kind" not in req:
        raise InputError("cz request must be an object with 'kind' and 'args'")
    kind, a = req["kind"], req.get("args", {})
    if not isinstance(a, dict):
        raise InputError("'args' must be an object")
    offset = HalfInt.from_json(a.get("offset", 0))
    if kind == "orbit_iterate":
        return HalfInt(cz.cz_orbit_iterate(orbit_from_json(a.get("orbit")), a.get("k"), offset))
    if kind == "ech_orbit":
        return HalfInt(cz.cz_ech_orbit(orbit_from_json(a.get("orbit")), a.get("m"), offset))
    if kind == "ech_chord":
        if "chord" in a:
            return cz.cz_ech_element(chord_from_json(a["chord"]), a.get("m"), offset)
        return cz.cz_ech_chord(HalfInt.from_json(a.get("cz")), a.get("m"))
    if kind == "ech_set":
        datum = ReebDatum.from_json(a.get("datum"))
        return cz.cz_ech_set(set_from_json(a.get("set", {})), datum, TrivializationOffset.from_json(a.get("offsets")))
    if kind == "lagrangian_path":
        return cz.cz_lagrangian_path(cz.LagrangianPath.from_samples(a.get("samples")))
    if kind == "rotation":
        return cz.cz_from_rotation(float(a.get("total")))
    raise InputError(f"unknown cz request kind {kind!r}")


def cmd_cz(args) -> int:
    _emit(_cz_request(load_json(args.request)).to_json())
    return EXIT_OK


def cmd_partition(args) -> int:
    theta = _rational(args.theta)
    if args.sign == "+":
        p = partitions.partition_positive(theta, args.m)
    else:
        p = partitions.partition_negative(theta, args.m)
    _emit(list(p))
    return EXIT_OK


def cmd_writhe(args) -> int:
    b = braid.Braid.from_json(load_json(args.braid))
    if args.bound:
        verdict = braid.writhe_bound_check(b, args.bound)
        _emit(verdict.to_json())
        return EXIT_OK if verdict.passed else EXIT_FAIL
    _emit({"writhe": braid.writhe(b).to_json()})
    return EXIT_OK


def cmd_linking(args) -> int:
    b1 = braid.Braid.from_json(load_json(args.braid))
    b2 = braid.Braid.from_json(load_json(args.other))
    _emit({"linking": braid.linking(b1, b2).to_json()})
    return EXIT_OK


def _spectrum_pairs(args):
    if not args.model.startswith("l="):
        raise InputError(f"--model expects l=K, got {args.model!r}")
    try:
        l = int(args.model[2:])
    except ValueError:
        raise InputError(f"--model expects an integer l, got {args.model[2:]!r}") from None
    try:
        lo, hi = (float(x) for x in args.window.split(","))
    except ValueError:
        raise InputError(f"--window expects a,b, got {args.window!r}") from None
    op = asymptotic.model_operator(l, N=args.n)
    return asymptotic.spectrum_window(op, lo, hi)


def cmd_spectrum(args) -> int:
    pairs = _spectrum_pairs(args)
    _emit([{"lambda": float(f"{p.lam:.12g}"), "winding": p.winding.to_json()} for p in pairs])
    return EXIT_OK


def cmd_index(args) -> int:
    payload = load_json(args.data)
    if not isinstance(payload, dict):
        raise InputError("index data must be a JSON object")
    datum = _datum(args, payload)
    offsets = TrivializationOffset.from_json(load_json(args.offsets)) if args.offsets else None
    body = {k: v for k, v in payload.items() if k != "datum"}
    if args.check == "union":
        missing = {"c", "d", "geometric_intersection", "q_cross", "linking"} - set(body)
        if missing:
            raise InputError(f"union data needs keys {sorted(missing)}")
        verdict = index.union_index_check(
            index.surface_data_from_json(body["c"]),
            index.surface_data_from_json(body["d"]),
            HalfInt.from_json(body["geometric_intersection"]),
            HalfInt.from_json(body["q_cross"]),
            HalfInt.from_json(body["linking"]),
            datum,
            offsets,
        )
        _emit(verdict.to_json())
        return EXIT_OK if verdict.passed else EXIT_FAIL
    s = index.surface_data_from_json(body)
    s.check(datum)
    if args.check == "ineq":
        verdict = index.index_inequality_check(s, datum, offsets)
    elif args.check == "bound":
        verdict = index.topological_bound_check(s, datum, offsets)
    elif args.check == "adjunction":
        residual = index.adjunction_residual(s, datum)
        _emit({"check": "adjunction", "pass": residual == 0, "residual": residual.to_json()})
        return EXIT_OK if residual == 0 else EXIT_FAIL
    else:
        _emit(
            {
                "I": index.ech_index(s, datum, offsets).to_json(),
                "ind": index.fredholm_index(s, datum, offsets).to_json(),
                "chi_bar": index.chi_bar_of(s, datum).to_json(),
            }
        )
        return EXIT_OK
    _emit(verdict.to_json())
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_complex_build(args) -> int:
    datum = ReebDatum.from_json(load_json(args.datum))
    _emit(cx.build_complex(datum, _rational(args.cap)).to_json())
    return EXIT_OK


def cmd_complex_verify(args) -> int:
    spec = cx.ComplexSpec.from_json(load_json(args.spec))
    counts = cx.DifferentialCounts.from_json(load_json(args.counts))
    if args.extended:
        if counts.t_entries is None:
            raise InputError("--extended needs 't_entries' in the counts file")
        verdict = cx.verify_extended_differential(spec, counts)
    else:
        verdict = cx.verify_differential(spec, counts)
    _emit(verdict.to_json())
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_parity(args) -> int:
    payload = load_json(args.middle)
    datum = _datum(args, payload)
    middle = set_from_json(payload["set"] if isinstance(payload, dict) and "set" in payload else payload)
    _emit({"parity": index.gluing_count_parity(middle, datum)})
    return EXIT_OK


def cmd_verify(args) -> int:
    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise InputError(f"--only expects comma-separated criterion numbers, got {args.only!r}") from None
    seed = verification.sampling.default_seed()
    results = verification.run_suite(args.suite, seed=seed, only=only)
    if args.json:
        _emit(
            {
                "suite": args.suite,
                "seed": seed,
                "pass": all(r.passed for r in results),
                "criteria": [r.to_json() for r in results],
            }
        )
    else:
        for r in results:
            print(r.summary_line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ech-kit", description="Index bookkeeping for embedded contact homology with Legendrian boundary.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cz", help="Conley-Zehnder terms from a JSON request {kind, args}")
    p.add_argument("--request", default="-", help="request file (default: stdin)")
    p.set_defaults(func=cmd_cz)

    p = sub.add_parser("partition", help="distinguished partition p±_θ(m)")
    p.add_argument("--theta", required=True, help="rotation number p/q")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("writhe", help="writhe of a braid")
    p.add_argument("--braid", required=True)
    p.add_argument("--bound", choices=["+", "-"], help="check the end-sign writhe bound instead")
    p.set_defaults(func=cmd_writhe)

    p = sub.add_parser("linking", help="linking number of two braids")
    p.add_argument("--braid", required=True)
    p.add_argument("--other", required=True)
    p.set_defaults(func=cmd_linking)

    p = sub.add_parser("spectrum", help="eigenvalues and windings of a model asymptotic operator")
    p.add_argument("--model", required=True, help="l=K")
    p.add_argument("--window", default="-15.707963267948966,15.707963267948966", help="a,b")
    p.add_argument("--n", type=int, default=2000)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("index", help="ECH / Fredholm index checks")
    p.add_argument("--data", required=True)
    p.add_argument("--offsets")
    p.add_argument("--datum")
    p.add_argument("--check", choices=["ineq", "adjunction", "union", "bound"])
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("complex", help="chain complex generators and differential checks")
    csub = p.add_subparsers(dest="complex_command", required=True, parser_class=_Parser)
    q = csub.add_parser("build")
    q.add_argument("--datum", required=True)
    q.add_argument("--cap", required=True, help="action cap p/q")
    q.set_defaults(func=cmd_complex_build)
    q = csub.add_parser("verify")
    q.add_argument("--spec", required=True)
    q.add_argument("--counts", required=True)
    q.add_argument("--extended", action="store_true")
    q.set_defaults(func=cmd_complex_verify)

    p = sub.add_parser("parity", help="gluing-count parity along a middle orbit-chord set")
    p.add_argument("--middle", required=True)
    p.add_argument("--datum")
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("verify", help="run the acceptance suites")
    p.add_argument("--suite", choices=sorted(verification.SUITES), default="fast")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_PRECONDITION
    except NumericError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_NUMERIC
    except (TypeError, KeyError, AttributeError) as exc:
        # structurally valid JSON of the wrong shape
        sys.stderr.write(json.dumps({"error": "InputError", "message": f"malformed payload: {exc}"}) + "\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
