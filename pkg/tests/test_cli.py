import json
import subprocess
import sys

import pytest

from ech_kit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


STRIP_DATUM = {
    "orbits": [],
    "chords": [
        {"name": "a", "cz": {"twice": 1}, "action": "1", "legendrian_from": "L", "legendrian_to": "L"},
        {"name": "b", "cz": {"twice": -1}, "action": "1/2", "legendrian_from": "L", "legendrian_to": "L"},
    ],
    "legendrian_components": ["L"],
}


def test_partition(capsys):
    code, out, _ = run(capsys, "partition", "--theta", "5/8", "--m", "3", "--sign", "+")
    assert code == 0 and json.loads(out) == [2, 1]


def test_partition_degenerate_is_precondition(capsys):
    code, _, err = run(capsys, "partition", "--theta", "1/2", "--m", "2")
    assert code == 3 and "DegeneracyError" in err


def test_index_ineq_on_strip(capsys, tmp_path):
    data = write(tmp_path, "s.json", {"datum": STRIP_DATUM, "pos_end": {"a": 1}, "neg_end": {"b": 1}})
    code, out, _ = run(capsys, "index", "--data", data, "--check", "ineq")
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and rep["slack"] == {"twice": 0} and rep["I"] == {"twice": 2}


def test_index_fail_exit_code(capsys, tmp_path):
    data = write(tmp_path, "s.json", {"pos_end": {"a": 1}, "neg_end": {"b": 1}, "delta": 1})
    datum = write(tmp_path, "d.json", STRIP_DATUM)
    code, out, _ = run(capsys, "index", "--data", data, "--datum", datum, "--check", "adjunction")
    assert code == 2 and json.loads(out)["residual"] == {"twice": 4}


def test_index_offsets(capsys, tmp_path):
    data = write(tmp_path, "s.json", {"datum": STRIP_DATUM, "pos_end": {"a": 1}, "neg_end": {"b": 1}, "mu": 0, "q": 0})
    offs = write(tmp_path, "o.json", {"a": {"twice": 1}})
    code, out, _ = run(capsys, "index", "--data", data, "--offsets", offs)
    assert code == 0 and json.loads(out)["I"] == {"twice": 4}


def test_malformed_json_reports_position(capsys, tmp_path):
    bad = write(tmp_path, "bad.json", '{"pos_end": {"a": 1},\n  "neg_end": }')
    code, _, err = run(capsys, "index", "--data", bad, "--check", "ineq")
    assert code == 3 and "bad.json:2:" in err


def test_wrong_shape_payload(capsys, tmp_path):
    bad = write(tmp_path, "bad.json", [1, 2, 3])
    code, _, _ = run(capsys, "index", "--data", bad)
    assert code == 3


def test_usage_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["partition", "--theta", "1/3"])
    assert exc.value.code == 3


def test_cz_request(capsys, tmp_path):
    req = write(tmp_path, "r.json", {"kind": "ech_chord", "args": {"cz": {"twice": -1}, "m": 2}})
    code, out, _ = run(capsys, "cz", "--request", req)
    assert code == 0 and json.loads(out) == {"twice": -4}


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--model", "l=0", "--window=-5,5", "--n", "1000")
    rep = json.loads(out)
    assert code == 0 and [r["winding"]["twice"] for r in rep] == [-1, 0, 1, 2]
    assert abs(rep[1]["lambda"] + 1.5707963268) < 1e-5


def test_writhe_and_linking(capsys, tmp_path):
    import math

    def circ(sign):
        return {"wraps": 1, "samples": [[k / 64, sign * math.cos(2 * math.pi * k / 64), sign * math.sin(2 * math.pi * k / 64)] for k in range(65)]}

    for s in (circ(1), circ(-1)):
        s["samples"][-1][1:] = s["samples"][0][1:]
    both = write(tmp_path, "b.json", {"base": "circle", "strands": [circ(1), circ(-1)]})
    one = write(tmp_path, "one.json", {"base": "circle", "strands": [circ(1)]})
    two = write(tmp_path, "two.json", {"base": "circle", "strands": [circ(-1)]})
    code, out, _ = run(capsys, "writhe", "--braid", both)
    assert code == 0 and json.loads(out) == {"writhe": {"twice": 4}}
    code, out, _ = run(capsys, "linking", "--braid", one, "--other", two)
    assert code == 0 and json.loads(out) == {"linking": {"twice": 2}}


def test_complex_build_and_verify(capsys, tmp_path):
    datum = write(
        tmp_path,
        "d.json",
        {
            "orbits": [
                {"name": "a", "kind": {"elliptic": {"theta": "1/3"}}, "action": "5"},
                {"name": "b", "kind": {"elliptic": {"theta": "1/5"}}, "action": "4"},
                {"name": "c", "kind": {"elliptic": {"theta": "2/7"}}, "action": "3"},
            ],
            "chords": [],
            "legendrian_components": [],
        },
    )
    code, out, _ = run(capsys, "complex", "build", "--datum", datum, "--cap", "5")
    spec = json.loads(out)
    assert code == 0 and spec["generators"][:4] == ["[]", "c", "b", "a"]
    spec_file = write(tmp_path, "s.json", spec)
    counts = write(tmp_path, "c.json", {"entries": [{"from": "a", "to": "b", "count": 1}, {"from": "b", "to": "c", "count": 1}]})
    code, out, _ = run(capsys, "complex", "verify", "--spec", spec_file, "--counts", counts)
    rep = json.loads(out)
    assert code == 2 and rep["witness"]["from"] == "a" and rep["witness"]["to"] == "c"
    ext = write(tmp_path, "e.json", {"t_entries": [{"from": "a", "to": "b", "terms": [[-1, 1]]}]})
    code, _, err = run(capsys, "complex", "verify", "--spec", spec_file, "--counts", ext, "--extended")
    assert code == 3 and "PositivityError" in err


def test_output_is_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "ech_kit.cli", "spectrum", "--model", "l=1", "--window=-7,7", "--n", "500"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fast", "--only", "4,7", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and [c["criterion"] for c in rep["criteria"]] == [4, 7]
