import csv
import io
import json
import math
import subprocess
import sys

import pytest

from toricembed.cli import EXIT_INPUT, EXIT_NOT_EMBEDS, EXIT_OK, EXIT_OUT_OF_SCOPE, main
from toricembed.embed import decide_embedding
from toricembed.region import load_region, region_from_json


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_capacity_bidisk(capsys, fixtures_dir):
    code, out, _ = run(capsys, "capacity", fixtures_dir / "bidisk.json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["c1"] == pytest.approx(4.0, abs=1e-6)
    assert doc["c_infinity"] == pytest.approx(2.0, abs=1e-6)


def test_capacity_cube(capsys, fixtures_dir):
    code, out, _ = run(capsys, "capacity", fixtures_dir / "cube3.json", "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK
    assert float(row["c1"]) == 1.0 and float(row["c_infinity"]) == 1.0


@pytest.mark.parametrize("name", ["malformed.json", "unknown_kind.json", "does_not_exist.json"])
def test_bad_input_gives_no_output(capsys, fixtures_dir, name):
    code, out, err = run(capsys, "capacity", fixtures_dir / name)
    assert code == EXIT_INPUT
    assert out == ""
    assert err.startswith("error:")


def test_capacity_uses_only_validated_claims(capsys, fixtures_dir, tmp_path):
    code, out, err = run(capsys, "capacity", fixtures_dir / "box_unequal.json", "--out", tmp_path / "x.json")
    # the box really is convex, so capacities are still defined
    assert code == EXIT_OK
    assert json.loads((tmp_path / "x.json").read_text())["c1"] == 1.0


@pytest.mark.parametrize(
    "a,b,code,verdict",
    [
        ("simplex4.json", "bidisk.json", EXIT_OK, "Embeds"),
        ("ball2.json", "ball2_scaled09.json", EXIT_NOT_EMBEDS, "NotEmbeds"),
        ("bidisk.json", "simplex.json", EXIT_OUT_OF_SCOPE, "OutOfScope"),
    ],
)
def test_embed_exit_codes(capsys, fixtures_dir, a, b, code, verdict):
    got, out, _ = run(capsys, "embed", fixtures_dir / a, fixtures_dir / b)
    doc = json.loads(out)
    assert got == code
    assert doc["verdict"] == verdict
    # the emitted verdict is the library verdict, unchanged by serialisation
    lib = decide_embedding(load_region(fixtures_dir / a), load_region(fixtures_dir / b)).to_json()
    assert doc == json.loads(json.dumps(lib))


def test_embed_pretty(capsys, fixtures_dir):
    code, out, _ = run(capsys, "embed", fixtures_dir / "bidisk.json", fixtures_dir / "simplex.json", "--format", "pretty")
    assert code == EXIT_OUT_OF_SCOPE
    assert "verdict: OutOfScope" in out and "note:" in out


def test_rigidity(capsys):
    code, out, _ = run(capsys, "rigidity")
    rows = json.loads(out)
    assert code == EXIT_OK and len(rows) == 81
    bad = [r for r in rows if r["class"] == "NotRigid"]
    assert len(bad) == 4
    assert {"p": 1.0, "q": "inf", "r": 2.0, "s": 2.0, "class": "NotRigid"} in bad
    code, out, _ = run(capsys, "rigidity", "--format", "csv")
    assert len(out.strip().splitlines()) == 82


def test_action_rows(capsys):
    code, out, err = run(capsys, "action", "--epsilon", "1", "0.1", "0", "--c", "0.5", "1", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["epsilon", "c", "I", "err"]
    by = {(float(r["epsilon"]), float(r["c"])): float(r["I"]) for r in rows}
    assert by[(1.0, 0.5)] == 0.0
    assert by[(0.0, 1.0)] == pytest.approx(4 * math.sqrt(2), rel=1e-15)
    assert by[(1.0, 1.0)] < by[(0.1, 1.0)] < by[(0.0, 1.0)]


def test_action_domain_errors_are_per_row(capsys):
    code, out, err = run(capsys, "action", "--epsilon", "1", "--c", "0.1", "2", "--format", "json")
    rows = json.loads(out)
    assert code == EXIT_OK
    assert rows[0]["I"] is None and rows[1]["I"] > 0
    assert "epsilon=1" in err


def test_bidisk_curve_csv(capsys):
    code, out, _ = run(capsys, "bidisk", "--num", "5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["alpha", "x", "y"]
    assert float(rows[2]["x"]) == pytest.approx(2.0) and float(rows[2]["y"]) == pytest.approx(2.0)


def test_validate(capsys, fixtures_dir):
    code, out, _ = run(capsys, "validate", fixtures_dir / "bidisk.json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["report"]["ok"]
    assert region_from_json(doc["region"]) == load_region(fixtures_dir / "bidisk.json")
    code, out, _ = run(capsys, "validate", fixtures_dir / "box_unequal.json", "--format", "pretty")
    assert code == EXIT_INPUT
    assert "symmetric  claimed=True  passed=False" in out


def test_bad_flags(capsys, fixtures_dir):
    with pytest.raises(SystemExit) as info:
        main(["capacity", str(fixtures_dir / "ball2.json"), "--format", "xml"])
    assert info.value.code == EXIT_INPUT
    code, out, _ = run(capsys, "embed", fixtures_dir / "ball2.json", fixtures_dir / "ball2.json", "--tol", "-1")
    assert code == EXIT_INPUT and out == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "bidisk.json", "--seed", "7", "--samples", "300"],
        ["action", "--format", "csv"],
        ["embed", "simplex4.json", "bidisk.json"],
        ["capacity", "bidisk.json", "--numeric"],
    ],
)
def test_byte_identical_output(fixtures_dir, argv):
    cmd = [sys.executable, "-m", "toricembed", *argv]
    first = subprocess.run(cmd, cwd=fixtures_dir, capture_output=True, check=False)
    second = subprocess.run(cmd, cwd=fixtures_dir, capture_output=True, check=False)
    assert first.stdout and first.stdout == second.stdout
