import csv
import json
from pathlib import Path

import pytest

from perverse_squares.cli import main
from perverse_squares.filtered import parse

DATA = Path(__file__).resolve().parent.parent / "data"


def _split(row):
    # the perversity column is quoted because it contains commas
    return next(csv.reader([row]))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", DATA / "cone_rp2.json")
    assert code == 0 and out.startswith("ok:")


def test_validate_truncated(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text((DATA / "circle.json").read_text()[:40])
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "parse error" in err


def test_validate_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "validate", tmp_path / "nope.json")
    assert code == 2 and "cannot read" in err


def test_validate_identity_violation(tmp_path, capsys):
    doc = json.loads((DATA / "rp2.json").read_text())
    tri = next(s for s in doc["simplices"].values() if len(s["faces"]) == 3)
    tri["faces"][0], tri["faces"][1] = tri["faces"][1], tri["faces"][0]
    bad = tmp_path / "swap.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "validate", bad)
    assert code == 1 and "simplicial identity" in err


@pytest.mark.parametrize("kind,src,count", [("cone", "circle", 13), ("suspension", "point", 5),
                                            ("trivial", "rp2", 31), ("coneoff", "moebius", 31)])
def test_build_counts(tmp_path, capsys, kind, src, count):
    out = tmp_path / "out.json"
    code, _, _ = run(capsys, "build", kind, DATA / f"{src}.json", "--out", out)
    assert code == 0
    assert len(parse(out.read_text())) == count
    assert run(capsys, "validate", out)[0] == 0


def test_build_rejects_filtered_input(capsys):
    code, _, err = run(capsys, "build", "cone", DATA / "cone_rp2.json")
    assert code == 1 and "formal" in err


def test_build_with_boundary_file(tmp_path, capsys):
    bfile = tmp_path / "b.json"
    bfile.write_text('[["0", "nope"]]')
    code, _, err = run(capsys, "build", "coneoff", DATA / "moebius.json", "--boundary", bfile)
    assert code == 1 and "unknown simplex" in err


def test_cohomology_csv(capsys):
    code, out, _ = run(capsys, "cohomology", DATA / "cone_rp2.json", "--format", "csv",
                       "--perversity", "0,0,0", "--perversity", "0,0,1", "--perversity", "0,0,2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "perversity,degree,dim"
    dims = {(p, int(d)): int(n) for p, d, n in map(_split, lines[1:])}
    assert [dims[("0,0,1", d)] for d in range(4)] == [1, 1, 0, 0]
    assert [dims[("0,0,2", d)] for d in range(4)] == [1, 1, 1, 0]
    assert [dims[("0,0,0", d)] for d in range(4)] == [1, 0, 0, 0]


def test_cohomology_table_and_errors(capsys):
    code, out, _ = run(capsys, "cohomology", DATA / "trivial_rp2.json", "--degrees", "1..2")
    assert code == 0 and len(out.splitlines()) == 3
    code, _, err = run(capsys, "cohomology", DATA / "trivial_rp2.json", "--perversity", "0,0,0")
    assert code == 1 and "entries" in err
    code, _, err = run(capsys, "cohomology", DATA / "trivial_rp2.json", "--perversity", "0,x")
    assert code == 2 and "parse error" in err


def test_squares_csv(capsys):
    code, out, _ = run(capsys, "squares", DATA / "trivial_rp2.json", "--format", "csv", "--i", "0,1,2")
    assert code == 0
    rows = [_split(r) for r in out.splitlines()]
    assert rows[0] == ["class", "i", "target_perversity", "coords", "witness_perverse_degree", "image_in_2p"]
    by = {(r[0], r[1]): r for r in rows[1:]}
    assert by[("H^1_(0,0)[0]", "1")][3] == "[1]"
    assert by[("H^1_(0,0)[0]", "0")][3] == "[1]"
    assert by[("H^1_(0,0)[0]", "2")][3] == "[]"
    assert by[("H^1_(0,0)[0]", "1")][4] == "(-inf,-inf)"


def test_squares_on_suspension(capsys):
    code, out, _ = run(capsys, "squares", DATA / "suspension_rp2.json", "--perversity", "0,0,0",
                       "--degrees", "2", "--i", "1", "--format", "csv")
    assert code == 0
    (row,) = [_split(r) for r in out.splitlines()[1:]]
    assert row[0] == "H^2_(0,0,0)[0]" and row[3] == "[1]" and row[5] == "[1]"


def test_verify_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    files = [DATA / "coneoff_moebius.json", DATA / "trivial_rp2.json"]
    assert run(capsys, "verify", *files, "--pairs", "30", "--out", a)[0] == 0
    assert run(capsys, "verify", *files, "--pairs", "30", "--out", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().rstrip().endswith("0 failed")


def test_verify_catches_a_broken_cup(capsys):
    code, out, _ = run(capsys, "verify", DATA / "coneoff_moebius.json", "--pairs", "30", "--corrupt-cup")
    assert code == 1 and "Leibniz" in out
