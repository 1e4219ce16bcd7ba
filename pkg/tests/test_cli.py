import json
from pathlib import Path

import pytest

from chaindev.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_width(capsys):
    code, out, _ = run(capsys, "width", "--input", DATA / "line4.csv")
    assert code == 0
    assert json.loads(out)["width"] == 3.0


def test_selfsim_cantor_square(capsys):
    code, out, _ = run(capsys, "selfsim", "--input", DATA / "cantor_square_spec.json")
    doc = json.loads(out)
    assert code == 0
    assert doc["exists"] is False
    assert doc["ratio"] == pytest.approx(4 / 3)


def test_selfsim_flags_and_stretch(capsys):
    code, out, _ = run(capsys, "selfsim", "--branching", 2, "--root-diameter", 1 / 3, "--ratio", 1 / 3,
                       "--depth", 2, "--stretch", 0.5)
    doc = json.loads(out)
    assert code == 0 and doc["exists"] is True
    assert doc["stretch"]["diameter"] == pytest.approx(1.5)
    assert [g["len"] for g in doc["stretch"]["gaps"]] == pytest.approx([1 / 9, 1 / 3, 1 / 9])


def test_selfsim_stretch_without_development(capsys):
    code, _, err = run(capsys, "selfsim", "--input", DATA / "cantor_square_spec.json", "--stretch", 1)
    assert code == 2 and json.loads(err)["error"] == "no_development"


def test_dis_single_point(capsys):
    code, out, _ = run(capsys, "dis", "--input", DATA / "single.csv")
    assert code == 0
    assert json.loads(out) == {"total": 0, "pairs": []}


def test_dis_pairs(capsys):
    _, out, _ = run(capsys, "dis", "--input", DATA / "triangle.json")
    doc = json.loads(out)
    assert doc["total"] == 3
    assert doc["pairs"] == [{"i": 0, "j": 1, "d": 1.0}, {"i": 1, "j": 2, "d": 2.0}]


def test_chaindist(capsys):
    _, out, _ = run(capsys, "chaindist", "--input", DATA / "triangle.json")
    doc = json.loads(out)
    assert doc["labels"] == ["A", "B", "C"]
    assert doc["chain"] == [[0, 1, 2], [1, 0, 2], [2, 2, 0]]


def test_tree_exports(capsys):
    _, out, _ = run(capsys, "tree", "--input", DATA / "line4.csv")
    doc = json.loads(out)
    assert doc["root"] == 0
    assert doc["nodes"][0]["r"] == 1.5 and doc["nodes"][0]["members"] == ["a", "b", "c", "d"]
    _, dot, _ = run(capsys, "tree", "--input", DATA / "line4.csv", "--export", "dot")
    assert dot.startswith("digraph cluster_tree {")
    assert 'n0 [label="r=1.5 |Q|=4"];' in dot
    assert "n0 -> n1;" in dot


def test_dot_uses_twelve_significant_digits(capsys, tmp_path):
    src = tmp_path / "pts.csv"
    src.write_text("label,x1\na,0\nb,0.1234567890123456\n")
    _, dot, _ = run(capsys, "tree", "--input", src, "--export", "dot")
    assert 'label="r=0.123456789012 |Q|=2"' in dot


def test_develop_then_verify(capsys, tmp_path):
    for name in ("line4.csv", "triangle.json", "square_points.json"):
        dev = tmp_path / f"{name}.dev.json"
        code, _, _ = run(capsys, "develop", "--input", DATA / name, "--out", dev)
        assert code == 0
        doc = json.loads(dev.read_text())
        assert set(doc) == {"points", "width", "gaps"}
        assert set(doc["points"][0]) == {"label", "coord"}
        code, out, _ = run(capsys, "verify", "--input", DATA / name, "--development", dev)
        assert code == 0 and json.loads(out)["passed"] is True


def test_verify_failure_exit_code(capsys, tmp_path):
    dev = tmp_path / "bad.json"
    coords = {"a": 0.0, "b": 1.5, "c": 2.5, "d": 3.0}
    dev.write_text(json.dumps({"points": [{"label": k, "coord": v} for k, v in coords.items()]}))
    code, out, _ = run(capsys, "verify", "--input", DATA / "line4.csv", "--development", dev)
    assert code == 1 and json.loads(out)["passed"] is False


def test_metric_override(capsys, tmp_path):
    src = tmp_path / "pts.csv"
    src.write_text("label,x1,x2\na,0,0\nb,3,4\n")
    _, out, _ = run(capsys, "width", "--input", src)
    assert json.loads(out)["width"] == 5
    for metric, expected in (("chebyshev", 4), ("manhattan", 7)):
        _, out, _ = run(capsys, "width", "--input", src, "--metric", metric)
        assert json.loads(out)["width"] == expected


@pytest.mark.parametrize("content, kind", [
    ('{"labels": ["a", "b"], "matrix": [[0, 1], [2, 0]]}', "invalid_space"),
    ('{"labels": ["a", "b"], "matrix": [[0, 0], [0, 0]]}', "invalid_space"),
    ('{"labels": ["a", "a"], "matrix": [[0, 1], [1, 0]]}', "schema"),
    ('{"labels": ["a", "b"], "matrix": [[0, -1], [-1, 0]]}', "schema"),
    ('{"nothing": 1}', "schema"),
    ("not json", "schema"),
])
def test_validation_errors(capsys, tmp_path, content, kind):
    src = tmp_path / "in.json"
    src.write_text(content)
    code, out, err = run(capsys, "width", "--input", src)
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == kind


def test_bad_csv(capsys, tmp_path):
    src = tmp_path / "in.csv"
    src.write_text("name,x\na,1\n")
    code, _, err = run(capsys, "width", "--input", src)
    assert code == 2 and json.loads(err)["error"] == "schema"


def test_unreadable_file(capsys, tmp_path):
    code, _, err = run(capsys, "width", "--input", tmp_path / "missing.csv")
    assert code == 2 and json.loads(err)["error"] == "unreadable_file"


def test_cap_exceeded(capsys, monkeypatch):
    monkeypatch.setenv("CHAINDEV_LEAF_CAP", "100")
    code, _, err = run(capsys, "generate", "cantor-square", "--depth", 4)
    assert code == 3 and json.loads(err)["error"] == "cap_exceeded"


def test_generate_round_trip(capsys, tmp_path):
    out = tmp_path / "h.json"
    assert run(capsys, "generate", "harmonic", "--count", 4, "--out", out)[0] == 0
    _, res, _ = run(capsys, "width", "--input", out)
    assert json.loads(res)["width"] == pytest.approx(0.75, abs=1e-12)
    csv_out = tmp_path / "c.csv"
    assert run(capsys, "generate", "cantor", "--depth", 2, "--format", "csv", "--out", csv_out)[0] == 0
    _, res, _ = run(capsys, "width", "--input", csv_out)
    assert json.loads(res)["width"] == pytest.approx(8 / 9, abs=1e-12)
