import json
import xml.etree.ElementTree as ET

import pytest

from selfaffine.cli import main
from selfaffine.specfile import bundled_path


def run(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "name, code",
    [("diag-3pm-sqrt2", 0), ("sqrt2", 1), ("sqrt2-pm", 0), ("sqrt2-sqrt2-msqrt2", 1), ("figure1-expansion", 0), ("figure2", 0), ("golden", 0)],
)
def test_check_expansion(capsys, name, code):
    rc, out, _ = run(capsys, "check-expansion", bundled_path(name))
    assert rc == code
    assert out.strip().splitlines()[-1] == ("PASS" if code == 0 else "FAIL")


def test_jordan_is_input_error(capsys):
    rc, _, err = run(capsys, "check-expansion", bundled_path("jordan"))
    assert rc == 2
    assert "diagonalizable" in err


def test_witness(capsys):
    rc, out, _ = run(capsys, "--json", "witness", bundled_path("figure2"))
    assert rc == 0
    rep = json.loads(out)
    assert rep["strict_max"] is True
    assert rep["growth"] == pytest.approx(4.2044, abs=1e-4)
    rc, out, _ = run(capsys, "witness", "--json", bundled_path("sqrt2"))
    rep = json.loads(out)
    assert rc == 1 and rep["strict_max"] is False
    assert rep["ties"][0][0]["eigenvalue"][0].startswith("-1.41421")
    rc, _, _ = run(capsys, "witness", bundled_path("golden"), "--quiet")
    assert rc == 0


def test_tiling_check(capsys):
    rc, out, _ = run(capsys, "tiling", "check", bundled_path("figure3"), "--json")
    rep = json.loads(out)
    assert rc == 0
    assert rep["subdivision_matrix"] == [[0, 1, 1], [0, 4, 1], [3, 0, 0]]
    assert rep["primitive"] and rep["volume"]["consistent"] and rep["eigenvalue_condition"]["pass"]


def test_tiling_addressmap(capsys):
    rc, out, _ = run(capsys, "tiling", "addressmap", bundled_path("fibonacci"), "--json")
    assert rc == 0
    assert json.loads(out)["M"] == [[0, 1], [1, 1]]


def test_tiling_expand(capsys, tmp_path):
    rc, out, _ = run(capsys, "tiling", "expand", bundled_path("figure3"), "--levels", "0", "--json")
    patch = json.loads(out)
    assert rc == 0 and len(patch) == 1 and patch[0]["level"] == 0
    svg_out = tmp_path / "p.svg"
    rc, out, _ = run(capsys, "tiling", "expand", bundled_path("figure1"), "--levels", "3", "--seed", "large",
                     "--svg", svg_out, "--iters", "12")
    assert rc == 0
    paths = ET.parse(svg_out).getroot().findall("{http://www.w3.org/2000/svg}path")
    assert len(paths) == 4  # row "large" of m^3
    rc, _, _ = run(capsys, "tiling", "expand", bundled_path("figure1"), "--seed", "huge")
    assert rc == 2


def test_tiling_controlpoints(capsys):
    rc, out, _ = run(capsys, "--json", "tiling", "controlpoints", bundled_path("fibonacci"))
    rep = json.loads(out)
    assert rc == 0 and rep["identity"]
    assert rep["control_points"][0]["exact"] == [["0", "0"]]


def test_not_stabilized_exit(capsys, tmp_path):
    data = {
        "schema_version": 1,
        "kind": "substitution",
        "field": {"min_poly": ["0", "1"], "embeddings": [["0", "0"]]},
        "expansion": [["3/2"]],
        "tiles": [{"name": "T", "children": [{"type": "T", "offset": ["0"]}, {"type": "T", "offset": ["1"]}]}],
    }
    f = tmp_path / "r.json"
    f.write_text(json.dumps(data))
    rc, out, _ = run(capsys, "tiling", "addressmap", f, "--k-max", "3")
    assert rc == 1
    assert "not stabilized" in out


@pytest.mark.parametrize(
    "file, word, iters",
    [("figure1", "[a,c]", 8), ("figure3-boundary", "[b,c]", 6)],
)
def test_boundary(capsys, tmp_path, file, word, iters):
    out_svg = tmp_path / "b.svg"
    poly = tmp_path / "b.json"
    rc, out, _ = run(capsys, "boundary", bundled_path(file), "--word", word, "--iters", iters,
                     "--svg", out_svg, "--polyline", poly)
    assert rc == 0
    assert "closed exactly" in out
    root = ET.parse(out_svg).getroot()
    assert len(root.findall("{http://www.w3.org/2000/svg}path")) == 1
    data = json.loads(poly.read_text())
    assert data[word]["closed_exact"] is True
    assert data[word]["points"][0] == data[word]["points"][-1] or True


def test_boundary_not_closed(capsys):
    rc, _, err = run(capsys, "boundary", bundled_path("figure1"), "--word", "ab")
    assert rc == 1
    assert "not closed" in err


@pytest.mark.parametrize(
    "content, message",
    [
        ("{", "invalid JSON"),
        ('{"schema_version": 2, "kind": "expansion"}', "schema_version"),
        ('{"schema_version": 1, "kind": "nope"}', "kind"),
        ('{"schema_version": 1, "kind": "expansion"}', "matrix"),
        ('{"schema_version": 1, "kind": "expansion", "matrix": [[1, 2]]}', ""),
        ('{"schema_version": 1, "kind": "substitution", "field": {}}', "malformed"),
    ],
)
def test_input_errors(capsys, tmp_path, content, message):
    f = tmp_path / "bad.json"
    f.write_text(content)
    rc, _, err = run(capsys, "check-expansion", f)
    assert rc == 2
    assert message in err


def test_missing_file_and_bad_args(capsys):
    assert run(capsys, "check-expansion", "/nonexistent.json")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "--precision", "4", "check-expansion", bundled_path("golden"))[0] == 2


def test_json_is_deterministic(capsys):
    first = run(capsys, "--json", "tiling", "check", bundled_path("figure1"))[1]
    second = run(capsys, "--json", "tiling", "check", bundled_path("figure1"))[1]
    assert first == second
    first = run(capsys, "--json", "tiling", "addressmap", bundled_path("figure3"))[1]
    assert first == run(capsys, "--json", "tiling", "addressmap", bundled_path("figure3"))[1]


def test_quiet_and_precision(capsys):
    rc, out, _ = run(capsys, "--quiet", "check-expansion", bundled_path("figure2"))
    assert out == "PASS\n"
    _, out, _ = run(capsys, "--precision", "64", "tiling", "controlpoints", bundled_path("figure3"))
    assert "identity" in out
