import json
from fractions import Fraction

from ripshadow.cli import main, points_to_document, document_to_points
from ripshadow.complexes import build_rips
from ripshadow.fixtures import hexagon_points

F = Fraction


def run(args):
    return main(args)


def test_roundtrip_points_document():
    pts = hexagon_points(F(11, 20))
    doc = points_to_document(pts)
    back = document_to_points(doc)
    assert tuple(back) == tuple(pts)
    # re-ingested points build the identical complex
    assert build_rips(back, F(1)).simplices == build_rips(pts, F(1)).simplices


def test_fixture_and_rips_roundtrip(tmp_path, capsys):
    fx = tmp_path / "hex.json"
    out = tmp_path / "r.json"
    assert run(["fixture", "--name", "hexagon", "--out", str(fx)]) == 0
    assert run(["rips", "--points", str(fx), "--epsilon", "1", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == "rips-shadow/1"
    assert rep["betti"]["Q"] == [1, 0, 1]
    assert rep["census"] == {"0": 6, "1": 12, "2": 8, "3": 0}
    assert rep["integer_h1"] == {"rank": 0, "torsion": []}


def test_rips_single_point(tmp_path):
    fx = tmp_path / "one.json"
    fx.write_text(json.dumps({"schema": "rips-shadow/1", "dimension": 2,
                              "points": [["0", "0"]]}))
    out = tmp_path / "r.json"
    assert run(["rips", "--points", str(fx), "--epsilon", "1", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["betti"]["Q"] == [1]


def test_rips_duplicate_points_exit_2(tmp_path, capsys):
    fx = tmp_path / "dup.json"
    fx.write_text(json.dumps({"schema": "rips-shadow/1", "dimension": 2,
                              "points": [["0", "0"], ["0", "0"]]}))
    assert run(["rips", "--points", str(fx), "--epsilon", "1"]) == 2
    assert "coincide" in capsys.readouterr().err


def test_shadow_certificate_and_loop(tmp_path):
    fx = tmp_path / "sq.json"
    fx.write_text(json.dumps({"schema": "rips-shadow/1", "dimension": 2,
                              "points": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]]}))
    out = tmp_path / "s.json"
    svg = tmp_path / "s.svg"
    code = run(["shadow", "--points", str(fx), "--epsilon", "1",
                "--svg", str(svg), "--loop", "0,1,2,3,0", "--out", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["certificate"]["pass"] is True
    assert rep["shadow"]["betti"] == [1, 1]
    assert rep["shadow"]["holes"] == 1
    assert rep["loop"]["contractible"] is False
    assert rep["loop"]["word"] == "a1"
    text = svg.read_text()
    assert text.count("<polyline") == 1
    assert text.count('class="edge"') == 4


def test_shadow_wrong_dimension_exit_4(tmp_path):
    fx = tmp_path / "d1.json"
    fx.write_text(json.dumps({"schema": "rips-shadow/1", "dimension": 1,
                              "points": [["0"], ["1"]]}))
    assert run(["shadow", "--points", str(fx), "--epsilon", "1"]) == 4


def test_quasi_presets(tmp_path):
    out = tmp_path / "q.json"
    assert run(["quasi", "--preset", "rp2", "--interval", "1,3/2",
                "--seed", "7", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["h1_quasi"]["torsion"] == ["2"]
    assert rep["blowup_betti_agree"] is True
    assert rep["monochromatic_violations"] == 0

    assert run(["quasi", "--preset", "torus", "--interval", "1,3/2",
                "--seed", "7", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["h1_quasi"]["torsion"] == []
    assert rep["h1_quasi"]["rank"] >= 2


def test_quasi_presentation_file(tmp_path):
    pf = tmp_path / "pres.json"
    pf.write_text(json.dumps({"generators": 2, "relators": ["aba'b'"]}))
    out = tmp_path / "q.json"
    assert run(["quasi", "--presentation", str(pf), "--interval", "1,3/2",
                "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["h1_k"] == {"rank": 2, "torsion": []}


def test_pair_ring_and_overlap_exit(tmp_path):
    fx = tmp_path / "ring.json"
    assert run(["fixture", "--name", "ring", "--out", str(fx)]) == 0
    out = tmp_path / "p.json"
    assert run(["pair", "--points", str(fx), "--lower", "7/10,9/10,none",
                "--upper", "19/10,11/5,all", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["image_rank"] == 1
    assert rep["bound_ok"] is True
    assert run(["pair", "--points", str(fx), "--lower", "1,2,none",
                "--upper", "3/2,3,all", "--out", str(out)]) == 2


def test_reports_byte_deterministic(tmp_path):
    fx = tmp_path / "hex.json"
    run(["fixture", "--name", "hexagon", "--out", str(fx)])
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(["shadow", "--points", str(fx), "--epsilon", "1", "--out", str(a)])
    run(["shadow", "--points", str(fx), "--epsilon", "1", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    qa = tmp_path / "qa.json"
    qb = tmp_path / "qb.json"
    run(["quasi", "--preset", "rp2", "--interval", "1,3/2", "--seed", "3", "--out", str(qa)])
    run(["quasi", "--preset", "rp2", "--interval", "1,3/2", "--seed", "3", "--out", str(qb)])
    assert qa.read_bytes() == qb.read_bytes()


def test_bad_epsilon_exit_2(tmp_path):
    fx = tmp_path / "hex.json"
    run(["fixture", "--name", "hexagon", "--out", str(fx)])
    assert run(["rips", "--points", str(fx), "--epsilon", "zebra"]) == 2


def test_bad_loop_exit_2(tmp_path):
    fx = tmp_path / "hex.json"
    run(["fixture", "--name", "hexagon", "--out", str(fx)])
    assert run(["shadow", "--points", str(fx), "--epsilon", "1",
                "--loop", "0,1,2"]) == 2  # not closed
    assert run(["shadow", "--points", str(fx), "--epsilon", "1",
                "--loop", "0,3,0"]) == 2  # long diagonal is not an edge
