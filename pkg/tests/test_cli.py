import json

import pytest

from anglesum.cli import main, voxel_from_text, voxel_to_text
from anglesum.complexes import block


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_alpha_expr(capsys):
    code, doc = run_json(capsys, "alpha", "--expr", "Pinf tri")
    assert code == 0
    assert doc["schema"] == 1
    assert doc["alpha"] == ["1/4", "5/4", 2, 1]
    assert doc["f"] == [4, 6, 4, 1]
    assert doc["methods"] == ["exact"] * 4


def test_alpha_square(capsys):
    code, doc = run_json(capsys, "alpha", "--expr", "B* seg")
    assert code == 0
    assert doc["alpha"] == [1, 2, 1] and doc["f"] == [4, 4, 1]


def test_alpha_file(tmp_path, capsys):
    path = tmp_path / "cube.json"
    path.write_text(json.dumps({
        "dim": 3,
        "vertices": [[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)],
    }))
    code, doc = run_json(capsys, "alpha", "--file", str(path))
    assert code == 0
    assert doc["alpha"] == [1, 3, 3, 1]
    assert doc["f"] == [8, 12, 6, 1]


def test_alpha_parse_error(capsys):
    assert main(["alpha", "--expr", "Qx tri"]) == 2


def test_alpha_geometry_error(tmp_path, capsys):
    path = tmp_path / "flat.json"
    path.write_text(json.dumps(
        {"dim": 3, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]}))
    assert main(["alpha", "--file", str(path)]) == 3


def test_verify_expr_gram(capsys):
    code, doc = run_json(capsys, "verify", "--expr", "B*^2 point", "--rel", "gram")
    assert code == 0
    assert doc["failures"] == 0


def test_verify_torus_gram_fails(capsys):
    code, doc = run_json(capsys, "verify", "--fixture", "torus", "--rel", "gram")
    assert code == 1
    (row,) = doc["rows"]
    assert row["residual"] == -1  # chi_alpha 0 against the convex value 1
    assert not row["passed"]


def test_verify_t1_3_perles(capsys):
    code, doc = run_json(capsys, "verify", "--fixture", "t1_3", "--rel", "perles",
                         "--samples", "2000")
    assert code == 0
    assert len(doc["rows"]) == 4  # k = -1..2


def test_verify_default_battery_simplicial(capsys):
    code, doc = run_json(capsys, "verify", "--fixture", "tet", "--samples", "2000")
    assert code == 0
    names = {r["relation"] for r in doc["rows"]}
    assert {"gram", "euler", "dehn-sommerville", "angle-dehn-sommerville"} <= names


def test_span_commands(capsys):
    code, doc = run_json(capsys, "span", "simplices", "9")
    assert code == 0 and doc["affine_dim"] == 4 and doc["rank_kind"] == "exact"
    code, doc = run_json(capsys, "span", "general", "6")
    assert code == 0 and doc["affine_dim"] == 9
    assert main(["span", "simplices", "0"]) == 2  # guard violation


def test_complex_chars_gamma(capsys):
    code, doc = run_json(capsys, "complex", "chars", "--fixture", "gamma")
    assert code == 0
    assert doc["chi_alpha"] == 2 and doc["chi_boundary"] == 4
    assert doc["alpha_flats"] == [8, 12, 6]


def test_complex_chars_handlebody(capsys):
    code, doc = run_json(capsys, "complex", "chars", "--fixture", "handlebody:2")
    assert code == 0 and doc["chi_alpha"] == -1
    assert main(["complex", "chars", "--fixture", "handlebody:x"]) == 2


def test_complex_fixtures_listing(capsys):
    code, doc = run_json(capsys, "complex", "fixtures")
    assert code == 0
    assert "torus" in doc["fixtures"] and "furch" in doc["fixtures"]


def test_voxel_roundtrip_and_glue(tmp_path, capsys):
    a, b = block(2, 2, 1), block(2, 2, 1).translate((0, 0, 1))
    pa, pb = tmp_path / "a.vox", tmp_path / "b.vox"
    pa.write_text(voxel_to_text(a))
    pb.write_text(voxel_to_text(b))
    assert voxel_from_text(voxel_to_text(a)).cells == a.cells
    code, doc = run_json(capsys, "complex", "glue", str(pa), str(pb))
    assert code == 0
    assert doc["classification"] == "balls(m=1)" and doc["ok"]


def test_glue_disjoint_exit_4(tmp_path, capsys):
    pa, pb = tmp_path / "a.vox", tmp_path / "b.vox"
    pa.write_text(voxel_to_text(block(1, 1, 1)))
    pb.write_text(voxel_to_text(block(1, 1, 1).translate((5, 5, 5))))
    assert main(["complex", "glue", str(pa), str(pb)]) == 4


def test_bad_voxel_file(tmp_path, capsys):
    p = tmp_path / "bad.vox"
    p.write_text("cells 3\n0 0 0\n")
    assert main(["complex", "build", "--file", str(p)]) == 2


def test_curved_gram_octant(capsys):
    code, doc = run_json(capsys, "curved", "gram", "--fixture", "octant")
    assert code == 0
    (row,) = doc["rows"]
    assert row["residual"] == 0 and row["tolerance"] == 0.0


def test_curved_alpha_orthant(capsys):
    code, doc = run_json(capsys, "curved", "alpha", "--fixture", "orthant",
                         "--samples", "2000")
    assert code == 0
    assert doc["alpha"] == ["1/16", "1/2", "3/2", 2, 1]
    assert doc["epsilon"] == 1


def test_curved_file_input(tmp_path, capsys):
    p = tmp_path / "tri.json"
    p.write_text(json.dumps({"geometry": "hyperbolic", "dim": 2,
                             "vertices": [[-0.4, 0], [0.4, 0], [0, 0.5]]}))
    code, doc = run_json(capsys, "curved", "gram", "--file", str(p))
    assert code == 0
    p.write_text(json.dumps({"geometry": "hyperbolic", "dim": 2,
                             "vertices": [[-2, 0], [0.4, 0], [0, 0.5]]}))
    assert main(["curved", "gram", "--file", str(p)]) == 3  # outside the ball


def test_curved_perles_suite(capsys):
    code, doc = run_json(capsys, "curved", "perles", "--suite", "hyperbolic")
    assert code == 0
    assert doc["failures"] == 0
    assert doc["evidence_only"] >= 1
    assert any(r["status"] == "evidence" for r in doc["rows"])


def test_curved_schlafli_d2(capsys):
    code, doc = run_json(capsys, "curved", "schlafli", "--d", "2")
    assert code == 0
    assert abs(doc["calibration_constant"] - 1.0) < 1e-9
    assert abs(doc["fd"] - 0.5) < 1e-9 and doc["ok"]


def test_byte_identical_reruns(capsys):
    _, out1 = run(capsys, "curved", "gram", "--fixture", "octant",
                  "--format", "json")
    _, out2 = run(capsys, "curved", "gram", "--fixture", "octant",
                  "--format", "json")
    assert out1 == out2


def test_csv_format(capsys):
    code, out = run(capsys, "verify", "--fixture", "torus", "--rel", "gram",
                    "--format", "csv")
    assert code == 1
    lines = out.strip().splitlines()
    assert lines[0].startswith("# seed=")
    assert lines[1].split(",") == ["relation", "k", "lhs", "rhs", "residual",
                                   "tolerance", "passed"]


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("ANGLESUM_THREADS", "2")
    code, doc = run_json(capsys, "alpha", "--expr", "B* seg")
    assert code == 0 and doc["config"]["threads"] == 2
    monkeypatch.setenv("ANGLESUM_THREADS", "zz")
    assert main(["alpha", "--expr", "B* seg"]) == 2
