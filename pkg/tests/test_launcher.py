import json
import shutil

import pytest

from Complex.document import load_document, parse_document, serialize_document
from launcher import EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, run


def _structured(capsys, argv, code=EXIT_OK):
    assert run(argv + ["--format", "structured"]) == code
    return json.loads(capsys.readouterr().out)


def test_independent_points(capsys):
    out = _structured(capsys, ["independent", "0,0", "1,0", "0,1"])
    assert out["rank"] == 2 and out["independent"] is True
    assert "dependence" not in out


def test_dependent_points_report_a_dependence(capsys):
    out = _structured(capsys, ["independent", "0,0", "1,0", "2,0"], EXIT_NEGATIVE)
    assert out["independent"] is False and out["rank"] == 1
    assert out["dependence"].startswith("(")


def test_grades_table_is_dependent(capsys, fixture_path):
    code = run(["independent", "--points-file", fixture_path("student_grades.csv")])
    assert code == EXIT_NEGATIVE
    assert "30" in capsys.readouterr().out


def test_usage_errors(capsys, tmp_path):
    assert run([]) == EXIT_USAGE
    assert run(["independent"]) == EXIT_USAGE
    assert run(["validate", str(tmp_path / "missing.scx")]) == EXIT_USAGE
    broken = tmp_path / "broken.scx"
    broken.write_text('{"ambient_dim": 2,')
    assert run(["validate", str(broken)]) == EXIT_USAGE
    assert run(["classify", "0,0", "1,0", "--point", "1/0,0"]) == EXIT_USAGE
    assert run(["validate", str(broken), "--jobs", "0"]) == EXIT_USAGE
    assert "ParseError" in capsys.readouterr().err


def test_domain_errors_exit_one(capsys):
    assert run(["barycentric", "0,0", "1,1", "2,2", "--point", "1,1"]) == EXIT_NEGATIVE
    assert "DependentVertices" in capsys.readouterr().err


def test_barycentric_and_classify(capsys):
    out = _structured(capsys, ["barycentric", "0,0", "4,0", "2,3", "--point", "2,1"])
    assert out["coords"] == "(1/3, 1/3, 1/3)"
    out = _structured(capsys, ["classify", "0,0", "4,0", "2,3", "--point=-1,0"], EXIT_NEGATIVE)
    assert out["position"] == "outside"


def test_plane_member_and_extend(capsys):
    out = _structured(capsys, ["plane-member", "1,0,0", "0,1,0", "0,0,1", "--point", "1/2,1/2,0"])
    assert out["member"] is True and out["coefficients"] == "(1/2, 1/2, 0)"
    out = _structured(capsys, ["extend", "2,3,1", "3,5,2", "4,4,3", "--point", "5,6,7"])
    assert out["rank_before"] == 2 and out["rank_after"] == 3


def test_faces_and_cone(capsys):
    out = _structured(capsys, ["faces", "0,0", "1,0", "0,1", "-k", "1"])
    assert out["proper_faces"] == 6 and len(out["rows"]) == 3
    out = _structured(capsys, ["cone", "0,0", "1,0", "0,1", "--point", "1/4,1/4"])
    assert out["apex_weight"] == "1/2" and out["base_point"] == "(1/2, 1/2)"


def test_ray(capsys):
    out = _structured(capsys, ["ray", "0,0", "1,0", "0,1", "--origin", "1/3,1/3", "--direction", "1,1"])
    assert out == {"t_star": "1/6", "hit": "(1/2, 1/2)", "face": "(1, 2)"}


def test_ball(capsys):
    out = _structured(capsys, ["ball", "0,0", "4,0", "--point", "4,0"])
    assert out["on_sphere"] is True and out["coords"] == "(1)"


def test_validate_nonexample(capsys, fixture_path):
    assert run(["validate", fixture_path("nonexample.scx")]) == EXIT_NEGATIVE
    out = capsys.readouterr().out
    assert "missing-face" in out
    assert "{a0,a1}" in out
    assert "bad-intersection" in out


@pytest.mark.parametrize("method", ["definitional", "disjoint-interiors", "both"])
def test_validate_several_files_in_parallel(capsys, fixture_path, method):
    files = [fixture_path(name) for name in ("triangle.scx", "shared_edge.scx", "shared_vertex.scx")]
    out = _structured(capsys, ["validate", *files, "--jobs", "2", "--method", method])
    assert out["ok"] is True and out["files"] == 3
    assert "rows" not in out


def test_format_is_canonical(capsys, fixture_path):
    path = fixture_path("triangle.scx")
    assert run(["format", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert out == serialize_document(load_document(path))
    assert parse_document(out) == load_document(path)


def test_skeleton_structured_output_is_a_document(capsys, fixture_path):
    assert run(["skeleton", fixture_path("tetrahedron.scx"), "-p", "1", "--format", "structured"]) == EXIT_OK
    doc = parse_document(capsys.readouterr().out)
    assert len(doc.simplices) == 10


def test_star_and_link(capsys, fixture_path):
    out = _structured(capsys, ["star", fixture_path("star_link.scx"), "-v", "a2"])
    assert out["simplices"] == 7
    out = _structured(capsys, ["link", fixture_path("star_link.scx"), "--vertex", "a2"])
    assert out["simplices"] == 8
    assert run(["closed-star", fixture_path("star_link.scx"), "-v", "a9"]) == EXIT_NEGATIVE
    assert "UnknownVertex" in capsys.readouterr().err


def test_locate(capsys, fixture_path):
    out = _structured(capsys, ["locate", fixture_path("triangle.scx"), "--point", "2,0"])
    assert out["carrier"] == "{a0,a1}" and out["coords"] == "(1/2, 1/2)"
    out = _structured(capsys, ["locate", fixture_path("triangle.scx"), "--point", "5,5"], EXIT_NEGATIVE)
    assert out == {"in_realization": False}


def test_lambda_and_eval(capsys, fixture_path):
    assert run(["lambda", fixture_path("lambda_triangle.scx"), "-v", "a1", "--point", "3,3"]) == EXIT_OK
    assert "6/11" in capsys.readouterr().out
    out = _structured(capsys, ["eval", fixture_path("pl_triangle.scx"), "--point", "2,0"])
    assert out["value"] == "1/2"


def test_summary(capsys, fixture_path):
    out = _structured(capsys, ["summary", fixture_path("triangle.scx")])
    assert out["lower"] == "(0, 0)" and out["upper"] == "(4, 3)"
    assert out["rows"] == [{"count": 3, "dim": 0}, {"count": 3, "dim": 1}, {"count": 1, "dim": 2}]
    assert out["locally_finite"] is True


def test_ball_with_irrational_norm_reports_approximate_coordinates(capsys):
    out = _structured(capsys, ["ball", "0,0", "4,0", "2,3", "--point", "3,3/2"])
    assert out["on_sphere"] is True and out["radius"] == "1"
    assert out["direction"] == "(1, 1)"
    assert "coords" not in out
    assert out["approx_coords"] == "(0.707107, 0.707107)"


def test_negative_points_after_separator(capsys):
    assert run(["independent", "--format", "structured", "--", "-1,0", "0,0", "0,1"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["points"] == 3 and out["independent"] is True


def test_validate_expands_directories(capsys, fixture_path, tmp_path):
    for name in ("triangle.scx", "shared_edge.scx"):
        shutil.copy(fixture_path(name), tmp_path / name)
    (tmp_path / "notes.txt").write_text("not a complex")
    out = _structured(capsys, ["validate", str(tmp_path)])
    assert out["files"] == 2 and out["ok"] is True
    assert run(["validate", str(tmp_path / "missing_dir"), str(tmp_path)]) == EXIT_USAGE
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run(["validate", str(empty)]) == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["validate", "nonexample.scx", "shared_edge.scx", "star_link.scx", "--jobs", "3"],
    ["summary", "star_link.scx"],
    ["link", "star_link.scx", "-v", "a2"],
    ["skeleton", "tetrahedron.scx", "-p", "1", "--format", "structured"],
])
def test_reports_are_byte_identical_across_runs(capsys, fixture_path, argv):
    argv = [fixture_path(arg) if arg.endswith(".scx") else arg for arg in argv]
    outputs = []
    for _ in range(2):
        code = run(list(argv))
        outputs.append((code, capsys.readouterr().out))
    assert outputs[0] == outputs[1]
    assert outputs[0][1]
