import json

import pytest

from torus_rect_tiler.cli import main

SKEWED_23 = "3 5 -4 1"
SKEWED_14 = "2 1 -4 5"
UNIT = "1 0 0 1"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def write_tiling(tmp_path, capsys, basis, *extra):
    path = tmp_path / "tiling.json"
    code, out, _ = run(capsys, "build", "-b", basis, *extra, "-o", str(path))
    assert code == 0
    return path


# --- minlen -------------------------------------------------------------------


def test_minlen_skewed_23(capsys):
    code, doc, _ = run_json(capsys, "minlen", "-b", SKEWED_23)
    assert code == 0
    assert doc["min_length"] == "13"
    assert doc["winner"] == "two_rect"
    assert doc["covolume"] == "23"
    assert doc["quadrant_sum"] == "13"
    assert doc["m_x"] == "24" and doc["m_y"] == "24"
    assert doc["witness"] == {"u1": ["3", "5"], "u2": ["-4", "1"]}


def test_minlen_unit(capsys):
    code, doc, _ = run_json(capsys, "minlen", "-b", UNIT)
    assert code == 0
    assert doc["min_length"] == "2"
    assert doc["winner"] == "one_rect_x"


def test_minlen_skewed_14(capsys):
    code, doc, _ = run_json(capsys, "minlen", "-b", SKEWED_14)
    assert code == 0
    assert doc["min_length"] == "9"
    assert doc["winner"] == "one_rect_y"
    assert doc["witness"] == {"u1": ["2", "1"], "u2": ["-2", "6"]}


def test_minlen_rejects_bad_basis(capsys):
    code, out, err = run(capsys, "minlen", "-b", "1 0")
    assert code == 1 and "error" in err
    code, out, err = run(capsys, "minlen", "-b", "1 2 2 4")
    assert code == 1 and "singular" in err
    code, out, err = run(capsys, "minlen", "-b", "1 0 0 0.5")
    assert code == 1


# --- build --------------------------------------------------------------------


def test_build_default_is_optimal(capsys):
    code, doc, _ = run_json(capsys, "build", "-b", SKEWED_23)
    assert code == 0
    assert doc["rects"] == [["-4", "-1", "0", "1"], ["-1", "3", "0", "5"]]

    code, doc, _ = run_json(capsys, "build", "-b", SKEWED_14)
    assert code == 0
    assert doc["rects"] == [["0", "2", "0", "7"]]


def test_build_forced_two_rect_uses_input_vectors(capsys):
    code, doc, _ = run_json(capsys, "build", "-b", SKEWED_14, "--force", "two-rect")
    assert code == 0
    assert doc["rects"] == [["-4", "-2", "0", "5"], ["-2", "2", "0", "1"]]


def test_build_forced_one_rect(capsys):
    code, doc, _ = run_json(capsys, "build", "-b", SKEWED_14, "--force", "one-rect-x")
    assert code == 0
    assert doc["rects"] == [["0", "14", "0", "1"]]


def test_build_forced_two_rect_inapplicable(capsys):
    code, out, err = run(capsys, "build", "-b", UNIT, "--force", "two-rect")
    assert code == 1
    assert "error" in err


# --- verify -------------------------------------------------------------------


def test_verify_built_tiling_round_trip(capsys, tmp_path):
    path = write_tiling(tmp_path, capsys, SKEWED_23)
    code, doc, _ = run_json(capsys, "verify", "-b", SKEWED_23, "-t", str(path))
    assert code == 0
    assert doc == {"valid": True, "violations": []}


def test_verify_duplicated_rectangle(capsys, tmp_path):
    path = tmp_path / "dup.json"
    path.write_text(
        json.dumps(
            {
                "basis": [["1", "0"], ["0", "1"]],
                "rects": [["0", "1", "0", "1"], ["0", "1", "0", "1"]],
            }
        )
    )
    code, doc, _ = run_json(capsys, "verify", "-t", str(path))
    assert code == 2
    assert doc["valid"] is False
    assert any(v["kind"] == "overlap" for v in doc["violations"])


def test_verify_over_wide_rectangle(capsys, tmp_path):
    path = tmp_path / "wide.json"
    path.write_text(
        json.dumps(
            {"basis": [["1", "0"], ["0", "1"]], "rects": [["0", "2", "0", "1"]]}
        )
    )
    code, doc, _ = run_json(capsys, "verify", "-t", str(path))
    assert code == 2
    assert any(v["kind"] == "injectivity" for v in doc["violations"])


def test_verify_malformed_file(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, out, err = run(capsys, "verify", "-t", str(path))
    assert code == 1 and "error" in err

    path.write_text(json.dumps({"basis": [["1", "0"], ["0", "1"]]}))
    code, out, err = run(capsys, "verify", "-t", str(path))
    assert code == 1

    code, out, err = run(capsys, "verify", "-t", str(tmp_path / "missing.json"))
    assert code == 1


def test_verify_basis_mismatch(capsys, tmp_path):
    path = write_tiling(tmp_path, capsys, SKEWED_23)
    code, out, err = run(capsys, "verify", "-b", UNIT, "-t", str(path))
    assert code == 1 and "differs" in err


# --- skeleton -----------------------------------------------------------------


def test_skeleton_command(capsys, tmp_path):
    path = write_tiling(tmp_path, capsys, SKEWED_23)
    code, doc, _ = run_json(capsys, "skeleton", "-t", str(path))
    assert code == 0
    assert doc["total_length"] == "13"
    assert len(doc["vertices"]) == 4
    assert len(doc["edges"]) == 6
    assert doc["cycles_h"] == 0 and doc["cycles_v"] == 0
    assert doc["paths_h"] == 1 and doc["paths_v"] == 1


def test_skeleton_command_rejects_invalid(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {"basis": [["1", "0"], ["0", "1"]], "rects": [["0", "2", "0", "1"]]}
        )
    )
    code, out, err = run(capsys, "skeleton", "-t", str(path))
    assert code == 2


# --- reduce -------------------------------------------------------------------


SPLIT_17 = {
    "basis": [["3", "5"], ["-4", "1"]],
    "rects": [
        ["-4", "-1", "0", "1"],
        ["-1", "3", "0", "2"],
        ["-1", "3", "2", "5"],
    ],
}


def test_reduce_three_rect_split(capsys, tmp_path):
    path = tmp_path / "split.json"
    path.write_text(json.dumps(SPLIT_17))
    code, doc, _ = run_json(capsys, "reduce", "-b", SKEWED_23, "-t", str(path))
    assert code == 0
    assert doc["length"] == "13"
    assert doc["tiling"]["rects"] == [["-4", "-1", "0", "1"], ["-1", "3", "0", "5"]]
    assert len(doc["trace"]) == 1
    step = doc["trace"][0]
    assert step["axis"] == "h"
    assert step["s2"] == [1] and step["s3"] == [2] and step["s1"] == []
    assert step["shrink"] == "2"
    assert step["eliminated"] == [1]
    assert step["length_before"] == "17" and step["length_after"] == "13"


def test_reduce_already_optimal(capsys, tmp_path):
    path = write_tiling(tmp_path, capsys, SKEWED_23)
    code, doc, _ = run_json(capsys, "reduce", "-t", str(path))
    assert code == 0
    assert doc["trace"] == []
    assert doc["tiling"]["rects"] == [["-4", "-1", "0", "1"], ["-1", "3", "0", "5"]]


def test_reduce_one_rect_has_cycles(capsys, tmp_path):
    path = write_tiling(tmp_path, capsys, SKEWED_14)
    code, out, err = run(capsys, "reduce", "-t", str(path))
    assert code == 1
    assert "cycle" in err.lower()


# --- render -------------------------------------------------------------------


def test_render_two_rect_structure(capsys, tmp_path):
    tiling_path = write_tiling(tmp_path, capsys, SKEWED_23)
    out_path = tmp_path / "out.svg"
    code, _, _ = run(capsys, "render", "-t", str(tiling_path), "-o", str(out_path))
    assert code == 0
    svg = out_path.read_text()
    assert svg.count("<rect") == 2
    assert svg.count('class="arrow"') == 2
    assert svg.startswith("<?xml")
    assert svg.rstrip().endswith("</svg>")


def test_render_one_rect_and_split_counts(capsys, tmp_path):
    tiling_path = write_tiling(tmp_path, capsys, UNIT)
    out_path = tmp_path / "one.svg"
    code, _, _ = run(capsys, "render", "-t", str(tiling_path), "-o", str(out_path))
    assert code == 0
    assert out_path.read_text().count("<rect") == 1

    split_path = tmp_path / "split.json"
    split_path.write_text(json.dumps(SPLIT_17))
    out3 = tmp_path / "three.svg"
    code, _, _ = run(capsys, "render", "-t", str(split_path), "-o", str(out3))
    assert code == 0
    assert out3.read_text().count("<rect") == 3


def test_render_is_deterministic(capsys, tmp_path):
    tiling_path = write_tiling(tmp_path, capsys, SKEWED_23)
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(capsys, "render", "-t", str(tiling_path), "-o", str(a))[0] == 0
    assert run(capsys, "render", "-t", str(tiling_path), "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_render_unwritable_path(capsys, tmp_path):
    tiling_path = write_tiling(tmp_path, capsys, UNIT)
    code, out, err = run(
        capsys, "render", "-t", str(tiling_path), "-o", str(tmp_path / "no" / "dir.svg")
    )
    assert code == 1 and "error" in err


# --- oracle -------------------------------------------------------------------


def test_oracle_unit_radius_one(capsys):
    code, doc, _ = run_json(capsys, "oracle", "-b", UNIT, "--radius", "1")
    assert code == 0
    assert doc["count"] == 5
    assert doc["q1_min"]["norm"] == "1"
    assert doc["q2_min"] is None


def test_oracle_skewed_23(capsys):
    code, doc, _ = run_json(capsys, "oracle", "-b", SKEWED_23, "--radius", "8")
    assert code == 0
    assert doc["q1_min"]["norm"] == "8"
    assert doc["q2_min"]["norm"] == "5"


def test_oracle_skewed_14(capsys):
    code, doc, _ = run_json(capsys, "oracle", "-b", SKEWED_14, "--radius", "8")
    assert code == 0
    assert doc["q2_min"] == {"vector": ["-2", "6"], "norm": "8"}


def test_oracle_rejects_negative_radius(capsys):
    code, out, err = run(capsys, "oracle", "-b", UNIT, "--radius", "-1")
    assert code == 1


# --- general ------------------------------------------------------------------


def test_build_verify_round_trip_always_valid(capsys, tmp_path):
    for basis in (SKEWED_23, SKEWED_14, UNIT, "1 2 3 0"):
        path = write_tiling(tmp_path, capsys, basis)
        code, doc, _ = run_json(capsys, "verify", "-b", basis, "-t", str(path))
        assert code == 0 and doc["valid"] is True


def test_emitted_json_reserializes_byte_identical(capsys, tmp_path):
    path = write_tiling(tmp_path, capsys, SKEWED_23)
    text = path.read_text()
    assert json.dumps(json.loads(text), indent=2) + "\n" == text

    code, out, _ = run(capsys, "minlen", "-b", SKEWED_23)
    assert code == 0
    assert json.dumps(json.loads(out), indent=2) + "\n" == out


def test_minlen_winner_agrees_with_default_build(capsys):
    for basis in (SKEWED_23, SKEWED_14, UNIT, "1 2 3 0", "7 3 -5 2"):
        code, report, _ = run_json(capsys, "minlen", "-b", basis)
        assert code == 0
        code, tiling_doc, _ = run_json(capsys, "build", "-b", basis)
        assert code == 0
        expected = 2 if report["winner"] == "two_rect" else 1
        assert len(tiling_doc["rects"]) == expected


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["minlen"])  # missing -b
    assert exc.value.code == 1
