import json
import shutil
import subprocess

import pytest

from goodsets.cli import main
from goodsets.instances import dumps_canonical, emit_examples, example_instance


@pytest.fixture(scope="module")
def inst_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("instances")
    emit_examples(directory)
    return directory


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out else None
    return code, report, captured.err


def test_check_good_e5plus(capsys, inst_dir):
    code, report, _ = run_cli(capsys, "check-good", str(inst_dir / "e5plus.json"))
    assert code == 0
    assert report["command"] == "check-good"
    assert report["result"]["good"] is False
    assert report["result"]["loop"]["points"] == [0, 1, 2, 3, 4]
    assert report["result"]["loop"]["coefficients"] == [2, -1, -1, -1, 1]


def test_check_good_reports_digest(capsys, inst_dir):
    _, report, _ = run_cli(capsys, "check-good", str(inst_dir / "t4.json"))
    assert len(report["instance"]["sha256"]) == 64
    assert report["instance"]["points"] == 4


def test_find_loop(capsys, inst_dir):
    code, report, _ = run_cli(capsys, "find-loop", str(inst_dir / "rectangle.json"))
    assert code == 0
    assert report["result"]["loop"]["coefficients"] == [1, -1, -1, 1]
    code, report, _ = run_cli(capsys, "find-loop", str(inst_dir / "t4.json"))
    assert report["result"]["loop"] is None


def test_geodesic_t4(capsys, inst_dir):
    code, report, _ = run_cli(
        capsys, "geodesic", str(inst_dir / "t4.json"), "--from", "0", "--to", "3"
    )
    assert code == 0
    assert report["result"] == {"related": True, "length": 4, "points": [0, 1, 2, 3]}


def test_geodesic_index_out_of_range(capsys, inst_dir):
    code, report, err = run_cli(
        capsys, "geodesic", str(inst_dir / "t4.json"), "--from", "0", "--to", "9"
    )
    assert code == 2 and report is None and "precondition" in err


def test_solve_doubling_chain(capsys, inst_dir):
    code, report, _ = run_cli(
        capsys, "solve", str(inst_dir / "ex10_depth2.json"), "--method", "direct"
    )
    assert code == 0
    result = report["result"]
    assert result["verdict"] == "unique"
    assert result["decomposition"]["z"]["z2"] == "4"
    assert result["decomposition"]["x"]["x2"] == "-2"
    assert result["diagnostics"]["max_abs_value"] == "4"


def test_solve_methods_agree(capsys, inst_dir):
    path = str(inst_dir / "ex10_depth2.json")
    _, direct, _ = run_cli(capsys, "solve", path, "--method", "direct")
    _, geodesic, _ = run_cli(capsys, "solve", path, "--method", "geodesic")
    _, componentwise, _ = run_cli(capsys, "solve", path, "--method", "componentwise")
    d = direct["result"]["decomposition"]
    assert geodesic["result"]["decomposition"] == d
    assert componentwise["result"]["decomposition"] == d


def test_solve_boundary_method_defaults_to_zero_pins(capsys, tmp_path):
    data = {
        "axes": [
            {"name": "x", "values": ["0", "1"]},
            {"name": "y", "values": ["0", "1"]},
            {"name": "z", "values": ["0", "1"]},
        ],
        "points": [["0", "0", "0"], ["1", "1", "1"]],
        "f": {"0": "1", "1": "0"},
    }
    path = tmp_path / "diag.json"
    path.write_text(dumps_canonical(data))
    code, report, _ = run_cli(capsys, "solve", str(path), "--method", "boundary")
    assert code == 0
    assert report["result"]["decomposition"]["x"] == {"0": "1", "1": "0"}


def test_solve_inline_pins_override(capsys, inst_dir):
    code, report, _ = run_cli(
        capsys,
        "solve",
        str(inst_dir / "ex10_depth1.json"),
        "--pins",
        '[{"axis": "x", "value": "x0", "rational": "1"}, {"axis": "y", "value": "y0", "rational": "0"}]',
    )
    assert code == 0
    assert report["result"]["decomposition"]["x"]["x0"] == "1"


def test_solve_requires_f(capsys, inst_dir):
    code, report, err = run_cli(capsys, "solve", str(inst_dir / "t4.json"))
    assert code == 2 and "f table" in err


def test_solve_inconsistent_verdict_still_exits_zero(capsys, tmp_path):
    data = example_instance("rectangle")
    data["f"] = {"0": "1", "1": "0", "2": "0", "3": "0"}
    path = tmp_path / "rect.json"
    path.write_text(dumps_canonical(data))
    code, report, _ = run_cli(capsys, "solve", str(path))
    assert code == 0
    assert report["result"]["verdict"] == "inconsistent"
    assert report["result"]["decomposition"] is None
    rows = [w["row"] for w in report["result"]["witness"]]
    assert all(isinstance(r, int) for r in rows)


def test_simplicial_uses_file_measure(capsys, tmp_path):
    data = example_instance("rectangle")
    data["measure"] = {"0": "1/2", "1": "1/6", "2": "1/6", "3": "1/6"}
    path = tmp_path / "weighted.json"
    path.write_text(dumps_canonical(data))
    code, report, _ = run_cli(capsys, "simplicial", str(path))
    assert code == 0
    assert report["result"]["simplicial"] is False
    assert report["result"]["certificate"]["epsilon"] == "1/6"


def test_is_full(capsys, inst_dir):
    _, report, _ = run_cli(capsys, "is-full", str(inst_dir / "t4.json"))
    assert report["result"] == {"good": True, "full": True}
    _, report, _ = run_cli(capsys, "is-full", str(inst_dir / "rectangle.json"))
    assert report["result"] == {"good": False, "full": False}


def test_fullify_and_split_and_maximalize(capsys, tmp_path):
    data = {
        "axes": [
            {"name": "x", "values": ["0", "1"]},
            {"name": "y", "values": ["0", "1"]},
            {"name": "z", "values": ["0", "1"]},
        ],
        "points": [["0", "0", "0"], ["1", "1", "1"]],
    }
    path = tmp_path / "diag.json"
    path.write_text(dumps_canonical(data))
    _, report, _ = run_cli(capsys, "fullify", str(path))
    assert len(report["result"]["points"]) == 4
    assert len(report["result"]["added"]) == 2
    _, report, _ = run_cli(capsys, "split", str(path))
    assert len(report["result"]["complement"]) == 2
    _, report, _ = run_cli(capsys, "maximalize", str(path))
    assert len(report["result"]["points"]) == 4


def test_fullify_precondition(capsys, inst_dir):
    code, _, err = run_cli(capsys, "fullify", str(inst_dir / "rectangle.json"))
    assert code == 2 and "good" in err


def test_components(capsys, tmp_path):
    data = {
        "axes": [
            {"name": "x", "values": ["0", "1"]},
            {"name": "y", "values": ["0", "1"]},
            {"name": "z", "values": ["0", "1"]},
        ],
        "points": [["0", "0", "0"], ["1", "1", "1"]],
    }
    path = tmp_path / "diag.json"
    path.write_text(dumps_canonical(data))
    _, report, _ = run_cli(capsys, "components", str(path))
    assert report["result"]["count"] == 2
    assert report["result"]["components"] == [[0], [1]]


def test_boundary_t4(capsys, inst_dir):
    _, report, _ = run_cli(capsys, "boundary", str(inst_dir / "t4.json"))
    assert report["result"]["boundary"] == [
        {"axis": "y", "value": "0"},
        {"axis": "z", "value": "0"},
    ]
    assert report["result"]["pivot_generators"] == [0]


def test_simplicial_rectangle_uniform_default(capsys, inst_dir):
    _, report, _ = run_cli(capsys, "simplicial", str(inst_dir / "rectangle.json"))
    result = report["result"]
    assert result["simplicial"] is False
    assert result["certificate"]["epsilon"] == "1/4"
    assert result["certificate"]["coefficients"] == [1, -1, -1, 1]


def test_stats_t4(capsys, inst_dir):
    _, report, _ = run_cli(capsys, "stats", str(inst_dir / "t4.json"))
    result = report["result"]
    assert result["deficiency"] == 2
    assert result["good"] and result["full"]
    assert result["components"] == 1
    assert result["max_geodesic_length"] == 4
    assert result["mean_geodesic_length"] == "13/4"


def test_determinism_byte_identical(capsys, inst_dir):
    path = str(inst_dir / "e5plus.json")
    main(["check-good", path])
    first = capsys.readouterr().out
    main(["check-good", path])
    second = capsys.readouterr().out
    assert first == second


def test_out_flag_writes_file(capsys, inst_dir, tmp_path):
    out = tmp_path / "report.json"
    code, report, _ = run_cli(
        capsys, "check-good", str(inst_dir / "t4.json"), "--out", str(out)
    )
    assert code == 0 and report is None
    assert json.loads(out.read_text())["result"]["good"] is True


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, report, err = run_cli(capsys, "check-good", str(bad))
    assert code == 3 and report is None and "instance error" in err
    code, _, _ = run_cli(capsys, "check-good", str(tmp_path / "missing.json"))
    assert code == 3


def test_emit_examples_command(capsys, tmp_path):
    code, report, _ = run_cli(capsys, "emit-examples", str(tmp_path / "out"))
    assert code == 0
    assert "t4.json" in report["result"]["files"]
    assert (tmp_path / "out" / "ex10_depth6.json").exists()


def test_unknown_command_exits_2(inst_dir):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", str(inst_dir / "t4.json")])
    assert exc.value.code == 2


@pytest.mark.skipif(shutil.which("goodsets") is None, reason="script not installed")
def test_console_script_end_to_end(inst_dir):
    proc = subprocess.run(
        ["goodsets", "check-good", str(inst_dir / "e5plus.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["loop"]["coefficients"] == [2, -1, -1, -1, 1]
    assert "elapsed_ms=" in proc.stderr
    missing = subprocess.run(
        ["goodsets", "stats", str(inst_dir / "nope.json")], capture_output=True
    )
    assert missing.returncode == 3
