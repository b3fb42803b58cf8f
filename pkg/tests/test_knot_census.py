import json

import pandas as pd
import pytest

from config import MAX_CENSUS_M
from knot_census import EXIT_CAPACITY, EXIT_SUCCESS, EXIT_USAGE, run


def _json_output(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def test_count(capsys) -> None:
    assert run(["count", "--m", "6"]) == EXIT_SUCCESS
    report = _json_output(capsys)
    assert report["total"] == 2
    assert report["D"] == -23
    assert report["meta"]["range"] == [6, 6]


def test_count_as_csv(capsys) -> None:
    assert run(["count", "--m", "7", "--format", "csv"]) == EXIT_SUCCESS
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "d,disc,h_plus,kernel_order,orbits,split_flag"
    assert len(lines) == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--m", "0"],
        ["count"],
        ["census", "--from", "5", "--to", "1"],
        ["census", "--from", "1", "--to", "5", "--workers", "0"],
        ["oracle", "--m", "6", "--q1", "1,1", "--q2", "2,1,3"],
        ["density", "--d", "4"],
        ["seifert", "poly", "--matrix", "1,0;0,1"],
        ["fit", "--checkpoints", "100,10"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv: list[str], capsys) -> None:
    assert run(argv) == EXIT_USAGE
    assert capsys.readouterr().err


def test_capacity_error(capsys) -> None:
    argv = ["census", "--from", "1", "--to", str(MAX_CENSUS_M + 1)]
    assert run(argv) == EXIT_CAPACITY
    assert "capacity" in capsys.readouterr().err


def test_help_exits_cleanly(capsys) -> None:
    assert run(["--help"]) == EXIT_SUCCESS
    assert "census" in capsys.readouterr().out


def test_census_csv(tmp_path) -> None:
    path = tmp_path / "census.csv"
    argv = ["census", "--from", "-5", "--to", "5", "--out", str(path)]
    assert run(argv) == EXIT_SUCCESS
    data = pd.read_csv(path, keep_default_na=False)
    assert data["m"].tolist() == [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]
    assert data.set_index("m").loc[-2, "flags"] == "split_stratum_unquotiented"
    assert path.read_text().endswith("\n")


def test_census_output_is_reproducible(tmp_path) -> None:
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    for path, workers in ((first, "1"), (second, "2")):
        argv = ["census", "--from", "-20", "--to", "20", "--workers", workers]
        argv += ["--format", "json", "--no-timing", "--out", str(path)]
        assert run(argv) == EXIT_SUCCESS
    assert first.read_bytes() == second.read_bytes()
    report = json.loads(first.read_text())
    assert report["meta"]["wall_time_seconds"] is None
    assert report["rows"] == 40


def test_fit_from_census_file(tmp_path) -> None:
    census_path, fit_path = tmp_path / "census.csv", tmp_path / "fit.csv"
    census_argv = ["census", "--from", "-200", "--to", "200", "--no-structure"]
    assert run(census_argv + ["--out", str(census_path)]) == EXIT_SUCCESS
    fit_argv = ["fit", "--census", str(census_path), "--checkpoints", "50,100,200"]
    assert run(fit_argv + ["--out", str(fit_path)]) == EXIT_SUCCESS
    data = pd.read_csv(fit_path)
    assert sorted(set(data["X"])) == [50, 100, 200]
    assert "total" in set(data["stratum"])


def test_density_lattice_and_mertens(capsys) -> None:
    assert run(["density", "--d", "6"]) == EXIT_SUCCESS
    assert _json_output(capsys)["count"] == 72
    assert run(["lattice", "--X", "10", "--d", "1"]) == EXIT_SUCCESS
    assert _json_output(capsys)["count"] > 0
    assert run(["mertens", "--Z", "4"]) == EXIT_SUCCESS
    assert _json_output(capsys)["exact"] == "5/36"


def test_totals(capsys) -> None:
    assert run(["totals", "--X", "21"]) == EXIT_SUCCESS
    report = _json_output(capsys)
    assert report["siegel_total"] == pytest.approx(6.90428606355)
    assert report["gauss_total"] > 0


def test_cohen_lenstra_commands(capsys) -> None:
    argv = ["cl", "moment", "--u", "0", "--target", "2", "--B", "32"]
    assert run(argv) == EXIT_SUCCESS
    assert _json_output(capsys)["target"] == "Z/2"
    argv = ["cl", "sample", "--u", "0", "--k", "1", "--B", "16", "--n", "2000"]
    assert run(argv + ["--seed", "4"]) == EXIT_SUCCESS
    report = _json_output(capsys)
    assert sum(report["frequencies"].values()) == pytest.approx(1.0)
    assert 0 <= report["tv_exact"] <= 1
    argv = ["cl", "sample", "--B", "16", "--n", "200", "--relation", "1,2"]
    assert run(argv) == EXIT_SUCCESS
    assert "tv_exact" not in _json_output(capsys)


def test_gerth(capsys) -> None:
    assert run(["cl", "gerth", "--to", "100"]) == EXIT_SUCCESS
    header = capsys.readouterr().out.splitlines()[0]
    assert header == "m,disc,principal_genus,surjections,running_mean"


def test_seifert_commands(capsys) -> None:
    assert run(["seifert", "poly", "--matrix", "1,1;0,1"]) == EXIT_SUCCESS
    assert _json_output(capsys)["coefficients"] == [1, -1, 1]
    assert run(["seifert", "form", "--matrix", "2,0;1,3"]) == EXIT_SUCCESS
    assert _json_output(capsys)["form"] == [3, 1, 2]
    argv = ["seifert", "sequiv", "--p1", "1,0;-1,6", "--p2", "2,1;0,3"]
    assert run(argv) == EXIT_SUCCESS
    assert _json_output(capsys)["s_equivalent"] is True
    argv = ["seifert", "random", "--m", "6", "--count", "3", "--seed", "2"]
    assert run(argv) == EXIT_SUCCESS
    assert len(_json_output(capsys)["matrices"]) == 3


def test_oracle(capsys) -> None:
    assert run(["oracle", "--m", "6", "--q1", "1,1,6", "--q2", "2,1,3"]) == EXIT_SUCCESS
    report = _json_output(capsys)
    assert report["equivalent"] is True
    assert report["witness"]["exponent"] >= 1
    assert run(["oracle", "--m", "6", "--q1", "1,1,6", "--q2=-1,-1,-6"]) == EXIT_SUCCESS
    assert _json_output(capsys)["equivalent"] is False
