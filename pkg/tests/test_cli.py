"""CLI verbs, output files and exit codes."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from defring.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def write_spec(tmp_path, raw, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return str(path)


def sample_spec() -> dict:
    return {
        "field": {"p": 5},
        "local_field": {"p": 5},
        "generators": [
            {"matrix": [[1, 1], [0, 1]], "omega": 1},
            {"matrix": [[2, 0], [0, 1]], "omega": 2},
        ],
    }


class TestReportVerb:
    def test_stdout(self, runner, tmp_path):
        path = write_spec(tmp_path, sample_spec())
        res = runner.invoke(main, ["report", path])
        assert res.exit_code == 0
        body = json.loads(res.output)
        assert body["cohomology"]["r"] == 8

    def test_out_file(self, runner, tmp_path):
        path = write_spec(tmp_path, sample_spec())
        out = tmp_path / "report.json"
        res = runner.invoke(main, ["report", path, "--out", str(out)])
        assert res.exit_code == 0
        assert json.loads(out.read_text())["image_order"] == 20

    def test_missing_file_exit_1(self, runner):
        res = runner.invoke(main, ["report", "/nope.json"])
        assert res.exit_code == 1

    def test_invalid_spec_exit_1(self, runner, tmp_path):
        raw = sample_spec()
        raw["generators"][0]["omega"] = 0
        path = write_spec(tmp_path, raw)
        res = runner.invoke(main, ["report", path])
        assert res.exit_code == 1

    def test_broken_json_exit_1(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{oops")
        res = runner.invoke(main, ["report", str(path)])
        assert res.exit_code == 1


class TestBoundsVerb:
    def test_basic(self, runner):
        res = runner.invoke(main, ["bounds", "--d", "2", "--degree", "1"])
        assert res.exit_code == 0
        assert json.loads(res.output)["expected_dims"]["R_framed"] == 9

    def test_sweep(self, runner):
        res = runner.invoke(main, ["bounds", "--d", "2", "--degree", "1",
                                   "--sweep"])
        assert res.exit_code == 0
        assert len(json.loads(res.output)["sweep"]) == 3

    def test_out_of_range_exit_1(self, runner):
        res = runner.invoke(main, ["bounds", "--d", "99", "--degree", "1"])
        assert res.exit_code == 1


class TestExampleVerb:
    def test_example35(self, runner):
        res = runner.invoke(main, ["example35"])
        assert res.exit_code == 0
        assert json.loads(res.output)["ok"] is True


class TestFibreVerb:
    def test_count_and_csv(self, runner, tmp_path):
        spec = write_spec(tmp_path, {"target": [[[0, 1], [2, 0]]]},
                          "fibre.json")
        csv_path = tmp_path / "out.csv"
        res = runner.invoke(main, ["fibre-count", "--q", "3", "--d", "2",
                                   "--spec", spec, "--csv", str(csv_path)])
        assert res.exit_code == 0
        assert json.loads(res.output)["count"] == 6
        lines = csv_path.read_text().strip().splitlines()
        assert len(lines) == 7

    def test_bad_spec_exit_1(self, runner, tmp_path):
        spec = write_spec(tmp_path, {"no_target": 1}, "fibre.json")
        res = runner.invoke(main, ["fibre-count", "--q", "3", "--d", "2",
                                   "--spec", spec])
        assert res.exit_code == 1


class TestSelftestVerb:
    def test_selftest(self, runner):
        res = runner.invoke(main, ["selftest"])
        assert res.exit_code == 0
        assert "brauer_nesbitt" in res.output
        assert "FAIL" not in res.output
