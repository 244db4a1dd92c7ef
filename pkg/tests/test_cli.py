"""CLI surface: commands, exit codes, JSON determinism."""

import json

import pytest
from click.testing import CliRunner

from isocut import cli
from isocut.hypergraph import parse_hypergraph

DUMBBELL = """7 6 1
1 1 2
1 2 3
1 1 3
1 4 5
1 5 6
1 4 6
1 3 4
"""

STAR = """3 4 1
1 1 2
1 1 3
1 1 4
"""


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestMincut:
    def test_dumbbell_with_verify(self, runner, tmp_path):
        path = write(tmp_path, "dumbbell.hgr", DUMBBELL)
        result = runner.invoke(cli.main, ["mincut", path, "--seed", "1", "--verify"])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["min_cut_value"] == 1
        assert report["side"] == [1, 2, 3]
        assert report["verification"] == "match"
        assert report["n"] == 6 and report["m"] == 7 and report["p"] == 14
        assert report["flow_calls"] == report["blackbox_calls"] > 0
        assert report["seed"] == 1

    def test_parse_error_exits_1_with_line(self, runner, tmp_path):
        path = write(tmp_path, "bad.hgr", "2 3\n1 2\n9 9\n")
        result = runner.invoke(cli.main, ["mincut", path])
        assert result.exit_code == 1
        assert "line 3" in result.stderr

    def test_verify_skipped_above_cap(self, runner, tmp_path):
        gen = runner.invoke(cli.main, ["gen", "--n", "30", "--m", "40", "--seed", "3"])
        assert gen.exit_code == 0
        path = write(tmp_path, "big.hgr", gen.stdout)
        result = runner.invoke(cli.main, ["mincut", path, "--seed", "1", "--verify", "--reps", "4"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["verification"] == "skipped"
        assert "verification skipped" in result.stderr

    def test_mismatch_exits_2(self, runner, tmp_path, monkeypatch):
        import isocut.cli as cli_mod

        def fake_brute(oracle):
            return None, -999

        monkeypatch.setattr(cli_mod, "bruteforce_nontrivial_min", fake_brute)
        path = write(tmp_path, "dumbbell.hgr", DUMBBELL)
        result = runner.invoke(cli.main, ["mincut", path, "--seed", "1", "--verify"])
        assert result.exit_code == 2
        assert json.loads(result.stdout)["verification"] == "mismatch"

    def test_text_mode(self, runner, tmp_path):
        path = write(tmp_path, "dumbbell.hgr", DUMBBELL)
        result = runner.invoke(cli.main, ["mincut", path, "--seed", "1", "--text"])
        assert result.exit_code == 0
        assert "min cut value: 1" in result.stdout

    def test_env_seed_fallback(self, runner, tmp_path):
        path = write(tmp_path, "dumbbell.hgr", DUMBBELL)
        with_flag = runner.invoke(cli.main, ["mincut", path, "--seed", "77"])
        with_env = runner.invoke(cli.main, ["mincut", path], env={"ISOCUT_SEED": "77"})
        assert with_flag.stdout == with_env.stdout
        assert json.loads(with_env.stdout)["seed"] == 77

    def test_json_input_mirror(self, runner, tmp_path):
        h = parse_hypergraph(DUMBBELL)
        obj = {"n": h.n, "edges": [{"verts": [v + 1 for v in vs], "w": w} for vs, w in h.edges]}
        path = write(tmp_path, "dumbbell.json", json.dumps(obj))
        result = runner.invoke(cli.main, ["mincut", path, "--seed", "1"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["min_cut_value"] == 1


class TestIsolate:
    def test_star_terminals(self, runner, tmp_path):
        path = write(tmp_path, "star.hgr", STAR)
        result = runner.invoke(cli.main, ["isolate", path, "--terminals", "2,3", "--json"])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["step1_calls"] == 1 and report["step2_calls"] == 2
        by_terminal = {r["terminal"]: r for r in report["rows"]}
        assert by_terminal[2]["value"] == 1 and by_terminal[2]["isolating_set"] == [2]
        assert by_terminal[3]["value"] == 1 and by_terminal[3]["isolating_set"] == [3]
        assert report["cell_size_total"] <= report["n"]

    def test_text_table(self, runner, tmp_path):
        path = write(tmp_path, "star.hgr", STAR)
        result = runner.invoke(cli.main, ["isolate", path, "--terminals", "2,3"])
        assert result.exit_code == 0
        assert "round-1 calls: 1" in result.stdout

    def test_all_vertices_as_terminals(self, runner, tmp_path):
        path = write(tmp_path, "star.hgr", STAR)
        result = runner.invoke(cli.main, ["isolate", path, "--terminals", "1,2,3,4", "--json"])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert all(r["isolating_set"] == [r["terminal"]] for r in report["rows"])

    def test_usage_errors(self, runner, tmp_path):
        path = write(tmp_path, "star.hgr", STAR)
        assert runner.invoke(cli.main, ["isolate", path, "--terminals", "2"]).exit_code == 2
        assert runner.invoke(cli.main, ["isolate", path, "--terminals", "2,2"]).exit_code == 2
        assert runner.invoke(cli.main, ["isolate", path, "--terminals", "2,9"]).exit_code == 2
        assert runner.invoke(cli.main, ["isolate", path, "--terminals", "a,b"]).exit_code == 2


class TestGen:
    def test_deterministic_bytes(self, runner):
        a = runner.invoke(cli.main, ["gen", "--n", "10", "--m", "12", "--seed", "5"])
        b = runner.invoke(cli.main, ["gen", "--n", "10", "--m", "12", "--seed", "5"])
        assert a.exit_code == 0
        assert a.stdout == b.stdout
        parse_hypergraph(a.stdout)  # parses cleanly

    def test_planted_comment_matches_cut(self, runner, tmp_path):
        result = runner.invoke(cli.main, [
            "gen", "--model", "planted", "--n", "12", "--m", "18", "--seed", "9",
        ])
        assert result.exit_code == 0
        first = result.stdout.splitlines()[0]
        assert first.startswith("% planted cut value = ")
        planted = int(first.rsplit("=", 1)[1])
        h = parse_hypergraph(result.stdout)
        # the planted bipartition is an upper bound witness for the min cut
        path = write(tmp_path, "planted.hgr", result.stdout)
        run = runner.invoke(cli.main, ["mincut", path, "--seed", "0", "--verify"])
        report = json.loads(run.stdout)
        assert report["verification"] == "match"
        assert report["min_cut_value"] <= planted
        assert h.n == 12

    def test_param_validation(self, runner):
        assert runner.invoke(cli.main, ["gen", "--n", "5", "--m", "3", "--max-rank", "1"]).exit_code == 2
        assert runner.invoke(cli.main, ["gen", "--n", "1", "--m", "3"]).exit_code == 2
        assert runner.invoke(cli.main, ["gen", "--n", "5", "--m", "0"]).exit_code == 2


class TestSfm:
    def test_concave_demo(self, runner):
        result = runner.invoke(cli.main, ["sfm", "--demo", "concave:8", "--seed", "0"])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["value"] == 1
        assert len(report["side"]) == 1
        assert report["oracle_queries"] > 0
        assert report["blackbox_calls"] > 0

    def test_cut_demo(self, runner, tmp_path):
        path = write(tmp_path, "dumbbell.hgr", DUMBBELL)
        result = runner.invoke(cli.main, ["sfm", "--demo", f"cut:{path}", "--seed", "0"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["value"] == 1

    def test_usage_errors(self, runner):
        assert runner.invoke(cli.main, ["sfm", "--demo", "concave:1"]).exit_code == 2
        assert runner.invoke(cli.main, ["sfm", "--demo", "weird:4"]).exit_code == 2
        assert runner.invoke(cli.main, ["sfm", "--demo", "concave:x"]).exit_code == 2
        assert runner.invoke(cli.main, ["sfm", "--demo", "cut:"]).exit_code == 2


class TestDeterminism:
    def test_repeat_runs_byte_identical(self, runner, tmp_path):
        dumbbell = write(tmp_path, "dumbbell.hgr", DUMBBELL)
        star = write(tmp_path, "star.hgr", STAR)
        invocations = [
            ["mincut", dumbbell, "--seed", "3"],
            ["mincut", dumbbell, "--seed", "4", "--verify"],
            ["mincut", star, "--seed", "3"],
            ["isolate", star, "--terminals", "2,4", "--json"],
            ["gen", "--n", "9", "--m", "11", "--seed", "2"],
            ["gen", "--model", "planted", "--n", "8", "--m", "10", "--seed", "2"],
            ["sfm", "--demo", "concave:6", "--seed", "8"],
            ["sfm", "--demo", f"cut:{star}", "--seed", "8"],
            ["mincut", dumbbell, "--seed", "5", "--reps", "7"],
            ["mincut", dumbbell, "--seed", "6", "--threads", "2"],
        ]
        for args in invocations:
            first = runner.invoke(cli.main, args)
            second = runner.invoke(cli.main, args)
            assert first.exit_code == 0, args
            assert first.stdout.encode() == second.stdout.encode(), args
