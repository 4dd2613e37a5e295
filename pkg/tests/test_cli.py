import json
import subprocess
import sys

import pytest

from revsort.cli import main


def run_cli(args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "revsort.cli", *args],
        input=stdin,
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


class TestSort:
    def test_small_example(self, capsys):
        assert main(["sort", "-2 3 1"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert len(out) == 4  # three reversals then the identity
        assert out[-1] == "1 2 3"
        for line in out[:-1]:
            i, j = map(int, line.split())
            assert 1 <= i <= j <= 3

    def test_identity_prints_no_reversals(self, capsys):
        assert main(["sort", "1 2 3"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert out == ["1 2 3"]

    def test_hurdle_three_lines(self, capsys):
        assert main(["sort", "2 1"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert len(out) == 4 and out[-1] == "1 2"

    def test_json_document(self, capsys):
        assert main(["sort", "2 1", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["distance"] == 3
        assert len(doc["prefix"]) == 1
        assert len(doc["pairs"]) == 2
        assert len(doc["reversals"]) == 3

    def test_parse_error_names_token(self, capsys):
        assert main(["sort", "1 zap 3"]) == 2
        assert "zap" in capsys.readouterr().err


class TestDistance:
    @pytest.mark.parametrize("perm,want", [("-2 3 1", "3"), ("1 2 3", "0"), ("2 1", "3")])
    def test_values(self, capsys, perm, want):
        assert main(["distance", perm]) == 0
        assert capsys.readouterr().out.strip() == want


class TestVerify:
    def test_round_trip_text(self):
        code, out, _ = run_cli(["sort", "-2 3 1"])
        assert code == 0
        code, _, _ = run_cli(["verify", "-2 3 1", "-"], stdin=out)
        assert code == 0

    def test_round_trip_json(self):
        code, out, _ = run_cli(["sort", "2 1", "--format", "json"])
        assert code == 0
        code, _, _ = run_cli(["verify", "2 1", "-"], stdin=out)
        assert code == 0

    def test_round_trip_with_hurdles_text(self):
        code, out, _ = run_cli(["sort", "2 1"])
        assert code == 0
        code, _, _ = run_cli(["verify", "2 1", "-"], stdin=out)
        assert code == 0

    def test_tampered_scenario_fails(self):
        code, out, _ = run_cli(["sort", "-2 3 1"])
        lines = out.strip().splitlines()
        lines[0] = "1 3"  # different first reversal
        code, _, err = run_cli(["verify", "-2 3 1", "-"], stdin="\n".join(lines) + "\n")
        assert code == 1
        assert "failed" in err

    def test_too_long_scenario_fails_optimality(self):
        # valid sort that wastes two moves; the oracle flags it
        scenario = "1 1\n1 1\n2 3\n3 3\n1 2\n1 2 3\n"
        code, _, err = run_cli(["verify", "-2 3 1", "-"], stdin=scenario)
        assert code == 1
        assert "optimal" in err


class TestGenOracle:
    def test_gen_deterministic(self, capsys):
        assert main(["gen", "6", "--seed", "9", "--count", "3"]) == 0
        first = capsys.readouterr().out
        assert main(["gen", "6", "--seed", "9", "--count", "3"]) == 0
        assert capsys.readouterr().out == first
        assert len(first.strip().splitlines()) == 3

    def test_oracle_values(self, capsys):
        assert main(["oracle", "-1"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_oracle_guard(self, capsys):
        assert main(["oracle", "8 7 6 5 4 3 2 1"]) == 2


class TestBench:
    def test_smoke(self, capsys):
        assert main(["bench", "--sizes", "64,128", "--reps", "1"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert out[0].startswith("# revsort bench")
        assert "generator=" in out[0]
        assert out[1].split("\t") == ["n", "reps", "mean_seconds", "seconds_per_nlogn"]
        assert len(out) == 4
