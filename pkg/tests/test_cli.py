import json
import subprocess
import sys

import pytest

from persym import cli, formulas


def run_cli(argv, capsys):
    """Invoke the CLI in-process, folding SystemExit into a return code."""
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


class TestCensusCommand:
    def test_gamma_json(self, capsys):
        code, out, _ = run_cli(["census", "gamma", "--s", "2", "--k", "3"], capsys)
        assert code == 0
        assert out == '{"0":1,"1":3,"2":12}\n'

    def test_stacked_json(self, capsys):
        code, out, _ = run_cli(
            ["census", "stacked", "--n", "1", "--m", "2", "--k", "3"], capsys
        )
        assert code == 0
        assert out == '{"0":1,"1":13,"2":66,"3":176}\n'

    def test_quad_includes_zero_rank_profile(self, capsys):
        code, out, _ = run_cli(["census", "quad", "--s", "2", "--k", "2"], capsys)
        assert code == 0
        assert '"0,0,0,0":1' in out

    def test_sigma_keys(self, capsys):
        code, out, _ = run_cli(["census", "sigma", "--m", "0", "--k", "1"], capsys)
        assert code == 0
        assert json.loads(out) == {"same,0": 1, "same,1": 2, "up,1": 1}

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            ["census", "gamma", "--s", "2", "--k", "2", "--format", "csv"], capsys
        )
        assert code == 0
        assert out == "key,count\n0,1\n1,3\n2,4\n"

    def test_output_independent_of_threads(self, capsys):
        _, single, _ = run_cli(
            ["census", "gamma", "--s", "3", "--k", "4", "--threads", "1"], capsys
        )
        _, pooled, _ = run_cli(
            ["census", "gamma", "--s", "3", "--k", "4", "--threads", "3"], capsys
        )
        assert single == pooled

    def test_checkpoint_file_written_and_reused(self, tmp_path, capsys):
        path = str(tmp_path / "stacked.ckpt")
        args = ["census", "stacked", "--n", "2", "--m", "1", "--k", "2",
                "--checkpoint", path]
        code, first, _ = run_cli(args, capsys)
        assert code == 0
        ckpt = tmp_path / "stacked.ckpt.stacked"
        assert ckpt.exists()
        code, second, _ = run_cli(args, capsys)
        assert code == 0 and second == first

    def test_missing_flag_is_usage_error(self, capsys):
        code, _, err = run_cli(["census", "gamma", "--k", "3"], capsys)
        assert code == 2
        assert "--s" in err

    def test_budget_exit(self, capsys):
        code, _, err = run_cli(
            ["census", "gamma", "--s", "9", "--k", "9", "--budget-bits", "10"], capsys
        )
        assert code == 2
        assert "budget" in err


class TestVerifyCommand:
    def test_every_suite_passes_with_defaults(self, capsys):
        for theorem in sorted(cli._VERIFIERS):
            code, out, _ = run_cli(["verify", theorem], capsys)
            assert code == 0, theorem
            report = json.loads(out)
            assert list(report) == ["params", "computed", "expected", "match",
                                    "runtime_ms"]
            assert report["match"] is True
            assert report["params"]["theorem"] == theorem
            assert isinstance(report["runtime_ms"], int)

    def test_window_census_with_params(self, capsys):
        code, out, _ = run_cli(["verify", "thm3.1", "--s", "3", "--k", "4"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["computed"] == {"0": 1, "1": 3, "2": 12, "3": 48}

    def test_stacked_example(self, capsys):
        code, out, _ = run_cli(
            ["verify", "thm3.9", "--n", "1", "--m", "2", "--k", "3"], capsys
        )
        assert code == 0
        assert json.loads(out)["computed"] == {"0": 1, "1": 13, "2": 66, "3": 176}

    def test_partition_suite_at_larger_shape(self, capsys):
        code, out, _ = run_cli(["verify", "lemmas5.x", "--s", "3", "--k", "4"], capsys)
        assert code == 0
        assert json.loads(out)["match"] is True

    def test_mismatch_exits_one(self, capsys, monkeypatch):
        monkeypatch.setattr(formulas, "gamma_table", lambda s, k: {0: 999})
        code, out, _ = run_cli(["verify", "thm3.1"], capsys)
        assert code == 1
        assert json.loads(out)["match"] is False

    def test_uncovered_case_table_is_an_error(self, capsys):
        code, _, err = run_cli(["verify", "thm3.8", "--k", "1"], capsys)
        assert code == 2
        assert "no case table" in err

    def test_unknown_suite_rejected(self, capsys):
        code, _, _ = run_cli(["verify", "bogus"], capsys)
        assert code == 2


class TestExpsumCommand:
    def test_h_direct_and_closed(self, capsys):
        code, out, _ = run_cli(["expsum", "h", "--s", "2", "--k", "2", "--t", "100"],
                               capsys)
        assert code == 0
        assert out == "direct=8 closed=8 agree=true\n"

    def test_h_at_zero(self, capsys):
        code, out, _ = run_cli(["expsum", "h", "--s", "2", "--k", "2", "--t", "000"],
                               capsys)
        assert code == 0
        assert out == "direct=16 closed=16 agree=true\n"

    def test_g_negative_value(self, capsys):
        code, out, _ = run_cli(["expsum", "g", "--s", "2", "--k", "2", "--t", "001"],
                               capsys)
        assert code == 0
        assert out == "direct=-4 closed=-4 agree=true\n"

    def test_two_variable_kinds(self, capsys):
        code, out, _ = run_cli(
            ["expsum", "g2", "--m", "1", "--k", "2", "--t", "010", "--eta", "10"],
            capsys)
        assert code == 0 and "agree=true" in out
        code, out, _ = run_cli(
            ["expsum", "f2", "--m", "1", "--k", "2", "--t", "010", "--eta", "10"],
            capsys)
        assert code == 0 and "agree=true" in out

    def test_fmulti(self, capsys):
        code, out, _ = run_cli(
            ["expsum", "fmulti", "--m", "0", "--k", "2", "--t", "01",
             "--etas", "10,11"], capsys)
        assert code == 0 and "agree=true" in out

    def test_long_literal_is_truncated(self, capsys):
        code, out, _ = run_cli(["expsum", "h", "--s", "2", "--k", "2", "--t", "10011"],
                               capsys)
        assert code == 0
        assert out == "direct=8 closed=8 agree=true\n"

    def test_short_literal_is_an_error(self, capsys):
        code, _, err = run_cli(["expsum", "h", "--s", "2", "--k", "2", "--t", "10"],
                               capsys)
        assert code == 2
        assert "precision" in err

    def test_bad_literal_is_an_error(self, capsys):
        code, _, _ = run_cli(["expsum", "h", "--s", "2", "--k", "2", "--t", "10x"],
                             capsys)
        assert code == 2

    def test_disagreement_exits_one(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "h_closed", lambda s, k, t: 12345)
        code, out, _ = run_cli(["expsum", "h", "--s", "2", "--k", "2", "--t", "100"],
                               capsys)
        assert code == 1
        assert "agree=false" in out


class TestRepcountCommand:
    def test_brute_example(self, capsys):
        code, out, _ = run_cli(
            ["repcount", "--mode", "brute", "--q", "1", "--n", "1", "--k", "3",
             "--m", "2"], capsys)
        assert code == 0
        assert out == "23\n"

    def test_formula_examples(self, capsys):
        code, out, _ = run_cli(
            ["repcount", "--mode", "formula", "--q", "3", "--n", "5", "--k", "4",
             "--m", "2"], capsys)
        assert code == 0 and out == "24413824\n"
        code, out, _ = run_cli(
            ["repcount", "--mode", "formula", "--q", "2", "--n", "0", "--k", "2",
             "--m", "1"], capsys)
        assert code == 0 and out == "64\n"

    def test_integral_mode(self, capsys):
        code, out, _ = run_cli(
            ["repcount", "--mode", "integral", "--q", "1", "--n", "1", "--k", "3",
             "--m", "2"], capsys)
        assert code == 0 and out == "23\n"

    def test_check_mode_runs_affordable_modes(self, capsys):
        code, out, _ = run_cli(
            ["repcount", "--check", "--q", "2", "--n", "1", "--k", "2", "--m", "1"],
            capsys)
        assert code == 0
        assert out == "formula=148 brute=148 integral=148 agree=true\n"

    def test_check_mode_skips_over_budget_modes(self, capsys):
        code, out, _ = run_cli(
            ["repcount", "--check", "--q", "3", "--n", "5", "--k", "4", "--m", "2",
             "--budget-bits", "10"], capsys)
        assert code == 0
        assert out == "formula=24413824 agree=true\n"

    def test_mode_or_check_required(self, capsys):
        code, _, err = run_cli(
            ["repcount", "--q", "1", "--n", "0", "--k", "2", "--m", "1"], capsys)
        assert code == 2
        assert "--mode" in err


def test_console_script_matches_in_process_output():
    result = subprocess.run(
        [sys.executable, "-m", "persym.cli", "census", "gamma", "--s", "2",
         "--k", "3"],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert result.stdout == '{"0":1,"1":3,"2":12}\n'
