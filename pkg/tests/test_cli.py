"""Command-line interface: dispatch, report shape, exit codes, file round-trips."""

import json
from fractions import Fraction as F

import pytest

from selfish_assign import Instance, dumps_instance, gen_uniform_gap
from selfish_assign.cli import main


def write_instance(tmp_path, inst, name="instance.json"):
    path = tmp_path / name
    path.write_text(dumps_instance(inst), encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


class TestSolve:
    def test_auto_on_uneven_pair(self, tmp_path, capsys):
        path = write_instance(tmp_path, gen_uniform_gap(F(1, 10)))
        code, report, _ = run_cli(capsys, "solve", path)
        assert code == 0
        assert report["result"]["cost"]["exact"] == "8/5"
        assert report["result"]["algorithm"] == "find-opt"
        assert report["result"]["approximate"] is False
        assert report["result"]["counts"] == [1, 1]

    def test_single_task(self, tmp_path, capsys):
        inst = Instance(weights=(F(3),), delays=(F(2),))
        code, report, _ = run_cli(capsys, "solve", write_instance(tmp_path, inst))
        assert code == 0
        assert report["result"]["assignment"] == [1]
        assert report["result"]["cost"]["exact"] == "6/1"

    def test_solve_agrees_with_ratio_minimum(self, tmp_path, capsys):
        inst = Instance(weights=(F(1), F(1), F(3), F(3)), delays=(F(1), F(2)))
        path = write_instance(tmp_path, inst)
        _, solved, _ = run_cli(capsys, "solve", path, "--algorithm", "dp-weights")
        _, ratio, _ = run_cli(capsys, "ratio", path)
        assert solved["result"]["cost"]["exact"] == ratio["result"]["min_cost"]["exact"]

    def test_auto_uses_delay_dp_for_identical_delays(self, tmp_path, capsys):
        inst = Instance(weights=(F(4), F(1), F(1)), delays=(F(1), F(1)))
        code, report, _ = run_cli(capsys, "solve", write_instance(tmp_path, inst))
        assert code == 0
        assert report["result"]["algorithm"] == "dp-delays"
        assert report["result"]["cost"]["exact"] == "8/1"

    def test_approx_is_flagged(self, tmp_path, capsys):
        inst = Instance(weights=(F(3), F(2), F(1)), delays=(F(1), F(2)))
        path = write_instance(tmp_path, inst)
        code, report, _ = run_cli(capsys, "solve", path, "--algorithm", "approx", "--epsilon", "1/2")
        assert code == 0
        assert report["result"]["approximate"] is True
        assert report["result"]["epsilon"]["exact"] == "1/2"

    def test_approx_without_epsilon_fails_precondition(self, tmp_path, capsys):
        inst = Instance(weights=(F(3), F(2), F(1)), delays=(F(1), F(2)))
        path = write_instance(tmp_path, inst)
        code, report, err = run_cli(capsys, "solve", path, "--algorithm", "approx")
        assert code == 3
        assert report is None
        assert "epsilon" in err

    def test_find_opt_on_mixed_weights_fails_precondition(self, tmp_path, capsys):
        inst = Instance(weights=(F(1), F(2)), delays=(F(1),))
        path = write_instance(tmp_path, inst)
        code, _, _ = run_cli(capsys, "solve", path, "--algorithm", "find-opt")
        assert code == 3

    def test_unreadable_file_is_parse_error(self, tmp_path, capsys):
        path = tmp_path / "nope.json"
        path.write_text("{not json", encoding="utf-8")
        code, _, err = run_cli(capsys, "solve", str(path))
        assert code == 2
        assert err

    def test_missing_file_is_parse_error(self, capsys):
        code, _, _ = run_cli(capsys, "solve", "/does/not/exist.json")
        assert code == 2


class TestNash:
    def test_any_separates_heavy_pair(self, tmp_path, capsys):
        inst = Instance(weights=(F(100), F(100)) + (F(1),) * 8, delays=(F(1), F(1)))
        code, report, _ = run_cli(capsys, "nash", write_instance(tmp_path, inst))
        assert code == 0
        target = report["result"]["assignment"]
        assert target[0] != target[1]
        assert report["result"]["is_nash"] is True

    def test_everyone_alone_when_resources_abound(self, tmp_path, capsys):
        inst = Instance(weights=(F(2), F(2)), delays=(F(1), F(1)))
        code, report, _ = run_cli(capsys, "nash", write_instance(tmp_path, inst))
        assert code == 0
        assert sorted(report["result"]["assignment"]) == [1, 2]

    def test_best_matches_oracle_nash_minimum(self, tmp_path, capsys):
        inst = Instance(weights=(F(1),) * 5, delays=(F(1), F(1), F(3)))
        path = write_instance(tmp_path, inst)
        _, best, _ = run_cli(capsys, "nash", path, "--mode", "best")
        _, ratio, _ = run_cli(capsys, "ratio", path)
        assert best["result"]["cost"]["exact"] == ratio["result"]["min_nash_cost"]["exact"]

    def test_best_needs_identical_weights(self, tmp_path, capsys):
        inst = Instance(weights=(F(1), F(2)), delays=(F(1),))
        code, _, _ = run_cli(capsys, "nash", write_instance(tmp_path, inst), "--mode", "best")
        assert code == 3


class TestRatio:
    def test_four_thirds_gap(self, tmp_path, capsys):
        path = write_instance(tmp_path, gen_uniform_gap(F(0)))
        code, report, _ = run_cli(capsys, "ratio", path)
        assert code == 0
        assert report["result"]["nash_gap"]["exact"] == "4/3"
        bounds = {b["bound"]: b for b in report["result"]["bounds"]}
        assert bounds["nash-gap-identical-weights"]["slack"]["exact"] == "0/1"

    def test_heavy_pair_gap(self, tmp_path, capsys):
        inst = Instance(weights=(F(100), F(100)) + (F(1),) * 8, delays=(F(1), F(1)))
        code, report, _ = run_cli(capsys, "ratio", write_instance(tmp_path, inst))
        assert code == 0
        assert F(report["result"]["opt_gap"]["exact"]) >= 2

    def test_single_resource_ratios_are_one(self, tmp_path, capsys):
        inst = Instance(weights=(F(2), F(3)), delays=(F(5),))
        code, report, _ = run_cli(capsys, "ratio", write_instance(tmp_path, inst))
        assert code == 0
        result = report["result"]
        assert result["coordination_ratio"]["exact"] == "1/1"
        assert result["nash_gap"]["exact"] == "1/1"
        assert result["opt_gap"]["exact"] == "1/1"

    def test_budget_flag_exceeded(self, tmp_path, capsys):
        inst = Instance(weights=(F(1), F(2), F(3)), delays=(F(1), F(2)))
        path = write_instance(tmp_path, inst)
        code, report, err = run_cli(capsys, "ratio", path, "--budget", "7")
        assert code == 4
        assert report is None
        assert "8" in err  # message states the required state count

    def test_budget_env_override(self, tmp_path, capsys, monkeypatch):
        inst = Instance(weights=(F(1), F(2), F(3)), delays=(F(1), F(2)))
        path = write_instance(tmp_path, inst)
        monkeypatch.setenv("SELFISH_ASSIGN_BUDGET", "7")
        code, _, _ = run_cli(capsys, "ratio", path)
        assert code == 4
        monkeypatch.setenv("SELFISH_ASSIGN_BUDGET", "8")
        code, _, _ = run_cli(capsys, "ratio", path)
        assert code == 0


class TestGen:
    def test_big_nash_weights(self, tmp_path, capsys):
        out = tmp_path / "big.json"
        code, report, _ = run_cli(capsys, "gen", "big-nash", "--n", "3", "--out", str(out))
        assert code == 0
        assert report["result"]["written_to"] == str(out)
        doc = json.loads(out.read_text(encoding="utf-8"))
        assert doc["weights"] == [9, 9, 1]

    def test_gen_to_stdout_is_the_instance(self, capsys):
        code = main(["gen", "uniform-gap", "--epsilon", "1/10"])
        out = capsys.readouterr().out
        assert code == 0
        doc = json.loads(out)
        assert doc["delays"] == ["1/2", "11/10"]

    def test_random_is_byte_identical(self, tmp_path, capsys):
        args = ["gen", "random", "--n", "5", "--m", "2", "--weights", "1:4",
                "--delays", "1:2", "--seed", "1"]
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_gen_output_reserializes_byte_identically(self, tmp_path, capsys):
        out = tmp_path / "gap.json"
        assert main(["gen", "uniform-gap", "--epsilon", "0", "--out", str(out)]) == 0
        capsys.readouterr()
        from selfish_assign import loads_instance

        text = out.read_text(encoding="utf-8")
        inst, refs = loads_instance(text)
        assert dumps_instance(inst, refs or None) == text

    def test_nash_ratio_lb_ships_reference_assignments(self, tmp_path, capsys):
        out = tmp_path / "lb.json"
        code, _, _ = run_cli(capsys, "gen", "nash-ratio-lb", "--epsilon", "1/2", "--out", str(out))
        assert code == 0
        doc = json.loads(out.read_text(encoding="utf-8"))
        assert len(doc["weights"]) == 37  # block size 4
        assert set(doc["reference_assignments"]) == {"N1", "N2"}
        from selfish_assign import is_nash, loads_instance

        inst, refs = loads_instance(out.read_text(encoding="utf-8"))
        assert is_nash(inst, refs["N1"]) and is_nash(inst, refs["N2"])

    def test_invalid_parameters_fail_precondition(self, capsys):
        code, _, _ = run_cli(capsys, "gen", "big-nash", "--n", "2")
        assert code == 3
        code, _, _ = run_cli(capsys, "gen", "random", "--n", "2")
        assert code == 3

    def test_bad_range_is_parse_error(self, capsys):
        code, _, _ = run_cli(
            capsys, "gen", "random", "--n", "2", "--m", "2",
            "--weights", "1-4", "--delays", "1:2",
        )
        assert code == 2


class TestVerify:
    def test_non_nash_assignment_gets_a_witness_move(self, tmp_path, capsys):
        path = write_instance(tmp_path, gen_uniform_gap(F(1, 10)))
        assignment = tmp_path / "a.json"
        assignment.write_text("[1, 2]", encoding="utf-8")
        code, report, _ = run_cli(capsys, "verify", path, str(assignment))
        assert code == 0
        assert report["result"]["is_nash"] is False
        assert report["result"]["improving_moves"] == [
            {"task": 2, "to_resource": 1, "new_load": {"exact": "1/1", "approximate": 1.0}}
        ]

    def test_nash_assignment_verifies(self, tmp_path, capsys):
        path = write_instance(tmp_path, gen_uniform_gap(F(1, 10)))
        assignment = tmp_path / "a.json"
        assignment.write_text("[1, 1]", encoding="utf-8")
        code, report, _ = run_cli(capsys, "verify", path, str(assignment))
        assert code == 0
        assert report["result"]["is_nash"] is True
        assert report["result"]["cost"]["exact"] == "2/1"
        assert report["result"]["resource_loads"][0]["exact"] == "1/1"

    def test_single_resource_is_always_nash(self, tmp_path, capsys):
        inst = Instance(weights=(F(2), F(1)), delays=(F(3),))
        path = write_instance(tmp_path, inst)
        assignment = tmp_path / "a.json"
        assignment.write_text("[1, 1]", encoding="utf-8")
        code, report, _ = run_cli(capsys, "verify", path, str(assignment))
        assert code == 0
        assert report["result"]["is_nash"] is True

    def test_length_mismatch_fails_precondition(self, tmp_path, capsys):
        path = write_instance(tmp_path, gen_uniform_gap(F(1, 10)))
        assignment = tmp_path / "a.json"
        assignment.write_text("[1]", encoding="utf-8")
        code, _, _ = run_cli(capsys, "verify", path, str(assignment))
        assert code == 3


class TestReportShape:
    def test_digest_and_timing(self, tmp_path, capsys):
        inst = Instance(weights=(F(1), F(3)), delays=(F(1), F(2)))
        code, report, err = run_cli(capsys, "ratio", write_instance(tmp_path, inst))
        assert code == 0
        assert err == ""
        assert report["command"] == "ratio"
        digest = report["instance"]
        assert digest["tasks"] == 2 and digest["resources"] == 2
        assert digest["total_weight"]["exact"] == "4/1"
        assert digest["throughput"]["exact"] == "3/2"
        assert isinstance(report["elapsed_ms"], float)

    def test_stdout_is_single_json_document(self, tmp_path, capsys):
        path = write_instance(tmp_path, gen_uniform_gap(F(1, 10)))
        main(["solve", path])
        out = capsys.readouterr().out
        json.loads(out)  # would raise if stdout carried anything else
