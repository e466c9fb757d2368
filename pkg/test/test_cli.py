# -*- coding: utf-8 -*-
"""
命令行测试：子命令、退出码与产物
"""

import json

import pandas as pd
import pytest

from main import EXIT_INVALID, EXIT_OK, EXIT_UNSERVED, main
from presentation.cli import collect_violations, parse_arguments
from conftest import short_run_config, write_config

RUN_FILES = ["cdf.csv", "costs.csv", "dispatch.csv", "summary.json", "telemetry.csv"]


class TestArgs:
    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            parse_arguments([])

    def test_options(self):
        args = parse_arguments(["run", "--seed", "7", "--mode", "plain", "--cold-start"])
        assert args.command == "run"
        assert args.seed == 7
        assert args.mode == "plain"
        assert args.cold_start

    def test_unknown_mode(self):
        with pytest.raises(SystemExit):
            parse_arguments(["run", "--mode", "slow"])


class TestRun:
    def test_writes_artifacts(self, config_dir):
        path = write_config(config_dir, short_run_config())
        out = config_dir / "out"
        assert main(["run", "--config", str(path), "--output", str(out)]) == EXIT_OK
        assert sorted(p.name for p in out.iterdir()) == RUN_FILES

        telemetry = pd.read_csv(out / "telemetry.csv")
        assert len(telemetry) == 12
        assert telemetry["hour"].tolist()[:3] == [6, 7, 8]
        summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
        assert summary["summary"]["slots"] == 12
        assert summary["acceptance"]["fast_speedup"]["passed"] is None
        assert (config_dir / "logs" / "park_scheduler.log").is_file()

    def test_byte_identical_reruns(self, config_dir):
        path = write_config(config_dir, short_run_config())
        first, second = config_dir / "a", config_dir / "b"
        assert main(["run", "--config", str(path), "--output", str(first)]) == EXIT_OK
        assert main(["run", "--config", str(path), "--output", str(second)]) == EXIT_OK
        for name in RUN_FILES:
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_seed_override_changes_traces(self, config_dir):
        path = write_config(config_dir, short_run_config())
        first, second = config_dir / "a", config_dir / "b"
        assert main(["run", "--config", str(path), "--output", str(first)]) == EXIT_OK
        assert main(["run", "--config", str(path), "--output", str(second), "--seed", "9"]) == EXIT_OK
        assert (first / "telemetry.csv").read_bytes() != (second / "telemetry.csv").read_bytes()

    def test_invalid_efficiency(self, config_dir):
        data = short_run_config(park={"megps": [{"eta_bg": 1.2}, {}]})
        path = write_config(config_dir, data)
        out = config_dir / "out"
        assert main(["run", "--config", str(path), "--output", str(out)]) == EXIT_INVALID
        assert not out.exists()

    def test_unknown_key(self, config_dir):
        path = write_config(config_dir, short_run_config(extra=1))
        assert main(["run", "--config", str(path)]) == EXIT_INVALID

    def test_missing_config(self, config_dir):
        assert main(["run", "--config", str(config_dir / "absent.json")]) == EXIT_INVALID

    def test_unserved_energy_exit_code(self, config_dir):
        # 夜间无光伏，且不能购电购气：电池放完仍有缺供
        data = short_run_config(
            park={"e_max": 0, "g_max": 0, "e_o_max": 0},
            traces={"source": "synthetic", "seed": 42, "T": 4, "start_hour": 0},
        )
        path = write_config(config_dir, data)
        out = config_dir / "out"
        assert main(["run", "--config", str(path), "--output", str(out)]) == EXIT_UNSERVED
        assert sorted(p.name for p in out.iterdir()) == RUN_FILES

        summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
        assert summary["summary"]["infeasible_slots"] > 0
        assert summary["summary"]["max_residual"] > 0
        assert summary["acceptance"]["feasibility"]["passed"] is False
        telemetry = pd.read_csv(out / "telemetry.csv")
        assert telemetry["unserved_E"].sum() > 0


class TestCompare:
    def test_writes_comparison(self, config_dir):
        data = short_run_config(traces={"source": "synthetic", "seed": 42, "T": 4, "start_hour": 10})
        path = write_config(config_dir, data)
        out = config_dir / "out"
        assert main(["compare", "--config", str(path), "--output", str(out)]) == EXIT_OK
        assert sorted(p.name for p in out.iterdir()) == sorted(RUN_FILES + ["comparison.json", "convergence.csv"])

        report = json.loads((out / "comparison.json").read_text(encoding="utf-8"))
        assert set(report["totals_kyuan"]) == {"proposed", "plain", "case1", "case2"}
        assert report["convergence_slot"] == 1
        convergence = pd.read_csv(out / "convergence.csv")
        assert set(convergence["mode"]) == {"plain", "fast"}
        costs = pd.read_csv(out / "costs.csv")
        assert len(costs) == 4
        assert "case1_kyuan" in costs.columns

    def test_unserved_energy_exit_code(self, config_dir):
        data = short_run_config(
            park={"e_max": 0, "g_max": 0, "e_o_max": 0},
            traces={"source": "synthetic", "seed": 42, "T": 2, "start_hour": 0},
        )
        path = write_config(config_dir, data)
        out = config_dir / "out"
        assert main(["compare", "--config", str(path), "--output", str(out)]) == EXIT_UNSERVED
        assert (out / "comparison.json").is_file()


class TestValidate:
    def test_valid_config(self, config_dir):
        path = write_config(config_dir, short_run_config())
        assert collect_violations(path) == []
        assert main(["validate", "--config", str(path)]) == EXIT_OK

    def test_missing_trace_file(self, config_dir):
        data = short_run_config(traces={"source": "csv", "path": "missing.csv"})
        path = write_config(config_dir, data)
        violations = collect_violations(path)
        assert len(violations) == 1
        assert "missing.csv" in violations[0]
        assert main(["validate", "--config", str(path)]) == EXIT_INVALID

    def test_trace_dimension_mismatch(self, config_dir):
        frame = pd.DataFrame(
            {"t": [1, 2], "p_e": [0.5, 0.6], "p_o": [0.2, 0.3], "p_g": [0.4, 0.4], "R_1": [0.0, 0.1], "X_1": [1.0, 1.0]}
        )
        frame.to_csv(config_dir / "short.csv", index=False)
        path = write_config(config_dir, short_run_config())
        violations = collect_violations(path, trace=str(config_dir / "short.csv"))
        assert violations
        assert main(["validate", "--config", str(path), "--trace", str(config_dir / "short.csv")]) == EXIT_INVALID

    def test_config_errors_listed(self, config_dir):
        path = write_config(config_dir, short_run_config(inner={"mode": "slow", "step": 1}))
        assert len(collect_violations(path)) == 2
        assert main(["validate", "--config", str(path)]) == EXIT_INVALID
