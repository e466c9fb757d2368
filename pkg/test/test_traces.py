# -*- coding: utf-8 -*-
"""
时序数据源测试：CSV 读取与校验、合成时序
"""

import numpy as np
import pandas as pd
import pytest

from common.exceptions import TraceError, TraceParseError, ValidationError
from infrastructure.traces import (
    CsvTraceSource,
    SynthProfile,
    SyntheticTraceSource,
    TraceSchema,
    load_traces,
    synth_traces,
)

SCHEMA = TraceSchema(n_megp=2, n_user=3)


def _frame(T=24):
    hours = np.arange(T)
    p_e = np.where((hours >= 8) & (hours < 23), 0.85, 0.35)
    return pd.DataFrame(
        {
            "t": np.arange(1, T + 1),
            "p_e": p_e,
            "p_o": 0.5 * p_e,
            "p_g": np.full(T, 0.4),
            "R_1": np.linspace(0.0, 1.0, T),
            "R_2": np.zeros(T),
            "X_1": np.full(T, 1.2),
            "X_2": np.full(T, 1.0),
            "X_3": np.full(T, 0.8),
        }
    )


def _write(tmp_path, frame, name="traces.csv"):
    path = tmp_path / name
    frame.to_csv(path, index=False)
    return path


class TestCsv:
    def test_well_formed(self, tmp_path):
        traces = load_traces(_write(tmp_path, _frame()), SCHEMA)
        assert traces.length == 24
        assert traces.renewables.shape == (24, 2)
        assert traces.il_loads.shape == (24, 3)
        assert traces.el_alpha is None
        assert traces.p_e[10] == pytest.approx(0.85)

    def test_rows_sorted_by_t(self, tmp_path):
        frame = _frame().iloc[::-1]
        traces = load_traces(_write(tmp_path, frame), SCHEMA)
        assert traces.p_e[0] == pytest.approx(0.35)
        assert traces.renewables[-1, 0] == pytest.approx(1.0)

    def test_start_hour(self, tmp_path):
        traces = load_traces(_write(tmp_path, _frame()), SCHEMA, start_hour=6)
        assert traces.hour_of(0) == 6
        assert traces.hour_of(20) == 2

    def test_sell_price_above_buy_price(self, tmp_path):
        frame = _frame()
        frame.loc[4, "p_o"] = 2.0
        with pytest.raises(TraceError) as exc:
            load_traces(_write(tmp_path, frame), SCHEMA)
        assert any("t=5" in v for v in exc.value.violations)

    def test_negative_load(self, tmp_path):
        frame = _frame()
        frame.loc[2, "X_2"] = -1.0
        with pytest.raises(TraceError) as exc:
            load_traces(_write(tmp_path, frame), SCHEMA)
        assert any("X" in v and "t=3" in v for v in exc.value.violations)

    def test_missing_column(self, tmp_path):
        frame = _frame().drop(columns=["R_2"])
        with pytest.raises(TraceError) as exc:
            load_traces(_write(tmp_path, frame), SCHEMA)
        assert exc.value.violations == ["缺少列 R_2"]

    def test_unparseable_cell(self, tmp_path):
        frame = _frame().astype({"p_e": object})
        frame.loc[2, "p_e"] = "abc"
        with pytest.raises(TraceParseError) as exc:
            load_traces(_write(tmp_path, frame), SCHEMA)
        assert exc.value.row == 4
        assert exc.value.column == "p_e"

    def test_empty_cell_reported(self, tmp_path):
        frame = _frame().astype({"p_g": object})
        frame.loc[7, "p_g"] = ""
        with pytest.raises(TraceError) as exc:
            load_traces(_write(tmp_path, frame), SCHEMA)
        assert any("p_g" in v for v in exc.value.violations)

    def test_gap_in_t(self, tmp_path):
        frame = _frame()
        frame.loc[5, "t"] = 100
        with pytest.raises(TraceError):
            load_traces(_write(tmp_path, frame), SCHEMA)

    def test_missing_file(self, tmp_path):
        with pytest.raises(TraceError):
            load_traces(tmp_path / "absent.csv", SCHEMA)

    def test_alpha_columns(self, tmp_path):
        frame = _frame()
        frame["A_1"] = 1.0
        frame["A_2"] = 0.9
        source = CsvTraceSource(_write(tmp_path, frame), TraceSchema(2, 3, n_elastic=2))
        traces = source.load()
        assert traces.el_alpha.shape == (24, 2)
        assert traces.slot(3).alpha_for(1, 5.0) == pytest.approx(0.9)

    def test_partial_alpha_columns(self, tmp_path):
        frame = _frame()
        frame["A_1"] = 1.0
        with pytest.raises(TraceError):
            load_traces(_write(tmp_path, frame), TraceSchema(2, 3, n_elastic=2))


class TestSynthetic:
    def test_deterministic(self):
        first = synth_traces(42, 48)
        second = synth_traces(42, 48)
        assert np.array_equal(first.p_e, second.p_e)
        assert np.array_equal(first.renewables, second.renewables)
        assert np.array_equal(first.il_loads, second.il_loads)

    def test_seed_changes_noise(self):
        assert not np.array_equal(synth_traces(1, 48).p_e, synth_traces(2, 48).p_e)

    def test_shapes_and_validity(self):
        traces = synth_traces(42, 72)
        assert traces.length == 72
        assert traces.renewables.shape == (72, 2)
        assert traces.il_loads.shape == (72, 3)
        assert traces.validate() == []
        assert np.all(traces.p_o <= traces.p_e)

    def test_solar_only_in_daylight(self):
        traces = synth_traces(42, 96)
        night = (traces.hours() < 6) | (traces.hours() > 18)
        assert np.all(traces.renewables[night] == 0.0)
        assert traces.renewables[traces.hours() == 12].min() > 0.0

    def test_peak_prices_higher(self):
        traces = synth_traces(42, 240)
        hours = traces.hours()
        peak = (hours >= 8) & (hours < 23)
        assert traces.p_e[peak].mean() > traces.p_e[~peak].mean() + 0.3

    def test_start_hour(self):
        traces = synth_traces(42, 10, SynthProfile(start_hour=20))
        assert traces.hours().tolist()[:5] == [20, 21, 22, 23, 0]

    def test_time_varying_alpha(self):
        traces = synth_traces(42, 24, SynthProfile(alpha_base=[1.0, 1.0]))
        assert traces.el_alpha.shape == (24, 2)
        assert np.all(traces.el_alpha >= 0.0)

    def test_invalid_length(self):
        with pytest.raises(ValidationError):
            synth_traces(42, 0)

    def test_invalid_profile(self):
        with pytest.raises(ValidationError) as exc:
            synth_traces(42, 24, SynthProfile(sell_ratio=1.5, dawn=20, dusk=6))
        assert len(exc.value.violations) == 2

    def test_source(self):
        traces = SyntheticTraceSource(42, 24).load()
        assert traces.length == 24
        assert np.allclose(traces.p_e, synth_traces(42, 24).p_e)
