# -*- coding: utf-8 -*-
"""
仿真指标计算

计算总成本、分时成本、迭代次数经验分布、长期充放平衡、削峰填谷响应等指标
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from common.enums import Carrier, InnerMode, PolicyCase, StartMode
from common.exceptions import ValidationError
from core.domain import MegpState, ParkParams
from core.services.coordinator import ScheduleResult, SlotRecord

HOURS_PER_DAY = 24
YUAN_PER_KYUAN = 1000.0

# 验收阈值
IMBALANCE_LIMIT = 0.05  # |平均充电 − 平均放电| / 速率上限
CLIP_LIMIT = 0.02  # 截断能量 / 充放电总量
SPEEDUP_LIMIT = 0.6  # 快速方案中位迭代次数 / 普通方案
RESIDUAL_LIMIT = 1e-9

Cdf = List[Tuple[int, float]]


@dataclass
class RunTelemetry:
    """一次运行（某个对比情形、某种内层方案）的逐时段遥测"""

    case: PolicyCase
    mode: InnerMode
    start: StartMode
    records: List[SlotRecord]
    final_states: List[MegpState]
    lambda_e: np.ndarray
    lambda_h: np.ndarray

    @classmethod
    def from_schedule(
        cls, case: PolicyCase, mode: InnerMode, start: StartMode, result: ScheduleResult
    ) -> "RunTelemetry":
        return cls(
            case=case,
            mode=mode,
            start=start,
            records=result.records,
            final_states=result.final_states,
            lambda_e=result.lambda_e,
            lambda_h=result.lambda_h,
        )

    @property
    def length(self) -> int:
        return len(self.records)

    @property
    def n_megp(self) -> int:
        return len(self.records[0].b) if self.records else 0

    @property
    def costs(self) -> np.ndarray:
        return np.array([r.cost for r in self.records])

    @property
    def iterations(self) -> np.ndarray:
        return np.array([r.iterations for r in self.records], dtype=int)

    @property
    def total_cost(self) -> float:
        return float(self.costs.sum())

    @property
    def label(self) -> str:
        return f"{self.case.value}_{self.mode.value}"

    def storage_series(self, attr: str) -> np.ndarray:
        """某个储能决策量的序列，形状 (T, K)"""
        return np.array([[getattr(m, attr) for m in r.decision.megps] for r in self.records])

    def telemetry_frame(self) -> pd.DataFrame:
        """逐时段遥测表（t 从 1 开始）"""
        rows = []
        for r in self.records:
            row: Dict[str, Any] = {
                "t": r.t + 1,
                "hour": r.hour,
                "p_e": r.p_e,
                "p_g": r.p_g,
                "p_o": r.p_o,
                "cost_kyuan": r.cost,
                "cost_yuan": r.cost * YUAN_PER_KYUAN,
                "iterations": r.iterations,
                "converged": int(r.converged),
                "gradient_norm": r.gradient_norm,
            }
            for k in range(len(r.b)):
                n = k + 1
                row[f"lambda_e_{n}"] = r.lambda_e[k]
                row[f"lambda_h_{n}"] = r.lambda_h[k]
                for c in Carrier.ordered():
                    row[f"tau_{c.short}_{n}"] = r.tau[k, c.index]
                row[f"B_{n}"] = r.b[k]
                row[f"W_{n}"] = r.w[k]
            totals = r.decision.elastic_totals()
            row["curtailment"] = r.decision.total_curtailment()
            for c in Carrier.ordered():
                row[f"elastic_{c.short}"] = totals[c.index]
            row["clipped_e"] = r.clipped_e
            row["clipped_h"] = r.clipped_h
            row["adjustments"] = r.adjustments
            row["shed_elastic"] = r.shed_elastic
            row["shed_curtail"] = r.shed_curtail
            for c in Carrier.ordered():
                row[f"unserved_{c.short}"] = r.unserved[c.index]
            row["infeasible"] = int(r.infeasible)
            row["residual"] = r.residual
            rows.append(row)
        return pd.DataFrame(rows)

    def dispatch_frame(self) -> pd.DataFrame:
        """逐时段、逐 MEGP 的调度量"""
        rows = []
        for r in self.records:
            for k, md in enumerate(r.decision.megps):
                row = {"t": r.t + 1, "hour": r.hour, "megp": k + 1, "p_e": r.p_e}
                row.update(md.to_dict())
                row["g_load"] = md.g_load
                row["B"] = r.b[k]
                row["W"] = r.w[k]
                rows.append(row)
        return pd.DataFrame(rows)


class MetricsCalculator:
    """
    仿真指标计算器

    全部为静态方法，输入为 RunTelemetry
    """

    @staticmethod
    def hourly_cost(tel: RunTelemetry) -> np.ndarray:
        """按钟点汇总的平均时段成本，形状 (24,)，无数据的钟点为 NaN"""
        sums = np.zeros(HOURS_PER_DAY)
        counts = np.zeros(HOURS_PER_DAY)
        for r in tel.records:
            sums[r.hour] += r.cost
            counts[r.hour] += 1
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)

    @staticmethod
    def iteration_cdf(telemetries: Union[RunTelemetry, Sequence[RunTelemetry]]) -> Cdf:
        """
        迭代次数的经验分布函数

        Args:
            telemetries: 一个或多个运行的遥测，全部时段合并统计

        Returns:
            [(迭代次数, 累计比例)]，按迭代次数升序，右连续

        Raises:
            ValidationError: 没有任何时段
        """
        if isinstance(telemetries, RunTelemetry):
            telemetries = [telemetries]
        counts = np.concatenate([t.iterations for t in telemetries]) if telemetries else np.array([], dtype=int)
        if counts.size == 0:
            raise ValidationError("遥测为空，无法计算迭代次数分布")
        values, freq = np.unique(counts, return_counts=True)
        cumulative = np.cumsum(freq) / counts.size
        return [(int(v), float(c)) for v, c in zip(values, cumulative)]

    @staticmethod
    def cdf_at(cdf: Cdf, x: float) -> float:
        """F(x)"""
        value = 0.0
        for n, frac in cdf:
            if n > x:
                break
            value = frac
        return value

    @staticmethod
    def cdf_dominates(left: Cdf, right: Cdf) -> bool:
        """left 的分布是否处处不在 right 右侧，即 F_left(x) ≥ F_right(x)"""
        support = sorted({n for n, _ in left} | {n for n, _ in right})
        return all(
            MetricsCalculator.cdf_at(left, x) >= MetricsCalculator.cdf_at(right, x) - 1e-12 for x in support
        )

    @staticmethod
    def iteration_stats(tel: RunTelemetry) -> Dict[str, float]:
        it = tel.iterations
        if it.size == 0:
            return {"median": 0.0, "mean": 0.0, "p90": 0.0, "max": 0.0, "convergence_rate": 0.0}
        return {
            "median": float(np.median(it)),
            "mean": float(np.mean(it)),
            "p90": float(np.percentile(it, 90)),
            "max": float(np.max(it)),
            "convergence_rate": float(np.mean([r.converged for r in tel.records])),
        }

    @staticmethod
    def storage_imbalance(tel: RunTelemetry, park: ParkParams) -> Dict[str, List[float]]:
        """
        长期充放平衡

        |mean C − mean D| / 速率上限，按 MEGP 给出
        """
        if not tel.records:
            return {"battery": [], "tank": []}
        c_e = tel.storage_series("c_ke").mean(axis=0)
        d_e = tel.storage_series("d_ke").mean(axis=0)
        c_h = tel.storage_series("c_kh").mean(axis=0)
        d_h = tel.storage_series("d_kh").mean(axis=0)
        battery = [float(abs(c_e[k] - d_e[k]) / max(m.c_ke_max, 1e-12)) for k, m in enumerate(park.megps)]
        tank = [float(abs(c_h[k] - d_h[k]) / max(m.c_kh_max, 1e-12)) for k, m in enumerate(park.megps)]
        return {"battery": battery, "tank": tank}

    @staticmethod
    def clip_ratio(tel: RunTelemetry) -> float:
        """截断能量占执行充放电总量的比例"""
        clipped = sum(r.clipped_e + r.clipped_h for r in tel.records)
        throughput = sum(r.throughput for r in tel.records)
        if throughput <= 0:
            return 0.0 if clipped <= 0 else float("inf")
        return float(clipped / throughput)

    @staticmethod
    def price_quartiles(tel: RunTelemetry) -> Dict[str, float]:
        """
        电价最高、最低四分位时段的平均充放电（全部 MEGP 电池合计）
        """
        if not tel.records:
            return {}
        prices = np.array([r.p_e for r in tel.records])
        charge = tel.storage_series("c_ke").sum(axis=1)
        discharge = tel.storage_series("d_ke").sum(axis=1)
        low_cut, high_cut = np.percentile(prices, [25, 75])
        top = prices >= high_cut
        bottom = prices <= low_cut
        return {
            "top_discharge": float(discharge[top].mean()),
            "bottom_discharge": float(discharge[bottom].mean()),
            "top_charge": float(charge[top].mean()),
            "bottom_charge": float(charge[bottom].mean()),
        }

    @staticmethod
    def energy_totals(tel: RunTelemetry) -> Dict[str, float]:
        """整个区间的能量合计（MWh）"""
        totals = {
            "e_import": 0.0,
            "e_export": 0.0,
            "g_import": 0.0,
            "g_chp": 0.0,
            "g_boiler": 0.0,
            "renewable_available": 0.0,
            "renewable_spilled": 0.0,
            "curtailment": 0.0,
            "unserved": 0.0,
        }
        for r in tel.records:
            for md in r.decision.megps:
                totals["e_import"] += md.e_import
                totals["e_export"] += md.e_export
                totals["g_import"] += md.g_import
                totals["g_chp"] += md.g_chp
                totals["g_boiler"] += md.g_b
                totals["renewable_spilled"] += md.r_spill
            totals["renewable_available"] += r.renewable
            totals["curtailment"] += r.decision.total_curtailment()
            totals["unserved"] += float(np.sum(r.unserved))
        totals["renewable_used"] = totals["renewable_available"] - totals["renewable_spilled"]
        return totals

    @staticmethod
    def summary(tel: RunTelemetry, park: ParkParams) -> Dict[str, Any]:
        """单次运行的汇总"""
        hourly = MetricsCalculator.hourly_cost(tel)
        return {
            "case": tel.case.value,
            "mode": tel.mode.value,
            "start": tel.start.value,
            "slots": tel.length,
            "total_cost_kyuan": tel.total_cost,
            "total_cost_yuan": tel.total_cost * YUAN_PER_KYUAN,
            "social_welfare_kyuan": -tel.total_cost,
            "hourly_cost_kyuan": [None if np.isnan(v) else float(v) for v in hourly],
            "iterations": MetricsCalculator.iteration_stats(tel),
            "storage_imbalance": MetricsCalculator.storage_imbalance(tel, park),
            "clip_ratio": MetricsCalculator.clip_ratio(tel),
            "price_quartiles": MetricsCalculator.price_quartiles(tel),
            "energy_totals": MetricsCalculator.energy_totals(tel),
            "infeasible_slots": int(sum(r.infeasible for r in tel.records)),
            "max_residual": float(max((r.residual for r in tel.records), default=0.0)),
        }


def _check(passed: Optional[bool], **measured) -> Dict[str, Any]:
    return {"passed": passed, **measured}


def acceptance_checks(results: Mapping[str, RunTelemetry], park: ParkParams) -> Dict[str, Dict[str, Any]]:
    """
    用遥测评估可度量的验收项

    Args:
        results: 键为 "proposed"（快速方案）、可选 "plain"、"case1"、"case2"
        park: 园区参数

    Returns:
        {检查名: {"passed": bool 或 None（缺少对比数据）, 实测值...}}，从不抛出异常
    """
    checks: Dict[str, Dict[str, Any]] = {}
    proposed = results.get("proposed")
    if proposed is None or not proposed.records:
        return checks

    plain = results.get("plain")
    if plain is not None and plain.records:
        fast_median = float(np.median(proposed.iterations))
        plain_median = float(np.median(plain.iterations))
        ratio = fast_median / plain_median if plain_median > 0 else float("inf")
        dominates = MetricsCalculator.cdf_dominates(
            MetricsCalculator.iteration_cdf(proposed), MetricsCalculator.iteration_cdf(plain)
        )
        checks["fast_speedup"] = _check(
            bool(ratio <= SPEEDUP_LIMIT and dominates), median_ratio=ratio, cdf_dominates=dominates
        )
    else:
        checks["fast_speedup"] = _check(None)

    totals = {name: tel.total_cost for name, tel in results.items() if tel is not None}
    case1, case2 = results.get("case1"), results.get("case2")
    if case1 is not None and case2 is not None:
        hourly_p = MetricsCalculator.hourly_cost(proposed)
        hourly_1 = MetricsCalculator.hourly_cost(case1)
        valid = ~(np.isnan(hourly_p) | np.isnan(hourly_1))
        hours_ok = int(np.sum(hourly_p[valid] <= hourly_1[valid] + 1e-12))
        ordered = proposed.total_cost < case1.total_cost and proposed.total_cost < case2.total_cost
        checks["cost_ordering"] = _check(
            bool(ordered and hours_ok == int(valid.sum())), totals=totals, hours_not_above_case1=hours_ok
        )
    else:
        checks["cost_ordering"] = _check(None, totals=totals)

    imbalance = MetricsCalculator.storage_imbalance(proposed, park)
    worst = max(imbalance["battery"] + imbalance["tank"], default=0.0)
    checks["long_run_balance"] = _check(bool(worst <= IMBALANCE_LIMIT), worst=worst)

    clip = MetricsCalculator.clip_ratio(proposed)
    residual = float(max((r.residual for r in proposed.records), default=0.0))
    bounds_ok = all(
        m.b_min - 1e-9 <= r.b[k] <= m.b_max + 1e-9 and m.w_min - 1e-9 <= r.w[k] <= m.w_max + 1e-9
        for r in proposed.records
        for k, m in enumerate(park.megps)
    )
    checks["feasibility"] = _check(
        bool(bounds_ok and residual <= RESIDUAL_LIMIT and clip < CLIP_LIMIT),
        storage_bounds=bounds_ok,
        max_residual=residual,
        clip_ratio=clip,
        infeasible_slots=int(sum(r.infeasible for r in proposed.records)),
    )

    q = MetricsCalculator.price_quartiles(proposed)
    checks["price_response"] = _check(
        bool(q["top_discharge"] > q["bottom_discharge"] and q["bottom_charge"] > q["top_charge"]), **q
    )
    return checks


def iteration_cdf(telemetries: Union[RunTelemetry, Sequence[RunTelemetry]]) -> Cdf:
    """迭代次数经验分布，见 MetricsCalculator.iteration_cdf"""
    return MetricsCalculator.iteration_cdf(telemetries)
