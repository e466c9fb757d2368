# -*- coding: utf-8 -*-
"""
仿真引擎

整合对比情形、外层调度与指标计算，提供统一接口
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from common.enums import InnerMode, PolicyCase
from core.domain import ParkParams, SlotExogenous, TraceSet
from core.services.coordinator import (
    InnerLoopConfig,
    OuterLoopConfig,
    cold_start_tau,
    resolve_lambda_init,
    run_horizon,
    run_inner_loop,
)

from .cases import get_case_policy
from .metrics import MetricsCalculator, RunTelemetry, acceptance_checks

logger = logging.getLogger(__name__)


def run_case(
    case: PolicyCase,
    park: ParkParams,
    traces: TraceSet,
    inner: InnerLoopConfig,
    outer: OuterLoopConfig,
) -> RunTelemetry:
    """
    按对比情形改写输入后运行整个调度区间

    Args:
        case: 对比情形
        park: 园区参数
        traces: 外生时序（各情形共用同一份）
        inner: 内层参数
        outer: 外层参数

    Returns:
        RunTelemetry
    """
    policy = get_case_policy(case)
    effective = policy.apply(park, traces, inner)
    logger.info(
        f"运行 {policy.get_name()}：内层 {effective.inner.mode.display_name}，"
        f"{outer.start.value} 启动，{outer.horizon or effective.traces.length} 个时段"
    )
    result = run_horizon(effective.park, effective.traces, effective.inner, outer)
    return RunTelemetry.from_schedule(case, effective.inner.mode, outer.start, result)


def trace_convergence(
    park: ParkParams,
    exo: SlotExogenous,
    lambda_e: np.ndarray,
    lambda_h: np.ndarray,
    cfg: InnerLoopConfig,
) -> List[Tuple[int, str, float]]:
    """
    在同一个时段上分别用两种内层方案从冷启动运行，记录每次迭代的 τ 差值

    Returns:
        [(迭代序号（1 起）, 方案, τ 差值 max 范数)]
    """
    rows: List[Tuple[int, str, float]] = []
    tau0 = cold_start_tau(park, exo)
    for mode in (InnerMode.PLAIN, InnerMode.FAST):
        result = run_inner_loop(park, exo, lambda_e, lambda_h, replace(cfg, mode=mode), tau0)
        rows.extend((n, mode.value, diff) for n, diff in enumerate(result.history, start=1))
    return rows


@dataclass
class ComparisonResult:
    """
    对比运行结果

    runs: 键为 "proposed"（快速方案）、"plain"（所提方法 + 普通梯度）、"case1"、"case2"
    """

    runs: Dict[str, RunTelemetry]
    convergence: List[Tuple[int, str, float]] = field(default_factory=list)
    convergence_slot: int = 0

    def cost_table(self) -> Dict[str, float]:
        return {name: tel.total_cost for name, tel in self.runs.items()}

    def hourly_table(self) -> Dict[str, np.ndarray]:
        return {name: MetricsCalculator.hourly_cost(tel) for name, tel in self.runs.items()}


class SimulationEngine:
    """
    仿真引擎

    输入：园区参数、外生时序、内外层参数
    输出：各情形的遥测、汇总与对比
    """

    def __init__(
        self,
        park: ParkParams,
        traces: TraceSet,
        inner: Optional[InnerLoopConfig] = None,
        outer: Optional[OuterLoopConfig] = None,
    ):
        self.park = park
        self.traces = traces
        self.inner = inner or InnerLoopConfig()
        self.outer = outer or OuterLoopConfig()

    def run_case(self, case: PolicyCase = PolicyCase.PROPOSED, mode: Optional[InnerMode] = None) -> RunTelemetry:
        """
        运行单个情形

        Args:
            case: 对比情形
            mode: 覆盖内层方案（情形 1、2 仍强制普通梯度）
        """
        inner = self.inner if mode is None else replace(self.inner, mode=mode)
        return run_case(case, self.park, self.traces, inner, self.outer)

    def summarize(self, tel: RunTelemetry) -> Dict[str, Any]:
        return MetricsCalculator.summary(tel, self.park)

    def compare(self, convergence_slot: int = 0) -> ComparisonResult:
        """
        在同一份时序上运行所提方法（快速 / 普通梯度）与两个对比情形

        Args:
            convergence_slot: 记录单时段收敛过程的时段（0 起）
        """
        runs = {
            "proposed": self.run_case(PolicyCase.PROPOSED, InnerMode.FAST),
            "plain": self.run_case(PolicyCase.PROPOSED, InnerMode.PLAIN),
            "case1": self.run_case(PolicyCase.CASE1),
            "case2": self.run_case(PolicyCase.CASE2),
        }

        slot = min(max(convergence_slot, 0), self.traces.length - 1)
        lambda_e, lambda_h = resolve_lambda_init(self.park, self.traces, self.outer.lambda_init)
        convergence = trace_convergence(self.park, self.traces.slot(slot), lambda_e, lambda_h, self.inner)

        costs = {name: round(tel.total_cost, 4) for name, tel in runs.items()}
        logger.info(f"对比完成，总成本（千元）：{costs}")
        return ComparisonResult(runs=runs, convergence=convergence, convergence_slot=slot)

    def comparison_report(self, comparison: ComparisonResult) -> Dict[str, Any]:
        """comparison.json 的内容"""
        runs = comparison.runs
        hourly = comparison.hourly_table()
        proposed_hourly, case1_hourly = hourly["proposed"], hourly["case1"]
        valid = ~(np.isnan(proposed_hourly) | np.isnan(case1_hourly))
        plain_median = float(np.median(runs["plain"].iterations))
        fast_median = float(np.median(runs["proposed"].iterations))
        return {
            "totals_kyuan": comparison.cost_table(),
            "hourly_proposed_not_above_case1": [
                bool(p <= c + 1e-12) if ok else None for p, c, ok in zip(proposed_hourly, case1_hourly, valid)
            ],
            "median_iterations": {"fast": fast_median, "plain": plain_median},
            "median_ratio": fast_median / plain_median if plain_median > 0 else None,
            "fast_cdf_dominates": MetricsCalculator.cdf_dominates(
                MetricsCalculator.iteration_cdf(runs["proposed"]), MetricsCalculator.iteration_cdf(runs["plain"])
            ),
            "start": self.outer.start.value,
            "convergence_slot": comparison.convergence_slot + 1,
            "acceptance": acceptance_checks(runs, self.park),
        }
