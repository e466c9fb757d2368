# -*- coding: utf-8 -*-
"""
===================================
慢时间尺度外层循环
===================================

职责：
1. 逐时段运行内层循环，得到该时段的调度与 τ*
2. 用本时段充放电差更新 λ（长期充放平衡的乘子）
3. 子问题的充放速率按时段初储能水平收紧；执行器做储能投影与平衡结算，推进储能状态
4. 记录成本与遥测
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from common.enums import StartMode
from common.exceptions import ValidationError
from core.domain import MegpState, ParkParams, SlotDecision, TraceSet, slot_cost, supply_gap, with_storage_limits
from core.services.dispatch import DispatchExecutor

from .inner_loop import InnerLoopConfig, cold_start_tau, run_inner_loop

logger = logging.getLogger(__name__)

LambdaInit = Union[str, float, List[float], dict]


@dataclass
class OuterLoopConfig:
    """
    外层循环参数

    rho: λ 步长
    horizon: 时段数，缺省为时序长度
    lambda_init: "auto"、标量，或 {"electricity": [...], "heat": [...]}
    start: 每个时段 τ 的初始化方式
    storage_aware: 子问题的充放速率上限按时段初储能水平收紧
    """

    rho: float = 0.05
    horizon: Optional[int] = None
    lambda_init: LambdaInit = "auto"
    start: StartMode = StartMode.WARM
    storage_aware: bool = True

    def validate(self) -> List[str]:
        violations = []
        if not self.rho > 0:
            violations.append(f"outer.rho={self.rho} 必须为正")
        if self.horizon is not None and self.horizon < 1:
            violations.append(f"outer.horizon={self.horizon} 必须 >= 1")
        return violations


@dataclass
class SlotRecord:
    """单时段遥测"""

    t: int
    hour: int
    p_e: float
    p_g: float
    p_o: float
    cost: float  # 千元
    iterations: int
    converged: bool
    gradient_norm: float
    lambda_e: np.ndarray
    lambda_h: np.ndarray
    tau: np.ndarray
    b: np.ndarray  # 时段末电池电量
    w: np.ndarray  # 时段末储热量
    decision: SlotDecision
    clipped_e: float
    clipped_h: float
    throughput: float
    adjustments: float
    shed_elastic: float
    shed_curtail: float
    unserved: np.ndarray
    infeasible: bool
    residual: float  # 分配需求与执行供给之差的 max 范数（含缺供）
    renewable: float  # 本时段可再生出力合计
    history: List[float] = field(default_factory=list)


@dataclass
class ScheduleResult:
    """整个区间的调度结果"""

    records: List[SlotRecord]
    final_states: List[MegpState]
    lambda_e: np.ndarray
    lambda_h: np.ndarray

    @property
    def total_cost(self) -> float:
        return float(sum(r.cost for r in self.records))

    @property
    def iterations(self) -> List[int]:
        return [r.iterations for r in self.records]


def resolve_lambda_init(park: ParkParams, traces: TraceSet, spec: LambdaInit) -> Tuple[np.ndarray, np.ndarray]:
    """
    计算 λ(0)

    "auto"：λ_e = −median(p_e)，λ_h = −median(p_g)/η_bg，使充放电阈值落在典型边际成本处
    """
    n = park.n_megp
    if isinstance(spec, str):
        if spec.lower() != "auto":
            raise ValidationError(f"未知的 lambda_init: {spec}")
        lam_e = np.full(n, -float(np.median(traces.p_e)))
        lam_h = np.array([-float(np.median(traces.p_g)) / m.eta_bg for m in park.megps])
        return lam_e, lam_h
    if isinstance(spec, dict):
        lam_e = np.broadcast_to(np.asarray(spec.get("electricity", 0.0), dtype=float), (n,)).copy()
        lam_h = np.broadcast_to(np.asarray(spec.get("heat", 0.0), dtype=float), (n,)).copy()
        return lam_e, lam_h
    value = np.broadcast_to(np.asarray(spec, dtype=float), (n,)).copy()
    return value, value.copy()


def lambda_update(
    lambda_e: np.ndarray, lambda_h: np.ndarray, rho: float, d: SlotDecision
) -> Tuple[np.ndarray, np.ndarray]:
    """
    λ 的梯度更新（不投影）

    λ_e' = λ_e + ρ(C_e − D_e)，λ_h' = λ_h + ρ(C_h − D_h)
    """
    c_e = np.array([m.c_ke for m in d.megps])
    d_e = np.array([m.d_ke for m in d.megps])
    c_h = np.array([m.c_kh for m in d.megps])
    d_h = np.array([m.d_kh for m in d.megps])
    return (
        np.asarray(lambda_e, dtype=float) + rho * (c_e - d_e),
        np.asarray(lambda_h, dtype=float) + rho * (c_h - d_h),
    )


def check_dimensions(park: ParkParams, traces: TraceSet, horizon: int) -> None:
    """时序与园区维度不一致时抛出 ValidationError"""
    violations = []
    if horizon > traces.length:
        violations.append(f"时序长度 {traces.length} 小于调度时段数 {horizon}")
    if traces.n_megp != park.n_megp:
        violations.append(f"时序含 {traces.n_megp} 个 MEGP 的可再生出力，园区有 {park.n_megp} 个")
    if traces.n_user != park.n_user:
        violations.append(f"时序含 {traces.n_user} 个用户负荷，园区有 {park.n_user} 个")
    if traces.el_alpha is not None and traces.el_alpha.shape[1] != park.n_elastic:
        violations.append(f"时序含 {traces.el_alpha.shape[1]} 列弹性负荷效用系数，园区有 {park.n_elastic} 个")
    if violations:
        raise ValidationError("时序与园区参数不匹配", violations)


def run_horizon(
    park: ParkParams,
    traces: TraceSet,
    inner_cfg: InnerLoopConfig,
    outer_cfg: OuterLoopConfig,
    executor: Optional[DispatchExecutor] = None,
    on_slot: Optional[Callable[[SlotRecord], None]] = None,
) -> ScheduleResult:
    """
    运行完整调度区间

    Args:
        park: 园区参数
        traces: 外生时序
        inner_cfg: 内层参数
        outer_cfg: 外层参数
        executor: 调度执行器，缺省新建
        on_slot: 每个时段结束后的回调

    Returns:
        ScheduleResult

    Raises:
        ValidationError: 时序长度或维度不匹配
    """
    horizon = outer_cfg.horizon or traces.length
    check_dimensions(park, traces, horizon)

    executor = executor or DispatchExecutor(park)
    executor.reset()
    lambda_e, lambda_h = resolve_lambda_init(park, traces, outer_cfg.lambda_init)
    tau_prev: Optional[np.ndarray] = None
    records: List[SlotRecord] = []

    for t in range(horizon):
        exo = traces.slot(t)
        slot_park = with_storage_limits(park, executor.states) if outer_cfg.storage_aware else park
        if outer_cfg.start == StartMode.WARM and tau_prev is not None:
            tau0 = tau_prev
        else:
            tau0 = cold_start_tau(slot_park, exo)

        inner = run_inner_loop(slot_park, exo, lambda_e, lambda_h, inner_cfg, tau0)
        tau_prev = inner.tau
        lambda_e, lambda_h = lambda_update(lambda_e, lambda_h, outer_cfg.rho, inner.decision)

        executed = executor.execute(exo, inner.decision)
        cost = slot_cost(park, exo, executed.decision)
        residual = float(np.max(np.abs(supply_gap(park, exo, executed.decision)))) if park.n_megp else 0.0

        record = SlotRecord(
            t=t,
            hour=exo.hour,
            p_e=exo.p_e,
            p_g=exo.p_g,
            p_o=exo.p_o,
            cost=cost,
            iterations=inner.iterations,
            converged=inner.converged,
            gradient_norm=inner.gradient_norm,
            lambda_e=lambda_e.copy(),
            lambda_h=lambda_h.copy(),
            tau=inner.tau.copy(),
            b=np.array([s.b for s in executed.states_after]),
            w=np.array([s.w for s in executed.states_after]),
            decision=executed.decision,
            clipped_e=executed.clipped_e,
            clipped_h=executed.clipped_h,
            throughput=executed.throughput,
            adjustments=executed.adjustments,
            shed_elastic=executed.shed_elastic,
            shed_curtail=executed.shed_curtail,
            unserved=executed.unserved,
            infeasible=executed.infeasible,
            residual=residual,
            renewable=float(exo.renewables.sum()),
            history=inner.history,
        )
        records.append(record)
        if on_slot is not None:
            on_slot(record)
        logger.debug(
            f"t={t} 时段成本 {cost:.4f} 千元，内层 {inner.iterations} 次，"
            f"λ_e={np.round(lambda_e, 4).tolist()} λ_h={np.round(lambda_h, 4).tolist()}"
        )

    logger.info(f"调度完成：{horizon} 个时段，总成本 {sum(r.cost for r in records):.4f} 千元")
    stalled = sum(not r.converged for r in records)
    if stalled:
        logger.warning(f"{stalled}/{horizon} 个时段内层未在 {inner_cfg.max_iters} 次内收敛")
    short = sum(r.infeasible for r in records)
    if short:
        logger.warning(f"{short}/{horizon} 个时段结算后仍有缺供")
    clipped = sum(r.clipped_e + r.clipped_h for r in records)
    if clipped > 0:
        logger.warning(f"储能截断能量合计 {clipped:.4f} MWh")
    return ScheduleResult(
        records=records,
        final_states=list(executor.states),
        lambda_e=lambda_e,
        lambda_h=lambda_h,
    )
