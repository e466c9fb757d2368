# -*- coding: utf-8 -*-
"""
===================================
快时间尺度内层循环
===================================

职责：
1. 在一个时段内反复求解子问题并更新 τ（普通梯度或快速方案）
2. 相邻两次 τ 的最大差值小于 tol 或达到 max_iters 时停止
3. 未收敛不视为错误，通过迭代次数与 converged 标志报告

MEGP 子问题带 penalty/2·‖需求 − 供给‖² 惩罚项（penalty 缺省取 sigma）：
普通方案即近端梯度，快速方案即加速近端梯度；不动点处供需相等，惩罚项为零。
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from common.enums import Carrier, InnerMode
from core.domain import ParkParams, SlotDecision, SlotExogenous
from core.services.solver import MultiplierView, solve_subproblem

from .fista import FistaState, fast_tau_step, fista_combine, plain_tau_step

logger = logging.getLogger(__name__)


@dataclass
class InnerLoopConfig:
    """内层循环参数"""

    sigma: float = 0.2  # 步长
    max_iters: int = 100  # 最大微时段数
    tol: float = 0.01  # 相邻迭代差值阈值（max 范数）
    mode: InnerMode = InnerMode.FAST
    penalty: Optional[float] = None  # MEGP 供需惩罚系数，缺省等于 sigma；0 为原线性子问题

    @property
    def effective_penalty(self) -> float:
        return self.sigma if self.penalty is None else self.penalty

    def validate(self) -> List[str]:
        violations = []
        if not self.sigma > 0:
            violations.append(f"inner.sigma={self.sigma} 必须为正")
        if not self.tol > 0:
            violations.append(f"inner.tol={self.tol} 必须为正")
        if self.max_iters < 1:
            violations.append(f"inner.max_iters={self.max_iters} 必须 >= 1")
        if self.penalty is not None and self.penalty < 0:
            violations.append(f"inner.penalty={self.penalty} 不能为负")
        return violations


@dataclass
class InnerLoopResult:
    """内层循环结果"""

    decision: SlotDecision
    tau: np.ndarray  # 最终 τ*
    iterations: int
    converged: bool
    gradient_norm: float  # 最后一次梯度的 max 范数
    history: List[float] = field(default_factory=list)  # 每次迭代的 τ 差值


def tau_gradient(d: SlotDecision) -> np.ndarray:
    """
    τ 的梯度

    g_{k,c} = 分配给 MEGP k 的 c 载体需求 − 声明的可用量 x_{k,c}

    Returns:
        形状 (K, 3)
    """
    return d.demand_matrix() - d.supply_matrix()


def cold_start_tau(park: ParkParams, exo: SlotExogenous) -> np.ndarray:
    """
    冷启动 τ(0)：取电网边际成本

    τ_E = p_e，τ_H = p_g/η_bg，τ_G = p_g
    """
    tau = np.zeros((park.n_megp, 3))
    for k, params in enumerate(park.megps):
        tau[k, Carrier.ELECTRICITY.index] = exo.p_e
        tau[k, Carrier.HEAT.index] = exo.p_g / params.eta_bg
        tau[k, Carrier.GAS.index] = exo.p_g
    return tau


def run_inner_loop(
    park: ParkParams,
    exo: SlotExogenous,
    lambda_e: np.ndarray,
    lambda_h: np.ndarray,
    cfg: InnerLoopConfig,
    tau0: Optional[np.ndarray] = None,
) -> InnerLoopResult:
    """
    运行一个时段的内层循环

    Args:
        park: 园区参数
        exo: 时段外生量
        lambda_e, lambda_h: 当前慢乘子，形状 (K,)
        cfg: 内层参数
        tau0: 初始 τ，缺省为冷启动值

    Returns:
        InnerLoopResult（确定性，只依赖输入）
    """
    tau = cold_start_tau(park, exo) if tau0 is None else np.array(tau0, dtype=float)
    base = MultiplierView(lambda_e, lambda_h, tau)
    history: List[float] = []
    converged = False
    decision: Optional[SlotDecision] = None
    gradient = np.zeros_like(tau)
    iterations = 0

    penalty = cfg.effective_penalty
    state = FistaState.start(tau) if cfg.mode == InnerMode.FAST else None

    for n in range(1, cfg.max_iters + 1):
        iterations = n
        if state is None:
            decision = solve_subproblem(park, exo, base.with_tau(tau), penalty)
            gradient = tau_gradient(decision)
            tau_next = plain_tau_step(tau, cfg.sigma, gradient)
        else:
            tau_bar = fista_combine(state.tau, state.tau_prev, state.theta_prev, state.theta)
            decision = solve_subproblem(park, exo, base.with_tau(tau_bar), penalty)
            gradient = tau_gradient(decision)
            state = fast_tau_step(state, cfg.sigma, gradient)
            tau_next = state.tau

        diff = float(np.max(np.abs(tau_next - tau))) if tau.size else 0.0
        history.append(diff)
        tau = tau_next
        if diff < cfg.tol:
            converged = True
            break

    grad_norm = float(np.max(np.abs(gradient))) if gradient.size else 0.0
    if not converged:
        logger.debug(f"t={exo.t}: 内层 {cfg.mode.value} 未在 {cfg.max_iters} 次内收敛，末次差值 {history[-1]:.4f}")
    return InnerLoopResult(
        decision=decision,
        tau=tau,
        iterations=iterations,
        converged=converged,
        gradient_norm=grad_norm,
        history=history,
    )
