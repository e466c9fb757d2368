# -*- coding: utf-8 -*-
"""
带供需惩罚项的 MEGP 子问题

内层循环中，每个 MEGP 在线性目标之外加上 penalty/2·‖需求 − 供给‖²，
需求取同一 τ 下用户与弹性负荷的响应。线性目标给出的供给在 τ 上是阶跃的，
惩罚项把它变成连续的邻近映射，τ 的更新随之成为近端梯度步并收敛；
不动点处需求等于供给，惩罚项为零，解与原问题一致。

固定 CHP 耗气后三个载体互不相关，各自是 solve_prox 的一维问题；
目标关于 CHP 耗气是凸的，用黄金分割搜索。
"""

import logging
import math
from typing import Optional

import numpy as np

from common.enums import Carrier
from common.exceptions import InfeasibleError
from core.domain import MegpDecision, MegpParams, SlotExogenous, TradeCaps, carrier_supply

from .knapsack import KnapsackResult, solve_prox
from .marginal import MegpCosts
from .megp import MegpSolver, _Candidate, solve_with_gas_budget, standalone_caps

logger = logging.getLogger(__name__)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
GOLDEN_ITERS = 80
SEARCH_TOL = 1e-13


def augmented_objective(
    params: MegpParams,
    renewable: float,
    costs: MegpCosts,
    md: MegpDecision,
    target: np.ndarray,
    penalty: float,
) -> float:
    """线性目标加惩罚项，按决策变量直接计算"""
    linear = (
        costs.import_e * md.e_import
        + costs.export_e * md.e_export
        + costs.spill * md.r_spill
        + costs.charge_e * md.c_ke
        + costs.discharge_e * md.d_ke
        + costs.charge_h * md.c_kh
        + costs.discharge_h * md.d_kh
        + costs.chp * md.g_chp
        + costs.boiler * md.g_b
        + costs.gas_load * md.g_load
    )
    gap = np.asarray(target, dtype=float) - carrier_supply(params, renewable, md)
    return float(linear + 0.5 * penalty * float(gap @ gap))


class AugmentedMegpSolver(MegpSolver):
    """
    带惩罚项的 MEGP 求解器

    target: 分配给该 MEGP 的 (电, 热, 气) 需求
    penalty: 惩罚系数，必须为正
    """

    def __init__(
        self,
        params: MegpParams,
        exo: SlotExogenous,
        costs: MegpCosts,
        k: int,
        caps: TradeCaps,
        target: np.ndarray,
        penalty: float,
    ):
        super().__init__(params, exo, costs, k, caps)
        self.target = np.asarray(target, dtype=float)
        self.penalty = penalty
        self._gas: Optional[KnapsackResult] = None

    def _prox(self, carrier: Carrier, base: float, levers) -> KnapsackResult:
        c = carrier.index
        return solve_prox(base, levers, self.cap[c], float(self.target[c]), self.penalty)

    def _gas_result(self) -> KnapsackResult:
        if self._gas is None:
            self._gas = self._prox(Carrier.GAS, 0.0, self.g_levers)
        return self._gas

    def _evaluate(self, g_chp: float) -> _Candidate:
        p = self.params
        e_res = self._prox(Carrier.ELECTRICITY, self.renewable + p.eta_pg * g_chp, self.e_levers)
        h_res = self._prox(Carrier.HEAT, p.eta_hg * g_chp, self.h_levers)
        g_res = self._gas_result()
        supply = np.array([e_res.supply, h_res.supply, g_res.supply])
        gap = self.target - supply
        total = self.costs.chp * g_chp + e_res.cost + h_res.cost + g_res.cost + 0.5 * self.penalty * float(gap @ gap)
        return _Candidate(g_chp, total, e_res, h_res, g_res)

    def _search(self) -> Optional[_Candidate]:
        g_hi = self._upper_chp()
        candidates = [self._evaluate(0.0)]
        if g_hi > 0.0:
            lo, hi = 0.0, g_hi
            x1 = hi - GOLDEN * (hi - lo)
            x2 = lo + GOLDEN * (hi - lo)
            f1, f2 = self._evaluate(x1), self._evaluate(x2)
            for _ in range(GOLDEN_ITERS):
                if hi - lo <= SEARCH_TOL * max(1.0, g_hi):
                    break
                if f1.total <= f2.total:
                    hi, x2, f2 = x2, x1, f1
                    x1 = hi - GOLDEN * (hi - lo)
                    f1 = self._evaluate(x1)
                else:
                    lo, x1, f1 = x1, x2, f2
                    x2 = lo + GOLDEN * (hi - lo)
                    f2 = self._evaluate(x2)
            candidates.extend([f1, f2, self._evaluate(g_hi)])

        best: Optional[_Candidate] = None
        for cand in candidates:
            if not cand.feasible:
                continue
            if best is None or cand.total < best.total - 1e-15 or (
                cand.total <= best.total + 1e-15 and cand.g_chp < best.g_chp
            ):
                best = cand
        return best


def solve_augmented_megp(
    params: MegpParams,
    exo: SlotExogenous,
    costs: MegpCosts,
    k: int,
    target: np.ndarray,
    penalty: float,
    caps: Optional[TradeCaps] = None,
) -> MegpDecision:
    """
    求解带惩罚项的 MEGP k 子问题

    Args:
        params: MEGP 参数
        exo: 时段外生量
        costs: 边际成本
        k: MEGP 下标（0 起）
        target: 分配给该 MEGP 的 (电, 热, 气) 需求
        penalty: 惩罚系数（> 0）
        caps: 交易上限，缺省同 solve_megp

    Returns:
        MegpDecision

    Raises:
        InfeasibleError: penalty 不为正，或子问题不可行
    """
    if not penalty > 0:
        raise InfeasibleError(f"惩罚系数必须为正：{penalty}", "penalty")
    if caps is None:
        caps = standalone_caps(params, float(exo.renewables[k]))
    return solve_with_gas_budget(
        params,
        float(exo.renewables[k]),
        costs,
        caps.g_import,
        lambda c: AugmentedMegpSolver(params, exo, c, k, caps, target, penalty).solve(),
        k,
    )
