# -*- coding: utf-8 -*-
"""
单个 MEGP 的子问题求解

CHP 同时产电和产热，把两个载体耦合在一起。固定 CHP 耗气量后，
电、热、气三个载体各自是一个连续背包；最优值关于耗气量分段线性，
因此只需在各背包的转折点处取值并比较。

购气上限把锅炉、CHP 与气负荷绑在同一预算上：先不计上限求解，
越限时给气价加上影子价格 ν 并二分，在 ν* 两侧的两个解之间插值使预算恰好用满。
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from common.enums import Carrier
from common.exceptions import InfeasibleError
from core.domain import CarrierVector, MegpDecision, MegpParams, SlotExogenous, TradeCaps, carrier_supply

from .knapsack import KnapsackResult, Lever, bang_bang, cumulative_capacities, lever_supply, solve_knapsack
from .marginal import MegpCosts, MultiplierView, megp_costs
from .pricing import USAGE_TOL, bracket_price, fill_to_limit, price_scale, shift_costs

logger = logging.getLogger(__name__)

# 同成本时的固定次序
RANK_CHP, RANK_BOILER, RANK_DISCHARGE, RANK_IMPORT, RANK_RENEWABLE, RANK_CHARGE, RANK_EXPORT, RANK_GAS_LOAD = range(8)


def electricity_levers(params: MegpParams, costs: MegpCosts, renewable: float, caps: TradeCaps) -> List[Lever]:
    return [
        Lever("d_ke", +1, 1.0, costs.discharge_e, params.d_ke_max, RANK_DISCHARGE),
        Lever("e_import", +1, 1.0, costs.import_e, max(caps.e_import, 0.0), RANK_IMPORT),
        Lever("r_spill", -1, 1.0, costs.spill, renewable, RANK_RENEWABLE),
        Lever("c_ke", -1, 1.0, costs.charge_e, params.c_ke_max, RANK_CHARGE),
        Lever("e_export", -1, 1.0, costs.export_e, max(caps.e_export, 0.0), RANK_EXPORT),
    ]


def heat_levers(params: MegpParams, costs: MegpCosts, boiler_upper: float) -> List[Lever]:
    return [
        Lever("g_b", +1, params.eta_bg, costs.boiler, boiler_upper, RANK_BOILER),
        Lever("d_kh", +1, 1.0, costs.discharge_h, params.d_kh_max, RANK_DISCHARGE),
        Lever("c_kh", -1, 1.0, costs.charge_h, params.c_kh_max, RANK_CHARGE),
    ]


def gas_levers(params: MegpParams, costs: MegpCosts) -> List[Lever]:
    return [Lever("g_load", +1, 1.0, costs.gas_load, params.x_max.gas, RANK_GAS_LOAD)]


@dataclass
class _Candidate:
    g_chp: float
    total: float
    electricity: KnapsackResult
    heat: KnapsackResult
    gas: KnapsackResult

    @property
    def feasible(self) -> bool:
        return self.electricity.feasible and self.heat.feasible and self.gas.feasible


class MegpSolver:
    """
    MEGP 子问题求解器

    对给定的边际成本和购售电上限，最小化该 MEGP 在拉格朗日函数中的各项。
    购气上限不在这里处理，见 solve_with_gas_budget。
    """

    def __init__(self, params: MegpParams, exo: SlotExogenous, costs: MegpCosts, k: int, caps: TradeCaps):
        self.params = params
        self.exo = exo
        self.k = k
        self.caps = caps
        self.costs = costs
        self.renewable = float(exo.renewables[k])
        self.cap = params.x_max.as_array()
        self.e_levers = electricity_levers(params, costs, self.renewable, caps)
        self.h_levers = heat_levers(params, costs, params.boiler_gas_max)
        self.g_levers = gas_levers(params, costs)

    def _evaluate(self, g_chp: float) -> _Candidate:
        p = self.params
        e_res = solve_knapsack(self.renewable + p.eta_pg * g_chp, self.e_levers, self.cap[Carrier.ELECTRICITY.index])
        h_res = solve_knapsack(p.eta_hg * g_chp, self.h_levers, self.cap[Carrier.HEAT.index])
        g_res = solve_knapsack(0.0, self.g_levers, self.cap[Carrier.GAS.index])
        total = self.costs.chp * g_chp + e_res.cost + h_res.cost + g_res.cost
        return _Candidate(g_chp, total, e_res, h_res, g_res)

    def _upper_chp(self) -> float:
        """CHP 耗气上限：设备上限，以及电、热供给可被吸收的上限"""
        p = self.params
        absorb_e = self.cap[Carrier.ELECTRICITY.index] + p.c_ke_max + max(self.caps.e_export, 0.0)
        absorb_h = self.cap[Carrier.HEAT.index] + p.c_kh_max
        return max(0.0, min(p.chp_gas_max, absorb_e / p.eta_pg, absorb_h / p.eta_hg))

    def _breakpoints(self, g_hi: float) -> np.ndarray:
        p = self.params
        points = [0.0, g_hi]

        def add_carrier(levers: List[Lever], fixed: float, cap: float, slope: float) -> None:
            base = fixed + lever_supply(levers, bang_bang(levers))
            for s in cumulative_capacities(levers, raise_supply=False):
                points.append((cap + s - base) / slope)
            for s in cumulative_capacities(levers, raise_supply=True):
                points.append((-s - base) / slope)

        add_carrier(self.e_levers, self.renewable, self.cap[Carrier.ELECTRICITY.index], p.eta_pg)
        add_carrier(self.h_levers, 0.0, self.cap[Carrier.HEAT.index], p.eta_hg)

        arr = np.asarray(points, dtype=float)
        arr = arr[np.isfinite(arr)]
        arr = np.clip(arr, 0.0, g_hi)
        return np.unique(arr)

    def _search(self) -> Optional[_Candidate]:
        best: Optional[_Candidate] = None
        for g_chp in self._breakpoints(self._upper_chp()):
            cand = self._evaluate(float(g_chp))
            if not cand.feasible:
                continue
            if best is None or cand.total < best.total - 1e-12:
                best = cand
        return best

    def solve(self) -> MegpDecision:
        """
        求解

        Returns:
            MegpDecision；多个候选目标相同时取 CHP 耗气最小者

        Raises:
            InfeasibleError: 无法让各载体供给回到 [0, x_max]
        """
        best = self._search()
        if best is None:
            raise InfeasibleError(f"MEGP {self.k + 1} 子问题不可行：载体供给无法满足 0 ≤ x ≤ x_max", "x_max")
        return self._assemble(best)

    def _assemble(self, cand: _Candidate) -> MegpDecision:
        e, h, g = cand.electricity.values, cand.heat.values, cand.gas.values
        md = MegpDecision(
            c_ke=e["c_ke"],
            d_ke=e["d_ke"],
            c_kh=h["c_kh"],
            d_kh=h["d_kh"],
            g_chp=cand.g_chp,
            g_b=h["g_b"],
            e_import=e["e_import"],
            e_export=e["e_export"],
            g_import=cand.g_chp + h["g_b"] + g["g_load"],
            r_spill=e["r_spill"],
        )
        md.supply = CarrierVector.from_array(carrier_supply(self.params, self.renewable, md))
        logger.debug(
            f"MEGP {self.k + 1} t={self.exo.t}: G_chp={md.g_chp:.4f} G_b={md.g_b:.4f} "
            f"购电={md.e_import:.4f} 售电={md.e_export:.4f} 目标={cand.total:.6f}"
        )
        return md


def solve_with_gas_budget(
    params: MegpParams,
    renewable: float,
    costs: MegpCosts,
    budget: float,
    solve: Callable[[MegpCosts], MegpDecision],
    k: int = 0,
) -> MegpDecision:
    """
    在购气预算下求解

    不计预算的解若越限，则给耗气加价 ν 并二分，使耗气量恰好等于预算。

    Args:
        params: MEGP 参数
        renewable: 可再生出力
        costs: 原始边际成本
        budget: 该 MEGP 可用的购气量
        solve: 给定边际成本、不计购气上限的求解函数
        k: MEGP 下标（日志用）

    Raises:
        InfeasibleError: 预算为负
    """
    if budget < -USAGE_TOL:
        raise InfeasibleError(f"MEGP {k + 1} 购气上限为负：{budget}", "g_max")
    budget = max(budget, 0.0)

    free = solve(costs)
    if free.g_import <= budget + USAGE_TOL:
        return free

    bracket = bracket_price(
        lambda nu: [solve(shift_costs(costs, "g_import", nu))], "g_import", budget, price_scale([costs]), [free]
    )
    logger.debug(f"MEGP {k + 1}: 购气上限 {budget:.4f} 起作用，影子价格 ν≈{bracket.mu:.6f}")
    return fill_to_limit([params], [renewable], bracket, "g_import", budget)[0]


def solve_megp(
    params: MegpParams,
    exo: SlotExogenous,
    mult: MultiplierView,
    k: int,
    caps: Optional[TradeCaps] = None,
    costs: Optional[MegpCosts] = None,
) -> MegpDecision:
    """
    求解 MEGP k 的子问题

    Args:
        params: MEGP 参数
        exo: 时段外生量
        mult: 乘子
        k: MEGP 下标（0 起）
        caps: 该 MEGP 的交易上限，缺省为该 MEGP 自身能吸收或送出的最大量
        costs: 预先算好的边际成本，缺省由 mult 计算

    Returns:
        MegpDecision
    """
    if not mult.is_finite():
        raise InfeasibleError("乘子含非有限值", "multipliers")
    if caps is None:
        caps = standalone_caps(params, float(exo.renewables[k]))
    if costs is None:
        costs = megp_costs(params, exo, mult, k)
    return solve_with_gas_budget(
        params,
        float(exo.renewables[k]),
        costs,
        caps.g_import,
        lambda c: MegpSolver(params, exo, c, k, caps).solve(),
        k,
    )


def standalone_caps(params: MegpParams, renewable: float) -> TradeCaps:
    """不受园区约束时的交易上限"""
    return TradeCaps(
        e_import=params.x_max.electricity + params.c_ke_max,
        e_export=params.e_chp_max + params.d_ke_max + renewable,
        g_import=params.chp_gas_max + params.boiler_gas_max + params.x_max.gas,
    )
