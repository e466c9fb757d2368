# -*- coding: utf-8 -*-
"""
===================================
微时段子问题
===================================

职责：
1. 给定 (λ, τ)，分别求解每个 MEGP、用户、弹性负荷的子问题
2. penalty > 0 时，MEGP 在线性目标外加上与分配需求之差的二次惩罚
3. 园区交易上限被突破时，给该交易加上各 MEGP 共用的影子价格并二分，
   使合计用量恰好等于上限；多种上限相互牵制仍越限时，按各 MEGP 用量比例收紧后重解
4. 计算拉格朗日函数值（供测试与网格对照使用）
"""

import logging
from typing import Dict, List

import numpy as np

from common.exceptions import InfeasibleError
from core.domain import MegpDecision, ParkParams, SlotDecision, SlotExogenous, TradeCaps, slot_cost

from .agents import elastic_decision, solve_user
from .augmented import solve_augmented_megp
from .marginal import MarginalCostTable, MegpCosts, MultiplierView
from .megp import solve_megp
from .pricing import bracket_price, fill_to_limit, price_scale, shift_costs

logger = logging.getLogger(__name__)

CAP_TOL = 1e-9
PRICE_PASSES = 2

# (园区上限属性, MEGP 决策属性, TradeCaps 字段)
_TRADE_RESOURCES = (
    ("e_max", "e_import", "e_import"),
    ("e_o_max", "e_export", "e_export"),
    ("g_max", "g_import", "g_import"),
)


class _ParkSolver:
    """在给定交易加价与单 MEGP 上限下求解全部 MEGP"""

    def __init__(
        self,
        park: ParkParams,
        exo: SlotExogenous,
        mult: MultiplierView,
        demand: np.ndarray,
        penalty: float,
    ):
        self.park = park
        self.exo = exo
        self.mult = mult
        self.demand = demand
        self.penalty = penalty
        self.table = MarginalCostTable.build(park, exo, mult)
        park_caps = park.trade_caps()
        self.caps = [TradeCaps(park_caps.e_import, park_caps.e_export, park_caps.g_import) for _ in park.megps]
        self.prices: Dict[str, float] = {attr: 0.0 for _, attr, _ in _TRADE_RESOURCES}

    def _costs(self, k: int, prices: Dict[str, float]) -> MegpCosts:
        costs = self.table[k]
        for resource, mu in prices.items():
            costs = shift_costs(costs, resource, mu)
        return costs

    def solve(self, prices: Dict[str, float]) -> List[MegpDecision]:
        park, exo = self.park, self.exo
        if self.penalty > 0:
            return [
                solve_augmented_megp(
                    params, exo, self._costs(k, prices), k, self.demand[k], self.penalty, self.caps[k]
                )
                for k, params in enumerate(park.megps)
            ]
        return [
            solve_megp(params, exo, self.mult, k, self.caps[k], self._costs(k, prices))
            for k, params in enumerate(park.megps)
        ]

    def _violations(self, megps: List[MegpDecision]) -> List[tuple]:
        out = []
        for park_attr, decision_attr, cap_attr in _TRADE_RESOURCES:
            limit = getattr(self.park, park_attr)
            total = float(sum(getattr(m, decision_attr) for m in megps))
            if total > limit + CAP_TOL:
                out.append((park_attr, decision_attr, cap_attr, limit, total))
        return out

    def _price(self, megps: List[MegpDecision]) -> List[MegpDecision]:
        """逐个越限资源二分影子价格"""
        scale = price_scale(self.table.rows)
        params = self.park.megps
        renewables = [float(r) for r in self.exo.renewables]
        for _ in range(PRICE_PASSES):
            violations = self._violations(megps)
            if not violations:
                break
            for park_attr, resource, _, limit, _ in violations:
                base = dict(self.prices)
                free = self.solve({**base, resource: 0.0})
                if sum(getattr(m, resource) for m in free) <= limit + CAP_TOL:
                    self.prices[resource] = 0.0
                    megps = free
                    continue
                bracket = bracket_price(
                    lambda mu: self.solve({**base, resource: mu}), resource, limit, scale, free
                )
                self.prices[resource] = bracket.mu
                megps = fill_to_limit(params, renewables, bracket, resource, limit)
                logger.debug(f"t={self.exo.t}: 园区 {park_attr} 起作用，影子价格 {bracket.mu:.6f}")
        return megps

    def _tighten(self, megps: List[MegpDecision]) -> List[MegpDecision]:
        """按各 MEGP 用量比例收紧单 MEGP 上限后重解，每种资源最多一次"""
        for _ in range(len(_TRADE_RESOURCES)):
            violations = self._violations(megps)
            if not violations:
                return megps
            for park_attr, decision_attr, cap_attr, limit, total in violations:
                logger.debug(f"t={self.exo.t}: 园区 {decision_attr} 合计 {total:.4f} 超过上限 {limit}，按比例收紧")
                for k, m in enumerate(megps):
                    setattr(self.caps[k], cap_attr, limit * float(getattr(m, decision_attr)) / total)
            megps = self.solve(self.prices)
        for park_attr, decision_attr, _, _, total in self._violations(megps):
            raise InfeasibleError(f"园区交易上限 {park_attr} 无法满足：{total}", park_attr)
        return megps

    def run(self) -> List[MegpDecision]:
        megps = self.solve(self.prices)
        if self._violations(megps):
            megps = self._price(megps)
            megps = self._tighten(megps)
        return megps


def solve_subproblem(
    park: ParkParams, exo: SlotExogenous, mult: MultiplierView, penalty: float = 0.0
) -> SlotDecision:
    """
    求解整个园区的微时段子问题

    Args:
        park: 园区参数
        exo: 时段外生量
        mult: 乘子
        penalty: MEGP 供需惩罚系数，0 表示原线性子问题

    Returns:
        SlotDecision

    Raises:
        InfeasibleError: 乘子非有限、子问题不可行或收紧后仍越限
    """
    if not mult.is_finite():
        raise InfeasibleError("乘子含非有限值", "multipliers")

    users = [
        solve_user(user, float(exo.il_loads[i]), mult.tau[:, 0]) for i, user in enumerate(park.users)
    ]
    elastic = [
        elastic_decision(load, mult.tau[load.megp], exo.alpha_for(q, load.alpha))
        for q, load in enumerate(park.elastic_loads)
    ]
    demand = SlotDecision(megps=[MegpDecision() for _ in park.megps], users=users, elastic=elastic).demand_matrix()
    megps = _ParkSolver(park, exo, mult, demand, penalty).run()
    return SlotDecision(megps=megps, users=users, elastic=elastic)


def lagrangian_value(park: ParkParams, exo: SlotExogenous, mult: MultiplierView, d: SlotDecision) -> float:
    """
    拉格朗日函数值

    L = φ + Σ_k [λ_e(C_e − D_e) + λ_h(C_h − D_h)] + Σ_{k,c} τ_{k,c}·(需求 − 供给)
    """
    value = slot_cost(park, exo, d)
    for k, md in enumerate(d.megps):
        value += mult.lambda_e[k] * (md.c_ke - md.d_ke) + mult.lambda_h[k] * (md.c_kh - md.d_kh)
    gap = d.demand_matrix() - d.supply_matrix()
    value += float(np.sum(mult.tau * gap))
    return float(value)
