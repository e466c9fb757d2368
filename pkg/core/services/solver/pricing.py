# -*- coding: utf-8 -*-
"""
交易资源的影子价格

购电、售电、购气上限都可以改写成给对应变量加价 μ ≥ 0：
用量关于 μ 单调不增，二分找到用量跨过上限的 μ*，
μ* 两侧的解对 μ* 都最优，按用量插值即得恰好用满上限的最优解。
"""

import logging
from dataclasses import dataclass, replace
from typing import Callable, List

from common.exceptions import InfeasibleError
from core.domain import CarrierVector, MegpDecision, MegpParams, carrier_supply

from .marginal import MegpCosts

logger = logging.getLogger(__name__)

USAGE_TOL = 1e-9
PRICE_BISECTIONS = 200
PRICE_DOUBLINGS = 80
PRICE_REL_TOL = 1e-14

DECISION_FIELDS = ("c_ke", "d_ke", "c_kh", "d_kh", "g_chp", "g_b", "e_import", "e_export", "g_import", "r_spill")

# 资源名 → MegpDecision 属性
RESOURCES = ("e_import", "e_export", "g_import")


def shift_costs(costs: MegpCosts, resource: str, mu: float) -> MegpCosts:
    """给某种交易资源加价 μ"""
    if mu == 0.0:
        return costs
    if resource == "e_import":
        return replace(costs, import_e=costs.import_e + mu)
    if resource == "e_export":
        return replace(costs, export_e=costs.export_e + mu)
    if resource == "g_import":
        return replace(costs, chp=costs.chp + mu, boiler=costs.boiler + mu, gas_load=costs.gas_load + mu)
    raise ValueError(f"未知交易资源: {resource}")


def price_scale(costs: List[MegpCosts]) -> float:
    """二分初始上界：不小于所有系数的绝对值"""
    scale = 1.0
    for c in costs:
        scale = max(scale, *(abs(v) for v in c.to_dict().values()))
    return scale


def blend_decisions(params: MegpParams, renewable: float, a: MegpDecision, b: MegpDecision, w: float) -> MegpDecision:
    """
    两个决策的凸组合 w·a + (1 − w)·b

    充放电按净值合并：充、放系数互为相反数，合并不改变目标与供给。
    """
    values = {name: w * getattr(a, name) + (1.0 - w) * getattr(b, name) for name in DECISION_FIELDS}
    for charge, discharge in (("c_ke", "d_ke"), ("c_kh", "d_kh")):
        net = values[charge] - values[discharge]
        values[charge], values[discharge] = max(net, 0.0), max(-net, 0.0)
    md = MegpDecision(**values)
    md.supply = CarrierVector.from_array(carrier_supply(params, renewable, md))
    return md


@dataclass
class PriceBracket:
    """μ* 两侧的解：over 用量超限，under 不超限"""

    mu: float
    over: List[MegpDecision]
    under: List[MegpDecision]


def _usage(decisions: List[MegpDecision], resource: str) -> float:
    return float(sum(getattr(m, resource) for m in decisions))


def bracket_price(
    solve: Callable[[float], List[MegpDecision]],
    resource: str,
    limit: float,
    scale: float,
    free: List[MegpDecision],
) -> PriceBracket:
    """
    二分影子价格

    Args:
        solve: 给定 μ 返回各 MEGP 决策
        resource: 交易资源名
        limit: 用量上限
        scale: μ 的初始上界
        free: μ = 0 时的解（已知超限）

    Raises:
        InfeasibleError: μ 很大时用量仍超限
    """
    lo, over = 0.0, free
    hi = scale
    under = solve(hi)
    for _ in range(PRICE_DOUBLINGS):
        if _usage(under, resource) <= limit + USAGE_TOL:
            break
        lo, over = hi, under
        hi *= 2.0
        under = solve(hi)
    else:
        raise InfeasibleError(f"加价后 {resource} 用量仍超过上限 {limit}", resource)

    for _ in range(PRICE_BISECTIONS):
        if hi - lo <= PRICE_REL_TOL * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        decisions = solve(mid)
        if _usage(decisions, resource) > limit + USAGE_TOL:
            lo, over = mid, decisions
        else:
            hi, under = mid, decisions
    return PriceBracket(mu=hi, over=over, under=under)


def fill_to_limit(
    params: List[MegpParams],
    renewables: List[float],
    bracket: PriceBracket,
    resource: str,
    limit: float,
) -> List[MegpDecision]:
    """在两侧解之间按同一权重插值，使合计用量等于上限"""
    u_under = _usage(bracket.under, resource)
    if u_under >= limit - USAGE_TOL:
        return bracket.under
    u_over = _usage(bracket.over, resource)
    w = (limit - u_under) / (u_over - u_under)
    return [
        blend_decisions(p, r, a, b, w) for p, r, a, b in zip(params, renewables, bracket.over, bracket.under)
    ]
