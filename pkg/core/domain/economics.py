# -*- coding: utf-8 -*-
"""
经济模型

用户削减闭式解、激励价格与时段成本。
成本单位为千元（¥/kWh × MWh），报表层再乘以 1000 换算为元。
"""

from common.exceptions import ValidationError

from .decision import SlotDecision
from .exogenous import SlotExogenous
from .park import ParkParams, UserParams

PRICE_TOL = 1e-9


def optimal_curtailment(user: UserParams, x_load: float, price: float) -> float:
    """
    用户在激励价格下的最优削减量

    用户最大化 p·x − a·x²，x ∈ [0, ηX]；当 0 ≤ p ≤ 2aηX 时解为 p/(2a)。

    Args:
        user: 用户参数
        x_load: 不可削减负荷 X_i
        price: 激励价格 p_i

    Returns:
        削减量 X_ir

    Raises:
        ValidationError: 价格不在有效区间
    """
    upper = 2.0 * user.a * user.eta_curtail * x_load
    if price < -PRICE_TOL or price > upper + PRICE_TOL:
        raise ValidationError(f"激励价格 {price} 不在 [0, {upper}] 内")
    return max(0.0, min(price / (2.0 * user.a), user.eta_curtail * x_load))


def incentive_price(user: UserParams, curtailed: float) -> float:
    """削减量对应的激励价格 p_i = 2a·X_ir（用户最优响应的反函数）"""
    return 2.0 * user.a * curtailed


def slot_cost(park: ParkParams, exo: SlotExogenous, d: SlotDecision) -> float:
    """
    园区时段成本 φ(t)

    φ = p_e·E + p_g·G − p_o·E_o + Σ_i [p_i·X_ir − U_i] − Σ_q U_q

    Returns:
        成本（千元）
    """
    e_import = sum(m.e_import for m in d.megps)
    g_import = sum(m.g_import for m in d.megps)
    e_export = sum(m.e_export for m in d.megps)
    cost = exo.p_e * e_import + exo.p_g * g_import - exo.p_o * e_export

    for i, (user, ud) in enumerate(zip(park.users, d.users)):
        served = float(exo.il_loads[i]) - ud.curtailed
        cost += incentive_price(user, ud.curtailed) * ud.curtailed - user.w * served

    for q, (load, ed) in enumerate(zip(park.elastic_loads, d.elastic)):
        cost -= load.utility(ed.x, exo.alpha_for(q, load.alpha))

    return cost
