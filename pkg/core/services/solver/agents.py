# -*- coding: utf-8 -*-
"""
用户与弹性负荷子问题

两者都是标量二次函数，直接取驻点再截断到可行区间。
"""

from typing import Optional, Sequence

import numpy as np

from common.enums import Carrier
from core.domain import ElasticDecision, ElasticLoadParams, UserDecision, UserParams


def cheapest_supplier(user: UserParams, tau_e: Sequence[float]) -> int:
    """供能集合中 τ_E 最小的 MEGP，相同时取下标最小者"""
    return min(user.suppliers, key=lambda k: (float(tau_e[k]), k))


def solve_user(user: UserParams, x_load: float, tau_e: Sequence[float]) -> UserDecision:
    """
    用户子问题

    最小化 τ·(X − X_ir) + 2a·X_ir² − w·(X − X_ir)，X_ir ∈ [0, ηX]，
    驻点为 (τ − w)/(4a)。已服务负荷全部分配给 τ_E 最小的供能 MEGP。

    Args:
        user: 用户参数
        x_load: 不可削减负荷 X_i
        tau_e: 各 MEGP 的电乘子，形状 (K,)

    Returns:
        UserDecision
    """
    tau_e = np.asarray(tau_e, dtype=float)
    k_star = cheapest_supplier(user, tau_e)
    stationary = (tau_e[k_star] - user.w) / (4.0 * user.a)
    curtailed = float(np.clip(stationary, 0.0, user.eta_curtail * x_load))

    allocation = np.zeros(tau_e.shape[0])
    allocation[k_star] = x_load - curtailed
    return UserDecision(curtailed=curtailed, allocation=allocation)


def solve_elastic(load: ElasticLoadParams, tau: float, alpha: Optional[float] = None) -> float:
    """
    弹性负荷子问题

    最小化 τ·x − (αx − βx²)，解为 clamp((α − τ)/(2β), 0, x_max)

    Args:
        load: 弹性负荷参数
        tau: 所属 MEGP 对应载体的乘子
        alpha: 本时段效用系数，缺省使用参数值

    Returns:
        用量 x
    """
    a = load.alpha if alpha is None else alpha
    return float(np.clip((a - tau) / (2.0 * load.beta), 0.0, load.x_max))


def elastic_decision(load: ElasticLoadParams, tau_row: Sequence[float], alpha: Optional[float] = None) -> ElasticDecision:
    """按弹性负荷所属 MEGP 与载体取乘子并求解"""
    carrier = Carrier(load.carrier)
    x = solve_elastic(load, float(tau_row[carrier.index]), alpha)
    return ElasticDecision(megp=load.megp, carrier=carrier, x=x)
