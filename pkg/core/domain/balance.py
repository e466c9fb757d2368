# -*- coding: utf-8 -*-
"""
能量平衡

由设备、可再生能源、储能与交易推出每个 MEGP 的载体供给量，并计算
声明可用量与之的差值。
"""

import numpy as np

from .decision import MegpDecision, SlotDecision
from .exogenous import SlotExogenous
from .park import MegpParams, ParkParams


def carrier_supply(params: MegpParams, renewable: float, md: MegpDecision) -> np.ndarray:
    """
    MEGP 的载体供给量 (电, 热, 气)

    电 = η_pg·G_chp + D_ke − C_ke + (R − 弃能) + 购电 − 售电
    热 = η_hg·G_chp + η_bg·G_b + D_kh − C_kh
    气 = 购气 − G_chp − G_b
    """
    e = params.eta_pg * md.g_chp + md.d_ke - md.c_ke + (renewable - md.r_spill) + md.e_import - md.e_export
    h = params.eta_hg * md.g_chp + params.eta_bg * md.g_b + md.d_kh - md.c_kh
    g = md.g_import - md.g_chp - md.g_b
    return np.array([e, h, g], dtype=float)


def balance_residual(park: ParkParams, exo: SlotExogenous, d: SlotDecision) -> np.ndarray:
    """
    平衡残差

    Returns:
        形状 (K, 3)，第 k 行为 x_k 减去由设备推出的供给量；全零表示平衡
    """
    residual = np.zeros((park.n_megp, 3))
    for k, (params, md) in enumerate(zip(park.megps, d.megps)):
        residual[k] = md.supply.as_array() - carrier_supply(params, float(exo.renewables[k]), md)
    return residual


def supply_gap(park: ParkParams, exo: SlotExogenous, d: SlotDecision) -> np.ndarray:
    """
    分配需求减去由设备推出的供给

    Returns:
        形状 (K, 3)；结算后未满足的需求（缺供）表现为正值
    """
    gap = d.demand_matrix()
    for k, (params, md) in enumerate(zip(park.megps, d.megps)):
        gap[k] -= carrier_supply(params, float(exo.renewables[k]), md)
    return gap
