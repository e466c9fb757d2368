# -*- coding: utf-8 -*-
"""
===================================
网格穷举对照求解器（仅用于测试）
===================================

职责：
1. 在步长为 grid_step 的网格上穷举所有决策，返回拉格朗日函数最小的网格点
2. 给出一步网格误差的 Lipschitz 上界，用于和精确解对比

实现要点：
- 充放、购售以净值入网格：充放系数互为相反数，购售在 p_o ≤ p_e 时
  不重叠拆分最优，两者目标与拆分前相同
- 固定 CHP 与锅炉耗气后，电、热、气三块约束互不相关，分块取最小值
  即为这部分网格上的穷举最小值
- 园区交易上限通过按 (购电, 售电, 购气) 合计的动态规划在 MEGP 间精确处理
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from common.enums import Carrier
from common.exceptions import InfeasibleError, InstanceTooLargeError
from core.domain import (
    CarrierVector,
    ElasticDecision,
    MegpDecision,
    MegpParams,
    ParkParams,
    SlotDecision,
    SlotExogenous,
    UserDecision,
    carrier_supply,
)

from .marginal import MegpCosts, MultiplierView, megp_costs
from .subproblem import lagrangian_value

logger = logging.getLogger(__name__)

DEFAULT_MAX_POINTS = 10**8
FEAS_TOL = 1e-9
KEY_DIGITS = 9


def grid_axis(lower: float, upper: float, step: float) -> np.ndarray:
    """[lower, upper] 上的网格点，包含两个端点以及区间内的 0"""
    if upper < lower:
        return np.zeros(0)
    n = int(np.floor((upper - lower) / step + 1e-9))
    points = lower + step * np.arange(n + 1)
    points = np.append(points, upper)
    if lower < 0.0 < upper:
        points = np.append(points, 0.0)
    return np.unique(np.round(points, 12))


@dataclass
class _MegpGrid:
    g_chp: np.ndarray
    g_b: np.ndarray
    net_e: np.ndarray
    net_h: np.ndarray
    trade: np.ndarray
    spill: np.ndarray
    g_load: np.ndarray

    @property
    def size(self) -> int:
        return int(
            self.g_chp.size
            * self.g_b.size
            * self.net_e.size
            * self.net_h.size
            * self.trade.size
            * self.spill.size
            * self.g_load.size
        )


# (目标值, g_chp, g_b, net_e, spill, trade, net_h, g_load)
_Choice = Tuple[float, float, float, float, float, float, float, float]
_Key = Tuple[float, float, float]


def _megp_grid(park: ParkParams, params: MegpParams, renewable: float, step: float) -> _MegpGrid:
    return _MegpGrid(
        g_chp=grid_axis(0.0, min(params.chp_gas_max, park.g_max), step),
        g_b=grid_axis(0.0, min(params.boiler_gas_max, park.g_max), step),
        net_e=grid_axis(-params.d_ke_max, params.c_ke_max, step),
        net_h=grid_axis(-params.d_kh_max, params.c_kh_max, step),
        trade=grid_axis(-park.e_o_max, park.e_max, step),
        spill=grid_axis(0.0, renewable, step),
        g_load=grid_axis(0.0, params.x_max.gas, step),
    )


def _trade_cost(costs: MegpCosts, trade: np.ndarray) -> np.ndarray:
    return np.where(trade >= 0, costs.import_e * trade, -costs.export_e * trade)


def _megp_table(
    params: MegpParams, costs: MegpCosts, renewable: float, grid: _MegpGrid, gas_cap: float
) -> Dict[_Key, _Choice]:
    """
    单个 MEGP 的分块穷举

    Returns:
        {(购电, 售电, 购气): 该合计下目标最小的网格点}
    """
    cap_e = params.x_max.electricity
    cap_h = params.x_max.heat
    table: Dict[_Key, _Choice] = {}

    # 电块网格 (net_e, spill, trade)
    ne, sp, tr = np.meshgrid(grid.net_e, grid.spill, grid.trade, indexing="ij")
    e_cost = costs.charge_e * ne + costs.spill * sp + _trade_cost(costs, tr)
    gas_load_cost = costs.gas_load * grid.g_load

    for g in grid.g_chp:
        e_supply = params.eta_pg * g - ne + renewable - sp + tr
        e_ok = (e_supply >= -FEAS_TOL) & (e_supply <= cap_e + FEAS_TOL)
        masked = np.where(e_ok, e_cost, np.inf).reshape(-1, grid.trade.size)
        e_best_idx = np.argmin(masked, axis=0)
        e_best = masked[e_best_idx, np.arange(grid.trade.size)]
        if not np.isfinite(e_best).any():
            continue

        for gb in grid.g_b:
            h_supply = params.eta_hg * g + params.eta_bg * gb - grid.net_h
            h_ok = (h_supply >= -FEAS_TOL) & (h_supply <= cap_h + FEAS_TOL)
            if not h_ok.any():
                continue
            h_cost = np.where(h_ok, costs.charge_h * grid.net_h, np.inf)
            h_idx = int(np.argmin(h_cost))
            base = costs.chp * g + costs.boiler * gb + h_cost[h_idx]

            for j, gl in enumerate(grid.g_load):
                gas_total = g + gb + gl
                if gas_total > gas_cap + FEAS_TOL:
                    break
                for ti, t in enumerate(grid.trade):
                    if not np.isfinite(e_best[ti]):
                        continue
                    value = base + e_best[ti] + gas_load_cost[j]
                    key = (
                        round(max(t, 0.0), KEY_DIGITS),
                        round(max(-t, 0.0), KEY_DIGITS),
                        round(gas_total, KEY_DIGITS),
                    )
                    current = table.get(key)
                    if current is None or value < current[0]:
                        flat = int(e_best_idx[ti])
                        n_idx, s_idx = divmod(flat, grid.spill.size)
                        table[key] = (
                            float(value),
                            float(g),
                            float(gb),
                            float(grid.net_e[n_idx]),
                            float(grid.spill[s_idx]),
                            float(t),
                            float(grid.net_h[h_idx]),
                            float(gl),
                        )
    return table


def _combine(park: ParkParams, tables: List[Dict[_Key, _Choice]]) -> List[_Choice]:
    """按园区交易合计做动态规划，返回各 MEGP 选中的网格点"""
    states: Dict[_Key, Tuple[float, List[_Choice]]] = {(0.0, 0.0, 0.0): (0.0, [])}
    for table in tables:
        nxt: Dict[_Key, Tuple[float, List[_Choice]]] = {}
        for (imp, exp, gas), (value, picks) in states.items():
            for (k_imp, k_exp, k_gas), choice in table.items():
                s_imp, s_exp, s_gas = imp + k_imp, exp + k_exp, gas + k_gas
                if s_imp > park.e_max + FEAS_TOL or s_exp > park.e_o_max + FEAS_TOL or s_gas > park.g_max + FEAS_TOL:
                    continue
                key = (round(s_imp, KEY_DIGITS), round(s_exp, KEY_DIGITS), round(s_gas, KEY_DIGITS))
                total = value + choice[0]
                if key not in nxt or total < nxt[key][0]:
                    nxt[key] = (total, picks + [choice])
        states = nxt
        if not states:
            raise InfeasibleError("网格上不存在满足园区交易上限的决策", "trade_caps")
    best = min(states.values(), key=lambda item: item[0])
    return best[1]


def _assemble_megp(params: MegpParams, renewable: float, choice: _Choice) -> MegpDecision:
    _, g, gb, net_e, spill, trade, net_h, gl = choice
    md = MegpDecision(
        c_ke=max(net_e, 0.0),
        d_ke=max(-net_e, 0.0),
        c_kh=max(net_h, 0.0),
        d_kh=max(-net_h, 0.0),
        g_chp=g,
        g_b=gb,
        e_import=max(trade, 0.0),
        e_export=max(-trade, 0.0),
        g_import=g + gb + gl,
        r_spill=spill,
    )
    md.supply = CarrierVector.from_array(carrier_supply(params, renewable, md))
    return md


def _user_grid(park: ParkParams, exo: SlotExogenous, mult: MultiplierView, step: float) -> List[UserDecision]:
    decisions = []
    for i, user in enumerate(park.users):
        x_load = float(exo.il_loads[i])
        axis = grid_axis(0.0, user.eta_curtail * x_load, step)
        best = None
        for k in sorted(user.suppliers):
            tau = float(mult.tau[k, Carrier.ELECTRICITY.index])
            values = 2.0 * user.a * axis**2 - user.w * (x_load - axis) + tau * (x_load - axis)
            idx = int(np.argmin(values))
            if best is None or values[idx] < best[0]:
                best = (float(values[idx]), k, float(axis[idx]))
        _, k_star, curtailed = best
        allocation = np.zeros(park.n_megp)
        allocation[k_star] = x_load - curtailed
        decisions.append(UserDecision(curtailed=curtailed, allocation=allocation))
    return decisions


def _elastic_grid(park: ParkParams, exo: SlotExogenous, mult: MultiplierView, step: float) -> List[ElasticDecision]:
    decisions = []
    for q, load in enumerate(park.elastic_loads):
        axis = grid_axis(0.0, load.x_max, step)
        tau = float(mult.tau[load.megp, load.carrier.index])
        alpha = exo.alpha_for(q, load.alpha)
        values = tau * axis - (alpha * axis - load.beta * axis**2)
        decisions.append(ElasticDecision(load.megp, load.carrier, float(axis[int(np.argmin(values))])))
    return decisions


def grid_size(park: ParkParams, exo: SlotExogenous, grid_step: float) -> int:
    """需要穷举的网格点数（各 MEGP 完整网格之和加用户、弹性负荷网格）"""
    total = 0
    for k, params in enumerate(park.megps):
        total += _megp_grid(park, params, float(exo.renewables[k]), grid_step).size
    for i, user in enumerate(park.users):
        total += grid_axis(0.0, user.eta_curtail * float(exo.il_loads[i]), grid_step).size * len(user.suppliers)
    for load in park.elastic_loads:
        total += grid_axis(0.0, load.x_max, grid_step).size
    return total


def oracle_subproblem(
    park: ParkParams,
    exo: SlotExogenous,
    mult: MultiplierView,
    grid_step: float = 0.05,
    max_points: int = DEFAULT_MAX_POINTS,
) -> Tuple[float, SlotDecision]:
    """
    网格穷举求解微时段子问题

    Args:
        park: 园区参数
        exo: 时段外生量
        mult: 乘子
        grid_step: 网格步长（MWh）
        max_points: 网格点数上限

    Returns:
        (拉格朗日函数值, 最优网格点对应的决策)

    Raises:
        InstanceTooLargeError: 网格点数超过上限
        InfeasibleError: 网格上无可行点
    """
    size = grid_size(park, exo, grid_step)
    if size > max_points:
        raise InstanceTooLargeError(f"网格点数 {size} 超过上限 {max_points}")
    logger.debug(f"网格穷举：步长 {grid_step}，共 {size} 点")

    tables = []
    for k, params in enumerate(park.megps):
        renewable = float(exo.renewables[k])
        grid = _megp_grid(park, params, renewable, grid_step)
        costs = megp_costs(params, exo, mult, k)
        tables.append(_megp_table(params, costs, renewable, grid, park.g_max))

    picks = _combine(park, tables)
    megps = [
        _assemble_megp(params, float(exo.renewables[k]), picks[k]) for k, params in enumerate(park.megps)
    ]
    decision = SlotDecision(
        megps=megps,
        users=_user_grid(park, exo, mult, grid_step),
        elastic=_elastic_grid(park, exo, mult, grid_step),
    )
    return lagrangian_value(park, exo, mult, decision), decision


def lipschitz_bound(park: ParkParams, exo: SlotExogenous, mult: MultiplierView) -> float:
    """
    目标对各决策变量的 Lipschitz 常数之和

    MEGP 部分为各线性系数绝对值之和，用户与弹性负荷取二次项在可行区间上的导数上界。
    """
    total = 0.0
    for k, params in enumerate(park.megps):
        c = megp_costs(params, exo, mult, k)
        total += (
            abs(c.chp)
            + abs(c.boiler)
            + abs(c.charge_e)
            + abs(c.charge_h)
            + max(abs(c.import_e), abs(c.export_e))
            + abs(c.spill)
            + abs(c.gas_load)
        )
    tau_e = mult.tau[:, Carrier.ELECTRICITY.index]
    for i, user in enumerate(park.users):
        tau_max = max(abs(float(tau_e[k])) for k in user.suppliers)
        total += tau_max + user.w + 4.0 * user.a * user.eta_curtail * float(exo.il_loads[i])
    for q, load in enumerate(park.elastic_loads):
        tau = abs(float(mult.tau[load.megp, load.carrier.index]))
        total += tau + abs(exo.alpha_for(q, load.alpha)) + 2.0 * load.beta * load.x_max
    return total
