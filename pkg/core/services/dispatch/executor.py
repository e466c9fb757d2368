# -*- coding: utf-8 -*-
"""
调度执行器

把内层循环给出的松弛调度落到真实储能动态上：
1. 截断充放电使储能保持在容量上下界内，并用电网/锅炉补回原供给
2. 平衡结算：让每个 MEGP 的实际供给等于分配给它的需求（不超过 x_max）
3. 供给不足时先在储能上下界内增加放能、提高 CHP，再依次压减弹性负荷、增加用户削减，剩余记为缺供
"""

import logging
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np

from common.enums import Carrier
from core.domain import (
    CarrierVector,
    MegpDecision,
    MegpParams,
    MegpState,
    ParkParams,
    SlotDecision,
    SlotExogenous,
    UserDecision,
    carrier_supply,
    initial_states,
    storage_step,
)

logger = logging.getLogger(__name__)

E, H, G = (c.index for c in Carrier.ordered())
BALANCE_TOL = 1e-9


@dataclass
class ProjectionResult:
    """储能截断结果"""

    decision: SlotDecision
    clipped_e: float  # 被截断的电池充放量
    clipped_h: float  # 被截断的储热充放量
    gap: np.ndarray  # 未能补回的供给差额，形状 (K, 3)


@dataclass
class SettlementResult:
    """平衡结算结果"""

    decision: SlotDecision
    adjustments: float  # 供给调整总量
    shed_elastic: float  # 压减的弹性负荷
    shed_curtail: float  # 额外增加的用户削减
    unserved: np.ndarray  # 缺供量，形状 (3,)
    infeasible: bool


@dataclass
class ExecutionResult:
    """单时段执行结果"""

    decision: SlotDecision
    states_before: List[MegpState]
    states_after: List[MegpState]
    clipped_e: float
    clipped_h: float
    throughput: float  # 充放电总量
    adjustments: float
    shed_elastic: float
    shed_curtail: float
    unserved: np.ndarray = field(default_factory=lambda: np.zeros(3))
    infeasible: bool = False


def _copy_decision(d: SlotDecision) -> SlotDecision:
    return SlotDecision(
        megps=[replace(m, supply=CarrierVector.from_array(m.supply.as_array())) for m in d.megps],
        users=[UserDecision(u.curtailed, u.allocation.copy()) for u in d.users],
        elastic=[replace(q) for q in d.elastic],
    )


class _TradeBook:
    """园区交易合计，用于计算某个 MEGP 的剩余交易空间"""

    def __init__(self, park: ParkParams, megps: List[MegpDecision]):
        self.park = park
        self.megps = megps

    def headroom(self, k: int, attr: str, limit: float) -> float:
        others = sum(getattr(m, attr) for j, m in enumerate(self.megps) if j != k)
        return max(0.0, limit - others - getattr(self.megps[k], attr))

    def import_room(self, k: int) -> float:
        return self.headroom(k, "e_import", self.park.e_max)

    def export_room(self, k: int) -> float:
        return self.headroom(k, "e_export", self.park.e_o_max)

    def gas_room(self, k: int) -> float:
        return self.headroom(k, "g_import", self.park.g_max)


class _Rebalancer:
    """
    单个 MEGP 的供给修正

    每一步只向可行方向移动一个变量，保持所有箱约束成立；
    已知储能状态时，充放电只在不越过容量上下界的范围内增加。
    """

    def __init__(
        self,
        params: MegpParams,
        renewable: float,
        md: MegpDecision,
        book: _TradeBook,
        k: int,
        state: Optional[MegpState] = None,
    ):
        self.p = params
        self.renewable = renewable
        self.md = md
        self.book = book
        self.k = k
        self.state = state

    def supply(self) -> np.ndarray:
        return carrier_supply(self.p, self.renewable, self.md)

    # === 储能、CHP 的剩余空间 ===

    def _discharge_room_e(self) -> float:
        md, p = self.md, self.p
        if self.state is None or md.c_ke > 0:
            return 0.0
        return max(0.0, min(p.d_ke_max, (self.state.b - p.b_min) * p.eta_dke) - md.d_ke)

    def _charge_room_e(self) -> float:
        md, p = self.md, self.p
        if self.state is None or md.d_ke > 0:
            return 0.0
        return max(0.0, min(p.c_ke_max, (p.b_max - self.state.b) / p.eta_cke) - md.c_ke)

    def _discharge_room_h(self) -> float:
        md, p = self.md, self.p
        if self.state is None or md.c_kh > 0:
            return 0.0
        return max(0.0, min(p.d_kh_max, (self.state.w - p.w_min) * p.eta_dkh) - md.d_kh)

    def _charge_room_h(self) -> float:
        md, p = self.md, self.p
        if self.state is None or md.d_kh > 0:
            return 0.0
        return max(0.0, min(p.c_kh_max, (p.w_max - self.state.w) / p.eta_ckh) - md.c_kh)

    def _chp_room(self) -> float:
        return max(0.0, min(self.p.chp_gas_max - self.md.g_chp, self.book.gas_room(self.k)))

    def _raise_chp(self, delta: float) -> None:
        self.md.g_chp += delta
        self.md.g_import += delta

    # === 各载体 ===

    def _heat(self, need: float) -> None:
        md, p = self.md, self.p
        if need > BALANCE_TOL:
            room = min(p.boiler_gas_max - md.g_b, self.book.gas_room(self.k))
            delta = max(0.0, min(need / p.eta_bg, room))
            md.g_b += delta
            md.g_import += delta
            need -= delta * p.eta_bg
            delta = min(need, md.c_kh)
            md.c_kh -= delta
            need -= delta
            delta = min(need, self._discharge_room_h())
            md.d_kh += delta
            need -= delta
            # CHP 多发的电由随后的电力修正吸收
            absorb_e = md.e_import + (self.renewable - md.r_spill) + self.book.export_room(self.k) + md.d_ke
            absorb_e += self._charge_room_e()
            delta = max(0.0, min(need / p.eta_hg, self._chp_room(), absorb_e / p.eta_pg))
            self._raise_chp(delta)
        elif need < -BALANCE_TOL:
            surplus = -need
            delta = min(surplus / p.eta_bg, md.g_b)
            md.g_b -= delta
            md.g_import -= delta
            surplus -= delta * p.eta_bg
            delta = min(surplus, md.d_kh)
            md.d_kh -= delta
            surplus -= delta
            delta = min(surplus, self._charge_room_h())
            md.c_kh += delta
            surplus -= delta
            delta = min(surplus / p.eta_hg, md.g_chp)
            md.g_chp -= delta
            md.g_import -= delta

    def _electricity(self, need: float) -> None:
        md, p = self.md, self.p
        if need > BALANCE_TOL:
            for attr in ("r_spill", "e_export"):
                delta = min(need, getattr(md, attr))
                setattr(md, attr, getattr(md, attr) - delta)
                need -= delta
            delta = min(need, self.book.import_room(self.k))
            md.e_import += delta
            need -= delta
            delta = min(need, md.c_ke)
            md.c_ke -= delta
            need -= delta
            delta = min(need, self._discharge_room_e())
            md.d_ke += delta
            need -= delta
            # CHP 多产的热由随后的热力修正吸收
            absorb_h = md.g_b * p.eta_bg + md.d_kh + self._charge_room_h()
            delta = max(0.0, min(need / p.eta_pg, self._chp_room(), absorb_h / p.eta_hg))
            self._raise_chp(delta)
        elif need < -BALANCE_TOL:
            surplus = -need
            delta = min(surplus, md.e_import)
            md.e_import -= delta
            surplus -= delta
            delta = min(surplus, self.renewable - md.r_spill)
            md.r_spill += delta
            surplus -= delta
            delta = min(surplus, self.book.export_room(self.k))
            md.e_export += delta
            surplus -= delta
            delta = min(surplus, md.d_ke)
            md.d_ke -= delta
            surplus -= delta
            delta = min(surplus, self._charge_room_e())
            md.c_ke += delta
            surplus -= delta
            delta = min(surplus / p.eta_pg, md.g_chp)
            md.g_chp -= delta
            md.g_import -= delta

    def _gas(self, need: float) -> None:
        md = self.md
        if need > BALANCE_TOL:
            md.g_import += min(need, self.book.gas_room(self.k))
        elif need < -BALANCE_TOL:
            md.g_import -= min(-need, md.g_load)

    def restore(self, target: np.ndarray) -> np.ndarray:
        """
        向目标供给修正

        Returns:
            目标减去修正后供给的差额 (电, 热, 气)
        """
        self._heat(target[H] - self.supply()[H])
        self._electricity(target[E] - self.supply()[E])
        # 降低 CHP 会同时减少产热
        self._heat(target[H] - self.supply()[H])
        self._gas(target[G] - self.supply()[G])
        self._clean()
        supply = self.supply()
        self.md.supply = CarrierVector.from_array(supply)
        return target - supply

    def _clean(self) -> None:
        md = self.md
        for attr in ("c_ke", "d_ke", "c_kh", "d_kh", "g_chp", "g_b", "e_import", "e_export", "r_spill"):
            value = getattr(md, attr)
            if value < 0.0:
                setattr(md, attr, 0.0)
        md.g_import = max(md.g_import, md.g_chp + md.g_b)


def _clip_rates(state: MegpState, params: MegpParams, md: MegpDecision) -> Tuple[float, float]:
    """把充放电截断到储能上下界允许的范围，返回 (电截断量, 热截断量)"""
    before_e = md.c_ke + md.d_ke
    before_h = md.c_kh + md.d_kh

    b_next = state.b + params.eta_cke * md.c_ke - md.d_ke / params.eta_dke
    if b_next > params.b_max:
        md.c_ke = min(md.c_ke, max(0.0, (params.b_max - state.b + md.d_ke / params.eta_dke) / params.eta_cke))
    elif b_next < params.b_min:
        md.d_ke = min(md.d_ke, max(0.0, (state.b - params.b_min + params.eta_cke * md.c_ke) * params.eta_dke))

    w_next = state.w + params.eta_ckh * md.c_kh - md.d_kh / params.eta_dkh
    if w_next > params.w_max:
        md.c_kh = min(md.c_kh, max(0.0, (params.w_max - state.w + md.d_kh / params.eta_dkh) / params.eta_ckh))
    elif w_next < params.w_min:
        md.d_kh = min(md.d_kh, max(0.0, (state.w - params.w_min + params.eta_ckh * md.c_kh) * params.eta_dkh))

    return before_e - (md.c_ke + md.d_ke), before_h - (md.c_kh + md.d_kh)


def project_storage(
    states: List[MegpState], park: ParkParams, exo: SlotExogenous, d: SlotDecision
) -> ProjectionResult:
    """
    储能可行性投影

    截断充放电使 storage_step 的结果落在 [B_min, B_max] 与 [W_min, W_max] 内，
    截断造成的供给变化由购售电、锅炉等补回，保持原声明供给。

    Args:
        states: 各 MEGP 当前储能状态
        park: 园区参数
        exo: 时段外生量
        d: 松弛调度

    Returns:
        ProjectionResult（不修改输入决策）
    """
    out = _copy_decision(d)
    book = _TradeBook(park, out.megps)
    clipped_e = clipped_h = 0.0
    gap = np.zeros((park.n_megp, 3))
    for k, (params, state, md) in enumerate(zip(park.megps, states, out.megps)):
        target = md.supply.as_array()
        ce, ch = _clip_rates(state, params, md)
        clipped_e += ce
        clipped_h += ch
        if ce > 0 or ch > 0:
            gap[k] = _Rebalancer(params, float(exo.renewables[k]), md, book, k, state).restore(target)
            logger.debug(f"t={exo.t}: MEGP {k + 1} 储能截断 电 {ce:.4f} 热 {ch:.4f}")
    return ProjectionResult(decision=out, clipped_e=clipped_e, clipped_h=clipped_h, gap=gap)


def _shed(park: ParkParams, exo: SlotExogenous, d: SlotDecision, k: int, carrier: Carrier, amount: float):
    """压减分配给 MEGP k 的需求，返回 (压减弹性负荷, 增加削减, 剩余量)"""
    shed_el = shed_cut = 0.0
    for q, ed in enumerate(d.elastic):
        if amount <= BALANCE_TOL:
            break
        if ed.megp == k and ed.carrier == carrier and ed.x > 0:
            delta = min(amount, ed.x)
            ed.x -= delta
            shed_el += delta
            amount -= delta
    if carrier == Carrier.ELECTRICITY:
        for i, (user, ud) in enumerate(zip(park.users, d.users)):
            if amount <= BALANCE_TOL:
                break
            room = min(ud.allocation[k], user.eta_curtail * float(exo.il_loads[i]) - ud.curtailed)
            if room > 0:
                delta = min(amount, room)
                ud.allocation[k] -= delta
                ud.curtailed += delta
                shed_cut += delta
                amount -= delta
    return shed_el, shed_cut, max(amount, 0.0)


def settle_allocation(
    park: ParkParams, exo: SlotExogenous, d: SlotDecision, states: Optional[List[MegpState]] = None
) -> SettlementResult:
    """
    平衡结算

    让每个 MEGP 每个载体的实际供给等于分配需求（不超过 x_max）。
    调整顺序：热（锅炉、储热、放热、CHP），电（弃能、售电、购电、充放、CHP），气（购气）；
    园区交易上限按 MEGP 下标顺序占用。供给仍不足时才压减负荷。

    Args:
        park: 园区参数
        exo: 时段外生量
        d: 待结算决策
        states: 时段初储能状态，给出时允许在容量上下界内增加充放

    Returns:
        SettlementResult（不修改输入决策）
    """
    out = _copy_decision(d)
    book = _TradeBook(park, out.megps)
    adjustments = shed_el = shed_cut = 0.0
    unserved = np.zeros(3)
    infeasible = False

    demand = out.demand_matrix()
    for k, (params, md) in enumerate(zip(park.megps, out.megps)):
        before = md.supply.as_array()
        target = np.minimum(demand[k], params.x_max.as_array())
        state = states[k] if states is not None else None
        _Rebalancer(params, float(exo.renewables[k]), md, book, k, state).restore(target)
        adjustments += float(np.abs(md.supply.as_array() - before).sum())

        for carrier in Carrier.ordered():
            c = carrier.index
            excess = demand[k, c] - md.supply[c]
            if excess > BALANCE_TOL:
                el, cut, left = _shed(park, exo, out, k, carrier, excess)
                shed_el += el
                shed_cut += cut
                if left > BALANCE_TOL:
                    unserved[c] += left
                    infeasible = True
            elif excess < -BALANCE_TOL:
                # 供给无法降到需求以下
                infeasible = True

    if infeasible:
        logger.warning(f"t={exo.t}: 平衡结算后仍有缺口，缺供 {unserved.round(6).tolist()}")
    return SettlementResult(
        decision=out,
        adjustments=adjustments,
        shed_elastic=shed_el,
        shed_curtail=shed_cut,
        unserved=unserved,
        infeasible=infeasible,
    )


class DispatchExecutor:
    """
    调度执行器

    持有各 MEGP 的储能状态，逐时段执行：截断投影 → 平衡结算 → 储能状态转移
    """

    def __init__(self, park: ParkParams, states: Optional[List[MegpState]] = None):
        """
        初始化执行器

        Args:
            park: 园区参数
            states: 初始储能状态，缺省取各 MEGP 的初始水平
        """
        self.park = park
        self._initial = list(states) if states is not None else initial_states(park)
        self.states: List[MegpState] = list(self._initial)

    def reset(self) -> None:
        """恢复初始储能状态"""
        self.states = list(self._initial)

    def execute(self, exo: SlotExogenous, decision: SlotDecision) -> ExecutionResult:
        """
        执行一个时段

        Args:
            exo: 时段外生量
            decision: 内层循环给出的调度

        Returns:
            ExecutionResult
        """
        projection = project_storage(self.states, self.park, exo, decision)
        settlement = settle_allocation(self.park, exo, projection.decision, self.states)
        final = settlement.decision

        before = list(self.states)
        after = []
        throughput = 0.0
        for params, state, md in zip(self.park.megps, before, final.megps):
            nxt = storage_step(state, params, md.c_ke, md.d_ke, md.c_kh, md.d_kh)
            # 浮点误差内贴回边界
            after.append(
                MegpState(
                    b=float(np.clip(nxt.b, params.b_min, params.b_max)),
                    w=float(np.clip(nxt.w, params.w_min, params.w_max)),
                )
            )
            throughput += md.c_ke + md.d_ke + md.c_kh + md.d_kh
        self.states = after

        return ExecutionResult(
            decision=final,
            states_before=before,
            states_after=after,
            clipped_e=projection.clipped_e,
            clipped_h=projection.clipped_h,
            throughput=throughput,
            adjustments=settlement.adjustments,
            shed_elastic=settlement.shed_elastic,
            shed_curtail=settlement.shed_curtail,
            unserved=settlement.unserved,
            infeasible=settlement.infeasible,
        )
