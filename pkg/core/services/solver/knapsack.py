# -*- coding: utf-8 -*-
"""
连续背包修正

单一载体的供给量 y = base + Σ 方向·权重·变量，要求 0 ≤ y ≤ cap。
先按系数符号把每个变量置于箱约束端点，再按单位供给边际成本由低到高
调整，直到 y 回到区间内。同等成本下先回撤已启用的变量，再按固定次序。
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

SUPPLY_TOL = 1e-12


@dataclass(frozen=True)
class Lever:
    """
    可调变量

    direction: +1 增加供给，−1 减少供给
    weight: 单位变量对应的供给量（锅炉为 η_bg，其余为 1）
    coeff: 单位变量的目标系数
    upper: 变量上界（下界恒为 0）
    rank: 同成本时的次序（CHP, 锅炉, 放能, 购入, 可再生, 充能, 售出, 气负荷）
    """

    name: str
    direction: int
    weight: float
    coeff: float
    upper: float
    rank: int


@dataclass(frozen=True)
class Move:
    """一次调整：沿某变量移动，最多改变 capacity 的供给量"""

    lever: Lever
    unwind: bool  # True 表示把变量拉回 0
    unit_cost: float  # 每单位供给的目标增量
    capacity: float  # 可改变的供给量


@dataclass
class KnapsackResult:
    values: Dict[str, float]
    supply: float
    cost: float
    feasible: bool


def bang_bang(levers: List[Lever]) -> Dict[str, float]:
    """系数为负取上界，否则取 0"""
    return {lv.name: (lv.upper if lv.coeff < 0 and lv.upper > 0 else 0.0) for lv in levers}


def lever_supply(levers: List[Lever], values: Dict[str, float]) -> float:
    return sum(lv.direction * lv.weight * values[lv.name] for lv in levers)


def _sort_key(move: Move) -> Tuple[float, int, int]:
    return (move.unit_cost, 0 if move.unwind else 1, move.lever.rank)


def plan_moves(levers: List[Lever], values: Dict[str, float], raise_supply: bool) -> List[Move]:
    """
    生成调整序列

    Args:
        levers: 可调变量
        values: 当前取值
        raise_supply: True 表示需要增加供给，False 表示需要减少

    Returns:
        按 (单位成本, 回撤优先, 次序) 排序的调整列表
    """
    moves: List[Move] = []
    for lv in levers:
        if lv.weight <= 0:
            continue
        value = values[lv.name]
        increases_var = (lv.direction > 0) == raise_supply
        if increases_var:
            room = lv.upper - value
            if room > 0:
                moves.append(Move(lv, False, lv.coeff / lv.weight, room * lv.weight))
        elif value > 0:
            moves.append(Move(lv, True, -lv.coeff / lv.weight, value * lv.weight))
    moves.sort(key=_sort_key)
    return moves


def cumulative_capacities(levers: List[Lever], raise_supply: bool) -> List[float]:
    """从端点解出发，各调整用尽时累计改变的供给量（含 0）"""
    moves = plan_moves(levers, bang_bang(levers), raise_supply)
    sums = [0.0]
    for move in moves:
        sums.append(sums[-1] + move.capacity)
    return sums


def _apply_moves(levers: List[Lever], values: Dict[str, float], need: float, raise_supply: bool) -> float:
    """按调整序列改变 need 的供给量，返回未能完成的部分"""
    for move in plan_moves(levers, values, raise_supply):
        if need <= SUPPLY_TOL:
            break
        lv = move.lever
        if move.capacity <= need:
            values[lv.name] = 0.0 if move.unwind else lv.upper
            need -= move.capacity
        else:
            delta = need / lv.weight
            values[lv.name] = values[lv.name] - delta if move.unwind else values[lv.name] + delta
            need = 0.0
    return need


def _result(base: float, levers: List[Lever], values: Dict[str, float], cap: float) -> KnapsackResult:
    supply = base + lever_supply(levers, values)
    cost = sum(lv.coeff * values[lv.name] for lv in levers)
    feasible = -1e-9 <= supply <= cap + 1e-9
    return KnapsackResult(values=values, supply=supply, cost=cost, feasible=feasible)


def solve_knapsack(base: float, levers: List[Lever], cap: float) -> KnapsackResult:
    """
    求解单载体的连续背包

    Args:
        base: 不可调的供给量
        levers: 可调变量
        cap: 供给上限 x_max

    Returns:
        KnapsackResult；无法回到 [0, cap] 时 feasible=False，取值为尽力调整后的结果
    """
    values = bang_bang(levers)
    supply = base + lever_supply(levers, values)

    if supply > cap + SUPPLY_TOL:
        _apply_moves(levers, values, supply - cap, raise_supply=False)
    elif supply < -SUPPLY_TOL:
        _apply_moves(levers, values, -supply, raise_supply=True)
    return _result(base, levers, values, cap)


def lowest_supply(levers: List[Lever]) -> Dict[str, float]:
    """供给最小的端点：减少供给的变量取上界，其余取 0"""
    return {lv.name: (lv.upper if lv.direction < 0 and lv.upper > 0 else 0.0) for lv in levers}


def solve_prox(base: float, levers: List[Lever], cap: float, target: float, penalty: float) -> KnapsackResult:
    """
    带二次惩罚的单载体问题

    最小化 Σ coeff·变量 + penalty/2·(target − 供给)²，供给限制在 [0, cap]。
    线性部分关于供给是分段线性凸函数，各段斜率即调整序列的单位成本；
    从最小供给出发沿序列前进，在第一个斜率不小于 penalty·(target − 供给) 的位置停下，
    再截断到可行区间。

    Args:
        base: 不可调的供给量
        levers: 可调变量
        cap: 供给上限 x_max
        target: 希望达到的供给（分配给该 MEGP 的需求）
        penalty: 惩罚系数，必须为正

    Returns:
        KnapsackResult；cost 只含线性部分
    """
    values = lowest_supply(levers)
    low = base + lever_supply(levers, values)
    moves = plan_moves(levers, values, raise_supply=True)

    supply = low
    for move in moves:
        stop = target - move.unit_cost / penalty
        if stop <= supply:
            break
        if stop < supply + move.capacity:
            supply = stop
            break
        supply += move.capacity

    high = low + sum(move.capacity for move in moves)
    lower, upper = max(low, 0.0), min(high, cap)
    if lower <= upper:
        supply = min(max(supply, lower), upper)
    else:
        supply = lower
    _apply_moves(levers, values, supply - low, raise_supply=True)
    return _result(base, levers, values, cap)
