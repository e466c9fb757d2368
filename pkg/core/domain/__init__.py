# -*- coding: utf-8 -*-
"""
领域模型

园区参数、外生量、决策、设备模型与成本/平衡计算
"""

from .balance import balance_residual, carrier_supply, supply_gap
from .decision import ElasticDecision, MegpDecision, SlotDecision, UserDecision
from .devices import boiler_output, chp_output, storage_limits, storage_step, with_storage_limits
from .economics import incentive_price, optimal_curtailment, slot_cost
from .exogenous import SlotExogenous
from .park import CarrierVector, ElasticLoadParams, MegpParams, ParkParams, TradeCaps, UserParams
from .state import MegpState, initial_states
from .traces import TraceSet

__all__ = [
    # 参数
    "CarrierVector",
    "MegpParams",
    "UserParams",
    "ElasticLoadParams",
    "ParkParams",
    "TradeCaps",
    # 状态与外生量
    "MegpState",
    "initial_states",
    "SlotExogenous",
    "TraceSet",
    # 决策
    "MegpDecision",
    "UserDecision",
    "ElasticDecision",
    "SlotDecision",
    # 设备与经济
    "storage_step",
    "chp_output",
    "boiler_output",
    "optimal_curtailment",
    "incentive_price",
    "slot_cost",
    "carrier_supply",
    "balance_residual",
    "supply_gap",
    "storage_limits",
    "with_storage_limits",
]
