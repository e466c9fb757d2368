# -*- coding: utf-8 -*-
"""
单时段决策 M(t)

MEGP 的储能充放、设备出力与交易，用户的削减与分配，弹性负荷的用量。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from common.enums import Carrier

from .park import CarrierVector, ParkParams


@dataclass
class MegpDecision:
    """单个 MEGP 的决策切片（MWh）"""

    c_ke: float = 0.0  # 电池充电
    d_ke: float = 0.0  # 电池放电
    c_kh: float = 0.0  # 储热
    d_kh: float = 0.0  # 放热
    g_chp: float = 0.0  # CHP 耗气
    g_b: float = 0.0  # 锅炉耗气
    e_import: float = 0.0  # 购电
    e_export: float = 0.0  # 售电
    g_import: float = 0.0  # 购气 = g_chp + g_b + 供气负荷
    r_spill: float = 0.0  # 弃可再生能源
    supply: CarrierVector = field(default_factory=CarrierVector)  # 声明的可用量 x_k

    @property
    def g_load(self) -> float:
        """供给气负荷的气量"""
        return self.g_import - self.g_chp - self.g_b

    def to_dict(self) -> Dict[str, float]:
        return {
            "c_ke": self.c_ke,
            "d_ke": self.d_ke,
            "c_kh": self.c_kh,
            "d_kh": self.d_kh,
            "g_chp": self.g_chp,
            "g_b": self.g_b,
            "e_import": self.e_import,
            "e_export": self.e_export,
            "g_import": self.g_import,
            "r_spill": self.r_spill,
            "x_e": self.supply.electricity,
            "x_h": self.supply.heat,
            "x_g": self.supply.gas,
        }


@dataclass
class UserDecision:
    """
    用户决策

    curtailed: 削减量 X_ir
    allocation: 各 MEGP 分配的电量，形状 (K,)，非供能 MEGP 为 0
    """

    curtailed: float
    allocation: np.ndarray

    def __post_init__(self):
        self.allocation = np.asarray(self.allocation, dtype=float)

    @property
    def served(self) -> float:
        return float(self.allocation.sum())


@dataclass
class ElasticDecision:
    """弹性负荷用量"""

    megp: int
    carrier: Carrier
    x: float


@dataclass
class SlotDecision:
    """完整的时段决策"""

    megps: List[MegpDecision]
    users: List[UserDecision]
    elastic: List[ElasticDecision]

    @classmethod
    def zeros(cls, park: ParkParams) -> "SlotDecision":
        """全零决策"""
        return cls(
            megps=[MegpDecision() for _ in park.megps],
            users=[UserDecision(0.0, np.zeros(park.n_megp)) for _ in park.users],
            elastic=[ElasticDecision(q.megp, q.carrier, 0.0) for q in park.elastic_loads],
        )

    @property
    def n_megp(self) -> int:
        return len(self.megps)

    def supply_matrix(self) -> np.ndarray:
        """各 MEGP 声明的可用量，形状 (K, 3)"""
        if not self.megps:
            return np.zeros((0, 3))
        return np.vstack([m.supply.as_array() for m in self.megps])

    def demand_matrix(self) -> np.ndarray:
        """
        各 MEGP 被分配的需求，形状 (K, 3)

        电：用户分配 + 电弹性负荷；热、气：对应载体的弹性负荷
        """
        demand = np.zeros((self.n_megp, 3))
        for user in self.users:
            demand[:, Carrier.ELECTRICITY.index] += user.allocation
        for load in self.elastic:
            demand[load.megp, load.carrier.index] += load.x
        return demand

    def total_curtailment(self) -> float:
        return float(sum(u.curtailed for u in self.users))

    def elastic_totals(self) -> np.ndarray:
        """按载体汇总的弹性负荷用量，形状 (3,)"""
        totals = np.zeros(3)
        for load in self.elastic:
            totals[load.carrier.index] += load.x
        return totals

    def to_dict(self) -> Dict[str, Any]:
        return {
            "megps": [m.to_dict() for m in self.megps],
            "users": [{"curtailed": u.curtailed, "allocation": u.allocation.tolist()} for u in self.users],
            "elastic": [{"megp": q.megp, "carrier": q.carrier.value, "x": q.x} for q in self.elastic],
        }
