# -*- coding: utf-8 -*-
"""
园区参数领域模型

多能源发电站（MEGP）、工厂用户、弹性负荷以及园区交易上限。
能量单位均为 MWh/时段，价格单位为 ¥/kWh。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

import numpy as np

from common.enums import Carrier
from common.exceptions import ValidationError
from common.utils.validators import check_efficiency, check_non_negative, check_positive


@dataclass
class CarrierVector:
    """按能源载体（电/热/气）索引的三元量"""

    electricity: float = 0.0
    heat: float = 0.0
    gas: float = 0.0

    def __getitem__(self, key: Union[Carrier, int]) -> float:
        index = key.index if isinstance(key, Carrier) else int(key)
        return (self.electricity, self.heat, self.gas)[index]

    def as_array(self) -> np.ndarray:
        """转换为长度为 3 的数组（电、热、气顺序）"""
        return np.array([self.electricity, self.heat, self.gas], dtype=float)

    @classmethod
    def from_array(cls, values) -> "CarrierVector":
        arr = np.asarray(values, dtype=float)
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))

    @classmethod
    def from_dict(cls, data: Dict[str, float]) -> "CarrierVector":
        """从 {"electricity": .., "heat": .., "gas": ..} 字典构造，缺省为 0"""
        values = {c: 0.0 for c in Carrier.ordered()}
        for key, value in data.items():
            values[Carrier.from_str(key)] = float(value)
        return cls(values[Carrier.ELECTRICITY], values[Carrier.HEAT], values[Carrier.GAS])

    def to_dict(self) -> Dict[str, float]:
        return {"electricity": self.electricity, "heat": self.heat, "gas": self.gas}


@dataclass
class TradeCaps:
    """单个 MEGP 可用的交易上限（购电、售电、购气）"""

    e_import: float
    e_export: float
    g_import: float


@dataclass
class MegpParams:
    """
    多能源发电站参数

    包含储能（电池、储热水罐）、热电联产（CHP）、燃气锅炉，以及
    各载体的可用量上限 x_max。
    """

    # 储能效率
    eta_cke: float = 0.98
    eta_dke: float = 0.98
    eta_ckh: float = 0.98
    eta_dkh: float = 0.98

    # 转换效率
    eta_pg: float = 0.35  # CHP 发电效率
    eta_hg: float = 0.35  # CHP 产热效率
    eta_bg: float = 0.80  # 锅炉效率

    # 储能容量（MWh）
    b_min: float = 0.0
    b_max: float = 4.0
    w_min: float = 0.0
    w_max: float = 4.0

    # 充放速率上限（MWh/时段）
    c_ke_max: float = 1.0
    d_ke_max: float = 1.0
    c_kh_max: float = 1.0
    d_kh_max: float = 1.0

    # 设备出力上限（MWh/时段）
    e_chp_max: float = 2.0
    h_chp_max: float = 2.0
    h_b_max: float = 3.0

    x_max: CarrierVector = field(default_factory=lambda: CarrierVector(10.0, 10.0, 10.0))

    name: str = "MEGP"
    b_init: Optional[float] = None  # 缺省为容量的 50%
    w_init: Optional[float] = None

    @property
    def chp_gas_max(self) -> float:
        """CHP 耗气上限，同时受电、热出力上限约束"""
        return min(self.e_chp_max / self.eta_pg, self.h_chp_max / self.eta_hg)

    @property
    def boiler_gas_max(self) -> float:
        """锅炉耗气上限"""
        return self.h_b_max / self.eta_bg

    def initial_levels(self) -> tuple:
        """初始 (B, W)，未配置时取最大容量的一半"""
        b = self.b_init if self.b_init is not None else 0.5 * self.b_max
        w = self.w_init if self.w_init is not None else 0.5 * self.w_max
        return b, w

    def validate(self) -> List[str]:
        """
        校验参数

        Returns:
            违规描述列表，空列表表示合法
        """
        violations: List[str] = []
        prefix = self.name
        for attr in ("eta_cke", "eta_dke", "eta_ckh", "eta_dkh", "eta_pg", "eta_hg", "eta_bg"):
            check_efficiency(f"{prefix}.{attr}", getattr(self, attr), violations)
        for attr in (
            "b_min",
            "w_min",
            "c_ke_max",
            "d_ke_max",
            "c_kh_max",
            "d_kh_max",
            "e_chp_max",
            "h_chp_max",
            "h_b_max",
        ):
            check_non_negative(f"{prefix}.{attr}", getattr(self, attr), violations)
        if not self.b_min < self.b_max:
            violations.append(f"{prefix}: 要求 B_min < B_max，实际 {self.b_min} >= {self.b_max}")
        if not self.w_min < self.w_max:
            violations.append(f"{prefix}: 要求 W_min < W_max，实际 {self.w_min} >= {self.w_max}")
        for carrier in Carrier.ordered():
            check_non_negative(f"{prefix}.x_max.{carrier.value}", self.x_max[carrier], violations)
        if not violations:
            b, w = self.initial_levels()
            if not self.b_min <= b <= self.b_max:
                violations.append(f"{prefix}: 初始电量 {b} 不在 [{self.b_min}, {self.b_max}]")
            if not self.w_min <= w <= self.w_max:
                violations.append(f"{prefix}: 初始热量 {w} 不在 [{self.w_min}, {self.w_max}]")
        return violations

    def to_dict(self) -> Dict[str, Any]:
        data = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "x_max"}
        data["x_max"] = self.x_max.to_dict()
        return data


@dataclass
class UserParams:
    """
    工厂用户参数

    a: 不满意度系数（¥/kWh²）
    eta_curtail: 最大削减比例 η
    w: 已服务不可削减负荷的线性满意收益系数（¥/kWh）
    suppliers: 供能 MEGP 下标（0 起）
    """

    a: float = 1.0
    eta_curtail: float = 0.15
    w: float = 0.5
    suppliers: List[int] = field(default_factory=lambda: [0])
    name: str = "user"

    def validate(self, n_megp: Optional[int] = None) -> List[str]:
        violations: List[str] = []
        check_positive(f"{self.name}.a", self.a, violations)
        if not (0.0 <= self.eta_curtail <= 1.0):
            violations.append(f"{self.name}.eta_curtail={self.eta_curtail} 不在 [0, 1]")
        check_non_negative(f"{self.name}.w", self.w, violations)
        if not self.suppliers:
            violations.append(f"{self.name}: 供能 MEGP 集合为空")
        elif n_megp is not None:
            bad = [k for k in self.suppliers if not 0 <= k < n_megp]
            if bad:
                violations.append(f"{self.name}: 供能 MEGP 下标越界 {[k + 1 for k in bad]}")
        return violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "a": self.a,
            "eta_curtail": self.eta_curtail,
            "w": self.w,
            "suppliers": list(self.suppliers),
        }


@dataclass
class ElasticLoadParams:
    """
    弹性负荷参数

    效用 U(x) = alpha·x − beta·x²，x ∈ [0, x_max]
    """

    carrier: Carrier = Carrier.ELECTRICITY
    alpha: float = 1.0
    beta: float = 0.5
    x_max: float = 2.0
    megp: int = 0
    name: str = "EL"

    def utility(self, x: float, alpha: Optional[float] = None) -> float:
        a = self.alpha if alpha is None else alpha
        return a * x - self.beta * x * x

    def validate(self, n_megp: Optional[int] = None) -> List[str]:
        violations: List[str] = []
        check_positive(f"{self.name}.beta", self.beta, violations)
        check_non_negative(f"{self.name}.alpha", self.alpha, violations)
        check_non_negative(f"{self.name}.x_max", self.x_max, violations)
        if n_megp is not None and not 0 <= self.megp < n_megp:
            violations.append(f"{self.name}: 所属 MEGP 下标越界 {self.megp + 1}")
        return violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "carrier": self.carrier.value,
            "alpha": self.alpha,
            "beta": self.beta,
            "x_max": self.x_max,
            "megp": self.megp,
        }


@dataclass
class ParkParams:
    """
    园区参数

    e_max / g_max / e_o_max: 园区购电、购气、售电上限（MWh/时段）
    """

    e_max: float = 8.0
    g_max: float = 20.0
    e_o_max: float = 4.0
    megps: List[MegpParams] = field(default_factory=list)
    users: List[UserParams] = field(default_factory=list)
    elastic_loads: List[ElasticLoadParams] = field(default_factory=list)

    @property
    def n_megp(self) -> int:
        return len(self.megps)

    @property
    def n_user(self) -> int:
        return len(self.users)

    @property
    def n_elastic(self) -> int:
        return len(self.elastic_loads)

    def trade_caps(self) -> TradeCaps:
        """园区交易上限，作为每个 MEGP 的初始上限"""
        return TradeCaps(e_import=self.e_max, e_export=self.e_o_max, g_import=self.g_max)

    def validate(self) -> List[str]:
        violations: List[str] = []
        check_non_negative("park.e_max", self.e_max, violations)
        check_non_negative("park.g_max", self.g_max, violations)
        check_non_negative("park.e_o_max", self.e_o_max, violations)
        if not self.megps:
            violations.append("园区至少需要一个 MEGP")
        if not self.users:
            violations.append("园区至少需要一个用户")
        for megp in self.megps:
            violations.extend(megp.validate())
        for user in self.users:
            violations.extend(user.validate(self.n_megp))
        for load in self.elastic_loads:
            violations.extend(load.validate(self.n_megp))
        return violations

    def ensure_valid(self) -> "ParkParams":
        """校验失败时抛出 ValidationError（携带全部违规项）"""
        violations = self.validate()
        if violations:
            raise ValidationError(f"园区参数不合法（{len(violations)} 项）", violations)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "e_max": self.e_max,
            "g_max": self.g_max,
            "e_o_max": self.e_o_max,
            "megps": [m.to_dict() for m in self.megps],
            "users": [u.to_dict() for u in self.users],
            "elastic_loads": [q.to_dict() for q in self.elastic_loads],
        }
