# -*- coding: utf-8 -*-
"""
单时段外生量

价格、可再生能源出力与不可削减负荷，来自时序数据的一行。
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np


@dataclass
class SlotExogenous:
    """
    一个时段的随机量

    renewables: 每个 MEGP 的可再生出力 R_k（MWh），形状 (K,)
    il_loads: 每个用户的不可削减电负荷 X_i（MWh），形状 (I,)
    el_alpha: 可选的弹性负荷时变效用系数 α_q，形状 (Q,)，缺省使用参数中的常数
    """

    p_e: float
    p_g: float
    p_o: float
    renewables: np.ndarray
    il_loads: np.ndarray
    el_alpha: Optional[np.ndarray] = None
    t: int = 0
    hour: int = 0

    def __post_init__(self):
        self.renewables = np.asarray(self.renewables, dtype=float)
        self.il_loads = np.asarray(self.il_loads, dtype=float)
        if self.el_alpha is not None:
            self.el_alpha = np.asarray(self.el_alpha, dtype=float)

    def alpha_for(self, q: int, default: float) -> float:
        """弹性负荷 q 在本时段的效用系数"""
        if self.el_alpha is None:
            return default
        return float(self.el_alpha[q])

    def validate(self) -> List[str]:
        violations: List[str] = []
        prices = {"p_e": self.p_e, "p_g": self.p_g, "p_o": self.p_o}
        for name, value in prices.items():
            if not np.isfinite(value) or value < 0:
                violations.append(f"t={self.t}: {name}={value} 必须为非负有限数")
        if np.isfinite(self.p_o) and np.isfinite(self.p_e) and self.p_o > self.p_e:
            violations.append(f"t={self.t}: 售电价 p_o={self.p_o} 高于购电价 p_e={self.p_e}")
        if not np.all(np.isfinite(self.renewables)) or np.any(self.renewables < 0):
            violations.append(f"t={self.t}: 可再生出力必须为非负有限数")
        if not np.all(np.isfinite(self.il_loads)) or np.any(self.il_loads < 0):
            violations.append(f"t={self.t}: 不可削减负荷必须为非负有限数")
        return violations
