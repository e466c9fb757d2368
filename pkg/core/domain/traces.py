# -*- coding: utf-8 -*-
"""
时序数据集

整个仿真区间的价格、可再生能源、不可削减负荷与弹性负荷效用系数。
CSV 表头：t, p_e, p_o, p_g, R_1..R_K, X_1..X_I，可选 A_1..A_Q（下标从 1 开始）。
"""

from dataclasses import dataclass, replace
from typing import List, Optional

import numpy as np
import pandas as pd

from .exogenous import SlotExogenous

HOURS_PER_DAY = 24


@dataclass
class TraceSet:
    """
    外生时序

    p_e / p_o / p_g: 形状 (T,)
    renewables: 形状 (T, K)
    il_loads: 形状 (T, I)
    el_alpha: 可选，形状 (T, Q)
    start_hour: 第 0 个时段对应的钟点
    """

    p_e: np.ndarray
    p_o: np.ndarray
    p_g: np.ndarray
    renewables: np.ndarray
    il_loads: np.ndarray
    el_alpha: Optional[np.ndarray] = None
    start_hour: int = 0

    def __post_init__(self):
        self.p_e = np.asarray(self.p_e, dtype=float).reshape(-1)
        self.p_o = np.asarray(self.p_o, dtype=float).reshape(-1)
        self.p_g = np.asarray(self.p_g, dtype=float).reshape(-1)
        self.renewables = np.atleast_2d(np.asarray(self.renewables, dtype=float))
        self.il_loads = np.atleast_2d(np.asarray(self.il_loads, dtype=float))
        if self.el_alpha is not None:
            self.el_alpha = np.atleast_2d(np.asarray(self.el_alpha, dtype=float))

    @property
    def length(self) -> int:
        return int(self.p_e.shape[0])

    @property
    def n_megp(self) -> int:
        return int(self.renewables.shape[1])

    @property
    def n_user(self) -> int:
        return int(self.il_loads.shape[1])

    def hour_of(self, t: int) -> int:
        return (self.start_hour + t) % HOURS_PER_DAY

    def hours(self) -> np.ndarray:
        return (self.start_hour + np.arange(self.length)) % HOURS_PER_DAY

    def slot(self, t: int) -> SlotExogenous:
        """取出第 t 个时段（0 起）的外生量"""
        return SlotExogenous(
            p_e=float(self.p_e[t]),
            p_g=float(self.p_g[t]),
            p_o=float(self.p_o[t]),
            renewables=self.renewables[t].copy(),
            il_loads=self.il_loads[t].copy(),
            el_alpha=None if self.el_alpha is None else self.el_alpha[t].copy(),
            t=t,
            hour=self.hour_of(t),
        )

    def validate(self) -> List[str]:
        """
        校验时序

        Returns:
            违规描述列表：长度不一致、非有限值、负价格、p_o > p_e 等
        """
        violations: List[str] = []
        T = self.length
        series = {
            "p_e": self.p_e.shape[0],
            "p_o": self.p_o.shape[0],
            "p_g": self.p_g.shape[0],
            "R": self.renewables.shape[0],
            "X": self.il_loads.shape[0],
        }
        if self.el_alpha is not None:
            series["A"] = self.el_alpha.shape[0]
        mismatched = {k: v for k, v in series.items() if v != T}
        if mismatched:
            violations.append(f"序列长度不一致：期望 {T}，实际 {mismatched}")
            return violations
        if T < 1:
            violations.append("时序长度必须 >= 1")
            return violations

        arrays = {"p_e": self.p_e, "p_o": self.p_o, "p_g": self.p_g, "R": self.renewables, "X": self.il_loads}
        if self.el_alpha is not None:
            arrays["A"] = self.el_alpha
        for name, arr in arrays.items():
            bad = ~np.isfinite(arr)
            if bad.any():
                row = int(np.argwhere(bad)[0][0])
                violations.append(f"{name} 在 t={row + 1} 处含非有限值")
            elif (arr < 0).any():
                row = int(np.argwhere(arr < 0)[0][0])
                violations.append(f"{name} 在 t={row + 1} 处为负")

        finite = np.isfinite(self.p_o) & np.isfinite(self.p_e)
        arbitrage = np.where(finite & (self.p_o > self.p_e))[0]
        for row in arbitrage:
            violations.append(f"t={row + 1}: 售电价 p_o={self.p_o[row]} 高于购电价 p_e={self.p_e[row]}")
        return violations

    def with_renewables_zeroed(self) -> "TraceSet":
        return replace(self, renewables=np.zeros_like(self.renewables))

    def head(self, n: int) -> "TraceSet":
        """截取前 n 个时段"""
        return TraceSet(
            p_e=self.p_e[:n],
            p_o=self.p_o[:n],
            p_g=self.p_g[:n],
            renewables=self.renewables[:n],
            il_loads=self.il_loads[:n],
            el_alpha=None if self.el_alpha is None else self.el_alpha[:n],
            start_hour=self.start_hour,
        )

    def to_frame(self) -> pd.DataFrame:
        """转换为标准列的 DataFrame（t 从 1 开始）"""
        data = {"t": np.arange(1, self.length + 1), "p_e": self.p_e, "p_o": self.p_o, "p_g": self.p_g}
        for k in range(self.n_megp):
            data[f"R_{k + 1}"] = self.renewables[:, k]
        for i in range(self.n_user):
            data[f"X_{i + 1}"] = self.il_loads[:, i]
        if self.el_alpha is not None:
            for q in range(self.el_alpha.shape[1]):
                data[f"A_{q + 1}"] = self.el_alpha[:, q]
        return pd.DataFrame(data)
