# -*- coding: utf-8 -*-
"""
储能状态
"""

from dataclasses import dataclass
from typing import Dict, List

from .park import MegpParams, ParkParams


@dataclass(frozen=True)
class MegpState:
    """单个 MEGP 的储能水平（MWh）"""

    b: float  # 电池电量
    w: float  # 储热水罐热量

    @classmethod
    def initial(cls, params: MegpParams) -> "MegpState":
        b, w = params.initial_levels()
        return cls(b=b, w=w)

    def within_bounds(self, params: MegpParams, tol: float = 1e-9) -> bool:
        return (
            params.b_min - tol <= self.b <= params.b_max + tol
            and params.w_min - tol <= self.w <= params.w_max + tol
        )

    def to_dict(self) -> Dict[str, float]:
        return {"b": self.b, "w": self.w}


def initial_states(park: ParkParams) -> List[MegpState]:
    """园区所有 MEGP 的初始储能状态"""
    return [MegpState.initial(m) for m in park.megps]
