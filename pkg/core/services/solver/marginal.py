# -*- coding: utf-8 -*-
"""
乘子视图与边际成本表

把 (λ, τ) 代入拉格朗日函数后，MEGP 各决策变量的系数均为常数：
目标对每个 MEGP 可分且线性。
"""

from dataclasses import dataclass, replace
from typing import Dict, List

import numpy as np

from common.enums import Carrier
from core.domain import MegpParams, ParkParams, SlotExogenous

E, H, G = (c.index for c in Carrier.ordered())


@dataclass
class MultiplierView:
    """
    一组固定乘子

    lambda_e, lambda_h: 每个 MEGP 的慢时间尺度乘子，形状 (K,)
    tau: 每个 MEGP、每个载体的快时间尺度乘子，形状 (K, 3)
    """

    lambda_e: np.ndarray
    lambda_h: np.ndarray
    tau: np.ndarray

    def __post_init__(self):
        self.lambda_e = np.asarray(self.lambda_e, dtype=float).reshape(-1)
        self.lambda_h = np.asarray(self.lambda_h, dtype=float).reshape(-1)
        self.tau = np.asarray(self.tau, dtype=float).reshape(-1, 3)

    @classmethod
    def zeros(cls, n_megp: int) -> "MultiplierView":
        return cls(np.zeros(n_megp), np.zeros(n_megp), np.zeros((n_megp, 3)))

    def with_tau(self, tau: np.ndarray) -> "MultiplierView":
        return replace(self, tau=np.asarray(tau, dtype=float))

    def is_finite(self) -> bool:
        return bool(
            np.all(np.isfinite(self.lambda_e)) and np.all(np.isfinite(self.lambda_h)) and np.all(np.isfinite(self.tau))
        )


@dataclass(frozen=True)
class MegpCosts:
    """单个 MEGP 各变量在可分目标中的系数（¥/kWh）"""

    import_e: float
    export_e: float
    spill: float
    charge_e: float
    discharge_e: float
    charge_h: float
    discharge_h: float
    chp: float
    boiler: float
    gas_load: float

    def to_dict(self) -> Dict[str, float]:
        return dict(self.__dict__)


def megp_costs(params: MegpParams, exo: SlotExogenous, mult: MultiplierView, k: int) -> MegpCosts:
    """
    计算 MEGP k 的边际成本

    充/放系数互为相反数：charge = λ + τ，discharge = −λ − τ。
    """
    tau_e, tau_h, tau_g = (float(v) for v in mult.tau[k])
    lam_e = float(mult.lambda_e[k])
    lam_h = float(mult.lambda_h[k])
    charge_e = lam_e + tau_e
    charge_h = lam_h + tau_h
    return MegpCosts(
        import_e=exo.p_e - tau_e,
        export_e=tau_e - exo.p_o,
        spill=tau_e,
        charge_e=charge_e,
        discharge_e=-charge_e,
        charge_h=charge_h,
        discharge_h=-charge_h,
        chp=exo.p_g - tau_e * params.eta_pg - tau_h * params.eta_hg,
        boiler=exo.p_g - tau_h * params.eta_bg,
        gas_load=exo.p_g - tau_g,
    )


@dataclass
class MarginalCostTable:
    """全部 MEGP 的边际成本"""

    rows: List[MegpCosts]

    @classmethod
    def build(cls, park: ParkParams, exo: SlotExogenous, mult: MultiplierView) -> "MarginalCostTable":
        return cls(rows=[megp_costs(m, exo, mult, k) for k, m in enumerate(park.megps)])

    def __getitem__(self, k: int) -> MegpCosts:
        return self.rows[k]

    def __len__(self) -> int:
        return len(self.rows)
