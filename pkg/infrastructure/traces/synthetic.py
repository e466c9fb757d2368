# -*- coding: utf-8 -*-
"""
===================================
合成时序生成器
===================================

日周期正弦/阶跃形状叠加带种子的噪声，形状参考典型园区：
1. 8:00-23:00 为高峰电价，售电价为购电价的固定比例
2. 光伏出力只出现在白天，正午最大
3. 工厂负荷为上午、傍晚两个峰

相同 seed 与参数生成完全相同的时序。
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from common.exceptions import ValidationError
from core.domain import TraceSet

from .base import TraceSchema, TraceSource

logger = logging.getLogger(__name__)


@dataclass
class SynthProfile:
    """
    合成时序参数

    价格单位 ¥/kWh，能量单位 MWh/时段。取值范围：
    offpeak_price、peak_price ∈ (0, 2]；sell_ratio ∈ [0, 1]；噪声标准差 ∈ [0, 0.5]
    """

    # 电价
    offpeak_price: float = 0.35
    peak_price: float = 0.85
    peak_start: int = 8  # 高峰起始钟点（含）
    peak_end: int = 23  # 高峰结束钟点（不含）
    price_wave: float = 0.05  # 日周期正弦幅值
    price_noise: float = 0.02
    sell_ratio: float = 0.5  # p_o = sell_ratio·p_e
    gas_price: float = 0.4
    gas_noise: float = 0.0

    # 光伏
    solar_capacity: List[float] = field(default_factory=lambda: [1.5, 1.0])
    dawn: int = 6
    dusk: int = 18
    solar_noise: float = 0.1  # 乘性噪声

    # 工厂负荷
    load_base: List[float] = field(default_factory=lambda: [1.2, 1.0, 0.8])
    load_peaks: List[float] = field(default_factory=lambda: [10.0, 19.0])
    load_amplitude: float = 0.6
    load_width: float = 2.5  # 峰宽（小时）
    load_noise: float = 0.05

    # 弹性负荷时变效用系数，None 表示使用参数中的常数 α
    alpha_base: Optional[List[float]] = None
    alpha_amplitude: float = 0.2

    start_hour: int = 0

    def validate(self) -> List[str]:
        violations = []
        if not 0 < self.offpeak_price <= 2 or not 0 < self.peak_price <= 2:
            violations.append("profile: 电价必须在 (0, 2]")
        if not 0 <= self.sell_ratio <= 1:
            violations.append(f"profile.sell_ratio={self.sell_ratio} 不在 [0, 1]")
        if self.gas_price <= 0:
            violations.append(f"profile.gas_price={self.gas_price} 必须为正")
        for name in ("price_noise", "gas_noise", "solar_noise", "load_noise"):
            value = getattr(self, name)
            if not 0 <= value <= 0.5:
                violations.append(f"profile.{name}={value} 不在 [0, 0.5]")
        if not 0 <= self.dawn < self.dusk <= 24:
            violations.append(f"profile: 要求 0 <= dawn < dusk <= 24，实际 {self.dawn}, {self.dusk}")
        if not 0 <= self.peak_start < self.peak_end <= 24:
            violations.append(f"profile: 高峰时段 [{self.peak_start}, {self.peak_end}) 不合法")
        if self.load_width <= 0:
            violations.append("profile.load_width 必须为正")
        if any(c < 0 for c in self.solar_capacity) or any(b < 0 for b in self.load_base):
            violations.append("profile: 光伏容量与基础负荷必须非负")
        return violations

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SynthProfile":
        return cls(**data)

    def to_dict(self) -> Dict[str, Any]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _diurnal_bump(hours: np.ndarray, center: float, width: float) -> np.ndarray:
    # 环形距离，23 点与 0 点相邻
    d = np.abs(hours - center)
    d = np.minimum(d, 24 - d)
    return np.exp(-0.5 * (d / width) ** 2)


def synth_traces(seed: int, T: int, profile: Optional[SynthProfile] = None) -> TraceSet:
    """
    生成合成时序

    Args:
        seed: 随机种子
        T: 时段数（>= 1）
        profile: 形状参数，缺省为基准园区（2 个 MEGP，3 个用户）

    Returns:
        TraceSet，与 seed、T、profile 一一对应

    Raises:
        ValidationError: T < 1 或 profile 参数越界
    """
    profile = profile or SynthProfile()
    violations = profile.validate()
    if T < 1:
        violations.append(f"T={T} 必须 >= 1")
    if violations:
        raise ValidationError("合成时序参数不合法", violations)

    rng = np.random.default_rng(seed)
    hours = ((profile.start_hour + np.arange(T)) % 24).astype(float)

    # 电价：峰谷阶跃 + 日周期正弦 + 噪声
    peak = (hours >= profile.peak_start) & (hours < profile.peak_end)
    p_e = np.where(peak, profile.peak_price, profile.offpeak_price)
    p_e = p_e + profile.price_wave * np.sin(2 * np.pi * (hours - 6) / 24)
    p_e = p_e + rng.normal(0.0, profile.price_noise, T)
    p_e = np.maximum(p_e, 0.05)
    p_o = profile.sell_ratio * p_e
    p_g = np.maximum(profile.gas_price * (1 + rng.normal(0.0, profile.gas_noise, T)), 0.01)

    # 光伏：白天半个正弦周期，夜间为 0
    daylight = (hours >= profile.dawn) & (hours <= profile.dusk)
    shape = np.where(daylight, np.sin(np.pi * (hours - profile.dawn) / (profile.dusk - profile.dawn)), 0.0)
    shape = np.clip(shape, 0.0, None)
    capacity = np.asarray(profile.solar_capacity, dtype=float)
    noise = 1 + rng.normal(0.0, profile.solar_noise, (T, capacity.size))
    renewables = np.clip(shape[:, None] * capacity[None, :] * noise, 0.0, None)

    # 负荷：双峰
    humps = sum(_diurnal_bump(hours, c, profile.load_width) for c in profile.load_peaks)
    base = np.asarray(profile.load_base, dtype=float)
    noise = 1 + rng.normal(0.0, profile.load_noise, (T, base.size))
    il_loads = np.clip(base[None, :] * (1 + profile.load_amplitude * humps)[:, None] * noise, 0.0, None)

    el_alpha = None
    if profile.alpha_base is not None:
        alpha = np.asarray(profile.alpha_base, dtype=float)
        wave = 1 + profile.alpha_amplitude * np.sin(2 * np.pi * (hours - 8) / 24)
        el_alpha = np.clip(alpha[None, :] * wave[:, None], 0.0, None)

    logger.debug(f"合成时序 seed={seed} T={T}：平均电价 {p_e.mean():.4f}，光伏合计 {renewables.sum():.2f} MWh")
    return TraceSet(
        p_e=p_e,
        p_o=p_o,
        p_g=p_g,
        renewables=renewables,
        il_loads=il_loads,
        el_alpha=el_alpha,
        start_hour=profile.start_hour,
    )


class SyntheticTraceSource(TraceSource):
    """合成时序数据源，走与 CSV 相同的标准化与校验流程"""

    name = "SyntheticTraceSource"

    def __init__(self, seed: int, T: int, profile: Optional[SynthProfile] = None):
        profile = profile or SynthProfile()
        n_elastic = len(profile.alpha_base) if profile.alpha_base is not None else 0
        schema = TraceSchema(len(profile.solar_capacity), len(profile.load_base), n_elastic)
        super().__init__(schema, profile.start_hour)
        self.seed = seed
        self.T = T
        self.profile = profile

    def describe(self) -> str:
        return f"synthetic(seed={self.seed}, T={self.T})"

    def _fetch_frame(self) -> pd.DataFrame:
        return synth_traces(self.seed, self.T, self.profile).to_frame()
