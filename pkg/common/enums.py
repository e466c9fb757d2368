# -*- coding: utf-8 -*-
"""
===================================
枚举类型定义
===================================

集中管理系统中使用的枚举类型，提供类型安全和代码可读性。
"""

from enum import Enum
from typing import List


class Carrier(str, Enum):
    """
    能源载体枚举

    园区内的三种能源：电、热、气。
    继承 str 使其可以直接与字符串比较和序列化；
    排序按 电 < 热 < 气 的固定顺序（而非字符串字典序），保证迭代确定性。
    """

    ELECTRICITY = "electricity"
    HEAT = "heat"
    GAS = "gas"

    @classmethod
    def from_str(cls, value: str) -> "Carrier":
        """
        从字符串转换为枚举值，支持简写 e/h/g

        Args:
            value: 字符串值

        Returns:
            对应的枚举值

        Raises:
            ValueError: 无法识别的载体名称
        """
        aliases = {"e": cls.ELECTRICITY, "h": cls.HEAT, "g": cls.GAS}
        key = str(value).lower().strip()
        if key in aliases:
            return aliases[key]
        return cls(key)

    @classmethod
    def ordered(cls) -> List["Carrier"]:
        """按固定顺序返回全部载体"""
        return [cls.ELECTRICITY, cls.HEAT, cls.GAS]

    @property
    def index(self) -> int:
        """载体在向量/矩阵中的列下标"""
        return _CARRIER_INDEX[self]

    @property
    def short(self) -> str:
        """单字母简写，用于 CSV 列名"""
        return self.value[0].upper()

    @property
    def display_name(self) -> str:
        """获取用于显示的名称"""
        return {
            Carrier.ELECTRICITY: "电",
            Carrier.HEAT: "热",
            Carrier.GAS: "气",
        }[self]

    def __lt__(self, other):
        if isinstance(other, Carrier):
            return self.index < other.index
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, Carrier):
            return self.index <= other.index
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, Carrier):
            return self.index > other.index
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, Carrier):
            return self.index >= other.index
        return NotImplemented


_CARRIER_INDEX = {Carrier.ELECTRICITY: 0, Carrier.HEAT: 1, Carrier.GAS: 2}


class InnerMode(str, Enum):
    """
    内层乘子更新方式

    PLAIN: 普通对偶梯度上升
    FAST: 带动量组合的快速方案
    """

    PLAIN = "plain"
    FAST = "fast"

    @classmethod
    def from_str(cls, value: str) -> "InnerMode":
        """从字符串安全地转换为枚举值，无效输入返回默认值 FAST"""
        try:
            return cls(value.lower().strip())
        except (ValueError, AttributeError):
            return cls.FAST

    @property
    def display_name(self) -> str:
        """获取用于显示的名称"""
        return {
            InnerMode.PLAIN: "对偶梯度",
            InnerMode.FAST: "快速方案",
        }.get(self, "快速方案")


class StartMode(str, Enum):
    """每个时段 τ 的初始化方式"""

    WARM = "warm"  # 沿用上一时段收敛的 τ*
    COLD = "cold"  # 从电网边际成本重新开始

    @classmethod
    def from_str(cls, value: str) -> "StartMode":
        try:
            return cls(value.lower().strip())
        except (ValueError, AttributeError):
            return cls.WARM


class PolicyCase(str, Enum):
    """
    对比场景枚举

    PROPOSED: 完整算法（激励削减 + 弹性负荷 + 可再生能源）
    CASE1: 无激励价格、无弹性负荷，全部电负荷视为不可削减，内层使用普通对偶梯度
    CASE2: 无可再生能源，内层强制使用普通对偶梯度
    """

    PROPOSED = "proposed"
    CASE1 = "case1"
    CASE2 = "case2"

    @classmethod
    def from_str(cls, value: str) -> "PolicyCase":
        """
        从字符串转换为枚举值

        Raises:
            ValueError: 未知场景名称
        """
        return cls(str(value).lower().strip().replace("_", "").replace(" ", ""))

    @property
    def display_name(self) -> str:
        """获取用于显示的名称"""
        return {
            PolicyCase.PROPOSED: "所提方法",
            PolicyCase.CASE1: "场景1（无激励）",
            PolicyCase.CASE2: "场景2（无可再生能源）",
        }[self]
