# -*- coding: utf-8 -*-
"""
验证工具

数值参数的通用校验函数，返回违规描述而不是抛异常，由调用方汇总
"""

import math
from typing import List, Optional


def is_finite(value: Optional[float]) -> bool:
    """
    验证有限数值

    Args:
        value: 数值

    Returns:
        bool 是否为有限浮点数
    """
    if value is None:
        return False
    try:
        return math.isfinite(float(value))
    except (TypeError, ValueError):
        return False


def validate_positive_number(value: Optional[float]) -> bool:
    """验证正数"""
    return is_finite(value) and value > 0


def validate_non_negative(value: Optional[float]) -> bool:
    """验证非负数"""
    return is_finite(value) and value >= 0


def validate_efficiency(value: Optional[float]) -> bool:
    """
    验证效率系数（0, 1]

    Args:
        value: 效率

    Returns:
        bool 是否有效
    """
    return is_finite(value) and 0 < value <= 1


def validate_ratio(value: Optional[float]) -> bool:
    """验证比例值 [0, 1]"""
    return is_finite(value) and 0 <= value <= 1


def check_efficiency(name: str, value: Optional[float], violations: List[str]) -> None:
    """效率不在 (0,1] 时追加违规描述"""
    if not validate_efficiency(value):
        violations.append(f"{name}={value} 不在 (0, 1] 范围内")


def check_non_negative(name: str, value: Optional[float], violations: List[str]) -> None:
    """非负校验"""
    if not validate_non_negative(value):
        violations.append(f"{name}={value} 必须为非负有限数")


def check_positive(name: str, value: Optional[float], violations: List[str]) -> None:
    """正数校验"""
    if not validate_positive_number(value):
        violations.append(f"{name}={value} 必须为正数")
