# -*- coding: utf-8 -*-
"""
格式化工具

日志与摘要中使用的能量、费用格式化函数
"""

from typing import Optional


def format_energy(value: Optional[float], decimals: int = 3) -> str:
    """
    格式化能量

    Args:
        value: 能量（MWh）
        decimals: 小数位数

    Returns:
        str 格式化后的能量字符串，小于 1 MWh 时以 kWh 显示
    """
    if value is None:
        return "N/A"

    if abs(value) < 1.0 and value != 0:
        return f"{value * 1000:.{max(decimals - 2, 0)}f} kWh"
    return f"{value:.{decimals}f} MWh"


def format_cost(cost_kyuan: Optional[float]) -> str:
    """
    格式化费用

    Args:
        cost_kyuan: 费用（千元，¥/kWh × MWh）

    Returns:
        str 格式化后的费用字符串
    """
    if cost_kyuan is None:
        return "N/A"

    yuan = cost_kyuan * 1000
    if abs(yuan) >= 1e8:
        return f"{yuan / 1e8:.2f}亿元"
    elif abs(yuan) >= 1e4:
        return f"{yuan / 1e4:.2f}万元"
    else:
        return f"{yuan:.2f}元"


def format_percentage(value: Optional[float], decimals: int = 2) -> str:
    """
    格式化百分比

    Args:
        value: 比例值（0-1）
        decimals: 小数位数

    Returns:
        str 格式化后的百分比字符串
    """
    if value is None:
        return "N/A"

    return f"{value * 100:.{decimals}f}%"
