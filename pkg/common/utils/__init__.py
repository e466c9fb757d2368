# -*- coding: utf-8 -*-
"""
共享工具函数

数值校验与格式化
"""

from .formatters import format_cost, format_energy, format_percentage
from .validators import check_efficiency, check_non_negative, check_positive, is_finite

__all__ = [
    "format_cost",
    "format_energy",
    "format_percentage",
    "check_efficiency",
    "check_non_negative",
    "check_positive",
    "is_finite",
]
