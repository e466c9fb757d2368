# -*- coding: utf-8 -*-
"""
自定义异常

定义调度求解器通用异常类
"""

from typing import List, Optional


class SchedulingError(Exception):
    """调度错误基类"""

    pass


class ValidationError(SchedulingError):
    """
    参数/数据校验错误

    携带完整的违规项列表，便于一次性报告全部问题
    """

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        self.violations: List[str] = list(violations) if violations else [message]
        super().__init__(message)


class DeviceLimitError(ValidationError):
    """设备出力/充放速率越限"""

    pass


class TraceError(ValidationError):
    """时序数据内容或表头不合法"""

    pass


class TraceParseError(TraceError):
    """时序 CSV 解析错误（带行列定位）"""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        self.row = row
        self.column = column
        location = []
        if row is not None:
            location.append(f"行 {row}")
        if column is not None:
            location.append(f"列 {column}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)


class InfeasibleError(SchedulingError):
    """子问题或平衡结算无法满足某个约束"""

    def __init__(self, message: str, constraint: Optional[str] = None):
        self.constraint = constraint
        super().__init__(message)


class InstanceTooLargeError(SchedulingError):
    """网格穷举点数超出上限"""

    pass


class ConfigError(SchedulingError):
    """配置错误"""

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        self.violations: List[str] = list(violations) if violations else [message]
        super().__init__(message)
