# -*- coding: utf-8 -*-
"""
调度执行模块

储能可行性投影、平衡结算与逐时段执行
"""

from .executor import (
    DispatchExecutor,
    ExecutionResult,
    ProjectionResult,
    SettlementResult,
    project_storage,
    settle_allocation,
)

__all__ = [
    "DispatchExecutor",
    "ExecutionResult",
    "ProjectionResult",
    "SettlementResult",
    "project_storage",
    "settle_allocation",
]
