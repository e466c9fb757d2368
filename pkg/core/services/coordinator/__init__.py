# -*- coding: utf-8 -*-
"""
对偶协调模块

快时间尺度的 τ 内层循环（普通梯度 / 快速方案）与慢时间尺度的 λ 外层循环
"""

from .fista import FistaState, fast_tau_step, fista_combine, fista_weight, plain_tau_step
from .horizon import (
    OuterLoopConfig,
    ScheduleResult,
    SlotRecord,
    lambda_update,
    resolve_lambda_init,
    run_horizon,
)
from .inner_loop import InnerLoopConfig, InnerLoopResult, cold_start_tau, run_inner_loop, tau_gradient

__all__ = [
    "FistaState",
    "plain_tau_step",
    "fista_weight",
    "fista_combine",
    "fast_tau_step",
    "InnerLoopConfig",
    "InnerLoopResult",
    "tau_gradient",
    "cold_start_tau",
    "run_inner_loop",
    "OuterLoopConfig",
    "ScheduleResult",
    "SlotRecord",
    "lambda_update",
    "resolve_lambda_init",
    "run_horizon",
]
