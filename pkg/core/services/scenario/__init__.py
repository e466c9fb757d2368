# -*- coding: utf-8 -*-
"""
场景配置模块

运行配置（JSON）的数据模型与加载器
"""

from .loader import RunConfig, RunConfigLoader, TraceSpec, benchmark_park

__all__ = [
    "RunConfig",
    "RunConfigLoader",
    "TraceSpec",
    "benchmark_park",
]
