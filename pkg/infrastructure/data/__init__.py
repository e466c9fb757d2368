# -*- coding: utf-8 -*-
"""
产物写入模块

遥测、分布、成本与调度曲线写成 CSV，汇总与对比写成 JSON
"""

from .exporter import (
    CDF_FILE,
    COMPARISON_FILE,
    CONVERGENCE_FILE,
    COSTS_FILE,
    DISPATCH_FILE,
    SUMMARY_FILE,
    TELEMETRY_FILE,
    ArtifactWriter,
)

__all__ = [
    "ArtifactWriter",
    "SUMMARY_FILE",
    "TELEMETRY_FILE",
    "CDF_FILE",
    "COSTS_FILE",
    "DISPATCH_FILE",
    "CONVERGENCE_FILE",
    "COMPARISON_FILE",
]
