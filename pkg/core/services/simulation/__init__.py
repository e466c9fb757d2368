# -*- coding: utf-8 -*-
"""
仿真模块

按对比情形运行调度区间，计算成本、迭代次数分布与调度指标
"""

from .cases import CaseInputs, CasePolicy, NoIncentiveCase, NoRenewableCase, ProposedCase, get_case_policy
from .engine import ComparisonResult, SimulationEngine, run_case, trace_convergence
from .metrics import MetricsCalculator, RunTelemetry, acceptance_checks, iteration_cdf

__all__ = [
    "CaseInputs",
    "CasePolicy",
    "ProposedCase",
    "NoIncentiveCase",
    "NoRenewableCase",
    "get_case_policy",
    "ComparisonResult",
    "SimulationEngine",
    "run_case",
    "trace_convergence",
    "MetricsCalculator",
    "RunTelemetry",
    "acceptance_checks",
    "iteration_cdf",
]
