# -*- coding: utf-8 -*-
"""
分配求解模块

给定 (λ, τ) 精确求解微时段子问题，并提供网格穷举对照
"""

from .agents import cheapest_supplier, solve_elastic, solve_user
from .augmented import augmented_objective, solve_augmented_megp
from .marginal import MarginalCostTable, MegpCosts, MultiplierView, megp_costs
from .megp import solve_megp, standalone_caps
from .oracle import grid_axis, lipschitz_bound, oracle_subproblem
from .subproblem import lagrangian_value, solve_subproblem

__all__ = [
    "MultiplierView",
    "MarginalCostTable",
    "MegpCosts",
    "megp_costs",
    "solve_megp",
    "solve_augmented_megp",
    "augmented_objective",
    "standalone_caps",
    "solve_user",
    "solve_elastic",
    "cheapest_supplier",
    "solve_subproblem",
    "lagrangian_value",
    "oracle_subproblem",
    "lipschitz_bound",
    "grid_axis",
]
