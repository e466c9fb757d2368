# -*- coding: utf-8 -*-
"""
设备模型

储能动态、CHP 与燃气锅炉的出力计算。越限时抛出 DeviceLimitError，
存储上下界检查由调度执行器负责，这里不做截断。
"""

from dataclasses import replace
from typing import List, Tuple

from common.exceptions import DeviceLimitError

from .park import MegpParams, ParkParams
from .state import MegpState

DEVICE_TOL = 1e-9


def _check_rate(name: str, value: float, cap: float) -> None:
    if value < -DEVICE_TOL:
        raise DeviceLimitError(f"{name}={value} 不能为负")
    if value > cap + DEVICE_TOL:
        raise DeviceLimitError(f"{name}={value} 超过上限 {cap}")


def storage_step(
    state: MegpState, params: MegpParams, c_e: float, d_e: float, c_h: float, d_h: float
) -> MegpState:
    """
    储能状态转移

    B' = B + η_cke·C_e − D_e/η_dke
    W' = W + η_ckh·C_h − D_h/η_dkh

    Args:
        state: 当前储能状态
        params: MEGP 参数
        c_e, d_e: 电池充、放电量
        c_h, d_h: 储热、放热量

    Returns:
        下一时段状态（不截断到容量上下界）

    Raises:
        DeviceLimitError: 速率为负或超过速率上限
    """
    _check_rate("C_ke", c_e, params.c_ke_max)
    _check_rate("D_ke", d_e, params.d_ke_max)
    _check_rate("C_kh", c_h, params.c_kh_max)
    _check_rate("D_kh", d_h, params.d_kh_max)

    b_next = state.b + params.eta_cke * c_e - d_e / params.eta_dke
    w_next = state.w + params.eta_ckh * c_h - d_h / params.eta_dkh
    return MegpState(b=b_next, w=w_next)


def chp_output(params: MegpParams, g_chp: float) -> Tuple[float, float]:
    """
    CHP 出力

    Args:
        params: MEGP 参数
        g_chp: 耗气量

    Returns:
        (发电量, 产热量)

    Raises:
        DeviceLimitError: 耗气为负或出力越限
    """
    if g_chp < -DEVICE_TOL:
        raise DeviceLimitError(f"G_chp={g_chp} 不能为负")
    e_out = params.eta_pg * g_chp
    h_out = params.eta_hg * g_chp
    if e_out > params.e_chp_max + DEVICE_TOL:
        raise DeviceLimitError(f"CHP 发电 {e_out} 超过上限 {params.e_chp_max}")
    if h_out > params.h_chp_max + DEVICE_TOL:
        raise DeviceLimitError(f"CHP 产热 {h_out} 超过上限 {params.h_chp_max}")
    return e_out, h_out


def boiler_output(params: MegpParams, g_b: float) -> float:
    """锅炉产热 H = η_bg·G_b，越限抛出 DeviceLimitError"""
    if g_b < -DEVICE_TOL:
        raise DeviceLimitError(f"G_b={g_b} 不能为负")
    h_out = params.eta_bg * g_b
    if h_out > params.h_b_max + DEVICE_TOL:
        raise DeviceLimitError(f"锅炉产热 {h_out} 超过上限 {params.h_b_max}")
    return h_out


def storage_limits(params: MegpParams, state: MegpState) -> MegpParams:
    """
    按当前储能水平收紧充放速率上限

    单独充满或单独放空都不会越过 [B_min, B_max]、[W_min, W_max]。
    """
    return replace(
        params,
        c_ke_max=max(0.0, min(params.c_ke_max, (params.b_max - state.b) / params.eta_cke)),
        d_ke_max=max(0.0, min(params.d_ke_max, (state.b - params.b_min) * params.eta_dke)),
        c_kh_max=max(0.0, min(params.c_kh_max, (params.w_max - state.w) / params.eta_ckh)),
        d_kh_max=max(0.0, min(params.d_kh_max, (state.w - params.w_min) * params.eta_dkh)),
    )


def with_storage_limits(park: ParkParams, states: List[MegpState]) -> ParkParams:
    """各 MEGP 换成按储能水平收紧后的参数"""
    return replace(park, megps=[storage_limits(p, s) for p, s in zip(park.megps, states)])
