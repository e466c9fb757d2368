# -*- coding: utf-8 -*-
"""
网格穷举对照测试

精确解的拉格朗日值不应高于任何网格点，且与网格最优值之差受一步网格误差约束
"""

import numpy as np
import pytest

from common.enums import Carrier
from common.exceptions import InstanceTooLargeError
from core.domain import ElasticLoadParams, MegpParams, ParkParams, UserParams
from core.services.solver import (
    MultiplierView,
    lagrangian_value,
    lipschitz_bound,
    oracle_subproblem,
    solve_subproblem,
)
from core.services.solver.oracle import grid_axis, grid_size
from conftest import make_exo

GRID_STEP = 0.25


def _instance(seed):
    rng = np.random.default_rng(seed)
    p_e = rng.uniform(0.3, 1.0)
    exo = make_exo(
        p_e=p_e,
        p_g=rng.uniform(0.2, 0.6),
        p_o=p_e * rng.uniform(0.2, 0.8),
        renewables=[rng.uniform(0.0, 1.0)],
        il_loads=[rng.uniform(0.5, 2.0)],
    )
    mult = MultiplierView(rng.uniform(-1.0, 1.0, 1), rng.uniform(-1.0, 1.0, 1), rng.uniform(-1.0, 1.0, (1, 3)))
    return exo, mult


def test_grid_axis():
    assert grid_axis(0.0, 1.0, 0.25).tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert grid_axis(-0.5, 0.3, 0.25).tolist() == [-0.5, -0.25, 0.0, 0.25, 0.3]
    assert grid_axis(1.0, 0.0, 0.25).size == 0


@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_solver_not_worse_than_grid(tiny_park, seed):
    exo, mult = _instance(seed)
    exact = lagrangian_value(tiny_park, exo, mult, solve_subproblem(tiny_park, exo, mult))
    grid_value, _ = oracle_subproblem(tiny_park, exo, mult, grid_step=GRID_STEP)
    assert exact <= grid_value + 1e-9
    assert grid_value - exact <= lipschitz_bound(tiny_park, exo, mult) * GRID_STEP + 1e-9


def test_refined_grid_not_worse(tiny_park):
    exo, mult = _instance(5)
    coarse, _ = oracle_subproblem(tiny_park, exo, mult, grid_step=GRID_STEP)
    fine, _ = oracle_subproblem(tiny_park, exo, mult, grid_step=GRID_STEP / 2)
    assert fine <= coarse + 1e-12


def test_single_negative_coefficient(tiny_park):
    # 售电系数 τ_E − p_o < 0，其余系数非负
    exo = make_exo(p_e=0.6, p_g=5.0, p_o=0.3, renewables=[1.0], il_loads=[0.0])
    _, decision = oracle_subproblem(tiny_park, exo, MultiplierView.zeros(1), grid_step=GRID_STEP)
    assert decision.megps[0].e_export == pytest.approx(tiny_park.e_o_max)
    assert decision.megps[0].e_import == 0.0


def test_instance_too_large(park):
    exo = make_exo(renewables=[1.0, 1.0], il_loads=[1.0, 1.0, 1.0])
    with pytest.raises(InstanceTooLargeError):
        oracle_subproblem(park, exo, MultiplierView.zeros(2), grid_step=0.05, max_points=1000)


ACCEPT_STEP = 0.05


def _twin_park(e_max, g_max, e_o_max):
    """两个小容量 MEGP、各带一个用户，MEGP1 上一个电弹性负荷"""
    megps = []
    for name in ("MEGP1", "MEGP2"):
        params = MegpParams(
            name=name,
            c_ke_max=0.2,
            d_ke_max=0.2,
            c_kh_max=0.2,
            d_kh_max=0.2,
            e_chp_max=0.07,
            h_chp_max=0.07,
            h_b_max=0.16,
        )
        params.x_max.gas = 0.2
        megps.append(params)
    return ParkParams(
        e_max=e_max,
        g_max=g_max,
        e_o_max=e_o_max,
        megps=megps,
        users=[
            UserParams(a=1.0, eta_curtail=0.15, w=0.5, suppliers=[0], name="user1"),
            UserParams(a=1.0, eta_curtail=0.15, w=0.5, suppliers=[1], name="user2"),
        ],
        elastic_loads=[
            ElasticLoadParams(carrier=Carrier.ELECTRICITY, alpha=1.0, beta=0.5, x_max=0.5, megp=0, name="EL_E")
        ],
    )


# 每种情形只让一种园区交易上限起作用
_CAPS = {"import": (0.3, 0.8, 0.2), "export": (0.5, 0.8, 0.2), "gas": (0.5, 0.3, 0.2)}


def _twin_instance(seed, binding):
    rng = np.random.default_rng(seed)
    p_e = rng.uniform(0.3, 1.0)
    p_g = rng.uniform(0.2, 0.6)
    p_o = p_e * rng.uniform(0.5, 0.8)
    exo = make_exo(
        p_e=p_e,
        p_g=p_g,
        p_o=p_o,
        renewables=rng.uniform(0.0, 0.3, 2),
        il_loads=rng.uniform(0.5, 2.0, 2),
    )
    if binding == "import":
        tau_e, tau_g = rng.uniform(p_e + 0.1, p_e + 0.8, 2), rng.uniform(-1.0, p_g - 0.1, 2)
    elif binding == "export":
        tau_e, tau_g = rng.uniform(0.0, p_o - 0.05, 2), rng.uniform(-1.0, p_g - 0.1, 2)
    else:
        tau_e, tau_g = rng.uniform(p_o + 0.01, p_e - 0.01, 2), rng.uniform(p_g + 0.1, p_g + 1.0, 2)
    tau = np.column_stack([tau_e, rng.uniform(-1.0, 1.0, 2), tau_g])
    mult = MultiplierView(rng.uniform(-1.0, 1.0, 2), rng.uniform(-1.0, 1.0, 2), tau)
    return _twin_park(*_CAPS[binding]), exo, mult


@pytest.mark.parametrize("binding", ["import", "export", "gas"])
@pytest.mark.parametrize("seed", range(40))
def test_two_megp_within_grid_error(binding, seed):
    park, exo, mult = _twin_instance(seed, binding)
    assert grid_size(park, exo, ACCEPT_STEP) <= 10**7

    decision = solve_subproblem(park, exo, mult)
    exact = lagrangian_value(park, exo, mult, decision)
    grid_value, _ = oracle_subproblem(park, exo, mult, grid_step=ACCEPT_STEP)
    assert exact <= grid_value + 1e-9
    assert grid_value - exact <= lipschitz_bound(park, exo, mult) * ACCEPT_STEP + 1e-9

    assert sum(m.e_import for m in decision.megps) <= park.e_max + 1e-9
    assert sum(m.e_export for m in decision.megps) <= park.e_o_max + 1e-9
    assert sum(m.g_import for m in decision.megps) <= park.g_max + 1e-9
    if binding == "import":
        assert sum(m.e_import for m in decision.megps) == pytest.approx(park.e_max, abs=1e-9)
    if binding == "gas":
        assert sum(m.g_import for m in decision.megps) == pytest.approx(park.g_max, abs=1e-9)


@pytest.mark.parametrize("seed", range(20))
def test_gas_cap_binding_single_megp(tiny_park, seed):
    tiny_park.g_max = 0.6
    exo, _ = _instance(seed)
    rng = np.random.default_rng(1000 + seed)
    tau = np.array([[rng.uniform(0.5, 1.5), rng.uniform(1.0, 2.0), exo.p_g + rng.uniform(0.1, 1.0)]])
    mult = MultiplierView(rng.uniform(-1.0, 1.0, 1), rng.uniform(-1.0, 1.0, 1), tau)

    decision = solve_subproblem(tiny_park, exo, mult)
    assert decision.megps[0].g_import == pytest.approx(0.6, abs=1e-9)
    exact = lagrangian_value(tiny_park, exo, mult, decision)
    grid_value, _ = oracle_subproblem(tiny_park, exo, mult, grid_step=ACCEPT_STEP)
    assert exact <= grid_value + 1e-9
    assert grid_value - exact <= lipschitz_bound(tiny_park, exo, mult) * ACCEPT_STEP + 1e-9
