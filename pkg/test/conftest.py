# -*- coding: utf-8 -*-
"""
pytest 公共夹具

园区参数、短时序、单时段外生量与临时运行配置
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict

import numpy as np
import pytest

# 添加项目根目录到路径
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from common.config import Config  # noqa: E402
from common.enums import Carrier  # noqa: E402
from core.domain import (  # noqa: E402
    ElasticLoadParams,
    MegpParams,
    ParkParams,
    SlotExogenous,
    UserParams,
)
from core.services.scenario import benchmark_park  # noqa: E402
from infrastructure.traces import synth_traces  # noqa: E402


def make_exo(p_e=0.6, p_g=0.4, p_o=0.3, renewables=(0.0,), il_loads=(0.0,), el_alpha=None, t=0, hour=0):
    """构造单时段外生量"""
    return SlotExogenous(
        p_e=p_e,
        p_g=p_g,
        p_o=p_o,
        renewables=np.asarray(renewables, dtype=float),
        il_loads=np.asarray(il_loads, dtype=float),
        el_alpha=el_alpha,
        t=t,
        hour=hour,
    )


def short_run_config(**overrides: Any) -> Dict[str, Any]:
    """基准园区 + 12 个时段的合成时序，内层迭代上限较小"""
    data: Dict[str, Any] = {
        "traces": {"source": "synthetic", "seed": 42, "T": 12, "start_hour": 6},
        "inner": {"sigma": 0.2, "max_iters": 20, "tol": 0.01, "mode": "fast"},
        "outer": {"rho": 0.05, "lambda_init": "auto", "start": "warm"},
        "case": "proposed",
        "convergence_slot": 1,
    }
    data.update(overrides)
    return data


def write_config(directory: Path, data: Dict[str, Any], name: str = "park.json") -> Path:
    path = directory / name
    path.write_text(json.dumps(data, ensure_ascii=False, indent=2), encoding="utf-8")
    return path


@pytest.fixture
def megp() -> MegpParams:
    """基准 MEGP 参数"""
    return MegpParams()


@pytest.fixture
def park() -> ParkParams:
    """基准园区：2 个 MEGP、3 个用户、2 个弹性负荷"""
    return benchmark_park()


@pytest.fixture
def small_park() -> ParkParams:
    """单 MEGP、单用户、单个电弹性负荷"""
    return ParkParams(
        e_max=3.0,
        g_max=6.0,
        e_o_max=2.0,
        megps=[MegpParams(name="MEGP1")],
        users=[UserParams(suppliers=[0], name="user1")],
        elastic_loads=[ElasticLoadParams(carrier=Carrier.ELECTRICITY, megp=0, name="EL_E")],
    )


@pytest.fixture
def tiny_park() -> ParkParams:
    """设备容量很小的单 MEGP 园区，供网格穷举对照"""
    megp = MegpParams(
        name="MEGP1",
        c_ke_max=0.5,
        d_ke_max=0.5,
        c_kh_max=0.5,
        d_kh_max=0.5,
        e_chp_max=0.35,
        h_chp_max=0.35,
        h_b_max=0.4,
    )
    megp.x_max.gas = 0.5
    return ParkParams(
        e_max=1.0,
        g_max=2.0,
        e_o_max=1.0,
        megps=[megp],
        users=[UserParams(a=1.0, eta_curtail=0.15, w=0.5, suppliers=[0], name="user1")],
        elastic_loads=[ElasticLoadParams(carrier=Carrier.HEAT, alpha=1.0, beta=0.5, x_max=1.0, megp=0, name="EL_H")],
    )


@pytest.fixture
def short_traces():
    """基准园区的 24 时段合成时序"""
    return synth_traces(7, 24)


@pytest.fixture
def config_dir(tmp_path: Path, monkeypatch):
    """在临时目录运行，日志与产物都写在其中"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.setenv("OUTPUT_DIR", str(tmp_path / "output"))
    Config.reset_instance()
    yield tmp_path
    Config.reset_instance()
