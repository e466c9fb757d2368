# -*- coding: utf-8 -*-
"""
对比情形 1：无激励电价的梯度方法

用户负荷全部不可削减（η = 0，即激励电价恒为 0），移除全部弹性负荷，内层使用普通梯度。
"""

from dataclasses import replace

from common.enums import InnerMode, PolicyCase
from core.domain import ParkParams, TraceSet
from core.services.coordinator import InnerLoopConfig

from .base import CaseInputs, CasePolicy


class NoIncentiveCase(CasePolicy):
    case = PolicyCase.CASE1

    def apply(self, park: ParkParams, traces: TraceSet, inner: InnerLoopConfig) -> CaseInputs:
        users = [replace(u, eta_curtail=0.0, suppliers=list(u.suppliers)) for u in park.users]
        effective_park = replace(park, users=users, elastic_loads=[], megps=list(park.megps))
        effective_traces = replace(traces, el_alpha=None)
        return CaseInputs(
            park=effective_park,
            traces=effective_traces,
            inner=replace(inner, mode=InnerMode.PLAIN),
        )
