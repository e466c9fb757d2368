# -*- coding: utf-8 -*-
"""
对比情形 2：无可再生能源

可再生出力置零，内层使用普通梯度。
"""

from dataclasses import replace

from common.enums import InnerMode, PolicyCase
from core.domain import ParkParams, TraceSet
from core.services.coordinator import InnerLoopConfig

from .base import CaseInputs, CasePolicy


class NoRenewableCase(CasePolicy):
    case = PolicyCase.CASE2

    def apply(self, park: ParkParams, traces: TraceSet, inner: InnerLoopConfig) -> CaseInputs:
        return CaseInputs(
            park=park,
            traces=traces.with_renewables_zeroed(),
            inner=replace(inner, mode=InnerMode.PLAIN),
        )
