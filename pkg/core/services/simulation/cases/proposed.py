# -*- coding: utf-8 -*-
"""所提方法：原样运行"""

from common.enums import PolicyCase
from core.domain import ParkParams, TraceSet
from core.services.coordinator import InnerLoopConfig

from .base import CaseInputs, CasePolicy


class ProposedCase(CasePolicy):
    case = PolicyCase.PROPOSED

    def apply(self, park: ParkParams, traces: TraceSet, inner: InnerLoopConfig) -> CaseInputs:
        return CaseInputs(park=park, traces=traces, inner=inner)
