# -*- coding: utf-8 -*-
"""
对比情形基类

定义统一的情形接口：在调度前改写园区参数、时序与内层配置
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Tuple

from common.enums import PolicyCase
from core.domain import ParkParams, TraceSet
from core.services.coordinator import InnerLoopConfig


@dataclass
class CaseInputs:
    """情形改写后的有效输入"""

    park: ParkParams
    traces: TraceSet
    inner: InnerLoopConfig


class CasePolicy(ABC):
    """
    情形抽象基类

    所有对比情形都应继承此类并实现 apply 方法，不得修改传入对象
    """

    case: PolicyCase

    @abstractmethod
    def apply(self, park: ParkParams, traces: TraceSet, inner: InnerLoopConfig) -> CaseInputs:
        """
        生成该情形的有效输入

        Args:
            park: 园区参数
            traces: 外生时序
            inner: 内层参数

        Returns:
            CaseInputs
        """

    def get_name(self) -> str:
        return self.case.display_name

    def describe(self) -> Tuple[str, str]:
        return self.case.value, self.get_name()
