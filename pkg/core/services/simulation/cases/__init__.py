# -*- coding: utf-8 -*-
"""
对比情形

所提方法、情形 1（无激励电价与弹性负荷）、情形 2（无可再生能源）
"""

from common.enums import PolicyCase

from .base import CaseInputs, CasePolicy
from .case1 import NoIncentiveCase
from .case2 import NoRenewableCase
from .proposed import ProposedCase

_REGISTRY = {
    PolicyCase.PROPOSED: ProposedCase,
    PolicyCase.CASE1: NoIncentiveCase,
    PolicyCase.CASE2: NoRenewableCase,
}


def get_case_policy(case: PolicyCase) -> CasePolicy:
    """按枚举取情形实例"""
    return _REGISTRY[case]()


__all__ = [
    "CaseInputs",
    "CasePolicy",
    "ProposedCase",
    "NoIncentiveCase",
    "NoRenewableCase",
    "get_case_policy",
]
