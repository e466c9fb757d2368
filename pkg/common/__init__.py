# -*- coding: utf-8 -*-
"""
共享组件

项目公共配置、枚举、异常和工具函数
"""

from .config import Config, get_config
from .enums import Carrier, InnerMode, PolicyCase, StartMode

__all__ = [
    "Config",
    "get_config",
    "Carrier",
    "InnerMode",
    "PolicyCase",
    "StartMode",
]
