# -*- coding: utf-8 -*-
"""
命令行接口模块
"""

from .args import build_parser, parse_arguments
from .commands import EXIT_UNSERVED, cmd_compare, cmd_run, cmd_validate, collect_violations, load_run_config
from .logging_setup import setup_logging

__all__ = [
    "EXIT_UNSERVED",
    "build_parser",
    "parse_arguments",
    "setup_logging",
    "cmd_run",
    "cmd_compare",
    "cmd_validate",
    "collect_violations",
    "load_run_config",
]
