# -*- coding: utf-8 -*-
"""
日志配置模块

控制台 + 常规日志文件 + 调试日志文件
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

# 配置日志格式
LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)-20s | %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# setup_logging 安装的 handler 打上此标记，重复调用时先移除
_HANDLER_TAG = "_park_scheduler"


def setup_logging(debug: bool = False, log_dir: str = "./logs", level: str = "INFO") -> None:
    """
    配置日志系统（同时输出到控制台和文件）

    Args:
        debug: 是否启用调试模式
        log_dir: 日志文件目录
        level: 控制台日志级别（debug 为 True 时为 DEBUG）
    """
    console_level = logging.DEBUG if debug else getattr(logging, str(level).upper(), logging.INFO)

    # 创建日志目录
    log_path = Path(log_dir)
    log_path.mkdir(parents=True, exist_ok=True)

    log_file = log_path / "park_scheduler.log"
    debug_log_file = log_path / "park_scheduler_debug.log"

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)  # 根 logger 设为 DEBUG，由 handler 控制输出级别
    for handler in list(root_logger.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            root_logger.removeHandler(handler)
            handler.close()

    formatter = logging.Formatter(LOG_FORMAT, LOG_DATE_FORMAT)

    # Handler 1: 控制台输出
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(console_level)

    # Handler 2: 常规日志文件（INFO 级别，10MB 轮转）
    file_handler = RotatingFileHandler(log_file, maxBytes=10 * 1024 * 1024, backupCount=5, encoding="utf-8")
    file_handler.setLevel(logging.INFO)

    # Handler 3: 调试日志文件（DEBUG 级别，包含每个微时段的细节）
    debug_handler = RotatingFileHandler(debug_log_file, maxBytes=50 * 1024 * 1024, backupCount=3, encoding="utf-8")
    debug_handler.setLevel(logging.DEBUG)

    for handler in (console_handler, file_handler, debug_handler):
        handler.setFormatter(formatter)
        setattr(handler, _HANDLER_TAG, True)
        root_logger.addHandler(handler)

    # 降低第三方库的日志级别
    logging.getLogger("numpy").setLevel(logging.WARNING)
    logging.getLogger("pandas").setLevel(logging.WARNING)
    logging.getLogger("matplotlib").setLevel(logging.WARNING)

    logging.debug(f"日志系统初始化完成，日志目录: {log_path.absolute()}")
