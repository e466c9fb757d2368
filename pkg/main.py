# -*- coding: utf-8 -*-
"""
===================================
多能源园区调度求解器 - 主入口
===================================

职责：
1. 解析子命令与覆盖项，加载运行配置
2. 调用对应子命令
3. 全局异常处理，把结果映射为退出码

使用方式：
    python main.py run                  # 基准配置，所提方法
    python main.py compare              # 各情形与内层方案对比
    python main.py validate --trace x.csv

退出码：
    0   成功
    1   运行时错误
    2   配置或数据校验失败
    3   运行完成，但有时段结算后仍有缺供（产物照常写出）
    130 用户中断
"""

import logging
import sys
from typing import List, Optional

from common.config import get_config
from common.exceptions import ConfigError, SchedulingError, ValidationError
from presentation.cli import (
    EXIT_UNSERVED,
    cmd_compare,
    cmd_run,
    cmd_validate,
    load_run_config,
    parse_arguments,
    setup_logging,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_INVALID = 2
EXIT_INTERRUPTED = 130

__all__ = ["main", "EXIT_OK", "EXIT_RUNTIME", "EXIT_INVALID", "EXIT_UNSERVED", "EXIT_INTERRUPTED"]


def main(argv: Optional[List[str]] = None) -> int:
    """
    主入口函数

    Args:
        argv: 命令行参数（缺省读取 sys.argv）

    Returns:
        退出码（0 表示成功）
    """
    args = parse_arguments(argv)

    # 加载进程配置（在设置日志前加载，以获取日志目录）
    config = get_config()
    setup_logging(debug=args.debug or config.debug, log_dir=config.log_dir, level=config.log_level)

    config_path = args.config or config.park_config
    output = args.output or None

    logger.info("=" * 60)
    logger.info(f"多能源园区调度求解器：{args.command}")
    logger.info(f"运行配置: {config_path}")
    logger.info("=" * 60)

    for warning in config.validate():
        logger.warning(warning)

    try:
        if args.command == "validate":
            return cmd_validate(config_path, seed=args.seed, mode=args.mode, trace=args.trace)

        run_config = load_run_config(
            config_path,
            seed=args.seed,
            output=output or (config.output_dir if args.config is None else None),
            mode=args.mode,
            cold_start=args.cold_start,
            trace=args.trace,
        )
        if args.command == "compare":
            return cmd_compare(run_config)
        return cmd_run(run_config)

    except KeyboardInterrupt:
        logger.info("\n用户中断，程序退出")
        return EXIT_INTERRUPTED
    except (ValidationError, ConfigError) as e:
        logger.error(f"{e}")
        for item in e.violations:
            logger.error(f"  - {item}")
        return EXIT_INVALID
    except SchedulingError as e:
        logger.error(f"调度失败: {e}")
        return EXIT_RUNTIME
    except Exception as e:
        logger.exception(f"运行失败: {e}")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
