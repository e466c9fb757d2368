# -*- coding: utf-8 -*-
"""
命令行参数解析模块

子命令：run | compare | validate
"""

import argparse
from typing import List, Optional

from common.enums import InnerMode


def build_parser() -> argparse.ArgumentParser:
    """构造参数解析器"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="运行配置 JSON（默认使用 PARK_CONFIG 或内置基准配置）")
    common.add_argument("--seed", type=int, default=None, help="覆盖合成时序的随机种子")
    common.add_argument("--output", type=str, default=None, help="产物输出目录（覆盖配置中的 output_dir）")
    common.add_argument(
        "--mode",
        type=str,
        choices=[m.value for m in InnerMode],
        default=None,
        help="内层方案：plain(对偶梯度) 或 fast(快速方案)",
    )
    common.add_argument("--cold-start", action="store_true", help="每个时段从电网边际成本重新初始化 τ")
    common.add_argument("--trace", type=str, default=None, help="使用 CSV 时序文件代替合成时序")
    common.add_argument("--debug", action="store_true", help="启用调试模式，输出详细日志")

    parser = argparse.ArgumentParser(
        description="多能源园区两时间尺度分布式随机调度求解器",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  python main.py run                           # 用内置基准配置运行所提方法
  python main.py run --seed 7 --output out7    # 指定种子与输出目录
  python main.py run --mode plain --cold-start # 普通对偶梯度，冷启动
  python main.py compare                       # 所提方法、情形 1、情形 2 与两种内层方案对比
  python main.py validate --trace prices.csv   # 仅校验配置与时序，不运行仿真

产物:
  run      summary.json telemetry.csv cdf.csv costs.csv dispatch.csv
  compare  以上文件 + convergence.csv comparison.json
        """,
    )
    sub = parser.add_subparsers(dest="command", metavar="{run,compare,validate}")
    sub.required = True
    sub.add_parser("run", parents=[common], help="运行一个调度区间并写出产物")
    sub.add_parser("compare", parents=[common], help="在同一份时序上对比各情形与内层方案")
    sub.add_parser("validate", parents=[common], help="只校验配置与时序")
    return parser


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """解析命令行参数"""
    return build_parser().parse_args(argv)
