# -*- coding: utf-8 -*-
"""
快速验证脚本 - 一键冒烟测试

阶段1 导入各层模块，阶段2 在短时序上跑一次调度，阶段3 校验内置基准配置。
不写任何产物文件。
"""

import sys
from pathlib import Path

# 添加项目根目录到路径
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

MODULES = [
    "common.config",
    "common.enums",
    "common.exceptions",
    "core.domain",
    "core.services.solver",
    "core.services.coordinator",
    "core.services.dispatch",
    "core.services.simulation",
    "core.services.scenario",
    "infrastructure.traces",
    "infrastructure.data",
    "presentation.cli",
]


def stage_imports() -> bool:
    import importlib

    passed = True
    for name in MODULES:
        try:
            importlib.import_module(name)
            print(f"[PASS] import {name}")
        except Exception as e:
            print(f"[FAIL] import {name}: {e}")
            passed = False
    return passed


def stage_simulation() -> bool:
    from common.enums import InnerMode, PolicyCase
    from core.services.coordinator import InnerLoopConfig, OuterLoopConfig
    from core.services.scenario import benchmark_park
    from core.services.simulation import MetricsCalculator, run_case
    from infrastructure.traces import synth_traces

    park = benchmark_park()
    traces = synth_traces(42, 8)
    inner = InnerLoopConfig(max_iters=20, mode=InnerMode.FAST)
    try:
        tel = run_case(PolicyCase.PROPOSED, park, traces, inner, OuterLoopConfig())
    except Exception as e:
        print(f"[FAIL] 调度运行异常: {e}")
        return False

    summary = MetricsCalculator.summary(tel, park)
    checks = [
        ("时段数", summary["slots"] == 8),
        ("平衡残差", summary["max_residual"] <= 1e-9),
        ("储能上下限", all(
            m.b_min - 1e-9 <= r.b[k] <= m.b_max + 1e-9
            for r in tel.records
            for k, m in enumerate(park.megps)
        )),
    ]
    for label, ok in checks:
        print(f"[{'PASS' if ok else 'FAIL'}] {label}")
    print(f"       总成本 {summary['total_cost_kyuan']:.4f} 千元，迭代中位数 {summary['iterations']['median']:.0f}")
    return all(ok for _, ok in checks)


def stage_validate() -> bool:
    from presentation.cli import collect_violations

    config_path = project_root / "config" / "park_benchmark.json"
    violations = collect_violations(config_path)
    if violations:
        print(f"[FAIL] 基准配置校验失败: {violations}")
        return False
    print("[PASS] 基准配置校验通过")
    return True


def run_all_tests() -> bool:
    """运行所有阶段"""
    print("=" * 70)
    print("多能源园区调度求解器 - 快速验证")
    print("=" * 70)

    all_passed = True
    for title, stage in (
        ("阶段1: 导入测试", stage_imports),
        ("阶段2: 短时序调度", stage_simulation),
        ("阶段3: 配置校验", stage_validate),
    ):
        print("\n" + "=" * 70)
        print(title)
        print("=" * 70)
        try:
            all_passed = stage() and all_passed
        except Exception as e:
            print(f"[FAIL] {title} 执行失败: {e}")
            all_passed = False

    print("\n" + "=" * 70)
    print("[PASS] 全部通过" if all_passed else "[FAIL] 存在失败项")
    print("=" * 70)
    return all_passed


if __name__ == "__main__":
    sys.exit(0 if run_all_tests() else 1)
