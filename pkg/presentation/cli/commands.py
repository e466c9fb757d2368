# -*- coding: utf-8 -*-
"""
===================================
子命令实现
===================================

run:      运行一个调度区间，写出汇总、遥测、迭代次数分布、成本与调度曲线
compare:  同一份时序上运行所提方法（快速/普通梯度）与情形 1、情形 2
validate: 只做配置与时序校验

出错时抛出异常，由 main() 映射为退出码；产物写完后仍有缺供时返回 EXIT_UNSERVED。
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

import pandas as pd

from common.config import get_config
from common.enums import InnerMode, PolicyCase
from common.exceptions import ConfigError, TraceError, ValidationError
from common.utils.formatters import format_cost, format_energy, format_percentage
from core.services.coordinator.horizon import check_dimensions
from core.services.scenario import RunConfig, RunConfigLoader
from core.services.simulation import MetricsCalculator, RunTelemetry, SimulationEngine, acceptance_checks
from infrastructure.data.exporter import (
    CDF_FILE,
    COMPARISON_FILE,
    CONVERGENCE_FILE,
    COSTS_FILE,
    DISPATCH_FILE,
    SUMMARY_FILE,
    TELEMETRY_FILE,
    ArtifactWriter,
)

logger = logging.getLogger(__name__)

EXIT_UNSERVED = 3  # 运行完成，但有时段结算后仍有缺供


def load_run_config(
    path: Union[str, Path],
    seed: Optional[int] = None,
    output: Optional[str] = None,
    mode: Optional[str] = None,
    cold_start: bool = False,
    trace: Optional[str] = None,
) -> RunConfig:
    """
    加载运行配置并应用命令行覆盖项

    Raises:
        ConfigError: 文件缺失或结构错误
    """
    config = RunConfigLoader().load(path)
    return config.with_overrides(
        seed=seed,
        output_dir=output,
        mode=InnerMode.from_str(mode) if mode else None,
        cold_start=cold_start,
        trace_path=trace,
    )


def _costs_frame(runs: Dict[str, RunTelemetry]) -> pd.DataFrame:
    first = next(iter(runs.values()))
    data = {
        "t": [r.t + 1 for r in first.records],
        "hour": [r.hour for r in first.records],
    }
    for name, tel in runs.items():
        data[f"{name}_kyuan"] = tel.costs
    return pd.DataFrame(data)


def _check_residuals(tel: RunTelemetry) -> int:
    """记录残差与缺供告警，返回结算后仍有缺供的时段数"""
    tolerance = get_config().solver_tolerance
    worst = max((r.residual for r in tel.records), default=0.0)
    if worst > tolerance:
        logger.warning(f"[{tel.label}] 最大平衡残差 {worst:.3e} 超过容差 {tolerance:.0e}")
    infeasible = sum(r.infeasible for r in tel.records)
    if infeasible:
        logger.warning(f"[{tel.label}] {infeasible} 个时段结算后仍有缺供")
    return infeasible


def cmd_run(config: RunConfig) -> int:
    """
    运行一个调度区间

    Returns:
        0；有时段结算后仍有缺供时为 EXIT_UNSERVED（产物照常写出）
    """
    config.ensure_valid()
    traces = config.load_traces()
    engine = SimulationEngine(config.park, traces, config.inner, config.outer)
    tel = engine.run_case(config.case)
    unserved_slots = _check_residuals(tel)

    summary = engine.summarize(tel)
    results = {"proposed": tel} if config.case == PolicyCase.PROPOSED else {}
    report = {
        "config": config.to_dict(),
        "summary": summary,
        "acceptance": acceptance_checks(results, config.park),
    }

    writer = ArtifactWriter(config.output_dir)
    writer.write_json(SUMMARY_FILE, report)
    writer.write_csv(TELEMETRY_FILE, tel.telemetry_frame())
    writer.write_csv(CDF_FILE, ArtifactWriter.cdf_frame({tel.label: MetricsCalculator.iteration_cdf(tel)}))
    writer.write_csv(COSTS_FILE, _costs_frame({tel.label: tel}))
    writer.write_csv(DISPATCH_FILE, tel.dispatch_frame())

    stats = summary["iterations"]
    logger.info(
        f"总成本 {format_cost(tel.total_cost)}，内层迭代中位数 {stats['median']:.0f}，"
        f"收敛率 {format_percentage(stats['convergence_rate'], 1)}"
    )
    totals = summary["energy_totals"]
    logger.info(
        f"购电 {format_energy(totals['e_import'])}，售电 {format_energy(totals['e_export'])}，"
        f"弃光 {format_energy(totals['renewable_spilled'])}，截断比例 {format_percentage(summary['clip_ratio'])}"
    )
    logger.info(f"产物已写入 {config.output_dir}：{[p.name for p in writer.written]}")
    if unserved_slots:
        logger.error(f"{unserved_slots} 个时段结算后仍有缺供，退出码 {EXIT_UNSERVED}")
        return EXIT_UNSERVED
    return 0


def cmd_compare(config: RunConfig) -> int:
    """
    对比运行

    Returns:
        0；所提方法有时段结算后仍有缺供时为 EXIT_UNSERVED（产物照常写出）
    """
    config.ensure_valid()
    traces = config.load_traces()
    engine = SimulationEngine(config.park, traces, config.inner, config.outer)
    comparison = engine.compare(config.convergence_slot)
    unserved = {name: _check_residuals(tel) for name, tel in comparison.runs.items()}

    report = engine.comparison_report(comparison)
    report["hourly_cost_kyuan"] = comparison.hourly_table()
    summaries = {name: engine.summarize(tel) for name, tel in comparison.runs.items()}
    proposed = comparison.runs["proposed"]

    writer = ArtifactWriter(config.output_dir)
    writer.write_json(SUMMARY_FILE, {"config": config.to_dict(), "runs": summaries})
    writer.write_json(COMPARISON_FILE, report)
    writer.write_csv(TELEMETRY_FILE, proposed.telemetry_frame())
    writer.write_csv(
        CDF_FILE,
        ArtifactWriter.cdf_frame({name: MetricsCalculator.iteration_cdf(tel) for name, tel in comparison.runs.items()}),
    )
    writer.write_csv(COSTS_FILE, _costs_frame(comparison.runs))
    writer.write_csv(DISPATCH_FILE, proposed.dispatch_frame())
    writer.write_csv(CONVERGENCE_FILE, ArtifactWriter.convergence_frame(comparison.convergence))

    logger.info("成本对比：")
    for name, total in comparison.cost_table().items():
        logger.info(f"  {name:<10} {format_cost(total)}")
    logger.info(f"产物已写入 {config.output_dir}：{[p.name for p in writer.written]}")
    if unserved.get("proposed"):
        logger.error(f"所提方法 {unserved['proposed']} 个时段结算后仍有缺供，退出码 {EXIT_UNSERVED}")
        return EXIT_UNSERVED
    return 0


def collect_violations(
    path: Union[str, Path],
    seed: Optional[int] = None,
    mode: Optional[str] = None,
    trace: Optional[str] = None,
) -> List[str]:
    """
    配置与时序的全部违规项

    依次检查：配置结构、参数范围、时序文件、时序内容、时序与园区维度
    """
    try:
        config = load_run_config(path, seed=seed, mode=mode, trace=trace)
    except ConfigError as e:
        return list(e.violations)

    violations = config.validate()
    if violations:
        return violations
    try:
        traces = config.load_traces()
        check_dimensions(config.park, traces, config.outer.horizon or traces.length)
    except (TraceError, ValidationError) as e:
        violations.extend(e.violations)
    return violations


def cmd_validate(
    path: Union[str, Path],
    seed: Optional[int] = None,
    mode: Optional[str] = None,
    trace: Optional[str] = None,
) -> int:
    """
    只校验，不仿真

    Returns:
        0 表示没有违规，2 表示存在违规（全部写入日志）
    """
    violations = collect_violations(path, seed=seed, mode=mode, trace=trace)
    if violations:
        logger.error(f"校验失败，共 {len(violations)} 项：")
        for item in violations:
            logger.error(f"  - {item}")
        return 2
    logger.info("校验通过")
    return 0
