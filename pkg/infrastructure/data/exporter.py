# -*- coding: utf-8 -*-
"""
===================================
产物写入
===================================

职责：
1. 把遥测、成本、迭代次数分布、调度曲线写成 CSV
2. 把汇总与对比报告写成 JSON

同样的输入总是得到逐字节相同的文件：固定列顺序、固定换行符、JSON 键排序，
浮点数用最短往返表示，重新读取可还原全部精度。
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

# 产物文件名
SUMMARY_FILE = "summary.json"
TELEMETRY_FILE = "telemetry.csv"
CDF_FILE = "cdf.csv"
COSTS_FILE = "costs.csv"
DISPATCH_FILE = "dispatch.csv"
CONVERGENCE_FILE = "convergence.csv"
COMPARISON_FILE = "comparison.json"


def _to_jsonable(value: Any) -> Any:
    """numpy 标量/数组转为原生类型，非有限浮点数写成 null"""
    if isinstance(value, dict):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_to_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


class ArtifactWriter:
    """
    产物写入器

    所有文件写入同一个输出目录
    """

    def __init__(self, output_dir: Union[str, Path]):
        self.output_dir = Path(output_dir)
        self.written: List[Path] = []

    def _path(self, name: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / name

    def write_csv(self, name: str, frame: pd.DataFrame) -> Path:
        path = self._path(name)
        frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
        self.written.append(path)
        logger.debug(f"写入 {path}（{len(frame)} 行）")
        return path

    def write_json(self, name: str, data: Dict[str, Any]) -> Path:
        path = self._path(name)
        text = json.dumps(_to_jsonable(data), ensure_ascii=False, indent=2, sort_keys=True, allow_nan=False)
        path.write_text(text + "\n", encoding="utf-8")
        self.written.append(path)
        logger.debug(f"写入 {path}")
        return path

    @staticmethod
    def cdf_frame(cdfs: Dict[str, List[tuple]]) -> pd.DataFrame:
        """{标签: [(迭代次数, 累计比例)]} → 长表 label, iterations, cdf"""
        rows = [
            {"label": label, "iterations": n, "cdf": frac}
            for label in sorted(cdfs)
            for n, frac in cdfs[label]
        ]
        return pd.DataFrame(rows, columns=["label", "iterations", "cdf"])

    @staticmethod
    def convergence_frame(rows: List[tuple]) -> pd.DataFrame:
        return pd.DataFrame(rows, columns=["iteration", "mode", "tau_diff"])
