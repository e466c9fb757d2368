# -*- coding: utf-8 -*-
"""
===================================
时序数据源基类
===================================

设计模式：模板方法
- TraceSource: 抽象基类，load() 统一完成 读取 → 标准化 → 校验
- 子类只负责产出标准列的 DataFrame

标准表头：t, p_e, p_o, p_g, R_1..R_K, X_1..X_I，可选 A_1..A_Q（下标从 1 开始）
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List

import numpy as np
import pandas as pd

from common.exceptions import TraceError
from core.domain import TraceSet

logger = logging.getLogger(__name__)


# === 标准化列名定义 ===
PRICE_COLUMNS = ["t", "p_e", "p_o", "p_g"]


@dataclass(frozen=True)
class TraceSchema:
    """
    时序表头约定

    n_megp: 可再生出力列数 K
    n_user: 不可削减负荷列数 I
    n_elastic: 弹性负荷数 Q，A_q 列可选
    """

    n_megp: int
    n_user: int
    n_elastic: int = 0

    def renewable_columns(self) -> List[str]:
        return [f"R_{k + 1}" for k in range(self.n_megp)]

    def load_columns(self) -> List[str]:
        return [f"X_{i + 1}" for i in range(self.n_user)]

    def alpha_columns(self) -> List[str]:
        return [f"A_{q + 1}" for q in range(self.n_elastic)]

    def required_columns(self) -> List[str]:
        return PRICE_COLUMNS + self.renewable_columns() + self.load_columns()

    def all_columns(self) -> List[str]:
        return self.required_columns() + self.alpha_columns()

    def missing(self, columns) -> List[str]:
        present = set(columns)
        return [c for c in self.required_columns() if c not in present]


def frame_to_traces(df: pd.DataFrame, schema: TraceSchema, start_hour: int = 0) -> TraceSet:
    """
    标准列 DataFrame → TraceSet

    A_q 列要么全部给出，要么全部缺省；t 必须是 1..T 的连续整数。

    Raises:
        TraceError: 缺列或 t 不连续
    """
    missing = schema.missing(df.columns)
    if missing:
        raise TraceError(f"时序缺少列：{missing}", [f"缺少列 {c}" for c in missing])

    alpha_cols = [c for c in schema.alpha_columns() if c in df.columns]
    if alpha_cols and len(alpha_cols) != schema.n_elastic:
        absent = [c for c in schema.alpha_columns() if c not in df.columns]
        raise TraceError(f"弹性负荷效用列不完整，缺少 {absent}", [f"缺少列 {c}" for c in absent])

    df = df.sort_values("t", kind="stable").reset_index(drop=True)
    t = df["t"].to_numpy(dtype=float)
    expected = np.arange(1, len(df) + 1, dtype=float)
    if len(df) == 0:
        raise TraceError("时序为空", ["时序长度必须 >= 1"])
    if not np.array_equal(t, expected):
        raise TraceError("列 t 必须是从 1 开始的连续整数", [f"列 t 期望 1..{len(df)}"])

    return TraceSet(
        p_e=df["p_e"].to_numpy(dtype=float),
        p_o=df["p_o"].to_numpy(dtype=float),
        p_g=df["p_g"].to_numpy(dtype=float),
        renewables=df[schema.renewable_columns()].to_numpy(dtype=float).reshape(len(df), schema.n_megp),
        il_loads=df[schema.load_columns()].to_numpy(dtype=float).reshape(len(df), schema.n_user),
        el_alpha=df[alpha_cols].to_numpy(dtype=float) if alpha_cols else None,
        start_hour=start_hour,
    )


def ensure_valid(traces: TraceSet, source: str) -> TraceSet:
    """校验失败时抛出 TraceError（携带全部违规项）"""
    violations = traces.validate()
    if violations:
        raise TraceError(f"时序 {source} 不合法（{len(violations)} 项）", violations)
    return traces


class TraceSource(ABC):
    """
    时序数据源抽象基类

    子类实现 _fetch_frame()，返回标准列的 DataFrame
    """

    name: str = "TraceSource"

    def __init__(self, schema: TraceSchema, start_hour: int = 0):
        self.schema = schema
        self.start_hour = start_hour

    @abstractmethod
    def _fetch_frame(self) -> pd.DataFrame:
        """读取或生成原始数据（子类必须实现）"""

    def describe(self) -> str:
        return self.name

    def load(self) -> TraceSet:
        """
        统一入口：读取 → 标准化 → 校验

        Raises:
            TraceError: 表头或内容不合法
        """
        df = self._fetch_frame()
        traces = frame_to_traces(df, self.schema, self.start_hour)
        ensure_valid(traces, self.describe())
        logger.info(f"[{self.name}] 载入时序 {traces.length} 个时段（{self.describe()}）")
        return traces
