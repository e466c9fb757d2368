# -*- coding: utf-8 -*-
"""
CSV 时序数据源

逐列解析数值，解析失败时报告 CSV 中的行号（含表头，从 1 开始）和列名
"""

import logging
from pathlib import Path
from typing import Union

import pandas as pd

from common.exceptions import TraceError, TraceParseError
from core.domain import TraceSet

from .base import TraceSchema, TraceSource

logger = logging.getLogger(__name__)

# 表头占第 1 行
HEADER_ROWS = 1


class CsvTraceSource(TraceSource):
    """从 CSV 文件读取时序"""

    name = "CsvTraceSource"

    def __init__(self, path: Union[str, Path], schema: TraceSchema, start_hour: int = 0):
        super().__init__(schema, start_hour)
        self.path = Path(path)

    def describe(self) -> str:
        return str(self.path)

    def _fetch_frame(self) -> pd.DataFrame:
        if not self.path.is_file():
            raise TraceError(f"时序文件不存在：{self.path}", [f"时序文件不存在：{self.path}"])
        try:
            raw = pd.read_csv(self.path, dtype=str, keep_default_na=False, skipinitialspace=True)
        except pd.errors.EmptyDataError:
            raise TraceError(f"时序文件为空：{self.path}", ["时序文件为空"]) from None
        except pd.errors.ParserError as e:
            raise TraceParseError(f"CSV 格式错误：{e}") from e

        raw.columns = [str(c).strip() for c in raw.columns]
        wanted = [c for c in self.schema.all_columns() if c in raw.columns]
        extra = [c for c in raw.columns if c not in wanted]
        if extra:
            logger.debug(f"[{self.name}] 忽略未识别的列：{extra}")

        frame = {}
        for column in wanted:
            text = raw[column].str.strip()
            values = pd.to_numeric(text, errors="coerce")
            # 空单元格按缺失值处理，交给校验报告；其余无法解析的文本直接定位
            bad = values.isna() & (text != "") & (text.str.lower() != "nan")
            if bad.any():
                row = int(bad.to_numpy().nonzero()[0][0])
                raise TraceParseError(
                    f"无法解析数值 '{text.iloc[row]}'",
                    row=row + 1 + HEADER_ROWS,
                    column=column,
                )
            frame[column] = values.astype(float)
        return pd.DataFrame(frame, columns=wanted)


def load_traces(path: Union[str, Path], schema: TraceSchema, start_hour: int = 0) -> TraceSet:
    """
    读取并校验 CSV 时序

    Args:
        path: CSV 文件路径
        schema: 表头约定
        start_hour: 第 1 行对应的钟点

    Returns:
        TraceSet

    Raises:
        TraceParseError: 数值无法解析（带行列）
        TraceError: 缺列、t 不连续、含 NaN、负值、p_o > p_e 等
    """
    return CsvTraceSource(path, schema, start_hour).load()
