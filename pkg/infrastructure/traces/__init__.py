# -*- coding: utf-8 -*-
"""
时序数据源

CSV 文件与带种子的合成时序，统一输出经过校验的 TraceSet
"""

from .base import PRICE_COLUMNS, TraceSchema, TraceSource, ensure_valid, frame_to_traces
from .csv_source import CsvTraceSource, load_traces
from .synthetic import SynthProfile, SyntheticTraceSource, synth_traces

__all__ = [
    "PRICE_COLUMNS",
    "TraceSchema",
    "TraceSource",
    "ensure_valid",
    "frame_to_traces",
    "CsvTraceSource",
    "load_traces",
    "SynthProfile",
    "SyntheticTraceSource",
    "synth_traces",
]
