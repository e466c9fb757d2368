# -*- coding: utf-8 -*-
"""
运行配置加载器

从 JSON 文件加载园区参数、时序来源、内外层参数与对比情形

配置格式（全部键可省略，缺省为基准园区）：
{
  "park": {"e_max": 8, "g_max": 20, "e_o_max": 4, "megps": [...], "users": [...], "elastic_loads": [...]},
  "traces": {"source": "synthetic", "seed": 42, "T": 480, "profile": {...}}
         或 {"source": "csv", "path": "traces.csv", "start_hour": 0},
  "inner": {"sigma": 0.2, "max_iters": 100, "tol": 0.01, "mode": "fast", "penalty": null},
  "outer": {"rho": 0.05, "horizon": null, "lambda_init": "auto", "start": "warm", "storage_aware": true},
  "case": "proposed",
  "convergence_slot": 1,
  "output_dir": "output"
}

用户的 suppliers、弹性负荷的 megp、convergence_slot 均从 1 开始编号。
"""

import json
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from common.enums import Carrier, InnerMode, PolicyCase, StartMode
from common.exceptions import ConfigError, ValidationError
from core.domain import CarrierVector, ElasticLoadParams, MegpParams, ParkParams, TraceSet, UserParams
from core.services.coordinator import InnerLoopConfig, OuterLoopConfig
from infrastructure.traces import SynthProfile, TraceSchema, load_traces, synth_traces

logger = logging.getLogger(__name__)

SOURCE_SYNTHETIC = "synthetic"
SOURCE_CSV = "csv"

TOP_LEVEL_KEYS = {"park", "traces", "inner", "outer", "case", "convergence_slot", "output_dir"}
PARK_KEYS = {"e_max", "g_max", "e_o_max", "megps", "users", "elastic_loads"}
TRACE_KEYS = {"source", "seed", "T", "profile", "path", "start_hour"}
INNER_KEYS = {"sigma", "max_iters", "tol", "mode", "penalty"}
OUTER_KEYS = {"rho", "horizon", "lambda_init", "start", "storage_aware"}
MEGP_KEYS = {f.name for f in fields(MegpParams)}
USER_KEYS = {"a", "eta_curtail", "w", "suppliers", "name"}
ELASTIC_KEYS = {"carrier", "alpha", "beta", "x_max", "megp", "name"}
PROFILE_KEYS = {f.name for f in fields(SynthProfile)}


@dataclass
class TraceSpec:
    """时序来源"""

    source: str = SOURCE_SYNTHETIC
    seed: int = 42
    T: int = 480
    profile: SynthProfile = field(default_factory=SynthProfile)
    path: Optional[Path] = None
    start_hour: int = 0

    def describe(self) -> str:
        if self.source == SOURCE_CSV:
            return f"csv:{self.path}"
        return f"synthetic(seed={self.seed}, T={self.T})"


@dataclass
class RunConfig:
    """一次运行的完整配置"""

    park: ParkParams
    traces: TraceSpec
    inner: InnerLoopConfig
    outer: OuterLoopConfig
    case: PolicyCase = PolicyCase.PROPOSED
    convergence_slot: int = 0  # 0 起
    output_dir: Path = Path("output")
    source_path: Optional[Path] = None

    def validate(self) -> List[str]:
        """
        收集全部违规项（不抛出）

        园区参数、内外层参数、时序来源（文件是否存在、合成参数范围）
        """
        violations: List[str] = []
        violations.extend(self.park.validate())
        violations.extend(self.inner.validate())
        violations.extend(self.outer.validate())
        if self.traces.source == SOURCE_CSV:
            if self.traces.path is None:
                violations.append("traces.path 未配置")
            elif not self.traces.path.is_file():
                violations.append(f"时序文件不存在：{self.traces.path}")
        else:
            violations.extend(self.traces.profile.validate())
            if self.traces.T < 1:
                violations.append(f"traces.T={self.traces.T} 必须 >= 1")
            if len(self.traces.profile.solar_capacity) != self.park.n_megp:
                violations.append(
                    f"profile.solar_capacity 有 {len(self.traces.profile.solar_capacity)} 项，"
                    f"园区有 {self.park.n_megp} 个 MEGP"
                )
            if len(self.traces.profile.load_base) != self.park.n_user:
                violations.append(
                    f"profile.load_base 有 {len(self.traces.profile.load_base)} 项，园区有 {self.park.n_user} 个用户"
                )
            alpha = self.traces.profile.alpha_base
            if alpha is not None and len(alpha) != self.park.n_elastic:
                violations.append(f"profile.alpha_base 有 {len(alpha)} 项，园区有 {self.park.n_elastic} 个弹性负荷")
        return violations

    def ensure_valid(self) -> "RunConfig":
        violations = self.validate()
        if violations:
            raise ValidationError(f"运行配置不合法（{len(violations)} 项）", violations)
        return self

    def trace_schema(self) -> TraceSchema:
        return TraceSchema(self.park.n_megp, self.park.n_user, self.park.n_elastic)

    def load_traces(self) -> TraceSet:
        """
        按来源载入时序

        Raises:
            TraceError: CSV 表头或内容不合法
            ValidationError: 合成参数不合法
        """
        if self.traces.source == SOURCE_CSV:
            return load_traces(self.traces.path, self.trace_schema(), self.traces.start_hour)
        profile = replace(self.traces.profile, start_hour=self.traces.start_hour)
        return synth_traces(self.traces.seed, self.traces.T, profile)

    def with_overrides(
        self,
        seed: Optional[int] = None,
        output_dir: Optional[Union[str, Path]] = None,
        mode: Optional[InnerMode] = None,
        cold_start: bool = False,
        trace_path: Optional[Union[str, Path]] = None,
    ) -> "RunConfig":
        """应用命令行覆盖项，返回新对象"""
        traces = self.traces
        if seed is not None:
            traces = TraceSpec(**{**traces.__dict__, "seed": int(seed)})
        if trace_path is not None:
            traces = TraceSpec(**{**traces.__dict__, "source": SOURCE_CSV, "path": Path(trace_path)})
        inner = self.inner if mode is None else InnerLoopConfig(**{**self.inner.__dict__, "mode": mode})
        outer = self.outer
        if cold_start:
            outer = OuterLoopConfig(**{**outer.__dict__, "start": StartMode.COLD})
        return RunConfig(
            park=self.park,
            traces=traces,
            inner=inner,
            outer=outer,
            case=self.case,
            convergence_slot=self.convergence_slot,
            output_dir=Path(output_dir) if output_dir is not None else self.output_dir,
            source_path=self.source_path,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "park": self.park.to_dict(),
            "traces": {
                "source": self.traces.source,
                "seed": self.traces.seed,
                "T": self.traces.T,
                "path": str(self.traces.path) if self.traces.path else None,
                "start_hour": self.traces.start_hour,
            },
            "inner": {
                "sigma": self.inner.sigma,
                "max_iters": self.inner.max_iters,
                "tol": self.inner.tol,
                "mode": self.inner.mode.value,
                "penalty": self.inner.effective_penalty,
            },
            "outer": {
                "rho": self.outer.rho,
                "horizon": self.outer.horizon,
                "lambda_init": self.outer.lambda_init,
                "start": self.outer.start.value,
                "storage_aware": self.outer.storage_aware,
            },
            "case": self.case.value,
        }


class RunConfigLoader:
    """从 JSON 加载运行配置"""

    def __init__(self):
        self._errors: List[str] = []

    # === 基础工具 ===

    def _section(self, data: Any, allowed: set, where: str) -> Dict[str, Any]:
        if data is None:
            return {}
        if not isinstance(data, dict):
            self._errors.append(f"{where} 必须是对象")
            return {}
        unknown = sorted(set(data) - allowed)
        for key in unknown:
            self._errors.append(f"{where}: 未知配置项 '{key}'")
        return {k: v for k, v in data.items() if k in allowed}

    def _number(self, value: Any, where: str, integer: bool = False) -> Optional[float]:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self._errors.append(f"{where}={value!r} 必须是数值")
            return None
        if integer:
            if float(value) != int(value):
                self._errors.append(f"{where}={value!r} 必须是整数")
                return None
            return int(value)
        return float(value)

    def _numbers(self, section: Dict[str, Any], where: str, skip: set = frozenset(), integers: set = frozenset()):
        out = {}
        for key, value in section.items():
            if key in skip:
                continue
            number = self._number(value, f"{where}.{key}", integer=key in integers)
            if number is not None:
                out[key] = number
        return out

    def _index(self, value: Any, where: str) -> Optional[int]:
        """1 起编号 → 0 起"""
        number = self._number(value, where, integer=True)
        if number is None:
            return None
        if number < 1:
            self._errors.append(f"{where}={value} 编号从 1 开始")
            return None
        return number - 1

    # === 各部分 ===

    def _megp(self, data: Any, k: int) -> MegpParams:
        where = f"park.megps[{k + 1}]"
        section = self._section(data, MEGP_KEYS, where)
        kwargs = self._numbers(section, where, skip={"x_max", "name", "b_init", "w_init"})
        for key in ("b_init", "w_init"):
            if section.get(key) is not None:
                number = self._number(section[key], f"{where}.{key}")
                if number is not None:
                    kwargs[key] = number
        kwargs["name"] = str(section.get("name", f"MEGP{k + 1}"))
        if "x_max" in section:
            x_max = section["x_max"]
            if isinstance(x_max, dict):
                try:
                    kwargs["x_max"] = CarrierVector.from_dict(x_max)
                except (ValueError, TypeError) as e:
                    self._errors.append(f"{where}.x_max 不合法：{e}")
            else:
                number = self._number(x_max, f"{where}.x_max")
                if number is not None:
                    kwargs["x_max"] = CarrierVector(number, number, number)
        return MegpParams(**kwargs)

    def _user(self, data: Any, i: int) -> UserParams:
        where = f"park.users[{i + 1}]"
        section = self._section(data, USER_KEYS, where)
        kwargs = self._numbers(section, where, skip={"suppliers", "name"})
        kwargs["name"] = str(section.get("name", f"user{i + 1}"))
        if "suppliers" in section:
            raw = section["suppliers"]
            raw = raw if isinstance(raw, list) else [raw]
            suppliers = [self._index(v, f"{where}.suppliers") for v in raw]
            kwargs["suppliers"] = [k for k in suppliers if k is not None]
        return UserParams(**kwargs)

    def _elastic(self, data: Any, q: int) -> ElasticLoadParams:
        where = f"park.elastic_loads[{q + 1}]"
        section = self._section(data, ELASTIC_KEYS, where)
        kwargs = self._numbers(section, where, skip={"carrier", "megp", "name"})
        kwargs["name"] = str(section.get("name", f"EL{q + 1}"))
        if "carrier" in section:
            try:
                kwargs["carrier"] = Carrier.from_str(section["carrier"])
            except ValueError:
                self._errors.append(f"{where}.carrier={section['carrier']!r} 未知载体")
        if "megp" in section:
            index = self._index(section["megp"], f"{where}.megp")
            if index is not None:
                kwargs["megp"] = index
        return ElasticLoadParams(**kwargs)

    def _park(self, data: Any) -> ParkParams:
        section = self._section(data, PARK_KEYS, "park")
        if not section:
            return benchmark_park()
        kwargs = self._numbers(section, "park", skip={"megps", "users", "elastic_loads"})
        default = benchmark_park()
        megps = section.get("megps")
        users = section.get("users")
        elastic = section.get("elastic_loads")
        kwargs["megps"] = [self._megp(m, k) for k, m in enumerate(megps)] if megps is not None else default.megps
        kwargs["users"] = [self._user(u, i) for i, u in enumerate(users)] if users is not None else default.users
        kwargs["elastic_loads"] = (
            [self._elastic(q, j) for j, q in enumerate(elastic)] if elastic is not None else default.elastic_loads
        )
        return ParkParams(**kwargs)

    def _traces(self, data: Any, base_dir: Path) -> TraceSpec:
        section = self._section(data, TRACE_KEYS, "traces")
        spec = TraceSpec()
        source = str(section.get("source", SOURCE_SYNTHETIC)).lower()
        if source not in (SOURCE_SYNTHETIC, SOURCE_CSV):
            self._errors.append(f"traces.source={source!r} 只能是 synthetic 或 csv")
            source = SOURCE_SYNTHETIC
        spec.source = source
        for key in ("seed", "T", "start_hour"):
            if key in section:
                number = self._number(section[key], f"traces.{key}", integer=True)
                if number is not None:
                    setattr(spec, key, number)
        if "path" in section:
            path = Path(str(section["path"]))
            spec.path = path if path.is_absolute() else base_dir / path
        if "profile" in section:
            profile = self._section(section["profile"], PROFILE_KEYS, "traces.profile")
            try:
                spec.profile = SynthProfile.from_dict(profile)
            except TypeError as e:
                self._errors.append(f"traces.profile 不合法：{e}")
        if source == SOURCE_CSV and spec.path is None:
            self._errors.append("traces.source=csv 时必须配置 traces.path")
        return spec

    def _inner(self, data: Any) -> InnerLoopConfig:
        section = self._section(data, INNER_KEYS, "inner")
        kwargs = self._numbers(section, "inner", skip={"mode", "penalty"}, integers={"max_iters"})
        if section.get("penalty") is not None:
            number = self._number(section["penalty"], "inner.penalty")
            if number is not None:
                kwargs["penalty"] = number
        if "mode" in section:
            mode = str(section["mode"]).lower()
            if mode not in (m.value for m in InnerMode):
                self._errors.append(f"inner.mode={mode!r} 只能是 plain 或 fast")
            else:
                kwargs["mode"] = InnerMode(mode)
        return InnerLoopConfig(**kwargs)

    def _outer(self, data: Any) -> OuterLoopConfig:
        section = self._section(data, OUTER_KEYS, "outer")
        kwargs = self._numbers(section, "outer", skip={"horizon", "lambda_init", "start", "storage_aware"})
        if section.get("horizon") is not None:
            number = self._number(section["horizon"], "outer.horizon", integer=True)
            if number is not None:
                kwargs["horizon"] = number
        if "lambda_init" in section:
            value = section["lambda_init"]
            if isinstance(value, str) and value.lower() != "auto":
                self._errors.append(f"outer.lambda_init={value!r} 只能是 auto、数值或数值列表")
            else:
                kwargs["lambda_init"] = value
        if "start" in section:
            start = str(section["start"]).lower()
            if start not in (s.value for s in StartMode):
                self._errors.append(f"outer.start={start!r} 只能是 warm 或 cold")
            else:
                kwargs["start"] = StartMode(start)
        if "storage_aware" in section:
            if isinstance(section["storage_aware"], bool):
                kwargs["storage_aware"] = section["storage_aware"]
            else:
                self._errors.append(f"outer.storage_aware={section['storage_aware']!r} 必须是 true 或 false")
        return OuterLoopConfig(**kwargs)

    # === 入口 ===

    def parse(self, data: Dict[str, Any], base_dir: Optional[Path] = None, source_path: Optional[Path] = None):
        """
        解析配置字典

        Raises:
            ConfigError: 结构错误、类型错误或未知配置项（携带全部问题）
        """
        self._errors = []
        base_dir = base_dir or Path.cwd()
        top = self._section(data, TOP_LEVEL_KEYS, "配置")

        park = self._park(top.get("park"))
        traces = self._traces(top.get("traces"), base_dir)
        inner = self._inner(top.get("inner"))
        outer = self._outer(top.get("outer"))

        case = PolicyCase.PROPOSED
        if "case" in top:
            try:
                case = PolicyCase.from_str(top["case"])
            except ValueError:
                self._errors.append(f"case={top['case']!r} 只能是 proposed、case1 或 case2")

        slot = 0
        if "convergence_slot" in top:
            index = self._index(top["convergence_slot"], "convergence_slot")
            slot = index if index is not None else 0

        output_dir = Path(str(top.get("output_dir", "output")))

        if self._errors:
            raise ConfigError(f"运行配置有 {len(self._errors)} 处错误", self._errors)

        return RunConfig(
            park=park,
            traces=traces,
            inner=inner,
            outer=outer,
            case=case,
            convergence_slot=slot,
            output_dir=output_dir,
            source_path=source_path,
        )

    def load(self, path: Union[str, Path]) -> RunConfig:
        """
        从 JSON 文件加载

        Raises:
            ConfigError: 文件不存在、JSON 语法错误或配置项错误
        """
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"配置文件不存在：{path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigError(f"配置文件 JSON 语法错误：{path} 第 {e.lineno} 行第 {e.colno} 列") from e
        config = self.parse(data, base_dir=path.parent, source_path=path)
        logger.info(
            f"载入运行配置 {path}：{config.park.n_megp} 个 MEGP，{config.park.n_user} 个用户，"
            f"{config.park.n_elastic} 个弹性负荷，时序 {config.traces.describe()}"
        )
        return config


def benchmark_park() -> ParkParams:
    """
    基准园区：2 个 MEGP、3 个工厂用户、电/热各一个弹性负荷

    MEGP1 为用户 1、2 与电弹性负荷供能，MEGP2 为用户 3 与热弹性负荷供能
    """
    return ParkParams(
        e_max=8.0,
        g_max=20.0,
        e_o_max=4.0,
        megps=[MegpParams(name="MEGP1"), MegpParams(name="MEGP2")],
        users=[
            UserParams(suppliers=[0], name="user1"),
            UserParams(suppliers=[0], name="user2"),
            UserParams(suppliers=[1], name="user3"),
        ],
        elastic_loads=[
            ElasticLoadParams(carrier=Carrier.ELECTRICITY, alpha=1.0, beta=0.5, x_max=2.0, megp=0, name="EL_E"),
            ElasticLoadParams(carrier=Carrier.HEAT, alpha=1.0, beta=0.5, x_max=2.0, megp=1, name="EL_H"),
        ],
    )
