# -*- coding: utf-8 -*-
"""
===================================
多能源园区调度求解器 - 进程配置模块
===================================

职责：
1. 使用单例模式管理进程级配置
2. 从 .env 文件加载默认路径与日志选项
3. 提供类型安全的配置访问接口

场景参数（园区、时序、迭代参数）不在此处，见 core.services.scenario。
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

PROJECT_ROOT = Path(__file__).parent.parent
DEFAULT_PARK_CONFIG = PROJECT_ROOT / "config" / "park_benchmark.json"


@dataclass
class Config:
    """
    进程配置（单例）

    只保存与具体园区无关的设置：默认运行配置路径、产物与日志目录、
    日志级别、平衡残差告警容差、调试开关。通过 get_config() 访问。
    """

    # === 场景配置 ===
    park_config: str = str(DEFAULT_PARK_CONFIG)  # 默认运行配置（JSON）

    # === 输出配置 ===
    output_dir: str = "./output"

    # === 日志配置 ===
    log_dir: str = "./logs"  # 日志文件目录
    log_level: str = "INFO"  # 日志级别

    # === 数值配置 ===
    solver_tolerance: float = 1e-9  # 平衡残差容差

    # === 系统配置 ===
    debug: bool = False

    # 单例实例存储
    _instance: Optional["Config"] = None

    @classmethod
    def get_instance(cls) -> "Config":
        """首次调用时从环境变量构建，之后返回同一实例"""
        if cls._instance is None:
            cls._instance = cls._load_from_env()
        return cls._instance

    @classmethod
    def _load_from_env(cls) -> "Config":
        """
        读取项目根目录的 .env 后从环境变量取值

        已存在的环境变量不会被 .env 覆盖
        """
        env_path = PROJECT_ROOT / ".env"
        load_dotenv(dotenv_path=env_path)

        return cls(
            park_config=os.getenv("PARK_CONFIG", str(DEFAULT_PARK_CONFIG)),
            output_dir=os.getenv("OUTPUT_DIR", "./output"),
            log_dir=os.getenv("LOG_DIR", "./logs"),
            log_level=os.getenv("LOG_LEVEL", "INFO"),
            solver_tolerance=float(os.getenv("SOLVER_TOLERANCE", "1e-9")),
            debug=os.getenv("DEBUG", "false").lower() == "true",
        )

    @classmethod
    def reset_instance(cls) -> None:
        """重置单例（主要用于测试）"""
        cls._instance = None

    def validate(self) -> List[str]:
        """
        验证配置完整性

        Returns:
            缺失或无效配置项的警告列表
        """
        warnings = []

        if not Path(self.park_config).exists():
            warnings.append(f"警告：运行配置文件不存在 (PARK_CONFIG={self.park_config})")

        output = Path(self.output_dir)
        if output.exists() and not output.is_dir():
            warnings.append(f"警告：输出路径不是目录 (OUTPUT_DIR={self.output_dir})")

        if self.log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            warnings.append(f"提示：未知日志级别 {self.log_level}，将使用 INFO")

        if not 0 < self.solver_tolerance < 1e-3:
            warnings.append(f"提示：平衡残差容差 {self.solver_tolerance} 超出常用范围 (0, 1e-3)")

        return warnings


# === 便捷的配置访问函数 ===
def get_config() -> Config:
    """获取全局配置实例的快捷方式"""
    return Config.get_instance()
