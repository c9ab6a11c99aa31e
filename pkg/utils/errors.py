#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
异常定义
"""

from typing import Optional


class MicrogridError(Exception):
    """所有业务异常的基类（命令行据此返回非零状态）"""


class ConfigError(MicrogridError, ValueError):
    """配置校验失败，附带字段名"""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"配置项 {field}: {message}")


class DataValidationError(MicrogridError, ValueError):
    """数据校验失败，附带行号/列名"""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        self.row = row
        self.column = column
        location = []
        if row is not None:
            location.append(f"第{row}行")
        if column is not None:
            location.append(f"列 {column}")
        prefix = f"[{', '.join(location)}] " if location else ''
        super().__init__(f"{prefix}{message}")


class SchemaError(DataValidationError):
    """CSV表头缺列"""


class SeriesTooShortError(DataValidationError):
    """序列长度不足以采样回合窗口"""


class ContractViolation(MicrogridError, RuntimeError):
    """调用方违反前置条件（如功率未按可行域裁剪）"""


class DimensionMismatch(MicrogridError, ValueError):
    """维度/形状不一致"""

    def __init__(self, expected, actual, what: str = '维度'):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}不匹配: 期望 {expected}, 实际 {actual}")


class OracleLimitError(MicrogridError, ValueError):
    """预言机规模超限"""
