#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
工具模块
"""

from .logger import get_logger
from .errors import (
    MicrogridError, ConfigError, DataValidationError, SchemaError,
    SeriesTooShortError, ContractViolation, DimensionMismatch, OracleLimitError,
)
from .time_utils import parse_timestamps, find_hourly_break, hourly_index, format_timestamp

__all__ = [
    'get_logger',
    'MicrogridError', 'ConfigError', 'DataValidationError', 'SchemaError',
    'SeriesTooShortError', 'ContractViolation', 'DimensionMismatch', 'OracleLimitError',
    'parse_timestamps', 'find_hourly_break', 'hourly_index', 'format_timestamp',
]
