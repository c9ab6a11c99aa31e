#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
日志工具

各模块记录器都挂在 microgrid 根记录器下，首次取用时配置：
控制台 INFO 及以上，轮转文件（LOG_FILE）记录 DEBUG。
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from config import LOG_BACKUP_COUNT, LOG_FILE, LOG_LEVEL, LOG_MAX_SIZE

ROOT = 'microgrid'
FORMAT = logging.Formatter('[%(asctime)s] [%(name)s] [%(levelname)s] %(message)s',
                           datefmt='%Y-%m-%d %H:%M:%S')


def _file_handler() -> Optional[logging.Handler]:
    """日志目录不可写时返回 None，只保留控制台输出"""
    try:
        Path(LOG_FILE).parent.mkdir(parents=True, exist_ok=True)
        handler = RotatingFileHandler(LOG_FILE, maxBytes=LOG_MAX_SIZE, backupCount=LOG_BACKUP_COUNT,
                                      encoding='utf-8')
    except OSError:
        return None
    handler.setLevel(logging.DEBUG)
    return handler


def _root() -> logging.Logger:
    root = logging.getLogger(ROOT)
    if root.handlers:
        return root

    root.setLevel(getattr(logging, LOG_LEVEL.upper(), logging.INFO))
    root.propagate = False
    console = logging.StreamHandler(sys.stdout)
    console.setLevel(logging.INFO)
    file_handler = _file_handler()
    for handler in (console, file_handler):
        if handler is not None:
            handler.setFormatter(FORMAT)
            root.addHandler(handler)
    if file_handler is None:
        root.warning(f"无法创建日志文件 {LOG_FILE}，只输出到控制台")
    return root


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    获取日志记录器

    Args:
        name: 模块名（如 'trainer'），None 返回根记录器
    """
    root = _root()
    return root.getChild(name) if name else root
