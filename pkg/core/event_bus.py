#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
事件总线 - 训练/评估/扫描进度通知

训练循环、滚动评估和扫描只发布事件；进度日志由 cli.progress 中的订阅者输出。
每个进程一个实例，扫描工作进程各自订阅。
"""

from collections import defaultdict
from contextlib import contextmanager
from typing import Any, Callable, Dict, Iterator, List, Optional

from utils.logger import get_logger

logger = get_logger('event_bus')

Handler = Callable[[Any], None]


class EventType:
    """事件类型定义"""

    # 训练
    TRAINING_STARTED = 'training_started'
    EPISODE_FINISHED = 'episode_finished'      # 数据为 EpisodeStats
    TARGET_SYNCED = 'target_synced'
    TRAINING_FINISHED = 'training_finished'

    # 评估
    ROLLOUT_FINISHED = 'rollout_finished'      # 数据为 EvalReport.summary()

    # 扫描
    SWEEP_CELL_FINISHED = 'sweep_cell_finished'
    SWEEP_CELL_FAILED = 'sweep_cell_failed'


class EventBus:
    """进程内发布/订阅（训练单线程运行，不加锁）"""

    def __init__(self):
        self._handlers: Dict[str, List[Handler]] = defaultdict(list)

    def subscribe(self, event_type: str, callback: Handler):
        if callback not in self._handlers[event_type]:
            self._handlers[event_type].append(callback)

    def unsubscribe(self, event_type: str, callback: Handler):
        if callback in self._handlers[event_type]:
            self._handlers[event_type].remove(callback)

    @contextmanager
    def subscribed(self, handlers: Dict[str, Handler]) -> Iterator['EventBus']:
        """
        在 with 块内临时订阅一组处理函数

        Args:
            handlers: 事件类型 -> 回调
        """
        for event_type, callback in handlers.items():
            self.subscribe(event_type, callback)
        try:
            yield self
        finally:
            for event_type, callback in handlers.items():
                self.unsubscribe(event_type, callback)

    def publish(self, event_type: str, data: Any = None):
        """发布事件；回调抛出的异常只记日志，不影响发布方"""
        for callback in list(self._handlers[event_type]):
            try:
                callback(data)
            except Exception as e:
                logger.error(f"事件处理错误 [{event_type}]: {e}")

    def count(self, event_type: str) -> int:
        return len(self._handlers[event_type])

    def clear(self, event_type: Optional[str] = None):
        """清除订阅，None 表示全部"""
        if event_type:
            self._handlers[event_type].clear()
        else:
            self._handlers.clear()


# 进程级实例
event_bus = EventBus()
