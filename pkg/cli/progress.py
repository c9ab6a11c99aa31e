#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
进度日志：订阅训练/评估/扫描事件并输出日志
"""

from typing import Dict, List, Optional

import numpy as np

from config import TRAIN_LOG_EVERY
from core.event_bus import EventType, Handler
from utils.logger import get_logger

logger = get_logger('cli.progress')


class TrainingProgress:
    """
    训练进度：每 every 回合输出一次近期平均奖励，训练结束时输出同步次数

    Attributes:
        rewards: 已完成回合的累计奖励
        syncs: 目标网络同步次数
    """

    def __init__(self, every: int = TRAIN_LOG_EVERY):
        self.every = max(1, every)
        self.episodes = 0
        self.rewards: List[float] = []
        self.syncs = 0

    def handlers(self) -> Dict[str, Handler]:
        return {
            EventType.TRAINING_STARTED: self.on_started,
            EventType.EPISODE_FINISHED: self.on_episode,
            EventType.TARGET_SYNCED: self.on_sync,
            EventType.TRAINING_FINISHED: self.on_finished,
        }

    def on_started(self, data: dict):
        self.episodes = data['episodes']
        self.rewards.clear()
        self.syncs = 0

    def on_episode(self, stats):
        self.rewards.append(stats.cumulative_reward)
        done = len(self.rewards)
        if done % self.every == 0 or done == self.episodes:
            recent = float(np.mean(self.rewards[-self.every:]))
            logger.info(f"回合 {done}/{self.episodes}: 近{min(self.every, done)}回合平均奖励 {recent:.2f}, "
                        f"ε={stats.epsilon:.4f}")

    def on_sync(self, data: dict):
        self.syncs += 1

    def on_finished(self, data: dict):
        logger.info(f"训练结束: {data['steps']} 步, 目标网络同步 {self.syncs} 次")


class SweepProgress:
    """扫描进度：逐单元输出成功/失败"""

    def __init__(self, total: int):
        self.total = total
        self.finished = 0
        self.failed: List[int] = []

    def handlers(self) -> Dict[str, Handler]:
        return {
            EventType.SWEEP_CELL_FINISHED: self.on_finished,
            EventType.SWEEP_CELL_FAILED: self.on_failed,
        }

    def on_finished(self, row: dict):
        self.finished += 1
        logger.info(f"[{self.done}/{self.total}] 单元 {row['cell']} 完成: "
                    f"{row['scheme']} 噪声 {row['noise']} seed={row['seed']} "
                    f"累计奖励 {row['cumulative_reward']:.4f}")

    def on_failed(self, row: dict):
        self.failed.append(row['cell'])
        logger.error(f"[{self.done}/{self.total}] 单元 {row['cell']} 失败: {row['error']}")

    @property
    def done(self) -> int:
        return self.finished + len(self.failed)

    def summary(self) -> Optional[str]:
        if not self.failed:
            return None
        return f"失败单元: {', '.join(str(c) for c in sorted(set(self.failed)))}"
