#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
智能体测试

测试内容：
1. ε 指数衰减
2. ε-greedy 选动作与 TD 目标
3. 经验回放池
4. 训练循环（小规模）
"""

import numpy as np
import pytest

from agent import (
    AgentConfig, D3QNAgent, ExponentialSchedule, Experience, ReplayMemory, bootstrap_targets,
    epsilon_at, push_and_sample, select_action, train,
)
import agent.trainer as trainer_module
from core.event_bus import EventType, event_bus
from env.microgrid import Action, MicrogridEnv
from net import init_params
from schemes import state_dim
from utils.errors import ConfigError

SMALL_AGENT = dict(batch_size=8, episode_len=12, target_period=12, hidden=(16, 16, 16))


def q_net(q_values):
    """输出固定 Q 值的单层网络"""
    params = init_params(1, dueling=False, hidden=(), rng_seed=0)
    params.weights['q.W0'][...] = 0.0
    params.weights['q.b0'][:] = q_values
    return params


# ==================== ε 衰减 ====================

def test_schedule_values():
    schedule = ExponentialSchedule(0.3, 0.999, 0.01)
    assert schedule.value(0) == 0.3
    assert schedule.value(1) == pytest.approx(0.2997)
    assert schedule.value(10000) == 0.01


def test_schedule_reaches_floor():
    assert epsilon_at(3399) > 0.01
    assert epsilon_at(3400) == 0.01


def test_schedule_rejects_negative_step():
    with pytest.raises(ValueError):
        epsilon_at(-1)


# ==================== 选动作与目标 ====================

def test_greedy_action(rng):
    assert select_action(q_net([1.0, 5.0, 2.0, 2.0, 0.0]), np.zeros(1), 0.0, rng) == 1


def test_greedy_tie_breaks_to_lowest_index(rng):
    assert select_action(q_net([3.0] * 5), np.zeros(1), 0.0, rng) == 0


def test_full_exploration_is_uniform():
    rng = np.random.default_rng(0)
    params = q_net([1.0, 5.0, 2.0, 2.0, 0.0])
    counts = np.bincount([select_action(params, np.zeros(1), 1.0, rng) for _ in range(10000)], minlength=5)
    np.testing.assert_allclose(counts / 10000, 0.2, atol=0.02)


def test_epsilon_out_of_range(rng):
    with pytest.raises(ValueError):
        select_action(q_net([0.0] * 5), np.zeros(1), 1.5, rng)


def test_double_target_hand_case():
    y = bootstrap_targets([1.0], np.array([[0.5, 2.0]]), np.array([[3.0, 1.0]]), 0.99, double=True)
    assert y[0] == 1.0 + 0.99 * 1.0
    assert y[0] == pytest.approx(1.99)


def test_vanilla_target_hand_case():
    y = bootstrap_targets([1.0], None, np.array([[3.0, 1.0]]), 0.99, double=False)
    assert y[0] == pytest.approx(3.97)


def test_zero_gamma_target_is_reward():
    y = bootstrap_targets([2.5, -1.0], np.ones((2, 5)), np.full((2, 5), 9.0), 0.0, double=True)
    np.testing.assert_array_equal(y, [2.5, -1.0])


# ==================== 经验回放 ====================

def experience(i, dim=2):
    return Experience(np.full(dim, float(i)), i % 5, float(i), np.full(dim, float(i + 1)))


def test_replay_fifo_eviction():
    memory = ReplayMemory(3, 2)
    for i in range(4):
        memory.push(experience(i))
    assert len(memory) == 3
    assert [e.reward for e in memory.items()] == [1.0, 2.0, 3.0]


def test_replay_full_batch_is_permutation(rng):
    memory = ReplayMemory(64, 2)
    for i in range(64):
        memory.push(experience(i))
    batch = memory.sample(64, rng)
    assert sorted(batch.rewards) == [float(i) for i in range(64)]


def test_replay_sampling_uniformity():
    rng = np.random.default_rng(3)
    memory = ReplayMemory(1000, 1)
    for i in range(1000):
        memory.push(experience(i, dim=1))
    counts = np.zeros(1000)
    for _ in range(10000):
        counts[memory.sample(64, rng).rewards.astype(int)] += 1
    deviation = np.abs(counts / 10000 - 0.064) / 0.064
    assert np.mean(deviation < 0.10) > 0.95
    assert deviation.max() < 0.35


def test_replay_underfilled(rng):
    memory = ReplayMemory(10, 2)
    assert push_and_sample(memory, experience(0), 2, rng) is None
    assert len(push_and_sample(memory, experience(1), 2, rng)) == 2
    with pytest.raises(ValueError):
        memory.sample(5, rng)


def test_replay_rejects_wrong_dimension():
    memory = ReplayMemory(10, 3)
    with pytest.raises(ValueError):
        memory.push(experience(0, dim=2))


# ==================== 智能体 ====================

def test_agent_config_validation():
    with pytest.raises(ConfigError):
        AgentConfig(batch_size=64, replay_capacity=32)
    with pytest.raises(ConfigError):
        AgentConfig(update='medium')
    with pytest.raises(ConfigError):
        AgentConfig(tau=0.0)


def test_agent_config_arch():
    assert AgentConfig().arch == 'd3qn'
    cfg = AgentConfig().with_arch('dqn')
    assert (cfg.double, cfg.dueling, cfg.arch) == (False, False, 'dqn')
    with pytest.raises(ConfigError):
        AgentConfig().with_arch('rainbow')


def test_agent_learns_only_after_warmup():
    rng = np.random.default_rng(0)
    agent = D3QNAgent(4, AgentConfig(**SMALL_AGENT), rng)
    for i in range(7):
        agent.remember(rng.normal(size=4), i % 5, 1.0, rng.normal(size=4))
        assert agent.learn() is None
    agent.remember(rng.normal(size=4), 0, 1.0, rng.normal(size=4))
    loss = agent.learn()
    assert loss is not None and loss >= 0.0


def test_agent_hard_sync_copies_online():
    rng = np.random.default_rng(0)
    agent = D3QNAgent(4, AgentConfig(update='hard', **SMALL_AGENT), rng)
    for i in range(8):
        agent.remember(rng.normal(size=4), i % 5, float(i), rng.normal(size=4))
    agent.learn()
    assert not np.array_equal(agent.online.weights['value.W0'], agent.target.weights['value.W0'])
    agent.sync_target()
    for name, w in agent.online.weights.items():
        np.testing.assert_array_equal(agent.target.weights[name], w)


# ==================== 训练循环 ====================

def test_train_zero_episodes_keeps_init(series_2d, cfg):
    agent_cfg = AgentConfig(**SMALL_AGENT)
    result = train(series_2d, 'pf', cfg, agent_cfg, episodes=0, seed=5, horizon=4)
    assert result.trace == []
    expected = init_params(state_dim('pf', 4), True, agent_cfg.hidden, np.random.default_rng(5))
    for name, w in expected.weights.items():
        np.testing.assert_array_equal(result.params.weights[name], w)


@pytest.mark.parametrize('scheme', ['pb', 'pf', 'common'])
def test_train_trace_length(series_2d, cfg, scheme):
    result = train(series_2d, scheme, cfg, AgentConfig(**SMALL_AGENT), episodes=3, seed=1, horizon=4)
    assert len(result.trace) == 3
    assert result.global_steps == 36
    assert list(result.trace_frame().columns) == ['episode', 'cumulative_reward', 'epsilon', 'loss_mean']
    assert result.params.input_dim == state_dim(scheme, 4)


def test_train_is_deterministic(series_2d, cfg):
    a = train(series_2d, 'pf', cfg, AgentConfig(**SMALL_AGENT), episodes=4, seed=9, horizon=4)
    b = train(series_2d, 'pf', cfg, AgentConfig(**SMALL_AGENT), episodes=4, seed=9, horizon=4)
    np.testing.assert_array_equal(a.rewards(), b.rewards())
    for name, w in a.params.weights.items():
        np.testing.assert_array_equal(b.params.weights[name], w)


def test_train_publishes_events(series_2d, cfg):
    episodes, synced = [], []
    event_bus.subscribe(EventType.EPISODE_FINISHED, episodes.append)
    event_bus.subscribe(EventType.TARGET_SYNCED, synced.append)
    result = train(series_2d, 'pf', cfg, AgentConfig(**SMALL_AGENT), episodes=2, seed=0, horizon=4)
    assert len(episodes) == 2
    assert len(synced) == result.global_steps // SMALL_AGENT['target_period']


def test_hard_update_training_ends_synced(series_2d, cfg):
    result = train(series_2d, 'pf', cfg, AgentConfig(update='hard', **SMALL_AGENT),
                   episodes=2, seed=0, horizon=4)
    for name, w in result.params.weights.items():
        np.testing.assert_array_equal(result.target.weights[name], w)


def test_training_result_checkpoint(series_2d, cfg):
    result = train(series_2d, 'pb', cfg, AgentConfig(**SMALL_AGENT), episodes=1, seed=0, horizon=4)
    checkpoint = result.to_checkpoint()
    assert checkpoint.arch_name == 'd3qn'
    assert checkpoint.horizon == 4
    checkpoint.check_scheme('pb', 4)


def weight_bytes(params):
    return b''.join(params.weights[name].tobytes() for name in sorted(params.weights))


def test_target_changes_only_at_sync_steps(series_2d, cfg, monkeypatch):
    period = 5
    agents = []

    class RecordingAgent(D3QNAgent):
        """每次 learn 前记录目标网络参数（第 k 次调用时全局步数为 k）"""

        def __init__(self, *args, **kwargs):
            super().__init__(*args, **kwargs)
            self.snapshots = []
            agents.append(self)

        def learn(self):
            self.snapshots.append(weight_bytes(self.target))
            return super().learn()

    monkeypatch.setattr(trainer_module, 'D3QNAgent', RecordingAgent)
    agent_cfg = AgentConfig(**{**SMALL_AGENT, 'target_period': period})
    result = train(series_2d, 'pf', cfg, agent_cfg, episodes=3, seed=0, horizon=4)

    snapshots = agents[0].snapshots
    assert len(snapshots) == result.global_steps == 36
    changed = [k for k in range(1, len(snapshots)) if snapshots[k] != snapshots[k - 1]]
    assert all(k % period == 0 for k in changed)
    # 学习开始后每次同步都会改变软更新的目标网络
    assert {15, 20, 25, 30, 35} <= set(changed)


def test_replay_stores_commanded_action_when_clipped(series_2d, cfg, monkeypatch):
    agents, outcomes = [], []

    class AlwaysCharge(D3QNAgent):
        def __init__(self, *args, **kwargs):
            super().__init__(*args, **kwargs)
            agents.append(self)

        def act(self, state, epsilon):
            return int(Action.FULL_CHARGE)

    class FullBatteryEnv(MicrogridEnv):
        def reset(self, rng_seed=None, soc=None):
            return super().reset(soc=self.cfg.soc_max)

        def step(self, action, pr_scaled, ci_scaled, p_u):
            outcome = super().step(action, pr_scaled, ci_scaled, p_u)
            outcomes.append(outcome)
            return outcome

    monkeypatch.setattr(trainer_module, 'D3QNAgent', AlwaysCharge)
    monkeypatch.setattr(trainer_module, 'MicrogridEnv', FullBatteryEnv)
    train(series_2d, 'pf', cfg, AgentConfig(**SMALL_AGENT), episodes=1, seed=0, horizon=4)

    assert outcomes[0].clipped
    assert outcomes[0].p_b_realized == 0.0
    stored = agents[0].memory.items()
    assert stored
    assert all(e.action == Action.FULL_CHARGE for e in stored)
