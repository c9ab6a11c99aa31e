#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Microgrid Dispatch - 微网储能调度（D3QN）命令行入口

功能说明：
1. train   - 训练调度智能体，写出检查点、回合奖励轨迹和配置快照
2. eval    - 加载检查点做逐小时滚动评估（可叠加预测噪声）
3. sweep   - 按方案/更新方式/架构/噪声的笛卡尔积批量训练+评估
4. oracle  - 小窗口穷举或动态规划求最优调度
5. gendata - 生成合成场景 CSV

启动方式：
- python3 main.py train --scheme pf --episodes 2000
- python3 main.py eval --checkpoint storage/runs/pf_d3qn_soft_seed42/model.ckpt --noise 0.1
- python3 main.py sweep --config sweep.json
- python3 main.py sweep --mode ablation --scheme pb
- python3 main.py oracle --start 24 --horizon 4
- python3 main.py gendata --days 28 --seed 7 --out storage/data/

退出码：成功 0，任何报错 1。扫描进程数由环境变量 MICROGRID_WORKERS 控制（可写在 .env）。
"""

import argparse
import sys
from typing import Dict, List, Optional

from config import APP_NAME, ARCH_PRESETS, DATA_DIR, SWEEP_MODES, VERSION
from cli.commands import cmd_eval, cmd_gendata, cmd_oracle, cmd_sweep, cmd_train
from cli.run_config import RunConfig, arch_overrides
from utils.errors import MicrogridError
from utils.logger import get_logger

logger = get_logger('main')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='JSON 配置文件（扁平点号键）')
    common.add_argument('--seed', type=int, help='随机种子')
    common.add_argument('--scheme', choices=['pb', 'pf', 'common'], help='状态方案')
    common.add_argument('--update', choices=['soft', 'hard'], help='目标网络更新方式')
    common.add_argument('--arch', choices=list(ARCH_PRESETS), help='网络架构')
    common.add_argument('--noise', type=float, help='预测噪声水平（比例）')
    common.add_argument('--episodes', type=int, help='训练回合数')
    common.add_argument('--out', help='输出目录')
    common.add_argument('--data', help='场景 CSV（缺省使用合成数据）')

    parser = argparse.ArgumentParser(description=f'{APP_NAME} v{VERSION}')
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('train', parents=[common], help='训练')

    eval_parser = sub.add_parser('eval', parents=[common], help='评估检查点')
    eval_parser.add_argument('--checkpoint', help='检查点文件')
    eval_parser.add_argument('--explore', action='store_true', help='保留 agent.eval_epsilon 的探索率')

    sweep_parser = sub.add_parser('sweep', parents=[common], help='批量实验')
    sweep_parser.add_argument('--mode', choices=list(SWEEP_MODES),
                              help='grid=笛卡尔积扫描, noise=噪声扫描, ablation=目标消融, arch=架构对比')

    oracle_parser = sub.add_parser('oracle', parents=[common], help='最优调度预言机')
    oracle_parser.add_argument('--start', type=int, help='窗口起点')
    oracle_parser.add_argument('--horizon', type=int, help='窗口长度（穷举时 H <= 8）')
    oracle_parser.add_argument('--dp', action='store_true', help='使用动态规划')
    oracle_parser.add_argument('--bins', type=int, help='动态规划 SOC 网格点数')

    gendata_parser = sub.add_parser('gendata', parents=[common], help='生成合成场景')
    gendata_parser.add_argument('--days', type=int, help='天数')
    return parser


def collect_overrides(args: argparse.Namespace) -> Dict:
    """命令行参数 -> 扁平配置键"""
    overrides = {
        'scheme': args.scheme,
        'agent.update': args.update,
        'noise': args.noise,
        'episodes': args.episodes,
        'paths.out': args.out,
        'paths.data': args.data,
    }
    # gendata 的 --seed 指合成数据种子
    overrides['synthetic.seed' if args.command == 'gendata' else 'seed'] = args.seed
    if args.arch:
        overrides.update(arch_overrides(args.arch))
    if args.command == 'eval':
        overrides['paths.checkpoint'] = args.checkpoint
        overrides['eval.explore'] = True if args.explore else None
    if args.command == 'sweep':
        overrides['sweep.mode'] = args.mode
    if args.command == 'oracle':
        overrides.update({
            'oracle.start': args.start,
            'oracle.horizon': args.horizon,
            'oracle.bins': args.bins,
            'oracle.mode': 'dp' if args.dp else None,
        })
    if args.command == 'gendata':
        overrides['synthetic.days'] = args.days
    return overrides


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_sources(args.config, collect_overrides(args))
        if args.command == 'train':
            outputs = cmd_train(cfg)
            print(f"检查点: {outputs.checkpoint}")
        elif args.command == 'eval':
            outputs = cmd_eval(cfg, scheme=args.scheme)
            print(f"累计奖励: {outputs.report.cumulative_reward:.4f}")
            print(f"报告: {outputs.summary}")
        elif args.command == 'sweep':
            outputs = cmd_sweep(cfg)
            print(f"汇总: {outputs.path}")
            if outputs.failed:
                return 1
        elif args.command == 'oracle':
            cmd_oracle(cfg)
        elif args.command == 'gendata':
            path = cmd_gendata(cfg['synthetic.days'], cfg['synthetic.seed'], args.out or DATA_DIR)
            print(f"已生成: {path}")
    except MicrogridError as e:
        logger.error(str(e))
        return 1
    return 0


def main():
    """主函数"""
    sys.exit(run())


if __name__ == "__main__":
    main()
