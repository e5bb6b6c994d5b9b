"""
Command-line entry: parse flags, compose the effective config, dispatch
"""
from typing import List, Optional

from cli.commands import cmd_eval, cmd_prepare, cmd_score, cmd_train
from cli.parser import build_parser, overrides_from_args
from cli.pipeline_config import PipelineConfig, load_config
from utils.config_loader import DEFAULT_CONFIG_PATH
from utils.errors import TripleScorerError
from utils.logger import enable_file_logging, set_log_level, setup_logger

logger = setup_logger("cli")

__all__ = [
    "main", "build_parser", "PipelineConfig", "load_config",
    "cmd_prepare", "cmd_train", "cmd_score", "cmd_eval",
]


def resolve_config(args) -> PipelineConfig:
    """YAML file (explicit, else the repository default if present) with flag overrides on top"""
    if args.config:
        base = load_config(args.config)
    elif DEFAULT_CONFIG_PATH.exists():
        base = load_config(DEFAULT_CONFIG_PATH)
    else:
        base = PipelineConfig()
    return base.with_overrides(overrides_from_args(args))


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
    except TripleScorerError as e:
        logger.error(f"[ERROR] {args.command}: {e}")
        return 1

    set_log_level(config.logging.level)
    if config.logging.log_dir:
        enable_file_logging(config.logging.log_dir)

    if args.command == 'prepare':
        return cmd_prepare(config)
    if args.command == 'train':
        return cmd_train(config)
    if args.command == 'score':
        return cmd_score(config)
    return cmd_eval(config, scores=args.scores, labels=args.labels)
