"""
Command-line surface: prepare, train, score, eval
"""
import argparse
from typing import Any, Dict

from embedding.model import TrainMode
from mapping.mappers import MappingKind
from scoring.base_scorer import ScoringMethod

# argparse dest -> PipelineConfig key
FLAG_KEYS = {
    'triples': 'paths.triples',
    'sentences': 'paths.sentences',
    'gold': 'paths.gold',
    'enrich_dir': 'paths.enrich_dir',
    'candidates': 'paths.candidates',
    'prepared': 'paths.prepared',
    'model': 'paths.model',
    'property': 'corpus.property',
    'floor': 'corpus.floor',
    'cap': 'corpus.cap',
    'shuffle_seed': 'corpus.shuffle_seed',
    'mode': 'training.mode',
    'dim': 'training.dim',
    'window': 'training.window',
    'negative': 'training.negative',
    'epochs': 'training.epochs',
    'min_count': 'training.min_count',
    'workers': 'training.workers',
    'seed': 'training.seed',
    'initial_lr': 'training.initial_lr',
    'final_lr': 'training.final_lr',
    'dbow_words': 'training.dbow_words',
    'method': 'scoring.method',
    'reg': 'scoring.reg',
    'iters': 'scoring.iters',
    'logreg_lr': 'scoring.lr',
    'infer_epochs': 'scoring.infer_epochs',
    'mapping': 'mapping.kind',
    'max_value': 'mapping.max_value',
    'delta': 'evaluation.delta',
    'log_level': 'logging.level',
    'log_dir': 'logging.log_dir',
}


def _shared_flags() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument('--config', help="YAML config file (default: config/config.yaml)")
    shared.add_argument('--seed', type=int, help="random seed")
    shared.add_argument('--workers', type=int, help="training threads; 1 is reproducible")
    shared.add_argument('--log-level', dest='log_level', help="DEBUG, INFO, WARNING or ERROR")
    shared.add_argument('--log-dir', dest='log_dir', help="also write a rotating log file here")
    shared.add_argument('--property', choices=['profession', 'nationality'])
    shared.add_argument('--prepared', help="prepared corpus directory")
    return shared


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='triple-scorer',
        description="Score the relevance of multi-valued knowledge-base triples with paragraph vectors",
    )
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True
    shared = _shared_flags()

    prepare = commands.add_parser('prepare', parents=[shared], help="build person docs and value groups")
    prepare.add_argument('--out', dest='prepared', help="prepared corpus directory to write")
    prepare.add_argument('--triples', help="subject<TAB>value file")
    prepare.add_argument('--sentences', help="subject<TAB>sentence file")
    prepare.add_argument('--enrich-dir', dest='enrich_dir', help="offline enrichment pages directory")
    prepare.add_argument('--floor', type=int, help="enrich groups smaller than this (default 100)")
    prepare.add_argument('--cap', type=int, help="truncate groups larger than this (default 5000)")
    prepare.add_argument('--shuffle-seed', dest='shuffle_seed', type=int,
                         help="shuffle members with this seed before truncation")

    train = commands.add_parser('train', parents=[shared], help="train paragraph vectors over all person docs")
    train.add_argument('--model', help="model file to write")
    train.add_argument('--mode', choices=[m.value for m in TrainMode])
    train.add_argument('--dim', type=int)
    train.add_argument('--window', type=int)
    train.add_argument('--negative', type=int)
    train.add_argument('--epochs', type=int)
    train.add_argument('--min-count', dest='min_count', type=int)
    train.add_argument('--initial-lr', dest='initial_lr', type=float)
    train.add_argument('--final-lr', dest='final_lr', type=float)
    train.add_argument('--dbow-words', dest='dbow_words', action='store_true', default=None,
                       help="interleave skip-gram word training (dbow only)")

    score = commands.add_parser('score', parents=[shared], help="score candidate triples and map to 0..7")
    score.add_argument('--model', help="model file to read")
    score.add_argument('--scores', help="scores file to write")
    score.add_argument('--candidates', help="triples to score (default: multi-valued subjects)")
    score.add_argument('--method', choices=[m.value for m in ScoringMethod])
    score.add_argument('--mapping', choices=[k.value for k in MappingKind])
    score.add_argument('--max-value', '--max-score', dest='max_value', type=int)
    score.add_argument('--reg', type=float, help="logreg L2 strength")
    score.add_argument('--iters', type=int, help="logreg gradient steps")
    score.add_argument('--logreg-lr', dest='logreg_lr', type=float, help="logreg step size")
    score.add_argument('--infer-epochs', dest='infer_epochs', type=int,
                       help="inference passes for subjects without a trained vector")

    evaluate = commands.add_parser('eval', parents=[shared], help="compare scores against gold labels")
    evaluate.add_argument('--scores', nargs='+', help="one or more scores files")
    evaluate.add_argument('--labels', nargs='+', help="method label per scores file")
    evaluate.add_argument('--gold', help="subject<TAB>value<TAB>score file")
    evaluate.add_argument('--delta', type=int)

    return parser


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Config overrides for every flag that was given"""
    overrides = {}
    for dest, key in FLAG_KEYS.items():
        value = getattr(args, dest, None)
        if value is not None:
            overrides[key] = value
    if args.command == 'score' and getattr(args, 'scores', None):
        overrides['paths.scores'] = args.scores
    return overrides
