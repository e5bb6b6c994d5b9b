"""
Pipeline commands; each returns a process exit status
"""
import functools
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from corpus.documents import build_person_docs
from corpus.enrichment import EnrichmentClient, FixtureEnrichmentClient, NullEnrichmentClient
from corpus.grouping import balance_groups, group_single_valued
from corpus.loader import load_sentences, load_triples, subjects_by_value_count
from corpus.types import Triple
from cli.pipeline_config import PipelineConfig
from data.storage import PreparedCorpus, load_gold, load_scores, save_scores
from embedding.persistence import load_model, save_model
from embedding.trainer import ParagraphVectorTrainer
from evaluation.metrics import EvalReport, evaluate
from evaluation.report import format_report
from mapping.mappers import apply_mapping
from scoring.base_scorer import ScoreRecord
from scoring.pipeline import build_scoring_models, score_subject
from utils.errors import ConfigurationError, DataError, ScoringError, TripleScorerError
from utils.logger import setup_logger

logger = setup_logger("commands")

MAX_LISTED_ERRORS = 20


def echo_path(output: Path) -> Path:
    """Where the effective config is echoed for a single output file"""
    return output.with_name(output.name + ".config.yaml")


def command(func: Callable[..., int]) -> Callable[..., int]:
    """Log pipeline errors and turn them into exit status 1"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> int:
        name = func.__name__.replace('cmd_', '')
        try:
            return func(*args, **kwargs)
        except TripleScorerError as e:
            logger.error(f"[ERROR] {name}: {e}")
            return 1
        except Exception as e:
            logger.error(f"[ERROR] {name}: unexpected failure: {e}", exc_info=True)
            return 1
    return wrapper


def _enricher(config: PipelineConfig) -> EnrichmentClient:
    if not config.paths.enrich_dir:
        return NullEnrichmentClient()
    config.require_paths('enrich_dir')
    return FixtureEnrichmentClient(config.paths.enrich_dir)


@command
def cmd_prepare(config: PipelineConfig) -> int:
    """Person docs, value groups and balance report into the prepared directory"""
    triples_path, sentences_path = config.require_paths('triples', 'sentences')
    enricher = _enricher(config)
    logger.info(f"[PREPARE] {config.corpus.property.value} triples from {triples_path}")

    triples = load_triples(triples_path, config.corpus.property)
    sentences = load_sentences(sentences_path)
    docs = build_person_docs(triples, sentences)
    groups = group_single_valued(triples, docs)
    groups = balance_groups(groups, config.corpus.floor, config.corpus.cap, enricher, config.corpus.shuffle_seed)

    store = PreparedCorpus(config.paths.prepared)
    store.save(triples, docs, groups)
    config.save(store.config_path)

    for group in groups:
        if group.warning:
            logger.warning(f"[WARN] '{group.value}': {group.warning}")
    return 0


@command
def cmd_train(config: PipelineConfig) -> int:
    """Paragraph vectors over every doc of the prepared corpus"""
    store = PreparedCorpus(config.paths.prepared)
    store.require()
    docs = store.load_docs()
    model_path = Path(config.paths.model)

    try:
        model = ParagraphVectorTrainer(config.training).train(list(docs.values()))
        save_model(model, model_path)
    except BaseException:
        if model_path.exists():
            model_path.unlink()
            logger.warning(f"[WARN] Removed stale model file {model_path}")
        raise
    config.save(echo_path(model_path))
    return 0


def _candidates(config: PipelineConfig, store: PreparedCorpus) -> Dict[str, List[str]]:
    """Subject -> candidate values, in load order"""
    if config.paths.candidates:
        path, = config.require_paths('candidates')
        return subjects_by_value_count(load_triples(path, config.corpus.property))
    triples: List[Triple] = store.load_triples(config.corpus.property)
    return {s: v for s, v in subjects_by_value_count(triples).items() if len(v) > 1}


@command
def cmd_score(config: PipelineConfig) -> int:
    """Raw relevance for every candidate triple, mapped to 0..max_value"""
    store = PreparedCorpus(config.paths.prepared)
    store.require()
    config.require_paths('model')
    embedding = load_model(config.paths.model)
    docs = store.load_docs()
    groups = store.load_groups(docs, config.corpus.property)
    candidates = _candidates(config, store)
    if not candidates:
        raise ScoringError("no candidate triples to score")

    scoring = config.scoring
    models = build_scoring_models(
        scoring.method, embedding, groups,
        fallback_docs=docs, infer_epochs=scoring.infer_epochs,
        reg=scoring.reg, iters=scoring.iters, lr=scoring.lr,
    )

    errors: List[str] = []
    records: List[ScoreRecord] = []
    for subject, values in candidates.items():
        try:
            records.extend(score_subject(subject, values, scoring.method, models, errors))
        except ScoringError as e:
            errors.append(f"{subject}: {e}")
            logger.warning(f"[WARN] {subject}: {e}")

    mapped = apply_mapping(records, config.mapping)
    scores_path = Path(config.paths.scores)
    save_scores(scores_path, mapped)
    config.save(echo_path(scores_path))
    logger.info(f"[SCORE] {scoring.method.value}/{config.mapping.kind.value}: {len(mapped)} triples "
                f"for {len(candidates)} subjects")

    if errors:
        logger.error(f"[ERROR] {len(errors)} scoring failures:")
        for message in errors[:MAX_LISTED_ERRORS]:
            logger.error(f"[ERROR]   {message}")
        if len(errors) > MAX_LISTED_ERRORS:
            logger.error(f"[ERROR]   ... and {len(errors) - MAX_LISTED_ERRORS} more")
        return 1
    return 0


@command
def cmd_eval(
    config: PipelineConfig,
    scores: Optional[Sequence[str]] = None,
    labels: Optional[Sequence[str]] = None,
    out: Optional[Callable[[str], None]] = None,
) -> int:
    """
    Print the results table and key=value metrics

    Args:
        config: effective configuration (gold path, delta, default scores path)
        scores: scores files to compare; defaults to paths.scores
        labels: method label per scores file; defaults to the file stems
        out: report sink, print by default
    """
    gold_path, = config.require_paths('gold')
    scores = list(scores) if scores else [config.paths.scores]
    if labels and len(labels) != len(scores):
        raise ConfigurationError(f"{len(labels)} labels given for {len(scores)} scores files")
    labels = list(labels) if labels else [Path(s).stem for s in scores]

    gold = load_gold(gold_path)
    reports: List[EvalReport] = []
    for label, path in zip(labels, scores):
        if not Path(path).exists():
            raise DataError(f"file not found: {path} (scores)")
        reports.append(evaluate(load_scores(path), gold, config.evaluation.delta, method=label))

    report = format_report(reports)
    if out is None:
        sys.stdout.write(report)
    else:
        out(report)
    return 0
