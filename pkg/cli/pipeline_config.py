"""
Effective pipeline configuration: YAML sections composed with command-line flags
"""
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from corpus.grouping import DEFAULT_CAP, DEFAULT_FLOOR
from corpus.types import Property
from embedding.model import TrainConfig, TrainMode
from evaluation.metrics import DEFAULT_DELTA
from mapping.mappers import MappingKind, MappingSpec
from scoring.base_scorer import ScoringMethod
from scoring.logreg_scorer import DEFAULT_ITERS, DEFAULT_LR, DEFAULT_REG
from utils.config_loader import ConfigLoader, dump_yaml
from utils.errors import ConfigurationError, DataError
from utils.logger import setup_logger

logger = setup_logger("pipeline_config")

PathLike = Union[str, Path]


@dataclass(frozen=True)
class PathsConfig:
    triples: Optional[str] = None
    sentences: Optional[str] = None
    gold: Optional[str] = None
    enrich_dir: Optional[str] = None
    candidates: Optional[str] = None
    prepared: str = "output/prepared"
    model: str = "output/model.pvec"
    scores: str = "output/scores.tsv"


@dataclass(frozen=True)
class CorpusConfig:
    property: Property = Property.PROFESSION
    floor: int = DEFAULT_FLOOR
    cap: int = DEFAULT_CAP
    shuffle_seed: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'property', Property.parse(self.property))
        for name in ('floor', 'cap'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ConfigurationError(f"corpus.{name} must be a non-negative integer, got {value!r}")
        if self.floor > self.cap:
            raise ConfigurationError(f"corpus.floor ({self.floor}) must not exceed corpus.cap ({self.cap})")


@dataclass(frozen=True)
class ScoringConfig:
    method: ScoringMethod = ScoringMethod.COSSIM
    reg: float = DEFAULT_REG
    iters: int = DEFAULT_ITERS
    lr: float = DEFAULT_LR
    infer_epochs: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'method', ScoringMethod.parse(self.method))
        if self.reg < 0:
            raise ConfigurationError(f"scoring.reg must be >= 0, got {self.reg}")
        if isinstance(self.iters, bool) or not isinstance(self.iters, int) or self.iters < 1:
            raise ConfigurationError(f"scoring.iters must be an integer >= 1, got {self.iters!r}")
        if not self.lr > 0:
            raise ConfigurationError(f"scoring.lr must be positive, got {self.lr}")
        if self.infer_epochs is not None and (not isinstance(self.infer_epochs, int) or self.infer_epochs < 1):
            raise ConfigurationError(f"scoring.infer_epochs must be an integer >= 1, got {self.infer_epochs!r}")


@dataclass(frozen=True)
class EvaluationConfig:
    delta: int = DEFAULT_DELTA

    def __post_init__(self):
        if isinstance(self.delta, bool) or not isinstance(self.delta, int) or self.delta < 0:
            raise ConfigurationError(f"evaluation.delta must be a non-negative integer, got {self.delta!r}")


@dataclass(frozen=True)
class LoggingConfig:
    level: str = "INFO"
    log_dir: Optional[str] = None

    def __post_init__(self):
        level = str(self.level).upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ConfigurationError(f"logging.level must be a standard level name, got {self.level!r}")
        object.__setattr__(self, 'level', level)


_FLOAT_FIELDS = {'initial_lr', 'final_lr', 'noise_power', 'reg', 'lr', 'log_floor'}


def _section(cls, name: str, values: Mapping[str, Any]):
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigurationError(f"unknown key(s) in section '{name}': {', '.join(unknown)}")
    kwargs = {}
    for key, value in values.items():
        if key in _FLOAT_FIELDS and value is not None and not isinstance(value, bool):
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ConfigurationError(f"{name}.{key} must be a number, got {value!r}") from None
        kwargs[key] = value
    return cls(**kwargs)


def _plain(value: Any) -> Any:
    if isinstance(value, (Property, TrainMode, ScoringMethod, MappingKind)):
        return value.value
    return value


def _as_dict(section) -> Dict[str, Any]:
    return {f.name: _plain(getattr(section, f.name)) for f in fields(section)}


@dataclass(frozen=True)
class PipelineConfig:
    """
    Every setting a command needs

    Built from YAML sections, then overridden by command-line flags.
    Round-trips losslessly through to_dict/from_dict and the YAML file.
    """
    paths: PathsConfig = field(default_factory=PathsConfig)
    corpus: CorpusConfig = field(default_factory=CorpusConfig)
    training: TrainConfig = field(default_factory=TrainConfig)
    scoring: ScoringConfig = field(default_factory=ScoringConfig)
    mapping: MappingSpec = field(default_factory=MappingSpec)
    evaluation: EvaluationConfig = field(default_factory=EvaluationConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    _SECTION_TYPES = {
        'paths': PathsConfig,
        'corpus': CorpusConfig,
        'training': TrainConfig,
        'scoring': ScoringConfig,
        'mapping': MappingSpec,
        'evaluation': EvaluationConfig,
        'logging': LoggingConfig,
    }

    @classmethod
    def from_dict(cls, data: Mapping[str, Mapping[str, Any]]) -> "PipelineConfig":
        unknown = sorted(set(data) - set(cls._SECTION_TYPES))
        if unknown:
            raise ConfigurationError(f"unknown config section(s): {', '.join(unknown)}")
        sections = {}
        for name, section_type in cls._SECTION_TYPES.items():
            try:
                sections[name] = _section(section_type, name, data.get(name) or {})
            except TypeError as e:
                raise ConfigurationError(f"section '{name}': {e}") from e
        return cls(**sections)

    def to_dict(self) -> Dict[str, Dict[str, Any]]:
        return {name: _as_dict(getattr(self, name)) for name in self._SECTION_TYPES}

    def with_overrides(self, overrides: Mapping[str, Any]) -> "PipelineConfig":
        """
        Apply 'section.key' overrides; None values are ignored

        Args:
            overrides: e.g. {'training.dim': 100, 'scoring.method': 'logreg'}
        """
        data = self.to_dict()
        for dotted, value in overrides.items():
            if value is None:
                continue
            section, _, key = dotted.partition('.')
            if section not in data or key not in data[section]:
                raise ConfigurationError(f"unknown config key '{dotted}'")
            data[section][key] = _plain(value)
        return PipelineConfig.from_dict(data)

    def save(self, path: PathLike):
        dump_yaml(self.to_dict(), path)

    def require_paths(self, *names: str) -> List[Path]:
        """
        Input paths that must exist before a command starts

        Raises:
            ConfigurationError: a required path is not configured
            DataError: a configured path does not exist
        """
        resolved = []
        for name in names:
            value = getattr(self.paths, name)
            if not value:
                raise ConfigurationError(f"paths.{name} is not set (use --{name.replace('_', '-')} or the config file)")
            path = Path(value)
            if not path.exists():
                raise DataError(f"file not found: {path} (paths.{name})")
            resolved.append(path)
        return resolved


def load_config(config_path: Optional[PathLike] = None) -> PipelineConfig:
    """PipelineConfig from a YAML file; the repository default when no path is given"""
    loader = ConfigLoader(config_path)
    config = PipelineConfig.from_dict(loader.sections())
    logger.info(f"[OK] Configuration loaded from {loader.config_path}")
    return config
