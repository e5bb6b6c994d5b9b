"""
Custom exception classes for the triple scoring pipeline
"""
from typing import Iterable, Optional, Tuple


class TripleScorerError(Exception):
    """Base exception for all pipeline errors"""
    pass


class ConfigurationError(TripleScorerError):
    """Configuration errors"""
    pass


class DataError(TripleScorerError):
    """Data-related errors"""
    pass


class ParseError(DataError):
    """Malformed input line"""

    def __init__(self, message: str, path: Optional[str] = None, line_no: Optional[int] = None):
        self.path = path
        self.line_no = line_no
        location = ""
        if path is not None:
            location = f"{path}:"
        if line_no is not None:
            location += f"line {line_no}: "
        elif location:
            location += " "
        super().__init__(f"{location}{message}")


class EnrichmentError(DataError):
    """Enrichment client failures"""
    pass


class EmbeddingError(TripleScorerError):
    """Paragraph vector errors"""
    pass


class EmptyVocabularyError(EmbeddingError):
    """No word survived the min_count threshold"""
    pass


class TrainingError(EmbeddingError):
    """Training could not run or diverged"""
    pass


class InferenceError(EmbeddingError):
    """Vector inference failed"""
    pass


class ModelFileError(TripleScorerError):
    """Model file could not be read"""
    pass


class ModelFormatError(ModelFileError):
    """Bad magic bytes or inconsistent layout"""
    pass


class ModelVersionError(ModelFileError):
    """Unsupported format version"""
    pass


class ModelTruncatedError(ModelFileError):
    """File ends before the declared content"""

    def __init__(self, what: str, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"truncated model file while reading {what}: expected {expected} bytes, got {actual}")


class ModelChecksumError(ModelFileError):
    """CRC32 mismatch"""
    pass


class ScoringError(TripleScorerError):
    """Scoring errors"""
    pass


class MappingError(TripleScorerError):
    """Score mapping errors"""
    pass


class EvaluationError(TripleScorerError):
    """Evaluation errors"""
    pass


class PairMismatchError(EvaluationError):
    """Predictions and gold labels cover different (subject, value) pairs"""

    def __init__(
        self,
        missing_in_preds: Iterable[Tuple[str, str]],
        missing_in_gold: Iterable[Tuple[str, str]],
    ):
        self.missing_in_preds = sorted(missing_in_preds)
        self.missing_in_gold = sorted(missing_in_gold)
        lines = ["prediction/gold pair mismatch"]
        if self.missing_in_preds:
            lines.append(f"  missing in predictions ({len(self.missing_in_preds)}):")
            lines.extend(f"    {s}\t{v}" for s, v in self.missing_in_preds)
        if self.missing_in_gold:
            lines.append(f"  missing in gold ({len(self.missing_in_gold)}):")
            lines.extend(f"    {s}\t{v}" for s, v in self.missing_in_gold)
        super().__init__("\n".join(lines))
