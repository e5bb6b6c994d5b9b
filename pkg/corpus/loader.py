"""
Triple and sentence file ingestion (UTF-8 TSV, one record per line)
"""
from pathlib import Path
from typing import Dict, Iterator, List, Tuple, Union

from corpus.types import Property, Triple
from utils.errors import DataError, ParseError
from utils.logger import setup_logger

logger = setup_logger("corpus_loader")

PathLike = Union[str, Path]


def _read_tsv_pairs(path: PathLike) -> Iterator[Tuple[int, str, str]]:
    """Yield (line_no, first, rest) for every non-empty line, split on the first tab"""
    path = Path(path)
    if not path.exists():
        raise DataError(f"file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8', newline='') as f:
            for line_no, raw in enumerate(f, start=1):
                line = raw.rstrip('\r\n')
                if not line.strip():
                    continue
                if '\t' not in line:
                    raise ParseError("expected 'subject<TAB>value'", str(path), line_no)
                first, rest = line.split('\t', 1)
                first, rest = first.strip(), rest.strip()
                if not first or not rest:
                    raise ParseError("empty field", str(path), line_no)
                yield line_no, first, rest
    except UnicodeDecodeError as e:
        raise DataError(f"{path}: not valid UTF-8 ({e})") from e
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}") from e


def load_triples(path: PathLike, property: Union[Property, str]) -> List[Triple]:
    """
    Load `subject<TAB>value` lines as triples of the given property

    Duplicate lines are dropped; first-seen order is kept.
    """
    prop = property if isinstance(property, Property) else Property.parse(property)
    triples: List[Triple] = []
    seen = set()
    duplicates = 0
    for line_no, subject, value in _read_tsv_pairs(path):
        if "\t" in value:
            raise ParseError("expected exactly two fields", str(path), line_no)
        triple = Triple(subject=subject, property=prop, value=value)
        if triple in seen:
            duplicates += 1
            continue
        seen.add(triple)
        triples.append(triple)
    logger.info(f"[OK] Loaded {len(triples)} {prop.value} triples from {path}"
                + (f" ({duplicates} duplicates dropped)" if duplicates else ""))
    return triples


def load_sentences(path: PathLike) -> Dict[str, List[str]]:
    """Load `subject<TAB>sentence` lines grouped by subject, in file order"""
    sentences: Dict[str, List[str]] = {}
    count = 0
    for _, subject, sentence in _read_tsv_pairs(path):
        sentences.setdefault(subject, []).append(sentence)
        count += 1
    logger.info(f"[OK] Loaded {count} sentences for {len(sentences)} subjects from {path}")
    return sentences


def subjects_by_value_count(triples: List[Triple]) -> Dict[str, List[str]]:
    """Map each subject to its values, in load order"""
    values: Dict[str, List[str]] = {}
    for triple in triples:
        values.setdefault(triple.subject, []).append(triple.value)
    return values
