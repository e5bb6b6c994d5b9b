"""
TSV storage for prepared corpora, score files and gold labels
"""
import csv
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Union

from corpus.grouping import is_enrichment_doc
from corpus.types import PersonDoc, Property, Triple, ValueGroup
from evaluation.metrics import GoldLabel
from scoring.base_scorer import ScoreRecord
from utils.errors import DataError, EvaluationError, ParseError
from utils.logger import setup_logger

logger = setup_logger("storage")

PathLike = Union[str, Path]

DOCS_FILE = "docs.tsv"
GROUPS_FILE = "groups.tsv"
TRIPLES_FILE = "triples.tsv"
BALANCE_FILE = "balance_report.tsv"
CONFIG_FILE = "config.yaml"

BALANCE_HEADER = ['value', 'original_size', 'final_size', 'truncated', 'enriched', 'pages_added', 'warning']


class _TabDialect(csv.Dialect):
    delimiter = '\t'
    quoting = csv.QUOTE_NONE
    escapechar = None
    quotechar = None
    lineterminator = '\n'
    skipinitialspace = False
    strict = False


def _write_rows(path: Path, rows: Iterator[Sequence], header: Optional[Sequence[str]] = None) -> int:
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    try:
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, dialect=_TabDialect)
            if header:
                writer.writerow(header)
            for row in rows:
                writer.writerow(row)
                count += 1
    except csv.Error as e:
        raise DataError(f"cannot write {path}: a field contains a tab or newline ({e})") from e
    except OSError as e:
        raise DataError(f"cannot write {path}: {e}") from e
    return count


def _read_rows(path: PathLike, n_fields: int, header: Optional[Sequence[str]] = None) -> Iterator[tuple]:
    """Yield (line_no, fields) for non-blank lines with exactly n_fields fields"""
    path = Path(path)
    if not path.exists():
        raise DataError(f"file not found: {path}")
    try:
        with open(path, 'r', newline='', encoding='utf-8') as f:
            reader = csv.reader(f, dialect=_TabDialect)
            for row in reader:
                line_no = reader.line_num
                if not row or (len(row) == 1 and not row[0].strip()):
                    continue
                if header is not None and line_no == 1 and list(row) == list(header):
                    continue
                if len(row) != n_fields:
                    raise ParseError(f"expected {n_fields} tab-separated fields, got {len(row)}", str(path), line_no)
                yield line_no, row
    except UnicodeDecodeError as e:
        raise DataError(f"{path}: not valid UTF-8 ({e})") from e
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}") from e


def _flag(text: str, path: PathLike, line_no: int) -> bool:
    if text not in ('0', '1'):
        raise ParseError(f"expected 0 or 1, got '{text}'", str(path), line_no)
    return text == '1'


def _int(text: str, path: PathLike, line_no: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got '{text}'", str(path), line_no) from None


class PreparedCorpus:
    """
    A prepared corpus directory: person docs (enrichment pages included),
    value groups, the loaded triples and the balance report
    """

    def __init__(self, directory: PathLike):
        self.directory = Path(directory)

    @property
    def docs_path(self) -> Path:
        return self.directory / DOCS_FILE

    @property
    def groups_path(self) -> Path:
        return self.directory / GROUPS_FILE

    @property
    def triples_path(self) -> Path:
        return self.directory / TRIPLES_FILE

    @property
    def balance_path(self) -> Path:
        return self.directory / BALANCE_FILE

    @property
    def config_path(self) -> Path:
        return self.directory / CONFIG_FILE

    def require(self):
        missing = [p.name for p in (self.docs_path, self.groups_path, self.triples_path, self.balance_path)
                   if not p.exists()]
        if missing:
            raise DataError(f"prepared corpus {self.directory} is incomplete, missing: {', '.join(missing)}")

    def save(self, triples: List[Triple], docs: Dict[str, PersonDoc], groups: List[ValueGroup]):
        """Write all four files; enrichment pseudo-docs are appended to docs.tsv"""
        all_docs = dict(docs)
        for group in groups:
            for doc in group.member_docs:
                all_docs.setdefault(doc.subject, doc)

        n_docs = _write_rows(self.docs_path, (
            (d.subject, d.source_sentence_count, " ".join(d.tokens)) for d in all_docs.values()
        ))
        n_members = _write_rows(self.groups_path, (
            (g.value, doc.subject, int(is_enrichment_doc(doc.subject))) for g in groups for doc in g.member_docs
        ))
        _write_rows(self.triples_path, ((t.subject, t.value) for t in triples))
        _write_rows(self.balance_path, (
            (g.value, g.original_size if g.original_size is not None else len(g), len(g),
             int(g.truncated), int(g.enriched), g.pages_added, g.warning or "")
            for g in groups
        ), header=BALANCE_HEADER)
        logger.info(f"[OK] Prepared corpus written to {self.directory}: {n_docs} docs, "
                    f"{len(groups)} groups ({n_members} memberships), {len(triples)} triples")

    def load_docs(self) -> Dict[str, PersonDoc]:
        docs: Dict[str, PersonDoc] = {}
        for line_no, (subject, count, tokens) in _read_rows(self.docs_path, 3):
            if subject in docs:
                raise ParseError(f"duplicate doc for '{subject}'", str(self.docs_path), line_no)
            docs[subject] = PersonDoc(subject=subject, tokens=tuple(tokens.split()),
                                      source_sentence_count=_int(count, self.docs_path, line_no))
        return docs

    def load_triples(self, property: Union[Property, str]) -> List[Triple]:
        prop = Property.parse(property)
        return [Triple(subject=s, property=prop, value=v) for _, (s, v) in _read_rows(self.triples_path, 2)]

    def load_groups(self, docs: Dict[str, PersonDoc], property: Union[Property, str]) -> List[ValueGroup]:
        """Rebuild the value groups, including empty ones, in report order"""
        prop = Property.parse(property)
        groups: Dict[str, ValueGroup] = {}
        for line_no, row in _read_rows(self.balance_path, len(BALANCE_HEADER), header=BALANCE_HEADER):
            value, original, _, truncated, enriched, pages, warning = row
            groups[value] = ValueGroup(
                value=value,
                property=prop,
                enriched=_flag(enriched, self.balance_path, line_no),
                original_size=_int(original, self.balance_path, line_no),
                truncated=_flag(truncated, self.balance_path, line_no),
                pages_added=_int(pages, self.balance_path, line_no),
                warning=warning or None,
            )

        for line_no, (value, subject, _) in _read_rows(self.groups_path, 3):
            group = groups.get(value)
            if group is None:
                raise ParseError(f"value '{value}' is not in {BALANCE_FILE}", str(self.groups_path), line_no)
            doc = docs.get(subject)
            if doc is None:
                raise ParseError(f"member '{subject}' has no doc in {DOCS_FILE}", str(self.groups_path), line_no)
            group.member_docs.append(doc)
        return list(groups.values())


def save_scores(path: PathLike, records: List[ScoreRecord]) -> int:
    """subject<TAB>value<TAB>raw (6 decimals)<TAB>mapped"""
    count = _write_rows(Path(path), ((r.subject, r.value, f"{r.raw:.6f}", r.mapped) for r in records))
    logger.info(f"[OK] Wrote {count} scores to {path}")
    return count


def load_scores(path: PathLike) -> List[ScoreRecord]:
    records = []
    for line_no, (subject, value, raw, mapped) in _read_rows(path, 4):
        try:
            raw_value = float(raw)
        except ValueError:
            raise ParseError(f"expected a number, got '{raw}'", str(path), line_no) from None
        records.append(ScoreRecord(subject=subject, value=value, raw=raw_value,
                                   mapped=_int(mapped, path, line_no)))
    return records


def load_gold(path: PathLike) -> List[GoldLabel]:
    """Gold file: subject<TAB>value<TAB>score with integer scores 0..7"""
    labels = []
    for line_no, (subject, value, score) in _read_rows(path, 3):
        try:
            labels.append(GoldLabel(subject=subject, value=value, score=_int(score, path, line_no)))
        except EvaluationError as e:
            raise ParseError(str(e), str(path), line_no) from None
    logger.info(f"[OK] Loaded {len(labels)} gold labels from {path}")
    return labels
