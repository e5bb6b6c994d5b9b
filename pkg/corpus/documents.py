"""
Person document construction: name removal, lowercasing, tokenization
"""
import re
from typing import Dict, Iterable, List, Mapping

from corpus.types import PersonDoc, Triple
from utils.logger import setup_logger

logger = setup_logger("corpus_documents")

# punctuation (and underscores) at either end of a whitespace token
_EDGE_PUNCT = re.compile(r"^[\W_]+|[\W_]+$", re.UNICODE)


def tokenize(text: str) -> List[str]:
    """Whitespace split with leading/trailing punctuation stripped; digits and stop words kept"""
    tokens = []
    for raw in text.split():
        token = _EDGE_PUNCT.sub("", raw)
        if token:
            tokens.append(token)
    return tokens


def _name_pattern(subject: str):
    """Case-insensitive pattern for the full name, longest variant first"""
    parts = subject.split()
    if not parts:
        return None
    # the name as written, and with its punctuation stripped ("J. Smith" vs "J Smith")
    variants = {r"\s+".join(re.escape(p) for p in parts)}
    bare = tokenize(subject)
    if bare:
        variants.add(r"\s+".join(re.escape(p) for p in bare))
    ordered = sorted(variants, key=len, reverse=True)
    return re.compile(r"(?<!\w)(?:" + "|".join(ordered) + r")(?!\w)", re.IGNORECASE | re.UNICODE)


def build_person_doc(subject: str, sentences: Iterable[str]) -> PersonDoc:
    """
    Build a subject's token sequence from the sentences mentioning them

    Full-name occurrences are removed case-insensitively before
    tokenization, then residual single name tokens are dropped. An empty
    subject disables name removal (used for enrichment pages).
    """
    sentences = list(sentences)
    pattern = _name_pattern(subject)
    name_tokens = {t.lower() for t in tokenize(subject)}

    tokens: List[str] = []
    for sentence in sentences:
        if pattern is not None:
            sentence = pattern.sub(" ", sentence)
        for token in tokenize(sentence.lower()):
            if token in name_tokens:
                continue
            tokens.append(token)

    return PersonDoc(subject=subject, tokens=tuple(tokens), source_sentence_count=len(sentences))


def build_person_docs(
    triples: Iterable[Triple],
    sentences: Mapping[str, List[str]],
) -> Dict[str, PersonDoc]:
    """One doc per subject in the triples; subjects without sentences get zero-token docs"""
    docs: Dict[str, PersonDoc] = {}
    for triple in triples:
        if triple.subject in docs:
            continue
        docs[triple.subject] = build_person_doc(triple.subject, sentences.get(triple.subject, []))

    empty = sum(1 for d in docs.values() if not d.tokens)
    if empty:
        logger.warning(f"[WARN] {empty} of {len(docs)} subjects have no tokens and will be excluded from groups")
    logger.info(f"[OK] Built {len(docs)} person docs")
    return docs
