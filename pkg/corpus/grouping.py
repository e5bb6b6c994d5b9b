"""
Value grouping of single-valued subjects and group size balancing
"""
import zlib
from dataclasses import replace
from typing import Dict, List, Mapping, Optional

import numpy as np

from corpus.documents import build_person_doc
from corpus.enrichment import EnrichmentClient, NullEnrichmentClient
from corpus.types import PersonDoc, Triple, ValueGroup
from utils.errors import ConfigurationError, TripleScorerError
from utils.logger import setup_logger

logger = setup_logger("grouping")

DEFAULT_FLOOR = 100
DEFAULT_CAP = 5000
ENRICH_PAGES = 200
ENRICH_PREFIX = "__enrich__"


def enrichment_doc_id(value: str, index: int) -> str:
    """Document key for the index-th enrichment page of a value"""
    return f"{ENRICH_PREFIX}/{value}/{index}"


def is_enrichment_doc(subject: str) -> bool:
    return subject.startswith(ENRICH_PREFIX + "/")


def group_single_valued(
    triples: List[Triple],
    docs: Mapping[str, PersonDoc],
) -> List[ValueGroup]:
    """
    Group subjects with exactly one value by that value

    Multi-valued subjects and zero-token docs are left out. Groups are
    returned in first-seen value order, members in load order.
    """
    values_of: Dict[str, List[str]] = {}
    for triple in triples:
        values_of.setdefault(triple.subject, []).append(triple.value)

    groups: Dict[str, ValueGroup] = {}
    for triple in triples:
        group = groups.get(triple.value)
        if group is None:
            group = ValueGroup(value=triple.value, property=triple.property)
            groups[triple.value] = group
        if len(values_of[triple.subject]) != 1:
            continue
        doc = docs.get(triple.subject)
        if doc is None or not doc.tokens:
            continue
        group.member_docs.append(doc)

    for group in groups.values():
        group.original_size = len(group.member_docs)

    multi = sum(1 for v in values_of.values() if len(v) > 1)
    logger.info(f"[OK] {len(groups)} value groups from {len(values_of) - multi} single-valued subjects "
                f"({multi} multi-valued subjects excluded)")
    return list(groups.values())


def _shuffled(members: List[PersonDoc], value: str, seed: int) -> List[PersonDoc]:
    rng = np.random.default_rng([seed, zlib.crc32(value.encode('utf-8'))])
    order = rng.permutation(len(members))
    return [members[i] for i in order]


def balance_groups(
    groups: List[ValueGroup],
    floor: int = DEFAULT_FLOOR,
    cap: int = DEFAULT_CAP,
    enricher: Optional[EnrichmentClient] = None,
    shuffle_seed: Optional[int] = None,
) -> List[ValueGroup]:
    """
    Truncate oversized groups to `cap` and enrich groups below `floor`

    Truncation keeps the first `cap` members in load order (optionally
    after a seeded shuffle). Enrichment adds up to 200 pseudo-docs built
    from retrieved pages with name removal disabled. Enricher failures
    leave the group as it is with a warning. Already-enriched groups are
    not enriched again, so a second application changes nothing.
    """
    if floor > cap:
        raise ConfigurationError(f"floor ({floor}) must not exceed cap ({cap})")
    enricher = enricher or NullEnrichmentClient()

    balanced: List[ValueGroup] = []
    for group in groups:
        group = replace(group, member_docs=list(group.member_docs))
        if group.original_size is None:
            group.original_size = len(group.member_docs)

        if len(group.member_docs) > cap:
            members = group.member_docs
            if shuffle_seed is not None:
                members = _shuffled(members, group.value, shuffle_seed)
            logger.info(f"[BALANCE] '{group.value}': truncating {len(members)} -> {cap} docs")
            group.member_docs = members[:cap]
            group.truncated = True

        if len(group.member_docs) < floor and not group.enriched:
            group = _enrich(group, enricher, min(ENRICH_PAGES, cap - len(group.member_docs)))

        balanced.append(group)

    enriched = sum(1 for g in balanced if g.enriched)
    truncated = sum(1 for g in balanced if g.truncated)
    warned = sum(1 for g in balanced if g.warning)
    logger.info(f"[OK] Balanced {len(balanced)} groups: {truncated} truncated, {enriched} enriched, {warned} warnings")
    return balanced


def _enrich(group: ValueGroup, enricher: EnrichmentClient, limit: int) -> ValueGroup:
    try:
        pages = enricher.search(group.value, limit) if limit > 0 else []
    except TripleScorerError as e:
        group.warning = f"enrichment failed: {e}"
        logger.warning(f"[WARN] '{group.value}': {group.warning}")
        return group
    except Exception as e:
        group.warning = f"enrichment failed: {type(e).__name__}: {e}"
        logger.warning(f"[WARN] '{group.value}': {group.warning}")
        return group

    added = []
    for page in pages[:limit]:
        doc = build_person_doc("", [page])
        if not doc.tokens:
            continue
        added.append(replace(doc, subject=enrichment_doc_id(group.value, len(added))))

    if not added:
        group.warning = f"{len(group.member_docs)} docs, below floor and no enrichment pages available"
        logger.warning(f"[WARN] '{group.value}': {group.warning}")
        return group

    group.member_docs.extend(added)
    group.enriched = True
    group.pages_added = len(added)
    group.warning = None
    logger.info(f"[BALANCE] '{group.value}': enriched with {len(added)} pages -> {len(group.member_docs)} docs")
    return group
