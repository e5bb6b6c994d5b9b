"""
Corpus preparation: triples, person documents, value groups
"""
from corpus.types import Property, Triple, PersonDoc, ValueGroup
from corpus.loader import load_triples, load_sentences
from corpus.documents import build_person_doc, build_person_docs, tokenize
from corpus.grouping import group_single_valued, balance_groups, is_enrichment_doc
from corpus.enrichment import EnrichmentClient, NullEnrichmentClient, FixtureEnrichmentClient

__all__ = [
    "Property", "Triple", "PersonDoc", "ValueGroup",
    "load_triples", "load_sentences",
    "build_person_doc", "build_person_docs", "tokenize",
    "group_single_valued", "balance_groups", "is_enrichment_doc",
    "EnrichmentClient", "NullEnrichmentClient", "FixtureEnrichmentClient",
]
