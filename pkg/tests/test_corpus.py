"""
Tests for corpus preparation: loading, person docs, grouping and balancing
"""
from typing import List

import pytest

from conftest import write_lines
from corpus.documents import build_person_doc, build_person_docs, tokenize
from corpus.enrichment import EnrichmentClient, FixtureEnrichmentClient, NullEnrichmentClient
from corpus.grouping import balance_groups, group_single_valued, is_enrichment_doc
from corpus.loader import load_sentences, load_triples
from corpus.types import PersonDoc, Property, Triple, ValueGroup
from utils.errors import ConfigurationError, DataError, EnrichmentError, ParseError


def _doc(subject, n_tokens=3):
    return PersonDoc(subject=subject, tokens=tuple(f"w{i}" for i in range(n_tokens)), source_sentence_count=1)


def _group(value, n, prefix=None):
    prefix = prefix or value
    return ValueGroup(value=value, property=Property.PROFESSION,
                      member_docs=[_doc(f"{prefix}{i}") for i in range(n)])


class StaticEnricher(EnrichmentClient):
    def __init__(self, pages: List[str]):
        self.pages = pages
        self.calls = []

    def search(self, value, limit):
        self.calls.append((value, limit))
        return self.pages[:limit]


class FailingEnricher(EnrichmentClient):
    def search(self, value, limit):
        raise EnrichmentError("search backend unavailable")


class TestLoadTriples:
    def test_parses_subject_value_lines(self, tmp_path):
        path = write_lines(tmp_path / "t.tsv", ["A\tActor", "A\tSinger"])
        assert load_triples(path, "profession") == [
            Triple("A", Property.PROFESSION, "Actor"),
            Triple("A", Property.PROFESSION, "Singer"),
        ]

    def test_duplicates_dropped(self, tmp_path):
        path = write_lines(tmp_path / "t.tsv", ["A\tActor", "A\tActor"])
        assert load_triples(path, Property.PROFESSION) == [Triple("A", Property.PROFESSION, "Actor")]

    def test_missing_tab_names_line(self, tmp_path):
        path = write_lines(tmp_path / "t.tsv", ["A Actor"])
        with pytest.raises(ParseError) as exc:
            load_triples(path, "profession")
        assert exc.value.line_no == 1
        assert "line 1" in str(exc.value)

    def test_empty_field_names_line(self, tmp_path):
        path = write_lines(tmp_path / "t.tsv", ["A\tActor", "\tSinger"])
        with pytest.raises(ParseError) as exc:
            load_triples(path, "profession")
        assert exc.value.line_no == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="file not found"):
            load_triples(tmp_path / "absent.tsv", "profession")

    def test_unknown_property(self, tmp_path):
        path = write_lines(tmp_path / "t.tsv", ["A\tActor"])
        with pytest.raises(ConfigurationError):
            load_triples(path, "hobby")

    def test_blank_lines_skipped(self, tmp_path):
        path = write_lines(tmp_path / "t.tsv", ["A\tActor", "", "B\tSinger"])
        assert [t.subject for t in load_triples(path, "nationality")] == ["A", "B"]


class TestLoadSentences:
    def test_grouped_by_subject_in_order(self, tmp_path):
        path = write_lines(tmp_path / "s.tsv", ["A\tfirst", "B\tother", "A\tsecond"])
        assert load_sentences(path) == {"A": ["first", "second"], "B": ["other"]}

    def test_sentence_may_contain_tabs(self, tmp_path):
        path = write_lines(tmp_path / "s.tsv", ["A\tone\ttwo"])
        assert load_sentences(path) == {"A": ["one\ttwo"]}


class TestBuildPersonDoc:
    def test_name_removed_and_lowercased(self):
        doc = build_person_doc("Neil Young", ["Neil Young is a singer."])
        assert doc.tokens == ("is", "a", "singer")
        assert doc.source_sentence_count == 1

    def test_case_insensitive_removal(self):
        assert build_person_doc("Ada", ["ADA wrote THE program"]).tokens == ("wrote", "the", "program")

    def test_empty_sentences(self):
        doc = build_person_doc("X", [])
        assert len(doc) == 0
        assert doc.source_sentence_count == 0

    def test_name_inside_other_word_kept(self):
        assert build_person_doc("Ada", ["Ada moved to Canada"]).tokens == ("moved", "to", "canada")

    def test_residual_name_tokens_dropped(self):
        doc = build_person_doc("Neil Young", ["Young released an album; Neil toured."])
        assert "young" not in doc.tokens
        assert "neil" not in doc.tokens
        assert doc.tokens == ("released", "an", "album", "toured")

    def test_stop_words_and_digits_kept(self):
        assert build_person_doc("Bo", ["In 1999 the band split"]).tokens == ("in", "1999", "the", "band", "split")

    def test_empty_subject_disables_removal(self):
        assert build_person_doc("", ["Neil Young sang"]).tokens == ("neil", "young", "sang")

    def test_sentence_order_preserved(self):
        doc = build_person_doc("Z", ["alpha beta", "gamma"])
        assert doc.tokens == ("alpha", "beta", "gamma")

    def test_no_uppercase_and_no_name_tokens(self):
        sentences = ["Mary-Jane O'Neil, MARY-JANE's friend, met O'NEIL in Paris.", "Mary-Jane O'Neil sings."]
        doc = build_person_doc("Mary-Jane O'Neil", sentences)
        name_tokens = {t.lower() for t in tokenize("Mary-Jane O'Neil")}
        assert all(t == t.lower() for t in doc.tokens)
        assert not name_tokens & set(doc.tokens)


class TestTokenize:
    def test_edge_punctuation_stripped(self):
        assert tokenize('"Hello," (world)! x.y') == ["Hello", "world", "x.y"]

    def test_pure_punctuation_dropped(self):
        assert tokenize("-- ... !") == []


class TestBuildPersonDocs:
    def test_one_doc_per_subject(self):
        triples = [Triple("A", Property.PROFESSION, "Actor"), Triple("A", Property.PROFESSION, "Singer"),
                   Triple("B", Property.PROFESSION, "Actor")]
        docs = build_person_docs(triples, {"A": ["A acts"]})
        assert list(docs) == ["A", "B"]
        assert docs["A"].tokens == ("acts",)
        assert docs["B"].tokens == ()


class TestGroupSingleValued:
    def test_multi_valued_excluded(self):
        triples = [Triple("A", Property.PROFESSION, "Actor"), Triple("B", Property.PROFESSION, "Actor"),
                   Triple("C", Property.PROFESSION, "Actor"), Triple("C", Property.PROFESSION, "Singer")]
        docs = {s: _doc(s) for s in "ABC"}
        groups = {g.value: g for g in group_single_valued(triples, docs)}
        assert groups["Actor"].subjects == ["A", "B"]
        assert groups["Singer"].subjects == []

    def test_zero_token_doc_excluded(self):
        triples = [Triple("A", Property.PROFESSION, "Actor")]
        groups = group_single_valued(triples, {"A": PersonDoc("A", ())})
        assert len(groups) == 1
        assert groups[0].value == "Actor"
        assert groups[0].member_docs == []

    def test_one_group_per_value(self):
        triples = [Triple(f"S{i}", Property.PROFESSION, f"V{i}") for i in range(200)]
        docs = {t.subject: _doc(t.subject) for t in triples}
        groups = group_single_valued(triples, docs)
        assert len(groups) == 200
        assert all(len(g) == 1 for g in groups)

    def test_partition(self):
        triples = [Triple(f"S{i}", Property.PROFESSION, f"V{i % 3}") for i in range(30)]
        triples.append(Triple("S0", Property.PROFESSION, "V1"))
        docs = {t.subject: _doc(t.subject) for t in triples}
        seen = [s for g in group_single_valued(triples, docs) for s in g.subjects]
        assert len(seen) == len(set(seen))
        assert "S0" not in seen

    def test_original_size_recorded(self):
        triples = [Triple("A", Property.PROFESSION, "Actor"), Triple("B", Property.PROFESSION, "Actor")]
        groups = group_single_valued(triples, {s: _doc(s) for s in "AB"})
        assert groups[0].original_size == 2


class TestBalanceGroups:
    def test_truncates_to_cap_in_load_order(self):
        group = _group("Actor", 6000)
        balanced = balance_groups([group], floor=100, cap=5000)[0]
        assert len(balanced) == 5000
        assert balanced.subjects == group.subjects[:5000]
        assert balanced.truncated
        assert balanced.original_size == 6000

    def test_enriches_small_group(self):
        pages = [f"page {i} about acting on stage" for i in range(200)]
        balanced = balance_groups([_group("Actor", 40)], floor=100, cap=5000, enricher=StaticEnricher(pages))[0]
        assert len(balanced) == 240
        assert balanced.enriched
        assert balanced.pages_added == 200
        assert balanced.warning is None
        added = balanced.member_docs[40:]
        assert all(is_enrichment_doc(d.subject) for d in added)
        assert added[0].tokens == ("page", "0", "about", "acting", "on", "stage")

    def test_within_bounds_unchanged(self):
        group = _group("Actor", 500)
        enricher = StaticEnricher(["unused"])
        balanced = balance_groups([group], floor=100, cap=5000, enricher=enricher)[0]
        assert balanced.subjects == group.subjects
        assert not balanced.enriched and not balanced.truncated
        assert enricher.calls == []

    def test_enrichment_limited_by_cap(self):
        enricher = StaticEnricher([f"page {i}" for i in range(200)])
        balanced = balance_groups([_group("Actor", 40)], floor=100, cap=150, enricher=enricher)[0]
        assert enricher.calls == [("Actor", 110)]
        assert len(balanced) == 150

    def test_no_enricher_records_warning(self):
        balanced = balance_groups([_group("Actor", 3)], floor=100, cap=5000)[0]
        assert len(balanced) == 3
        assert not balanced.enriched
        assert "below floor" in balanced.warning

    def test_enricher_failure_is_not_fatal(self):
        balanced = balance_groups([_group("Actor", 3), _group("Singer", 200)], floor=100, cap=5000,
                                  enricher=FailingEnricher())
        assert len(balanced[0]) == 3
        assert "enrichment failed" in balanced[0].warning
        assert balanced[1].warning is None

    def test_idempotent(self):
        groups = [_group("Actor", 40), _group("Singer", 6000), _group("Poet", 500)]
        enricher = StaticEnricher([f"page {i}" for i in range(200)])
        once = balance_groups(groups, floor=100, cap=5000, enricher=enricher)
        twice = balance_groups(once, floor=100, cap=5000, enricher=enricher)
        assert [g.subjects for g in once] == [g.subjects for g in twice]
        assert [(g.enriched, g.truncated, g.pages_added) for g in once] == \
            [(g.enriched, g.truncated, g.pages_added) for g in twice]

    def test_input_not_mutated(self):
        group = _group("Actor", 6000)
        balance_groups([group], floor=100, cap=5000)
        assert len(group) == 6000

    def test_seeded_shuffle_is_reproducible(self):
        group = _group("Actor", 60)
        a = balance_groups([group], floor=0, cap=10, shuffle_seed=3)[0]
        b = balance_groups([group], floor=0, cap=10, shuffle_seed=3)[0]
        assert a.subjects == b.subjects
        assert a.subjects != group.subjects[:10]

    def test_floor_above_cap_rejected(self):
        with pytest.raises(ConfigurationError):
            balance_groups([_group("Actor", 1)], floor=10, cap=5)

    def test_never_exceeds_cap(self):
        enricher = StaticEnricher([f"page {i}" for i in range(200)])
        groups = [_group(f"V{n}", n) for n in (0, 1, 99, 100, 4999, 5000, 5001)]
        for g in balance_groups(groups, floor=100, cap=5000, enricher=enricher):
            assert len(g) <= 5000
            assert len(g) >= 100 or g.warning


class TestFixtureEnrichmentClient:
    def test_pages_split_on_blank_lines(self, tmp_path):
        (tmp_path / "Actor.txt").write_text("first page\nstill first\n\n\nsecond page\n", encoding="utf-8")
        client = FixtureEnrichmentClient(tmp_path)
        assert client.search("Actor", 10) == ["first page\nstill first", "second page"]
        assert client.search("Actor", 1) == ["first page\nstill first"]

    def test_missing_value_file(self, tmp_path):
        assert FixtureEnrichmentClient(tmp_path).search("Carpenter", 5) == []

    def test_slash_in_value(self, tmp_path):
        (tmp_path / "Singer_songwriter.txt").write_text("page", encoding="utf-8")
        assert FixtureEnrichmentClient(tmp_path).search("Singer/songwriter", 5) == ["page"]

    def test_missing_directory(self, tmp_path):
        with pytest.raises(EnrichmentError):
            FixtureEnrichmentClient(tmp_path / "nope")

    def test_null_client(self):
        assert NullEnrichmentClient().search("Actor", 200) == []
