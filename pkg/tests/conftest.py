"""
Shared fixtures: synthetic topic corpora and pipeline input files
"""
import itertools
import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Repository root on the path, as main.py does
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from corpus.types import PersonDoc  # noqa: E402

TOPIC_WORDS = {
    "actor": ["film", "stage", "role", "cast", "scene", "director", "movie", "screen", "drama", "theatre",
              "premiere", "studio", "audition", "script", "cinema", "performance", "series", "episode",
              "character", "starred"],
    "singer": ["album", "song", "chart", "vocal", "tour", "record", "single", "band", "concert", "lyrics",
               "melody", "guitar", "label", "session", "choir", "ballad", "duet", "music", "gig",
               "release"],
}


def topic_docs(n_per_topic=50, doc_len=40, seed=0, topics=("actor", "singer")):
    """Docs drawing tokens only from their topic's vocabulary; tags like 'actor_07'"""
    rng = np.random.default_rng(seed)
    docs = []
    for topic in topics:
        words = TOPIC_WORDS[topic]
        for i in range(n_per_topic):
            tokens = tuple(words[j] for j in rng.integers(0, len(words), size=doc_len))
            docs.append(PersonDoc(subject=f"{topic}_{i:02d}", tokens=tokens, source_sentence_count=1))
    return docs


@pytest.fixture
def two_topic_docs():
    return topic_docs()


def _sentences_for(rng, topic_mix, n_sentences=6, sentence_len=8):
    """Sentences whose words come from the topics in topic_mix (topic -> weight)"""
    topics = list(topic_mix)
    weights = np.array([topic_mix[t] for t in topics], dtype=np.float64)
    weights /= weights.sum()
    sentences = []
    for _ in range(n_sentences):
        words = []
        for _ in range(sentence_len):
            topic = topics[rng.choice(len(topics), p=weights)]
            vocab = TOPIC_WORDS[topic]
            words.append(vocab[rng.integers(0, len(vocab))])
        sentences.append(" ".join(words).capitalize() + ".")
    return sentences


@pytest.fixture
def pipeline_inputs(tmp_path):
    """
    Triples, sentences and gold files for a small end-to-end run

    20 single-valued actors and singers each; 6 multi-valued subjects whose
    text leans heavily to their first value (gold 7) over the second (gold 0).
    """
    rng = np.random.default_rng(11)
    triples, sentences, gold = [], [], []

    for topic in ("actor", "singer"):
        value = topic.capitalize()
        for i in range(20):
            subject = f"{value}person{i:02d}"
            triples.append((subject, value))
            for s in _sentences_for(rng, {topic: 1.0}):
                sentences.append((subject, f"{subject} {s}"))

    for i in range(6):
        main, other = ("actor", "singer") if i % 2 == 0 else ("singer", "actor")
        subject = f"Mixed{i:02d}"
        for topic in (main, other):
            triples.append((subject, topic.capitalize()))
        gold.append((subject, main.capitalize(), 7))
        gold.append((subject, other.capitalize(), 0))
        for s in _sentences_for(rng, {main: 0.9, other: 0.1}):
            sentences.append((subject, s))

    triples_path = tmp_path / "profession.train"
    sentences_path = tmp_path / "sentences.tsv"
    gold_path = tmp_path / "profession.gold"
    triples_path.write_text("".join(f"{s}\t{v}\n" for s, v in triples), encoding="utf-8")
    sentences_path.write_text("".join(f"{s}\t{t}\n" for s, t in sentences), encoding="utf-8")
    gold_path.write_text("".join(f"{s}\t{v}\t{g}\n" for s, v, g in gold), encoding="utf-8")

    return {
        "dir": tmp_path,
        "triples": triples_path,
        "sentences": sentences_path,
        "gold": gold_path,
        "prepared": tmp_path / "prepared",
        "model": tmp_path / "out" / "model.pvec",
        "scores": tmp_path / "out" / "scores.tsv",
    }


PROFESSIONS = ("Actor", "Singer", "Writer", "Painter", "Coach")


def profession_vocab(value, size=200):
    """Words private to one profession: 'act000' .. 'act199'"""
    stem = value.lower()[:3]
    return [f"{stem}{j:03d}" for j in range(size)]


def write_profession_corpus(root: Path, group_sizes=(50,) * 5, n_mixed=20, doc_tokens=100, seed=0):
    """
    Pipeline inputs over disjoint 200-word profession vocabularies

    Single-valued subjects write only their profession's words. Each mixed
    subject holds two professions and draws exactly half its tokens from
    each. Two candidate files are written: every profession per mixed
    subject, and the gold pairs (both true values at 7, one profession the
    subject does not hold at 0).
    """
    rng = np.random.default_rng(seed)
    vocab = {value: profession_vocab(value) for value in PROFESSIONS}
    pairs = list(itertools.combinations(PROFESSIONS, 2))
    triples, sentences, every_value, gold = [], [], [], []
    truth = {}

    def add_sentences(subject, values):
        draws = rng.integers(0, 200, size=doc_tokens)
        words = [vocab[values[i % len(values)]][k] for i, k in enumerate(draws)]
        rng.shuffle(words)
        for start in range(0, doc_tokens, 10):
            sentences.append(f"{subject}\t" + " ".join(words[start:start + 10]) + ".")

    for value, size in zip(PROFESSIONS, group_sizes):
        for i in range(size):
            subject = f"{value}person{i:03d}"
            triples.append(f"{subject}\t{value}")
            add_sentences(subject, [value])

    for i in range(n_mixed):
        subject = f"Mixed{i:02d}"
        pair = pairs[i % len(pairs)]
        truth[subject] = set(pair)
        others = [v for v in PROFESSIONS if v not in pair]
        triples.extend(f"{subject}\t{value}" for value in pair)
        every_value.extend(f"{subject}\t{value}" for value in PROFESSIONS)
        gold.extend(f"{subject}\t{value}\t7" for value in pair)
        gold.append(f"{subject}\t{others[i % len(others)]}\t0")
        add_sentences(subject, list(pair))

    gold_pairs = ["\t".join(line.split("\t")[:2]) for line in gold]
    return {
        "dir": root,
        "triples": write_lines(root / "profession.train", triples),
        "sentences": write_lines(root / "sentences.tsv", sentences),
        "all_candidates": write_lines(root / "all_candidates.tsv", every_value),
        "gold_candidates": write_lines(root / "gold_candidates.tsv", gold_pairs),
        "gold": write_lines(root / "profession.gold", gold),
        "prepared": root / "prepared",
        "model": root / "out" / "model.pvec",
        "scores": root / "out" / "scores.tsv",
        "truth": truth,
    }


def write_lines(path: Path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: trains full-size models or runs the whole pipeline")
