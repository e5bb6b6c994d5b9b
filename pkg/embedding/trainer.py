"""
Paragraph vector training (multi-worker, lock-free) and inference
"""
import threading
import time
from typing import Dict, List, Optional, Sequence

import numpy as np

from embedding.model import EmbeddingModel, TrainConfig, TrainMode
from embedding.steps import (
    EMPTY_SLOT,
    apply_gradients,
    dbow_gradients,
    dm_gradients,
    draw_negative_matrix,
    skipgram_step,
)
from embedding.vocab import Vocabulary, build_vocab
from utils.errors import InferenceError, TrainingError
from utils.logger import setup_logger

logger = setup_logger("trainer")


def init_matrix(rng: np.random.Generator, rows: int, dim: int, dtype=np.float32) -> np.ndarray:
    """Uniform initialisation in [-0.5/dim, 0.5/dim)"""
    return ((rng.random((rows, dim)) - 0.5) / dim).astype(dtype)


def linear_lr(config: TrainConfig, done: int, total: int) -> float:
    """Learning rate after `done` of `total` scheduled updates"""
    if total <= 0:
        return config.initial_lr
    lr = config.initial_lr - (config.initial_lr - config.final_lr) * (done / total)
    return max(config.final_lr, lr)


def window_context(ids: np.ndarray, position: int, window: int) -> List[int]:
    """Left then right window slots around a position; EMPTY_SLOT past the edges"""
    n = len(ids)
    left = [int(ids[j]) if j >= 0 else EMPTY_SLOT for j in range(position - window, position)]
    right = [int(ids[j]) if j < n else EMPTY_SLOT for j in range(position + 1, position + window + 1)]
    return left + right


class ParagraphVectorTrainer:
    """
    Trains doc vectors jointly for all documents

    Each epoch visits the documents in a fresh seeded order, split into
    contiguous shards, one per worker thread. Workers read and write the
    shared matrices without locks; with workers=1 and a fixed seed the
    result is bitwise reproducible.
    """

    def __init__(self, config: TrainConfig, dtype=np.float32):
        self.config = config
        self.dtype = dtype
        self.model: Optional[EmbeddingModel] = None
        self.epoch_losses: List[float] = []
        self._total_updates = 0

    def _encode(self, docs: Sequence, vocab: Vocabulary):
        tags: List[str] = []
        encoded: List[np.ndarray] = []
        seen = set()
        skipped = 0
        for doc in docs:
            if doc.subject in seen:
                logger.warning(f"[WARN] Duplicate document '{doc.subject}' ignored")
                continue
            seen.add(doc.subject)
            ids = vocab.encode(doc.tokens)
            if len(ids) == 0:
                skipped += 1
                continue
            tags.append(doc.subject)
            encoded.append(ids)
        if skipped:
            logger.warning(f"[WARN] {skipped} documents have no in-vocabulary tokens and were skipped")
        return tags, encoded

    def train(self, docs: Sequence) -> EmbeddingModel:
        config = self.config
        if not docs:
            raise TrainingError("no documents to train on")

        vocab = build_vocab(docs, config.min_count, config.noise_power)
        tags, encoded = self._encode(docs, vocab)
        if not tags:
            raise TrainingError("no trainable documents: every document is out of vocabulary")

        rng = np.random.default_rng(config.seed)
        doc_vectors = init_matrix(rng, len(tags), config.dim, self.dtype)
        if config.uses_word_vectors:
            word_in = init_matrix(rng, len(vocab), config.dim, self.dtype)
        else:
            word_in = np.zeros((0, config.dim), dtype=self.dtype)
        word_out = np.zeros((len(vocab), config.hidden_width), dtype=self.dtype)

        self.model = EmbeddingModel(vocab, config, tags, doc_vectors, word_in, word_out)

        lengths = np.array([len(ids) for ids in encoded], dtype=np.int64)
        per_epoch = int(lengths.sum())
        self._total_updates = per_epoch * config.epochs
        logger.info(f"[TRAIN] mode={config.mode.value} dim={config.dim} window={config.window} "
                    f"negative={config.negative} epochs={config.epochs} workers={config.workers} "
                    f"docs={len(tags)} vocab={len(vocab)} updates={self._total_updates}")

        for epoch in range(config.epochs):
            started = time.time()
            order = np.random.default_rng([config.seed, epoch]).permutation(len(tags))
            # position of each doc's first update within this epoch's schedule
            starts = np.zeros(len(tags), dtype=np.int64)
            starts[order] = np.concatenate(([0], np.cumsum(lengths[order])[:-1]))
            base = epoch * per_epoch

            loss = self._run_epoch(epoch, order, encoded, starts + base)
            mean_loss = loss / max(per_epoch, 1)
            lr_now = linear_lr(config, base + per_epoch, self._total_updates)
            self.epoch_losses.append(mean_loss)

            if not np.isfinite(mean_loss) or not self.model.is_finite():
                raise TrainingError(f"non-finite parameters detected after epoch {epoch + 1}")
            logger.info(f"[TRAIN] epoch {epoch + 1}/{config.epochs} mean_loss={mean_loss:.4f} "
                        f"lr={lr_now:.6f} ({time.time() - started:.1f}s)")

        logger.info(f"[OK] Trained {len(tags)} doc vectors")
        return self.model

    def _run_epoch(self, epoch: int, order: np.ndarray, encoded: List[np.ndarray], offsets: np.ndarray) -> float:
        shards = [s for s in np.array_split(order, self.config.workers) if len(s)]
        if len(shards) <= 1:
            return self._run_shard(epoch, order, encoded, offsets)

        results: Dict[int, float] = {}
        errors: List[BaseException] = []

        def worker_loop(index: int, shard: np.ndarray):
            try:
                results[index] = self._run_shard(epoch, shard, encoded, offsets)
            except BaseException as e:  # surfaced on the main thread below
                errors.append(e)

        workers = [threading.Thread(target=worker_loop, args=(i, shard), daemon=True)
                   for i, shard in enumerate(shards)]
        for thread in workers:
            thread.start()
        for thread in workers:
            thread.join()
        if errors:
            raise TrainingError(f"worker failed in epoch {epoch + 1}: {errors[0]}") from errors[0]
        return float(sum(results.values()))

    def _run_shard(self, epoch: int, shard: np.ndarray, encoded: List[np.ndarray], offsets: np.ndarray) -> float:
        total = 0.0
        for row in shard:
            row = int(row)
            rng = np.random.default_rng([self.config.seed, epoch, row])
            total += self._train_doc(row, encoded[row], rng, int(offsets[row]))
        return total

    def _train_doc(self, row: int, ids: np.ndarray, rng: np.random.Generator, offset: int) -> float:
        model, config = self.model, self.config
        negatives = draw_negative_matrix(model.vocab, rng, ids, config.negative)
        loss = 0.0
        for i in range(len(ids)):
            lr = linear_lr(config, offset + i, self._total_updates)
            target = int(ids[i])
            if config.mode is TrainMode.DBOW:
                grads = dbow_gradients(model, row, target, negatives[i])
            else:
                context = window_context(ids, i, config.window)
                grads = dm_gradients(model, row, context, target, config.combine, negatives[i])
            apply_gradients(model, grads, lr, row)
            loss += grads.loss

            if config.mode is TrainMode.DBOW and config.dbow_words:
                for context_word in window_context(ids, i, config.window):
                    if context_word != EMPTY_SLOT:
                        skipgram_step(model, target, context_word, lr, rng)
        return loss


def train(docs: Sequence, config: TrainConfig) -> EmbeddingModel:
    """Train paragraph vectors for all docs"""
    return ParagraphVectorTrainer(config).train(docs)


def infer_vector(
    model: EmbeddingModel,
    tokens: Sequence[str],
    epochs: Optional[int] = None,
    seed: Optional[int] = None,
) -> np.ndarray:
    """
    Train a fresh doc vector for unseen tokens against frozen word/output weights

    Args:
        model: trained model (not modified)
        tokens: document tokens; out-of-vocabulary tokens are ignored
        epochs: passes over the tokens (defaults to the training epochs)
        seed: initialisation and noise seed (defaults to the training seed)
    """
    config = model.config
    epochs = config.epochs if epochs is None else int(epochs)
    seed = config.seed if seed is None else int(seed)
    if epochs < 1:
        raise InferenceError(f"epochs must be >= 1, got {epochs}")

    ids = model.vocab.encode(tokens)
    if len(ids) == 0:
        raise InferenceError("cannot infer a vector: no token is in the vocabulary")

    vector = init_matrix(np.random.default_rng([seed]), 1, config.dim, model.doc_vectors.dtype)
    total = epochs * len(ids)
    for epoch in range(epochs):
        rng = np.random.default_rng([seed, epoch])
        negatives = draw_negative_matrix(model.vocab, rng, ids, config.negative)
        for i in range(len(ids)):
            lr = linear_lr(config, epoch * len(ids) + i, total)
            if config.mode is TrainMode.DBOW:
                grads = dbow_gradients(model, 0, int(ids[i]), negatives[i], doc_vectors=vector)
            else:
                context = window_context(ids, i, config.window)
                grads = dm_gradients(model, 0, context, int(ids[i]), config.combine, negatives[i],
                                     doc_vectors=vector)
            apply_gradients(model, grads, lr, 0, learn_words=False, doc_vectors=vector)
    return vector[0].astype(np.float64)
