"""
Negative-sampling SGD steps for PV-DBOW, PV-DM and skip-gram word training

Every step computes the loss of the sampled objective
    -log s(h . o_target) - sum_k log s(-h . o_noise_k)
and its analytic gradient at the current parameters, then applies
`param -= lr * grad` in place. The math follows the dtype of the model
matrices, so a float64 model gives a double-precision build of the same
steps.
"""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import expit, log_expit

from embedding.model import Combine, EmbeddingModel
from embedding.vocab import Vocabulary

EMPTY_SLOT = -1
_NO_IDS = np.zeros(0, dtype=np.int64)


@dataclass
class StepGradients:
    """Loss and gradients of one sampled prediction task"""
    loss: float
    doc_grad: Optional[np.ndarray]      # gradient of the doc vector (None for skip-gram)
    out_ids: np.ndarray                 # target id first, then noise ids
    out_grad: np.ndarray                # one row per out_ids entry
    in_ids: np.ndarray                  # word-input rows touched
    in_grad: np.ndarray                 # one row per in_ids entry


def draw_negatives(vocab: Vocabulary, rng: np.random.Generator, target: int, k: int) -> np.ndarray:
    """k noise draws, each redrawn while it equals the target"""
    if k <= 0 or len(vocab) < 2:
        return _NO_IDS
    negatives = vocab.sample_noise(rng, k)
    clash = negatives == target
    while clash.any():
        negatives[clash] = vocab.sample_noise(rng, int(clash.sum()))
        clash = negatives == target
    return negatives


def draw_negative_matrix(vocab: Vocabulary, rng: np.random.Generator, targets: np.ndarray, k: int) -> np.ndarray:
    """Noise draws for a whole document at once, shape (len(targets), k)"""
    if k <= 0 or len(vocab) < 2:
        return np.zeros((len(targets), 0), dtype=np.int64)
    negatives = vocab.sample_noise(rng, (len(targets), k))
    clash = negatives == targets[:, None]
    while clash.any():
        negatives[clash] = vocab.sample_noise(rng, int(clash.sum()))
        clash = negatives == targets[:, None]
    return negatives


def _negative_sampling(h: np.ndarray, out_rows: np.ndarray):
    """Loss, d(loss)/d(h) and d(loss)/d(out_rows) with row 0 the positive example"""
    scores = out_rows @ h
    loss = -(log_expit(scores[0]) + log_expit(-scores[1:]).sum())
    g = expit(scores)
    g[0] -= 1.0
    return float(loss), g @ out_rows, np.outer(g, h)


def _out_ids(target_word: int, negatives: np.ndarray) -> np.ndarray:
    ids = np.empty(1 + len(negatives), dtype=np.int64)
    ids[0] = target_word
    ids[1:] = negatives
    return ids


def dbow_gradients(
    model: EmbeddingModel,
    doc_row: int,
    target_word: int,
    negatives: np.ndarray,
    doc_vectors: Optional[np.ndarray] = None,
) -> StepGradients:
    """PV-DBOW: predict target_word from the doc vector alone"""
    docs = model.doc_vectors if doc_vectors is None else doc_vectors
    ids = _out_ids(target_word, negatives)
    loss, grad_h, grad_out = _negative_sampling(docs[doc_row], model.word_out_vectors[ids])
    return StepGradients(loss, grad_h, ids, grad_out, _NO_IDS, np.zeros((0, docs.shape[1]), dtype=docs.dtype))


def dm_hidden(
    model: EmbeddingModel,
    doc_vec: np.ndarray,
    context: Sequence[int],
    combine: Combine,
):
    """
    Hidden layer for PV-DM and the context ids that fed it

    `context` lists word ids by window slot (left slots, then right
    slots); EMPTY_SLOT marks positions past the document edge. In concat
    mode a shorter context is padded with empty slots up to 2*window.
    """
    dim = doc_vec.shape[0]
    context = [int(c) for c in context]
    if combine is Combine.AVERAGE:
        valid = np.array([c for c in context if c != EMPTY_SLOT], dtype=np.int64)
        h = doc_vec.copy()
        if len(valid):
            h += model.word_in_vectors[valid].sum(axis=0)
        return h / (1 + len(valid)), valid, None

    slots = 2 * model.config.window
    if len(context) > slots:
        raise ValueError(f"context has {len(context)} slots, at most {slots} allowed")
    context = context + [EMPTY_SLOT] * (slots - len(context))
    h = np.zeros(dim * (1 + slots), dtype=doc_vec.dtype)
    h[:dim] = doc_vec
    filled = [j for j, c in enumerate(context) if c != EMPTY_SLOT]
    valid = np.array([context[j] for j in filled], dtype=np.int64)
    for j, c in zip(filled, valid):
        h[dim * (j + 1):dim * (j + 2)] = model.word_in_vectors[c]
    return h, valid, filled


def dm_gradients(
    model: EmbeddingModel,
    doc_row: int,
    context: Sequence[int],
    target_word: int,
    combine: Combine,
    negatives: np.ndarray,
    doc_vectors: Optional[np.ndarray] = None,
) -> StepGradients:
    """PV-DM: predict target_word from the doc vector merged with its context"""
    docs = model.doc_vectors if doc_vectors is None else doc_vectors
    doc_vec = docs[doc_row]
    dim = doc_vec.shape[0]
    h, valid, filled = dm_hidden(model, doc_vec, context, combine)
    ids = _out_ids(target_word, negatives)
    loss, grad_h, grad_out = _negative_sampling(h, model.word_out_vectors[ids])

    if combine is Combine.AVERAGE:
        share = grad_h / (1 + len(valid))
        in_grad = np.tile(share, (len(valid), 1))
        return StepGradients(loss, share, ids, grad_out, valid, in_grad)

    blocks = grad_h.reshape(-1, dim)
    in_grad = blocks[[j + 1 for j in filled]] if filled else np.zeros((0, dim), dtype=grad_h.dtype)
    return StepGradients(loss, blocks[0].copy(), ids, grad_out, valid, in_grad)


def skipgram_gradients(
    model: EmbeddingModel,
    center_word: int,
    context_word: int,
    negatives: np.ndarray,
) -> StepGradients:
    """Word training interleaved with PV-DBOW: predict center_word from a context word's input vector"""
    ids = _out_ids(center_word, negatives)
    loss, grad_h, grad_out = _negative_sampling(model.word_in_vectors[context_word], model.word_out_vectors[ids])
    in_ids = np.array([context_word], dtype=np.int64)
    return StepGradients(loss, None, ids, grad_out, in_ids, grad_h[None, :])


def apply_gradients(
    model: EmbeddingModel,
    grads: StepGradients,
    lr: float,
    doc_row: Optional[int] = None,
    learn_words: bool = True,
    doc_vectors: Optional[np.ndarray] = None,
) -> None:
    """In-place SGD update; repeated ids accumulate their gradients"""
    if learn_words:
        np.subtract.at(model.word_out_vectors, grads.out_ids, lr * grads.out_grad)
        if len(grads.in_ids):
            np.subtract.at(model.word_in_vectors, grads.in_ids, lr * grads.in_grad)
    if grads.doc_grad is not None and doc_row is not None:
        docs = model.doc_vectors if doc_vectors is None else doc_vectors
        docs[doc_row] -= lr * grads.doc_grad


def dbow_step(
    model: EmbeddingModel,
    doc_row: int,
    target_word: int,
    lr: float,
    rng: np.random.Generator,
    negatives: Optional[np.ndarray] = None,
    learn_words: bool = True,
    doc_vectors: Optional[np.ndarray] = None,
) -> float:
    """One PV-DBOW update; returns the loss before the update"""
    if negatives is None:
        negatives = draw_negatives(model.vocab, rng, target_word, model.config.negative)
    grads = dbow_gradients(model, doc_row, target_word, negatives, doc_vectors)
    apply_gradients(model, grads, lr, doc_row, learn_words, doc_vectors)
    return grads.loss


def dm_step(
    model: EmbeddingModel,
    doc_row: int,
    context: Sequence[int],
    target_word: int,
    combine: Combine,
    lr: float,
    rng: np.random.Generator,
    negatives: Optional[np.ndarray] = None,
    learn_words: bool = True,
    doc_vectors: Optional[np.ndarray] = None,
) -> float:
    """One PV-DM update; returns the loss before the update"""
    if negatives is None:
        negatives = draw_negatives(model.vocab, rng, target_word, model.config.negative)
    grads = dm_gradients(model, doc_row, context, target_word, combine, negatives, doc_vectors)
    apply_gradients(model, grads, lr, doc_row, learn_words, doc_vectors)
    return grads.loss


def skipgram_step(
    model: EmbeddingModel,
    center_word: int,
    context_word: int,
    lr: float,
    rng: np.random.Generator,
    negatives: Optional[np.ndarray] = None,
) -> float:
    """One skip-gram update on word input/output vectors"""
    if negatives is None:
        negatives = draw_negatives(model.vocab, rng, center_word, model.config.negative)
    grads = skipgram_gradients(model, center_word, context_word, negatives)
    apply_gradients(model, grads, lr)
    return grads.loss
