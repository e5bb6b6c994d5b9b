"""
Versioned binary model file

Layout (little-endian):
    b'PVEC'  u16 version
    config   u8 mode, u32 dim, window, negative, epochs, min_count, workers,
             i64 seed, f64 initial_lr, final_lr, noise_power, u8 dbow_words
    vocab    u64 V, then V x (u32 byte length, UTF-8 word, u64 count)
    docs     u64 D, then D x (u32 byte length, UTF-8 tag)
    matrices doc_vectors, word_in_vectors, word_out_vectors, each as
             u64 rows, u64 cols, rows*cols float32 row-major
    u32      CRC32 of every preceding byte
"""
import os
import struct
import zlib
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from embedding.model import EmbeddingModel, TrainConfig, TrainMode
from embedding.vocab import Vocabulary
from utils.errors import (
    ModelChecksumError,
    ModelFileError,
    ModelFormatError,
    ModelTruncatedError,
    ModelVersionError,
)
from utils.logger import setup_logger

logger = setup_logger("model_io")

MAGIC = b'PVEC'
FORMAT_VERSION = 1

_MODE_CODES = {TrainMode.DBOW: 0, TrainMode.DM_CONCAT: 1, TrainMode.DM_AVG: 2}
_CODE_MODES = {code: mode for mode, code in _MODE_CODES.items()}
_CONFIG = struct.Struct('<BIIIIIIqdddB')


def _pack_strings(items: List[str], with_counts=None) -> bytes:
    parts = [struct.pack('<Q', len(items))]
    for i, item in enumerate(items):
        raw = item.encode('utf-8')
        parts.append(struct.pack('<I', len(raw)))
        parts.append(raw)
        if with_counts is not None:
            parts.append(struct.pack('<Q', int(with_counts[i])))
    return b''.join(parts)


def _pack_matrix(matrix: np.ndarray) -> bytes:
    rows, cols = matrix.shape
    return struct.pack('<QQ', rows, cols) + np.ascontiguousarray(matrix, dtype='<f4').tobytes()


def model_to_bytes(model: EmbeddingModel) -> bytes:
    config = model.config
    header = MAGIC + struct.pack('<H', FORMAT_VERSION) + _CONFIG.pack(
        _MODE_CODES[config.mode], config.dim, config.window, config.negative, config.epochs,
        config.min_count, config.workers, config.seed,
        config.initial_lr, config.final_lr, config.noise_power, int(config.dbow_words),
    )
    body = b''.join([
        header,
        _pack_strings(model.vocab.words, model.vocab.counts),
        _pack_strings(model.doc_tags),
        _pack_matrix(model.doc_vectors),
        _pack_matrix(model.word_in_vectors),
        _pack_matrix(model.word_out_vectors),
    ])
    return body + struct.pack('<I', zlib.crc32(body) & 0xFFFFFFFF)


def save_model(model: EmbeddingModel, path: Union[str, Path]) -> Path:
    """Write the model file; the target is replaced only after a complete write"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + '.tmp')
    try:
        with open(tmp, 'wb') as f:
            f.write(model_to_bytes(model))
        os.replace(tmp, path)
    finally:
        if tmp.exists():
            tmp.unlink()
    logger.info(f"[OK] Model saved to {path}")
    return path


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int, what: str) -> bytes:
        available = len(self.data) - self.pos
        if n > available:
            raise ModelTruncatedError(what, n, available)
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: Union[str, struct.Struct], what: str) -> Tuple:
        st = fmt if isinstance(fmt, struct.Struct) else struct.Struct(fmt)
        return st.unpack(self.take(st.size, what))

    def strings(self, what: str, with_counts: bool) -> Tuple[List[str], List[int]]:
        (n,) = self.unpack('<Q', f"{what} count")
        items, counts = [], []
        for i in range(n):
            (length,) = self.unpack('<I', f"{what} {i} length")
            try:
                items.append(self.take(length, f"{what} {i}").decode('utf-8'))
            except UnicodeDecodeError as e:
                raise ModelFormatError(f"{what} {i} is not valid UTF-8") from e
            if with_counts:
                counts.append(self.unpack('<Q', f"{what} {i} count")[0])
        return items, counts

    def matrix(self, what: str) -> np.ndarray:
        rows, cols = self.unpack('<QQ', f"{what} shape")
        raw = self.take(rows * cols * 4, what)
        return np.frombuffer(raw, dtype='<f4').reshape(rows, cols).astype(np.float32)


def model_from_bytes(data: bytes) -> EmbeddingModel:
    if len(data) < len(MAGIC) or data[:len(MAGIC)] != MAGIC:
        raise ModelFormatError("not a model file: bad magic bytes")
    reader = _Reader(data)
    reader.take(len(MAGIC), "magic")
    (version,) = reader.unpack('<H', "format version")
    if version != FORMAT_VERSION:
        raise ModelVersionError(f"unsupported model format version {version} (expected {FORMAT_VERSION})")

    (mode_code, dim, window, negative, epochs, min_count, workers, seed,
     initial_lr, final_lr, noise_power, dbow_words) = reader.unpack(_CONFIG, "config block")
    if mode_code not in _CODE_MODES:
        raise ModelFormatError(f"unknown mode code {mode_code}")
    config = TrainConfig(
        mode=_CODE_MODES[mode_code], dim=dim, window=window, negative=negative, epochs=epochs,
        min_count=min_count, workers=workers, seed=seed, initial_lr=initial_lr, final_lr=final_lr,
        noise_power=noise_power, dbow_words=bool(dbow_words),
    )

    words, counts = reader.strings("vocabulary word", with_counts=True)
    tags, _ = reader.strings("document tag", with_counts=False)
    doc_vectors = reader.matrix("doc_vectors")
    word_in = reader.matrix("word_in_vectors")
    word_out = reader.matrix("word_out_vectors")

    body_end = reader.pos
    (stored_crc,) = reader.unpack('<I', "checksum")
    if reader.pos != len(data):
        raise ModelFormatError(f"{len(data) - reader.pos} unexpected trailing bytes")
    actual_crc = zlib.crc32(data[:body_end]) & 0xFFFFFFFF
    if stored_crc != actual_crc:
        raise ModelChecksumError(f"checksum mismatch: stored {stored_crc:08x}, computed {actual_crc:08x}")

    if doc_vectors.shape != (len(tags), dim) or word_out.shape != (len(words), config.hidden_width):
        raise ModelFormatError("matrix shapes do not match the config and vocabulary blocks")
    if word_in.shape[0] not in (0, len(words)):
        raise ModelFormatError("word_in_vectors rows do not match the vocabulary")
    if word_in.shape[0] == 0:
        word_in = np.zeros((0, dim), dtype=np.float32)

    vocab = Vocabulary(words=words, counts=np.array(counts, dtype=np.int64),
                       min_count=min_count, noise_power=noise_power)
    return EmbeddingModel(vocab, config, tags, doc_vectors, word_in, word_out)


def load_model(path: Union[str, Path]) -> EmbeddingModel:
    """Read a model file written by save_model"""
    path = Path(path)
    try:
        with open(path, 'rb') as f:
            data = f.read()
    except OSError as e:
        raise ModelFileError(f"cannot read model file {path}: {e}") from e
    model = model_from_bytes(data)
    logger.info(f"[OK] Model loaded from {path} ({len(model.doc_tags)} docs, {len(model.vocab)} words)")
    return model
