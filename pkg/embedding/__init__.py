"""
Paragraph vector embeddings (PV-DBOW, PV-DM concat/average) with negative sampling
"""
from embedding.vocab import Vocabulary, build_vocab
from embedding.model import Combine, EmbeddingModel, TrainConfig, TrainMode
from embedding.steps import dbow_step, dm_step, skipgram_step
from embedding.trainer import ParagraphVectorTrainer, infer_vector, train
from embedding.persistence import load_model, save_model

__all__ = [
    "Vocabulary", "build_vocab",
    "Combine", "EmbeddingModel", "TrainConfig", "TrainMode",
    "dbow_step", "dm_step", "skipgram_step",
    "ParagraphVectorTrainer", "infer_vector", "train",
    "load_model", "save_model",
]
