"""Offline embedding extraction for the artrec recommender."""

from .corpus import Painting, load_corpus, painting_text
from .extract import ExtractionError, ExtractionManifest, extract_image_embeddings, extract_text_embeddings
from .tsv import format_value, read_tsv, write_tsv

__all__ = [
    "ExtractionError",
    "ExtractionManifest",
    "Painting",
    "extract_image_embeddings",
    "extract_text_embeddings",
    "format_value",
    "load_corpus",
    "painting_text",
    "read_tsv",
    "write_tsv",
]
