"""Personality data augmentation pipeline.

Thin Python surface over the C++ core: text cleanup, the candidate filter
stack, lexicon relevance scoring, confusion-matrix metrics and the staged
pipeline runner.
"""

try:
    from . import _pedant as _impl  # installed wheel layout
except ImportError:
    import _pedant as _impl  # in-tree build directory on PYTHONPATH

ConfigError = _impl.ConfigError
DataError = _impl.DataError
clean_text = _impl.clean_text
cosine = _impl.cosine
default_lexicon_words = _impl.default_lexicon_words
default_seeds = _impl.default_seeds
filter_texts = _impl.filter_texts
load_seeds = _impl.load_seeds
metrics_from_confusion = _impl.metrics_from_confusion
paraphrase_keep_indices = _impl.paraphrase_keep_indices
run = _impl.run
score_texts = _impl.score_texts
segment_sentences = _impl.segment_sentences

__all__ = [
    "ConfigError",
    "DataError",
    "clean_text",
    "cosine",
    "default_lexicon_words",
    "default_seeds",
    "filter_texts",
    "load_seeds",
    "metrics_from_confusion",
    "paraphrase_keep_indices",
    "run",
    "score_texts",
    "segment_sentences",
]
