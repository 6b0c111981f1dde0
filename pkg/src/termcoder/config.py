"""File-backed configuration for the CLI and the HTTP service.

The config file is a flat YAML mapping. Recognized keys:

    stemmer: light | aggressive        (default light)
    max_terms: 6
    c3_threshold: 0.5                  # text-distance admission threshold
    c4_threshold: 3                    # density admission threshold
    enable_c5: false                   # relaxed partial-coverage mode
    fold_diacritics: false
    stop_words: path/to/stopwords.txt
    negation_lexicon: path/to/negations.txt
    synonym_lexicon: path/to/pseudo.csv

Relative paths are resolved against the config file's directory.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

import yaml

from .coder import TermCoder

_PATH_KEYS = ("stop_words", "negation_lexicon", "synonym_lexicon")


@dataclass
class CoderConfig:
    stemmer: str = "light"
    max_terms: int = 6
    c3_threshold: float = 0.5
    c4_threshold: float = 3.0
    enable_c5: bool = False
    fold_diacritics: bool = False
    stop_words: str | None = None
    negation_lexicon: str | None = None
    synonym_lexicon: str | None = None

    @classmethod
    def from_file(cls, path: str | Path) -> "CoderConfig":
        path = Path(path)
        raw = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        if not isinstance(raw, dict):
            raise ValueError(f"{path}: config must be a key/value mapping")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ValueError(f"{path}: unknown config keys {unknown}")
        for key in _PATH_KEYS:
            value = raw.get(key)
            if value:
                raw[key] = str((path.parent / value).resolve())
        return cls(**raw)

    def make_coder(self, max_terms: int | None = None) -> TermCoder:
        return TermCoder(
            stemmer=self.stemmer,
            max_terms=self.max_terms if max_terms is None else max_terms,
            c3_threshold=self.c3_threshold,
            c4_threshold=self.c4_threshold,
            enable_c5=self.enable_c5,
            stop_words=self.stop_words,
            negation_words=self.negation_lexicon,
            fold_diacritics=self.fold_diacritics,
            synonym_lexicon=self.synonym_lexicon,
        )
