"""Scikit-learn style estimator wrapping the full coding pipeline."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import selection, synonyms
from .selection import EncodingResult
from .terminology import Terminology, build_meta_dict, load_terminology
from .textprep import DEFAULT_NEGATION_WORDS, get_stemmer, load_word_list


def _as_word_set(value, default: frozenset[str]) -> frozenset[str]:
    if value is None:
        return default
    if isinstance(value, (str, Path)):
        return load_word_list(value)
    return frozenset(str(w).lower() for w in value)


class TermCoder(BaseEstimator):
    """Maps free-text descriptions to ranked terminology entries.

    Follows the scikit-learn estimator conventions: parameters are stored
    verbatim by ``__init__`` (so ``get_params``/``set_params``/``clone``
    work), ``fit`` builds the word indexes from a terminology, and
    ``predict`` encodes an iterable of texts.

    Parameters
    ----------
    stemmer : "light", "aggressive" or a callable word -> stem.
    max_terms : maximum number of released terms per description.
    c3_threshold : admission threshold on the text-distance weight.
    c4_threshold : admission threshold on the density weight.
    enable_c5 : relaxed mode; rank with the distribution weight and admit
        partially covered terms.
    stop_words : iterable of words or path to a word list; used when
        ``fit`` is given a CSV path (a ready Terminology keeps its own).
    negation_words : iterable or path; defaults to {"non", "senza"}.
    fold_diacritics : fold accented characters to ASCII when loading from
        a CSV path.
    synonym_lexicon : optional path to a pseudo-term CSV joined at fit.
    synonym_pairs : optional (noun, adjective) pairs used to generate
        pseudo-term variants at fit.
    """

    def __init__(
        self,
        stemmer="light",
        max_terms=6,
        c3_threshold=0.5,
        c4_threshold=3.0,
        enable_c5=False,
        stop_words=None,
        negation_words=None,
        fold_diacritics=False,
        synonym_lexicon=None,
        synonym_pairs=None,
    ):
        self.stemmer = stemmer
        self.max_terms = max_terms
        self.c3_threshold = c3_threshold
        self.c4_threshold = c4_threshold
        self.enable_c5 = enable_c5
        self.stop_words = stop_words
        self.negation_words = negation_words
        self.fold_diacritics = fold_diacritics
        self.synonym_lexicon = synonym_lexicon
        self.synonym_pairs = synonym_pairs

    def fit(self, X: Terminology | str | Path, y=None) -> "TermCoder":
        """Build the exact and stemmed indexes from a terminology.

        ``X`` may be a loaded Terminology or a path to a terminology CSV.
        The stemmer is baked into the stemmed index here; changing the
        ``stemmer`` parameter afterwards requires refitting.
        """
        if isinstance(X, Terminology):
            terminology = X
        else:
            terminology = load_terminology(
                X,
                stop_words=_as_word_set(self.stop_words, frozenset()),
                fold_diacritics=self.fold_diacritics,
            )
        pseudos: list[synonyms.PseudoTerm] = []
        if self.synonym_lexicon is not None:
            pseudos.extend(synonyms.load_pseudo_lexicon(self.synonym_lexicon, terminology))
        if self.synonym_pairs:
            pseudos.extend(synonyms.generate_variants(terminology, self.synonym_pairs))
        if pseudos:
            terminology = synonyms.extend_terminology(terminology, pseudos)
        stemmer = get_stemmer(self.stemmer)
        self.terminology_ = terminology
        self.pseudo_terms_ = pseudos
        self.stemmer_ = stemmer
        self.exact_index_ = build_meta_dict(terminology)
        self.stem_index_ = build_meta_dict(terminology, stemmer)
        self.negation_words_ = _as_word_set(self.negation_words, DEFAULT_NEGATION_WORDS)
        return self

    def encode(self, text: str, max_terms: int | None = None) -> EncodingResult:
        """Encode a single description into an EncodingResult."""
        check_is_fitted(self, "terminology_")
        return selection.encode(
            text,
            self.terminology_,
            self.exact_index_,
            self.stem_index_,
            stemmer=self.stemmer_,
            max_terms=self.max_terms if max_terms is None else max_terms,
            c3_threshold=self.c3_threshold,
            c4_threshold=self.c4_threshold,
            enable_c5=self.enable_c5,
            negation_words=self.negation_words_,
        )

    def transform(self, X: Iterable[str]) -> list[EncodingResult]:
        """Encode an iterable of texts into EncodingResults."""
        self._check_text_input(X)
        return [self.encode(text) for text in X]

    def predict(self, X: Iterable[str]) -> list[list[str]]:
        """Winner llt_id lists, one per input text."""
        return [result.winner_ids() for result in self.transform(X)]

    @staticmethod
    def _check_text_input(X) -> None:
        if isinstance(X, str):
            raise TypeError("X must be an iterable of texts, not a single string; use encode()")
