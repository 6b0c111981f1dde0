"""Text preparation: tokenization, stop-word removal, stemming, negation flags.

Dictionary terms and narrative descriptions go through the same
normalization (lowercase, punctuation treated as a separator, whitespace
collapsed) so that exact word matching is well defined on both sides.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

# Letters and digits only; underscores and all punctuation split tokens.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

# Plain vowels plus the accented variants common in Italian text.
_VOWELS = frozenset("aeiouàáâäèéêëìíîïòóôöùúûü")

DEFAULT_NEGATION_WORDS = frozenset({"non", "senza"})

Stemmer = Callable[[str], str]


@dataclass(frozen=True)
class RawToken:
    surface: str
    start: int
    end: int


@dataclass(frozen=True)
class Token:
    """A kept (non-stop-word) token of a description."""

    index: int
    surface: str
    stem: str
    start: int
    end: int


@dataclass(frozen=True)
class CleanText:
    """Stop-word-free token array plus negation alerts.

    ``tokens`` are indexed consecutively from 0. ``negation_indexes`` refer
    to positions in the raw (pre stop-word removal) token stream, so a
    negation that is also a stop word is still reported.
    """

    tokens: tuple[Token, ...]
    negation_indexes: tuple[int, ...] = ()
    negation_spans: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    @property
    def negation_alert(self) -> bool:
        return bool(self.negation_indexes)


def fold_to_ascii(text: str) -> str:
    """Strip diacritics by unicode decomposition (e.g. "è" -> "e")."""
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def tokenize(text: str, fold_diacritics: bool = False) -> list[RawToken]:
    """Split ``text`` into lowercase tokens with character spans.

    Punctuation never appears inside a token; hyphens, slashes and the like
    act as separators. Numbers are kept: they simply never match dictionary
    words.
    """
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        surface = match.group().lower()
        if fold_diacritics:
            surface = fold_to_ascii(surface)
        tokens.append(RawToken(surface, match.start(), match.end()))
    return tokens


def normalize(text: str, fold_diacritics: bool = False) -> str:
    """Canonical form of a string: lowercased tokens joined by one space."""
    return " ".join(t.surface for t in tokenize(text, fold_diacritics))


def remove_stop_words(tokens: list[RawToken], stop_words: frozenset[str] | set[str]) -> list[RawToken]:
    """Drop stop words, preserving the order of the survivors."""
    if not stop_words:
        return list(tokens)
    return [t for t in tokens if t.surface not in stop_words]


def stem_light(word: str) -> str:
    """Elide final vowels, never shortening a word below two characters.

    This keeps singular/plural and masculine/feminine variants together
    ("mano"/"mani" -> "man") without the overreach of derivational
    stemmers; "mania" collapses to "man" too, a known false-positive
    source accepted by design.
    """
    w = word
    while len(w) > 2 and w[-1] in _VOWELS:
        w = w[:-1]
    return w


# Derivational suffixes stripped by the aggressive stemmer, longest first.
# Deliberately close to off-the-shelf Italian stemmers, including their
# counterintuitive gaps: "-ico" is a suffix while plural "-ici" is not, so
# "psichiatrico" -> "psichiatr" but "psichiatrici" -> "psichiatric".
_AGGRESSIVE_SUFFIXES = (
    "azione", "azioni", "uzione", "uzioni",
    "amento", "amenti", "imento", "imenti",
    "mente",
    "abile", "abili", "ibile", "ibili",
    "ismo", "ismi", "ista", "iste", "isti",
    "anza", "anze", "enza", "enze",
    "iche", "ichi",
    "ico", "ica",
    "oso", "osa", "osi", "ose",
    "ivo", "iva", "ivi", "ive",
    "ità",
)


def stem_aggressive(word: str) -> str:
    """Suffix-table stemmer; falls back to final-vowel elision."""
    for suffix in _AGGRESSIVE_SUFFIXES:
        if word.endswith(suffix) and len(word) - len(suffix) >= 3:
            return word[: len(word) - len(suffix)]
    return stem_light(word)


STEMMERS: dict[str, Stemmer] = {
    "light": stem_light,
    "aggressive": stem_aggressive,
}


def get_stemmer(spec: str | Stemmer) -> Stemmer:
    """Resolve a stemmer name ("light", "aggressive") or pass a callable through."""
    if callable(spec):
        return spec
    try:
        return STEMMERS[spec]
    except KeyError:
        raise ValueError(f"unknown stemmer {spec!r}; expected one of {sorted(STEMMERS)}") from None


def preprocess(
    text: str,
    stop_words: frozenset[str] | set[str] = frozenset(),
    stemmer: str | Stemmer = stem_light,
    negation_words: Iterable[str] = DEFAULT_NEGATION_WORDS,
    fold_diacritics: bool = False,
) -> CleanText:
    """Tokenize, flag negations, drop stop words and attach stems.

    Negations are detected on the raw token stream, before stop-word
    removal, because the usual negation words are themselves stop words.
    Detection only raises an alert; it never alters matching.
    """
    stem = get_stemmer(stemmer)
    raw = tokenize(text, fold_diacritics)
    negations = frozenset(negation_words)
    neg_indexes = []
    neg_spans = []
    for i, tok in enumerate(raw):
        if tok.surface in negations:
            neg_indexes.append(i)
            neg_spans.append((tok.start, tok.end))
    kept = remove_stop_words(raw, stop_words)
    tokens = tuple(
        Token(index=i, surface=t.surface, stem=stem(t.surface), start=t.start, end=t.end)
        for i, t in enumerate(kept)
    )
    return CleanText(tokens=tokens, negation_indexes=tuple(neg_indexes), negation_spans=tuple(neg_spans))


def load_word_list(path: str | Path) -> frozenset[str]:
    """Load a one-word-per-line UTF-8 list; '#' starts a comment."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        entry = line.split("#", 1)[0].strip().lower()
        if entry:
            words.add(entry)
    return frozenset(words)
