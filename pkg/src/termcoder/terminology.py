"""Terminology loading and the inverted word indexes used for matching.

A terminology is loaded from an open CSV schema (see README) with one row
per low level term (LLT) carrying its preferred term (PT) linkage and
optional hierarchy labels. Two inverted meta-dictionaries map each word
(or word stem) to the terms containing it, so membership of a description
word in the terminology is a constant-time hash lookup.

Both structures are immutable after construction and safe to share across
threads; index building is a pure function of (terminology, stemmer) and
only needs to rerun when the dictionary itself changes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .textprep import Stemmer, get_stemmer, load_word_list, tokenize

CSV_COLUMNS = ("llt_id", "llt_text", "pt_id", "pt_text", "hlt_text", "hlgt_text", "soc_text")
REQUIRED_COLUMNS = ("llt_id", "llt_text", "pt_id", "pt_text")

# (llt_id, position of the word inside the term)
Posting = tuple[str, int]


class TerminologyError(ValueError):
    """Raised for malformed terminology or lexicon input."""


@dataclass(frozen=True)
class TermEntry:
    """One dictionary term with its normalized, stop-word-free word list."""

    llt_id: str
    llt_text: str
    words: tuple[str, ...]
    pt_id: str
    pt_text: str
    hlt_text: str = ""
    hlgt_text: str = ""
    soc_text: str = ""
    # For pseudo locutions: the official llt_id this entry resolves to.
    pseudo_of: str | None = None

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def normalized_text(self) -> str:
        return " ".join(self.words)

    @property
    def is_pseudo(self) -> bool:
        return self.pseudo_of is not None


@dataclass(frozen=True)
class TerminologyStats:
    term_count: int
    distinct_word_count: int
    max_term_words: int


def _normalize_stop_words(stop_words: Iterable[str], fold_diacritics: bool) -> frozenset[str]:
    normalized = set()
    for word in stop_words:
        for tok in tokenize(word, fold_diacritics):
            normalized.add(tok.surface)
    return frozenset(normalized)


def make_entry(
    llt_id: str,
    llt_text: str,
    pt_id: str,
    pt_text: str,
    stop_words: frozenset[str] = frozenset(),
    fold_diacritics: bool = False,
    hlt_text: str = "",
    hlgt_text: str = "",
    soc_text: str = "",
    pseudo_of: str | None = None,
) -> TermEntry:
    """Build a TermEntry, normalizing the term text into its word list."""
    words = tuple(
        t.surface for t in tokenize(llt_text, fold_diacritics) if t.surface not in stop_words
    )
    if not words:
        raise TerminologyError(f"term {llt_id!r} has no content words: {llt_text!r}")
    return TermEntry(
        llt_id=str(llt_id),
        llt_text=llt_text,
        words=words,
        pt_id=str(pt_id),
        pt_text=pt_text,
        hlt_text=hlt_text,
        hlgt_text=hlgt_text,
        soc_text=soc_text,
        pseudo_of=pseudo_of,
    )


class Terminology:
    """Immutable collection of TermEntry objects keyed by llt_id."""

    def __init__(
        self,
        entries: Iterable[TermEntry],
        stop_words: Iterable[str] = (),
        fold_diacritics: bool = False,
    ):
        self.fold_diacritics = fold_diacritics
        self.stop_words = _normalize_stop_words(stop_words, fold_diacritics)
        self.entries: dict[str, TermEntry] = {}
        for entry in entries:
            if entry.llt_id in self.entries:
                raise TerminologyError(f"duplicate llt_id {entry.llt_id!r}")
            self.entries[entry.llt_id] = entry
        words = set()
        max_words = 0
        for entry in self.entries.values():
            words.update(entry.words)
            max_words = max(max_words, entry.size)
        self.stats = TerminologyStats(
            term_count=len(self.entries),
            distinct_word_count=len(words),
            max_term_words=max_words,
        )

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, llt_id: str) -> bool:
        return llt_id in self.entries

    def __getitem__(self, llt_id: str) -> TermEntry:
        return self.entries[llt_id]

    def get(self, llt_id: str) -> TermEntry | None:
        return self.entries.get(llt_id)

    def __iter__(self) -> Iterator[TermEntry]:
        return iter(self.entries.values())

    def official(self, llt_id: str) -> TermEntry:
        """Resolve a (possibly pseudo) id to its official entry."""
        entry = self.entries[llt_id]
        if entry.pseudo_of is not None:
            return self.entries[entry.pseudo_of]
        return entry

    def officials(self) -> Iterator[TermEntry]:
        return (e for e in self.entries.values() if not e.is_pseudo)

    def prefix_search(self, query: str, limit: int = 50) -> list[TermEntry]:
        """Case-insensitive llt_text prefix search over official terms."""
        q = query.lower()
        hits = [e for e in self.officials() if e.llt_text.lower().startswith(q)]
        hits.sort(key=lambda e: (e.llt_text.lower(), e.llt_id))
        return hits[:limit]

    def extended(self, extra_entries: Iterable[TermEntry]) -> "Terminology":
        """New Terminology with ``extra_entries`` added (same stop words)."""
        combined = list(self.entries.values()) + list(extra_entries)
        out = Terminology.__new__(Terminology)
        out.fold_diacritics = self.fold_diacritics
        out.stop_words = self.stop_words
        out.entries = {}
        for entry in combined:
            if entry.llt_id in out.entries:
                raise TerminologyError(f"duplicate llt_id {entry.llt_id!r}")
            out.entries[entry.llt_id] = entry
        words = set()
        max_words = 0
        for entry in out.entries.values():
            words.update(entry.words)
            max_words = max(max_words, entry.size)
        out.stats = TerminologyStats(len(out.entries), len(words), max_words)
        return out


def load_terminology(
    path: str | Path,
    stop_words: Iterable[str] = (),
    fold_diacritics: bool = False,
) -> Terminology:
    """Load a terminology CSV (UTF-8, header row, schema in README).

    Raises TerminologyError naming the offending line for malformed rows
    and for duplicate llt_ids. An empty file yields an empty, lookup-safe
    terminology.
    """
    path = Path(path)
    stops = _normalize_stop_words(stop_words, fold_diacritics)
    entries: list[TermEntry] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8-sig", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return Terminology([], stop_words, fold_diacritics)
        missing = [c for c in REQUIRED_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise TerminologyError(f"{path}: missing required columns {missing}")
        for row in reader:
            line = reader.line_num
            values = {c: (row.get(c) or "").strip() for c in CSV_COLUMNS}
            empty = [c for c in REQUIRED_COLUMNS if not values[c]]
            if empty:
                raise TerminologyError(f"{path}:{line}: missing value for {', '.join(empty)}")
            if values["llt_id"] in seen:
                raise TerminologyError(f"{path}:{line}: duplicate llt_id {values['llt_id']!r}")
            seen.add(values["llt_id"])
            try:
                entries.append(
                    make_entry(
                        values["llt_id"],
                        values["llt_text"],
                        values["pt_id"],
                        values["pt_text"],
                        stop_words=stops,
                        fold_diacritics=fold_diacritics,
                        hlt_text=values["hlt_text"],
                        hlgt_text=values["hlgt_text"],
                        soc_text=values["soc_text"],
                    )
                )
            except TerminologyError as exc:
                raise TerminologyError(f"{path}:{line}: {exc}") from None
    return Terminology(entries, stop_words, fold_diacritics)


load_stop_words = load_word_list


@dataclass(frozen=True)
class PostingStats:
    key_count: int
    posting_count: int
    mean_postings: float
    max_postings: int


class MetaDictionary:
    """Inverted map word (or stem) -> postings (llt_id, word position)."""

    def __init__(self, index: dict[str, frozenset[Posting]], stemmed: bool):
        self._index = index
        self.stemmed = stemmed

    _EMPTY: frozenset[Posting] = frozenset()

    def lookup(self, word: str) -> frozenset[Posting]:
        """Postings for ``word``; an absent key yields the empty set."""
        return self._index.get(word, self._EMPTY)

    def __len__(self) -> int:
        return len(self._index)

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def keys(self):
        return self._index.keys()

    def posting_stats(self) -> PostingStats:
        total = sum(len(v) for v in self._index.values())
        longest = max((len(v) for v in self._index.values()), default=0)
        mean = total / len(self._index) if self._index else 0.0
        return PostingStats(len(self._index), total, mean, longest)


def build_meta_dict(terminology: Terminology, stemmer: str | Stemmer | None = None) -> MetaDictionary:
    """Build the inverted index; with a stemmer, keys are word stems.

    When the same key occurs at several positions of one term (a repeated
    word, or two words sharing a stem) only the first position is indexed,
    so each (key, term) pair has exactly one posting.
    """
    stem = get_stemmer(stemmer) if stemmer is not None else None
    index: dict[str, set[Posting]] = {}
    stem_cache: dict[str, str] = {}
    for entry in terminology:
        seen_keys: set[str] = set()
        for position, word in enumerate(entry.words):
            if stem is None:
                key = word
            else:
                key = stem_cache.get(word)
                if key is None:
                    key = stem_cache[word] = stem(word)
            if key in seen_keys:
                continue
            seen_keys.add(key)
            index.setdefault(key, set()).add((entry.llt_id, position))
    frozen = {k: frozenset(v) for k, v in index.items()}
    return MetaDictionary(frozen, stemmed=stem is not None)


def lookup(meta: MetaDictionary, word: str) -> frozenset[Posting]:
    return meta.lookup(word)
