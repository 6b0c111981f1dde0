"""Pseudo-term lexicon: locutions that resolve to official terms.

Instead of a free thesaurus (which floods the voting stage with false
candidates), the searchable terminology is extended with pseudo terms,
each mapped to exactly one official term. Pseudo terms are voted, scored
and selected like any other entry; the release stage swaps in the official
term and records the locution as provenance.

``generate_variants`` mechanically derives noun/adjective locutions, e.g.
with the pair (aumento, aumentato) the term "aumento della pressione"
yields the pseudo term "aumentato della pressione". Only the base
adjective form is emitted; inflected forms are reached through stemming
at match time.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

from .terminology import TermEntry, Terminology, TerminologyError, make_entry
from .textprep import tokenize

PSEUDO_CSV_COLUMNS = ("pseudo_text", "target_llt_id")


class PseudoTerm:
    """A locution and the official llt_id it stands for."""

    __slots__ = ("pseudo_text", "target_llt_id")

    def __init__(self, pseudo_text: str, target_llt_id: str):
        self.pseudo_text = pseudo_text
        self.target_llt_id = str(target_llt_id)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PseudoTerm)
            and self.pseudo_text == other.pseudo_text
            and self.target_llt_id == other.target_llt_id
        )

    def __hash__(self) -> int:
        return hash((self.pseudo_text, self.target_llt_id))

    def __repr__(self) -> str:
        return f"PseudoTerm({self.pseudo_text!r} -> {self.target_llt_id})"


def load_pseudo_lexicon(path: str | Path, terminology: Terminology) -> list[PseudoTerm]:
    """Load a ``pseudo_text,target_llt_id`` CSV, validating every target."""
    path = Path(path)
    pseudos: list[PseudoTerm] = []
    seen: set[tuple[str, str]] = set()
    with path.open(encoding="utf-8-sig", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        missing = [c for c in PSEUDO_CSV_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise TerminologyError(f"{path}: missing required columns {missing}")
        for row in reader:
            line = reader.line_num
            text = (row.get("pseudo_text") or "").strip()
            target = (row.get("target_llt_id") or "").strip()
            if not text or not target:
                raise TerminologyError(f"{path}:{line}: missing pseudo_text or target_llt_id")
            if target not in terminology:
                raise TerminologyError(f"{path}:{line}: unknown target_llt_id {target!r}")
            if terminology[target].is_pseudo:
                raise TerminologyError(f"{path}:{line}: target {target!r} is itself a pseudo term")
            key = (text.lower(), target)
            if key in seen:
                continue
            seen.add(key)
            pseudos.append(PseudoTerm(text, target))
    return pseudos


def generate_variants(
    terminology: Terminology, pairs: Sequence[tuple[str, str]]
) -> list[PseudoTerm]:
    """Derive pseudo terms by swapping paired nouns and adjectives.

    For every official term containing the noun (resp. adjective) of a
    pair, emit the same wording with that word replaced by the adjective
    (resp. noun). Variants whose word list duplicates an existing official
    term are skipped; duplicates are emitted once.
    """
    swaps: dict[str, str] = {}
    for noun, adjective in pairs:
        swaps[noun.lower()] = adjective.lower()
        swaps[adjective.lower()] = noun.lower()
    official_texts = {entry.normalized_text for entry in terminology.officials()}
    out: list[PseudoTerm] = []
    seen: set[tuple[str, str]] = set()
    for entry in terminology.officials():
        tokens = [t.surface for t in tokenize(entry.llt_text, terminology.fold_diacritics)]
        hit_words = {w for w in tokens if w in swaps}
        for word in sorted(hit_words):
            variant_tokens = [swaps[word] if t == word else t for t in tokens]
            variant_text = " ".join(variant_tokens)
            variant_words = " ".join(t for t in variant_tokens if t not in terminology.stop_words)
            if variant_words in official_texts:
                continue
            key = (variant_text, entry.llt_id)
            if key in seen:
                continue
            seen.add(key)
            out.append(PseudoTerm(variant_text, entry.llt_id))
    return out


def pseudo_entries(
    terminology: Terminology, pseudos: Iterable[PseudoTerm]
) -> list[TermEntry]:
    """Materialize pseudo terms as indexable entries targeting officials."""
    entries = []
    for i, pseudo in enumerate(pseudos):
        target = terminology[pseudo.target_llt_id]
        if target.is_pseudo:
            raise TerminologyError(f"pseudo term may not target pseudo entry {target.llt_id!r}")
        entries.append(
            make_entry(
                llt_id=f"pseudo:{i:05d}",
                llt_text=pseudo.pseudo_text,
                pt_id=target.pt_id,
                pt_text=target.pt_text,
                stop_words=terminology.stop_words,
                fold_diacritics=terminology.fold_diacritics,
                pseudo_of=target.llt_id,
            )
        )
    return entries


def extend_terminology(
    terminology: Terminology, pseudos: Iterable[PseudoTerm]
) -> Terminology:
    """Terminology with pseudo terms joined in as first-class entries."""
    return terminology.extended(pseudo_entries(terminology, pseudos))
