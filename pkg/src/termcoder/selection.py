"""Winner selection: heuristic pruning, multi-key sort and release rules.

The selection stage turns the voted term set into a short ranked answer:

* ordered-phrases pruning drops terms whose voters appear in the text in a
  different relative order than the matched term positions (applied only
  when those voters also voted other terms);
* a multi-key ascending sort on the weight vector puts the most plausible
  terms on top, ties broken by llt_id for determinism;
* the release loop keeps fully covered terms under the distance/density
  thresholds, skipping terms that are textual prefixes of already selected
  ones and stem-voted terms whose voters are all already covered;
* maximal-voters pruning removes terms whose voter set is contained in
  another selected term's voter set;
* the first ``max_terms`` survivors are released, with pseudo locutions
  resolved to their official terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, TypeVar

from .scoring import WeightVector, compute_weights
from .terminology import MetaDictionary, Terminology
from .textprep import (
    DEFAULT_NEGATION_WORDS,
    Stemmer,
    Token,
    get_stemmer,
    preprocess,
)
from .voting import VotedSet, vote


@dataclass(frozen=True)
class Winner:
    """One released term with its provenance."""

    llt_id: str
    llt_text: str
    pt_id: str
    pt_text: str
    weights: WeightVector
    voters: tuple[int, ...]
    stem_used: bool
    via_synonym: str | None = None


@dataclass(frozen=True)
class EncodingResult:
    """Ordered winners plus the preprocessing context they refer to.

    ``candidates_total`` counts the ranked, synonym-merged candidates
    before truncation to ``max_terms``; ``tokens`` carries the kept
    description tokens so callers can highlight voter spans.
    """

    winners: tuple[Winner, ...]
    negation_alert: bool
    candidates_total: int
    tokens: tuple[Token, ...] = ()
    negation_spans: tuple[tuple[int, int], ...] = ()

    def winner_ids(self) -> list[str]:
        return [w.llt_id for w in self.winners]

    def pt_ids(self) -> set[str]:
        return {w.pt_id for w in self.winners}


def ordered_phrases_filter(voted: VotedSet) -> VotedSet:
    """Drop terms voted out of phrase order by contended voters.

    A term is removed iff at least one of its voter indexes also voted a
    different term and its voted positions, read in voter order, are not
    non-decreasing.
    """
    term_count_per_voter: dict[int, int] = {}
    for rec in voted.values():
        for voter in rec.voter_set:
            term_count_per_voter[voter] = term_count_per_voter.get(voter, 0) + 1
    kept: VotedSet = {}
    for llt_id, rec in voted.items():
        if any(term_count_per_voter[v] > 1 for v in rec.voter_set):
            positions = [voted_pos for _, voted_pos in sorted(rec.pairs)]
            if any(b < a for a, b in zip(positions, positions[1:])):
                continue
        kept[llt_id] = rec
    return kept


def multi_sort(
    voted: VotedSet,
    weights: dict[str, WeightVector],
    include_distribution: bool = False,
) -> list[str]:
    """Ascending lexicographic sort on the weight vector, best first."""
    return sorted(
        voted,
        key=lambda llt_id: (*weights[llt_id].ranking_key(include_distribution), llt_id),
    )


def select_winners(
    order: Sequence[str],
    weights: dict[str, WeightVector],
    records: VotedSet,
    terminology: Terminology,
    c3_threshold: float = 0.5,
    c4_threshold: float = 3.0,
    require_full_coverage: bool = True,
) -> list[str]:
    """Release loop over the sorted candidates.

    All description word positions start unmarked; selecting a term marks
    every one of its voters. A stem-voted term is only admitted while it
    still contributes at least one unmarked voter.
    """
    marked: set[int] = set()
    selected: list[str] = []
    texts: dict[str, str] = {}
    for llt_id in order:
        w = weights[llt_id]
        if require_full_coverage and w.coverage != 0:
            continue
        if not (w.text_distance < c3_threshold and w.density < c4_threshold):
            continue
        rec = records[llt_id]
        if rec.stem_used and all(v in marked for v in rec.voter_set):
            continue
        text = terminology[llt_id].normalized_text
        if any(texts[s].startswith(text) for s in selected):
            continue
        marked.update(rec.voter_set)
        selected = [s for s in selected if not text.startswith(texts[s])]
        selected.append(llt_id)
        texts[llt_id] = text
    return selected


def maximal_voters_filter(selected: Sequence[str], records: VotedSet) -> list[str]:
    """Drop terms whose voter set is contained in another's.

    Proper subsets always lose; among equal voter sets only the earliest
    (best sorted) term survives.
    """
    voter_sets = {llt_id: records[llt_id].voter_set for llt_id in selected}
    kept = []
    for i, llt_id in enumerate(selected):
        mine = voter_sets[llt_id]
        beaten = False
        for j, other in enumerate(selected):
            if other == llt_id:
                continue
            theirs = voter_sets[other]
            if mine < theirs or (mine == theirs and j < i):
                beaten = True
                break
        if not beaten:
            kept.append(llt_id)
    return kept


T = TypeVar("T")


def win(final: Sequence[T], n: int) -> list[T]:
    """First ``n`` elements; a short list is returned without padding."""
    return list(final[:n])


def _release(
    final: Sequence[str],
    records: VotedSet,
    weights: dict[str, WeightVector],
    terminology: Terminology,
) -> list[Winner]:
    """Resolve pseudo locutions to official terms and merge duplicates."""
    winners: list[Winner] = []
    seen_official: set[str] = set()
    for llt_id in final:
        entry = terminology[llt_id]
        official = terminology.official(llt_id)
        if official.llt_id in seen_official:
            continue
        seen_official.add(official.llt_id)
        rec = records[llt_id]
        winners.append(
            Winner(
                llt_id=official.llt_id,
                llt_text=official.llt_text,
                pt_id=official.pt_id,
                pt_text=official.pt_text,
                weights=weights[llt_id],
                voters=tuple(rec.voters),
                stem_used=rec.stem_used,
                via_synonym=entry.llt_text if entry.is_pseudo else None,
            )
        )
    return winners


def encode(
    text: str,
    terminology: Terminology,
    exact_index: MetaDictionary,
    stem_index: MetaDictionary,
    stemmer: str | Stemmer = "light",
    max_terms: int = 6,
    c3_threshold: float = 0.5,
    c4_threshold: float = 3.0,
    enable_c5: bool = False,
    negation_words: Iterable[str] = DEFAULT_NEGATION_WORDS,
) -> EncodingResult:
    """Run the full pipeline on one description.

    Deterministic for fixed inputs and settings. ``enable_c5`` switches to
    the relaxed mode: the distribution weight joins the ranking and the
    full-coverage requirement is dropped.
    """
    clean = preprocess(
        text,
        stop_words=terminology.stop_words,
        stemmer=get_stemmer(stemmer),
        negation_words=negation_words,
        fold_diacritics=terminology.fold_diacritics,
    )
    voted = vote(clean, exact_index, stem_index)
    weights = compute_weights(voted, terminology, clean)
    kept = ordered_phrases_filter(voted)
    order = multi_sort(kept, weights, include_distribution=enable_c5)
    selected = select_winners(
        order,
        weights,
        voted,
        terminology,
        c3_threshold=c3_threshold,
        c4_threshold=c4_threshold,
        require_full_coverage=not enable_c5,
    )
    final = maximal_voters_filter(selected, voted)
    released = _release(final, voted, weights, terminology)
    return EncodingResult(
        winners=tuple(win(released, max_terms)),
        negation_alert=clean.negation_alert,
        candidates_total=len(released),
        tokens=clean.tokens,
        negation_spans=clean.negation_spans,
    )
