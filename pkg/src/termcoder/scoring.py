"""Ranking weights for voted terms.

Every voted term gets a weight vector ordered so that lexicographically
smaller is better:

1. coverage: share of the term's words NOT recognized (0 = fully covered);
2. stem_flag: 1 when at least one vote needed stemming, else 0;
3. text_distance: bigram distance between the term and the text rebuilt
   from its voters, in [0, 1];
4. density: voter index spread divided by covered positions (1 = the term
   was covered by adjacent description words, larger = scattered).

A fifth weight, distribution (the sum of voted positions, favouring terms
covered near their head words), is always computed but only joins the
ranking in the relaxed partial-coverage mode.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .terminology import TermEntry, Terminology
from .textprep import CleanText, normalize
from .voting import VotedSet, VoteRecord


@dataclass(frozen=True)
class WeightVector:
    coverage: float
    stem_flag: int
    text_distance: float
    density: float
    distribution: int

    def ranking_key(self, include_distribution: bool = False) -> tuple:
        if include_distribution:
            return (self.coverage, self.stem_flag, self.text_distance, self.density, self.distribution)
        return (self.coverage, self.stem_flag, self.text_distance, self.density)

    def to_dict(self) -> dict:
        return {
            "coverage": self.coverage,
            "stem_flag": self.stem_flag,
            "text_distance": self.text_distance,
            "density": self.density,
            "distribution": self.distribution,
        }


def coverage(term: TermEntry, rec: VoteRecord) -> float:
    """Fraction of the term's word positions left unvoted."""
    return (term.size - len(rec.distinct_voted)) / term.size


def coverage_type(rec: VoteRecord) -> int:
    return 1 if rec.stem_used else 0


def word_bigrams(text: str) -> Counter:
    """Multiset of adjacent character pairs, collected per word.

    Pairs never straddle word boundaries, which is what makes the distance
    below robust to word permutation; words shorter than two characters
    contribute nothing.
    """
    grams: Counter = Counter()
    for word in text.split():
        for i in range(len(word) - 1):
            grams[word[i : i + 2]] += 1
    return grams


def pair_distance(a: str, b: str) -> float:
    """Bigram distance in [0, 1]; 0 for identical normalized strings.

    When neither side yields a bigram (only single-character words), the
    word multisets are compared instead; plain string equality would make
    the degenerate case sensitive to word order.
    """
    na = normalize(a)
    nb = normalize(b)
    grams_a = word_bigrams(na)
    grams_b = word_bigrams(nb)
    total = sum(grams_a.values()) + sum(grams_b.values())
    if total == 0:
        return 0.0 if sorted(na.split()) == sorted(nb.split()) else 1.0
    common = sum((grams_a & grams_b).values())
    return 1.0 - 2.0 * common / total


def coverage_distance(term: TermEntry, rec: VoteRecord, clean: CleanText) -> float:
    """Distance between the term and the term rebuilt from its voters."""
    rebuilt = " ".join(clean.tokens[i].surface for i in rec.voters)
    return pair_distance(term.normalized_text, rebuilt)


def coverage_density(rec: VoteRecord) -> float:
    """(max voter - min voter + 1) / number of distinct covered positions."""
    voters = rec.voters
    return (max(voters) - min(voters) + 1) / len(rec.distinct_voted)


def coverage_distribution(rec: VoteRecord) -> int:
    """Sum of the voted positions; small means the term's head was covered."""
    return sum(rec.voted)


def compute_weights(
    voted: VotedSet, terminology: Terminology, clean: CleanText
) -> dict[str, WeightVector]:
    weights: dict[str, WeightVector] = {}
    for llt_id, rec in voted.items():
        term = terminology[llt_id]
        weights[llt_id] = WeightVector(
            coverage=coverage(term, rec),
            stem_flag=coverage_type(rec),
            text_distance=coverage_distance(term, rec, clean),
            density=coverage_density(rec),
            distribution=coverage_distribution(rec),
        )
    return weights
