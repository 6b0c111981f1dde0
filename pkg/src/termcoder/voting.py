"""Single-pass voting of description words against the word indexes.

Each kept description word "votes" every term containing it. A vote
records the voter position in the description and the voted position
inside the term. Exact matches win over stemmed ones: once a word has
voted a term exactly, its stemmed form is not considered for that term.
"""

from __future__ import annotations

from .terminology import MetaDictionary
from .textprep import CleanText


class VoteRecord:
    """Voter/voted positions collected for one term.

    ``pairs`` holds (voter index, voted position) in discovery order;
    voters and voted are the projections of that list. ``stem_used`` is
    set as soon as one pair comes from the stemmed index.
    """

    __slots__ = ("llt_id", "pairs", "stem_used", "_voter_set", "_pair_set")

    def __init__(self, llt_id: str):
        self.llt_id = llt_id
        self.pairs: list[tuple[int, int]] = []
        self.stem_used = False
        self._voter_set: set[int] = set()
        self._pair_set: set[tuple[int, int]] = set()

    def add_pair(self, voter: int, voted: int, via_stem: bool) -> bool:
        """Record one (voter, voted) match; duplicate pairs are rejected."""
        pair = (voter, voted)
        if pair in self._pair_set:
            return False
        self._pair_set.add(pair)
        self._voter_set.add(voter)
        self.pairs.append(pair)
        if via_stem:
            self.stem_used = True
        return True

    def has_voter(self, index: int) -> bool:
        return index in self._voter_set

    @property
    def voters(self) -> list[int]:
        return [voter for voter, _ in self.pairs]

    @property
    def voted(self) -> list[int]:
        return [voted for _, voted in self.pairs]

    @property
    def voter_set(self) -> frozenset[int]:
        return frozenset(self._voter_set)

    @property
    def distinct_voted(self) -> frozenset[int]:
        return frozenset(voted for _, voted in self.pairs)

    def __repr__(self) -> str:
        return f"VoteRecord({self.llt_id!r}, pairs={self.pairs!r}, stem_used={self.stem_used})"


VotedSet = dict[str, VoteRecord]


def vote(clean: CleanText, exact: MetaDictionary, stemmed: MetaDictionary) -> VotedSet:
    """Scan the description once and collect votes for every matched term.

    For each kept word: exact-index hits always add a pair; stemmed-index
    hits add a pair only when that word has not already voted the term.
    Work is bounded by the total size of the consulted posting lists.
    """
    records: VotedSet = {}
    for tok in clean.tokens:
        for llt_id, position in exact.lookup(tok.surface):
            rec = records.get(llt_id)
            if rec is None:
                rec = records[llt_id] = VoteRecord(llt_id)
            rec.add_pair(tok.index, position, via_stem=False)
        for llt_id, position in stemmed.lookup(tok.stem):
            rec = records.get(llt_id)
            if rec is None:
                rec = records[llt_id] = VoteRecord(llt_id)
            elif rec.has_voter(tok.index):
                continue
            rec.add_pair(tok.index, position, via_stem=True)
    return records
