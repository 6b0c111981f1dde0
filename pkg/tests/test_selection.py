from termcoder.scoring import compute_weights
from termcoder.selection import (
    encode,
    maximal_voters_filter,
    multi_sort,
    ordered_phrases_filter,
    select_winners,
    win,
)
from termcoder.terminology import Terminology, build_meta_dict, make_entry
from termcoder.textprep import preprocess
from termcoder.voting import VoteRecord, vote

from conftest import D1_EN, GLOTTIS_TONGUE_IT, subset


def pipeline(text, terminology):
    """Run preprocess/vote/weights once for selection-stage tests."""
    clean = preprocess(text, terminology.stop_words)
    voted = vote(clean, build_meta_dict(terminology), build_meta_dict(terminology, "light"))
    weights = compute_weights(voted, terminology, clean)
    return clean, voted, weights


def toy(*rows, stops=frozenset()):
    entries = [
        make_entry(llt_id, text, f"pt-{llt_id}", f"pt-{llt_id}", stop_words=frozenset(stops))
        for llt_id, text in rows
    ]
    return Terminology(entries, stops)


def record(llt_id, pairs, stem_used=False):
    rec = VoteRecord(llt_id)
    for voter, voted_pos in pairs:
        rec.add_pair(voter, voted_pos, via_stem=False)
    rec.stem_used = stem_used
    return rec


class TestOrderedPhrases:
    def test_paper_fixture_removes_out_of_order_term(self, it_terminology):
        sub = subset(it_terminology, "10000013", "10000014", "10000015", "10000016")
        _, voted, _ = pipeline(GLOTTIS_TONGUE_IT, sub)
        kept = ordered_phrases_filter(voted)
        names = {sub[l].llt_text for l in kept}
        assert names == {"Edema della glottide", "Edema della lingua", "Dispnea"}

    def test_edema_face_survives_in_full_dictionary(self, it_terminology):
        sub = subset(
            it_terminology, "10000013", "10000014", "10000015", "10000016", "10000017"
        )
        _, voted, _ = pipeline(GLOTTIS_TONGUE_IT, sub)
        kept = ordered_phrases_filter(voted)
        assert "10000017" in kept  # voters 0 < 4 match positions 0 < 1
        assert "10000015" not in kept

    def test_uncontended_voters_keep_any_order(self):
        term = toy(("100", "parestesia lingua"))
        _, voted, _ = pipeline("lingua con parestesia", term)
        assert voted["100"].voted == [1, 0]  # out of order
        assert "100" in ordered_phrases_filter(voted)

    def test_in_order_term_kept_despite_contention(self):
        term = toy(("100", "edema lingua"), ("200", "lingua"))
        _, voted, _ = pipeline("edema della lingua", term, )
        kept = ordered_phrases_filter(voted)
        assert {"100", "200"} <= set(kept)


class TestMultiSort:
    def test_d1_order(self, d1_en_coder, en_stops):
        _, voted, weights = pipeline(D1_EN, d1_en_coder.terminology_)
        order = multi_sort(voted, weights)
        assert order.index("10002199") < order.index("10054844")

    def test_tie_breaks_on_llt_id(self):
        term = toy(("300", "febbre"), ("200", "rash"))
        _, voted, weights = pipeline("febbre rash", term)
        assert multi_sort(voted, weights) == ["200", "300"]

    def test_lexicographic_dominance(self):
        # second weight (stem flag) dominates third (distance)
        term = toy(("100", "febbre dolore"), ("200", "rash"))
        _, voted, weights = pipeline("febbri dolore rash", term)
        order = multi_sort(voted, weights)
        w100, w200 = weights["100"], weights["200"]
        assert (w100.stem_flag, w200.stem_flag) == (1, 0)
        assert w100.text_distance > w200.text_distance == 0
        assert order == ["200", "100"]


class TestSelectWinners:
    def run(self, text, terminology, **kwargs):
        clean, voted, weights = pipeline(text, terminology)
        order = multi_sort(voted, weights)
        return select_winners(order, weights, voted, terminology, **kwargs), voted, weights

    def test_d1_selection(self, d1_en_coder):
        selected, _, _ = self.run(D1_EN, d1_en_coder.terminology_)
        assert set(selected) == {"10002199", "10021097"}

    def test_partially_covered_rejected(self, d1_en_coder):
        selected, voted, _ = self.run(D1_EN, d1_en_coder.terminology_)
        assert "10054844" in voted
        assert "10054844" not in selected

    def test_prefix_removed_when_longer_term_wins(self):
        # "edema" sorts first (tie on weights, lower id), then the longer
        # term replaces it
        term = toy(("10", "edema"), ("20", "edema glottide"))
        selected, _, _ = self.run("edema glottide", term)
        assert selected == ["20"]

    def test_already_selected_prefix_blocks_shorter_term(self):
        term = toy(("10", "edema glottide"), ("20", "edema"))
        selected, _, _ = self.run("edema glottide", term)
        assert selected == ["10"]

    def test_stem_only_term_with_all_voters_marked_rejected(self):
        term = toy(("10", "febbri"), ("20", "febbre"))
        selected, voted, weights = self.run("febbri", term)
        assert weights["20"].stem_flag == 1
        assert selected == ["10"]

    def test_stem_term_admitted_while_a_voter_is_unmarked(self):
        term = toy(("10", "febbri"), ("20", "febbre dolore"))
        selected, _, weights = self.run("febbri dolore", term)
        assert weights["20"].stem_flag == 1
        assert selected == ["10", "20"]

    def test_distance_threshold(self):
        term = toy(("10", "febbre"),)
        selected, _, _ = self.run("febbri", term, c3_threshold=0.1)
        assert selected == []

    def test_density_threshold(self):
        term = toy(("10", "febbre alta"))
        selected, voted, weights = self.run("febbre x y z w alta", term)
        assert weights["10"].density == 3.0  # (5 - 0 + 1) / 2
        assert selected == []

    def test_relaxed_mode_admits_partial_coverage(self):
        term = toy(("10", "febbre alta"))
        clean, voted, weights = pipeline("febbre", term)
        order = multi_sort(voted, weights, include_distribution=True)
        selected = select_winners(order, weights, voted, term, require_full_coverage=False)
        assert selected == ["10"]


class TestMaximalVoters:
    def test_proper_subset_removed(self):
        records = {"a": record("a", [(2, 0)]), "b": record("b", [(2, 0), (3, 1)])}
        assert maximal_voters_filter(["a", "b"], records) == ["b"]

    def test_disjoint_sets_kept(self):
        records = {"a": record("a", [(0, 0)]), "b": record("b", [(2, 0)])}
        assert maximal_voters_filter(["a", "b"], records) == ["a", "b"]

    def test_equal_sets_keep_earlier(self):
        records = {"a": record("a", [(1, 0)]), "b": record("b", [(1, 0)])}
        assert maximal_voters_filter(["a", "b"], records) == ["a"]

    def test_vaccination_site_case(self, en_terminology):
        # the fully spelled term absorbs the bare "vaccination"
        sub = subset(en_terminology, "10046735", "10046861")
        result = encode(
            "redness and vaccination site swelling since yesterday",
            sub,
            build_meta_dict(sub),
            build_meta_dict(sub, "light"),
        )
        assert [w.llt_id for w in result.winners] == ["10046735"]


class TestWin:
    def test_short_final_not_padded(self):
        assert win(["a", "b"], 6) == ["a", "b"]

    def test_truncates(self):
        assert win(list("abcdefgh"), 6) == list("abcdef")

    def test_empty(self):
        assert win([], 6) == []


class TestEncode:
    def test_d1_end_to_end(self, d1_en_coder):
        result = d1_en_coder.encode(D1_EN)
        assert {w.llt_text for w in result.winners} == {"Anaphylactic shock", "Hypotension"}
        assert result.candidates_total == 2
        assert not result.negation_alert

    def test_gibberish_empty(self, en_coder):
        result = en_coder.encode("qwerty zxcvb plomb")
        assert result.winners == ()
        assert result.candidates_total == 0

    def test_empty_text(self, en_coder):
        result = en_coder.encode("")
        assert result.winners == ()

    def test_deterministic(self, it_coder):
        from conftest import D2_IT

        first = it_coder.encode(D2_IT)
        second = it_coder.encode(D2_IT)
        assert first.winner_ids() == second.winner_ids()
        assert [w.weights for w in first.winners] == [w.weights for w in second.winners]

    def test_winner_invariants(self, it_coder):
        from conftest import D2_IT

        result = it_coder.encode(D2_IT)
        texts = []
        voter_sets = []
        for w in result.winners:
            assert w.weights.coverage == 0
            assert w.weights.text_distance < 0.5
            assert w.weights.density < 3
            texts.append(it_coder.terminology_[w.llt_id].normalized_text)
            voter_sets.append(set(w.voters))
        for i, a in enumerate(texts):
            for j, b in enumerate(texts):
                if i != j:
                    assert not b.startswith(a)
        for i, a in enumerate(voter_sets):
            for j, b in enumerate(voter_sets):
                if i != j:
                    assert not a < b

    def test_max_terms_cap(self, en_coder):
        text = "fever headache nausea rash cough tremor dizziness fatigue"
        full = en_coder.encode(text)
        assert full.candidates_total == 8
        assert len(full.winners) == 6
        capped = en_coder.encode(text, max_terms=2)
        assert len(capped.winners) == 2
        assert capped.candidates_total == 8

    def test_negation_alert_propagates(self, it_coder):
        result = it_coder.encode("vomito senza febbre")
        assert result.negation_alert
        assert result.negation_spans

    def test_relaxed_mode_ranks_by_head_coverage(self):
        term = toy(("100", "alta febbre"), ("200", "febbre alta"))
        exact = build_meta_dict(term)
        stemmed = build_meta_dict(term, "light")
        strict = encode("febbre", term, exact, stemmed)
        assert strict.winners == ()
        relaxed = encode("febbre", term, exact, stemmed, enable_c5=True)
        assert [w.llt_id for w in relaxed.winners] == ["200"]
        assert relaxed.winners[0].weights.coverage == 0.5
