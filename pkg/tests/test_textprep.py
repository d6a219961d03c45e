"""Preprocessing and collocation tests.

Phrase-score expectations are recomputed from first principles inside each
test (counts and vocabulary size of the constructed corpus fed through the
scoring formula), then compared with the model's decision.
"""

import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ugs_topics.textprep import (
    ENGLISH_MIN_FRACTION,
    PhraseModel,
    PrepConfig,
    apply_phrases,
    build_phrase_model,
    english_fraction,
    is_english,
    load_common_words,
    load_stopwords,
    prepare_corpus,
    preprocess,
    surface_tokens,
)

TOKEN_RE = re.compile(r"^[a-z_]+$")


class TestPreprocess:
    def test_review_sentence(self):
        out = preprocess("Absolutely beautiful if you get the weather to enjoy it.")
        assert out == ["absolut", "beauti", "weather", "enjoi"]

    def test_empty_input(self):
        assert preprocess("") == []

    def test_url_emoji_and_stopword_stripping(self):
        assert preprocess("Visit https://example.com NOW!! \U0001F600") == ["visit"]

    def test_email_and_www_stripped(self):
        out = preprocess("mail park.info@example.ie or www.example.ie/parks today")
        assert "exampl" not in out
        assert "info" not in out

    def test_stem_landing_on_stopword_is_dropped(self):
        # "beings" stems to "be"; the output may not contain a stopword
        assert preprocess("beings walking") == ["walk"]

    def test_min_token_length(self):
        cfg = PrepConfig(min_token_length=5)
        out = preprocess("lovely green park", cfg)
        assert out == ["love"] or all(len(t) >= 5 for t in out) or out == []
        # defaults keep two-letter tokens such as "st"
        assert "st" in preprocess("st stephen green")

    def test_deterministic(self):
        text = "A lovely WALK in St Stephen's Green; bring a picnic!"
        assert preprocess(text) == preprocess(text)

    @given(st.text(max_size=300))
    @settings(max_examples=200, deadline=None)
    def test_total_function_and_charset(self, text):
        cfg = PrepConfig()
        out = preprocess(text, cfg)
        for token in out:
            assert TOKEN_RE.match(token)
            assert token not in cfg.stopword_list
            assert len(token) >= cfg.min_token_length


class TestConfig:
    def test_rejects_bad_lengths(self):
        with pytest.raises(ValueError):
            PrepConfig(min_token_length=0)
        with pytest.raises(ValueError):
            PrepConfig(phrase_min_count=0)

    def test_wordlists_loaded(self):
        stop = load_stopwords()
        assert "now" in stop and "the" in stop and "get" in stop
        assert len(load_common_words()) >= 1000


class TestEnglishScreen:
    def test_fraction_counts_function_words(self):
        text = "Absolutely beautiful if you get the weather to enjoy it."
        # 9 of the 10 raw tokens are on the stopword/common lists
        assert english_fraction(text) == pytest.approx(0.9)

    def test_empty_has_no_evidence(self):
        assert english_fraction("") == 0.0
        assert not is_english("")

    def test_non_english_dropped(self):
        assert not is_english("le parc est magnifique et le soleil brille")
        assert is_english("a lovely walk in the park")

    def test_threshold_is_twenty_percent(self):
        assert ENGLISH_MIN_FRACTION == 0.2


def phrase_score(count_ab, count_a, count_b, vocab_size, min_count):
    return (count_ab - min_count) * vocab_size / (count_a * count_b)


class TestPhraseModel:
    def test_accepted_bigram_matches_formula(self):
        # ten docs, each one occurrence of the adjacent pair, distinct filler
        docs = [["st", "stephen", "green", f"filler{i}", f"pad{i}"] for i in range(10)]
        cfg = PrepConfig(phrase_min_count=5, phrase_threshold=1.0)
        model = build_phrase_model(docs, cfg)
        vocab = len({t for d in docs for t in d})
        want = phrase_score(10, 10, 10, vocab, 5)
        assert want >= 1.0
        assert model.table[("stephen", "green")] == pytest.approx(want)
        assert apply_phrases(["st", "stephen", "green"], model) == ["st_stephen_green"]

    def test_trigram_from_second_pass(self):
        docs = [["st", "stephen", "green", f"filler{i}", f"pad{i}"] for i in range(10)]
        cfg = PrepConfig(phrase_min_count=5, phrase_threshold=1.0)
        model = build_phrase_model(docs, cfg)
        assert ("st", "stephen", "green") in model.table
        # second-pass score: pair (st_stephen, green) over merged docs
        merged_vocab = len({t for d in docs for t in apply_phrases(d, PhraseModel(
            {k: v for k, v in model.table.items() if len(k) == 2}, 1.0))})
        want = phrase_score(10, 10, 10, merged_vocab, 5)
        assert model.table[("st", "stephen", "green")] == pytest.approx(want)

    def test_below_count_floor_rejected(self):
        # pair appears 4 times, floor is 5
        docs = [["grand", "canal", f"x{i}"] for i in range(4)]
        model = build_phrase_model(docs, PrepConfig(phrase_min_count=5, phrase_threshold=0.0))
        assert ("grand", "canal") not in model.table

    def test_no_repeated_pair_gives_empty_table(self):
        docs = [["one", "two"], ["three", "four"]]
        model = build_phrase_model(docs, PrepConfig())
        assert model.table == {}

    def test_empty_corpus_raises(self):
        with pytest.raises(ValueError):
            build_phrase_model([], PrepConfig())

    def test_score_below_threshold_rejected(self):
        # frequent unigrams crush the score even at high pair count
        docs = [["tea", "cup"]] * 50 + [["tea"], ["cup"]] * 200
        cfg = PrepConfig(phrase_min_count=5, phrase_threshold=10.0)
        model = build_phrase_model(docs, cfg)
        vocab = 2
        assert phrase_score(50, 250, 250, vocab, 5) < 10.0
        assert model.table == {}

    def test_model_invariant_enforced(self):
        with pytest.raises(ValueError):
            PhraseModel(table={("a", "b"): 0.5}, threshold=1.0)

    def test_json_round_trip(self):
        model = PhraseModel(table={("a", "b"): 2.0, ("a", "b", "c"): 3.5}, threshold=1.5)
        again = PhraseModel.from_jsonable(model.to_jsonable())
        assert again == model


class TestApplyPhrases:
    def test_greedy_join(self):
        model = PhraseModel(table={("stephen", "green"): 11.0}, threshold=10.0)
        assert apply_phrases(["st", "stephen", "green"], model) == ["st", "stephen_green"]

    def test_empty(self):
        model = PhraseModel(table={}, threshold=10.0)
        assert apply_phrases([], model) == []

    def test_leftmost_wins_on_overlap(self):
        model = PhraseModel(table={("a", "b"): 11.0, ("b", "c"): 11.0}, threshold=10.0)
        assert apply_phrases(["a", "b", "c"], model) == ["a_b", "c"]

    def test_idempotent(self):
        model = PhraseModel(
            table={("a", "b"): 11.0, ("b", "c"): 11.0, ("x", "y", "z"): 12.0},
            threshold=10.0,
        )
        rng = random.Random(7)
        alphabet = ["a", "b", "c", "x", "y", "z", "q"]
        for _ in range(200):
            doc = [rng.choice(alphabet) for _ in range(rng.randint(0, 12))]
            once = apply_phrases(doc, model)
            assert apply_phrases(once, model) == once


class TestPrepareCorpus:
    def test_screens_and_tracks_indices(self):
        texts = [
            "A lovely walk in the park with great views.",
            "le parc est magnifique et le soleil brille",
            "Beautiful gardens, we had a picnic on the grass.",
        ]
        prepared = prepare_corpus(texts)
        assert prepared.kept_indices == [0, 2]
        assert len(prepared.docs) == 2

    def test_surface_forms_pick_most_frequent(self):
        texts = ["walking walking walked in gardens", "walking near gardens garden"]
        prepared = prepare_corpus(texts, build_phrases=False)
        assert prepared.surface_forms["walk"] == "walking"
        assert prepared.surface_forms["garden"] == "gardens"

    def test_surface_form_tie_is_alphabetical(self):
        texts = ["walked walking"]
        prepared = prepare_corpus(texts, build_phrases=False)
        assert prepared.surface_forms["walk"] == "walked"

    def test_raw_token_ordering_preserved(self):
        texts = ["Lovely picnic near the lake, lovely swans."]
        prepared = prepare_corpus(texts, build_phrases=False)
        assert prepared.docs == [["love", "picnic", "near", "lake", "love", "swan"]]


def test_surface_tokens_strip_order():
    # URL removal must run before tokenization or its words would leak
    out = surface_tokens("see https://parks.example.com/visit now")
    assert out == ["see", "now"]
