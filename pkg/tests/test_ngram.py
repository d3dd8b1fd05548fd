import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import postedit.ngram as ngram
from oracles import brute_candidates, brute_suggest, count_ngrams
from postedit.ngram import (
    NGramIndex,
    NGramSuggester,
    SuggesterConfig,
    UntrainedIndexError,
    candidates,
    phrase_count,
    score,
    train,
)
from strategies import random_instance


def test_bigram_counts():
    idx = train("the boy the boy scout", order=2)
    bigrams = {g: n for g, n in idx.counts.items() if len(g) == 2}
    assert bigrams == {("the", "boy"): 2, ("boy", "the"): 1, ("boy", "scout"): 1}
    assert idx.total_unigrams == 5
    assert idx.vocabulary == {"the", "boy", "scout"}


def test_the_boy_is_one_bigram():
    idx = train("The boy", order=2)
    assert idx.count(("the", "boy")) == 1
    assert idx.surface["the"] == "The"


def test_dominant_casing():
    idx = train("Cisco cisco Cisco LAN lan", order=1)
    assert idx.surface == {"cisco": "Cisco", "lan": "LAN"}  # tie goes to the smaller string


def test_empty_corpus():
    with pytest.raises(ValueError):
        train("  \n ")


def test_counts_match_independent_recount():
    rng = random.Random(7)
    words = ["w%d" % rng.randint(0, 60) for _ in range(1000)]
    for order in (1, 2, 3, 4):
        idx = train(" ".join(words), order)
        assert idx.counts == count_ngrams(words, order)
        for g, n in idx.counts.items():
            assert set(g) <= idx.vocabulary
            if len(g) >= 2:
                assert n <= idx.counts[g[:-1]]
        assert idx.total_unigrams == sum(n for g, n in idx.counts.items() if len(g) == 1)


def test_candidates_example():
    idx = train("hard hold word horse", order=1)
    assert candidates("hord", idx, 1) == {"hard", "hold", "word"}
    assert candidates("hord", idx, 1) == brute_candidates("hord", idx.vocabulary, 1)
    assert "hard" in candidates("hard", idx, 1)


def test_candidates_self_and_far():
    idx = train("the of and to in is it you that he was for on are with as", order=1)
    assert candidates("zzzz", idx, 1) == set()
    assert candidates("the", idx, 1) >= {"the"}
    assert candidates("THE", idx, 1) >= {"the"}


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.text(alphabet="abcdé", min_size=1, max_size=6), min_size=1, max_size=40),
    st.text(alphabet="abcdéx", min_size=1, max_size=7),
    st.integers(min_value=1, max_value=3),
)
def test_candidates_equal_brute_force(vocab, word, d):
    idx = train(" ".join(vocab), order=1)
    assert candidates(word, idx, d) == brute_candidates(word, idx.vocabulary, d)


def test_score_hand_computed():
    idx = train("the boy the boy scout the boy", order=3)
    assert score(["the", "boy"], idx) == pytest.approx(3 / 7, rel=1e-12)
    assert score(["boy", "the"], idx) == pytest.approx(1 / 7, rel=1e-12)
    assert score(["the", "boy"], idx) > score(["boy", "the"], idx)


def test_score_backoff_hand_computed():
    # "scout boy" unseen as a bigram: P(scout) * alpha * P(boy)
    idx = train("the boy the boy scout the boy", order=2)
    assert score(["scout", "boy"], idx, 0.4) == pytest.approx(1 / 7 * 0.4 * 3 / 7, rel=1e-12)


def test_score_positive_on_seen_text():
    idx = train("the boy scout", order=3)
    assert score("the boy scout".split(), idx) > 0


def test_score_unknown_floor():
    idx = train("the boy the boy scout the boy", order=3)
    assert score(["zebra"], idx) == 1 / (7 * 3)
    with pytest.raises(ValueError):
        score([], idx)


def test_phrase_count_long_query():
    idx = train("a b c d a b c", order=2)
    assert phrase_count(["a", "b", "c"], idx) == 2
    assert phrase_count(["a", "b", "c", "d"], idx) == 1
    assert phrase_count(["A", "B"], idx) == 2


CORPUS = (
    "the hard disk storage is full . the hard disk is slow . "
    "a hard disk stores data . the hold button . President John Kennedy spoke . John Kennedy was elected ."
)


def test_hord_disk():
    idx = train(CORPUS, order=3)
    s = NGramSuggester(idx).suggest("the hord disk")
    assert s.corrected == "the hard disk"
    assert brute_suggest("the hord disk", idx, SuggesterConfig(), score) == "the hard disk"


def test_jahn_cenedy_casing():
    idx = train(CORPUS, order=3)
    s = NGramSuggester(idx).suggest("jahn cenedy")
    assert s.corrected == "John Kennedy" and s.provider_id == "ngram"


def test_exact_phrase_accepted():
    idx = train(CORPUS, order=3)
    assert NGramSuggester(idx).suggest("the hard disk") is None
    assert NGramSuggester(idx).suggest("The Hard Disk") is None


def test_unknown_words_without_candidates():
    idx = train(CORPUS, order=3)
    assert NGramSuggester(idx, SuggesterConfig(max_edit_distance=1)).suggest("xqzzv wwqpt") is None


def test_untrained():
    with pytest.raises(UntrainedIndexError):
        NGramSuggester(None).suggest("the hord disk")
    with pytest.raises(UntrainedIndexError):
        NGramSuggester(NGramIndex(order=2)).suggest("x")


def test_config_validation():
    for bad in (dict(max_edit_distance=0), dict(backoff_alpha=0), dict(min_exact_count=0), dict(score_margin=-1)):
        with pytest.raises(ValueError):
            SuggesterConfig(**bad)


def test_unchanged_words_keep_their_casing():
    idx = train(CORPUS + " the", order=2)
    s = NGramSuggester(idx).suggest("THE hord disk")
    assert s.corrected == "THE hard disk"


def test_index_format(tmp_path):
    idx = train("b a A c b a", order=2)
    text = idx.dumps()
    lines = text.splitlines()
    assert lines[0] == "NGRAMIDX v1 order=2 vocab=3 total=6"
    grams = [l.split("\t")[1] for l in lines[1:]]
    assert grams == sorted(grams, key=lambda g: g.encode())
    assert "3\ta" in lines  # folded count 3, lowercase form seen twice so it wins
    path = tmp_path / "x.idx"
    idx.save(path)
    again = NGramIndex.load(path)
    assert again == idx
    assert again.dumps() == text


def test_index_load_errors():
    with pytest.raises(ValueError):
        NGramIndex.loads("hello\n")
    with pytest.raises(ValueError):
        NGramIndex.loads("NGRAMIDX v1 order=1 vocab=2 total=1\n1\ta\n")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(["x", "X", "y", "zé", "Zé", "w", "ß"]), min_size=1, max_size=60), st.integers(1, 4))
def test_index_round_trip(tokens, order):
    idx = train(" ".join(tokens), order)
    text = idx.dumps()
    assert NGramIndex.loads(text) == idx
    assert NGramIndex.loads(text).dumps() == text


def _enumerate(lattice, index, alpha):
    best = None
    for path in itertools.product(*lattice):
        key = (-score(path, index, alpha), path)
        best = key if best is None or key < best else best
    return -best[0], best[1]


@pytest.mark.parametrize("seed", range(40))
def test_dynamic_program_equals_enumeration(seed):
    rng = random.Random(seed)
    words = [rng.choice("abcdefg") for _ in range(rng.randint(5, 80))]
    idx = train(" ".join(words), order=rng.choice([1, 2, 3, 4]))
    lattice = [sorted(rng.sample("abcdefgh", rng.randint(1, 4))) for _ in range(rng.randint(1, 5))]
    assert ngram._exact_search(lattice, idx, 0.4) == _enumerate(lattice, idx, 0.4)


def test_beam_search_used_for_large_lattices(monkeypatch):
    idx = train(CORPUS, order=3)
    sugg = NGramSuggester(idx)
    exact = sugg.best_path("the hord disk".split())
    monkeypatch.setattr(ngram, "EXHAUSTIVE_LIMIT", 1)
    called = []
    real = ngram._beam_search
    monkeypatch.setattr(ngram, "_beam_search", lambda *a, **k: called.append(1) or real(*a, **k))
    assert sugg.best_path("the hord disk".split()) == exact
    assert called


def test_beam_keeps_width():
    idx = train("a b c d e f g a b", order=2)
    lattice = [list("abcdefg")] * 4
    p, path = ngram._beam_search(lattice, idx, 0.4, width=8)
    assert len(path) == 4 and p == score(path, idx, 0.4)


@pytest.mark.parametrize("seed", range(30))
def test_suggest_matches_brute_force(seed):
    corpus, order, query, cfg = random_instance(random.Random(1000 + seed))
    idx = train(corpus, order)
    config = SuggesterConfig(**cfg)
    got = NGramSuggester(idx, config).suggest(query)
    assert (got.corrected if got else None) == brute_suggest(query, idx, config, score)


@pytest.mark.parametrize("seed", range(30))
def test_seen_rewrites_are_fixed_points(seed):
    # A rewrite that is itself a known phrase passes the exact-match gate on a second pass.
    corpus, order, query, cfg = random_instance(random.Random(5000 + seed))
    idx = train(corpus, order)
    sugg = NGramSuggester(idx, SuggesterConfig(**cfg))
    first = sugg.suggest(query)
    if first is None:
        return
    if phrase_count(first.corrected.split(), idx) >= sugg.config.min_exact_count:
        assert sugg.suggest(first.corrected) is None


def test_nearest_only_leaves_known_words():
    idx = train(CORPUS, order=3)
    sugg = NGramSuggester(idx, SuggesterConfig(nearest_only=True))
    assert sugg.lattice(["is", "hord"]) == [["is"], ["hard", "hold"]]
