from pathlib import Path

import pytest

from hmmfst import btype, hmm, lexicon
from hmmfst.btype import BTypeConfig
from hmmfst.corpus import Sentence, read_tagged, sample_corpus
from hmmfst.tagger import TaggerError, count_results, format_result, segment, tag_sentence

DATA = Path(__file__).parent / "data"

SAMPLE = [("The", "AT", "[AT]"), ("share", "NN", "[NN,VB]"), ("of", "IN", "[IN]"),
          ("tripled", "VBD", "[VBD,VBN]"), ("within", "IN", "[IN,RB]"),
          ("that", "DT", "[CS,DT,WPS]"), ("span", "NN", "[NN,VB,VBD]"), ("of", "IN", "[IN]"),
          ("time", "NN", "[NN,VB]"), (".", "SENT", "[SENT]")]


@pytest.fixture(scope="module")
def sample_bundle():
    corpus = [[(w, t) for w, t, _ in SAMPLE],
              [("was", "VBN"), ("so", "RB"), ("as", "CS"), ("who", "WPS"), ("go", "VB"), (".", "SENT")]]
    classes = {w: c.strip("[]").split(",") for w, _, c in SAMPLE}
    m = hmm.train(corpus, word_classes=classes)
    return m, lexicon.build_lexicon(m, corpus, classes)


@pytest.fixture(scope="module")
def toy_bundle():
    tagged = read_tagged(DATA / "toy.tagged")
    m = hmm.train(tagged)
    return m, lexicon.build_lexicon(m, tagged)


def test_sample_words_map_to_their_classes(sample_bundle):
    m, lex = sample_bundle
    (s,) = segment(lex, [w for w, _, _ in SAMPLE])
    assert [c.name for c in s.classes] == [c for _, _, c in SAMPLE]
    assert not s.synthetic_end


def test_segment_splits_after_end_class(toy_bundle):
    _, lex = toy_bundle
    sents = list(segment(lex, "the cat sleeps . a dog .".split()))
    assert [len(s) for s in sents] == [4, 3]
    assert list(segment(lex, [])) == []


def test_segment_flags_synthetic_end(toy_bundle):
    _, lex = toy_bundle
    sents = list(segment(lex, "the cat . a dog".split()))
    assert [s.synthetic_end for s in sents] == [False, True]
    assert sents[-1].classes[-1].name == "[SENT]"
    assert len(sents[-1]) == 3


def test_segment_needs_end_class(toy_bundle):
    _, lex = toy_bundle
    with pytest.raises(TaggerError):
        list(segment(lex, ["a"], end_tag="NOPE"))


def test_hmm_mode_equals_viterbi(sample_bundle):
    m, lex = sample_bundle
    (s,) = segment(lex, [w for w, _, _ in SAMPLE])
    r = tag_sentence(m, s, "count")
    assert r.tags == m.table.names(hmm.viterbi(m, [c.id for c in s.classes]))
    assert r.n_results == 1


def test_fst_results_contain_viterbi(sample_bundle):
    m, lex = sample_bundle
    b11 = btype.compile_btype(m, BTypeConfig(1, 1))
    (s,) = segment(lex, [w for w, _, _ in SAMPLE])
    r = tag_sentence(b11, s, "all")
    viterbi_tags = tag_sentence(m, s).tags
    assert viterbi_tags in r.alternatives
    assert r.n_results == len(r.alternatives) == count_results(b11, s)
    assert r.tags == r.alternatives[0]


def test_sequential_fst_has_one_result(toy_bundle):
    m, lex = toy_bundle
    b = btype.compile_btype(m, BTypeConfig(0, 1))
    for s in segment(lex, "the walk was long . she likes the red book .".split()):
        assert tag_sentence(b, s, "count").n_results == 1


def test_singleton_classes_force_tags(toy_bundle):
    m, lex = toy_bundle
    b = btype.compile_btype(m, BTypeConfig(1, 1))
    (s,) = segment(lex, "a dog barks .".split())
    r = tag_sentence(b, s, "count")
    assert r.tags == ["DET", "NOUN", "VERB", "SENT"] and r.n_results == 1


def test_first_mode_is_deterministic():
    m = hmm.random_model(5, 4, 7)
    b = btype.compile_btype(m, BTypeConfig(1, 1))
    for s in sample_corpus(m, 200, seed=2):
        assert tag_sentence(b, s).tags == tag_sentence(b, s).tags


def test_ambiguous_toy_sentence_count():
    m = hmm.random_model(3, 4, 6)
    b = btype.compile_btype(m, BTypeConfig(1, 1))
    for s in sample_corpus(m, 400, seed=5):
        r = tag_sentence(b, s, "all")
        assert r.n_results == count_results(b, s) == len({tuple(a) for a in r.alternatives})
        assert tag_sentence(m, s).tags in r.alternatives


def test_unknown_class_names_the_word(toy_bundle, sample_bundle):
    m, _ = toy_bundle
    fm, flex = sample_bundle
    (s,) = segment(flex, ["share", "."])
    with pytest.raises(TaggerError, match="'share'"):
        tag_sentence(btype.compile_btype(m, BTypeConfig(0, 0)), s)
    with pytest.raises(TaggerError, match="'share'"):
        tag_sentence(m, s)


def test_format_result(toy_bundle):
    m, lex = toy_bundle
    (s,) = segment(lex, "a dog .".split())
    r = tag_sentence(m, s)
    assert format_result(s, r) == "a\tDET\ndog\tNOUN\n.\tSENT\n\n"
    assert format_result(s, r, show_classes=True).startswith("a\t[DET]\tDET\n")


def test_bad_mode(toy_bundle):
    m, lex = toy_bundle
    with pytest.raises(TaggerError):
        tag_sentence(m, Sentence(["."], [lex.lookup(".")]), "best")
