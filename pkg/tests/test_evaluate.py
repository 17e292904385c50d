import itertools

import numpy as np
import pytest

from hmmfst import btype, hmm
from hmmfst import fst as F
from hmmfst.btype import BTypeConfig
from hmmfst.corpus import sample_corpus
from hmmfst.evaluate import EvalError, evaluate, evaluate_model, histogram, percent
from hmmfst.exhaustive import LetterTransducer, all_inputs, check_against_viterbi, same_outputs


def test_percent_rounds_half_up():
    assert percent(199, 200) == 99.5
    assert percent(1, 8) == 12.5
    assert percent(1, 3) == 33.33
    assert percent(2, 3) == 66.67
    # 0.125% -> 0.13 (half-up), not 0.12 (half-even)
    assert percent(1, 800) == 0.13


def test_identical_streams_agree_fully():
    tags = [["A", "B"], ["C"]]
    r = evaluate(tags, tags, tags)
    assert r.accuracy == r.agreement == 100.0


def test_one_mismatch_in_200_tokens():
    gold = [["A"] * 100, ["B"] * 100]
    tagged = [["A"] * 100, ["B"] * 99 + ["A"]]
    assert evaluate(tagged, gold).accuracy == 99.5


def test_misalignment_names_position():
    with pytest.raises(EvalError, match="sentence 2"):
        evaluate([["A"], ["B", "C"]], [["A"], ["B"]])
    with pytest.raises(EvalError):
        evaluate([["A"]], [["A"], ["B"]])


def test_histogram_buckets_and_total():
    h = histogram([1, 1, 2, 3, 4, 5, 8, 9, 16, 17])
    assert h == {"1": 20.0, "2": 10.0, "3": 10.0, "4": 10.0, "5-8": 20.0, "9-16": 20.0, ">16": 10.0}
    h = histogram([1, 2, 3])
    assert sum(h.values()) == pytest.approx(100.0, abs=1e-9)
    assert sorted(h.values())[-3:] == [33.33, 33.33, 33.34]


def test_hmm_against_itself_is_100():
    m = hmm.random_model(0, 4, 6)
    sents = sample_corpus(m, 500, seed=1)
    r = evaluate_model(m, sents, hmm=m, count=True)
    assert r.agreement == 100.0
    assert r.histogram["1"] == 100.0
    assert 0 <= r.accuracy <= 100


def test_sequential_fst_histogram_is_all_ones():
    m = hmm.random_model(1, 4, 6)
    r = evaluate_model(btype.compile_btype(m, BTypeConfig(0, 2)), sample_corpus(m, 500, seed=2), count=True)
    assert r.histogram["1"] == 100.0
    assert r.states > 0 and r.speed > 0
    assert "results.1\t100.00" in r.as_records()


# ---------------------------------------------------------------------------
# the exhaustive checker, against transducer application

def test_output_counts_match_apply():
    m = hmm.random_model(3, 3, 5)
    b = btype.compile_btype(m, BTypeConfig(1, 1))
    lt = LetterTransducer.from_fst(b, m)
    for n, counts in lt.output_counts(3):
        for x, k in zip(all_inputs(m.num_classes, n), np.asarray(counts).ravel()):
            assert F.apply(b, [m.classes[c].id for c in x], "count") == k


def test_viterbi_membership_matches_apply():
    m = hmm.random_model(4, 3, 5)
    b = btype.compile_btype(m, BTypeConfig(2, 1))
    rep = check_against_viterbi(b, m, 3)
    missing = 0
    for n in range(1, 4):
        for x in itertools.product(m.classes, repeat=n):
            ids = [c.id for c in x]
            missing += tuple(hmm.viterbi(m, ids)) not in F.apply(b, ids, "all")
    assert rep.viterbi_missing == missing == 0
    assert rep.inputs == sum(m.num_classes ** n for n in range(4))


def test_checker_sees_missing_viterbi():
    # b-FST(0,0) ignores context, so it must miss some Viterbi sequences
    m = hmm.random_model(5, 3, 5)
    rep = check_against_viterbi(btype.compile_btype(m, BTypeConfig(0, 0)), m, 3)
    assert rep.sequential and rep.viterbi_missing > 0 and rep.first_failure


def test_same_outputs_detects_difference():
    m = hmm.random_model(6, 3, 5)
    b11 = btype.compile_btype(m, BTypeConfig(1, 1))
    b00 = btype.compile_btype(m, BTypeConfig(0, 0))
    assert same_outputs(b11, b11, m, 4) == (True, None)
    ok, where = same_outputs(b11, b00, m, 4)
    assert not ok and where
