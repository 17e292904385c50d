from pathlib import Path

import pytest

from hmmfst import hmm, lexicon
from hmmfst.corpus import read_tagged
from hmmfst.lexicon import LexiconError

DATA = Path(__file__).parent / "data"

FIVE_LINES = [
    [("run", "X"), ("fast", "Z")],
    [("run", "Y"), ("go", "X")],
    [("run", "X")],
]


def test_class_is_union_of_observed_tags():
    m = hmm.train(FIVE_LINES)
    lex = lexicon.build_lexicon(m, FIVE_LINES)
    assert lex.lookup("run").name == "[X,Y]"
    assert lex.lookup("go").name == "[X]"


def test_word_class_file_entry():
    corpus = [[("the", "DT"), ("share", "NN")], [("we", "PRP"), ("share", "VB")]]
    m = hmm.train(corpus)
    lex = lexicon.loads("share\tNN,VB\nthe\tDT\n", m)
    assert lex.lookup("share").name == "[NN,VB]"


def test_entries_widened_by_word_classes():
    corpus = [[("the", "DT"), ("share", "NN")], [("we", "PRP"), ("go", "VB")]]
    classes = {"share": ["VB"]}
    m = hmm.train(corpus, word_classes=classes)
    lex = lexicon.build_lexicon(m, corpus, classes)
    assert lex.lookup("share").name == "[NN,VB]"


def test_empty_guesser_falls_back_to_unknown():
    m = hmm.train(FIVE_LINES)
    lex = lexicon.Lexicon(m, {}, {})
    assert lex.lookup("anything") is m.unknown


def test_suffix_guesser():
    corpus = [[("walking", "VBG"), ("home", "NN")],
              [("talking", "VBG"), ("is", "VBZ")],
              [("running", "VBG"), ("home", "NN")],
              [("bring", "VB"), ("home", "NN")]]
    m = hmm.train(corpus)
    lex = lexicon.build_lexicon(m, corpus)
    # "ing" is seen on three VBG words and one VB word
    assert lex.guesser["ing"].name == "[VBG]"
    assert lex.lookup("jumping").name == "[VBG]"
    assert lex.lookup("xyz") is m.unknown
    # frequent words never vote
    assert "ome" not in lex.guesser


def test_longest_suffix_wins():
    m = hmm.train(FIVE_LINES)
    lex = lexicon.Lexicon(m, {}, {"n": m.get_class("[X]"), "un": m.get_class("[X,Y]")})
    assert lex.lookup("fun").name == "[X,Y]"
    assert lex.lookup("fan").name == "[X]"


def test_malformed_lines_report_line_numbers():
    m = hmm.train(FIVE_LINES)
    with pytest.raises(LexiconError, match=":2:"):
        lexicon.loads("run\tX,Y\nbroken line\n", m)
    with pytest.raises(LexiconError, match=":1:"):
        lexicon.loads("run\tQ\n", m)
    with pytest.raises(LexiconError, match="guesser:1:"):
        lexicon.loads("", m, "un\tX\n")


def test_unknown_class_is_an_error():
    m = hmm.train(FIVE_LINES)
    with pytest.raises(LexiconError):
        lexicon.loads("fast\tX,Z\n", m)


def test_files_round_trip(tmp_path):
    tagged = read_tagged(DATA / "toy.tagged")
    m = hmm.train(tagged)
    lex = lexicon.build_lexicon(m, tagged)
    assert lex.guesser
    a, ag, b, bg = (tmp_path / n for n in ("a.lex", "a.guess", "b.lex", "b.guess"))
    lexicon.save(lex, a, ag)
    back = lexicon.load(a, m, ag)
    lexicon.save(back, b, bg)
    assert a.read_bytes() == b.read_bytes()
    assert ag.read_bytes() == bg.read_bytes()
    for w in ("walking", "the", "zzz", "singing"):
        assert back.lookup(w) == lex.lookup(w)
