"""HMM part-of-speech tagging approximated by unweighted finite-state transducers."""

from .btype import BTypeConfig, compile_btype, compile_stages
from .fst import BudgetExceeded, Fst
from .hmm import HmmModel, random_model, train, viterbi
from .lexicon import Lexicon, build_lexicon
from .tagger import tag_sentence

__all__ = [
    "BTypeConfig", "BudgetExceeded", "Fst", "HmmModel", "Lexicon", "build_lexicon",
    "compile_btype", "compile_stages", "random_model", "tag_sentence", "train", "viterbi",
]
