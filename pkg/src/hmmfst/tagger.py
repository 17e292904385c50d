"""Tag sentences with a compiled b-type transducer or directly with the HMM."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from . import fst as F
from .corpus import DEFAULT_END_TAG, SYNTHETIC_END_WORD, Sentence
from .fst import Fst
from .hmm import HmmModel, viterbi
from .lexicon import Lexicon

MODES = ("first", "all", "count")


class TaggerError(ValueError):
    pass


@dataclass
class TagResult:
    """Chosen tags; ``n_results`` and ``alternatives`` only when requested."""

    tags: list[str]
    n_results: int | None = None
    alternatives: list[list[str]] | None = None


def end_class(lex: Lexicon, end_tag: str = DEFAULT_END_TAG):
    m = lex.model
    tid = m.table.get(end_tag)
    if tid is None or tid not in m.tag_index:
        raise TaggerError(f"end tag {end_tag!r} is not a tag of the model")
    try:
        return m.class_for_tags([tid])
    except ValueError:
        raise TaggerError(f"model has no class [{end_tag}] for sentence ends") from None


def segment(lex: Lexicon, tokens: Iterable[str], end_tag: str = DEFAULT_END_TAG) -> Iterator[Sentence]:
    """Split after every token whose class is the singleton end-tag class.

    Leftover tokens get a synthetic end token and are flagged.
    """
    end = end_class(lex, end_tag)
    words, classes = [], []
    for w in tokens:
        c = lex.lookup(w)
        words.append(w)
        classes.append(c)
        if c == end:
            yield Sentence(words, classes)
            words, classes = [], []
    if words:
        yield Sentence(words + [SYNTHETIC_END_WORD], classes + [end], synthetic_end=True)


class FstTagger:
    """Map class names to the transducer's own symbol ids and back."""

    def __init__(self, bfst: Fst, limit: int = F.DEFAULT_APPLY_LIMIT):
        self.fst = bfst
        self.limit = limit
        table = bfst.table
        self._class_ids = {name: sid for sid, kind, name in table if kind == "class"}
        self._names = [name for _, _, name in table]

    def _input(self, s: Sentence) -> list[int]:
        x = []
        for w, c in zip(s.words, s.classes):
            sid = self._class_ids.get(c.name)
            if sid is None:
                raise TaggerError(f"class {c.name} of word {w!r} is unknown to the transducer")
            x.append(sid)
        return x

    def _names_of(self, out) -> list[str]:
        return [self._names[t] for t in out]

    def count(self, s: Sentence) -> int:
        return F.apply(self.fst, self._input(s), "count", self.limit)

    def tag(self, s: Sentence, mode: str = "first") -> TagResult:
        if mode not in MODES:
            raise TaggerError(f"unknown mode {mode!r}")
        x = self._input(s)
        first = F.apply(self.fst, x, "first")
        if first is None:
            raise TaggerError(f"no tagging result for sentence starting {s.words[:3]!r}")
        result = TagResult(self._names_of(first))
        if mode == "count":
            result.n_results = F.apply(self.fst, x, "count", self.limit)
        elif mode == "all":
            outs = sorted(F.apply(self.fst, x, "all", self.limit))
            result.alternatives = [self._names_of(o) for o in outs]
            result.n_results = len(outs)
        return result


class HmmTagger:
    def __init__(self, m: HmmModel):
        self.model = m

    def tag(self, s: Sentence, mode: str = "first") -> TagResult:
        if mode not in MODES:
            raise TaggerError(f"unknown mode {mode!r}")
        m = self.model
        for w, c in zip(s.words, s.classes):
            if c.id not in m.class_index or m.table.name(c.id) != c.name:
                raise TaggerError(f"class {c.name} of word {w!r} is unknown to the model")
        tags = [m.tag_name(t) for t in viterbi(m, [c.id for c in s.classes])]
        if mode == "first":
            return TagResult(tags)
        return TagResult(tags, 1, [tags] if mode == "all" else None)


def make_tagger(model: Fst | HmmModel, limit: int = F.DEFAULT_APPLY_LIMIT):
    if isinstance(model, Fst):
        return FstTagger(model, limit)
    if isinstance(model, HmmModel):
        return HmmTagger(model)
    raise TypeError(f"cannot tag with {type(model).__name__}")


def tag_sentence(model: Fst | HmmModel, s: Sentence, mode: str = "first") -> TagResult:
    return make_tagger(model).tag(s, mode)


def count_results(bfst: Fst, s: Sentence, limit: int = F.DEFAULT_APPLY_LIMIT) -> int:
    return FstTagger(bfst, limit).count(s)


def format_result(s: Sentence, result: TagResult, show_classes: bool = False) -> str:
    lines = []
    for w, c, t in zip(s.words, s.classes, result.tags):
        lines.append(f"{w}\t{c.name}\t{t}" if show_classes else f"{w}\t{t}")
    return "\n".join(lines) + "\n\n"
