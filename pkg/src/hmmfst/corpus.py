"""Tagged corpora: reading, writing, and sampling from an HMM."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .hmm import AmbiguityClass, HmmModel

DEFAULT_END_TAG = "SENT"
SYNTHETIC_END_WORD = "<end>"


class CorpusError(ValueError):
    pass


@dataclass
class Sentence:
    """Parallel words, classes and (optionally) gold tag names.

    ``synthetic_end`` marks a sentence whose last token was appended
    because the input stopped before a sentence end.
    """

    words: list[str]
    classes: list[AmbiguityClass]
    gold: list[str] | None = None
    synthetic_end: bool = False

    def __post_init__(self):
        if len(self.words) != len(self.classes):
            raise CorpusError("words and classes differ in length")
        if self.gold is not None and len(self.gold) != len(self.words):
            raise CorpusError("words and gold tags differ in length")

    def __len__(self):
        return len(self.words)


def _lines(source) -> Iterable[str]:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8").splitlines()
    return source


def read_tagged(source, end_tag: str = DEFAULT_END_TAG) -> list[list[tuple[str, str]]]:
    """``word<TAB>tag`` lines into sentences, each closed by a token tagged ``end_tag``.

    Blank lines are ignored; a final run without an end tag is kept as is.
    ``source`` is a path or an iterable of lines.
    """
    sentences, current = [], []
    for n, line in enumerate(_lines(source), 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1] or " " in parts[1]:
            raise CorpusError(f"line {n}: expected 'word<TAB>tag', got {line!r}")
        current.append((parts[0], parts[1]))
        if parts[1] == end_tag:
            sentences.append(current)
            current = []
    if current:
        sentences.append(current)
    return sentences


def read_tokens(source) -> list[str]:
    """One token per line; blank lines are skipped, a tab ends the token."""
    return [line.split("\t", 1)[0].strip() for line in _lines(source) if line.strip()]


def format_tagged(sentences: Iterable[Sequence[tuple[str, str]]]) -> str:
    return "".join(f"{w}\t{t}\n" for s in sentences for w, t in s)


def write_tagged(sentences, path) -> None:
    Path(path).write_text(format_tagged(sentences), encoding="utf-8")


def _draw(rng: np.random.Generator, p: np.ndarray) -> int:
    # inverse CDF; clipping guards against a cumulative sum ending just below 1
    return min(int(np.searchsorted(np.cumsum(p), rng.random(), side="right")), len(p) - 1)


def sample_corpus(m: HmmModel, n_tokens: int, seed: int, end_tag: str | None = None,
                  min_len: int = 5, max_len: int = 25) -> list[Sentence]:
    """Sentences drawn from the generative process of ``m``.

    Each sentence starts from pi, moves by a, and emits a class per tag by b.
    With ``end_tag`` a sentence stops after that tag; otherwise its length is
    uniform in ``min_len..max_len``. The last sentence is cut to make exactly
    ``n_tokens`` tokens. Words are the class names.
    """
    if n_tokens < 1:
        raise CorpusError("n_tokens must be >= 1")
    rng = np.random.default_rng(seed)
    end = None if end_tag is None else m.tag_index[m.table.lookup(end_tag)]
    emit = m.b.T
    out = []
    left = n_tokens
    while left:
        limit = left if end is not None else min(left, int(rng.integers(min_len, max_len + 1)))
        tags, classes = [], []
        t = _draw(rng, m.pi)
        while True:
            tags.append(t)
            classes.append(m.classes[_draw(rng, emit[t])])
            if len(tags) == limit or t == end:
                break
            t = _draw(rng, m.a[t])
        left -= len(tags)
        out.append(Sentence([c.name for c in classes], classes,
                            [m.tag_name(m.tags[i]) for i in tags]))
    return out


def sentences_from_tagged(lookup, tagged) -> Iterator[Sentence]:
    """Gold sentences with classes from ``lookup(word)``."""
    for s in tagged:
        words = [w for w, _ in s]
        yield Sentence(words, [lookup(w) for w in words], [t for _, t in s])
