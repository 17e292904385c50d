"""Word form -> ambiguity class lookup: lexicon, suffix guesser, [UNKNOWN]."""

from __future__ import annotations

from collections import Counter, defaultdict
from pathlib import Path
from typing import Iterable, Sequence

from .hmm import AmbiguityClass, HmmError, HmmModel, word_tag_sets

DEFAULT_SUFFIX_LENGTH = 3
DEFAULT_MAX_FREQ = 2
DEFAULT_MIN_COUNT = 2


class LexiconError(ValueError):
    pass


class Lexicon:
    """Exact word map backed by a longest-suffix guesser.

    ``entries`` and ``guesser`` hold classes of ``model``; whatever is
    found in neither resolves to the model's ``[UNKNOWN]`` class.
    """

    def __init__(self, model: HmmModel, entries: dict[str, AmbiguityClass],
                 guesser: dict[str, AmbiguityClass] | None = None,
                 suffix_length: int = DEFAULT_SUFFIX_LENGTH):
        if model.unknown is None:
            raise LexiconError("model has no [UNKNOWN] class")
        self.model = model
        self.entries = dict(entries)
        self.guesser = dict(guesser or {})
        self.suffix_length = suffix_length
        self.unknown = model.unknown
        for suffix in self.guesser:
            if not 0 < len(suffix) <= suffix_length:
                raise LexiconError(f"guesser suffix {suffix!r} not within 1..{suffix_length} chars")

    def lookup(self, word: str) -> AmbiguityClass:
        cls = self.entries.get(word)
        if cls is not None:
            return cls
        for n in range(min(self.suffix_length, len(word)), 0, -1):
            cls = self.guesser.get(word[-n:])
            if cls is not None:
                return cls
        return self.unknown

    def __contains__(self, word):
        return word in self.entries

    def __len__(self):
        return len(self.entries)


def _resolve(model: HmmModel, tags: Iterable[str], where: str) -> AmbiguityClass:
    try:
        ids = [model.table.lookup(t) for t in tags]
        return model.class_for_tags(ids)
    except (HmmError, ValueError) as exc:
        raise LexiconError(f"{where}: {exc}") from None


def train_guesser(model: HmmModel, sentences, entries: dict[str, AmbiguityClass],
                  suffix_length: int = DEFAULT_SUFFIX_LENGTH, max_freq: int = DEFAULT_MAX_FREQ,
                  min_count: int = DEFAULT_MIN_COUNT) -> dict[str, AmbiguityClass]:
    """Suffix -> most frequent class over rare word types ending in it.

    Only words seen at most ``max_freq`` times vote, each once per suffix
    strictly shorter than the word. Suffixes with fewer than ``min_count``
    votes are dropped; ties go to the class listed first in the model.
    """
    freq = Counter(word for s in sentences for word, _ in s)
    votes: dict[str, Counter] = defaultdict(Counter)
    for word, n in freq.items():
        if n > max_freq or word not in entries:
            continue
        cls = entries[word]
        for k in range(1, min(suffix_length, len(word) - 1) + 1):
            votes[word[-k:]][cls.id] += 1
    order = {c.id: i for i, c in enumerate(model.classes)}
    guesser = {}
    for suffix, counts in votes.items():
        if sum(counts.values()) < min_count:
            continue
        best = min(counts, key=lambda cid: (-counts[cid], order[cid]))
        guesser[suffix] = model.class_by_id[best]
    return guesser


def build_lexicon(model: HmmModel, sentences: Sequence | None = None,
                  word_classes: dict[str, Iterable[str]] | None = None,
                  suffix_length: int = DEFAULT_SUFFIX_LENGTH, max_freq: int = DEFAULT_MAX_FREQ,
                  min_count: int = DEFAULT_MIN_COUNT) -> Lexicon:
    """Lexicon from a tagged corpus and/or a word -> tags map.

    A word's class is the union of every tag it was seen or listed with;
    that class must exist in ``model`` (training on the same sources
    registers it).
    """
    sentences = [list(s) for s in (sentences or [])]
    if not sentences and not word_classes:
        raise LexiconError("no corpus or word-class entries to build from")
    tag_sets = word_tag_sets(sentences, word_classes,
                             [model.tag_name(t) for t in model.tags])
    entries = {w: _resolve(model, sorted(ts), f"word {w!r}") for w, ts in tag_sets.items()}
    guesser = (train_guesser(model, sentences, entries, suffix_length, max_freq, min_count)
               if sentences else {})
    return Lexicon(model, entries, guesser, suffix_length)


# ---------------------------------------------------------------------------
# files

def _class_tags(model: HmmModel, cls: AmbiguityClass) -> str:
    return ",".join(model.tag_name(t) for t in cls.members)


def dumps(lex: Lexicon) -> str:
    """Word file: ``word<TAB>tag,tag`` lines in code-point order of the word."""
    return "".join(f"{w}\t{_class_tags(lex.model, lex.entries[w])}\n" for w in sorted(lex.entries))


def dumps_guesser(lex: Lexicon) -> str:
    """Guesser file: ``-suffix<TAB>tag,tag`` lines, sorted by suffix."""
    return "".join(f"-{s}\t{_class_tags(lex.model, lex.guesser[s])}\n" for s in sorted(lex.guesser))


def _parse_lines(text: str, model: HmmModel, suffixes: bool, source: str):
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        key, sep, tags = line.partition("\t")
        where = f"{source}:{n}"
        if not sep or not key or not tags or "\t" in tags:
            raise LexiconError(f"{where}: expected 'key<TAB>tag,tag,...', got {line!r}")
        if suffixes:
            if not key.startswith("-") or len(key) < 2:
                raise LexiconError(f"{where}: guesser keys look like '-suffix', got {key!r}")
            key = key[1:]
        if key in out:
            raise LexiconError(f"{where}: duplicate entry {key!r}")
        names = tags.split(",")
        if any(not t for t in names):
            raise LexiconError(f"{where}: empty tag in {tags!r}")
        out[key] = _resolve(model, names, where)
    return out


def loads(text: str, model: HmmModel, guesser_text: str = "",
          suffix_length: int | None = None, source: str = "<lexicon>") -> Lexicon:
    entries = _parse_lines(text, model, False, source)
    guesser = _parse_lines(guesser_text, model, True, f"{source} guesser")
    if suffix_length is None:
        suffix_length = max((len(s) for s in guesser), default=DEFAULT_SUFFIX_LENGTH)
    return Lexicon(model, entries, guesser, suffix_length)


def save(lex: Lexicon, path, guesser_path=None) -> None:
    Path(path).write_text(dumps(lex), encoding="utf-8")
    if guesser_path is not None:
        Path(guesser_path).write_text(dumps_guesser(lex), encoding="utf-8")


def load(path, model: HmmModel, guesser_path=None, suffix_length: int | None = None) -> Lexicon:
    text = Path(path).read_text(encoding="utf-8")
    gtext = Path(guesser_path).read_text(encoding="utf-8") if guesser_path is not None else ""
    return loads(text, model, gtext, suffix_length, source=str(path))
