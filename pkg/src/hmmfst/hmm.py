"""First-order HMM over tags emitting ambiguity classes.

Probabilities are kept in probability space (that is what the HMMv1 file
stores, digit for digit) and mirrored as natural logs, ``-inf`` for zero,
which is what every decoder reads.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .symbols import BOUNDARY, SymbolTable

log = logging.getLogger(__name__)

UNKNOWN_NAME = "[UNKNOWN]"
NEG_INF = float("-inf")
ROW_TOLERANCE = 1e-9
# log-score gap below which two paths count as equally probable
TIE_TOLERANCE = 1e-9


class HmmError(ValueError):
    pass


@dataclass(frozen=True)
class AmbiguityClass:
    id: int
    name: str
    members: tuple[int, ...]

    def __contains__(self, tag):
        return tag in self.members


def class_name(table: SymbolTable, members: Iterable[int]) -> str:
    return "[" + ",".join(table.name(t) for t in sorted(members)) + "]"


def _log(x):
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(x, dtype=float))


class HmmModel:
    """Tags, classes and the pi / a / b tables of a first-order HMM.

    ``a[i, j]`` is P(tag j | previous tag i) and ``b[c, t]`` is P(class c | tag t),
    both indexed by position in ``tags`` / ``classes``. Tags are kept in
    increasing symbol-id order so "lowest index" and "lowest id" agree.
    """

    def __init__(self, table: SymbolTable, tags: Sequence[int],
                 classes: Sequence[AmbiguityClass], pi, a, b):
        self.table = table
        self.tags = list(tags)
        self.classes = list(classes)
        if self.tags != sorted(self.tags):
            raise HmmError("tags must be listed in increasing id order")
        self.pi = np.array(pi, dtype=float)
        self.a = np.array(a, dtype=float)
        self.b = np.array(b, dtype=float)
        T, C = len(self.tags), len(self.classes)
        if self.pi.shape != (T,) or self.a.shape != (T, T) or self.b.shape != (C, T):
            raise HmmError("probability table shapes do not match tags/classes")
        self.tag_index = {t: i for i, t in enumerate(self.tags)}
        self.class_index = {c.id: i for i, c in enumerate(self.classes)}
        self.class_by_id = {c.id: c for c in self.classes}
        self.log_pi = _log(self.pi)
        self.log_a = _log(self.a)
        self.log_b = _log(self.b)
        # plain lists for the scalar decoders
        self._lpi = self.log_pi.tolist()
        self._la = self.log_a.tolist()
        self._lb = self.log_b.tolist()

    @property
    def num_tags(self):
        return len(self.tags)

    @property
    def num_classes(self):
        return len(self.classes)

    def tag_name(self, tag: int) -> str:
        return self.table.name(tag)

    def get_class(self, name_or_id) -> AmbiguityClass:
        sid = self.table.get(name_or_id) if isinstance(name_or_id, str) else name_or_id
        try:
            return self.class_by_id[sid]
        except KeyError:
            raise HmmError(f"class {name_or_id!r} is not in the model") from None

    def class_for_tags(self, members: Iterable[int]) -> AmbiguityClass:
        return self.get_class(class_name(self.table, members))

    @property
    def unknown(self) -> AmbiguityClass | None:
        sid = self.table.get(UNKNOWN_NAME)
        return self.class_by_id.get(sid)

    def _ci(self, cls) -> int:
        cid = cls.id if isinstance(cls, AmbiguityClass) else cls
        try:
            return self.class_index[cid]
        except KeyError:
            raise HmmError(f"class {cid!r} is not in the model") from None

    def _ti(self, tag) -> int:
        try:
            return self.tag_index[tag]
        except KeyError:
            raise HmmError(f"tag {tag!r} is not in the model") from None

    def check(self) -> None:
        """Raise unless every distribution sums to one and b respects membership."""
        dev = max(abs(self.pi.sum() - 1.0),
                  np.abs(self.a.sum(axis=1) - 1.0).max(initial=0.0),
                  np.abs(self.b.sum(axis=0) - 1.0).max(initial=0.0))
        if dev >= ROW_TOLERANCE:
            raise HmmError(f"probability rows deviate from 1 by {dev:.3g}")
        for ci, c in enumerate(self.classes):
            for ti, t in enumerate(self.tags):
                if t not in c.members and self.b[ci, ti] != 0.0:
                    raise HmmError(f"b({c.name}|{self.tag_name(t)}) must be zero")


# ---------------------------------------------------------------------------
# training

def word_tag_sets(sentences, word_classes: dict[str, Iterable[str]] | None = None,
                  known_tags: Iterable[str] | None = None) -> dict[str, set[str]]:
    """Tags seen per word form, widened by ``word_classes`` entries.

    Extra tags outside ``known_tags`` are dropped with a warning.
    """
    word_tags: dict[str, set[str]] = defaultdict(set)
    for s in sentences:
        for word, tag in s:
            word_tags[word].add(tag)
    known = None if known_tags is None else set(known_tags)
    for word, tags in (word_classes or {}).items():
        keep = set()
        for name in tags:
            if known is None or name in known:
                keep.add(name)
            else:
                log.warning("tag %r of %r never observed in the corpus; excluded", name, word)
        if keep:
            word_tags[word] |= keep
    return dict(word_tags)


def train(sentences: Sequence[Sequence[tuple[str, str]]], smoothing: float = 0.1,
          word_classes: dict[str, Iterable[str]] | None = None) -> HmmModel:
    """Supervised maximum likelihood with additive smoothing.

    A word's class is the set of tags it was seen with, widened by
    ``word_classes`` entries where given. Tokens of words seen exactly once
    are counted a second time as observations of ``[UNKNOWN]``.
    """
    sentences = [list(s) for s in sentences if len(s)]
    if not sentences:
        raise HmmError("cannot train on an empty corpus")
    if smoothing < 0:
        raise HmmError("smoothing must be >= 0")

    observed = sorted({tag for s in sentences for _, tag in s})
    table = SymbolTable()
    for name in observed:
        table.add(name, "tag")
    tag_ids = [table.lookup(n) for n in observed]
    word_tags = {w: {table.lookup(t) for t in ts}
                 for w, ts in word_tag_sets(sentences, word_classes, observed).items()}
    freq = Counter(word for s in sentences for word, _ in s)

    hapax_tags = Counter()
    for s in sentences:
        for word, tag in s:
            if freq[word] == 1:
                hapax_tags[table.lookup(tag)] += 1
    if not hapax_tags:
        hapax_tags = Counter({t: 1 for t in tag_ids})

    member_sets = {frozenset(ts) for ts in word_tags.values()}
    names = sorted(class_name(table, m) for m in member_sets)
    by_name = {class_name(table, m): m for m in member_sets}
    classes = []
    for name in names:
        cid = table.add(name, "class")
        classes.append(AmbiguityClass(cid, name, tuple(sorted(by_name[name]))))
    unk_id = table.add(UNKNOWN_NAME, "class")
    unknown = AmbiguityClass(unk_id, UNKNOWN_NAME, tuple(sorted(hapax_tags)))
    classes.append(unknown)
    cls_of = {c.name: c for c in classes}
    lexicon = {w: cls_of[class_name(table, ts)] for w, ts in word_tags.items()}

    T, C = len(tag_ids), len(classes)
    ti = {t: i for i, t in enumerate(tag_ids)}
    ci = {c.id: i for i, c in enumerate(classes)}
    n_init = np.zeros(T)
    n_trans = np.zeros((T, T))
    n_emit = np.zeros((C, T))
    for s in sentences:
        prev = None
        for word, tag in s:
            t = ti[table.lookup(tag)]
            if prev is None:
                n_init[t] += 1
            else:
                n_trans[prev, t] += 1
            n_emit[ci[lexicon[word].id], t] += 1
            prev = t
    for t, n in hapax_tags.items():
        n_emit[ci[unk_id], ti[t]] += n

    lam = float(smoothing)
    pi = _normalize_row(n_init + lam)
    a = np.vstack([_normalize_row(row + lam) for row in n_trans])
    member = np.zeros((C, T), dtype=bool)
    for c in classes:
        for t in c.members:
            member[ci[c.id], ti[t]] = True
    b = np.where(member, n_emit + lam, 0.0)
    b = np.column_stack([_normalize_row(b[:, j], member[:, j]) for j in range(T)])
    table.freeze()
    model = HmmModel(table, tag_ids, classes, pi, a, b)
    model.check()
    return model


def _normalize_row(row, support=None):
    total = row.sum()
    if total > 0:
        return row / total
    # nothing observed and no smoothing: spread evenly over the support
    support = np.ones_like(row, dtype=bool) if support is None else support
    return support / support.sum()


# ---------------------------------------------------------------------------
# decoding

def _decode(start, emissions, la, end) -> list[int]:
    """Lexicographically smallest tag-index path among the best-scoring ones.

    Scores are ``start[t0] + sum(emissions[i][ti]) + sum(la[ti-1][ti]) + end[tn]``.
    A backward pass gives the best completion from every (position, tag);
    the forward pass then takes the lowest tag whose completion is within
    ``TIE_TOLERANCE`` of the best. Picking the smallest optimal path, rather
    than breaking ties step by step, keeps a full-sentence decode and a
    decode of any window between two of its tags in agreement.
    """
    n, T = len(emissions), len(start)
    inner = [None] * n
    nxt = list(end)
    for i in range(n - 1, -1, -1):
        em = emissions[i]
        inner[i] = [em[u] + nxt[u] for u in range(T)]
        if i:
            nxt = [max(la[t][u] + inner[i][u] for u in range(T)) for t in range(T)]
    path = []
    scores = [start[t] + inner[0][t] for t in range(T)]
    for i in range(n):
        if i:
            row = la[path[-1]]
            scores = [row[u] + inner[i][u] for u in range(T)]
        floor = max(scores) - TIE_TOLERANCE
        path.append(next(t for t in range(T) if scores[t] >= floor))
    return path


def _decode_batch(start, x, lb, la, end) -> np.ndarray:
    """:func:`_decode` for ``N`` inputs: ``start``/``end`` are ``(N, T)``, ``x`` class indices ``(N, n)``."""
    N, n = x.shape
    inner = [None] * n
    nxt = end
    for i in range(n - 1, -1, -1):
        inner[i] = lb[x[:, i]] + nxt
        if i:
            nxt = (la[None, :, :] + inner[i][:, None, :]).max(axis=2)
    path = np.empty((N, n), dtype=np.int64)
    scores = start + inner[0]
    for i in range(n):
        if i:
            scores = la[path[:, i - 1]] + inner[i]
        floor = scores.max(axis=1) - TIE_TOLERANCE
        path[:, i] = (scores >= floor[:, None]).argmax(axis=1)
    return path


def viterbi(m: HmmModel, classes: Sequence) -> list[int]:
    """Most probable tag sequence for a class sequence.

    Among equally probable sequences the lexicographically smallest by tag
    id wins.
    """
    if not len(classes):
        raise HmmError("viterbi needs a non-empty class sequence")
    cis = [m._ci(c) for c in classes]
    path = _decode(m._lpi, [m._lb[c] for c in cis], m._la, [0.0] * m.num_tags)
    return [m.tags[i] for i in path]


def viterbi_batch(m: HmmModel, x: np.ndarray) -> np.ndarray:
    """Viterbi over many equal-length inputs at once.

    ``x`` holds class *indices*, shape ``(N, n)``; returns tag indices of the
    same shape. Same arithmetic and tie-breaking as :func:`viterbi`.
    """
    x = np.asarray(x)
    N, n = x.shape
    if n == 0:
        raise HmmError("viterbi needs a non-empty class sequence")
    T = m.num_tags
    start = np.broadcast_to(m.log_pi, (N, T))
    return _decode_batch(start, x, m.log_b, m.log_a, np.zeros((N, T)))


def joint_logprob(m: HmmModel, classes: Sequence, tags: Sequence[int]) -> float:
    """log p(C, T) = log pi(t1) b(c1|t1) prod a(ti|ti-1) b(ci|ti)."""
    if len(classes) != len(tags):
        raise HmmError(f"{len(classes)} classes but {len(tags)} tags")
    if not len(tags):
        return 0.0
    cis = [m._ci(c) for c in classes]
    tis = [m._ti(t) for t in tags]
    total = m._lpi[tis[0]] + m._lb[cis[0]][tis[0]]
    for j in range(1, len(tis)):
        total += m._la[tis[j - 1]][tis[j]] + m._lb[cis[j]][tis[j]]
    return total


# ---------------------------------------------------------------------------
# b-type sequences

@dataclass(frozen=True)
class BTypeSequence:
    """A window of classes around ``center``.

    ``left``/``right`` is a selected tag id, ``BOUNDARY`` (a sentence edge
    cut the window short) or ``None`` (no look-back / look-ahead at all).
    ``back`` runs outermost-first, so ``back[-1]`` is the class just before
    the center.
    """

    left: int | None
    back: tuple[int, ...]
    center: int
    ahead: tuple[int, ...]
    right: int | None

    def __post_init__(self):
        if self.left is None and self.back:
            raise HmmError("look-back classes without a left edge")
        if self.right is None and self.ahead:
            raise HmmError("look-ahead classes without a right edge")

    @property
    def window(self) -> tuple[int, ...]:
        return self.back + (self.center,) + self.ahead

    @property
    def center_pos(self) -> int:
        return len(self.back)


@dataclass(frozen=True)
class TaggedBTypeSequence:
    source: BTypeSequence
    chosen: int
    context_tags: tuple[int, ...] = ()


def btype_logprob(m: HmmModel, s: BTypeSequence, tags: Sequence[int]) -> float:
    """log(p_start * p_middle * p_end) for one tag assignment of the window.

    ``tags`` covers the window's classes (back, center, ahead); the selected
    tags at the edges come from ``s`` itself.
    """
    window = s.window
    if len(tags) != len(window):
        raise HmmError(f"window has {len(window)} classes but {len(tags)} tags were given")
    for c, t in zip(window, tags):
        if t not in m.get_class(c).members:
            raise HmmError(f"tag {m.tag_name(t)} is not in class {m.get_class(c).name}")
    cis = [m._ci(c) for c in window]
    tis = [m._ti(t) for t in tags]
    if s.left is None:
        start = 0.0
    elif s.left == BOUNDARY:
        start = m._lpi[tis[0]]
    else:
        start = m._la[m._ti(s.left)][tis[0]]
    middle = m._lb[cis[0]][tis[0]]
    for j in range(1, len(tis)):
        middle += m._la[tis[j - 1]][tis[j]] + m._lb[cis[j]][tis[j]]
    if s.right is None or s.right == BOUNDARY:
        end = 0.0
    else:
        end = m._la[tis[-1]][m._ti(s.right)]
    return start + middle + end


def _edge_terms(m: HmmModel, s: BTypeSequence) -> tuple[list[float], list[float]]:
    T = m.num_tags
    if s.left is None:
        start = [0.0] * T
    elif s.left == BOUNDARY:
        start = list(m._lpi)
    else:
        start = list(m._la[m._ti(s.left)])
    if s.right is None or s.right == BOUNDARY:
        end = [0.0] * T
    else:
        r = m._ti(s.right)
        end = [m._la[t][r] for t in range(T)]
    return start, end


def _window_viterbi(m: HmmModel, s: BTypeSequence) -> list[int]:
    start, end = _edge_terms(m, s)
    path = _decode(start, [m._lb[m._ci(c)] for c in s.window], m._la, end)
    return [m.tags[i] for i in path]


def disambiguate(m: HmmModel, s: BTypeSequence) -> TaggedBTypeSequence:
    """Tag the center class with its most likely tag given the window."""
    tags = _window_viterbi(m, s)
    return TaggedBTypeSequence(s, tags[s.center_pos], tuple(tags))


def disambiguate_many(m: HmmModel, seqs: Sequence[BTypeSequence]) -> list[TaggedBTypeSequence]:
    """:func:`disambiguate` for a batch, vectorised per window shape."""
    groups = defaultdict(list)
    for i, s in enumerate(seqs):
        lk = "n" if s.left is None else ("b" if s.left == BOUNDARY else "t")
        rk = "n" if s.right is None else ("b" if s.right == BOUNDARY else "t")
        groups[(lk, len(s.back), len(s.ahead), rk)].append(i)
    out: list[TaggedBTypeSequence | None] = [None] * len(seqs)
    T = m.num_tags
    for (lk, nb, na, rk), idx in groups.items():
        group = [seqs[i] for i in idx]
        x = np.array([[m._ci(c) for c in s.window] for s in group])
        N = len(group)
        if lk == "n":
            start = np.zeros((N, T))
        elif lk == "b":
            start = np.broadcast_to(m.log_pi, (N, T))
        else:
            start = m.log_a[[m._ti(s.left) for s in group]]
        if rk == "t":
            end = m.log_a[:, [m._ti(s.right) for s in group]].T
        else:
            end = np.zeros((N, T))
        path = _decode_batch(start, x, m.log_b, m.log_a, end)
        tags = np.asarray(m.tags)[path]
        for k, i in enumerate(idx):
            row = tuple(int(v) for v in tags[k])
            out[i] = TaggedBTypeSequence(group[k], row[nb], row)
    return out


# ---------------------------------------------------------------------------
# random toy models

def random_model(rng: np.random.Generator | int, n_tags: int, n_classes: int,
                 concentration: float = 1.0) -> HmmModel:
    """Random HMM with ``n_tags`` tags and ``n_classes`` distinct classes.

    Every tag belongs to at least one class; all distributions are drawn
    from a symmetric Dirichlet.
    """
    rng = np.random.default_rng(rng)
    if n_classes > 2**n_tags - 1:
        raise HmmError(f"{n_tags} tags admit at most {2**n_tags - 1} classes")
    table = SymbolTable()
    tags = [table.add(f"T{i}", "tag") for i in range(n_tags)]
    while True:
        subsets = set()
        while len(subsets) < n_classes:
            size = int(rng.integers(1, n_tags + 1))
            subsets.add(tuple(sorted(rng.choice(n_tags, size=size, replace=False).tolist())))
        if set().union(*subsets) == set(range(n_tags)):
            break
    classes = []
    for sub in sorted(subsets, key=lambda s: (len(s), s)):
        members = tuple(tags[i] for i in sub)
        name = class_name(table, members)
        classes.append(AmbiguityClass(table.add(name, "class"), name, members))
    table.freeze()
    pi = rng.dirichlet([concentration] * n_tags)
    a = rng.dirichlet([concentration] * n_tags, size=n_tags)
    b = np.zeros((n_classes, n_tags))
    for j, t in enumerate(tags):
        rows = [i for i, c in enumerate(classes) if t in c.members]
        b[rows, j] = rng.dirichlet([concentration] * len(rows))
    return HmmModel(table, tags, classes, pi, a, b)


# ---------------------------------------------------------------------------
# HMMv1 text format

def _fmt(p: float) -> str:
    return format(float(p), ".17g")


def dumps(m: HmmModel) -> str:
    t = m.table
    lines = ["#TAGS"]
    lines += [t.name(tag) for tag in m.tags]
    lines.append("#CLASSES")
    lines += [f"{c.name}: {','.join(t.name(x) for x in c.members)}" for c in m.classes]
    lines.append("#PI")
    lines += [f"{t.name(tag)} {_fmt(m.pi[i])}" for i, tag in enumerate(m.tags)]
    lines.append("#A")
    for i, prev in enumerate(m.tags):
        for j, nxt in enumerate(m.tags):
            lines.append(f"{t.name(prev)} {t.name(nxt)} {_fmt(m.a[i, j])}")
    lines.append("#B")
    for ci, c in enumerate(m.classes):
        for tag in c.members:
            lines.append(f"{c.name} {t.name(tag)} {_fmt(m.b[ci, m.tag_index[tag]])}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> HmmModel:
    section = None
    tag_names: list[str] = []
    class_rows: list[tuple[str, list[str]]] = []
    pi_rows, a_rows, b_rows = [], [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            section = line.strip()
            if section not in ("#TAGS", "#CLASSES", "#PI", "#A", "#B"):
                raise HmmError(f"line {lineno}: unknown section {section!r}")
            continue
        try:
            if section == "#TAGS":
                tag_names.append(line.strip())
            elif section == "#CLASSES":
                name, _, members = line.partition(": ")
                if not _:
                    raise ValueError("expected 'name: tag,tag,...'")
                class_rows.append((name, members.split(",")))
            elif section == "#PI":
                tag, p = line.split()
                pi_rows.append((tag, float(p)))
            elif section == "#A":
                prev, nxt, p = line.split()
                a_rows.append((prev, nxt, float(p)))
            elif section == "#B":
                cls, tag, p = line.split()
                b_rows.append((cls, tag, float(p)))
            else:
                raise ValueError("data before the first section header")
        except ValueError as exc:
            raise HmmError(f"line {lineno}: {exc}") from None
    table = SymbolTable()
    try:
        tags = [table.add(n, "tag") for n in tag_names]
        classes = []
        for name, members in class_rows:
            ids = tuple(sorted(table.lookup(x) for x in members))
            classes.append(AmbiguityClass(table.add(name, "class"), name, ids))
    except ValueError as exc:
        raise HmmError(str(exc)) from None
    table.freeze()
    if tags != sorted(tags):
        raise HmmError("tags must be listed in increasing id order")
    ti = {t: i for i, t in enumerate(tags)}
    ci = {c.id: i for i, c in enumerate(classes)}
    pi = np.zeros(len(tags))
    a = np.zeros((len(tags), len(tags)))
    b = np.zeros((len(classes), len(tags)))
    seen = set()

    def put(arr, key, p, what):
        if (what, key) in seen:
            raise HmmError(f"duplicate {what} entry for {key}")
        seen.add((what, key))
        arr[key] = p

    try:
        for tag, p in pi_rows:
            put(pi, ti[table.lookup(tag)], p, "#PI")
        for prev, nxt, p in a_rows:
            put(a, (ti[table.lookup(prev)], ti[table.lookup(nxt)]), p, "#A")
        for cls, tag, p in b_rows:
            put(b, (ci[table.lookup(cls)], ti[table.lookup(tag)]), p, "#B")
    except (KeyError, ValueError) as exc:
        raise HmmError(f"probability entry refers to an unknown symbol: {exc}") from None
    model = HmmModel(table, tags, classes, pi, a, b)
    model.check()
    return model


def save(m: HmmModel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(m))


def load(path) -> HmmModel:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
