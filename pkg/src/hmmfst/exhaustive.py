"""Check a b-type transducer against its HMM on every input up to a length.

A normalized b-type transducer is epsilon-free, letter-to-letter and
deterministic over (class, tag) pairs, so the outputs for an input are in
one-to-one correspondence with its accepting paths. Path counts for all
``C**n`` inputs of length ``n`` then come out of sparse matrix products, and
Viterbi membership is a table walk over all inputs at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .fst import EPSILON, Fst, FstError, trim
from .hmm import HmmModel, viterbi_batch


@dataclass
class LetterTransducer:
    """Dense view of a pair-deterministic class:tag transducer.

    ``trans[s, c, t]`` is the target state, -1 where there is no arc; class
    and tag positions follow the model's ``classes`` / ``tags`` lists.
    """

    trans: np.ndarray
    initial: int
    final: np.ndarray

    @classmethod
    def from_fst(cls, f: Fst, m: HmmModel) -> "LetterTransducer":
        f = trim(f)
        names = f.table
        cidx = {c.name: i for i, c in enumerate(m.classes)}
        tidx = {m.tag_name(t): i for i, t in enumerate(m.tags)}
        trans = np.full((f.num_states, m.num_classes, m.num_tags), -1, dtype=np.int64)
        for s, d, up, lo in f.arcs:
            if up == EPSILON or lo == EPSILON:
                raise FstError("expected an epsilon-free letter-to-letter transducer")
            c, t = cidx.get(names.name(up)), tidx.get(names.name(lo))
            if c is None or t is None:
                raise FstError(f"arc {names.name(up)}:{names.name(lo)} is not class:tag")
            if trans[s, c, t] >= 0:
                raise FstError("transducer is not deterministic over symbol pairs")
            trans[s, c, t] = d
        final = np.zeros(f.num_states, dtype=bool)
        final[list(f.finals)] = True
        return cls(trans, f.initial, final)

    @property
    def num_states(self):
        return self.trans.shape[0]

    @property
    def num_classes(self):
        return self.trans.shape[1]

    def class_matrices(self) -> list[sp.csr_matrix]:
        """Per class, the state-to-state matrix counting tags."""
        S, C, T = self.trans.shape
        mats = []
        for c in range(C):
            src, tag = np.nonzero(self.trans[:, c, :] >= 0)
            dst = self.trans[src, c, tag]
            mats.append(sp.csr_matrix((np.ones(len(src), dtype=np.int64), (src, dst)), shape=(S, S)))
        return mats

    def output_counts(self, max_len: int):
        """Yield ``(n, counts)`` for n = 0..max_len; ``counts[i]`` is for input ``all_inputs(C, n)[i]``."""
        S, C = self.num_states, self.num_classes
        mats = self.class_matrices()
        final = self.final.astype(np.int64)
        level = sp.csr_matrix((np.ones(1, dtype=np.int64), ([0], [self.initial])), shape=(1, S))
        yield 0, level @ final
        for n in range(1, max_len + 1):
            rows = level.shape[0]
            stacked = sp.vstack([level @ mc for mc in mats], format="csr")
            # row prefix*C + c of the next level sits at c*rows + prefix
            i = np.arange(rows * C)
            level = stacked[(i % C) * rows + i // C]
            yield n, level @ final

    def accepts(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Whether each pair of rows (classes ``x[k]``, tags ``y[k]``) is accepted."""
        state = np.full(x.shape[0], self.initial, dtype=np.int64)
        for j in range(x.shape[1]):
            ok = state >= 0
            nxt = np.full_like(state, -1)
            nxt[ok] = self.trans[state[ok], x[ok, j], y[ok, j]]
            state = nxt
        return (state >= 0) & self.final[np.maximum(state, 0)]


def all_inputs(n_classes: int, n: int) -> np.ndarray:
    """Every class-index sequence of length n, in lexicographic order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((n_classes,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


@dataclass
class ExhaustiveReport:
    inputs: int = 0
    empty: int = 0
    ambiguous: int = 0
    viterbi_missing: int = 0
    not_viterbi_only: int = 0
    max_results: int = 0
    first_failure: tuple | None = None

    @property
    def contains_viterbi(self) -> bool:
        return self.empty == 0 and self.viterbi_missing == 0

    @property
    def sequential(self) -> bool:
        return self.empty == 0 and self.ambiguous == 0

    @property
    def equivalent(self) -> bool:
        """Every input yields exactly its Viterbi sequence."""
        return self.not_viterbi_only == 0


def check_against_viterbi(f: Fst | LetterTransducer, m: HmmModel, max_len: int = 5) -> ExhaustiveReport:
    """Output counts and Viterbi membership for every input of length ``0..max_len``."""
    lt = f if isinstance(f, LetterTransducer) else LetterTransducer.from_fst(f, m)
    rep = ExhaustiveReport()
    for n, counts in lt.output_counts(max_len):
        x = all_inputs(m.num_classes, n)
        if n == 0:
            hit = np.array([lt.final[lt.initial]])
        else:
            hit = lt.accepts(x, viterbi_batch(m, x))
        counts = np.asarray(counts).ravel()
        bad = (counts == 0) | ~hit
        rep.inputs += len(counts)
        rep.empty += int((counts == 0).sum())
        rep.ambiguous += int((counts > 1).sum())
        rep.viterbi_missing += int((~hit).sum())
        rep.not_viterbi_only += int(((counts != 1) | ~hit).sum())
        rep.max_results = max(rep.max_results, int(counts.max()))
        if rep.first_failure is None and bad.any():
            k = int(np.argmax(bad))
            rep.first_failure = ([m.classes[c].name for c in x[k]], int(counts[k]))
    return rep


def product(a: LetterTransducer, b: LetterTransducer) -> LetterTransducer:
    """Pairs accepted by both (reachable part only)."""
    S, C, T = a.trans.shape
    index = {(a.initial, b.initial): 0}
    queue = [(a.initial, b.initial)]
    rows = []
    while queue:
        sa, sb = queue.pop()
        row = np.full((C, T), -1, dtype=np.int64)
        both = (a.trans[sa] >= 0) & (b.trans[sb] >= 0)
        for c, t in zip(*np.nonzero(both)):
            key = (int(a.trans[sa, c, t]), int(b.trans[sb, c, t]))
            if key not in index:
                index[key] = len(index)
                queue.append(key)
            row[c, t] = index[key]
        rows.append((index[(sa, sb)], row))
    trans = np.full((len(index), C, T), -1, dtype=np.int64)
    for i, row in rows:
        trans[i] = row
    final = np.zeros(len(index), dtype=bool)
    for (sa, sb), i in index.items():
        final[i] = a.final[sa] and b.final[sb]
    return LetterTransducer(trans, 0, final)


def same_outputs(f: Fst, g: Fst, m: HmmModel, max_len: int = 5) -> tuple[bool, list | None]:
    """Whether ``f`` and ``g`` give identical output sets on every input up to ``max_len``.

    Compares |f(x)|, |g(x)| and |f(x) & g(x)| per input. Returns the first
    differing input (class names) when they disagree.
    """
    a = LetterTransducer.from_fst(f, m)
    b = LetterTransducer.from_fst(g, m)
    both = product(a, b)
    for (n, ca), (_, cb), (_, cab) in zip(a.output_counts(max_len), b.output_counts(max_len),
                                          both.output_counts(max_len)):
        ca, cb, cab = (np.asarray(v).ravel() for v in (ca, cb, cab))
        bad = (ca != cb) | (ca != cab)
        if bad.any():
            k = int(np.argmax(bad))
            return False, [m.classes[c].name for c in all_inputs(m.num_classes, n)[k]]
    return True, None
