"""Reference implementations that only read arcs, never call the library's algorithms."""

import itertools
import math
from collections import deque

import numpy as np

from hmmfst import fst as F
from hmmfst.symbols import EPSILON, SymbolTable


def relation(f, depth):
    """Every (upper, lower) pair of f with both sides at most ``depth`` long.

    Breadth-first over (state, upper, lower); the visited set absorbs
    epsilon cycles.
    """
    start = (f.initial, (), ())
    seen = {start}
    queue = deque([start])
    out = set()
    arcs = {}
    for s, d, up, lo in f.arcs:
        arcs.setdefault(s, []).append((d, up, lo))
    while queue:
        q, x, y = queue.popleft()
        if q in f.finals:
            out.add((x, y))
        for d, up, lo in arcs.get(q, ()):
            nx = x if up == EPSILON else x + (up,)
            ny = y if lo == EPSILON else y + (lo,)
            if len(nx) > depth or len(ny) > depth:
                continue
            cfg = (d, nx, ny)
            if cfg not in seen:
                seen.add(cfg)
                queue.append(cfg)
    return out


def language(f, depth):
    return {x for x, _ in relation(f, depth)}


def join(r, q):
    """Relational composition of two finite pair sets."""
    by_mid = {}
    for y, z in q:
        by_mid.setdefault(y, set()).add(z)
    return {(x, z) for x, y in r for z in by_mid.get(y, ())}


def all_strings(alphabet, depth):
    out = set()
    for n in range(depth + 1):
        out.update(itertools.product(alphabet, repeat=n))
    return out


def small_table(n_symbols=3):
    t = SymbolTable()
    for i in range(n_symbols):
        t.add(f"s{i}", "tag")
    return t.freeze()


def random_fst(rng, table, n_states=4, n_arcs=8, eps=0.2, acceptor=False,
               lower_nonempty=False):
    """Random (possibly nondeterministic) transducer over ``table.sigma``.

    ``lower_nonempty`` keeps epsilon off the lower side, which bounds the
    length of what the transducer reads by what it writes.
    """
    sigma = list(table.sigma)
    arcs = []
    for _ in range(n_arcs):
        s, d = int(rng.integers(n_states)), int(rng.integers(n_states))
        up = EPSILON if rng.random() < eps else sigma[int(rng.integers(len(sigma)))]
        if acceptor:
            lo = up
        elif lower_nonempty or rng.random() >= eps:
            lo = sigma[int(rng.integers(len(sigma)))]
        else:
            lo = EPSILON
        if acceptor and up == EPSILON:
            lo = EPSILON
        arcs.append((s, d, up, lo))
    finals = [q for q in range(n_states) if rng.random() < 0.4] or [n_states - 1]
    return F.Fst(table, n_states, 0, finals, arcs)


# ---------------------------------------------------------------------------
# HMM references

TIE = 1e-9


def brute_viterbi(m, classes):
    """Smallest tag sequence among the most probable ones, by enumeration."""
    cis = [m.class_index[c] for c in classes]
    best, best_seq = -math.inf, None
    scored = []
    for seq in itertools.product(range(m.num_tags), repeat=len(cis)):
        p = math.log(m.pi[seq[0]]) if m.pi[seq[0]] > 0 else -math.inf
        for j, (c, t) in enumerate(zip(cis, seq)):
            if j:
                p += math.log(m.a[seq[j - 1], t]) if m.a[seq[j - 1], t] > 0 else -math.inf
            p += math.log(m.b[c, t]) if m.b[c, t] > 0 else -math.inf
        scored.append((seq, p))
        best = max(best, p)
    for seq, p in scored:  # product order is lexicographic
        if p >= best - TIE:
            best_seq = seq
            break
    return [m.tags[i] for i in best_seq]


def brute_window(m, s, score):
    """Center tag of the best window tagging under ``score(tags)``."""
    members = [m.get_class(c).members for c in s.window]
    cands = [(tags, score(tags)) for tags in itertools.product(*members)]
    best = max(p for _, p in cands)
    for tags, p in sorted(cands):
        if p >= best - TIE:
            return tags[s.center_pos]


def tag_bigrams(tag_rows, n_tags):
    counts = np.zeros((n_tags, n_tags))
    for row in tag_rows:
        for a, b in zip(row, row[1:]):
            counts[a, b] += 1
    return counts
