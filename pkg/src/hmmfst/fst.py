"""Unweighted finite-state transducers and the regular-expression calculus.

An :class:`Fst` is an immutable arc list over a shared :class:`SymbolTable`.
Acceptors are transducers whose arcs all carry identical upper and lower
symbols. Every operation returns a new value.

Transducers are normalized as acceptors over the alphabet of symbol *pairs*
(only ``<eps>:<eps>`` counts as epsilon). That keeps the relation intact and
gives letter-to-letter transducers, such as the b-type taggers, a unique
minimal form.
"""

from __future__ import annotations

from collections import defaultdict, deque
from operator import itemgetter
from typing import Iterable, Sequence

from .symbols import ANY, EPSILON, SymbolError, SymbolTable

DEFAULT_APPLY_LIMIT = 10**6


class FstError(ValueError):
    pass


class BudgetExceeded(FstError):
    """A construction grew past its state budget."""

    def __init__(self, what: str, count: int, limit: int, stage: str | None = None):
        self.what = what
        self.count = count
        self.limit = limit
        self.stage = stage
        super().__init__(self._message())

    def _message(self):
        where = f"stage {self.stage!r}: " if self.stage else ""
        return (f"{where}{self.what} exceeded the state budget "
                f"({self.count} > {self.limit}); FST not computable")

    def at_stage(self, stage: str) -> "BudgetExceeded":
        self.stage = stage
        self.args = (self._message(),)
        return self


class ApplyLimitExceeded(FstError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"more than limit={limit} outputs")


_arc_key = itemgetter(0, 2, 3, 1)


class Fst:
    """Transducer with states ``0..num_states-1``.

    ``arcs`` holds ``(src, dst, upper, lower)`` tuples, deduplicated and
    sorted by source, upper id, lower id, then destination. That order is the
    one :func:`apply` follows when asked for the first result.
    """

    __slots__ = ("table", "num_states", "initial", "finals", "arcs", "_out", "_by_upper")

    def __init__(self, table: SymbolTable, num_states: int, initial: int,
                 finals: Iterable[int], arcs: Iterable[tuple[int, int, int, int]],
                 validate: bool = True):
        self.table = table
        self.num_states = num_states
        self.initial = initial
        self.finals = frozenset(finals)
        self.arcs = tuple(sorted(set(arcs), key=_arc_key))
        self._out = None
        self._by_upper = None
        if validate:
            self._validate()

    def _validate(self):
        n = self.num_states
        if n < 1 or not 0 <= self.initial < n:
            raise FstError(f"initial state {self.initial} outside 0..{n - 1}")
        for f in self.finals:
            if not 0 <= f < n:
                raise FstError(f"final state {f} outside 0..{n - 1}")
        nsym = len(self.table)
        for src, dst, up, lo in self.arcs:
            if not (0 <= src < n and 0 <= dst < n):
                raise FstError(f"arc {src}->{dst} has an endpoint outside 0..{n - 1}")
            if not (0 <= up < nsym and 0 <= lo < nsym):
                raise SymbolError(f"arc label {up}:{lo} does not resolve in the table")
            if up == ANY or lo == ANY:
                raise FstError("ANY must be expanded before it is stored on an arc")

    @property
    def is_acceptor(self) -> bool:
        return all(a[2] == a[3] for a in self.arcs)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def out(self, state: int) -> list[tuple[int, int, int]]:
        """Outgoing ``(upper, lower, dst)`` triples in arc order."""
        if self._out is None:
            out = [[] for _ in range(self.num_states)]
            for src, dst, up, lo in self.arcs:
                out[src].append((up, lo, dst))
            self._out = out
        return self._out[state]

    def by_upper(self, state: int) -> dict[int, list[tuple[int, int]]]:
        """Outgoing arcs of ``state`` keyed by upper symbol: ``{upper: [(lower, dst)]}``."""
        if self._by_upper is None:
            idx = [defaultdict(list) for _ in range(self.num_states)]
            for src, dst, up, lo in self.arcs:
                idx[src][up].append((lo, dst))
            self._by_upper = [dict(d) for d in idx]
        return self._by_upper[state]

    def __eq__(self, other):
        if not isinstance(other, Fst):
            return NotImplemented
        return (self.table == other.table and self.num_states == other.num_states
                and self.initial == other.initial and self.finals == other.finals
                and self.arcs == other.arcs)

    __hash__ = None

    def __repr__(self):
        kind = "acceptor" if self.is_acceptor else "transducer"
        return f"<Fst {kind}: {self.num_states} states, {self.num_arcs} arcs>"


def _check_tables(*fsts: Fst) -> SymbolTable:
    table = fsts[0].table
    for f in fsts[1:]:
        if not table.compatible(f.table):
            raise FstError("symbol tables are incompatible")
    return table


def _require_acceptor(*fsts: Fst, op: str):
    for f in fsts:
        if not f.is_acceptor:
            raise FstError(f"{op} is defined on acceptors only")


def _check_budget(count, max_states, what):
    if max_states is not None and count > max_states:
        raise BudgetExceeded(what, count, max_states)


# ---------------------------------------------------------------------------
# primitive constructions

def linear(table: SymbolTable, pairs: Sequence[tuple[int, int]]) -> Fst:
    """Single-path transducer for one string of symbol pairs."""
    arcs = []
    for i, (up, lo) in enumerate(pairs):
        table.check(up)
        table.check(lo)
        if up == ANY or lo == ANY:
            raise FstError("linear() takes concrete symbols, not ANY")
        arcs.append((i, i + 1, up, lo))
    n = len(arcs) + 1
    return Fst(table, n, 0, [n - 1], arcs)


def string(table: SymbolTable, symbols: Sequence[int]) -> Fst:
    """Acceptor for one string."""
    return linear(table, [(s, s) for s in symbols])


def empty_string(table: SymbolTable) -> Fst:
    return Fst(table, 1, 0, [0], [])


def empty_language(table: SymbolTable) -> Fst:
    return Fst(table, 1, 0, [], [])


def symbols(table: SymbolTable, syms: Iterable[int]) -> Fst:
    """Acceptor of the length-1 strings over ``syms``."""
    arcs = []
    for s in syms:
        table.check(s)
        if s in (EPSILON, ANY):
            raise FstError("symbol sets hold concrete symbols only")
        arcs.append((0, 1, s, s))
    return Fst(table, 2, 0, [1], arcs)


def any_symbol(table: SymbolTable) -> Fst:
    """``?``: any single symbol of the closed alphabet."""
    return symbols(table, table.sigma)


def sigma_star(table: SymbolTable) -> Fst:
    """``?*``, which doubles as the identity relation over the alphabet."""
    return Fst(table, 1, 0, [0], [(0, 0, s, s) for s in table.sigma])


def identity(table: SymbolTable) -> Fst:
    return sigma_star(table)


def term_complement(table: SymbolTable, excluded: int | Iterable[int]) -> Fst:
    """``\\a``: any single symbol other than the excluded one(s)."""
    if isinstance(excluded, int):
        excluded = (excluded,)
    excluded = set(excluded)
    for s in excluded:
        table.check(s)
        if s in (EPSILON, ANY):
            raise FstError("term complement of a reserved symbol")
    return symbols(table, [s for s in table.sigma if s not in excluded])


# ---------------------------------------------------------------------------
# rational operations (epsilon-based; call normalize() to clean up)

def _embed(f: Fst, offset: int, arcs: list):
    for src, dst, up, lo in f.arcs:
        arcs.append((src + offset, dst + offset, up, lo))


def union(*fsts: Fst) -> Fst:
    if not fsts:
        raise FstError("union of nothing")
    table = _check_tables(*fsts)
    arcs = []
    finals = []
    offset = 1
    for f in fsts:
        _embed(f, offset, arcs)
        arcs.append((0, f.initial + offset, EPSILON, EPSILON))
        finals.extend(q + offset for q in f.finals)
        offset += f.num_states
    return Fst(table, offset, 0, finals, arcs, validate=False)


def concat(*fsts: Fst) -> Fst:
    if not fsts:
        raise FstError("concatenation of nothing")
    table = _check_tables(*fsts)
    arcs = []
    offset = 0
    prev_finals = None
    initial = fsts[0].initial
    for f in fsts:
        _embed(f, offset, arcs)
        if prev_finals is not None:
            arcs.extend((q, f.initial + offset, EPSILON, EPSILON) for q in prev_finals)
        prev_finals = [q + offset for q in f.finals]
        offset += f.num_states
    return Fst(table, offset, initial, prev_finals, arcs, validate=False)


def star(a: Fst) -> Fst:
    arcs = []
    _embed(a, 1, arcs)
    arcs.append((0, a.initial + 1, EPSILON, EPSILON))
    arcs.extend((q + 1, 0, EPSILON, EPSILON) for q in a.finals)
    return Fst(a.table, a.num_states + 1, 0, [0], arcs, validate=False)


def power(a: Fst, n: int) -> Fst:
    """``A^n``."""
    if n < 0:
        raise FstError("power needs n >= 0")
    if n == 0:
        return empty_string(a.table)
    return concat(*([a] * n))


def invert(r: Fst) -> Fst:
    return Fst(r.table, r.num_states, r.initial, r.finals,
               [(s, d, lo, up) for s, d, up, lo in r.arcs], validate=False)


def rewrite_to_epsilon(r: Fst, doomed: Iterable[int]) -> Fst:
    """Overwrite every occurrence of the doomed marker symbols with epsilon.

    This is the in-place alternative to composing with ``doomed -> []`` on
    both sides; follow it with :func:`normalize` to drop the epsilons.
    """
    doomed = frozenset(doomed)
    for s in doomed:
        if r.table.kind(s) != "marker":
            raise FstError(f"only marker symbols can be deleted, not {r.table.name(s)!r}")
    if not doomed:
        return r
    arcs = [(s, d, EPSILON if up in doomed else up, EPSILON if lo in doomed else lo)
            for s, d, up, lo in r.arcs]
    return Fst(r.table, r.num_states, r.initial, r.finals, arcs, validate=False)


def deletion_transducer(table: SymbolTable, doomed: Iterable[int]) -> Fst:
    """``r -> []`` for a set of single symbols ``r``: a one-state transducer
    deleting every doomed symbol and copying everything else."""
    doomed = frozenset(doomed)
    arcs = [(0, 0, s, EPSILON if s in doomed else s) for s in table.sigma]
    return Fst(table, 1, 0, [0], arcs)


# ---------------------------------------------------------------------------
# normalization

def trim(a: Fst) -> Fst:
    """Keep only states that are both accessible and co-accessible."""
    fwd = [[] for _ in range(a.num_states)]
    bwd = [[] for _ in range(a.num_states)]
    for s, d, _, _ in a.arcs:
        fwd[s].append(d)
        bwd[d].append(s)
    acc = _reach([a.initial], fwd)
    coacc = _reach(a.finals, bwd)
    keep = acc & coacc
    if a.initial not in keep:
        return empty_language(a.table)
    if len(keep) == a.num_states:
        return a
    order = sorted(keep)
    order.remove(a.initial)
    order.insert(0, a.initial)
    index = {q: i for i, q in enumerate(order)}
    arcs = [(index[s], index[d], up, lo) for s, d, up, lo in a.arcs
            if s in index and d in index]
    return Fst(a.table, len(order), 0, [index[q] for q in a.finals if q in index],
               arcs, validate=False)


def _reach(seeds, adj):
    seen = set(seeds)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for d in adj[q]:
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return seen


def remove_epsilon(a: Fst) -> Fst:
    """Eliminate ``<eps>:<eps>`` arcs via epsilon closures."""
    if not any(up == EPSILON and lo == EPSILON for _, _, up, lo in a.arcs):
        return a
    eps = [[] for _ in range(a.num_states)]
    real = [[] for _ in range(a.num_states)]
    for s, d, up, lo in a.arcs:
        if up == EPSILON and lo == EPSILON:
            eps[s].append(d)
        else:
            real[s].append((d, up, lo))
    arcs = [arc for arc in a.arcs if arc[2] != EPSILON or arc[3] != EPSILON]
    finals = set(a.finals)
    for q in range(a.num_states):
        if not eps[q]:
            continue
        closure = _reach([q], eps)
        closure.discard(q)
        if not closure.isdisjoint(a.finals):
            finals.add(q)
        for p in closure:
            arcs.extend((q, d, up, lo) for d, up, lo in real[p])
    return trim(Fst(a.table, a.num_states, a.initial, finals, arcs, validate=False))


def determinize(a: Fst, max_states: int | None = None) -> Fst:
    """Subset construction over pair labels. Input must be epsilon-free."""
    out = [[] for _ in range(a.num_states)]
    for s, d, up, lo in a.arcs:
        if up == EPSILON and lo == EPSILON:
            raise FstError("determinize() needs an epsilon-free input")
        out[s].append(((up, lo), d))
    finals = a.finals
    start = frozenset((a.initial,))
    index = {start: 0}
    queue = [start]
    arcs = []
    new_finals = []
    i = 0
    while i < len(queue):
        subset = queue[i]
        if not finals.isdisjoint(subset):
            new_finals.append(i)
        moves = defaultdict(set)
        for q in subset:
            for label, d in out[q]:
                moves[label].add(d)
        for (up, lo), dsts in moves.items():
            key = frozenset(dsts)
            j = index.get(key)
            if j is None:
                j = index[key] = len(queue)
                queue.append(key)
                _check_budget(len(queue), max_states, "determinize")
            arcs.append((i, j, up, lo))
        i += 1
    return Fst(a.table, len(queue), 0, new_finals, arcs, validate=False)


def is_deterministic(a: Fst) -> bool:
    seen = set()
    for s, _, up, lo in a.arcs:
        if up == EPSILON and lo == EPSILON:
            return False
        if (s, up, lo) in seen:
            return False
        seen.add((s, up, lo))
    return True


def minimize(a: Fst) -> Fst:
    """Minimal trimmed DFA over pair labels, states numbered canonically.

    Input must be deterministic. Moore-style partition refinement.
    """
    a = trim(a)
    n = a.num_states
    out = [[] for _ in range(n)]
    for s, d, up, lo in a.arcs:
        out[s].append(((up, lo), d))
    block = [1 if q in a.finals else 0 for q in range(n)]
    nblocks = len(set(block))
    while True:
        sigs = {}
        new = []
        for q in range(n):
            key = (block[q], tuple((lab, block[d]) for lab, d in out[q]))
            new.append(sigs.setdefault(key, len(sigs)))
        block = new
        if len(sigs) == nblocks:
            break
        nblocks = len(sigs)
    # quotient, then canonical BFS numbering from the initial block
    qout = {}
    for q in range(n):
        b = block[q]
        if b not in qout:
            qout[b] = [(lab, block[d]) for lab, d in out[q]]
    qfinal = {block[q] for q in a.finals}
    order = {block[a.initial]: 0}
    queue = deque([block[a.initial]])
    arcs = []
    while queue:
        b = queue.popleft()
        for (up, lo), d in sorted(qout[b]):
            if d not in order:
                order[d] = len(order)
                queue.append(d)
            arcs.append((order[b], order[d], up, lo))
    return Fst(a.table, len(order), 0, [order[b] for b in qfinal if b in order],
               arcs, validate=False)


def normalize(a: Fst, max_states: int | None = None) -> Fst:
    """Epsilon-free, deterministic, minimal and trimmed; relation preserved."""
    return minimize(determinize(remove_epsilon(a), max_states))


def equivalent(a: Fst, b: Fst) -> bool:
    """Relation (or language) equality via canonical minimal forms."""
    _check_tables(a, b)
    na, nb = normalize(a), normalize(b)
    return (na.num_states == nb.num_states and na.finals == nb.finals
            and na.arcs == nb.arcs)


def is_empty(a: Fst) -> bool:
    return not trim(a).finals


# ---------------------------------------------------------------------------
# boolean operations on acceptors

def complement(a: Fst, max_states: int | None = None) -> Fst:
    """``~A`` over the frozen alphabet of ``a``'s table."""
    _require_acceptor(a, op="complement")
    sigma = a.table.sigma
    d = determinize(remove_epsilon(a), max_states)
    n = d.num_states
    sink = n
    have = defaultdict(set)
    arcs = list(d.arcs)
    for s, _, up, _ in d.arcs:
        have[s].add(up)
    for q in range(n + 1):
        present = have.get(q, ())
        arcs.extend((q, sink, s, s) for s in sigma if s not in present)
    finals = [q for q in range(n + 1) if q not in d.finals]
    return minimize(Fst(a.table, n + 1, d.initial, finals, arcs, validate=False))


def intersect(a: Fst, b: Fst, max_states: int | None = None) -> Fst:
    _require_acceptor(a, b, op="intersect")
    _check_tables(a, b)
    a = remove_epsilon(a)
    b = remove_epsilon(b)
    start = (a.initial, b.initial)
    index = {start: 0}
    queue = [start]
    arcs = []
    finals = []
    i = 0
    while i < len(queue):
        qa, qb = queue[i]
        if qa in a.finals and qb in b.finals:
            finals.append(i)
        idx_b = b.by_upper(qb)
        for up, lo, da in a.out(qa):
            for _, db in idx_b.get(up, ()):
                key = (da, db)
                j = index.get(key)
                if j is None:
                    j = index[key] = len(queue)
                    queue.append(key)
                    _check_budget(len(queue), max_states, "intersect")
                arcs.append((i, j, up, lo))
        i += 1
    return trim(Fst(a.table, len(queue), 0, finals, arcs, validate=False))


def compose(r: Fst, q: Fst, max_states: int | None = None) -> Fst:
    """``R .o. Q``: relational join on r's lower and q's upper side.

    Epsilons are handled with a sequencing filter: between two matched
    symbols, r's output-epsilon moves come before q's input-epsilon moves,
    so each pair of paths yields exactly one composed path.
    """
    table = _check_tables(r, q)
    q_eps = [[(lo, d) for up, lo, d in q.out(s) if up == EPSILON] for s in range(q.num_states)]
    start = (r.initial, q.initial, 0)
    index = {start: 0}
    queue = [start]
    arcs = []
    finals = []

    def target(key):
        j = index.get(key)
        if j is None:
            j = index[key] = len(queue)
            queue.append(key)
            _check_budget(len(queue), max_states, "compose")
        return j

    i = 0
    while i < len(queue):
        sr, sq, filt = queue[i]
        if sr in r.finals and sq in q.finals:
            finals.append(i)
        q_idx = q.by_upper(sq)
        for up, mid, dr in r.out(sr):
            if mid == EPSILON:
                if filt == 0:
                    arcs.append((i, target((dr, sq, 0)), up, EPSILON))
            else:
                for lo, dq in q_idx.get(mid, ()):
                    arcs.append((i, target((dr, dq, 0)), up, lo))
        for lo, dq in q_eps[sq]:
            arcs.append((i, target((sr, dq, 1)), EPSILON, lo))
        i += 1
    return trim(Fst(table, len(queue), 0, finals, arcs, validate=False))


# ---------------------------------------------------------------------------
# application

def _closure_forward(states, eps_out):
    seen = set(states)
    stack = list(seen)
    while stack:
        s = stack.pop()
        for d in eps_out[s]:
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return seen


def _live_configs(r: Fst, x: Sequence[int]) -> list[set[int]]:
    """Per input position, the states lying on some accepting path for x."""
    n = len(x)
    eps_out = [[d for _, d in r.by_upper(s).get(EPSILON, ())] for s in range(r.num_states)]
    reach = [_closure_forward({r.initial}, eps_out)]
    for sym in x:
        nxt = set()
        for s in reach[-1]:
            nxt.update(d for _, d in r.by_upper(s).get(sym, ()))
        reach.append(_closure_forward(nxt, eps_out))
    live = [set() for _ in range(n + 1)]
    for p in range(n, -1, -1):
        here = reach[p]
        good = {s for s in here if s in r.finals} if p == n else {
            s for s in here
            if any(d in live[p + 1] for _, d in r.by_upper(s).get(x[p], ()))}
        changed = True
        while changed:
            changed = False
            for s in here:
                if s not in good and any(d in good for d in eps_out[s]):
                    good.add(s)
                    changed = True
        live[p] = good
    return live


def apply(r: Fst, x: Sequence[int], mode: str = "all", limit: int = DEFAULT_APPLY_LIMIT):
    """Run ``x`` through the upper side of ``r``.

    ``mode="all"`` returns the set of lower strings (tuples of ids),
    ``"count"`` its size and ``"first"`` the first output met by a
    depth-first walk following arc order (``None`` if there is none). For an
    epsilon-free letter-to-letter transducer the first output is the
    lexicographically smallest by lower-symbol id.
    """
    if mode not in ("first", "all", "count"):
        raise FstError(f"unknown apply mode {mode!r}")
    x = tuple(x)
    for sym in x:
        r.table.check(sym)
        if sym in (EPSILON, ANY):
            raise FstError("input must not contain epsilon or ANY")
    n = len(x)
    live = _live_configs(r, x)
    if r.initial not in live[0]:
        return None if mode == "first" else (0 if mode == "count" else set())

    def moves(s, p):
        idx = r.by_upper(s)
        if p < n:
            for lo, d in idx.get(x[p], ()):
                if d in live[p + 1]:
                    yield lo, d, p + 1
        for lo, d in idx.get(EPSILON, ()):
            if d in live[p]:
                yield lo, d, p

    if mode == "first":
        seen = {(r.initial, 0)}
        stack = [(r.initial, 0, (), moves(r.initial, 0))]
        while stack:
            s, p, outp, it = stack[-1]
            if p == n and s in r.finals:
                return outp
            for lo, d, pn in it:
                if (d, pn) not in seen:
                    seen.add((d, pn))
                    nout = outp if lo == EPSILON else outp + (lo,)
                    stack.append((d, pn, nout, moves(d, pn)))
                    break
            else:
                stack.pop()
        return None  # unreachable when live[0] holds the initial state

    results = set()
    start = (r.initial, 0, ())
    seen = {start}
    stack = [start]
    while stack:
        s, p, outp = stack.pop()
        if p == n and s in r.finals and outp not in results:
            results.add(outp)
            if len(results) > limit:
                raise ApplyLimitExceeded(limit)
        for lo, d, pn in moves(s, p):
            cfg = (d, pn, outp if lo == EPSILON else outp + (lo,))
            if cfg not in seen:
                seen.add(cfg)
                stack.append(cfg)
    return len(results) if mode == "count" else results


# ---------------------------------------------------------------------------
# FSTv1 text format

def dumps(f: Fst) -> str:
    """FSTv1 text; the initial state is always written as state 0."""
    t = f.table

    def ren(q):
        if q == f.initial:
            return 0
        if q == 0:
            return f.initial
        return q

    lines = ["FSTv1"]
    for sid, kind, name in t:
        lines.append(f"symbol {sid} {kind} {name}")
    arcs = sorted(((ren(s), ren(d), up, lo) for s, d, up, lo in f.arcs), key=_arc_key)
    for s, d, up, lo in arcs:
        lines.append(f"arc {s} {d} {t.name(up)} {t.name(lo)}")
    for q in sorted(ren(q) for q in f.finals):
        lines.append(f"final {q}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Fst:
    lines = text.splitlines()
    if not lines or lines[0] != "FSTv1":
        raise FstError("line 1: expected 'FSTv1'")
    table = SymbolTable()
    arcs = []
    finals = []
    top = 0
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        try:
            if parts[0] == "symbol" and len(parts) == 4:
                sid, kind, name = int(parts[1]), parts[2], parts[3]
                if sid < 3:
                    if table.name(sid) != name or table.kind(sid) != kind:
                        raise FstError(f"reserved symbol {sid} must be {table.name(sid)}")
                    continue
                if table.add(name, kind) != sid:
                    raise FstError(f"symbol ids must be dense and ordered, got {sid}")
            elif parts[0] == "arc" and len(parts) == 5:
                s, d = int(parts[1]), int(parts[2])
                arcs.append((s, d, table.lookup(parts[3]), table.lookup(parts[4])))
                top = max(top, s, d)
            elif parts[0] == "final" and len(parts) == 2:
                q = int(parts[1])
                finals.append(q)
                top = max(top, q)
            else:
                raise FstError(f"unrecognised line {line!r}")
        except (ValueError, SymbolError) as exc:
            raise FstError(f"line {lineno}: {exc}") from None
    table.freeze()
    return Fst(table, top + 1, 0, finals, arcs)


def save(f: Fst, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(f))


def load(path) -> Fst:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
