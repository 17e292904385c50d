"""Compile an HMM into an unweighted b-type transducer.

Pipeline: enumerate every window of classes between two selected tags (or
sentence edges), tag its center class by Viterbi, spell each tagged window
as a linear transducer with context markers, take the star of their union,
enforce the markers with constraint acceptors, then erase the markers.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import fst as F
from .fst import BudgetExceeded, Fst
from .hmm import BTypeSequence, HmmModel, TaggedBTypeSequence, disambiguate_many
from .symbols import BOUNDARY, SymbolTable, marker_name

DEFAULT_MAX_STATES = 200_000


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class BTypeConfig:
    beta: int = 0
    alpha: int = 0
    max_states: int = DEFAULT_MAX_STATES

    def __post_init__(self):
        if self.beta < 0 or self.alpha < 0:
            raise ConfigError("look-back and look-ahead must be >= 0")
        if self.max_states <= 0:
            raise ConfigError("state budget must be positive")

    @property
    def sequential(self) -> bool:
        return self.beta * self.alpha == 0


@dataclass(frozen=True)
class ConstraintSpec:
    """Require ``symbol`` at distance ``delta`` (negative: look-back)."""

    kind: str
    delta: int
    symbol: int

    @property
    def side(self) -> str:
        return "look-back" if self.delta < 0 else "look-ahead"

    @property
    def distance(self) -> int:
        return abs(self.delta)

    def check(self, cfg: BTypeConfig | None = None) -> None:
        if self.kind not in ("tag", "class", "boundary"):
            raise ConfigError(f"unknown constraint kind {self.kind!r}")
        if self.delta == 0:
            raise ConfigError("constraint distance must be non-zero")
        if cfg is None:
            return
        b, a, d = cfg.beta, cfg.alpha, self.delta
        if self.kind == "tag":
            ok = d == -b or d == a
        elif self.kind == "class":
            ok = -b + 1 <= d <= -1 or 1 <= d <= a - 1
        else:
            ok = -b <= d <= -1 or 1 <= d <= a
        if not ok:
            raise ConfigError(f"{self.kind} constraint not allowed at distance {d} "
                              f"for beta={b}, alpha={a}")


@dataclass
class StageStats:
    name: str
    states: int
    arcs: int
    seconds: float


@dataclass
class BuildReport:
    beta: int
    alpha: int
    stages: list[StageStats] = field(default_factory=list)
    sequences: int = 0
    seconds: float = 0.0

    @property
    def states(self):
        return self.stages[-1].states if self.stages else 0

    @property
    def arcs(self):
        return self.stages[-1].arcs if self.stages else 0

    def add(self, name, f: Fst, seconds):
        self.stages.append(StageStats(name, f.num_states, f.num_arcs, seconds))

    def as_text(self) -> str:
        lines = [f"b-FST(beta={self.beta}, alpha={self.alpha})",
                 f"{'stage':<14}{'#states':>10}{'#arcs':>12}{'time':>10}"]
        for s in self.stages:
            lines.append(f"{s.name:<14}{s.states:>10}{s.arcs:>12}{s.seconds:>9.3f}s")
        lines.append(f"b-type sequences: {self.sequences}")
        lines.append(f"#states {self.states}  #arcs {self.arcs}  creation time {self.seconds:.3f}s")
        return "\n".join(lines) + "\n"

    def as_records(self) -> str:
        rows = [("beta", self.beta), ("alpha", self.alpha), ("sequences", self.sequences),
                ("states", self.states), ("arcs", self.arcs),
                ("creation_seconds", f"{self.seconds:.6f}")]
        for s in self.stages:
            rows.append((f"stage.{s.name}", f"{s.states}\t{s.arcs}\t{s.seconds:.6f}"))
        return "".join(f"{k}\t{v}\n" for k, v in rows)


# ---------------------------------------------------------------------------
# symbols

def marker_table(m: HmmModel, cfg: BTypeConfig) -> SymbolTable:
    """The model's alphabet plus every marker the configuration can use, frozen."""
    table = m.table.copy()
    b, a = cfg.beta, cfg.alpha
    for t in m.tags:
        if b:
            table.add_marker(t, "B", b)
        if a:
            table.add_marker(t, "A", a)
    for c in m.classes:
        for k in range(1, b):
            table.add_marker(c.id, "B", k)
        for k in range(1, a):
            table.add_marker(c.id, "A", k)
    for k in range(1, b + 1):
        table.add_marker(BOUNDARY, "B", k)
    for k in range(1, a + 1):
        table.add_marker(BOUNDARY, "A", k)
    return table.freeze()


def _marker(table: SymbolTable, base: int, side: str, k: int) -> int:
    return table.lookup(marker_name(table.name(base), side, k))


# ---------------------------------------------------------------------------
# b-type sequences

def _edges(m: HmmModel, length: int, side: str):
    """(edge, classes) pairs for one side; classes ordered left to right."""
    if length == 0:
        return [(None, ())]
    cls = [c.id for c in m.classes]
    out = []
    for d in range(1, length + 1):
        for ctx in itertools.product(cls, repeat=d - 1):
            out.append((BOUNDARY, ctx))
    for t in m.tags:
        for ctx in itertools.product(cls, repeat=length - 1):
            out.append((t, ctx))
    return out


def count_bsequences(m: HmmModel, cfg: BTypeConfig) -> int:
    C, T = m.num_classes, m.num_tags

    def side(n):
        return 1 if n == 0 else sum(C ** (d - 1) for d in range(1, n + 1)) + T * C ** (n - 1)

    return side(cfg.beta) * C * side(cfg.alpha)


def enumerate_bsequences(m: HmmModel, cfg: BTypeConfig) -> Iterator[BTypeSequence]:
    """Every b-type sequence, including windows cut short by a sentence edge."""
    total = count_bsequences(m, cfg)
    if total > cfg.max_states:
        raise BudgetExceeded("b-type sequence count", total, cfg.max_states, stage="enumerate")
    lefts = _edges(m, cfg.beta, "B")
    rights = _edges(m, cfg.alpha, "A")
    for c in m.classes:
        for left, back in lefts:
            for right, ahead in rights:
                yield BTypeSequence(left, back, c.id, ahead, right)


def sequence_pairs(t: TaggedBTypeSequence, table: SymbolTable) -> list[tuple[int, int]]:
    s = t.source
    pairs = []
    if s.left is not None:
        mk = _marker(table, s.left, "B", len(s.back) + 1)
        pairs.append((mk, mk))
    for j, c in enumerate(s.back):
        mk = _marker(table, c, "B", len(s.back) - j)
        pairs.append((mk, mk))
    pairs.append((s.center, t.chosen))
    for j, c in enumerate(s.ahead):
        mk = _marker(table, c, "A", j + 1)
        pairs.append((mk, mk))
    if s.right is not None:
        mk = _marker(table, s.right, "A", len(s.ahead) + 1)
        pairs.append((mk, mk))
    return pairs


def sequence_fst(t: TaggedBTypeSequence, table: SymbolTable) -> Fst:
    """Linear transducer: look-back markers, ``c0:t0``, look-ahead markers."""
    return F.linear(table, sequence_pairs(t, table))


def preliminary_model(seqs: Sequence[Fst], max_states: int | None = None) -> Fst:
    """``[ U B_i ]*``: tagged sequences in any order and number."""
    if not seqs:
        raise ConfigError("no b-type sequences to combine")
    # minimizing the union first keeps the star's epsilon closures small
    union = F.normalize(F.union(*seqs), max_states)
    return F.normalize(F.star(union), max_states)


# ---------------------------------------------------------------------------
# concatenation constraints

def _counted(table: SymbolTable, kind_ids: Sequence[int], n: int) -> Fst:
    """``[\\K]* [K [\\K]*]^n``: exactly n symbols of kind K."""
    other = F.star(F.term_complement(table, kind_ids))
    one = F.concat(F.symbols(table, kind_ids), other)
    return F.concat(other, F.power(one, n))


def build_constraint(spec: ConstraintSpec, table: SymbolTable,
                     cfg: BTypeConfig | None = None, max_states: int | None = None) -> Fst:
    """Acceptor forcing each ``X-Bk`` / ``X-Ak`` marker to agree with its context.

    Built literally from complement, term complement, power and
    concatenation. Tags and boundaries are counted on tag symbols,
    class constraints on class symbols.
    """
    spec.check(cfg)
    k = spec.distance
    anything = F.sigma_star(table)
    if spec.kind == "class":
        counted = table.of_kind("class")
    else:
        counted = table.of_kind("tag")
    base = BOUNDARY if spec.kind == "boundary" else spec.symbol
    expected = table.kind(base)
    if spec.kind != expected:
        raise ConfigError(f"{table.name(base)!r} is a {expected}, not a {spec.kind}")
    side = "B" if spec.delta < 0 else "A"
    mark = F.symbols(table, [_marker(table, base, side, k)])
    gap = _counted(table, counted, k - 1)

    if side == "B":
        if spec.kind == "boundary":
            good_left = gap
        else:
            good_left = F.concat(anything, F.symbols(table, [base]), gap)
        bad = F.concat(F.complement(good_left, max_states), mark, anything)
    else:
        if spec.kind == "boundary":
            good_right = gap
        else:
            good_right = F.concat(gap, F.symbols(table, [base]), anything)
        bad = F.concat(anything, mark, F.complement(good_right, max_states))
    return F.complement(bad, max_states)


def constraint_specs(m: HmmModel, cfg: BTypeConfig) -> dict[str, list[ConstraintSpec]]:
    b, a = cfg.beta, cfg.alpha
    tag_d = ([-b] if b else []) + ([a] if a else [])
    cls_d = list(range(-b + 1, 0)) + list(range(1, a))
    bnd_d = list(range(-b, 0)) + list(range(1, a + 1))
    return {
        "tag": [ConstraintSpec("tag", d, t) for t in m.tags for d in tag_d],
        "class": [ConstraintSpec("class", d, c.id) for c in m.classes for d in cls_d],
        "boundary": [ConstraintSpec("boundary", d, BOUNDARY) for d in bnd_d],
    }


def _intersect_all(table, acceptors: Iterable[Fst], max_states):
    result = F.sigma_star(table)
    for r in acceptors:
        result = F.normalize(F.intersect(result, r, max_states), max_states)
    return result


def combine_constraints(m: HmmModel, cfg: BTypeConfig, table: SymbolTable | None = None,
                        max_states: int | None = None) -> tuple[Fst, Fst, Fst]:
    """(R_t, R_c, R_#): intersections of the tag, class and boundary constraints."""
    table = table or marker_table(m, cfg)
    return tuple(combine_kind(m, cfg, kind, table, max_states)
                 for kind in ("tag", "class", "boundary"))


def combine_kind(m: HmmModel, cfg: BTypeConfig, kind: str, table: SymbolTable,
                 max_states: int | None = None) -> Fst:
    specs = constraint_specs(m, cfg)[kind]
    return _intersect_all(table, (build_constraint(s, table, cfg, max_states) for s in specs),
                          max_states)


def enforce(prelim: Fst, r_class: Fst, r_tag: Fst, r_bound: Fst,
            max_states: int | None = None) -> Fst:
    """``R_c .o. B' .o. R_t .o. R_#``; classes above, tags below."""
    out = F.normalize(F.compose(r_class, prelim, max_states), max_states)
    out = F.normalize(F.compose(out, r_tag, max_states), max_states)
    return F.normalize(F.compose(out, r_bound, max_states), max_states)


def strip_markers(b2: Fst, method: str = "traversal", max_states: int | None = None) -> Fst:
    """Erase all marker symbols.

    ``"traversal"`` overwrites markers with epsilon arc by arc;
    ``"compose"`` computes ``D_r.i .o. B'' .o. D_r`` with the deletion
    transducer ``D_r``. Both are normalized.
    """
    markers = b2.table.of_kind("marker")
    if method == "traversal":
        out = F.rewrite_to_epsilon(b2, markers)
    elif method == "compose":
        d = F.deletion_transducer(b2.table, markers)
        out = F.compose(F.invert(d), F.compose(b2, d, max_states), max_states)
    else:
        raise ConfigError(f"unknown strip method {method!r}")
    return F.normalize(out, max_states)


# ---------------------------------------------------------------------------
# driver

@dataclass
class CompileStages:
    """Intermediate results, kept for inspection and testing."""

    table: SymbolTable
    tagged: list[TaggedBTypeSequence]
    prelim: Fst
    r_tag: Fst
    r_class: Fst
    r_bound: Fst
    enforced: Fst
    final: Fst


def compile_stages(m: HmmModel, cfg: BTypeConfig, strip: str = "traversal",
                   report: BuildReport | None = None) -> CompileStages:
    report = report if report is not None else BuildReport(cfg.beta, cfg.alpha)
    limit = cfg.max_states
    t_all = time.perf_counter()

    def stage(name, fn):
        t0 = time.perf_counter()
        try:
            result = fn()
        except BudgetExceeded as exc:
            raise exc.at_stage(name) from None
        if isinstance(result, Fst):
            report.add(name, result, time.perf_counter() - t0)
        return result

    table = marker_table(m, cfg)
    seqs = stage("enumerate", lambda: list(enumerate_bsequences(m, cfg)))
    report.sequences = len(seqs)
    tagged = stage("disambiguate", lambda: _dedupe(disambiguate_many(m, seqs), table))
    prelim = stage("preliminary", lambda: preliminary_model(
        [F.linear(table, pairs) for _, pairs in tagged], limit))
    r_tag = stage("R_t", lambda: combine_kind(m, cfg, "tag", table, limit))
    r_class = stage("R_c", lambda: combine_kind(m, cfg, "class", table, limit))
    r_bound = stage("R_#", lambda: combine_kind(m, cfg, "boundary", table, limit))
    enforced = stage("enforce", lambda: enforce(prelim, r_class, r_tag, r_bound, limit))
    final = stage("strip", lambda: strip_markers(enforced, strip, limit))
    report.seconds = time.perf_counter() - t_all
    return CompileStages(table, [t for t, _ in tagged], prelim, r_tag, r_class, r_bound,
                         enforced, final)


def _dedupe(tagged, table):
    seen = set()
    out = []
    for t in tagged:
        pairs = tuple(sequence_pairs(t, table))
        if pairs not in seen:
            seen.add(pairs)
            out.append((t, pairs))
    return out


def compile_btype(m: HmmModel, cfg: BTypeConfig, strip: str = "traversal",
                  report: BuildReport | None = None) -> Fst:
    """The b-type transducer for ``m``: classes on the upper side, tags below.

    Raises :class:`BudgetExceeded`, labelled with the failing stage, when
    any intermediate result outgrows ``cfg.max_states``.
    """
    return compile_stages(m, cfg, strip, report).final
