"""Accuracy, agreement with the HMM, result-count histograms, size and speed."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .corpus import Sentence
from .fst import Fst
from .hmm import HmmModel
from .tagger import make_tagger

BUCKETS = (("1", 1, 1), ("2", 2, 2), ("3", 3, 3), ("4", 4, 4),
           ("5-8", 5, 8), ("9-16", 9, 16), (">16", 17, None))
_CENT = Decimal("0.01")


class EvalError(ValueError):
    pass


def percent(num: int, den: int) -> float:
    """``100 * num / den`` rounded half-up to two decimals."""
    if den <= 0:
        raise EvalError("percentage of an empty total")
    return float((Decimal(100 * num) / Decimal(den)).quantize(_CENT, rounding=ROUND_HALF_UP))


def token_matches(tagged: Sequence[Sequence[str]], reference: Sequence[Sequence[str]],
                  what: str = "reference") -> tuple[int, int]:
    """(matching tokens, total tokens); the two streams must align sentence by sentence."""
    if len(tagged) != len(reference):
        raise EvalError(f"{len(tagged)} tagged sentences but {len(reference)} in the {what}")
    hits = total = 0
    for i, (s, r) in enumerate(zip(tagged, reference)):
        if len(s) != len(r):
            raise EvalError(f"sentence {i + 1} (token {total + 1}): {len(s)} tags "
                            f"but {len(r)} in the {what}")
        hits += sum(a == b for a, b in zip(s, r))
        total += len(s)
    return hits, total


def histogram(counts: Sequence[int]) -> dict[str, float]:
    """Share of sentences per result-count bucket, in percent.

    Shares are rounded to hundredths by largest remainder, so they add up
    to exactly 100.00.
    """
    if not counts:
        raise EvalError("no sentences to count")
    tally = {name: 0 for name, _, _ in BUCKETS}
    for n in counts:
        if n < 1:
            raise EvalError("a sentence with no tagging result")
        for name, lo, hi in BUCKETS:
            if n >= lo and (hi is None or n <= hi):
                tally[name] += 1
                break
    total = len(counts)
    exact = {k: Decimal(10000 * v) / total for k, v in tally.items()}
    cents = {k: int(v) for k, v in exact.items()}
    short = 10000 - sum(cents.values())
    for k in sorted(exact, key=lambda k: (-(exact[k] - cents[k]), list(tally).index(k)))[:short]:
        cents[k] += 1
    return {k: cents[k] / 100 for k in tally}


@dataclass
class EvalReport:
    tokens: int = 0
    sentences: int = 0
    accuracy: float | None = None
    agreement: float | None = None
    states: int | None = None
    arcs: int | None = None
    speed: float | None = None
    build_time: float | None = None
    histogram: dict[str, float] | None = None
    extra: dict[str, str] = field(default_factory=dict)

    def _rows(self):
        rows = [("sentences", self.sentences), ("tokens", self.tokens)]
        if self.accuracy is not None:
            rows.append(("accuracy", f"{self.accuracy:.2f}"))
        if self.agreement is not None:
            rows.append(("agreement", f"{self.agreement:.2f}"))
        if self.states is not None:
            rows += [("states", self.states), ("arcs", self.arcs)]
        if self.build_time is not None:
            rows.append(("build_seconds", f"{self.build_time:.3f}"))
        if self.speed is not None:
            rows.append(("words_per_second", f"{self.speed:.0f}"))
        for name, share in (self.histogram or {}).items():
            rows.append((f"results.{name}", f"{share:.2f}"))
        rows += list(self.extra.items())
        return rows

    def as_text(self) -> str:
        rows = self._rows()
        width = max(len(k) for k, _ in rows)
        return "".join(f"{k:<{width}}  {v}\n" for k, v in rows)

    def as_records(self) -> str:
        return "".join(f"{k}\t{v}\n" for k, v in self._rows())


def evaluate(tagged: Sequence[Sequence[str]], gold: Sequence[Sequence[str]] | None = None,
             hmm_output: Sequence[Sequence[str]] | None = None) -> EvalReport:
    """Token-level accuracy against ``gold`` and agreement with ``hmm_output``."""
    report = EvalReport(tokens=sum(len(s) for s in tagged), sentences=len(tagged))
    if gold is not None:
        report.accuracy = percent(*token_matches(tagged, gold, "gold standard"))
    if hmm_output is not None:
        report.agreement = percent(*token_matches(tagged, hmm_output, "HMM output"))
    return report


def evaluate_model(model: Fst | HmmModel, sentences: Sequence[Sentence],
                   hmm: HmmModel | None = None, count: bool = False) -> EvalReport:
    """Tag ``sentences`` with ``model`` and score the result.

    Speed covers tagging only. With ``hmm`` the output is compared with
    HMM tagging; with ``count`` the result-count histogram is filled in.
    """
    tagger = make_tagger(model)
    t0 = time.perf_counter()
    tagged = [tagger.tag(s).tags for s in sentences]
    elapsed = time.perf_counter() - t0
    gold = None
    if sentences and all(s.gold is not None for s in sentences):
        gold = [s.gold for s in sentences]
    reference = None
    if hmm is not None:
        h = make_tagger(hmm)
        reference = [h.tag(s).tags for s in sentences]
    report = evaluate(tagged, gold, reference)
    n = report.tokens
    report.speed = n / elapsed if elapsed > 0 else float("inf")
    if isinstance(model, Fst):
        report.states, report.arcs = model.num_states, model.num_arcs
        if count:
            report.histogram = histogram([tagger.count(s) for s in sentences])
    elif count:
        report.histogram = histogram([1] * len(sentences))
    return report
