"""``bfst``: train, compile, tag, evaluate and count tagging results.

Exit status: 0 ok, 1 usage error, 2 state budget exceeded (transducer not
computable), 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import btype, corpus, hmm, lexicon
from . import fst as F
from .btype import BTypeConfig, BuildReport
from .evaluate import EvalError, evaluate_model
from .fst import BudgetExceeded
from .tagger import MODES, TaggerError, format_result, make_tagger, segment

EXIT_USAGE, EXIT_BUDGET, EXIT_IO = 1, 2, 3

log = logging.getLogger("bfst")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer, got {raw!r}") from None


def _paths(prefix: str) -> tuple[Path, Path, Path]:
    p = Path(prefix)
    return p.with_name(p.name + ".hmm"), p.with_name(p.name + ".lex"), p.with_name(p.name + ".guess")


def _load_bundle(prefix: str):
    model_path, lex_path, guess_path = _paths(prefix)
    m = hmm.load(model_path)
    lex = lexicon.load(lex_path, m, guess_path if guess_path.exists() else None)
    return m, lex


def _read_word_classes(path) -> dict[str, list[str]]:
    out = {}
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        word, sep, tags = line.partition("\t")
        if not sep or not word or not tags:
            raise lexicon.LexiconError(f"{path}:{n}: expected 'word<TAB>tag,tag,...'")
        out.setdefault(word, []).extend(tags.split(","))
    return out


def cmd_train(args) -> int:
    tagged = corpus.read_tagged(args.corpus, args.end_tag)
    classes = _read_word_classes(args.word_classes) if args.word_classes else None
    m = hmm.train(tagged, smoothing=args.smoothing, word_classes=classes)
    lex = lexicon.build_lexicon(m, tagged, classes, suffix_length=args.suffix_length)
    model_path, lex_path, guess_path = _paths(args.out)
    hmm.save(m, model_path)
    lexicon.save(lex, lex_path, guess_path)
    print(f"{m.num_tags} tags, {m.num_classes} classes, {len(lex)} words, "
          f"{len(lex.guesser)} suffixes -> {model_path}, {lex_path}, {guess_path}")
    return 0


def cmd_compile(args) -> int:
    m = hmm.load(args.model)
    budget = args.budget if args.budget is not None else _env_int("BFST_BUDGET", btype.DEFAULT_MAX_STATES)
    cfg = BTypeConfig(args.beta, args.alpha, budget)
    report = BuildReport(cfg.beta, cfg.alpha)
    bfst = btype.compile_btype(m, cfg, strip=args.strip, report=report)
    F.save(bfst, args.out)
    sys.stdout.write(report.as_text())
    if args.report:
        Path(args.report).write_text(report.as_records(), encoding="utf-8")
    return 0


def _tagging_model(args, m):
    return F.load(args.fst) if args.fst else m


def cmd_tag(args) -> int:
    m, lex = _load_bundle(args.model)
    tagger = make_tagger(_tagging_model(args, m))
    tokens = corpus.read_tokens(args.input if args.input != "-" else sys.stdin.read().splitlines())
    out = sys.stdout
    for s in segment(lex, tokens, args.end_tag):
        result = tagger.tag(s, args.mode)
        if args.mode == "all":
            for alt in result.alternatives:
                out.write(format_result(s, type(result)(alt), args.show_classes))
        else:
            if args.mode == "count":
                out.write(f"# results\t{result.n_results}\n")
            if s.synthetic_end:
                out.write("# synthetic sentence end\n")
            out.write(format_result(s, result, args.show_classes))
    return 0


def _eval_sentences(args, m, lex):
    tagged = corpus.read_tagged(args.corpus, args.end_tag)
    if args.class_words:
        # sampled corpora spell each token as its class name
        lookup = m.get_class
    else:
        lookup = lex.lookup
    try:
        return list(corpus.sentences_from_tagged(lookup, tagged))
    except hmm.HmmError as exc:
        raise corpus.CorpusError(str(exc)) from None


def cmd_eval(args) -> int:
    m, lex = _load_bundle(args.model)
    model = _tagging_model(args, m)
    sentences = _eval_sentences(args, m, lex)
    report = evaluate_model(model, sentences, hmm=m, count=args.count)
    sys.stdout.write(report.as_records() if args.records else report.as_text())
    return 0


def cmd_stats(args) -> int:
    m, lex = _load_bundle(args.model)
    model = F.load(args.fst)
    if args.tokens:
        sentences = list(segment(lex, corpus.read_tokens(args.tokens), args.end_tag))
    else:
        sentences = _eval_sentences(args, m, lex)
    report = evaluate_model(model, sentences, count=True)
    report.speed = None
    sys.stdout.write(report.as_records() if args.records else report.as_text())
    return 0


def cmd_sample(args) -> int:
    m = hmm.load(args.model)
    seed = args.seed if args.seed is not None else _env_int("BFST_SEED", 0)
    end = args.end_tag if args.end_tag in {m.tag_name(t) for t in m.tags} else None
    sents = corpus.sample_corpus(m, args.tokens, seed, end_tag=end)
    text = corpus.format_tagged(zip(s.words, s.gold) for s in sents)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bfst", description="HMM part-of-speech tagging approximated by finite-state transducers.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("train", cmd_train, "train an HMM, lexicon and guesser from a tagged corpus")
    sp.add_argument("corpus")
    sp.add_argument("-o", "--out", required=True, help="output prefix; writes PREFIX.hmm/.lex/.guess")
    sp.add_argument("--word-classes", help="extra 'word<TAB>tag,tag' entries widening word classes")
    sp.add_argument("--smoothing", type=float, default=0.1)
    sp.add_argument("--suffix-length", type=int, default=lexicon.DEFAULT_SUFFIX_LENGTH)
    sp.add_argument("--end-tag", default=corpus.DEFAULT_END_TAG)

    sp = add("compile", cmd_compile, "compile an HMMv1 model into a b-type FSTv1 transducer")
    sp.add_argument("model")
    sp.add_argument("--beta", type=int, required=True)
    sp.add_argument("--alpha", type=int, required=True)
    sp.add_argument("-o", "--out", required=True)
    sp.add_argument("--budget", type=int, help="state budget (default $BFST_BUDGET or 200000)")
    sp.add_argument("--strip", choices=("traversal", "compose"), default="traversal")
    sp.add_argument("--report", help="also write the build report as key<TAB>value lines")

    for name, fn, help in (("tag", cmd_tag, "tag tokens, one per line"),
                           ("eval", cmd_eval, "score tagging against gold tags and the HMM"),
                           ("stats", cmd_stats, "histogram of tagging results per sentence")):
        sp = add(name, fn, help)
        sp.add_argument("-m", "--model", required=True, help="prefix given to 'train'")
        sp.add_argument("--end-tag", default=corpus.DEFAULT_END_TAG)
        if name == "stats":
            sp.add_argument("--fst", required=True)
        else:
            sp.add_argument("--fst", help="tag with this transducer instead of the HMM")
        if name == "tag":
            sp.add_argument("input", nargs="?", default="-")
            sp.add_argument("--mode", choices=MODES, default="first")
            sp.add_argument("--show-classes", action="store_true")
        else:
            src = sp.add_mutually_exclusive_group(required=True)
            src.add_argument("--corpus", help="'word<TAB>tag' corpus")
            if name == "stats":
                src.add_argument("--tokens", help="untagged tokens, one per line")
            sp.add_argument("--class-words", action="store_true",
                            help="the word column holds class names (sampled corpora)")
            sp.add_argument("--records", action="store_true", help="key<TAB>value output")
            if name == "eval":
                sp.add_argument("--count", action="store_true", help="add the result-count histogram")

    sp = add("sample", cmd_sample, "sample a tagged corpus from an HMMv1 model")
    sp.add_argument("model")
    sp.add_argument("--tokens", type=int, required=True)
    sp.add_argument("--seed", type=int, help="default $BFST_SEED or 0")
    sp.add_argument("--end-tag", default=corpus.DEFAULT_END_TAG)
    sp.add_argument("-o", "--out")
    return p


_IO_ERRORS = (OSError, UnicodeDecodeError, F.FstError, hmm.HmmError, lexicon.LexiconError,
              corpus.CorpusError, TaggerError, EvalError)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("bfst: a subcommand is required (train, compile, tag, eval, stats, sample)")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except btype.ConfigError as exc:
        print(f"bfst: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"bfst: not computable: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _IO_ERRORS as exc:
        print(f"bfst: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
