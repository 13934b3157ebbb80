"""Command-line front end: ``maxplus-lstar <command> ...``.

Exit codes
----------
0  success (learning converged, equivalence holds)
1  input error (unreadable file, malformed document or word)
2  usage error (bad flags)
3  ``equiv`` found a counterexample
4  row budget exhausted
5  column budget exhausted
6  iteration budget exhausted
7  learning stalled (counterexample repeated with no table change)
8  scripted equivalence oracle rejected or ran out
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Optional, Sequence

from .examples import HYBRID_TABLE_COLS, HYBRID_TABLE_ROWS, hybrid_divergence_wfa
from .hankel import HankelTable
from .learner import (
    LearnConfig,
    LearnOutcome,
    Variant,
    build_hypothesis,
    learn,
    reduce,
    unfaithful_cells,
)
from .linalg import Vector, combination_coeffs
from .oracles import BoundedEquivalence, QueryLog, ScriptedEquivalence, ScriptError, bounded_equivalence, wfa_membership
from .semiring import DomainError
from .wfa import ParseError, evaluate, format_word, load_wfa, parse_word, random_wfa, write_wfa

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_USAGE = 2
EXIT_DIFFERENT = 3
EXIT_BUDGET = {"rows": 4, "cols": 5, "iterations": 6, "stalled": 7}
EXIT_SCRIPT = 8


class UsageError(Exception):
    pass


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _words(texts: Sequence[str] | None, alphabet) -> list:
    return [parse_word(t, alphabet) for t in texts or ()]


def _summary(pairs: Sequence[tuple[str, object]]) -> None:
    for k, v in pairs:
        print(f"{k}: {v}")


def cmd_learn(args) -> int:
    target = load_wfa(args.target)
    variant = Variant(args.algorithm)
    if variant is Variant.HYBRID and not args.allow_unsound:
        raise UsageError("--algorithm hybrid is unsound; add --allow-unsound to run it")
    rows = [()] + _words(args.row, target.alphabet)
    cols = [()] + _words(args.col, target.alphabet)
    qlog = QueryLog()
    cfg = LearnConfig(
        variant=variant,
        eq_max_len=args.eq_max_len,
        max_rows=args.max_rows,
        max_cols=args.max_cols,
        max_iterations=args.max_iterations,
        allow_unsound=args.allow_unsound,
        initial_rows=tuple(dict.fromkeys(rows)),
        initial_cols=tuple(dict.fromkeys(cols)),
        log=qlog.event,
    )
    m = wfa_membership(target, qlog)
    if args.script:
        script = [None if s == "Eq." else parse_word(s, target.alphabet) for s in args.script]
        e = ScriptedEquivalence(target, script, validate_len=args.eq_max_len, log=qlog)
    else:
        e = BoundedEquivalence(target, args.eq_max_len, qlog)
    try:
        out = learn(target.alphabet, m, e, cfg)
    except ScriptError as err:
        print(f"script error: {err}", file=sys.stderr)
        _flush_log(args.log, qlog)
        return EXIT_SCRIPT
    _flush_log(args.log, qlog)
    if out.wfa is not None and args.out:
        _write_text(args.out, write_wfa(out.wfa))
    if args.table and out.table is not None:
        _write_text(args.table, out.table.dump())
    pairs = _outcome_pairs(out)
    if out.converged and variant is Variant.COLUMN_CLOSED:
        # re-read what was written so the check covers serialization too
        hyp = load_wfa(args.out) if args.out and args.out != "-" else out.wfa
        pairs.append(("faithful", "yes" if not unfaithful_cells(hyp, out.table) else "no"))
    _summary(pairs)
    if out.converged:
        return EXIT_OK
    for line in out.trace[-5:]:
        print(f"trace: {line}")
    return EXIT_BUDGET[out.budget]


def _flush_log(path: Optional[str], qlog: QueryLog) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            qlog.write(fh)


def _outcome_pairs(out: LearnOutcome) -> list:
    return [
        ("status", out.status if out.budget is None else f"{out.status} ({out.budget})"),
        ("rows", len(out.P)),
        ("cols", len(out.S)),
        ("states", out.wfa.n_states if out.wfa is not None else "-"),
        ("membership_queries", out.stats.membership_queries),
        ("equivalence_queries", out.stats.equivalence_queries),
        ("iterations", out.stats.iterations),
        ("eq_max_len", out.eq_max_len),
    ]


def cmd_eval(args) -> int:
    A = load_wfa(args.wfa)
    for text in args.words:
        print(evaluate(A, parse_word(text, A.alphabet)))
    return EXIT_OK


def cmd_equiv(args) -> int:
    A, B = load_wfa(args.left), load_wfa(args.right)
    if A.alphabet != B.alphabet:
        raise UsageError("the two automata have different alphabets")
    w = bounded_equivalence(A, B, args.max_len)
    if w is None:
        print("Eq.")
        return EXIT_OK
    print(f"counterexample: {format_word(w)} ({evaluate(A, w)} vs {evaluate(B, w)})")
    return EXIT_DIFFERENT


def cmd_minimize(args) -> int:
    target = load_wfa(args.target)
    cfg = LearnConfig(eq_max_len=args.eq_max_len, max_rows=args.max_rows, max_cols=args.max_cols)
    out = learn(target.alphabet, wfa_membership(target), BoundedEquivalence(target, args.eq_max_len), cfg)
    if not out.converged:
        _summary(_outcome_pairs(out))
        return EXIT_BUDGET[out.budget]
    small = reduce(out.wfa, out.table.block())
    if args.out:
        _write_text(args.out, write_wfa(small))
    check = bounded_equivalence(out.wfa, small, args.eq_max_len)
    _summary(
        [
            ("learned_states", out.wfa.n_states),
            ("reduced_states", small.n_states),
            ("same_language_upto", args.eq_max_len if check is None else f"no ({format_word(check)})"),
        ]
    )
    return EXIT_OK


def cmd_gen(args) -> int:
    alphabet = [a.strip() for a in args.alphabet.split(",") if a.strip()]
    if not alphabet or args.states <= 0 or args.low > args.high:
        raise UsageError("need a nonempty alphabet, --states > 0 and --low <= --high")
    if not 0.0 <= args.neg_inf_prob < 1.0:
        raise UsageError("--neg-inf-prob must be in [0, 1)")
    rng = random.Random(args.seed)
    A = random_wfa(rng, args.states, alphabet, args.low, args.high, args.neg_inf_prob)
    _write_text(args.out, write_wfa(A))
    return EXIT_OK


def cmd_demo(args) -> int:
    A = hybrid_divergence_wfa()
    table = HankelTable(A.alphabet, wfa_membership(A), HYBRID_TABLE_ROWS, HYBRID_TABLE_COLS)
    print("Hankel table H(P, S):")
    print(table.dump(), end="")
    print()
    print("Successor rows and their combinations:")
    H = table.block()
    basis = [H.row(p) for p in table.P]
    ext = sorted({p + (a,) for p in table.P for a in A.alphabet} - set(table.P), key=lambda w: (len(w), w))
    for w in ext:
        row = Vector([table.entry(w, s) for s in table.S], table.S)
        c = combination_coeffs(basis, row)
        comb = "none" if c is None else " ⊕ ".join(
            f"{x}⊗{format_word(p)}" for p, x in zip(table.P, c.entries) if x.is_finite
        )
        print(f"{format_word(w)}\t" + "\t".join(row.tokens()) + f"\t{comb}")
    print()
    hyp = build_hypothesis(table)
    ab = ("a", "b")
    print(f"target f(ab) = {evaluate(A, ab)}   table H(ab, ε) = {table.entry(ab, ())}")
    print(f"row-closed-only hypothesis f(ab) = {evaluate(hyp, ab)}")
    bad = unfaithful_cells(hyp, table)
    print("unfaithful cells: " + ", ".join(f"({format_word(p)}, {format_word(s)})" for p, s in bad))
    print()
    print("hybrid run with an oracle that keeps answering ab:")
    cfg = LearnConfig(
        variant=Variant.HYBRID,
        allow_unsound=True,
        initial_rows=HYBRID_TABLE_ROWS,
        initial_cols=HYBRID_TABLE_COLS,
    )
    out = learn(A.alphabet, wfa_membership(A), ScriptedEquivalence(A, [ab] * 3), cfg)
    for line in out.trace:
        print(f"  {line}")
    print()
    print("column-closed run from the same table:")
    cfg = LearnConfig(initial_rows=HYBRID_TABLE_ROWS, initial_cols=HYBRID_TABLE_COLS)
    out = learn(A.alphabet, wfa_membership(A), BoundedEquivalence(A, 6), cfg)
    for line in out.trace:
        print(f"  {line}")
    print(f"  final f(ab) = {evaluate(out.wfa, ab)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxplus-lstar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("learn", help="learn a target WFA through membership/equivalence queries")
    q.add_argument("--target", required=True)
    q.add_argument("--algorithm", choices=[v.value for v in Variant], default=Variant.COLUMN_CLOSED.value)
    q.add_argument("--allow-unsound", action="store_true", help="required for --algorithm hybrid")
    q.add_argument("--eq-max-len", type=int, default=6)
    q.add_argument("--max-rows", type=int, default=50)
    q.add_argument("--max-cols", type=int, default=50)
    q.add_argument("--max-iterations", type=int, default=200)
    q.add_argument("--row", action="append", help="extra initial row word (repeatable)")
    q.add_argument("--col", action="append", help="extra initial column word (repeatable)")
    q.add_argument("--script", action="append",
                   help="scripted equivalence answer, a word or Eq. (repeatable; replaces bounded testing)")
    q.add_argument("--out", help="write the learned WFA here")
    q.add_argument("--log", help="write the JSON-lines event log here")
    q.add_argument("--table", help="write the final Hankel table (TSV) here")
    q.set_defaults(func=cmd_learn)

    q = sub.add_parser("eval", help="print f(w) for each word")
    q.add_argument("wfa")
    q.add_argument("words", nargs="+")
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("equiv", help="bounded equivalence check of two WFAs")
    q.add_argument("left")
    q.add_argument("right")
    q.add_argument("--max-len", type=int, default=6)
    q.set_defaults(func=cmd_equiv)

    q = sub.add_parser("minimize", help="learn a target, then drop dependent states")
    q.add_argument("--target", required=True)
    q.add_argument("--eq-max-len", type=int, default=6)
    q.add_argument("--max-rows", type=int, default=50)
    q.add_argument("--max-cols", type=int, default=50)
    q.add_argument("--out")
    q.set_defaults(func=cmd_minimize)

    q = sub.add_parser("gen", help="write a seeded random WFA")
    q.add_argument("--states", type=int, default=3)
    q.add_argument("--alphabet", default="a,b")
    q.add_argument("--low", type=int, default=0)
    q.add_argument("--high", type=int, default=10)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--neg-inf-prob", type=float, default=0.0, help="chance of a -inf entry (default 0: rational)")
    q.add_argument("--out")
    q.set_defaults(func=cmd_gen)

    q = sub.add_parser("demo", help="walk through the hybrid-divergence example")
    q.set_defaults(func=cmd_demo)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("eq_max_len", "max_len"):
        if getattr(args, name, 0) < 0:
            parser.error(f"--{name.replace('_', '-')} must be nonnegative")
    for name in ("max_rows", "max_cols", "max_iterations"):
        if getattr(args, name, 1) <= 0:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, DomainError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
