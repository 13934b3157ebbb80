"""L*-style learning of max-plus WFAs with row- and column-closed tables.

The learner keeps a Hankel table ``H(P, S)`` and grows it until

* every row ``H(pσ, S)`` is a max-plus combination of the rows of
  ``H(P, S)`` (row-closed), and
* every column ``H(P, σs)`` is a combination of its columns (column-closed).

A hypothesis built from such a table agrees with every membership answer
stored in it. The ``van-heerdt`` and ``hybrid`` variants skip the column
pass; they exist for comparison and the hybrid one can stall.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .hankel import HankelTable
from .linalg import Matrix, Vector, combination_coeffs, mat_mul, mat_vec, solve_matrix, solve_row, vec_mat
from .oracles import BoundedEquivalence, EquivalenceOracle, QueryLog, wfa_membership
from .semiring import DomainError, Scalar
from .wfa import EPSILON, Wfa, Word, evaluate, format_word, shortlex_key, unit_vector

__all__ = [
    "Variant",
    "LearnConfig",
    "LearnStats",
    "LearnOutcome",
    "BudgetExhausted",
    "enclose_row",
    "enclose_column",
    "build_hypothesis",
    "extract",
    "counterexample_suffix",
    "process_counterexample",
    "learn",
    "learn_wfa",
    "row_solutions",
    "column_solutions",
    "unfaithful_cells",
    "exchange_holds",
    "shifting_holds",
    "reduce",
]

log = logging.getLogger(__name__)


class Variant(str, enum.Enum):
    COLUMN_CLOSED = "column-closed"
    VAN_HEERDT = "van-heerdt"
    HYBRID = "hybrid"


@dataclass
class LearnConfig:
    variant: Variant = Variant.COLUMN_CLOSED
    eq_max_len: int = 6
    max_rows: int = 50
    max_cols: int = 50
    max_iterations: int = 200
    # the hybrid variant is unsound and must be asked for explicitly
    allow_unsound: bool = False
    initial_rows: Sequence[Word] = (EPSILON,)
    initial_cols: Sequence[Word] = (EPSILON,)
    log: Optional[Callable[..., None]] = None
    on_hypothesis: Optional[Callable[[Wfa, HankelTable], None]] = None

    def __post_init__(self):
        self.variant = Variant(self.variant)
        if self.variant is Variant.HYBRID and not self.allow_unsound:
            raise ValueError("the hybrid variant is unsound; pass allow_unsound=True to run it")
        if min(self.max_rows, self.max_cols, self.max_iterations) <= 0:
            raise ValueError("budgets must be positive")
        if self.eq_max_len < 0:
            raise ValueError("eq_max_len must be nonnegative")

    def emit(self, kind: str, **fields) -> None:
        if self.log is not None:
            self.log(kind, **fields)


class BudgetExhausted(Exception):
    """Raised inside the learner; :func:`learn` turns it into an outcome."""

    def __init__(self, kind: str, detail: str):
        super().__init__(f"{kind} budget exhausted: {detail}")
        self.kind = kind
        self.detail = detail


@dataclass
class LearnStats:
    membership_queries: int = 0
    equivalence_queries: int = 0
    iterations: int = 0
    enclose_iterations: int = 0
    rows_added: int = 0
    cols_added: int = 0


@dataclass
class LearnOutcome:
    status: str  # "converged" or "budget_exhausted"
    wfa: Optional[Wfa]
    P: tuple
    S: tuple
    stats: LearnStats
    eq_max_len: int
    budget: Optional[str] = None  # "rows", "cols", "iterations" or "stalled"
    trace: list = field(default_factory=list)
    table: Optional[HankelTable] = None

    @property
    def converged(self) -> bool:
        return self.status == "converged"


def _candidates(words: Iterable[Word], alphabet) -> list[Word]:
    return sorted(set(words), key=lambda w: shortlex_key(w, alphabet))


def _check_budget(size: int, limit: int, kind: str, word: Word) -> None:
    if size >= limit:
        raise BudgetExhausted(kind, f"would add {format_word(word)} beyond {limit}")


def enclose_row(table: HankelTable, cfg: LearnConfig, trace: list | None = None) -> bool:
    """Add rows ``pσ`` until ``H(P, S)`` is row-closed. True iff P grew."""
    updated = False
    while True:
        H = table.block()
        adding = None
        pset = set(table.P)
        for c in _candidates((p + (a,) for p in table.P for a in table.alphabet), table.alphabet):
            if c in pset:
                continue
            target = Vector([table.entry(c, s) for s in table.S], table.S)
            if solve_row(H, target) is None:
                adding = c
                break
        if adding is None:
            return updated
        _check_budget(len(table.P), cfg.max_rows, "rows", adding)
        table.add_row(adding)
        updated = True
        cfg.emit("row_added", word=list(adding), rows=len(table.P))
        if trace is not None:
            trace.append(f"row + {format_word(adding)}")


def enclose_column(table: HankelTable, cfg: LearnConfig, trace: list | None = None) -> bool:
    """Add columns ``σs`` until ``H(P, S)`` is column-closed. True iff S grew."""
    updated = False
    while True:
        Ht = table.block().T
        adding = None
        sset = set(table.S)
        for c in _candidates(((a,) + s for a in table.alphabet for s in table.S), table.alphabet):
            if c in sset:
                continue
            target = Vector([table.entry(p, c) for p in table.P], table.P)
            if solve_row(Ht, target) is None:
                adding = c
                break
        if adding is None:
            return updated
        _check_budget(len(table.S), cfg.max_cols, "cols", adding)
        table.add_col(adding)
        updated = True
        cfg.emit("column_added", word=list(adding), cols=len(table.S))
        if trace is not None:
            trace.append(f"col + {format_word(adding)}")


def row_solutions(table: HankelTable) -> dict[str, Optional[Matrix]]:
    """Principal ``X_σ`` with ``X_σ H(P, S) = H(Pσ, S)``, or None per symbol."""
    H = table.block()
    return {a: solve_matrix(H, table.shifted_rows(a)) for a in table.alphabet}


def column_solutions(table: HankelTable) -> dict[str, Optional[Matrix]]:
    """Principal ``Y_σ`` with ``H(P, S) Y_σ = H(P, σS)``, or None per symbol."""
    Ht = table.block().T
    out = {}
    for a in table.alphabet:
        Yt = solve_matrix(Ht, table.shifted_cols(a).T)
        out[a] = None if Yt is None else Yt.T
    return out


def build_hypothesis(table: HankelTable) -> Wfa:
    """Automaton with one state per row of a row-closed table.

    Initial vector is the unit at ε, final vector is the ε column, and each
    transition matrix is the principal solution of ``X H(P, S) = H(Pσ, S)``.
    """
    P = table.P
    H = table.block()
    trans = {}
    for a in table.alphabet:
        X = solve_matrix(H, table.shifted_rows(a), strict=True)
        trans[a] = X
    return Wfa(table.alphabet, unit_vector(P, EPSILON), H.col(EPSILON), trans, P)


def extract(table: HankelTable, cfg: LearnConfig, stats: LearnStats | None = None,
            trace: list | None = None) -> Wfa:
    """Close the table as the variant requires, then build the hypothesis."""
    stats = stats if stats is not None else LearnStats()
    if cfg.variant is Variant.COLUMN_CLOSED:
        while True:
            stats.enclose_iterations += 1
            r = enclose_row(table, cfg, trace)
            c = enclose_column(table, cfg, trace)
            if not (r or c):
                break
    else:
        stats.enclose_iterations += 1
        enclose_row(table, cfg, trace)
    hyp = build_hypothesis(table)
    cfg.emit("extract", rows=len(table.P), cols=len(table.S), states=hyp.n_states)
    if trace is not None:
        trace.append(f"extract |P|={len(table.P)} |S|={len(table.S)}")
    if cfg.on_hypothesis is not None:
        cfg.on_hypothesis(hyp, table)
    return hyp


def counterexample_suffix(w: Word, P: Iterable[Word]) -> Word:
    """Split ``w = p σ s`` with p its longest prefix in P; return ``s``.

    When ``w`` itself is in P the result is ε.
    """
    pset = set(P)
    k = max(i for i in range(len(w) + 1) if w[:i] in pset)
    n = len(w) - 1 - k
    return w[len(w) - n:] if n > 0 else EPSILON


def process_counterexample(table: HankelTable, w: Word, variant: Variant) -> bool:
    """Grow S from a counterexample; True iff S changed."""
    w = tuple(w)
    if Variant(variant) is Variant.VAN_HEERDT:
        return table.add_suffixes(w)
    return table.add_suffixes(counterexample_suffix(w, table.P))


def learn(
    alphabet: Sequence[str],
    membership: Callable[[Word], Scalar],
    equivalence: EquivalenceOracle,
    cfg: LearnConfig | None = None,
) -> LearnOutcome:
    """Run the learning loop until Eq., a budget runs out, or a stall."""
    cfg = cfg or LearnConfig()
    table = HankelTable(alphabet, membership, cfg.initial_rows, cfg.initial_cols)
    stats = LearnStats()
    trace: list[str] = []
    hyp: Optional[Wfa] = None
    status, budget = "converged", None
    last: Optional[Word] = None
    try:
        hyp = extract(table, cfg, stats, trace)
        while True:
            if stats.iterations >= cfg.max_iterations:
                raise BudgetExhausted("iterations", f"{cfg.max_iterations} equivalence rounds")
            stats.iterations += 1
            res = equivalence(hyp)
            stats.equivalence_queries += 1
            if res is None:
                cfg.emit("equivalence", result="Eq.")
                trace.append("Eq.")
                break
            res = tuple(res)
            n_cols = len(table.S)
            changed = process_counterexample(table, res, cfg.variant)
            cfg.emit("equivalence", result="counterexample", word=list(res), mask_changed=changed)
            trace.append(f"cex {format_word(res)}" + ("" if changed else " (mask unchanged)"))
            if not changed:
                if last == res:
                    raise BudgetExhausted(
                        "stalled", f"counterexample {format_word(res)} repeated with no change to the table"
                    )
                last = res
                continue
            last = None
            if len(table.S) > cfg.max_cols:
                raise BudgetExhausted("cols", f"counterexample grew S from {n_cols} to {len(table.S)}")
            hyp = extract(table, cfg, stats, trace)
    except BudgetExhausted as b:
        status, budget = "budget_exhausted", b.kind
        trace.append(str(b))
        cfg.emit("budget_exhausted", budget=b.kind, detail=b.detail)
        log.info("learning stopped: %s", b)
    stats.membership_queries = table.query_count
    stats.rows_added = len(table.P) - len(tuple(cfg.initial_rows))
    stats.cols_added = len(table.S) - len(tuple(cfg.initial_cols))
    return LearnOutcome(status, hyp, table.P, table.S, stats, cfg.eq_max_len, budget, trace, table)


def learn_wfa(target: Wfa, cfg: LearnConfig | None = None, query_log: QueryLog | None = None) -> LearnOutcome:
    """Learn ``target`` through a membership oracle and bounded equivalence."""
    cfg = cfg or LearnConfig()
    m = wfa_membership(target, query_log)
    e = BoundedEquivalence(target, cfg.eq_max_len, query_log)
    return learn(target.alphabet, m, e, cfg)


# -- diagnostics --------------------------------------------------------------

def unfaithful_cells(hyp: Wfa, table: HankelTable) -> list[tuple[Word, Word]]:
    """Cells ``(p, s)`` of the table where ``hyp(p·s)`` differs from the entry."""
    return [
        (p, s)
        for p in table.P
        for s in table.S
        if evaluate(hyp, p + s) != table.entry(p, s)
    ]


def exchange_holds(table: HankelTable) -> bool:
    """``X_σ H = H Y_σ`` for the principal solutions, for every σ."""
    H = table.block()
    X, Y = row_solutions(table), column_solutions(table)
    for a in table.alphabet:
        if X[a] is None or Y[a] is None:
            return False
        if mat_mul(X[a], H).rows != mat_mul(H, Y[a]).rows:
            return False
    return True


def shifting_holds(table: HankelTable, *, columns: bool = True) -> bool:
    """Check the shifting identities on every applicable split.

    Rows: ``(X_{s1} ... X_{sn} H)(:, w) = H(:, sw)`` whenever ``sw ∈ S``.
    Columns (needs column-closedness): ``(H Y_{p1} ... Y_{pn})(w, :) = H(wp, :)``
    whenever ``wp ∈ P``.
    """
    H = table.block()
    X = row_solutions(table)
    if any(m is None for m in X.values()):
        return False
    for t in table.S:
        for k in range(len(t) + 1):
            s, w = t[:k], t[k:]
            M = H
            for a in reversed(s):
                M = mat_mul(X[a], M)
            if M.col(w).entries != H.col(t).entries:
                return False
    if not columns:
        return True
    Y = column_solutions(table)
    if any(m is None for m in Y.values()):
        return False
    for t in table.P:
        for k in range(len(t) + 1):
            w, p = t[:k], t[k:]
            M = H
            for a in p:
                M = mat_mul(M, Y[a])
            if M.row(w).entries != H.row(t).entries:
                return False
    return True


def reduce(A: Wfa, H: Matrix, candidates: Iterable[Word] | None = None) -> Wfa:
    """Drop states whose table rows are combinations of the other rows.

    ``H`` is the table the automaton was built from, with one row per state
    in state order. Rows are swept in axis order and removed one at a time;
    ``candidates`` restricts which rows may be removed. With survivors
    ``1..n``, ``C`` maps every row to its coefficients over the survivors and
    ``D`` selects the survivors; the result is ``(αC, Dβ, D A_σ C)``.
    """
    if tuple(H.row_axis) != tuple(A.states):
        raise DomainError("table rows must match the automaton's states")
    allowed = None if candidates is None else {tuple(c) for c in candidates}
    alive = list(H.row_axis)
    removed = True
    while removed:
        removed = False
        for r in alive:
            if allowed is not None and r not in allowed:
                continue
            others = [H.row(q) for q in alive if q != r]
            if others and combination_coeffs(others, H.row(r)) is not None:
                alive.remove(r)
                removed = True
                break
    if len(alive) == len(H.row_axis):
        return A
    survivors = Matrix.from_rows([H.row(q) for q in alive], alive)
    C_rows = []
    for r in H.row_axis:
        if r in alive:
            C_rows.append(unit_vector(alive, r).entries)
        else:
            c = solve_row(survivors, H.row(r))
            assert c is not None, "removed rows are combinations of the survivors"
            C_rows.append(c.entries)
    C = Matrix(C_rows, H.row_axis, alive)
    D = Matrix([unit_vector(H.row_axis, q).entries for q in alive], alive, H.row_axis)
    initial = vec_mat(A.initial, C)
    final = mat_vec(D, A.final)
    trans = {a: mat_mul(mat_mul(D, A.transitions[a]), C) for a in A.alphabet}
    return Wfa(A.alphabet, initial, final, trans, tuple(alive))
