import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxplus_lstar.examples import HYBRID_TABLE_COLS, HYBRID_TABLE_ROWS
from maxplus_lstar.hankel import HankelTable
from maxplus_lstar.learner import (
    LearnConfig,
    Variant,
    build_hypothesis,
    column_solutions,
    counterexample_suffix,
    enclose_column,
    enclose_row,
    exchange_holds,
    extract,
    learn,
    learn_wfa,
    process_counterexample,
    reduce,
    row_solutions,
    shifting_holds,
    unfaithful_cells,
)
from maxplus_lstar.oracles import BoundedEquivalence, bounded_equivalence, wfa_membership
from maxplus_lstar.semiring import Scalar
from maxplus_lstar.wfa import random_wfa

S = Scalar
AB = ("a", "b")


def worked_table(A):
    return HankelTable(A.alphabet, wfa_membership(A), HYBRID_TABLE_ROWS, HYBRID_TABLE_COLS)


def test_config_validation():
    with pytest.raises(ValueError):
        LearnConfig(variant="hybrid")
    assert LearnConfig(variant="hybrid", allow_unsound=True).variant is Variant.HYBRID
    with pytest.raises(ValueError):
        LearnConfig(max_rows=0)
    with pytest.raises(ValueError):
        LearnConfig(eq_max_len=-1)
    with pytest.raises(ValueError):
        LearnConfig(variant="nope")


@pytest.mark.parametrize(
    "w, P, want",
    [
        (AB, HYBRID_TABLE_ROWS, ()),
        (("a", "b", "a"), [(), ("a",)], ("a",)),
        (("b", "b", "a", "b"), [()], ("b", "a", "b")),
        ((), [()], ()),
    ],
)
def test_counterexample_suffix(w, P, want):
    assert counterexample_suffix(w, P) == want


def test_process_counterexample_variants(wfa_a):
    t = worked_table(wfa_a)
    assert not process_counterexample(t, AB, Variant.HYBRID)
    assert t.S == HYBRID_TABLE_COLS
    assert process_counterexample(t, AB, Variant.VAN_HEERDT)
    assert t.S == ((), ("a",), ("b",), AB)
    t = HankelTable("ab", wfa_membership(wfa_a), [(), ("a",)])
    assert process_counterexample(t, ("a", "b", "a"), Variant.COLUMN_CLOSED)
    assert t.S == ((), ("a",))


def test_enclose_row_makes_row_closed(wfa_a):
    t = HankelTable(wfa_a.alphabet, wfa_membership(wfa_a))
    trace = []
    enclose_row(t, LearnConfig(), trace)
    assert all(x is not None for x in row_solutions(t).values())
    # additions happen one at a time in shortlex order
    added = [line.split()[-1] for line in trace]
    assert added == sorted(added, key=lambda w: (len(w), w))


def test_enclose_column_makes_column_closed(wfa_a):
    t = worked_table(wfa_a)
    assert any(y is None for y in column_solutions(t).values())
    assert enclose_column(t, LearnConfig())
    assert all(y is not None for y in column_solutions(t).values())
    for s in t.S:
        assert s[1:] in t.S or not s


def test_row_closed_only_hypothesis_is_unfaithful(wfa_a):
    t = worked_table(wfa_a)
    hyp = build_hypothesis(t)
    assert hyp(AB) == S(36)
    assert t.entry(AB, ()) == S(35)
    assert unfaithful_cells(hyp, t) == [(AB, ())]


def test_principal_transitions_on_worked_table(wfa_a):
    X = row_solutions(worked_table(wfa_a))["a"]
    assert X.tokens() == [["8", "0", "-9", "-2"], ["16", "8", "-1", "6"], ["22", "14", "5", "12"],
                          ["13", "4", "-5", "2"]]


def test_column_closed_from_worked_table_is_faithful(wfa_a):
    t = worked_table(wfa_a)
    hyp = extract(t, LearnConfig())
    assert unfaithful_cells(hyp, t) == []
    assert hyp(AB) == S(35)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from([Variant.VAN_HEERDT, Variant.HYBRID]))
def test_row_closed_only_reads_first_row(seed, variant):
    # without column-closedness the hypothesis still reproduces H(ε, s)
    target = random_wfa(random.Random(seed), 2)
    seen = []

    def check(hyp, table):
        for s in table.S:
            seen.append(hyp(s) == table.entry((), s))

    cfg = LearnConfig(variant=variant, allow_unsound=True, max_iterations=5, on_hypothesis=check)
    learn(target.alphabet, wfa_membership(target), BoundedEquivalence(target, 4), cfg)
    assert seen and all(seen)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000))
def test_column_closed_hypotheses_are_faithful(seed):
    target = random_wfa(random.Random(seed), 3)
    bad = []
    cfg = LearnConfig(on_hypothesis=lambda h, t: bad.extend(unfaithful_cells(h, t)))
    out = learn_wfa(target, cfg)
    assert out.converged and not bad
    assert exchange_holds(out.table)
    assert shifting_holds(out.table)


def test_van_heerdt_learns_a(wfa_a):
    out = learn_wfa(wfa_a, LearnConfig(variant=Variant.VAN_HEERDT))
    assert out.converged
    assert bounded_equivalence(wfa_a, out.wfa, 6) is None


def test_budgets_are_reported(wfa_a, wfa_b):
    out = learn_wfa(wfa_b, LearnConfig(max_rows=5))
    assert out.status == "budget_exhausted" and out.budget == "rows"
    assert len(out.P) == 5
    out = learn_wfa(wfa_a, LearnConfig(max_iterations=1, eq_max_len=6))
    assert out.converged or out.budget == "iterations"
    out = learn_wfa(random_wfa(random.Random(19), 3), LearnConfig(max_cols=1))
    assert out.budget == "cols"


def test_stats(wfa_a):
    out = learn_wfa(wfa_a)
    assert out.stats.membership_queries == out.table.query_count
    assert out.stats.rows_added == len(out.P) - 1
    assert out.stats.cols_added == len(out.S) - 1
    assert out.stats.equivalence_queries == out.stats.iterations


def test_reduce_on_worked_table(wfa_a):
    t = worked_table(wfa_a)
    hyp = build_hypothesis(t)
    three = reduce(hyp, t.block(), candidates=[AB])
    assert three.states == ((), ("a",), ("b",))
    two = reduce(hyp, t.block())
    assert two.n_states == 2
    for r in (three, two):
        assert bounded_equivalence(hyp, r, 6) is None


def test_reduce_keeps_independent_tables(wfa_a):
    out = learn_wfa(wfa_a)
    assert reduce(out.wfa, out.table.block()) is out.wfa


def test_reduce_rejects_foreign_table(wfa_a):
    t = worked_table(wfa_a)
    with pytest.raises(ValueError):
        reduce(wfa_a, t.block())
