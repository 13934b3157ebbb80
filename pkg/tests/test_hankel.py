import pytest

from maxplus_lstar.examples import HYBRID_TABLE_COLS, HYBRID_TABLE_ROWS
from maxplus_lstar.hankel import HankelTable, suffixes
from maxplus_lstar.oracles import wfa_membership
from maxplus_lstar.semiring import DomainError, Scalar

S = Scalar


def test_suffixes():
    assert suffixes(("a", "b", "a")) == [(), ("a",), ("b", "a"), ("a", "b", "a")]
    assert suffixes(()) == [()]


def test_table_entries_and_memo(wfa_a):
    oracle = wfa_membership(wfa_a)
    t = HankelTable(wfa_a.alphabet, oracle, HYBRID_TABLE_ROWS, HYBRID_TABLE_COLS)
    assert t.block().rows == ((S(13), S(26)), (S(26), S(34)), (S(35), S(40)), (S(28), S(30)))
    # 8 cells but a·ε and ε·a are the same word
    assert oracle.count == t.query_count == 7
    t.block()
    t.shifted_rows("a")
    assert t.shifted_rows("a").row_axis == t.P
    assert oracle.count == t.query_count


def test_shifted_blocks_agree_with_hankel_identity(wfa_a):
    t = HankelTable(wfa_a.alphabet, wfa_membership(wfa_a), HYBRID_TABLE_ROWS, HYBRID_TABLE_COLS)
    for a in t.alphabet:
        R, C = t.shifted_rows(a), t.shifted_cols(a)
        for p in t.P:
            for s in t.S:
                assert R[p, s] == wfa_a(p + (a,) + s)
                assert C[p, s] == wfa_a(p + (a,) + s)


def test_closure_invariants(wfa_a):
    t = HankelTable(wfa_a.alphabet, wfa_membership(wfa_a))
    assert t.mask() == (((),), ((),))
    assert t.add_row(("a",))
    assert not t.add_row(("a",))
    with pytest.raises(DomainError):
        t.add_row(("b", "a"))
    with pytest.raises(DomainError):
        t.add_col(("a", "b"))
    assert t.add_suffixes(("a", "b", "a"))
    assert t.S == ((), ("a",), ("b", "a"), ("a", "b", "a"))
    assert not t.add_suffixes(("b", "a"))
    for p in t.P:
        assert p[:-1] in t.P or not p
    for s in t.S:
        assert s[1:] in t.S or not s


def test_bad_initial_mask(wfa_a):
    m = wfa_membership(wfa_a)
    with pytest.raises(DomainError):
        HankelTable("ab", m, rows=[("a",)])
    with pytest.raises(DomainError):
        HankelTable("ab", m, rows=[(), ("a", "b")])
    with pytest.raises(DomainError):
        HankelTable("ab", m, cols=[(), ("a", "b")])


def test_dump(wfa_a):
    t = HankelTable(wfa_a.alphabet, wfa_membership(wfa_a), HYBRID_TABLE_ROWS, HYBRID_TABLE_COLS)
    lines = t.dump().splitlines()
    assert lines[0] == "P\\S\tε\ta"
    assert lines[3] == "ab\t35\t40"
