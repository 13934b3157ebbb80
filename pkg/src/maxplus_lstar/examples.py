"""Automata used as running examples and regression targets."""

from __future__ import annotations

from .semiring import NEG_INF
from .wfa import Wfa

__all__ = ["hybrid_divergence_wfa", "non_terminating_wfa", "HYBRID_TABLE_ROWS", "HYBRID_TABLE_COLS"]

# A 3-state automaton that both sound variants learn but the hybrid one
# does not, together with the row-closed, non-column-closed table on which
# the hybrid variant stalls.
HYBRID_TABLE_ROWS = ((), ("a",), ("a", "b"), ("b",))
HYBRID_TABLE_COLS = ((), ("a",))


def hybrid_divergence_wfa() -> Wfa:
    return Wfa.from_lists(
        ("a", "b"),
        [6, 11, 1],
        [7, 0, 6],
        {
            "a": [[2, 3, 1], [2, 0, 9], [3, 0, 8]],
            "b": [[9, 6, 2], [10, 3, 2], [8, 5, 4]],
        },
    )


def non_terminating_wfa() -> Wfa:
    """f(a^n) = 0, f(a^n b) = n, f(a^n c) = 2n.

    The rows of its Hankel matrix are not generated by any finite set of
    rows, so row-closing never finishes.
    """
    N = NEG_INF
    return Wfa.from_lists(
        ("a", "b", "c"),
        [0, 0, 0],
        [0, N, N],
        {
            "a": [[0, N, N], [N, 1, N], [N, N, 2]],
            "b": [[N, N, N], [0, N, N], [N, N, N]],
            "c": [[N, N, N], [N, N, N], [0, N, N]],
        },
    )
