import random

import numpy as np
import pytest

from maxplus_lstar.examples import hybrid_divergence_wfa, non_terminating_wfa
from maxplus_lstar.semiring import Scalar

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
            terminalreporter.write_line(ACCEPTANCE[key])


@pytest.fixture
def wfa_a():
    return hybrid_divergence_wfa()


@pytest.fixture
def wfa_b():
    return non_terminating_wfa()


def to_float(x: Scalar) -> float:
    return float("-inf") if not x.is_finite else float(x.value)


def maxplus_np(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Float max-plus product; an oracle independent of the Scalar path."""
    if A.shape[1] == 0:
        return np.full((A.shape[0], B.shape[1]), -np.inf)
    return (A[:, :, None] + B[None, :, :]).max(axis=1)


def path_value(A, w) -> float:
    """f_A(w) by enumerating every state path, with floats."""
    import itertools

    d = A.n_states
    alpha = [to_float(x) for x in A.initial]
    beta = [to_float(x) for x in A.final]
    mats = {a: [[to_float(x) for x in r] for r in A.transitions[a].rows] for a in A.alphabet}
    best = float("-inf")
    for path in itertools.product(range(d), repeat=len(w) + 1):
        v = alpha[path[0]] + beta[path[-1]]
        for k, c in enumerate(w):
            v += mats[c][path[k]][path[k + 1]]
        best = max(best, v)
    return best


def rand_matrix(rng: random.Random, n: int, m: int, lo=-5, hi=5, neg_inf=0.0):
    return [
        [Scalar(None) if rng.random() < neg_inf else Scalar(rng.randint(lo, hi)) for _ in range(m)]
        for _ in range(n)
    ]
