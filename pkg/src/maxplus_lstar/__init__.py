"""Active learning of max-plus weighted automata with column-closed tables."""

from .semiring import NEG_INF, ONE, DomainError, Scalar, height, norm, oplus, otimes, scale
from .linalg import Matrix, Vector, mat_mul, principal_solution, solve_matrix, solve_row
from .wfa import EPSILON, ParseError, Wfa, configuration, evaluate, is_rational, read_wfa, write_wfa
from .hankel import HankelTable
from .oracles import BoundedEquivalence, QueryLog, ScriptedEquivalence, wfa_membership
from .learner import LearnConfig, LearnOutcome, Variant, extract, learn, learn_wfa, reduce

__version__ = "0.1.0"

__all__ = [
    "NEG_INF", "ONE", "DomainError", "Scalar", "height", "norm", "oplus", "otimes", "scale",
    "Matrix", "Vector", "mat_mul", "principal_solution", "solve_matrix", "solve_row",
    "EPSILON", "ParseError", "Wfa", "configuration", "evaluate", "is_rational", "read_wfa", "write_wfa",
    "HankelTable",
    "BoundedEquivalence", "QueryLog", "ScriptedEquivalence", "wfa_membership",
    "LearnConfig", "LearnOutcome", "Variant", "extract", "learn", "learn_wfa", "reduce",
]
