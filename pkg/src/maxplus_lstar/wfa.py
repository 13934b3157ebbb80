"""Weighted finite automata over the max-plus semiring."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .linalg import Matrix, Vector, vec_mat
from .semiring import NEG_INF, ONE, DomainError, Scalar, height, height_matrix, oplus, otimes, scale

__all__ = [
    "Word",
    "EPSILON",
    "Wfa",
    "ParseError",
    "parse_word",
    "format_word",
    "words_upto",
    "shortlex_key",
    "unit_vector",
    "configuration",
    "evaluate",
    "is_rational",
    "read_wfa",
    "write_wfa",
    "load_wfa",
    "dump_wfa",
    "random_wfa",
    "scaled_configurations",
    "max_height",
]

Word = tuple  # tuple[str, ...]; the empty tuple is the empty word
EPSILON: Word = ()


class ParseError(ValueError):
    """A WFA document or word could not be read; ``where`` locates the problem."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def shortlex_key(w: Word, alphabet: Sequence[str]) -> tuple:
    rank = {a: i for i, a in enumerate(alphabet)}
    return (len(w), tuple(rank[c] for c in w))


def words_upto(alphabet: Sequence[str], max_len: int) -> Iterator[Word]:
    """All words of length <= max_len, in shortlex order."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def format_word(w: Word) -> str:
    if not w:
        return "ε"
    if all(len(c) == 1 for c in w):
        return "".join(w)
    return ",".join(w)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Read a word written as comma-separated symbols.

    Plain concatenation is accepted when every symbol is one character.
    ``""``, ``"ε"`` and ``"eps"`` denote the empty word.
    """
    alphabet = tuple(alphabet)
    t = text.strip()
    if t in ("", "ε", "eps"):
        return EPSILON
    if "," in t:
        w = tuple(s.strip() for s in t.split(","))
    elif t in alphabet:
        w = (t,)
    elif all(len(a) == 1 for a in alphabet):
        w = tuple(t)
    else:
        raise ParseError(f"ambiguous word {text!r}: separate multi-character symbols with commas")
    for c in w:
        if c not in alphabet:
            raise ParseError(f"symbol {c!r} is not in the alphabet {list(alphabet)}")
    return w


def unit_vector(axis: Sequence, at) -> Vector:
    """0 at label ``at`` and -inf elsewhere."""
    return Vector([ONE if lab == at else NEG_INF for lab in axis], axis)


@dataclass(frozen=True)
class Wfa:
    """``f(w) = initial · A_{w1} ··· A_{wn} · final``.

    ``transitions[σ][i, j]`` is the weight of moving from state i to state j
    on σ. States are labelled by ``states`` (integers by default; the learner
    uses the prefix words of its table).
    """

    alphabet: tuple[str, ...]
    initial: Vector
    final: Vector
    transitions: Mapping[str, Matrix]
    states: tuple = field(default=())

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        if not alphabet:
            raise DomainError("empty alphabet")
        if len(set(alphabet)) != len(alphabet):
            raise DomainError("duplicate alphabet symbols")
        if any(not isinstance(a, str) or not a for a in alphabet):
            raise DomainError("alphabet symbols must be nonempty strings")
        if set(self.transitions) != set(alphabet):
            raise DomainError("exactly one transition matrix per symbol is required")
        d = len(self.initial)
        states = tuple(self.states) if self.states else tuple(range(d))
        if len(states) != d or len(self.final) != d:
            raise DomainError("initial and final vectors disagree on the number of states")
        for a in alphabet:
            if self.transitions[a].shape != (d, d):
                raise DomainError(f"transition matrix for {a!r} is not {d}x{d}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "initial", self.initial.relabel(states))
        object.__setattr__(self, "final", self.final.relabel(states))
        object.__setattr__(
            self, "transitions", {a: self.transitions[a].relabel(states, states) for a in alphabet}
        )

    @classmethod
    def from_lists(cls, alphabet, initial, final, transitions: Mapping[str, Sequence[Sequence]], states=()):
        return cls(
            tuple(alphabet),
            Vector(initial),
            Vector(final),
            {a: Matrix(m) for a, m in transitions.items()},
            tuple(states),
        )

    @property
    def n_states(self) -> int:
        return len(self.initial)

    def __call__(self, w: Word) -> Scalar:
        return evaluate(self, w)

    def __eq__(self, other: object) -> bool:
        # state labels are presentation only
        if not isinstance(other, Wfa):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.initial.entries == other.initial.entries
            and self.final.entries == other.final.entries
            and all(self.transitions[a].rows == other.transitions[a].rows for a in self.alphabet)
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.initial.entries, self.final.entries))


def _check_word(A: Wfa, w: Word) -> None:
    for c in w:
        if c not in A.transitions:
            raise DomainError(f"symbol {c!r} is not in the alphabet {list(A.alphabet)}")


def configuration(A: Wfa, w: Word) -> Vector:
    """State weights after reading ``w``."""
    _check_word(A, w)
    v = A.initial
    for c in w:
        v = vec_mat(v, A.transitions[c])
    return v


def evaluate(A: Wfa, w: Word) -> Scalar:
    v = configuration(A, w)
    acc = NEG_INF
    for x, y in zip(v.entries, A.final.entries):
        acc = oplus(acc, otimes(x, y))
    return acc


def is_rational(A: Wfa) -> bool:
    """True iff every weight of A is finite."""
    return (
        all(x.is_finite for x in A.initial)
        and all(x.is_finite for x in A.final)
        and all(m.all_finite() for m in A.transitions.values())
    )


def scaled_configurations(A: Wfa, max_len: int) -> set[tuple[Scalar, ...]]:
    """Distinct scaled configurations over all words up to ``max_len``.

    Words whose configuration is entirely -inf are skipped.
    """
    out = set()
    for w in words_upto(A.alphabet, max_len):
        v = configuration(A, w)
        if any(x.is_finite for x in v):
            out.add(tuple(scale(v)))
    return out


def max_height(A: Wfa) -> Scalar:
    """Largest height among the initial vector and the transition matrices."""
    hs = [height(A.initial)] + [height_matrix(m.rows) for m in A.transitions.values()]
    return max(hs)


# -- serialization ----------------------------------------------------------

def write_wfa(A: Wfa) -> str:
    """JSON document with one matrix row per line."""
    dump = lambda x: json.dumps(x, ensure_ascii=False)  # noqa: E731
    mats = []
    for a in A.alphabet:
        rows = ",\n".join(f"      {dump(r)}" for r in A.transitions[a].tokens())
        mats.append(f"    {dump(a)}: [\n{rows}\n    ]" if rows else f"    {dump(a)}: []")
    return (
        "{\n"
        f'  "alphabet": {dump(list(A.alphabet))},\n'
        f'  "initial": {dump(A.initial.tokens())},\n'
        f'  "final": {dump(A.final.tokens())},\n'
        '  "transitions": {\n' + ",\n".join(mats) + "\n  }\n"
        "}\n"
    )


def _scalars(value, where: str) -> list[Scalar]:
    if not isinstance(value, list):
        raise ParseError("expected an array of scalar tokens", where)
    out = []
    for i, tok in enumerate(value):
        if isinstance(tok, bool):
            raise ParseError(f"bad scalar token {tok!r}", f"{where}[{i}]")
        if isinstance(tok, int):
            tok = str(tok)
        if not isinstance(tok, str):
            raise ParseError(f"bad scalar token {tok!r}", f"{where}[{i}]")
        try:
            out.append(Scalar(tok))
        except DomainError:
            raise ParseError(f"unknown scalar token {tok!r}", f"{where}[{i}]") from None
    return out


def read_wfa(text: str, source: str = "<wfa>") -> Wfa:
    """Parse a WFA document. Errors carry the file and key path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"{source}:{e.lineno}:{e.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", source)
    for key in ("alphabet", "initial", "final", "transitions"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", source)
    alphabet = doc["alphabet"]
    if not isinstance(alphabet, list) or not all(isinstance(a, str) and a for a in alphabet):
        raise ParseError("alphabet must be an array of nonempty strings", f"{source}:alphabet")
    if not alphabet or len(set(alphabet)) != len(alphabet):
        raise ParseError("alphabet must be nonempty and duplicate-free", f"{source}:alphabet")
    initial = _scalars(doc["initial"], f"{source}:initial")
    final = _scalars(doc["final"], f"{source}:final")
    d = len(initial)
    if len(final) != d:
        raise ParseError(f"final has {len(final)} entries, initial has {d}", f"{source}:final")
    trans = doc["transitions"]
    if not isinstance(trans, dict):
        raise ParseError("transitions must be an object", f"{source}:transitions")
    extra = set(trans) - set(alphabet)
    if extra:
        raise ParseError(f"transitions for unknown symbols {sorted(extra)}", f"{source}:transitions")
    mats = {}
    for a in alphabet:
        where = f"{source}:transitions.{a}"
        if a not in trans:
            raise ParseError("missing transition matrix", where)
        rows = trans[a]
        if not isinstance(rows, list) or len(rows) != d:
            raise ParseError(f"expected {d} rows", where)
        grid = []
        for i, row in enumerate(rows):
            r = _scalars(row, f"{where}[{i}]")
            if len(r) != d:
                raise ParseError(f"expected {d} entries, got {len(r)}", f"{where}[{i}]")
            grid.append(r)
        mats[a] = Matrix(grid)
    return Wfa(tuple(alphabet), Vector(initial), Vector(final), mats)


def load_wfa(path) -> Wfa:
    with open(path, encoding="utf-8") as fh:
        return read_wfa(fh.read(), str(path))


def dump_wfa(A: Wfa, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_wfa(A))


def random_wfa(
    rng: random.Random,
    n_states: int,
    alphabet: Sequence[str] = ("a", "b"),
    low: int = 0,
    high: int = 10,
    neg_inf_prob: float = 0.0,
) -> Wfa:
    """Uniform integer weights in [low, high]; optionally some -inf entries."""

    def draw():
        if neg_inf_prob and rng.random() < neg_inf_prob:
            return NEG_INF
        return Scalar(rng.randint(low, high))

    initial = [draw() for _ in range(n_states)]
    final = [draw() for _ in range(n_states)]
    mats = {a: [[draw() for _ in range(n_states)] for _ in range(n_states)] for a in alphabet}
    return Wfa.from_lists(alphabet, initial, final, mats)
