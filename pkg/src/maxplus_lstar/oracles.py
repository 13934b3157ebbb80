"""Teachers: membership and equivalence oracles backed by a target WFA."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, TextIO

from .semiring import Scalar
from .wfa import Wfa, Word, evaluate, format_word, words_upto

__all__ = [
    "QueryLog",
    "MembershipOracle",
    "wfa_membership",
    "bounded_equivalence",
    "BoundedEquivalence",
    "ScriptedEquivalence",
    "ScriptError",
]

# An equivalence oracle maps a hypothesis to None (meaning "Eq.") or to a
# counterexample word.
EquivalenceOracle = Callable[[Wfa], Optional[Word]]


@dataclass
class QueryLog:
    """Append-only record of oracle traffic.

    ``seq`` is a logical clock, so logs of identical runs are identical.
    """

    records: list[dict] = field(default_factory=list)
    membership_count: int = 0
    equivalence_count: int = 0

    def membership(self, w: Word, answer: Scalar) -> None:
        self.membership_count += 1
        self._append("membership", w, str(answer))

    def equivalence(self, answer: Optional[Word]) -> None:
        self.equivalence_count += 1
        self._append("equivalence", answer, "Eq." if answer is None else "counterexample")

    def _append(self, kind: str, w: Optional[Word], answer: str) -> None:
        self.records.append(
            {
                "seq": len(self.records),
                "kind": kind,
                "word": None if w is None else list(w),
                "answer": answer,
                "membership_count": self.membership_count,
                "equivalence_count": self.equivalence_count,
            }
        )

    def event(self, kind: str, **fields) -> None:
        """Learner-side record (row/column additions, extract snapshots)."""
        self.records.append({"seq": len(self.records), "kind": kind, **fields})

    def write(self, fh: TextIO) -> None:
        for r in self.records:
            fh.write(json.dumps(r, ensure_ascii=False) + "\n")

    def replay(self, target: Wfa) -> bool:
        """True iff every logged membership answer matches ``target``."""
        return all(
            str(evaluate(target, tuple(r["word"]))) == r["answer"]
            for r in self.records
            if r["kind"] == "membership"
        )


class MembershipOracle:
    """Wraps a query function, counting calls and optionally logging them."""

    def __init__(self, query: Callable[[Word], Scalar], log: QueryLog | None = None):
        self.query = query
        self.log = log
        self.count = 0

    def __call__(self, w: Word) -> Scalar:
        answer = self.query(tuple(w))
        self.count += 1
        if self.log is not None:
            self.log.membership(w, answer)
        return answer


def wfa_membership(target: Wfa, log: QueryLog | None = None) -> MembershipOracle:
    return MembershipOracle(lambda w: evaluate(target, w), log)


def bounded_equivalence(target: Wfa, hyp: Wfa, max_len: int) -> Optional[Word]:
    """First word (shortlex) of length <= max_len where the two disagree."""
    if tuple(target.alphabet) != tuple(hyp.alphabet):
        raise ValueError("target and hypothesis have different alphabets")
    for w in words_upto(target.alphabet, max_len):
        if evaluate(target, w) != evaluate(hyp, w):
            return w
    return None


class BoundedEquivalence:
    """Sound but incomplete equivalence oracle: exhaustive up to ``max_len``."""

    def __init__(self, target: Wfa, max_len: int, log: QueryLog | None = None):
        if max_len < 0:
            raise ValueError("max_len must be nonnegative")
        self.target = target
        self.max_len = max_len
        self.log = log
        self.count = 0

    def __call__(self, hyp: Wfa) -> Optional[Word]:
        w = bounded_equivalence(self.target, hyp, self.max_len)
        assert w is None or evaluate(self.target, w) != evaluate(hyp, w)
        self.count += 1
        if self.log is not None:
            self.log.equivalence(w)
        return w


class ScriptError(RuntimeError):
    """A scripted equivalence answer was exhausted or is not a true answer."""


class ScriptedEquivalence:
    """Replays fixed answers (``None`` meaning Eq.), checking each one.

    A scripted word must be a real counterexample for the hypothesis it is
    returned for; a scripted Eq. must agree with the target on every word up
    to ``validate_len``.
    """

    def __init__(
        self,
        target: Wfa,
        script: Sequence[Optional[Word]],
        validate_len: int = 4,
        log: QueryLog | None = None,
    ):
        if not script:
            raise ScriptError("empty script")
        self.target = target
        self.script = [None if w is None else tuple(w) for w in script]
        self.validate_len = validate_len
        self.log = log
        self.count = 0

    def __call__(self, hyp: Wfa) -> Optional[Word]:
        if self.count >= len(self.script):
            raise ScriptError(f"script exhausted after {self.count} answers")
        w = self.script[self.count]
        if w is None:
            bad = bounded_equivalence(self.target, hyp, self.validate_len)
            if bad is not None:
                raise ScriptError(f"scripted Eq. but the hypothesis differs at {format_word(bad)}")
        elif evaluate(self.target, w) == evaluate(hyp, w):
            raise ScriptError(f"scripted word {format_word(w)} is not a counterexample")
        self.count += 1
        if self.log is not None:
            self.log.equivalence(w)
        return w
