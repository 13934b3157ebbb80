"""Hankel tables backed by a memoized membership oracle."""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .linalg import Matrix
from .semiring import DomainError, Scalar
from .wfa import EPSILON, Word, format_word

__all__ = ["HankelTable", "suffixes"]


def suffixes(w: Word) -> list[Word]:
    """All suffixes of ``w``, shortest first, ``ε`` included."""
    return [w[len(w) - k:] for k in range(len(w) + 1)]


class HankelTable:
    """The finite block ``H(P, S)`` of the Hankel matrix of a hidden language.

    ``P`` stays prefix-closed and ``S`` suffix-closed; both only grow, in
    insertion order. Every distinct word is sent to ``membership`` at most
    once.
    """

    def __init__(
        self,
        alphabet: Sequence[str],
        membership: Callable[[Word], Scalar],
        rows: Iterable[Word] = (EPSILON,),
        cols: Iterable[Word] = (EPSILON,),
    ):
        self.alphabet = tuple(alphabet)
        self.membership = membership
        self.cache: dict[Word, Scalar] = {}
        self._P: list[Word] = []
        self._S: list[Word] = []
        self._pset: set[Word] = set()
        self._sset: set[Word] = set()
        for p in rows:
            self._append_row(tuple(p))
        for s in cols:
            self._append_col(tuple(s))
        if EPSILON not in self._pset or EPSILON not in self._sset:
            raise DomainError("both P and S must contain the empty word")
        for p in self._P:
            if p and p[:-1] not in self._pset:
                raise DomainError(f"P is not prefix-closed at {format_word(p)}")
        for s in self._S:
            if s and s[1:] not in self._sset:
                raise DomainError(f"S is not suffix-closed at {format_word(s)}")

    @property
    def P(self) -> tuple[Word, ...]:
        return tuple(self._P)

    @property
    def S(self) -> tuple[Word, ...]:
        return tuple(self._S)

    @property
    def query_count(self) -> int:
        return len(self.cache)

    def mask(self) -> tuple[tuple[Word, ...], tuple[Word, ...]]:
        return self.P, self.S

    def _append_row(self, p: Word) -> None:
        if p not in self._pset:
            self._pset.add(p)
            self._P.append(p)

    def _append_col(self, s: Word) -> None:
        if s not in self._sset:
            self._sset.add(s)
            self._S.append(s)

    def entry(self, p: Word, s: Word) -> Scalar:
        w = tuple(p) + tuple(s)
        try:
            return self.cache[w]
        except KeyError:
            v = self.membership(w)
            self.cache[w] = v
            return v

    def subblock(self, rows: Sequence[Word], cols: Sequence[Word]) -> Matrix:
        return Matrix([[self.entry(p, s) for s in cols] for p in rows], rows, cols)

    def block(self) -> Matrix:
        """``H(P, S)``."""
        return self.subblock(self._P, self._S)

    def shifted_rows(self, sigma: str) -> Matrix:
        """``H(Pσ, S)``, labelled by ``P × S``."""
        return self.subblock([p + (sigma,) for p in self._P], self._S).relabel(row_axis=self._P)

    def shifted_cols(self, sigma: str) -> Matrix:
        """``H(P, σS)``, labelled by ``P × S``."""
        return self.subblock(self._P, [(sigma,) + s for s in self._S]).relabel(col_axis=self._S)

    def add_row(self, p: Word) -> bool:
        p = tuple(p)
        if p in self._pset:
            return False
        if not p or p[:-1] not in self._pset:
            raise DomainError(f"cannot add row {format_word(p)}: its parent prefix is not in P")
        self._append_row(p)
        return True

    def add_col(self, s: Word) -> bool:
        s = tuple(s)
        if s in self._sset:
            return False
        if not s or s[1:] not in self._sset:
            raise DomainError(f"cannot add column {format_word(s)}: its tail is not in S")
        self._append_col(s)
        return True

    def add_suffixes(self, w: Word) -> bool:
        """Add every suffix of ``w`` to S; True iff S grew."""
        n = len(self._S)
        for s in suffixes(tuple(w)):
            self._append_col(s)
        return len(self._S) > n

    def dump(self) -> str:
        """Tab-separated grid with word labels."""
        lines = ["\t".join(["P\\S"] + [format_word(s) for s in self._S])]
        for p in self._P:
            lines.append("\t".join([format_word(p)] + [str(self.entry(p, s)) for s in self._S]))
        return "\n".join(lines) + "\n"
