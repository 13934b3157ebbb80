"""Exact max-plus scalars over Q plus a bottom element.

``a + b`` is the semiring sum (max) and ``a * b`` the semiring product
(ordinary addition), following the usual semiring-class convention.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

__all__ = [
    "DomainError",
    "Scalar",
    "NEG_INF",
    "ZERO",
    "ONE",
    "scalar",
    "oplus",
    "otimes",
    "norm",
    "scale",
    "height",
    "scale_matrix",
    "height_matrix",
]


class DomainError(ValueError):
    """An operation was applied outside its domain."""


Number = Union[int, Fraction, str]


@total_ordering
class Scalar:
    """An element of Q ∪ {-inf}.

    Finite values are held as :class:`fractions.Fraction`, which keeps them
    in canonical reduced form. ``-inf`` is represented by ``value is None``.
    """

    __slots__ = ("_v",)

    def __init__(self, value: Number | Fraction | None = None):
        if value is None:
            self._v = None
        elif isinstance(value, Fraction):
            self._v = value
        elif isinstance(value, bool):
            raise TypeError("bool is not a max-plus scalar")
        elif isinstance(value, int):
            self._v = Fraction(value)
        elif isinstance(value, str):
            self._v = _parse_token(value)._v
        else:
            raise TypeError(f"cannot make a max-plus scalar from {type(value).__name__}")

    @property
    def value(self) -> Fraction | None:
        return self._v

    @property
    def is_finite(self) -> bool:
        return self._v is not None

    def __add__(self, other: Scalar) -> Scalar:
        return oplus(self, other)

    def __mul__(self, other: Scalar) -> Scalar:
        return otimes(self, other)

    def __neg__(self) -> Scalar:
        # only the finite part of Q has additive inverses
        if self._v is None:
            raise DomainError("-inf has no inverse")
        return Scalar(-self._v)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self._v == other._v
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._v is not None and self._v == other
        return NotImplemented

    def __lt__(self, other: Scalar) -> bool:
        if not isinstance(other, Scalar):
            other = Scalar(other)
        if self._v is None:
            return other._v is not None
        if other._v is None:
            return False
        return self._v < other._v

    def __hash__(self) -> int:
        # agrees with hash(int)/hash(Fraction) for finite values
        return hash(self._v) if self._v is not None else hash(float("-inf"))

    def __str__(self) -> str:
        return "-inf" if self._v is None else str(self._v)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def _parse_token(token: str) -> Scalar:
    t = token.strip()
    if t == "-inf":
        return NEG_INF
    try:
        # Fraction() also accepts decimals like "1.5"; we keep only n and p/q
        if not t or any(c not in "+-0123456789/" for c in t):
            raise ValueError
        return Scalar(Fraction(t))
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not a scalar token: {token!r}") from None


NEG_INF = Scalar(None)
ZERO = NEG_INF  # additive unit
ONE = Scalar(0)  # multiplicative unit


def scalar(x: Scalar | Number | None) -> Scalar:
    """Coerce ``x`` to a :class:`Scalar`; ``None`` means ``-inf``."""
    if isinstance(x, Scalar):
        return x
    return Scalar(x)


def oplus(a: Scalar, b: Scalar) -> Scalar:
    if a._v is None:
        return b
    if b._v is None:
        return a
    return a if a._v >= b._v else b


def otimes(a: Scalar, b: Scalar) -> Scalar:
    if a._v is None or b._v is None:
        return NEG_INF
    return Scalar(a._v + b._v)


def _entries(v: Iterable) -> list[Scalar]:
    return [scalar(x) for x in v]


def norm(v: Iterable) -> Scalar:
    xs = _entries(v)
    if not xs:
        raise DomainError("norm of an empty vector")
    return max(xs)


def scale(v: Iterable) -> list[Scalar]:
    """Shift ``v`` so that its largest entry becomes 0."""
    xs = _entries(v)
    n = norm(xs)
    if not n.is_finite:
        raise DomainError("cannot scale a vector with no finite entry")
    return [x * -n for x in xs]


def height(v: Iterable) -> Scalar:
    xs = _entries(v)
    if not xs:
        raise DomainError("height of an empty vector")
    if any(not x.is_finite for x in xs):
        raise DomainError("height is only defined for finite vectors")
    return Scalar(max(xs).value - min(xs).value)


def scale_matrix(rows: Sequence[Sequence]) -> list[list[Scalar]]:
    flat = [scalar(x) for row in rows for x in row]
    n = norm(flat)
    if not n.is_finite:
        raise DomainError("cannot scale a matrix with no finite entry")
    return [[scalar(x) * -n for x in row] for row in rows]


def height_matrix(rows: Sequence[Sequence]) -> Scalar:
    return height(x for row in rows for x in row)
