"""Max-plus vectors and matrices with labelled axes, and one-sided solving.

Axes carry hashable labels (words for Hankel blocks, integers for automaton
states). Label order is insertion order and is never re-sorted, so every
result here is reproducible run to run.

A system ``x A = b`` is solved by residuation: compute the principal
candidate and check it. The candidate solves the system iff the system is
solvable at all, and it is then the largest solution.
"""

from __future__ import annotations

import logging
from typing import Hashable, Iterable, Iterator, Sequence

from .semiring import NEG_INF, ONE, DomainError, Scalar, oplus, otimes, scalar

__all__ = [
    "Vector",
    "Matrix",
    "NoSolutionError",
    "mat_mul",
    "vec_mat",
    "mat_vec",
    "principal_solution",
    "is_solution",
    "solve_row",
    "solve_matrix",
    "combination_coeffs",
]

log = logging.getLogger(__name__)

Label = Hashable


def _check_axis(axis: Sequence[Label], n: int, what: str) -> tuple:
    axis = tuple(axis)
    if len(axis) != n:
        raise DomainError(f"{what} axis has {len(axis)} labels for {n} entries")
    if len(set(axis)) != n:
        raise DomainError(f"{what} axis labels are not unique")
    return axis


class Vector:
    """A finite max-plus vector indexed by ``axis``."""

    __slots__ = ("axis", "entries", "_index")

    def __init__(self, entries: Iterable, axis: Sequence[Label] | None = None):
        self.entries: tuple[Scalar, ...] = tuple(scalar(x) for x in entries)
        n = len(self.entries)
        self.axis = _check_axis(range(n) if axis is None else axis, n, "vector")
        self._index = {lab: i for i, lab in enumerate(self.axis)}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.entries)

    def __getitem__(self, label: Label) -> Scalar:
        return self.entries[self._index[label]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.axis == other.axis and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.axis, self.entries))

    def __repr__(self) -> str:
        return f"Vector({[str(x) for x in self.entries]})"

    def relabel(self, axis: Sequence[Label]) -> Vector:
        return Vector(self.entries, axis)

    def tokens(self) -> list[str]:
        return [str(x) for x in self.entries]


class Matrix:
    """A max-plus matrix with labelled rows and columns.

    ``M[r, c]`` looks an entry up by labels; ``M.rows`` is the raw grid.
    """

    __slots__ = ("row_axis", "col_axis", "rows", "_ri", "_ci")

    def __init__(
        self,
        rows: Iterable[Iterable],
        row_axis: Sequence[Label] | None = None,
        col_axis: Sequence[Label] | None = None,
    ):
        grid = tuple(tuple(scalar(x) for x in row) for row in rows)
        if col_axis is not None:
            width = len(tuple(col_axis))
        elif grid:
            width = len(grid[0])
        else:
            width = 0
        for row in grid:
            if len(row) != width:
                raise DomainError("ragged matrix rows")
        self.rows: tuple[tuple[Scalar, ...], ...] = grid
        self.row_axis = _check_axis(range(len(grid)) if row_axis is None else row_axis, len(grid), "row")
        self.col_axis = _check_axis(range(width) if col_axis is None else col_axis, width, "column")
        self._ri = {lab: i for i, lab in enumerate(self.row_axis)}
        self._ci = {lab: j for j, lab in enumerate(self.col_axis)}

    @classmethod
    def identity(cls, axis: Sequence[Label]) -> Matrix:
        axis = tuple(axis)
        n = len(axis)
        return cls(
            [[ONE if i == j else NEG_INF for j in range(n)] for i in range(n)], axis, axis
        )

    @classmethod
    def from_rows(cls, vectors: Sequence[Vector], row_axis: Sequence[Label] | None = None) -> Matrix:
        if not vectors:
            return cls([], row_axis or (), ())
        col_axis = vectors[0].axis
        for v in vectors:
            if v.axis != col_axis:
                raise DomainError("stacked vectors must share one axis")
        return cls([v.entries for v in vectors], row_axis, col_axis)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_axis), len(self.col_axis)

    def __getitem__(self, key: tuple[Label, Label]) -> Scalar:
        r, c = key
        return self.rows[self._ri[r]][self._ci[c]]

    def row(self, label: Label) -> Vector:
        return Vector(self.rows[self._ri[label]], self.col_axis)

    def col(self, label: Label) -> Vector:
        j = self._ci[label]
        return Vector((row[j] for row in self.rows), self.row_axis)

    @property
    def T(self) -> Matrix:
        cols = list(zip(*self.rows)) if self.rows else [() for _ in self.col_axis]
        return Matrix(cols, self.col_axis, self.row_axis)

    def relabel(self, row_axis: Sequence[Label] | None = None, col_axis: Sequence[Label] | None = None) -> Matrix:
        return Matrix(
            self.rows,
            self.row_axis if row_axis is None else row_axis,
            self.col_axis if col_axis is None else col_axis,
        )

    def select_rows(self, labels: Sequence[Label]) -> Matrix:
        return Matrix([self.rows[self._ri[r]] for r in labels], labels, self.col_axis)

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.row_axis == other.row_axis
            and self.col_axis == other.col_axis
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.row_axis, self.col_axis, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({[[str(x) for x in r] for r in self.rows]})"

    def tokens(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def all_finite(self) -> bool:
        return all(x.is_finite for r in self.rows for x in r)


def _dot(xs: Sequence[Scalar], ys: Iterable[Scalar]) -> Scalar:
    acc = NEG_INF
    for x, y in zip(xs, ys):
        acc = oplus(acc, otimes(x, y))
    return acc


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    """(AB)(i, k) = max_j A(i, j) + B(j, k)."""
    if len(A.col_axis) != len(B.row_axis):
        raise DomainError(f"cannot multiply {A.shape} by {B.shape}")
    cols = list(zip(*B.rows)) if B.rows else [() for _ in B.col_axis]
    return Matrix([[_dot(r, c) for c in cols] for r in A.rows], A.row_axis, B.col_axis)


def vec_mat(x: Vector, A: Matrix) -> Vector:
    """Row vector times matrix."""
    if len(x) != len(A.row_axis):
        raise DomainError(f"cannot multiply a length-{len(x)} row vector by {A.shape}")
    cols = list(zip(*A.rows)) if A.rows else [() for _ in A.col_axis]
    return Vector([_dot(x.entries, c) for c in cols], A.col_axis)


def mat_vec(A: Matrix, y: Vector) -> Vector:
    """Matrix times column vector."""
    if len(y) != len(A.col_axis):
        raise DomainError(f"cannot multiply {A.shape} by a length-{len(y)} column vector")
    return Vector([_dot(r, y.entries) for r in A.rows], A.row_axis)


def principal_solution(A: Matrix, b: Vector) -> Vector:
    """Residuation candidate for ``x A = b``.

    ``x(i) = min_j b(j) - A(i, j)`` over the finite ``A(i, j)``; a row of
    ``A`` with no finite entry gets ``-inf``. The candidate need not solve
    the system.
    """
    if len(b) != len(A.col_axis):
        raise DomainError(f"right-hand side has length {len(b)}, matrix is {A.shape}")
    out = []
    for row in A.rows:
        best = None  # None stands for +inf while no finite term was seen
        bottom = False
        for a, bj in zip(row, b.entries):
            av = a.value
            if av is None:
                continue
            bv = bj.value
            if bv is None:
                bottom = True
                break
            d = bv - av
            if best is None or d < best:
                best = d
        if bottom or best is None:
            out.append(NEG_INF)
        else:
            out.append(Scalar(best))
    return Vector(out, A.row_axis)


def is_solution(x: Vector, A: Matrix, b: Vector) -> bool:
    if len(b) != len(A.col_axis):
        raise DomainError(f"right-hand side has length {len(b)}, matrix is {A.shape}")
    return vec_mat(x, A).entries == b.entries


def solve_row(A: Matrix, b: Vector) -> Vector | None:
    """Greatest solution of ``x A = b``, or ``None`` when unsolvable."""
    x = principal_solution(A, b)
    return x if is_solution(x, A, b) else None


class NoSolutionError(ArithmeticError):
    """``X A = B`` has no solution; ``label`` is the first failing row of B."""

    def __init__(self, label: Label):
        super().__init__(f"row {label!r} is not in the row space")
        self.label = label


def solve_matrix(A: Matrix, B: Matrix, *, strict: bool = False) -> Matrix | None:
    """Solve ``X A = B`` row by row.

    Returns the matrix of principal solutions, with rows labelled like ``B``
    and columns like the rows of ``A``. On failure returns ``None``, or raises
    :class:`NoSolutionError` naming the first bad row when ``strict``.
    """
    if len(B.col_axis) != len(A.col_axis):
        raise DomainError(f"cannot solve X {A.shape} = {B.shape}")
    out = []
    for label, row in zip(B.row_axis, B.rows):
        x = solve_row(A, Vector(row, A.col_axis))
        if x is None:
            log.debug("solve_matrix: row %r has no solution", label)
            if strict:
                raise NoSolutionError(label)
            return None
        out.append(x.entries)
    return Matrix(out, B.row_axis, A.row_axis)


def combination_coeffs(basis: Sequence[Vector], target: Vector) -> Vector | None:
    """Coefficients ``c`` with ``target = max_i c_i + basis_i``, if any exist."""
    if not basis:
        if all(not x.is_finite for x in target):
            return Vector([])
        return None
    return solve_row(Matrix.from_rows(basis), target.relabel(basis[0].axis))
