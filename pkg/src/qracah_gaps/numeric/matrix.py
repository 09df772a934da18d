"""Module for 2x2 matrices over scalars, polynomials or rational functions, and small exact linear systems."""
from __future__ import annotations
from typing import TYPE_CHECKING

from qracah_gaps.errors import NoSolutionError, ZeroDeterminantError
from qracah_gaps.numeric.scalars import div, is_exact

if TYPE_CHECKING:
    from typing import Any, Callable, List, Optional, Sequence, Tuple


class Mat2:
    """
    2x2 matrix [[e11, e12], [e21, e22]].

    Entries may be scalars of any backend, Poly or RatFunc; arithmetic is delegated to the entries.
    """
    __slots__ = ('_entries',)

    def __init__(self, e11: Any, e12: Any, e21: Any, e22: Any) -> None:
        self._entries: Tuple[Any, Any, Any, Any] = (e11, e12, e21, e22)

    @classmethod
    def identity(cls) -> Mat2:
        """The identity with int entries, neutral for every backend."""
        return cls(1, 0, 0, 1)

    @property
    def e11(self) -> Any:
        """Entry (1,1)."""
        return self._entries[0]

    @property
    def e12(self) -> Any:
        """Entry (1,2)."""
        return self._entries[1]

    @property
    def e21(self) -> Any:
        """Entry (2,1)."""
        return self._entries[2]

    @property
    def e22(self) -> Any:
        """Entry (2,2)."""
        return self._entries[3]

    @property
    def entries(self) -> Tuple[Any, Any, Any, Any]:
        """Entries in row-major order."""
        return self._entries

    def __iter__(self):
        return iter(self._entries)

    def __add__(self, other: Mat2) -> Mat2:
        return Mat2(*(left + right for left, right in zip(self._entries, other.entries)))

    def __sub__(self, other: Mat2) -> Mat2:
        return Mat2(*(left - right for left, right in zip(self._entries, other.entries)))

    def __neg__(self) -> Mat2:
        return Mat2(*(-entry for entry in self._entries))

    def __mul__(self, other: Any) -> Mat2:
        if isinstance(other, Mat2):
            a11, a12, a21, a22 = self._entries
            b11, b12, b21, b22 = other.entries
            return Mat2(a11 * b11 + a12 * b21, a11 * b12 + a12 * b22, a21 * b11 + a22 * b21, a21 * b12 + a22 * b22)
        return Mat2(*(entry * other for entry in self._entries))

    def __rmul__(self, other: Any) -> Mat2:
        return Mat2(*(other * entry for entry in self._entries))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return all(left == right for left, right in zip(self._entries, other.entries))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f'Mat2({", ".join(repr(entry) for entry in self._entries)})'

    def det(self) -> Any:
        """Determinant."""
        return self.e11 * self.e22 - self.e12 * self.e21

    def trace(self) -> Any:
        """Trace."""
        return self.e11 + self.e22

    def adjugate(self) -> Mat2:
        """Adjugate [[e22, -e12], [-e21, e11]]."""
        return Mat2(self.e22, -self.e12, -self.e21, self.e11)

    def transpose(self) -> Mat2:
        """Transpose."""
        return Mat2(self.e11, self.e21, self.e12, self.e22)

    def inverse(self) -> Mat2:
        """
        Inverse of a matrix of scalars or rational functions.

        Raises:
            ZeroDeterminantError: if the determinant vanishes identically.
        """
        determinant = self.det()
        if determinant == 0:
            raise ZeroDeterminantError(f'{self!r} is singular')
        if hasattr(determinant, 'inverse') and not is_exact(determinant):
            return self.adjugate() * determinant.inverse()
        return self.adjugate().map(lambda entry: div(entry, determinant))

    def map(self, function: Callable[[Any], Any]) -> Mat2:
        """Apply a function to every entry."""
        return Mat2(*(function(entry) for entry in self._entries))

    def evaluate(self, point: Any) -> Mat2:
        """Evaluate polynomial or rational entries at a point; scalar entries are kept."""
        return self.map(lambda entry: entry(point) if callable(entry) else entry)

    def apply(self, vector: Sequence[Any]) -> Tuple[Any, Any]:
        """Matrix times column vector."""
        return (self.e11 * vector[0] + self.e12 * vector[1], self.e21 * vector[0] + self.e22 * vector[1])

    def apply_left(self, vector: Sequence[Any]) -> Tuple[Any, Any]:
        """Row vector times matrix."""
        return (vector[0] * self.e11 + vector[1] * self.e21, vector[0] * self.e12 + vector[1] * self.e22)

    def column(self, index: int) -> Tuple[Any, Any]:
        """Column 0 or 1."""
        return (self._entries[index], self._entries[2 + index])

    @classmethod
    def outer(cls, column: Sequence[Any], row: Sequence[Any]) -> Mat2:
        """Rank one matrix column * row."""
        return cls(column[0] * row[0], column[0] * row[1], column[1] * row[0], column[1] * row[1])


def det2(first: Sequence[Any], second: Sequence[Any]) -> Any:
    """Determinant of the matrix with columns first and second."""
    return first[0] * second[1] - first[1] * second[0]


def _is_zero(value: Any, tolerance: Optional[Any]) -> bool:
    if tolerance is None or is_exact(value):
        return value == 0
    return abs(value) <= tolerance


def _pivot_row(rows: List[List[Any]], column: int, start: int, tolerance: Optional[Any]) -> Optional[int]:
    candidates = [index for index in range(start, len(rows)) if not _is_zero(rows[index][column], tolerance)]
    if not candidates:
        return None
    if tolerance is None or all(is_exact(rows[index][column]) for index in candidates):
        return candidates[0]
    return max(candidates, key=lambda index: abs(rows[index][column]))


def determinant(matrix: Sequence[Sequence[Any]], tolerance: Optional[Any] = None) -> Any:
    """
    Determinant of a square matrix by Gaussian elimination.

    Exact entries pivot on the first nonzero entry of a column, floating entries on the largest modulus.

    Args:
        matrix: rows of the matrix; the empty matrix has determinant 1.
        tolerance: absolute threshold under which floating pivots count as zero.
    """
    rows = [list(row) for row in matrix]
    size = len(rows)
    result: Any = 1
    for column in range(size):
        pivot = _pivot_row(rows, column, column, tolerance)
        if pivot is None:
            return 0
        if pivot != column:
            rows[column], rows[pivot] = rows[pivot], rows[column]
            result = -result
        pivot_value = rows[column][column]
        result = result * pivot_value
        for index in range(column + 1, size):
            factor = div(rows[index][column], pivot_value)
            if factor == 0:
                continue
            rows[index] = [entry - factor * pivot_entry for entry, pivot_entry in zip(rows[index], rows[column])]
    return result


def solve_linear(matrix: Sequence[Sequence[Any]], rhs: Sequence[Any], tolerance: Optional[Any] = None) -> List[Any]:
    """
    Unique solution of a consistent, possibly overdetermined, linear system.

    Args:
        matrix: coefficient rows, at least as many as unknowns.
        rhs: right hand side, one entry per row.
        tolerance: absolute threshold for floating zero tests.

    Returns:
        list: the solution vector.

    Raises:
        NoSolutionError: if the system is inconsistent or its solution is not unique.
    """
    if len(matrix) != len(rhs):
        raise ValueError('Right hand side length does not match the number of rows')
    unknowns = len(matrix[0]) if matrix else 0
    rows = [list(row) + [value] for row, value in zip(matrix, rhs)]
    for column in range(unknowns):
        pivot = _pivot_row(rows, column, column, tolerance)
        if pivot is None:
            raise NoSolutionError(f'Linear system is rank deficient in unknown {column}')
        rows[column], rows[pivot] = rows[pivot], rows[column]
        pivot_value = rows[column][column]
        rows[column] = [div(entry, pivot_value) for entry in rows[column]]
        for index, row in enumerate(rows):
            if index == column or row[column] == 0:
                continue
            factor = row[column]
            rows[index] = [entry - factor * pivot_entry for entry, pivot_entry in zip(row, rows[column])]
    for row in rows[unknowns:]:
        if not _is_zero(row[-1], tolerance):
            raise NoSolutionError(f'Inconsistent linear system, residual {row[-1]}')
    return [rows[index][-1] for index in range(unknowns)]
