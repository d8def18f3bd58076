"""Small dense exact linear algebra over Fraction.

Only what the cell machinery needs: echelon forms, square solves,
determinants, row-span membership, and the Pfaffian of an antisymmetric
matrix.  Everything is exact; matrices are sequences of rows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]

_ZERO = Fraction(0)


def _rows(matrix: Matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in matrix]


def rref(matrix: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form and the pivot column indices."""
    rows = _rows(matrix)
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Matrix) -> int:
    return len(rref(matrix)[1])


def in_row_span(matrix: Matrix, vector: Sequence[Fraction]) -> bool:
    """Whether ``vector`` is a linear combination of the rows."""
    base = [list(row) for row in matrix]
    return rank(base) == rank(base + [list(vector)])


def solve_square(matrix: Matrix, rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve ``A x = b`` for square ``A``; None when ``A`` is singular."""
    rows = _rows(matrix)
    size = len(rows)
    if any(len(row) != size for row in rows) or len(rhs) != size:
        raise ValueError("solve_square needs a square system")
    if size == 0:
        return []
    aug = [row + [Fraction(b)] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    if pivots != list(range(size)):
        return None
    return [reduced[i][size] for i in range(size)]


def invert_square(matrix: Matrix) -> list[list[Fraction]] | None:
    """Inverse of a square matrix; None when singular."""
    rows = _rows(matrix)
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise ValueError("invert_square needs a square matrix")
    identity = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    aug = [row + ident for row, ident in zip(rows, identity)]
    reduced, pivots = rref(aug)
    if pivots != list(range(size)):
        return None
    return [row[size:] for row in reduced]


def determinant(matrix: Matrix) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    rows = _rows(matrix)
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for col in range(size):
        pivot_row = next((i for i in range(col, size) if rows[i][col]), None)
        if pivot_row is None:
            return _ZERO
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det
        pivot = rows[col][col]
        det *= pivot
        for i in range(col + 1, size):
            if rows[i][col]:
                factor = rows[i][col] / pivot
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[col])]
    return det


def pfaffian(matrix: Matrix) -> Fraction:
    """Exact Pfaffian of an antisymmetric even-dimensional matrix.

    Unit-triangular congruence updates leave the Pfaffian unchanged, so it
    accumulates as the product of the 2x2 block pivots (with a sign flip
    per row/column swap).  Raises ValueError on odd dimension or on input
    that is not antisymmetric.
    """
    rows = _rows(matrix)
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise ValueError("pfaffian needs a square matrix")
    if size % 2:
        raise ValueError(f"pfaffian needs even dimension, got {size}")
    for i in range(size):
        if rows[i][i]:
            raise ValueError("matrix is not antisymmetric (nonzero diagonal)")
        for j in range(i + 1, size):
            if rows[i][j] != -rows[j][i]:
                raise ValueError("matrix is not antisymmetric")

    def add_multiple(target: int, source: int, factor: Fraction) -> None:
        # congruence update: row_target += factor*row_source, same for columns
        rows[target] = [x + factor * y for x, y in zip(rows[target], rows[source])]
        for row in rows:
            row[target] += factor * row[source]

    result = Fraction(1)
    for i in range(0, size, 2):
        pivot_col = next((j for j in range(i + 1, size) if rows[i][j]), None)
        if pivot_col is None:
            return _ZERO
        if pivot_col != i + 1:
            rows[i + 1], rows[pivot_col] = rows[pivot_col], rows[i + 1]
            for row in rows:
                row[i + 1], row[pivot_col] = row[pivot_col], row[i + 1]
            result = -result
        pivot = rows[i][i + 1]
        result *= pivot
        for r in range(i + 2, size):
            if rows[i][r]:
                add_multiple(r, i + 1, -rows[i][r] / pivot)
            if rows[i + 1][r]:
                add_multiple(r, i, rows[i + 1][r] / pivot)
    return result
