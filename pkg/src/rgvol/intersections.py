"""Psi-class intersection numbers via the Virasoro (double-factorial) recursion.

``intersection(g, degrees)`` returns the exact value of
``<tau_{d_1} ... tau_{d_n}>_g``.  The recursion pivots on the largest
degree; the value is symmetric in the degrees, vanishes unless
``sum(d_i) == 3g - 3 + n``, and vanishes for unstable ``(g, n)``.
Negative-degree insertions contribute zero, which together with
``(-1)!! = 1`` makes the degree-zero bookkeeping consistent.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .algebra import double_factorial_odd

_ZERO = Fraction(0)

#: Hard base values: the three-pointed sphere and the one-pointed torus.
_BASE_SPHERE = Fraction(1)
_BASE_TORUS = Fraction(1, 24)

IntersectionKey = tuple[int, tuple[int, ...]]


def _splits(values: Sequence[int]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ordered two-block partitions of the index set of ``values``."""
    m = len(values)
    for mask in range(1 << m):
        left = tuple(values[i] for i in range(m) if mask >> i & 1)
        right = tuple(values[i] for i in range(m) if not mask >> i & 1)
        yield left, right


class IntersectionTable:
    """Memoized table of intersection numbers keyed by (genus, sorted degrees).

    Reads are lock-free; insertions happen under an internal lock and an
    entry, once written, never changes.  A single shared instance backs
    the module-level :func:`intersection`.
    """

    def __init__(self) -> None:
        self._values: dict[IntersectionKey, Fraction] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._values)

    def intersection(self, genus: int, degrees: Iterable[int]) -> Fraction:
        degrees = tuple(int(d) for d in degrees)
        if not degrees:
            raise ValueError("at least one degree is required")
        genus = int(genus)
        if genus < 0 or any(d < 0 for d in degrees):
            return _ZERO
        n = len(degrees)
        if 2 * genus - 2 + n <= 0:
            return _ZERO
        if sum(degrees) != 3 * genus - 3 + n:
            return _ZERO
        key = (genus, tuple(sorted(degrees, reverse=True)))
        if key == (0, (0, 0, 0)):
            return _BASE_SPHERE
        if key == (1, (1,)):
            return _BASE_TORUS
        value = self._values.get(key)
        if value is None:
            # Pivot on the largest degree: past the base cases a
            # dimension-matching key always has key[1][0] >= 1.
            value = _pivot_expansion(self, genus, key[1][0], key[1][1:])
            with self._lock:
                value = self._values.setdefault(key, value)
        return value


def _pivot_expansion(
    table: IntersectionTable, genus: int, d1: int, rest: tuple[int, ...]
) -> Fraction:
    """Right side of the recursion with ``tau_{d1}`` in the pivot slot."""
    total = _ZERO
    norm = double_factorial_odd(2 * d1 + 1)
    for j, dj in enumerate(rest):
        coeff = Fraction(
            double_factorial_odd(2 * (d1 + dj) - 1),
            norm * double_factorial_odd(2 * dj - 1),
        )
        sub = (d1 + dj - 1,) + rest[:j] + rest[j + 1 :]
        if sub[0] < 0:
            continue
        total += coeff * table.intersection(genus, sub)
    for a in range(d1 - 1):
        b = d1 - 2 - a
        weight = Fraction(
            double_factorial_odd(2 * a + 1) * double_factorial_odd(2 * b + 1),
            2 * norm,
        )
        bracket = _ZERO
        if genus >= 1:
            bracket += table.intersection(genus - 1, (a, b) + rest)
        for g1 in range(genus + 1):
            g2 = genus - g1
            for left, right in _splits(rest):
                if 2 * g1 - 2 + len(left) + 1 <= 0:
                    continue
                if 2 * g2 - 2 + len(right) + 1 <= 0:
                    continue
                bracket += table.intersection(g1, (a,) + left) * table.intersection(
                    g2, (b,) + right
                )
        total += weight * bracket
    return total


def virasoro_expansion(
    genus: int,
    degrees: Sequence[int],
    pivot: int = 0,
    table: IntersectionTable | None = None,
) -> Fraction:
    """One recursion step pivoting on ``degrees[pivot]``.

    Sub-brackets are resolved through ``table`` (the shared table by
    default), so this evaluates the recursion's right side for an
    arbitrary pivot choice; by symmetry it must agree with
    :func:`intersection` away from the two base keys.
    """
    degrees = tuple(int(d) for d in degrees)
    if not 0 <= pivot < len(degrees):
        raise ValueError(f"pivot {pivot} out of range for {len(degrees)} degrees")
    if table is None:
        table = _SHARED_TABLE
    rest = degrees[:pivot] + degrees[pivot + 1 :]
    return _pivot_expansion(table, genus, degrees[pivot], rest)


_SHARED_TABLE = IntersectionTable()


def intersection(genus: int, degrees: Iterable[int]) -> Fraction:
    """Exact ``<tau_{d_1} ... tau_{d_n}>_g`` from the shared table."""
    return _SHARED_TABLE.intersection(genus, degrees)
