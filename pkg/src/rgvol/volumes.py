"""Volume polynomials of the fixed-perimeter ribbon-graph complexes.

``volume(g, n)`` returns the symplectic volume of the type-``(g, n)``
complex as an :class:`~rgvol.algebra.EvenPolynomial` in the boundary
lengths: homogeneous of weight ``3g - 3 + n`` in the squared variables.
Unstable types give the zero polynomial.

The recursion works on the derivative of ``L_1 * volume`` with respect to
``L_1``.  Each monomial of a smaller volume enters through one of two
exact integral kernels:

* :func:`unstable_transfer` -- the pair of single integrals that trade a
  boundary monomial ``x^(2k)`` for a polynomial in ``(L_1, L_j)``;
* :func:`stable_transfer` -- the double integral over ``x + y <= L_1``
  that trades ``x^(2a) y^(2b)`` for a single power of ``L_1``.

Because ``|L_1 - L_j|`` only ever appears raised to even powers, both
kernels are polynomial and every step stays exact.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import cache
from typing import Iterator, Sequence

from . import intersections
from .algebra import EvenPolynomial, Exponents, factorial
from .intersections import IntersectionTable

_ZERO = Fraction(0)


@cache
def unstable_transfer(k: int) -> EvenPolynomial:
    """Arity-2 polynomial in ``(L_1, L_j)`` absorbing a ``x^(2k)`` monomial.

    Exact value of the two elementary integrals of ``(x/2) * x^(2k)`` up to
    ``L_1 + L_j`` and up to ``|L_1 - L_j|``:
    ``sum_s (2k+1)! / ((2s)! (2k+2-2s)!) * L_1^(2s) * L_j^(2(k+1-s))``.
    """
    k = int(k)
    if k < 0:
        raise ValueError(f"transfer degree must be nonnegative, got {k}")
    top = factorial(2 * k + 1)
    terms = {
        (s, k + 1 - s): Fraction(top, factorial(2 * s) * factorial(2 * k + 2 - 2 * s))
        for s in range(k + 2)
    }
    return EvenPolynomial(2, terms)


def _stable_weight(a: int, b: int) -> Fraction:
    return Fraction(
        factorial(2 * a + 1) * factorial(2 * b + 1), 2 * factorial(2 * (a + b + 2))
    )


@cache
def stable_transfer(a: int, b: int) -> EvenPolynomial:
    """Arity-1 polynomial in ``L_1`` absorbing a ``x^(2a) y^(2b)`` monomial.

    Exact value of the double integral of ``(xy/2) x^(2a) y^(2b)`` over
    ``{x, y >= 0, x + y <= L_1}``:
    ``(1/2) (2a+1)!(2b+1)! / (2(a+b+2))! * L_1^(2(a+b+2))``.
    """
    a, b = int(a), int(b)
    if a < 0 or b < 0:
        raise ValueError(f"transfer degrees must be nonnegative, got ({a}, {b})")
    return EvenPolynomial(1, {(a + b + 2,): _stable_weight(a, b)})


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for tail in _compositions(total - first, parts - 1):
            yield (first,) + tail


class VolumeTable:
    """Memoized volume polynomials keyed by ``(g, n)``.

    Same sharing contract as the intersection table: lock-free reads,
    locked insert-if-absent, immutable values.
    """

    def __init__(self) -> None:
        self._values: dict[tuple[int, int], EvenPolynomial] = {}
        self._lock = threading.Lock()

    def volume(self, genus: int, boundaries: int) -> EvenPolynomial:
        g, n = int(genus), int(boundaries)
        if g < 0:
            raise ValueError(f"genus must be nonnegative, got {g}")
        if n < 1:
            raise ValueError(f"boundary count must be positive, got {n}")
        if 2 * g - 2 + n <= 0:
            return EvenPolynomial.zero(n)
        if (g, n) == (0, 3):
            return EvenPolynomial.constant(3, 1)
        if (g, n) == (1, 1):
            return EvenPolynomial(1, {(1,): Fraction(1, 48)})
        value = self._values.get((g, n))
        if value is None:
            rhs = _right_side(self, g, n)
            terms = {e: c / (2 * e[0] + 1) for e, c in rhs.items()}
            value = EvenPolynomial(n, terms)
            weight = 3 * g - 3 + n
            assert all(sum(e) == weight for e in value), (g, n)
            with self._lock:
                value = self._values.setdefault((g, n), value)
        return value


def _right_side(table: VolumeTable, g: int, n: int) -> EvenPolynomial:
    """Assemble the derivative ``d/dL_1 (L_1 * volume(g, n))``.

    Slot convention throughout: slot 1 of a sub-volume is the integrated
    variable; surviving labels fill the remaining slots in increasing
    order.
    """
    acc: dict[Exponents, Fraction] = {}

    def add(exponents: Exponents, coefficient: Fraction) -> None:
        total = acc.get(exponents, _ZERO) + coefficient
        if total:
            acc[exponents] = total
        else:
            acc.pop(exponents, None)

    labels = list(range(2, n + 1))

    # Boundary-pair terms: fold boundary j into boundary 1.
    if n >= 2:
        prev = table.volume(g, n - 1)
        for j in labels:
            spectators = [lab for lab in labels if lab != j]
            for e, c in prev.items():
                base = [0] * n
                for slot, lab in enumerate(spectators, start=1):
                    base[lab - 1] = e[slot]
                for (s, t), w in unstable_transfer(e[0]).items():
                    out = list(base)
                    out[0] = s
                    out[j - 1] = t
                    add(tuple(out), c * w)

    # Genus-lowering term: one boundary splits into two on a smaller genus.
    if g >= 1:
        prev = table.volume(g - 1, n + 1)
        for e, c in prev.items():
            a, b = e[0], e[1]
            out = [0] * n
            out[0] = a + b + 2
            for slot, lab in enumerate(labels, start=2):
                out[lab - 1] = e[slot]
            add(tuple(out), c * _stable_weight(a, b))

    # Splitting terms: ordered pairs over all label subsets and genus splits;
    # unstable factors vanish through the zero polynomial.
    m = len(labels)
    for mask in range(1 << m):
        left = [labels[i] for i in range(m) if mask >> i & 1]
        right = [labels[i] for i in range(m) if not mask >> i & 1]
        for g1 in range(g + 1):
            g2 = g - g1
            if 2 * g1 - 2 + len(left) + 1 <= 0 or 2 * g2 - 2 + len(right) + 1 <= 0:
                continue
            v1 = table.volume(g1, len(left) + 1)
            v2 = table.volume(g2, len(right) + 1)
            if not v1 or not v2:
                continue
            for e1, c1 in v1.items():
                for e2, c2 in v2.items():
                    out = [0] * n
                    out[0] = e1[0] + e2[0] + 2
                    for slot, lab in enumerate(left, start=1):
                        out[lab - 1] = e1[slot]
                    for slot, lab in enumerate(right, start=1):
                        out[lab - 1] = e2[slot]
                    add(tuple(out), c1 * c2 * _stable_weight(e1[0], e2[0]))

    return EvenPolynomial(n, acc)


def recursion_right_side(
    genus: int, boundaries: int, table: VolumeTable | None = None
) -> EvenPolynomial:
    """The assembled right side for a stable non-base ``(g, n)``.

    Exposed so the divide-by-(2*d_1+1) step can be cross-checked against
    the derivative of ``L_1 * volume``.
    """
    g, n = int(genus), int(boundaries)
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"({g}, {n}) is unstable")
    return _right_side(table if table is not None else _SHARED_TABLE, g, n)


def volume_from_intersections(
    genus: int,
    boundaries: int,
    table: IntersectionTable | None = None,
) -> EvenPolynomial:
    """Assemble the volume polynomial from intersection numbers.

    ``sum over k_1+...+k_n = 3g-3+n of prod_j L_j^(2 k_j) / (2^(k_j) k_j!)
    times <tau_{k_1} ... tau_{k_n}>_g``.
    """
    g, n = int(genus), int(boundaries)
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"({g}, {n}) is unstable")
    lookup = table.intersection if table is not None else intersections.intersection
    weight = 3 * g - 3 + n
    terms: dict[Exponents, Fraction] = {}
    for comp in _compositions(weight, n):
        value = lookup(g, comp)
        if not value:
            continue
        denom = 1
        for k in comp:
            denom *= (1 << k) * factorial(k)
        terms[comp] = value / denom
    return EvenPolynomial(n, terms)


def intersections_from_volume(
    poly: EvenPolynomial, genus: int, boundaries: int
) -> list[tuple[tuple[int, ...], Fraction]]:
    """Invert the coefficient dictionary of a volume polynomial.

    Each coefficient ``c`` of ``prod L_i^(2 d_i)`` yields
    ``<tau_{d_1} ... tau_{d_n}>_g = c * prod 2^(d_i) d_i!``.  The input
    must be homogeneous of weight ``3g - 3 + n``.
    """
    g, n = int(genus), int(boundaries)
    if poly.arity != n:
        raise ValueError(f"polynomial arity {poly.arity} does not match n = {n}")
    weight = 3 * g - 3 + n
    if any(sum(e) != weight for e in poly):
        raise ValueError(f"polynomial is not homogeneous of weight {weight}")
    out = []
    for e, c in poly.sorted_items():
        scale = 1
        for d in e:
            scale *= (1 << d) * factorial(d)
        out.append((e, c * scale))
    return out


_SHARED_TABLE = VolumeTable()


def volume(genus: int, boundaries: int) -> EvenPolynomial:
    """Volume polynomial of type ``(g, n)`` from the shared table."""
    return _SHARED_TABLE.volume(genus, boundaries)
