"""Exact scalars and the two sparse exponent-table containers.

Every scalar in this package is an exact rational number
(:class:`fractions.Fraction`); no floating point enters any computation
path.  Two container types share a single exponent-vector convention:

* :class:`EvenPolynomial` stores polynomials in squared variables.  The
  term ``(d_1, ..., d_n) -> c`` is the monomial
  ``c * L_1^(2*d_1) * ... * L_n^(2*d_n)``.  Volume polynomials live here.

* :class:`Correlator` stores Laurent tails at the origin.  The term
  ``(d_1, ..., d_n) -> c`` is ``c * z_1^(-2*d_1-2) * ... * z_n^(-2*d_n-2)``.
  Correlation functions live here.

Both containers index terms by ``d_i`` rather than by the raw power, so
the boundary-length transform (:func:`laplace`) is a pure coefficient
rescaling that leaves exponent vectors untouched.  Zero coefficients are
pruned on construction; container equality is plain mapping equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

#: The universal exact scalar.
Rational = Fraction

Exponents = tuple[int, ...]
TermsLike = Union[Mapping[Exponents, Fraction], Iterable[tuple[Exponents, Fraction]]]

_ZERO = Fraction(0)


def format_rational(value: Fraction | int) -> str:
    """Render ``value`` canonically as ``"p/q"``, or ``"p"`` when q = 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse the canonical ``"p/q"`` / ``"p"`` rendering back to a scalar."""
    return Fraction(text.strip())


def factorial(k: int) -> int:
    """Return k! for k >= 0."""
    if k < 0:
        raise ValueError(f"factorial is undefined for negative input {k}")
    return math.factorial(k)


def double_factorial_odd(m: int) -> int:
    """Return m!! for odd m >= -1, with the convention (-1)!! = 1.

    The (-1)!! = 1 extension is what makes degree-zero insertions in the
    intersection recursion carry weight one.
    """
    if m < -1:
        raise ValueError(f"double factorial is undefined below -1, got {m}")
    if m % 2 == 0:
        raise ValueError(f"double_factorial_odd requires an odd argument, got {m}")
    result = 1
    while m > 1:
        result *= m
        m -= 2
    return result


def _gather(arity: int, terms: TermsLike) -> dict[Exponents, Fraction]:
    """Accumulate, validate and prune a term stream."""
    items = terms.items() if isinstance(terms, Mapping) else terms
    out: dict[Exponents, Fraction] = {}
    for exponents, coefficient in items:
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != arity:
            raise ValueError(
                f"exponent vector {exponents} has length {len(exponents)}, expected {arity}"
            )
        if any(e < 0 for e in exponents):
            raise ValueError(f"negative exponent in {exponents}")
        total = out.get(exponents, _ZERO) + Fraction(coefficient)
        if total:
            out[exponents] = total
        else:
            out.pop(exponents, None)
    return out


class _ExponentTable:
    """Shared implementation of the two exponent-indexed containers."""

    __slots__ = ("_arity", "_terms")

    def __init__(self, arity: int, terms: TermsLike = ()):
        arity = int(arity)
        if arity < 0:
            raise ValueError(f"arity must be nonnegative, got {arity}")
        self._arity = arity
        self._terms = _gather(arity, terms)

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        """A copy of the term mapping."""
        return dict(self._terms)

    def items(self):
        """Read-only view of (exponents, coefficient) pairs."""
        return self._terms.items()

    def sorted_items(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in graded lexicographic order, leading slots first."""
        return sorted(
            self._terms.items(),
            key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])),
        )

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(int(e) for e in exponents), _ZERO)

    def scale(self, scalar: Fraction | int):
        scalar = Fraction(scalar)
        return type(self)(self._arity, ((e, c * scalar) for e, c in self._terms.items()))

    def _combine(self, other, sign: int):
        if type(other) is not type(self):
            return NotImplemented
        if other._arity != self._arity:
            raise ValueError(f"arity mismatch: {self._arity} vs {other._arity}")
        merged = dict(self._terms)
        for e, c in other._terms.items():
            total = merged.get(e, _ZERO) + sign * c
            if total:
                merged[e] = total
            else:
                merged.pop(e, None)
        return type(self)(self._arity, merged)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        return (
            type(other) is type(self)
            and other._arity == self._arity
            and other._terms == self._terms
        )

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Exponents]:
        return iter(self._terms)

    def __repr__(self) -> str:
        name = type(self).__name__
        body = ", ".join(f"{e}: {format_rational(c)}" for e, c in self.sorted_items())
        return f"{name}(arity={self._arity}, {{{body}}})"

    def permuted(self, order: Sequence[int]):
        """Reorder slots: slot ``i`` of the result is slot ``order[i]`` of self."""
        order = tuple(int(i) for i in order)
        if sorted(order) != list(range(self._arity)):
            raise ValueError(f"{order} is not a permutation of the {self._arity} slots")
        return type(self)(
            self._arity,
            ((tuple(e[j] for j in order), c) for e, c in self._terms.items()),
        )


class EvenPolynomial(_ExponentTable):
    """Sparse polynomial in the squared variables ``L_i^2``."""

    __slots__ = ()

    @classmethod
    def zero(cls, arity: int) -> "EvenPolynomial":
        return cls(arity)

    @classmethod
    def constant(cls, arity: int, value: Fraction | int) -> "EvenPolynomial":
        return cls(arity, {(0,) * arity: Fraction(value)})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coefficient: Fraction | int = 1) -> "EvenPolynomial":
        return cls(len(tuple(exponents)), {tuple(exponents): Fraction(coefficient)})

    def __mul__(self, other):
        if isinstance(other, EvenPolynomial):
            if other._arity != self._arity:
                raise ValueError(f"arity mismatch: {self._arity} vs {other._arity}")
            out: dict[Exponents, Fraction] = {}
            for ea, ca in self._terms.items():
                for eb, cb in other._terms.items():
                    key = tuple(x + y for x, y in zip(ea, eb))
                    total = out.get(key, _ZERO) + ca * cb
                    if total:
                        out[key] = total
                    else:
                        out.pop(key, None)
            return EvenPolynomial(self._arity, out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        """Exact value at the given variable values (not their squares)."""
        values = [Fraction(x) for x in point]
        if len(values) != self._arity:
            raise ValueError(f"point has length {len(values)}, expected {self._arity}")
        total = _ZERO
        for e, c in self._terms.items():
            term = c
            for x, d in zip(values, e):
                if d:
                    term *= x ** (2 * d)
            total += term
        return total

    def embed(self, slot_map: Sequence[int], new_arity: int) -> "EvenPolynomial":
        """Re-index variables: slot ``i`` moves to slot ``slot_map[i]`` (0-based).

        Unmapped slots of the result carry exponent zero.
        """
        slot_map = tuple(int(i) for i in slot_map)
        if len(slot_map) != self._arity:
            raise ValueError(f"slot_map has length {len(slot_map)}, expected {self._arity}")
        if len(set(slot_map)) != len(slot_map):
            raise ValueError(f"slot_map {slot_map} is not injective")
        if any(i < 0 or i >= new_arity for i in slot_map):
            raise ValueError(f"slot_map {slot_map} does not fit in arity {new_arity}")
        out: dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            moved = [0] * new_arity
            for i, d in enumerate(e):
                moved[slot_map[i]] = d
            out[tuple(moved)] = c
        return EvenPolynomial(new_arity, out)

    def homogeneous_degree(self) -> int | None:
        """Common exponent-vector weight of all terms, or None if mixed/zero."""
        degrees = {sum(e) for e in self._terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None


class Correlator(_ExponentTable):
    """Sparse Laurent tail: term ``(d_i) -> c`` reads ``c * prod z_i^(-2*d_i-2)``."""

    __slots__ = ()

    @classmethod
    def zero(cls, arity: int) -> "Correlator":
        return cls(arity)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coefficient: Fraction | int = 1) -> "Correlator":
        return cls(len(tuple(exponents)), {tuple(exponents): Fraction(coefficient)})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented


def laplace(poly: EvenPolynomial) -> Correlator:
    """Boundary-length transform of ``L_1 * ... * L_n * poly``.

    Termwise, ``c * prod_i L_i^(2*d_i)`` maps to ``c * prod_i (2*d_i + 1)!``
    on the unchanged exponent vector, now read in the Correlator convention
    ``z_i^(-2*d_i-2)``.  This is the closed form of
    ``integral_0^inf x^(2d+1) e^(-z x) dx = (2d+1)! / z^(2d+2)`` applied
    slot by slot.
    """
    out: dict[Exponents, Fraction] = {}
    for e, c in poly.items():
        weight = 1
        for d in e:
            weight *= factorial(2 * d + 1)
        out[e] = c * weight
    return Correlator(poly.arity, out)
