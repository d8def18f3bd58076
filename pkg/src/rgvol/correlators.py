"""Correlation functions of the Airy curve, computed two independent ways.

The curve ``x = z^2/2``, ``y = z`` has a single simple branch point at the
origin with global involution ``z -> -z``.  Its correlators are Laurent
tails in the ``z_i^-2``; we store the scalar coefficient function of the
differential (one ``dz_i`` per slot is implicit).

* :func:`correlator_laplace` transforms the volume polynomial slotwise.
* :func:`correlator_eo` runs the residue recursion at the branch point.

The residue engine never manipulates denominators ``z_1^2 - z_j^2``: the
kernel's action on a monomial is pre-expanded into the Laurent polynomial
:func:`j_term_operator`, so every intermediate object is a
:class:`~rgvol.algebra.Correlator`.  The diagonal specialisation of the
two-point kernel, ``1/(4 z^2)``, is baked into the torus base case; its
off-diagonal role is baked into the j-term operator.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import cache

from . import volumes
from .algebra import Correlator, Exponents, laplace
from .volumes import VolumeTable

_ZERO = Fraction(0)


def _require_stable(genus: int, boundaries: int) -> tuple[int, int]:
    g, n = int(genus), int(boundaries)
    if n < 1 or g < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"({g}, {n}) is not a stable type")
    return g, n


def correlator_laplace(
    genus: int, boundaries: int, table: VolumeTable | None = None
) -> Correlator:
    """Correlator as the slotwise transform of the volume polynomial."""
    g, n = _require_stable(genus, boundaries)
    poly = table.volume(g, n) if table is not None else volumes.volume(g, n)
    return laplace(poly)


@cache
def j_term_operator(d: int) -> Correlator:
    """Image of one first-slot monomial under the pair-of-boundaries kernel.

    A monomial ``zeta^(-2d-2)`` fed through the branch-point residue and
    the ``-d/dz_j`` step comes out as the arity-2 Laurent polynomial
    ``sum_{r+s=d+1} (2s+1) * z_1^(-2r-2) * z_j^(-2s-2)``.
    """
    d = int(d)
    if d < 0:
        raise ValueError(f"operator degree must be nonnegative, got {d}")
    terms = {(r, d + 1 - r): Fraction(2 * (d + 1 - r) + 1) for r in range(d + 2)}
    return Correlator(2, terms)


def diagonal_stable_term(w: Correlator) -> Correlator:
    """Merge slots 1 and 2 onto ``z_1`` and divide by ``2 z_1^2``.

    Termwise: exponents ``(p, q, rest)`` map to ``(p + q + 2, rest)`` with
    half the coefficient.
    """
    if w.arity < 2:
        raise ValueError(f"need at least two slots to merge, got arity {w.arity}")
    out: dict[Exponents, Fraction] = {}
    for e, c in w.items():
        key = (e[0] + e[1] + 2,) + e[2:]
        total = out.get(key, _ZERO) + c / 2
        if total:
            out[key] = total
        else:
            out.pop(key, None)
    return Correlator(w.arity - 1, out)


class CorrelatorTable:
    """Memoized residue-recursion correlators keyed by ``(g, n)``."""

    def __init__(self) -> None:
        self._values: dict[tuple[int, int], Correlator] = {}
        self._lock = threading.Lock()

    def correlator(self, genus: int, boundaries: int) -> Correlator:
        g, n = _require_stable(genus, boundaries)
        if (g, n) == (0, 3):
            # Smallest stable case; the recursion bottoms out here.
            return Correlator.monomial((0, 0, 0), 1)
        if (g, n) == (1, 1):
            # Diagonal two-point kernel 1/(4 zeta^2) through the residue:
            # (1/(2 z^2)) * (1/(4 z^2)) = (1/8) z^-4.
            return Correlator.monomial((1,), Fraction(1, 8))
        value = self._values.get((g, n))
        if value is None:
            value = self._assemble(g, n)
            weight = 3 * g - 3 + n
            assert all(sum(e) == weight for e in value), (g, n)
            with self._lock:
                value = self._values.setdefault((g, n), value)
        return value

    def _assemble(self, g: int, n: int) -> Correlator:
        acc: dict[Exponents, Fraction] = {}

        def add(exponents: Exponents, coefficient: Fraction) -> None:
            total = acc.get(exponents, _ZERO) + coefficient
            if total:
                acc[exponents] = total
            else:
                acc.pop(exponents, None)

        labels = list(range(2, n + 1))

        # Pair-of-boundaries terms, slot 1 of the smaller correlator being
        # the recycled variable (the correlator is symmetric, so any slot
        # choice is equivalent; this one matches the volume convention).
        if n >= 2:
            prev = self.correlator(g, n - 1)
            for j in labels:
                spectators = [lab for lab in labels if lab != j]
                for e, c in prev.items():
                    base = [0] * n
                    for slot, lab in enumerate(spectators, start=1):
                        base[lab - 1] = e[slot]
                    for (r, s), w in j_term_operator(e[0]).items():
                        out = list(base)
                        out[0] = r
                        out[j - 1] = s
                        add(tuple(out), c * w)

        # Genus-lowering diagonal term.
        if g >= 1 and 2 * (g - 1) - 2 + (n + 1) > 0:
            merged = diagonal_stable_term(self.correlator(g - 1, n + 1))
            for e, c in merged.items():
                add(e, c)

        # Stable splittings: both factors put their first slot on z_1; the
        # two slots merge with the same exponent bookkeeping as the
        # diagonal term.
        m = len(labels)
        for mask in range(1 << m):
            left = [labels[i] for i in range(m) if mask >> i & 1]
            right = [labels[i] for i in range(m) if not mask >> i & 1]
            for g1 in range(g + 1):
                g2 = g - g1
                if 2 * g1 - 2 + len(left) + 1 <= 0 or 2 * g2 - 2 + len(right) + 1 <= 0:
                    continue
                w1 = self.correlator(g1, len(left) + 1)
                w2 = self.correlator(g2, len(right) + 1)
                for e1, c1 in w1.items():
                    for e2, c2 in w2.items():
                        out = [0] * n
                        out[0] = e1[0] + e2[0] + 2
                        for slot, lab in enumerate(left, start=1):
                            out[lab - 1] = e1[slot]
                        for slot, lab in enumerate(right, start=1):
                            out[lab - 1] = e2[slot]
                        add(tuple(out), c1 * c2 / 2)

        return Correlator(n, acc)


_SHARED_TABLE = CorrelatorTable()


def correlator_eo(genus: int, boundaries: int) -> Correlator:
    """Correlator from the residue recursion, via the shared table."""
    return _SHARED_TABLE.correlator(genus, boundaries)
