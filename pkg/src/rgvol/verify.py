"""One-shot cross-path verification suite.

Runs, for every stable type up to a complexity bound, the independent
computation paths against each other plus the structural property checks,
and returns an ordered list of named results.  The CLI ``verify``
subcommand renders these as a pass/fail table.

All checks go through the module-level entry points (late-bound through
the modules), so a corrupted computation path shows up as a named FAIL.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from . import correlators, intersections, volumes
from .ribbon import HalfEdgeLimitError, brute_volume

#: Sample points for the brute-force cross-checks, per boundary count.
_BRUTE_POINTS = {
    1: [(2,), (5,), (Fraction(7, 3),)],
    2: [(3, 5), (1, 7), (Fraction(5, 2), Fraction(7, 3))],
    3: [(3, 4, 5), (1, 1, 5), (Fraction(7, 2), 2, Fraction(9, 4))],
    4: [(3, 4, 5, 6), (2, 3, 5, 7), (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5))],
}

#: Complexity bound below which the brute-force path is exercised.
BRUTE_COMPLEXITY = 2


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def stable_types(max_complexity: int) -> list[tuple[int, int]]:
    """Stable (g, n) with 2g - 2 + n <= max_complexity, in check order."""
    out = []
    for complexity in range(1, max_complexity + 1):
        for g in range(complexity + 1):
            n = complexity + 2 - 2 * g
            if n >= 1:
                out.append((g, n))
    return out


def _symmetry_generators(n: int) -> list[tuple[int, ...]]:
    if n == 1:
        return []
    if n <= 4:
        return [p for p in permutations(range(n)) if p != tuple(range(n))]
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple(range(1, n)) + (0,)
    return [swap, cycle]


def run_checks(
    max_complexity: int,
    seed: int | None = None,
    include_brute: bool = True,
) -> list[CheckResult]:
    """Run the suite up to the given complexity; deterministic order."""
    if max_complexity < 1:
        raise ValueError(f"max complexity must be >= 1, got {max_complexity}")
    results: list[CheckResult] = []

    def record(name: str, passed: bool, detail: str = "") -> None:
        results.append(CheckResult(name, bool(passed), detail))

    for g, n in stable_types(max_complexity):
        tag = f"({g},{n})"
        vol = volumes.volume(g, n)
        assembled = volumes.volume_from_intersections(g, n)
        record(f"volume{tag} recursion == intersection assembly", vol == assembled)

        via_laplace = correlators.correlator_laplace(g, n)
        via_residues = correlators.correlator_eo(g, n)
        record(f"correlator{tag} laplace == residue recursion", via_laplace == via_residues)

        record(
            f"volume{tag} symmetric",
            all(vol.permuted(p) == vol for p in _symmetry_generators(n)),
        )
        record(
            f"volume{tag} homogeneous of weight {3 * g - 3 + n}",
            vol.homogeneous_degree() == 3 * g - 3 + n,
        )
        record(f"volume{tag} coefficients positive", all(c > 0 for _, c in vol.items()))

        if include_brute and 2 * g - 2 + n <= BRUTE_COMPLEXITY:
            try:
                ok = all(
                    brute_volume(g, n, point) == vol.evaluate(point)
                    for point in _BRUTE_POINTS[n]
                )
                detail = ""
            except HalfEdgeLimitError as exc:
                ok, detail = False, str(exc)
            record(f"volume{tag} == brute-force cell integration", ok, detail)

    rng = random.Random(0 if seed is None else seed)
    off_dimension_ok = True
    for _ in range(20):
        g = rng.randrange(0, 3)
        n = rng.randrange(1, 6)
        if 2 * g - 2 + n <= 0:
            continue
        target = 3 * g - 3 + n
        degrees = [rng.randrange(0, target + 2) for _ in range(n)]
        if sum(degrees) == target:
            degrees[0] += 1
        if intersections.intersection(g, degrees) != 0:
            off_dimension_ok = False
    record("intersection dimension filter (seeded spot checks)", off_dimension_ok)

    return results
