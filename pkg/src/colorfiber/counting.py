"""Two-color lattice-point counting: closed form versus exhaustive oracle.

For two color classes of sizes n1 and n2 there is a closed form for the
number of distinct degree-color labels achievable with exactly r edges
(equivalently, lattice points of the r-th dilate of the design polytope,
by unimodularity of its regular triangulation). ``hilbert_k2`` evaluates
that closed form verbatim. Its first product repeats one binomial factor,
and the exhaustive count disagrees with it on most inputs; wherever they
differ, the count is authoritative. We surface the difference through
``check_closed_form`` and ``discrepancy_report`` rather than shipping a
silent correction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from colorfiber.graphs import (
    ColorAssignment,
    GuardExceeded,
    design_matrix,
    pair_count,
)

__all__ = [
    "CountCheck",
    "DiscrepancyReport",
    "ORACLE_MAX_MULTISETS",
    "check_closed_form",
    "discrepancy_report",
    "hilbert_k2",
    "lattice_count_oracle",
    "two_block_coloring",
]

#: lattice_count_oracle enumerates C(P+r-1, r) edge multisets; refuse more.
ORACLE_MAX_MULTISETS = 5_000_000

DISCREPANCY_NOTE = (
    "The closed form's leading product uses the same binomial factor twice; "
    "where formula and exhaustive count disagree, the count is authoritative. "
    "The formula is evaluated verbatim, not silently corrected."
)


def _binom(a: int, b: int) -> int:
    """Binomial coefficient with the counting convention: 0 outside 0<=b<=a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def hilbert_k2(n1: int, n2: int, r: int) -> int:
    """The two-color closed form at dilation r, evaluated as printed.

    Sums over weak compositions (t11, t12, t22) of r, one per unordered
    color pair. See the module note: this is kept verbatim even though
    the exhaustive oracle contradicts it on most inputs.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("both color classes must be nonempty")
    if r < 0:
        raise ValueError("dilation must be nonnegative")
    total = 0
    for t11 in range(r + 1):
        for t12 in range(r - t11 + 1):
            t22 = r - t11 - t12
            big1 = _binom(n1 + 2 * t11 + 2 * t12, n1 - 1)
            low1 = _binom(n1 - 2 + t11 + t12, n1 - 1)
            low2 = _binom(n2 - 2 + t22, n2 - 1)
            total += (
                big1 * big1
                - n1 * low1 * big1
                - n2 * big1 * low2
                + n1 * n2 * low1 * low2
            )
    return total


def two_block_coloring(n1: int, n2: int) -> ColorAssignment:
    """Colors 1..1 2..2: the first n1 vertices color 1, the rest color 2."""
    if n1 < 1 or n2 < 1:
        raise ValueError("both color classes must be nonempty")
    return ColorAssignment((1,) * n1 + (2,) * n2, 2)


def lattice_count_oracle(n: int, z: ColorAssignment, r: int) -> int:
    """Number of distinct degree-color labels among all r-edge multigraphs.

    Exhaustive: walks every multiset of r vertex pairs (stars and bars over
    the pair index) and collects the distinct design-matrix images in a
    set. By the unimodular-triangulation remark this equals the lattice
    point count of the r-th dilate. Guarded by ORACLE_MAX_MULTISETS.
    """
    if z.n != n:
        raise ValueError(f"coloring on {z.n} vertices, requested n={n}")
    if r < 0:
        raise ValueError("dilation must be nonnegative")
    P = pair_count(n)
    if comb(P + r - 1, r) > ORACLE_MAX_MULTISETS:
        raise GuardExceeded(
            f"oracle would enumerate {comb(P + r - 1, r)} multisets; "
            f"the guard is {ORACLE_MAX_MULTISETS}"
        )
    dc = design_matrix(n, z).matrix
    images: set[bytes] = set()
    img = np.zeros(dc.shape[0], dtype=np.int64)

    def rec(pos: int, remaining: int) -> None:
        if pos == P - 1:
            images.add((img + remaining * dc[:, pos]).tobytes())
            return
        col = dc[:, pos]
        for m in range(remaining + 1):
            rec(pos + 1, remaining - m)
            img[:] += col
        img[:] -= (remaining + 1) * col

    rec(0, r)
    return len(images)


@dataclass(frozen=True)
class CountCheck:
    n1: int
    n2: int
    r: int
    formula: int
    oracle: int

    @property
    def match(self) -> bool:
        return self.formula == self.oracle

    def as_dict(self) -> dict:
        return {
            "n1": self.n1,
            "n2": self.n2,
            "r": self.r,
            "formula": self.formula,
            "oracle": self.oracle,
            "match": self.match,
        }


def check_closed_form(n1: int, n2: int, r: int) -> CountCheck:
    """Evaluate formula and oracle on the same instance; no verdicts."""
    formula = hilbert_k2(n1, n2, r)
    oracle = lattice_count_oracle(n1 + n2, two_block_coloring(n1, n2), r)
    return CountCheck(n1, n2, r, formula, oracle)


@dataclass(frozen=True)
class DiscrepancyReport:
    checks: tuple[CountCheck, ...]
    note: str = DISCREPANCY_NOTE

    @property
    def mismatches(self) -> tuple[CountCheck, ...]:
        return tuple(c for c in self.checks if not c.match)

    @property
    def all_match(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {
            "note": self.note,
            "all_match": self.all_match,
            "mismatch_count": len(self.mismatches),
            "checks": [c.as_dict() for c in self.checks],
        }


def discrepancy_report(
    n1_values: Sequence[int] = (1, 2, 3),
    n2_values: Sequence[int] = (1, 2, 3),
    r_values: Sequence[int] = (0, 1, 2, 3),
) -> DiscrepancyReport:
    """Machine-readable formula-vs-oracle sweep over a grid of instances."""
    checks = tuple(
        check_closed_form(n1, n2, r)
        for n1 in n1_values
        for n2 in n2_values
        for r in r_values
    )
    return DiscrepancyReport(checks)
