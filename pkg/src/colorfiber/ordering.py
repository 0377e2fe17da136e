"""The circular weight order on edge monomials.

Vertices sit on a circle in label order. The weight of an edge {u, v} is
the number of edges of the complete graph that avoid it entirely: chords
strictly inside the arc between u and v plus chords strictly outside, so
"long" chords are light and boundary edges are heavy. Monomials (exponent
EdgeVectors) are compared by total weight, then by total degree, then by
reverse-lexicographic tie-break on the exponent vector. Non-crossing edge
configurations outweigh crossing reconnections of the same vertices, which
is what makes the quadratic moves a Grobner basis under this order.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from colorfiber.graphs import EdgeVector, pair_count

__all__ = [
    "Binomial",
    "CROSSING",
    "DISJOINT",
    "EQ",
    "GT",
    "LT",
    "SHARED",
    "WeightOrder",
    "chord_relation",
    "compare",
    "crosses",
    "leading_term",
    "weight",
    "weight_table",
]

LT, EQ, GT = -1, 0, 1

CROSSING = "crossing"
DISJOINT = "disjoint"
SHARED = "shared"


def weight(u: int, v: int, n: int) -> int:
    """Number of K_n edges vertex-disjoint from and not crossing {u, v}."""
    if u > v:
        u, v = v, u
    if not (1 <= u < v <= n):
        raise ValueError(f"not a vertex pair on [{n}]: ({u}, {v})")
    inside = v - u - 1
    outside = n - 2 - inside
    return math.comb(inside, 2) + math.comb(outside, 2)


@functools.lru_cache(maxsize=None)
def weight_table(n: int) -> np.ndarray:
    """Weights of all pairs in pair-index order, cached per n."""
    out = np.empty(pair_count(n), dtype=np.int64)
    t = 0
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            out[t] = weight(u, v, n)
            t += 1
    out.flags.writeable = False
    return out


def chord_relation(e1: tuple[int, int], e2: tuple[int, int]) -> str:
    """CROSSING, DISJOINT, or SHARED for two chords of the circle.

    SHARED (a common endpoint) is reported as its own outcome rather than
    folded into either side, so callers cannot misclassify edges that meet
    at a vertex.
    """
    a, b = min(e1), max(e1)
    c, d = min(e2), max(e2)
    if a == b or c == d:
        raise ValueError("a chord needs two distinct endpoints")
    if len({a, b, c, d}) < 4:
        return SHARED
    return CROSSING if (a < c < b) != (a < d < b) else DISJOINT


def crosses(e1: tuple[int, int], e2: tuple[int, int], n: int) -> bool:
    """True when the chords cross strictly; raises on a shared endpoint."""
    for u, v in (e1, e2):
        if not (1 <= min(u, v) < max(u, v) <= n):
            raise ValueError(f"not a vertex pair on [{n}]: ({u}, {v})")
    rel = chord_relation(e1, e2)
    if rel == SHARED:
        raise ValueError(f"chords {e1} and {e2} share an endpoint")
    return rel == CROSSING


@dataclass(frozen=True)
class WeightOrder:
    """Total order on exponent vectors: weight, degree, then grevlex."""

    n: int
    weights: np.ndarray

    @classmethod
    def for_vertices(cls, n: int) -> "WeightOrder":
        return cls(n, weight_table(n))

    def monomial_weight(self, m: EdgeVector) -> int:
        self._check(m)
        return int(np.dot(self.weights, m.entries))

    def compare(self, m1: EdgeVector, m2: EdgeVector) -> int:
        """LT, EQ, or GT for m1 against m2."""
        self._check(m1)
        self._check(m2)
        w1 = int(np.dot(self.weights, m1.entries))
        w2 = int(np.dot(self.weights, m2.entries))
        if w1 != w2:
            return GT if w1 > w2 else LT
        d1 = int(m1.entries.sum())
        d2 = int(m2.entries.sum())
        if d1 != d2:
            return GT if d1 > d2 else LT
        diff = m1.entries - m2.entries
        nz = np.flatnonzero(diff)
        if nz.size == 0:
            return EQ
        # grevlex: smaller exponent at the rightmost difference wins
        return GT if diff[nz[-1]] < 0 else LT

    def key(self, m: EdgeVector):
        """Sort key consistent with compare (ascending)."""
        self._check(m)
        w = int(np.dot(self.weights, m.entries))
        d = int(m.entries.sum())
        return (w, d, tuple(-x for x in reversed(m.entries.tolist())))

    def _check(self, m: EdgeVector) -> None:
        if m.n != self.n:
            raise ValueError(f"monomial on {m.n} vertices, order on {self.n}")


def compare(m1: EdgeVector, m2: EdgeVector, order: WeightOrder | None = None) -> int:
    if order is None:
        order = WeightOrder.for_vertices(m1.n)
    return order.compare(m1, m2)


@dataclass(frozen=True)
class Binomial:
    """Difference of two monomials, stored as nonnegative exponent vectors."""

    plus: EdgeVector
    minus: EdgeVector

    def __post_init__(self) -> None:
        if self.plus.n != self.minus.n:
            raise ValueError("binomial sides must live on the same vertex set")
        if not (self.plus.is_multigraph() and self.minus.is_multigraph()):
            raise ValueError("binomial sides must have nonnegative exponents")

    @classmethod
    def from_walk(cls, gamma: EdgeVector) -> "Binomial":
        """Split a signed vector into its positive and negative parts."""
        return cls(gamma.positive_part(), gamma.negative_part())

    @property
    def n(self) -> int:
        return self.plus.n

    def walk(self) -> EdgeVector:
        return self.plus - self.minus


def leading_term(binomial: Binomial, order: WeightOrder | None = None) -> EdgeVector:
    """The order-larger side. Distinct monomials never tie (total order)."""
    if order is None:
        order = WeightOrder.for_vertices(binomial.n)
    cmp = order.compare(binomial.plus, binomial.minus)
    if cmp == EQ:
        if binomial.plus == binomial.minus:
            raise ValueError("binomial has equal sides; no leading term")
        raise AssertionError("total order reported EQ for distinct monomials")
    return binomial.plus if cmp == GT else binomial.minus
