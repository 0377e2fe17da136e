"""Quadratic switch moves: enumeration, recognition, application.

A quadratic move takes two edges off one perfect matching of four vertices
and puts them back along another matching of the same four vertices; it is
admissible when one of the two vertex pairs left unmatched by both
matchings is monochromatic. These moves are exactly the kernel vectors of
1-norm 4, and they connect every multigraph fiber.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from colorfiber.graphs import (
    ColorAssignment,
    EdgeVector,
    GuardExceeded,
    cell_count,
    is_monomial_walk,
    pair_count,
    pair_index,
)

__all__ = [
    "Move",
    "MoveSet",
    "apply_move",
    "canonical_sign",
    "enumerate_quadratic_moves",
    "is_basis_move",
    "minimal_norm_check",
]

#: minimal_norm_check refuses larger instances; the scan is exhaustive.
NORM_SCAN_MAX_PAIRS = 28


@dataclass(frozen=True)
class Move:
    """A sparse signed edge vector (support pairs plus values).

    Stored sparsely so that large move sets on many vertices stay small;
    ``as_edge_vector`` materializes the dense form.
    """

    n: int
    pairs: tuple[tuple[int, int], ...]
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.pairs) != len(self.values):
            raise ValueError("pairs and values must run in parallel")
        idx = [pair_index(u, v, self.n) for u, v in self.pairs]
        if sorted(idx) != idx or len(set(idx)) != len(idx):
            raise ValueError("move pairs must be distinct and in index order")
        if any(val == 0 for val in self.values):
            raise ValueError("move values must be nonzero")

    @classmethod
    def from_edge_vector(cls, gamma: EdgeVector) -> "Move":
        pairs = gamma.support()
        values = tuple(gamma.entry(u, v) for u, v in pairs)
        return cls(gamma.n, pairs, values)

    def as_edge_vector(self) -> EdgeVector:
        return EdgeVector.from_edges(self.n, ((u, v, m) for (u, v), m in zip(self.pairs, self.values)))

    def one_norm(self) -> int:
        return sum(abs(v) for v in self.values)

    def negated(self) -> "Move":
        return Move(self.n, self.pairs, tuple(-v for v in self.values))

    def cycle(self) -> tuple[int, int, int, int]:
        """Bracket writing [u, v, u', v'] of a quadratic move.

        Positive edges come first and third; defined only for moves whose
        dense form satisfies is_basis_move.
        """
        pos = [p for p, m in zip(self.pairs, self.values) if m > 0]
        neg = {frozenset(p) for p, m in zip(self.pairs, self.values) if m < 0}
        if len(pos) != 2 or len(neg) != 2:
            raise ValueError("not a quadratic move")
        (u, v), (x, y) = pos
        if frozenset((v, x)) in neg and frozenset((y, u)) in neg:
            return u, v, x, y
        if frozenset((v, y)) in neg and frozenset((x, u)) in neg:
            return u, v, y, x
        raise ValueError("not a quadratic move")

    def _key(self) -> tuple:
        return (self.n, self.pairs, self.values)


def canonical_sign(gamma: EdgeVector) -> EdgeVector:
    """Flip the sign if needed so the first support entry is positive."""
    nz = np.flatnonzero(gamma.entries)
    if nz.size and gamma.entries[nz[0]] < 0:
        return -gamma
    return gamma


@dataclass(frozen=True)
class MoveSet:
    """Deduplicated moves (up to global sign) over a fixed coloring."""

    z: ColorAssignment
    moves: tuple[Move, ...]

    @classmethod
    def build(cls, z: ColorAssignment, vectors: Sequence[EdgeVector]) -> "MoveSet":
        seen: dict[bytes, None] = {}
        out: list[Move] = []
        for gamma in vectors:
            if gamma.n != z.n:
                raise ValueError("move on a different vertex count than the coloring")
            if gamma.is_zero():
                raise ValueError("the zero vector is not a move")
            if not is_monomial_walk(gamma, z):
                raise ValueError(f"not a kernel vector: {gamma!r}")
            canon = canonical_sign(gamma)
            key = canon.entries.tobytes()
            if key in seen:
                continue
            seen[key] = None
            out.append(Move.from_edge_vector(canon))
        return cls(z, tuple(out))

    @property
    def n(self) -> int:
        return self.z.n

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    def __getitem__(self, i: int) -> Move:
        return self.moves[i]

    def packed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(indices, values, lengths) arrays for the chain kernels."""
        width = max((len(m.pairs) for m in self.moves), default=1)
        idx = np.zeros((len(self.moves), width), dtype=np.int32)
        val = np.zeros((len(self.moves), width), dtype=np.int64)
        length = np.zeros(len(self.moves), dtype=np.int32)
        for i, m in enumerate(self.moves):
            length[i] = len(m.pairs)
            for j, ((u, v), x) in enumerate(zip(m.pairs, m.values)):
                idx[i, j] = pair_index(u, v, self.n)
                val[i, j] = x
        return idx, val, length

    def dense(self) -> np.ndarray:
        """(len, pair_count) matrix of the canonical move vectors."""
        out = np.zeros((len(self.moves), pair_count(self.n)), dtype=np.int64)
        for i, m in enumerate(self.moves):
            for (u, v), x in zip(m.pairs, m.values):
                out[i, pair_index(u, v, self.n)] = x
        return out


def enumerate_quadratic_moves(n: int, z: ColorAssignment) -> MoveSet:
    """All kernel vectors of 1-norm 4, one representative per sign pair.

    For each 4-subset {a<b<c<d} the three matching exchanges are admitted
    when the matching untouched by the exchange contains a monochromatic
    pair; this is the same admissibility test the move recognizer uses.
    """
    if z.n != n:
        raise ValueError(f"coloring on {z.n} vertices, requested n={n}")
    P = pair_count(n)
    vectors: list[EdgeVector] = []
    col = z.colors
    for a, b, c, d in itertools.combinations(range(1, n + 1), 4):
        za, zb, zc, zd = col[a - 1], col[b - 1], col[c - 1], col[d - 1]
        # exchange between {ab, cd} and {ad, bc}: untouched matching {ac, bd}
        if za == zc or zb == zd:
            vectors.append(_four_cycle(n, P, (a, b), (c, d), (b, c), (a, d)))
        # exchange between {ab, cd} and {ac, bd}: untouched matching {ad, bc}
        if za == zd or zb == zc:
            vectors.append(_four_cycle(n, P, (a, b), (c, d), (a, c), (b, d)))
        # exchange between {ad, bc} and {ac, bd}: untouched matching {ab, cd}
        if za == zb or zc == zd:
            vectors.append(_four_cycle(n, P, (a, d), (b, c), (a, c), (b, d)))
    return MoveSet.build(z, vectors)


def _four_cycle(n, P, pos1, pos2, neg1, neg2) -> EdgeVector:
    arr = np.zeros(P, dtype=np.int64)
    arr[pair_index(*pos1, n)] += 1
    arr[pair_index(*pos2, n)] += 1
    arr[pair_index(*neg1, n)] -= 1
    arr[pair_index(*neg2, n)] -= 1
    return EdgeVector(n, arr)


def is_basis_move(gamma: EdgeVector, z: ColorAssignment) -> bool:
    """True for alternating 4-cycles whose untouched vertex pairing has a
    monochromatic pair; agrees with membership in the enumerated set."""
    if z.n != gamma.n:
        raise ValueError(f"coloring on {z.n} vertices, vector on {gamma.n}")
    if gamma.one_norm() != 4:
        return False
    entries = gamma.entries
    if entries.max() > 1 or entries.min() < -1:
        return False
    pos = [p for p in gamma.support() if gamma.entry(*p) > 0]
    neg = [p for p in gamma.support() if gamma.entry(*p) < 0]
    if len(pos) != 2 or len(neg) != 2:
        return False
    verts = {v for p in pos for v in p}
    if len(verts) != 4 or {v for p in neg for v in p} != verts:
        return False
    # the third matching: corners not joined within pos nor within neg
    joined = {frozenset(p) for p in pos} | {frozenset(p) for p in neg}
    rest = [
        (u, v)
        for u, v in itertools.combinations(sorted(verts), 2)
        if frozenset((u, v)) not in joined
    ]
    if len(rest) != 2:
        return False
    return any(z.color_of(u) == z.color_of(v) for u, v in rest)


def apply_move(gamma: EdgeVector, move: Move) -> EdgeVector | None:
    """gamma + move when the result stays nonnegative, else None (reject)."""
    if move.n != gamma.n:
        raise ValueError(f"move on {move.n} vertices, graph on {gamma.n}")
    arr = gamma.entries.copy()
    for (u, v), x in zip(move.pairs, move.values):
        arr[pair_index(u, v, gamma.n)] += x
    if (arr < 0).any():
        return None
    return EdgeVector(gamma.n, arr)


def minimal_norm_check(n: int, z: ColorAssignment) -> int | None:
    """Smallest 1-norm of a nonzero kernel vector, scanning norms 1..4.

    Exhaustive over all signed vectors of 1-norm at most 4; returns None
    when no nonzero kernel vector of norm <= 4 exists (only possible when
    no quadratic move is admissible). Guarded to pair_count(n) <= 28.
    """
    if z.n != n:
        raise ValueError(f"coloring on {z.n} vertices, requested n={n}")
    P = pair_count(n)
    if P > NORM_SCAN_MAX_PAIRS:
        raise GuardExceeded(
            f"minimal_norm_check is limited to pair_count(n) <= {NORM_SCAN_MAX_PAIRS}"
        )
    from colorfiber.graphs import _pair_endpoints

    us, vs = _pair_endpoints(n)
    cells = z.pair_cells()
    ncells = cell_count(z.k)
    for norm in range(1, 5):
        for s in range(1, norm + 1):
            mags = [comp for comp in _compositions(norm, s)]
            for supp in itertools.combinations(range(P), s):
                for comp in mags:
                    for signs in itertools.product((1, -1), repeat=s):
                        dbal = [0] * n
                        for t, m, sg in zip(supp, comp, signs):
                            x = m * sg
                            dbal[us[t]] += x
                            dbal[vs[t]] += x
                        if any(dbal):
                            continue
                        cbal = [0] * ncells
                        for t, m, sg in zip(supp, comp, signs):
                            cbal[cells[t]] += m * sg
                        if not any(cbal):
                            return norm
    return None


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of `total` into `parts` positive parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)
