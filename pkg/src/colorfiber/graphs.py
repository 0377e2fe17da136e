"""Colored multigraphs as pair-indexed integer vectors.

Vertices are labeled 1..n and colors 1..k everywhere in the public API;
internal arrays are 0-based. A graph, simple graph, move, or walk is one
``EdgeVector``: a signed 64-bit integer per unordered vertex pair, stored
in lexicographic pair order (1,2), (1,3), ..., (1,n), (2,3), ... The three
views differ only in which entries are legal (nonnegative, 0/1, or any
sign); operations state which view they expect.

The joint degree-color statistic of a multigraph is a ``CDegSequence``:
per-vertex degrees together with per-color-pair edge counts, the latter in
lexicographic order over unordered color pairs (1,1), (1,2), ..., (k,k).
``design_matrix`` stacks the vertex-pair incidence rows over the color-cell
indicator rows; a signed vector is a *monomial walk* exactly when that
matrix maps it to zero.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "CDegSequence",
    "ColorAssignment",
    "DesignMatrix",
    "EdgeVector",
    "GuardExceeded",
    "all_pairs",
    "cdeg",
    "cell_count",
    "cell_index",
    "design_matrix",
    "index_cell",
    "index_pair",
    "is_monomial_walk",
    "pair_count",
    "pair_index",
    "pos_neg_colors",
    "pos_neg_degrees",
    "walk_from_brackets",
]


class GuardExceeded(RuntimeError):
    """An exhaustive computation refused to start; raise its limit to proceed."""


def pair_count(n: int) -> int:
    """Number of unordered vertex pairs on n vertices."""
    return n * (n - 1) // 2


def pair_index(u: int, v: int, n: int) -> int:
    """Linear index of the unordered pair {u, v}, 1-based labels.

    Pairs are ranked lexicographically: (1,2) is 0 and (n-1,n) is
    pair_count(n) - 1.
    """
    if u > v:
        u, v = v, u
    if not (1 <= u < v <= n):
        raise ValueError(f"not a vertex pair on [{n}]: ({u}, {v})")
    return (u - 1) * n - u * (u + 1) // 2 + v - 1


def index_pair(index: int, n: int) -> tuple[int, int]:
    """Inverse of pair_index."""
    if not (0 <= index < pair_count(n)):
        raise ValueError(f"pair index {index} out of range for n={n}")
    u = 1
    row = n - 1
    while index >= row:
        index -= row
        row -= 1
        u += 1
    return u, u + 1 + index


def all_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All unordered pairs on [n] in index order."""
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            yield u, v


def cell_count(k: int) -> int:
    """Number of unordered color pairs (with repetition) on k colors."""
    return k * (k + 1) // 2


def cell_index(i: int, j: int, k: int) -> int:
    """Linear index of the unordered color pair {i, j}, 1-based colors."""
    if i > j:
        i, j = j, i
    if not (1 <= i <= j <= k):
        raise ValueError(f"not a color pair on [{k}]: ({i}, {j})")
    return (i - 1) * (k + 1) - i * (i - 1) // 2 + (j - i)


def index_cell(index: int, k: int) -> tuple[int, int]:
    """Inverse of cell_index."""
    if not (0 <= index < cell_count(k)):
        raise ValueError(f"cell index {index} out of range for k={k}")
    i = 1
    row = k
    while index >= row:
        index -= row
        row -= 1
        i += 1
    return i, i + index


@functools.lru_cache(maxsize=None)
def _pair_endpoints(n: int) -> tuple[np.ndarray, np.ndarray]:
    """0-based endpoint arrays (u_of_pair, v_of_pair), cached per n."""
    us = np.empty(pair_count(n), dtype=np.int32)
    vs = np.empty(pair_count(n), dtype=np.int32)
    t = 0
    for u in range(n):
        for v in range(u + 1, n):
            us[t] = u
            vs[t] = v
            t += 1
    us.flags.writeable = False
    vs.flags.writeable = False
    return us, vs


@dataclass(frozen=True)
class ColorAssignment:
    """A k-coloring of the vertices 1..n.

    ``colors[i]`` is the color of vertex i+1. The palette size k is
    explicit so that colors with empty classes are representable.
    """

    colors: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be positive")
        if not self.colors:
            raise ValueError("empty coloring")
        for c in self.colors:
            if not (1 <= c <= self.k):
                raise ValueError(f"color {c} outside 1..{self.k}")

    @classmethod
    def from_sequence(cls, colors: Sequence[int], k: int | None = None) -> "ColorAssignment":
        colors = tuple(int(c) for c in colors)
        if k is None:
            k = max(colors, default=0)
        return cls(colors, int(k))

    @property
    def n(self) -> int:
        return len(self.colors)

    def color_of(self, v: int) -> int:
        if not (1 <= v <= self.n):
            raise ValueError(f"vertex {v} outside 1..{self.n}")
        return self.colors[v - 1]

    def is_sorted(self) -> bool:
        """True when the colors are non-decreasing along 1..n."""
        return all(a <= b for a, b in zip(self.colors, self.colors[1:]))

    def class_of(self, color: int) -> tuple[int, ...]:
        """Vertices carrying the given color (possibly empty)."""
        if not (1 <= color <= self.k):
            raise ValueError(f"color {color} outside 1..{self.k}")
        return tuple(v for v in range(1, self.n + 1) if self.colors[v - 1] == color)

    def cell_of_pair(self, u: int, v: int) -> int:
        """Cell index of the color pair of {u, v}."""
        return cell_index(self.color_of(u), self.color_of(v), self.k)

    def pair_cells(self) -> np.ndarray:
        """Cell index of every vertex pair, in pair-index order."""
        return _pair_cells(self)


@functools.lru_cache(maxsize=None)
def _pair_cells(z: ColorAssignment) -> np.ndarray:
    us, vs = _pair_endpoints(z.n)
    col = np.asarray(z.colors, dtype=np.int64)
    ci = col[us]
    cj = col[vs]
    lo = np.minimum(ci, cj)
    hi = np.maximum(ci, cj)
    cells = (lo - 1) * (z.k + 1) - lo * (lo - 1) // 2 + (hi - lo)
    cells = cells.astype(np.int32)
    cells.flags.writeable = False
    return cells


class EdgeVector:
    """An integer vector indexed by unordered vertex pairs.

    Immutable. Equality and hashing are by (n, entries), so EdgeVectors can
    key dictionaries and sets.
    """

    __slots__ = ("n", "entries", "_hash")

    def __init__(self, n: int, entries: Iterable[int] | np.ndarray):
        arr = np.array(entries, dtype=np.int64)
        if arr.shape != (pair_count(n),):
            raise ValueError(
                f"expected {pair_count(n)} entries for n={n}, got shape {arr.shape}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("EdgeVector is immutable")

    @classmethod
    def zeros(cls, n: int) -> "EdgeVector":
        return cls(n, np.zeros(pair_count(n), dtype=np.int64))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> "EdgeVector":
        """Build from (u, v, multiplicity) triples; repeats accumulate."""
        arr = np.zeros(pair_count(n), dtype=np.int64)
        for u, v, m in edges:
            arr[pair_index(u, v, n)] += m
        return cls(n, arr)

    def entry(self, u: int, v: int) -> int:
        return int(self.entries[pair_index(u, v, self.n)])

    def one_norm(self) -> int:
        return int(np.abs(self.entries).sum())

    def total(self) -> int:
        """Sum of entries (the edge count, for a multigraph view)."""
        return int(self.entries.sum())

    def is_multigraph(self) -> bool:
        return bool((self.entries >= 0).all())

    def is_simple(self) -> bool:
        return bool(((self.entries == 0) | (self.entries == 1)).all())

    def is_zero(self) -> bool:
        return not self.entries.any()

    def positive_part(self) -> "EdgeVector":
        return EdgeVector(self.n, np.maximum(self.entries, 0))

    def negative_part(self) -> "EdgeVector":
        """Entrywise max(-x, 0), so self = positive_part - negative_part."""
        return EdgeVector(self.n, np.maximum(-self.entries, 0))

    def support(self) -> tuple[tuple[int, int], ...]:
        """Pairs with a nonzero entry, in pair-index order."""
        return tuple(index_pair(int(t), self.n) for t in np.flatnonzero(self.entries))

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Nonzero (u, v, entry) triples in pair-index order."""
        for t in np.flatnonzero(self.entries):
            u, v = index_pair(int(t), self.n)
            yield u, v, int(self.entries[t])

    def _binop(self, other: "EdgeVector", op) -> "EdgeVector":
        if not isinstance(other, EdgeVector):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"mismatched vertex counts: {self.n} vs {other.n}")
        return EdgeVector(self.n, op(self.entries, other.entries))

    def __add__(self, other):
        return self._binop(other, np.add)

    def __sub__(self, other):
        return self._binop(other, np.subtract)

    def __neg__(self):
        return EdgeVector(self.n, -self.entries)

    def __eq__(self, other):
        if not isinstance(other, EdgeVector):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, self.entries.tobytes()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        body = ", ".join(f"{u}{'-' if m >= 0 else '~'}{v}:{m}" for u, v, m in self.edges())
        return f"EdgeVector(n={self.n}, {{{body}}})"


@dataclass(frozen=True)
class CDegSequence:
    """Joint degree-color statistic: per-vertex degrees and per-cell counts.

    ``cells`` follows the lexicographic order over unordered color pairs.
    Construction enforces the handshake identity sum(d) == 2*sum(c); a label
    violating it is realizable by no multigraph at all.
    """

    degrees: tuple[int, ...]
    cells: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be positive")
        if len(self.cells) != cell_count(self.k):
            raise ValueError(
                f"expected {cell_count(self.k)} cell counts for k={self.k}, got {len(self.cells)}"
            )
        if any(d < 0 for d in self.degrees) or any(c < 0 for c in self.cells):
            raise ValueError("degree and cell counts must be nonnegative")
        if sum(self.degrees) != 2 * sum(self.cells):
            raise ValueError(
                "degree sum must equal twice the cell sum "
                f"({sum(self.degrees)} != 2*{sum(self.cells)})"
            )

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total_edges(self) -> int:
        return sum(self.cells)

    def consistent_with(self, z: ColorAssignment) -> bool:
        """Necessary per-color balance: color i's degree mass equals
        2*c(i,i) plus the mixed cells meeting i."""
        if z.n != self.n or z.k != self.k:
            return False
        for i in range(1, self.k + 1):
            mass = sum(self.degrees[v - 1] for v in z.class_of(i))
            mixed = sum(
                self.cells[cell_index(min(i, j), max(i, j), self.k)]
                for j in range(1, self.k + 1)
                if j != i
            )
            if mass != 2 * self.cells[cell_index(i, i, self.k)] + mixed:
                return False
        return True

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.asarray(self.degrees, dtype=np.int64),
            np.asarray(self.cells, dtype=np.int64),
        )


def pos_neg_degrees(gamma: EdgeVector) -> tuple[np.ndarray, np.ndarray]:
    """Degree vectors of the positive and negative parts of a signed vector."""
    us, vs = _pair_endpoints(gamma.n)
    pos = np.maximum(gamma.entries, 0)
    neg = np.maximum(-gamma.entries, 0)
    dpos = np.zeros(gamma.n, dtype=np.int64)
    dneg = np.zeros(gamma.n, dtype=np.int64)
    np.add.at(dpos, us, pos)
    np.add.at(dpos, vs, pos)
    np.add.at(dneg, us, neg)
    np.add.at(dneg, vs, neg)
    return dpos, dneg


def pos_neg_colors(gamma: EdgeVector, z: ColorAssignment) -> tuple[np.ndarray, np.ndarray]:
    """Cell-count vectors of the positive and negative parts."""
    if z.n != gamma.n:
        raise ValueError(f"coloring is on {z.n} vertices, vector on {gamma.n}")
    cells = z.pair_cells()
    pos = np.maximum(gamma.entries, 0)
    neg = np.maximum(-gamma.entries, 0)
    cpos = np.zeros(cell_count(z.k), dtype=np.int64)
    cneg = np.zeros(cell_count(z.k), dtype=np.int64)
    np.add.at(cpos, cells, pos)
    np.add.at(cneg, cells, neg)
    return cpos, cneg


def cdeg(gamma: EdgeVector, z: ColorAssignment) -> CDegSequence:
    """Degree-color sequence of a multigraph (entries must be >= 0)."""
    if not gamma.is_multigraph():
        raise ValueError("cdeg expects a multigraph (nonnegative entries)")
    dpos, _ = pos_neg_degrees(gamma)
    cpos, _ = pos_neg_colors(gamma, z)
    return CDegSequence(tuple(int(x) for x in dpos), tuple(int(x) for x in cpos), z.k)


@dataclass(frozen=True)
class DesignMatrix:
    """Vertex-pair incidence rows stacked over color-cell indicator rows.

    Shape is (n + cell_count(k), pair_count(n)). Rows for empty color
    classes are kept, so the shape depends only on n and k.
    """

    n: int
    z: ColorAssignment
    matrix: np.ndarray

    def apply(self, gamma: EdgeVector) -> np.ndarray:
        if gamma.n != self.n:
            raise ValueError(f"vector is on {gamma.n} vertices, matrix on {self.n}")
        return self.matrix @ gamma.entries

    @property
    def degree_rows(self) -> np.ndarray:
        return self.matrix[: self.n]

    @property
    def cell_rows(self) -> np.ndarray:
        return self.matrix[self.n :]


def design_matrix(n: int, z: ColorAssignment) -> DesignMatrix:
    if z.n != n:
        raise ValueError(f"coloring is on {z.n} vertices, requested n={n}")
    P = pair_count(n)
    us, vs = _pair_endpoints(n)
    cells = z.pair_cells()
    mat = np.zeros((n + cell_count(z.k), P), dtype=np.int64)
    cols = np.arange(P)
    mat[us, cols] = 1
    mat[vs, cols] = 1
    mat[n + cells, cols] = 1
    mat.flags.writeable = False
    return DesignMatrix(n, z, mat)


def is_monomial_walk(gamma: EdgeVector, z: ColorAssignment) -> bool:
    """True when both parts share degrees and cell counts (kernel member)."""
    dpos, dneg = pos_neg_degrees(gamma)
    if not np.array_equal(dpos, dneg):
        return False
    cpos, cneg = pos_neg_colors(gamma, z)
    return bool(np.array_equal(cpos, cneg))


def walk_from_brackets(vertices: Sequence[int], n: int) -> EdgeVector:
    """Signed vector of a closed even walk written as [v1, v2, ..., v2l].

    Odd-position edges {v(2i-1), v(2i)} count +1, even-position edges
    {v(2i), v(2i+1)} (wrapping around) count -1. Entries may cancel; the
    zero vector is a legal outcome.
    """
    verts = [int(v) for v in vertices]
    if len(verts) < 4 or len(verts) % 2 != 0:
        raise ValueError("bracket walk needs an even number >= 4 of vertices")
    for v in verts:
        if not (1 <= v <= n):
            raise ValueError(f"vertex {v} outside 1..{n}")
    for a, b in zip(verts, verts[1:] + verts[:1]):
        if a == b:
            raise ValueError("consecutive vertices in a bracket walk must differ")
    arr = np.zeros(pair_count(n), dtype=np.int64)
    closed = verts + verts[:1]
    for i in range(len(verts)):
        t = pair_index(closed[i], closed[i + 1], n)
        arr[t] += 1 if i % 2 == 0 else -1
    return EdgeVector(n, arr)
