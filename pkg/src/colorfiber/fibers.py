"""Fibers of a degree-color label: enumeration, realization, connectivity.

A fiber is every multigraph (or simple graph) on [n] whose degree-color
sequence equals a given label. Enumeration is exact backtracking over
pairs in index order with residual pruning, so it is meant for desk-scale
instances; the edge-count guard protects against accidental blowups.

``fiber_graph`` overlays a move set on an enumerated fiber and certifies
connectivity with a breadth-first spanning forest whose edges carry the
move and sign that realizes them, so any claimed path can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from colorfiber import _backend
from colorfiber.graphs import (
    CDegSequence,
    ColorAssignment,
    EdgeVector,
    GuardExceeded,
    cdeg,
    pair_count,
)
from colorfiber.moves import MoveSet

__all__ = [
    "DEFAULT_MAX_EDGES",
    "Fiber",
    "FiberGraph",
    "GuardExceeded",
    "bottleneck_connecting_norm",
    "enumerate_fiber",
    "fiber_graph",
    "realize",
    "two_element_simple_fiber",
    "TwoElementFamily",
]

DEFAULT_MAX_EDGES = 24

#: bottleneck_connecting_norm does all-pairs work; refuse huge fibers.
BOTTLENECK_MAX_ELEMENTS = 1024


class Fiber:
    """An enumerated fiber: the label, the coloring, and every element."""

    def __init__(
        self,
        label: CDegSequence,
        z: ColorAssignment,
        elements: tuple[EdgeVector, ...],
        simple_only: bool,
    ):
        self.label = label
        self.z = z
        self.elements = elements
        self.simple_only = simple_only
        self._index: dict[bytes, int] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> EdgeVector:
        return self.elements[i]

    def index_of(self, gamma: EdgeVector) -> int:
        """Position of gamma in the fiber; raises KeyError when absent."""
        if self._index is None:
            self._index = {
                g.entries.tobytes(): i for i, g in enumerate(self.elements)
            }
        key = gamma.entries.tobytes()
        if gamma.n != self.label.n or key not in self._index:
            raise KeyError(f"not a fiber element: {gamma!r}")
        return self._index[key]

    def __contains__(self, gamma: EdgeVector) -> bool:
        try:
            self.index_of(gamma)
            return True
        except KeyError:
            return False


def _backtrack_arrays(label: CDegSequence, z: ColorAssignment):
    from colorfiber.graphs import _pair_endpoints

    us, vs = _pair_endpoints(label.n)
    cells = z.pair_cells()
    d, c = label.as_arrays()
    return us, vs, cells, d, c


def enumerate_fiber(
    label: CDegSequence,
    z: ColorAssignment,
    simple_only: bool = False,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> Fiber:
    """Every multigraph (or simple graph) realizing the label.

    Empty exactly when the label is not (simple-)color-graphical. The
    multigraph search refuses labels with more than `max_edges` edges;
    simple-graph search is already capped by the vertex count.
    """
    _check_label(label, z)
    if not simple_only and label.total_edges > max_edges:
        raise GuardExceeded(
            f"label has {label.total_edges} edges; enumeration guard is "
            f"{max_edges} (pass max_edges=... to raise it)"
        )
    if not label.consistent_with(z):
        return Fiber(label, z, (), simple_only)
    us, vs, cells, d, c = _backtrack_arrays(label, z)
    rows = _backend.fiber_backtrack(us, vs, cells, d, c, simple_only, False)
    elements = tuple(EdgeVector(label.n, row) for row in rows)
    return Fiber(label, z, elements, simple_only)


def realize(
    label: CDegSequence,
    z: ColorAssignment,
    simple_only: bool = False,
) -> EdgeVector | None:
    """One realization of the label, or None when there is none."""
    _check_label(label, z)
    if not label.consistent_with(z):
        return None
    us, vs, cells, d, c = _backtrack_arrays(label, z)
    rows = _backend.fiber_backtrack(us, vs, cells, d, c, simple_only, True)
    if rows.shape[0] == 0:
        return None
    return EdgeVector(label.n, rows[0])


def _check_label(label: CDegSequence, z: ColorAssignment) -> None:
    if label.n != z.n:
        raise ValueError(f"label on {label.n} vertices, coloring on {z.n}")
    if label.k != z.k:
        raise ValueError(f"label has k={label.k}, coloring k={z.k}")


class FiberGraph:
    """A fiber overlaid with moves, plus its BFS spanning forest.

    ``parent_edge[i]`` is (parent, move_index, sign) with
    elements[i] == elements[parent] + sign * move, or None at roots.
    """

    def __init__(self, fiber: Fiber, moves: MoveSet):
        self.fiber = fiber
        self.moves = moves
        self.component_labels = np.full(len(fiber), -1, dtype=np.int64)
        self.parent_edge: list[tuple[int, int, int] | None] = [None] * len(fiber)
        self._depth = np.zeros(len(fiber), dtype=np.int64)
        self._build()

    @property
    def component_count(self) -> int:
        return int(self.component_labels.max()) + 1 if len(self.fiber) else 0

    def component_representatives(self) -> list[int]:
        """Smallest element index of each component, in component order."""
        reps: list[int] = []
        seen = -1
        for i, lab in enumerate(self.component_labels):
            if lab > seen:
                reps.append(i)
                seen = int(lab)
        return reps

    def _build(self) -> None:
        fiber = self.fiber
        F = len(fiber)
        if F == 0:
            self._adj = ([], [], [])
            return
        P = pair_count(fiber.label.n)
        E = np.stack([g.entries for g in fiber.elements]) if F else np.zeros((0, P), np.int64)
        index = {g.entries.tobytes(): i for i, g in enumerate(fiber.elements)}
        dense = self.moves.dense()
        src: list[int] = []
        dst: list[int] = []
        via: list[tuple[int, int]] = []  # (move_index, sign) oriented src -> dst
        for im in range(dense.shape[0]):
            T = E + dense[im]
            feas = (T >= 0).all(axis=1)
            if fiber.simple_only:
                feas &= (T <= 1).all(axis=1)
            rows = np.flatnonzero(feas)
            sub = T[rows]
            for r, row in zip(rows.tolist(), sub):
                j = index.get(row.tobytes())
                if j is not None:
                    src.append(r)
                    dst.append(j)
                    via.append((im, 1))
                    src.append(j)
                    dst.append(r)
                    via.append((im, -1))
        # CSR-style adjacency
        src_a = np.asarray(src, dtype=np.int64)
        order = np.argsort(src_a, kind="stable")
        self._adj = (
            src_a[order],
            np.asarray(dst, dtype=np.int64)[order],
            [via[i] for i in order.tolist()],
        )
        starts = np.searchsorted(self._adj[0], np.arange(F + 1))
        comp = -1
        for root in range(F):
            if self.component_labels[root] >= 0:
                continue
            comp += 1
            self.component_labels[root] = comp
            frontier = [root]
            while frontier:
                nxt: list[int] = []
                for x in frontier:
                    for e in range(int(starts[x]), int(starts[x + 1])):
                        y = int(self._adj[1][e])
                        if self.component_labels[y] < 0:
                            self.component_labels[y] = comp
                            im, s = self._adj[2][e]
                            self.parent_edge[y] = (x, im, s)
                            self._depth[y] = self._depth[x] + 1
                            nxt.append(y)
                frontier = nxt

    def path_moves(self, i: int, j: int) -> list[tuple[int, int]] | None:
        """Signed moves taking elements[i] to elements[j] along the forest.

        Entries are (move_index, sign); None when i and j are in different
        components.
        """
        if self.component_labels[i] != self.component_labels[j]:
            return None
        up: list[tuple[int, int]] = []
        down: list[tuple[int, int]] = []
        a, b = i, j
        while a != b:
            if self._depth[a] >= self._depth[b]:
                parent, im, s = self.parent_edge[a]  # type: ignore[misc]
                up.append((im, -s))
                a = parent
            else:
                parent, im, s = self.parent_edge[b]  # type: ignore[misc]
                down.append((im, s))
                b = parent
        return up + down[::-1]


def fiber_graph(fiber: Fiber, moves: MoveSet) -> FiberGraph:
    """Overlay the move set on the fiber; see FiberGraph."""
    if moves.n != fiber.label.n:
        raise ValueError("moves and fiber live on different vertex counts")
    return FiberGraph(fiber, moves)


@dataclass(frozen=True)
class TwoElementFamily:
    """A coloring and label whose simple fiber is an isolated pair."""

    n: int
    z: ColorAssignment
    label: CDegSequence
    left: EdgeVector
    right: EdgeVector

    def distance(self) -> int:
        return (self.left - self.right).one_norm()


def two_element_simple_fiber(k: int) -> TwoElementFamily:
    """The k-color family (k >= 3) with a rigid two-element simple fiber.

    On n = 2k vertices colored cyclically, both graphs share an inner
    k-cycle and differ in how the k pendant vertices attach; any walk
    between them must move all 2k differing edges at once, so no fixed
    switch size connects these fibers for every k.
    """
    if k < 3:
        raise ValueError("the two-element family needs k >= 3")
    n = 2 * k
    z = ColorAssignment(tuple(((u - 1) % k) + 1 for u in range(1, n + 1)), k)

    def build(eps: int) -> EdgeVector:
        edges = []
        for u in range(1, k + 1):
            w = ((u - 1 + eps) % k) + 1
            edges.append((min(u, w), max(u, w), 1))
            edges.append((u, w + k, 1))
        # inner cycle edges appear once from each endpoint; dedupe
        seen = set()
        uniq = []
        for u, v, m in edges:
            if (u, v) not in seen:
                seen.add((u, v))
                uniq.append((u, v, m))
        return EdgeVector.from_edges(n, uniq)

    left = build(-1)
    right = build(+1)
    label = cdeg(left, z)
    return TwoElementFamily(n, z, label, left, right)


def bottleneck_connecting_norm(fiber: Fiber) -> int:
    """Smallest B such that 1-norm-<=B differences connect the fiber.

    This is the bottleneck edge of a spanning tree on the complete
    difference graph; it lower-bounds the largest move any connecting
    move set must contain. All-pairs computation, so guarded to
    BOTTLENECK_MAX_ELEMENTS elements; 0 for a singleton fiber.
    """
    F = len(fiber)
    if F == 0:
        raise ValueError("empty fiber has no connecting norm")
    if F == 1:
        return 0
    if F > BOTTLENECK_MAX_ELEMENTS:
        raise GuardExceeded(
            f"bottleneck_connecting_norm is limited to {BOTTLENECK_MAX_ELEMENTS} elements"
        )
    E = np.stack([g.entries for g in fiber.elements])
    edges: list[tuple[int, int, int]] = []
    for i in range(F - 1):
        dists = np.abs(E[i + 1 :] - E[i]).sum(axis=1)
        for off, dd in enumerate(dists.tolist()):
            edges.append((int(dd), i, i + 1 + off))
    edges.sort(key=lambda e: e[0])
    parent = list(range(F))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merged = 0
    worst = 0
    for dd, i, j in edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            continue
        parent[ri] = rj
        merged += 1
        worst = dd
        if merged == F - 1:
            break
    return worst
