"""Normal forms modulo the quadratic moves, and coloring surgery.

The quadratic moves form a Grobner basis for the lattice ideal of the
stacked degree/color matrix under the circular weight order, provided the
coloring is non-decreasing along the circle. ``normal_form`` therefore
relabels vertices by a stable sort on color when needed, reduces, and maps
the result back, reporting the permutation it used.

``recolor`` merges one color class into another; ``contract`` collapses a
color class onto a chosen representative. Both preserve kernel membership
of walk vectors, which is what makes them usable as proof devices.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from colorfiber import _backend
from colorfiber.graphs import (
    ColorAssignment,
    EdgeVector,
    is_monomial_walk,
    pair_count,
    pair_index,
    index_pair,
)
from colorfiber.ordering import Binomial, WeightOrder, chord_relation, DISJOINT

__all__ = [
    "MembershipResult",
    "ReductionResult",
    "contract",
    "find_noncrossing_samecolor_pair",
    "ideal_membership",
    "in_ideal",
    "normal_form",
    "recolor",
    "sorted_relabeling",
]


@dataclass(frozen=True)
class ReductionResult:
    """Outcome of a normal-form computation.

    ``permutation`` maps original vertex labels to the relabeled ones used
    internally (permutation[v-1] is the new label of v); it is None when
    the coloring was already non-decreasing. ``log`` lists rewrite steps as
    ((removed, removed), (added, added)) pair tuples in original labels.
    """

    monomial: EdgeVector
    steps: int
    log: tuple[tuple[tuple[tuple[int, int], tuple[int, int]], tuple[tuple[int, int], tuple[int, int]]], ...] | None
    permutation: tuple[int, ...] | None


def sorted_relabeling(z: ColorAssignment) -> tuple[tuple[int, ...], ColorAssignment]:
    """Stable relabeling making the coloring non-decreasing.

    Returns (perm, sorted_z) where perm[v-1] is the new label of vertex v.
    Stable: vertices of equal color keep their relative order.
    """
    order = sorted(range(z.n), key=lambda i: (z.colors[i], i))
    perm = [0] * z.n
    for new0, old0 in enumerate(order):
        perm[old0] = new0 + 1
    return tuple(perm), ColorAssignment(tuple(z.colors[i] for i in order), z.k)


def permute_vector(gamma: EdgeVector, perm: tuple[int, ...]) -> EdgeVector:
    """Apply a vertex relabeling to an edge vector."""
    n = gamma.n
    if len(perm) != n:
        raise ValueError("permutation length must match vertex count")
    out = np.zeros(pair_count(n), dtype=np.int64)
    for t in np.flatnonzero(gamma.entries):
        u, v = index_pair(int(t), n)
        out[pair_index(perm[u - 1], perm[v - 1], n)] = gamma.entries[t]
    return EdgeVector(n, out)


def _invert(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for old0, new in enumerate(perm):
        inv[new - 1] = old0 + 1
    return tuple(inv)


@functools.lru_cache(maxsize=None)
def _pidx_table(n: int) -> np.ndarray:
    tab = np.zeros((n, n), dtype=np.int32)
    t = 0
    for u in range(n):
        for v in range(u + 1, n):
            tab[u, v] = t
            tab[v, u] = t
            t += 1
    tab.flags.writeable = False
    return tab


def normal_form(
    m: EdgeVector,
    z: ColorAssignment,
    order: WeightOrder | None = None,
    collect_log: bool = False,
) -> ReductionResult:
    """Reduce a monomial to its unique normal form modulo the moves.

    The exponents must be nonnegative. For colorings that are not
    non-decreasing the computation runs on a stably color-sorted relabeling
    and the inverse is applied to the result (and to the step log); the
    permutation used is reported.
    """
    if z.n != m.n:
        raise ValueError(f"coloring on {z.n} vertices, monomial on {m.n}")
    if not m.is_multigraph():
        raise ValueError("normal_form expects nonnegative exponents")
    if order is None:
        order = WeightOrder.for_vertices(m.n)
    elif order.n != m.n:
        raise ValueError(f"order on {order.n} vertices, monomial on {m.n}")

    perm: tuple[int, ...] | None = None
    work = m
    zz = z
    if not z.is_sorted():
        perm, zz = sorted_relabeling(z)
        work = permute_vector(m, perm)

    n = m.n
    us_vs = _endpoint_arrays(n)
    expo = work.entries.copy()
    steps, log = _backend.reduce_monomial(
        expo,
        us_vs[0],
        us_vs[1],
        np.asarray(zz.colors, dtype=np.int64),
        order.weights,
        _pidx_table(n),
        collect_log,
    )
    reduced = EdgeVector(n, expo)
    log_out = None
    if collect_log:
        inv = _invert(perm) if perm is not None else None
        items = []
        for e1, e2, t1, t2 in (log if log is not None else []):
            pairs = []
            for t in (int(e1), int(e2), int(t1), int(t2)):
                u, v = index_pair(t, n)
                if inv is not None:
                    u, v = sorted((inv[u - 1], inv[v - 1]))
                pairs.append((u, v))
            items.append(((pairs[0], pairs[1]), (pairs[2], pairs[3])))
        log_out = tuple(items)
    if perm is not None:
        reduced = permute_vector(reduced, _invert(perm))
    return ReductionResult(reduced, int(steps), log_out, perm)


def _endpoint_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    from colorfiber.graphs import _pair_endpoints

    return _pair_endpoints(n)


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    nf_plus: EdgeVector
    nf_minus: EdgeVector


def ideal_membership(
    binomial: Binomial,
    z: ColorAssignment,
    order: WeightOrder | None = None,
) -> MembershipResult:
    """Decide lattice-ideal membership by comparing the two normal forms."""
    nf_plus = normal_form(binomial.plus, z, order).monomial
    nf_minus = normal_form(binomial.minus, z, order).monomial
    return MembershipResult(nf_plus == nf_minus, nf_plus, nf_minus)


def in_ideal(binomial: Binomial, z: ColorAssignment, order: WeightOrder | None = None) -> bool:
    return ideal_membership(binomial, z, order).member


def recolor(z: ColorAssignment, q: int, q_prime: int) -> ColorAssignment:
    """Merge color q_prime into q (palette size unchanged; q_prime empties).

    Every walk with respect to z stays a walk with respect to the merged
    coloring: merging color balance constraints only coarsens them.
    """
    for c in (q, q_prime):
        if not (1 <= c <= z.k):
            raise ValueError(f"color {c} outside 1..{z.k}")
    if q == q_prime:
        raise ValueError("recolor needs two distinct colors")
    return ColorAssignment(
        tuple(q if c == q_prime else c for c in z.colors), z.k
    )


def contract(gamma: EdgeVector, w: int, z: ColorAssignment) -> EdgeVector:
    """Collapse the color class of w onto w.

    For u = w the new entry toward each v outside the class accumulates
    gamma over the whole class; entries inside the class (including those
    at w) drop to zero, so the class members other than w end up isolated.
    Pairs not meeting the class are untouched. Kernel membership of walk
    vectors is preserved.
    """
    if z.n != gamma.n:
        raise ValueError(f"coloring on {z.n} vertices, vector on {gamma.n}")
    if not (1 <= w <= gamma.n):
        raise ValueError(f"vertex {w} outside 1..{gamma.n}")
    n = gamma.n
    q = z.color_of(w)
    klass = set(z.class_of(q))
    out = np.zeros(pair_count(n), dtype=np.int64)
    for t in range(pair_count(n)):
        u, v = index_pair(t, n)
        u_in = u in klass
        v_in = v in klass
        if not u_in and not v_in:
            out[t] = gamma.entries[t]
    for v in range(1, n + 1):
        if v in klass or v == w:
            continue
        acc = 0
        for u in klass:
            acc += gamma.entries[pair_index(u, v, n)]
        out[pair_index(w, v, n)] = acc
    return EdgeVector(n, out)


def find_noncrossing_samecolor_pair(
    gamma: EdgeVector, z: ColorAssignment
) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Witness pair for a monomial walk under a non-decreasing coloring.

    Searches for two same-sign, vertex-disjoint, non-crossing edges whose
    endpoint color sets intersect; scans positive support first, each side
    in lexicographic pair order, and returns the first hit. Returns None
    only after exhausting both sides, which for a nonzero walk would
    contradict the reducibility theorem (the zero walk is vacuous).
    """
    if z.n != gamma.n:
        raise ValueError(f"coloring on {z.n} vertices, vector on {gamma.n}")
    if not z.is_sorted():
        raise ValueError("witness search requires a non-decreasing coloring")
    if not is_monomial_walk(gamma, z):
        raise ValueError("witness search expects a monomial walk")
    for side in (gamma.positive_part(), gamma.negative_part()):
        edges = side.support()
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                if chord_relation(edges[i], edges[j]) != DISJOINT:
                    continue
                ci = {z.color_of(edges[i][0]), z.color_of(edges[i][1])}
                cj = {z.color_of(edges[j][0]), z.color_of(edges[j][1])}
                if ci & cj:
                    return edges[i], edges[j]
    return None
