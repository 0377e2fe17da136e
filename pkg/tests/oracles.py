"""Slow, independent reference implementations used to check the package.

Everything in here is deliberately naive: exhaustive scans, geometric
predicates, stars-and-bars enumeration.  None of it imports from the
library's internals beyond the public containers, so a bug in the package
cannot hide inside its own oracle.
"""

import itertools
import math

import numpy as np

from colorfiber import ColorAssignment, EdgeVector, all_pairs, cdeg, design_matrix


# ---------------------------------------------------------------------------
# norm-4 kernel scan
# ---------------------------------------------------------------------------

def _signed_patterns(parts):
    """All sign assignments for a tuple of positive parts, first entry +."""
    out = []
    for signs in itertools.product((1, -1), repeat=len(parts) - 1):
        out.append((parts[0],) + tuple(s * p for s, p in zip(signs, parts[1:])))
    return out


def norm4_candidates(n):
    """Every integer pair-vector with 1-norm exactly 4, up to global sign.

    Returned as an int64 array of shape (ncand, n*(n-1)/2).  Canonical sign:
    the first non-zero coordinate is positive.
    """
    P = len(list(all_pairs(n)))
    rows = []
    # compositions of 4 into s positive parts, s = 1..4
    comps = {s: [c for c in itertools.product(range(1, 5), repeat=s) if sum(c) == 4]
             for s in range(1, 5)}
    for s in range(1, 5):
        patterns = []
        for comp in comps[s]:
            patterns.extend(_signed_patterns(comp))
        for support in itertools.combinations(range(P), s):
            for pat in patterns:
                v = np.zeros(P, dtype=np.int64)
                for idx, val in zip(support, pat):
                    v[idx] = val
                rows.append(v)
    if not rows:
        return np.zeros((0, P), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def kernel_scan_norm4(n, z, candidates=None):
    """Brute-force the 1-norm-4 kernel of the design matrix.

    Returns a set of canonical-sign vectors (as bytes of the int64 array) so
    it can be compared against the combinatorial move enumeration. Pass a
    precomputed `norm4_candidates(n)` array when scanning many colorings.
    """
    coloring = ColorAssignment.from_sequence(z)
    D = design_matrix(n, coloring).matrix
    cand = norm4_candidates(n) if candidates is None else candidates
    images = cand @ D.T
    hits = np.flatnonzero((images == 0).all(axis=1))
    return {cand[i].tobytes() for i in hits}


# ---------------------------------------------------------------------------
# naive fiber enumeration
# ---------------------------------------------------------------------------

def naive_fiber(label, z):
    """Filter every multigraph with the right edge total through cdeg().

    Exponential in the edge count; keep n <= 7 and totals <= 6.
    """
    coloring = ColorAssignment.from_sequence(z)
    P = len(list(all_pairs(coloring.n)))
    m = label.total_edges
    found = []
    for slots in itertools.combinations_with_replacement(range(P), m):
        vec = np.zeros(P, dtype=np.int64)
        for s in slots:
            vec[s] += 1
        gamma = EdgeVector(coloring.n, vec)
        if cdeg(gamma, coloring) == label:
            found.append(gamma)
    return found


# ---------------------------------------------------------------------------
# geometric chord predicates
# ---------------------------------------------------------------------------

def _coords(n):
    ang = 2.0 * math.pi * np.arange(1, n + 1) / n
    return np.cos(ang), np.sin(ang)


def chords_cross_geometric(e, f, n):
    """Proper intersection of two chords of a regular n-gon, by orientation
    tests on floating-point coordinates.  Shared endpoints never cross."""
    if set(e) & set(f):
        return False
    xs, ys = _coords(n)

    def orient(a, b, c):
        val = ((xs[b - 1] - xs[a - 1]) * (ys[c - 1] - ys[a - 1])
               - (ys[b - 1] - ys[a - 1]) * (xs[c - 1] - xs[a - 1]))
        return 1 if val > 0 else (-1 if val < 0 else 0)

    a, b = e
    c, d = f
    return (orient(a, b, c) != orient(a, b, d)) and (orient(c, d, a) != orient(c, d, b))


def weight_by_geometry(u, v, n):
    """Count vertex-disjoint pairs whose chord avoids chord (u, v)."""
    total = 0
    for a, b in all_pairs(n):
        if a in (u, v) or b in (u, v):
            continue
        if not chords_cross_geometric((u, v), (a, b), n):
            total += 1
    return total


# ---------------------------------------------------------------------------
# coloring generators
# ---------------------------------------------------------------------------

def nondecreasing_colorings(n, kmax):
    """All sorted colorings of n vertices onto 1..k for every k <= kmax."""
    out = []
    for k in range(1, min(n, kmax) + 1):
        # positions of the k-1 ascents
        for cuts in itertools.combinations(range(1, n), k - 1):
            z = []
            color = 1
            for u in range(n):
                if color < k and u == cuts[color - 1]:
                    color += 1
                z.append(color)
            out.append(tuple(z))
    return out


def rgs_colorings(n, kmax):
    """Colorings canonical up to relabeling: restricted growth strings."""
    out = []

    def rec(prefix, used):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for c in range(1, min(used + 1, kmax) + 1):
            rec(prefix + [c], max(used, c))

    rec([1], 1)
    return out


def random_multigraph(rng, n, m):
    """m edges thrown uniformly at the pair slots."""
    P = n * (n - 1) // 2
    vec = np.zeros(P, dtype=np.int64)
    for idx in rng.integers(0, P, size=m):
        vec[idx] += 1
    return EdgeVector(n, vec)


def label_of(gamma, z):
    return cdeg(gamma, ColorAssignment.from_sequence(z))


# ---------------------------------------------------------------------------
# reference chi-square (no scipy) for the uniformity diagnostic
# ---------------------------------------------------------------------------

def chisq_stat(counts):
    counts = np.asarray(counts, dtype=float)
    expected = counts.sum() / counts.size
    return float(((counts - expected) ** 2 / expected).sum())
