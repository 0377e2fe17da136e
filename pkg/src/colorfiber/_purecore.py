"""Pure-Python kernels mirroring colorfiber._fastcore.

Both backends must produce bit-identical outputs; the test suite compares
them directly. Keep the algorithms in lockstep when editing either file.

All kernels work on plain arrays with 0-based indices. Color arrays carry
the raw color values; only equality between them matters here.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def splitmix64_sequence(seed: int, count: int) -> np.ndarray:
    """The first `count` words of the SplitMix64 stream for `seed`."""
    s = seed & _MASK
    out = np.empty(count, dtype=np.uint64)
    for i in range(count):
        s = (s + _GOLDEN) & _MASK
        out[i] = _mix(s)
    return out


def chain_run(
    entries: np.ndarray,
    move_idx: np.ndarray,
    move_val: np.ndarray,
    move_len: np.ndarray,
    steps: int,
    burn_in: int,
    thin: int,
    seed: int,
    lazy: bool = False,
    simple_samples_only: bool = False,
) -> tuple[np.ndarray, int, int, np.ndarray]:
    """Run the switch chain; returns (samples, accepted, rejected, final).

    Per step: one RNG word selects the move index by multiply-shift, a
    second selects the sign from its top bit. A proposal that would drive
    any entry negative is rejected (the chain holds). With `lazy` a leading
    word per step forces a hold when its top bit is set.
    """
    nmoves = int(move_idx.shape[0])
    if nmoves == 0:
        raise ValueError("empty move set")
    cur = np.array(entries, dtype=np.int64)
    s = seed & _MASK
    accepted = 0
    rejected = 0
    out: list[np.ndarray] = []
    for t in range(1, steps + 1):
        hold = False
        if lazy:
            s = (s + _GOLDEN) & _MASK
            hold = bool(_mix(s) >> 63)
        if not hold:
            s = (s + _GOLDEN) & _MASK
            idx = (_mix(s) * nmoves) >> 64
            s = (s + _GOLDEN) & _MASK
            sign = -1 if (_mix(s) >> 63) else 1
            length = int(move_len[idx])
            ok = True
            for j in range(length):
                if cur[move_idx[idx, j]] + sign * move_val[idx, j] < 0:
                    ok = False
                    break
            if ok:
                for j in range(length):
                    cur[move_idx[idx, j]] += sign * move_val[idx, j]
                accepted += 1
            else:
                rejected += 1
        if t > burn_in and (t - burn_in) % thin == 0:
            if not simple_samples_only or bool((cur <= 1).all()):
                out.append(cur.copy())
    if out:
        samples = np.stack(out)
    else:
        samples = np.zeros((0, cur.shape[0]), dtype=np.int64)
    return samples, accepted, rejected, cur


def _grevlex_prefers(delta_idx: list[int], delta_val: list[int]) -> bool:
    """True when the monomial with exponent delta (new minus old) at the
    listed indices is grevlex-smaller, i.e. the rightmost nonzero delta is
    positive."""
    best = -1
    best_val = 0
    for i, d in zip(delta_idx, delta_val):
        if d != 0 and i > best:
            best = i
            best_val = d
    return best_val > 0


def _target_delta(t1: tuple[int, int], t2: tuple[int, int]) -> tuple[list[int], list[int]]:
    counts: dict[int, int] = {}
    for e in t1:
        counts[e] = counts.get(e, 0) + 1
    for e in t2:
        counts[e] = counts.get(e, 0) - 1
    idx = sorted(counts)
    return idx, [counts[i] for i in idx]


def reduce_monomial(
    expo: np.ndarray,
    pair_u: np.ndarray,
    pair_v: np.ndarray,
    colors: np.ndarray,
    weights: np.ndarray,
    pidx: np.ndarray,
    collect_log: bool = False,
) -> tuple[int, np.ndarray | None]:
    """Rewrite `expo` (in place) to its normal form; returns the step count.

    Each step takes the lexicographically first pair of support edges that
    are vertex-disjoint, non-crossing on the circle, and share an endpoint
    color, and reconnects it to the order-minimal admissible matching of
    the same four vertices. Raises if a rewrite ever fails to descend,
    which cannot happen for non-decreasing colorings.
    """
    log: list[tuple[int, int, int, int]] = []
    steps = 0
    while True:
        supp = np.flatnonzero(expo).tolist()
        found = False
        for ii in range(len(supp)):
            e1 = supp[ii]
            a = int(pair_u[e1])
            b = int(pair_v[e1])
            for jj in range(ii + 1, len(supp)):
                e2 = supp[jj]
                c = int(pair_u[e2])
                d = int(pair_v[e2])
                if a == c or a == d or b == c or b == d:
                    continue
                if (a < c < b) != (a < d < b):
                    continue  # crossing chords
                za, zb = colors[a], colors[b]
                zc, zd = colors[c], colors[d]
                if not (za == zc or za == zd or zb == zc or zb == zd):
                    continue
                p0, p1, p2, p3 = sorted((a, b, c, d))
                z0, z1 = colors[p0], colors[p1]
                z2, z3 = colors[p2], colors[p3]
                divisor_is_nested = b > d  # e1 spans e2: {p0p3, p1p2}
                cross = (int(pidx[p0, p2]), int(pidx[p1, p3]))
                if divisor_is_nested:
                    other = (int(pidx[p0, p1]), int(pidx[p2, p3]))
                    cross_ok = z0 == z1 or z2 == z3
                else:
                    other = (int(pidx[p0, p3]), int(pidx[p1, p2]))
                    cross_ok = z0 == z3 or z1 == z2
                other_ok = z0 == z2 or z1 == z3
                candidates = []
                if cross_ok:
                    candidates.append(cross)
                if other_ok:
                    candidates.append(other)
                if not candidates:
                    raise RuntimeError(
                        "divisor with no admissible reconnection; "
                        "is the coloring non-decreasing?"
                    )
                target = candidates[0]
                if len(candidates) == 2:
                    w0 = int(weights[candidates[0][0]]) + int(weights[candidates[0][1]])
                    w1 = int(weights[candidates[1][0]]) + int(weights[candidates[1][1]])
                    if w1 < w0:
                        target = candidates[1]
                    elif w1 == w0:
                        di, dv = _target_delta(candidates[1], candidates[0])
                        if _grevlex_prefers(di, dv):
                            target = candidates[1]
                # strict descent against the divisor
                wdiv = int(weights[e1]) + int(weights[e2])
                wtgt = int(weights[target[0]]) + int(weights[target[1]])
                if wtgt > wdiv:
                    raise RuntimeError("rewrite would increase the order")
                if wtgt == wdiv:
                    di, dv = _target_delta(target, (e1, e2))
                    if not _grevlex_prefers(di, dv):
                        raise RuntimeError("rewrite would not descend")
                expo[e1] -= 1
                expo[e2] -= 1
                expo[target[0]] += 1
                expo[target[1]] += 1
                if collect_log:
                    log.append((e1, e2, target[0], target[1]))
                steps += 1
                found = True
                break
            if found:
                break
        if not found:
            break
    if collect_log:
        arr = np.array(log, dtype=np.int32) if log else np.zeros((0, 4), dtype=np.int32)
        return steps, arr
    return steps, None


def reduce_batch(
    monos: np.ndarray,
    pair_u: np.ndarray,
    pair_v: np.ndarray,
    colors: np.ndarray,
    weights: np.ndarray,
    pidx: np.ndarray,
) -> np.ndarray:
    """Reduce every row of `monos` in place; returns per-row step counts."""
    counts = np.zeros(monos.shape[0], dtype=np.int64)
    for i in range(monos.shape[0]):
        counts[i], _ = reduce_monomial(monos[i], pair_u, pair_v, colors, weights, pidx)
    return counts


def side_witness_flags(
    monos: np.ndarray,
    pair_u: np.ndarray,
    pair_v: np.ndarray,
    colors: np.ndarray,
) -> np.ndarray:
    """Per row: 1 when the support holds two vertex-disjoint non-crossing
    edges sharing an endpoint color (the reducibility witness), else 0."""
    nrows = monos.shape[0]
    flags = np.zeros(nrows, dtype=np.uint8)
    for i in range(nrows):
        supp = np.flatnonzero(monos[i]).tolist()
        hit = False
        for ii in range(len(supp)):
            e1 = supp[ii]
            a = int(pair_u[e1])
            b = int(pair_v[e1])
            for jj in range(ii + 1, len(supp)):
                e2 = supp[jj]
                c = int(pair_u[e2])
                d = int(pair_v[e2])
                if a == c or a == d or b == c or b == d:
                    continue
                if (a < c < b) != (a < d < b):
                    continue
                za, zb = colors[a], colors[b]
                zc, zd = colors[c], colors[d]
                if za == zc or za == zd or zb == zc or zb == zd:
                    hit = True
                    break
            if hit:
                break
        flags[i] = 1 if hit else 0
    return flags


def fiber_backtrack(
    pair_u: np.ndarray,
    pair_v: np.ndarray,
    pair_cell: np.ndarray,
    degrees: np.ndarray,
    cells: np.ndarray,
    simple: bool,
    first_only: bool,
) -> np.ndarray:
    """Enumerate entry vectors realizing the degree/cell label.

    Pairs are decided in index order; multiplicities are tried from the
    largest residual-feasible value down to zero, so rows come out in
    descending lexicographic order. A branch dies as soon as a vertex or
    cell passes its final incident pair with residual left.
    """
    P = len(pair_u)
    n = len(degrees)
    nc = len(cells)
    last_v = [-1] * n
    last_c = [-1] * nc
    for t in range(P):
        last_v[pair_u[t]] = t
        last_v[pair_v[t]] = t
        last_c[pair_cell[t]] = t
    rd = [int(x) for x in degrees]
    rc = [int(x) for x in cells]
    for i in range(n):
        if rd[i] and last_v[i] < 0:
            return np.zeros((0, P), dtype=np.int64)
    for q in range(nc):
        if rc[q] and last_c[q] < 0:
            return np.zeros((0, P), dtype=np.int64)
    cur = [0] * P
    out: list[list[int]] = []
    stop = False

    def rec(t: int) -> None:
        nonlocal stop
        if t == P:
            if not any(rd) and not any(rc):
                out.append(cur.copy())
                if first_only:
                    stop = True
            return
        u = pair_u[t]
        v = pair_v[t]
        q = pair_cell[t]
        mmax = min(rd[u], rd[v], rc[q])
        if simple and mmax > 1:
            mmax = 1
        for m in range(mmax, -1, -1):
            rd[u] -= m
            rd[v] -= m
            rc[q] -= m
            cur[t] = m
            dead = (
                (last_v[u] == t and rd[u])
                or (last_v[v] == t and rd[v])
                or (last_c[q] == t and rc[q])
            )
            if not dead:
                rec(t + 1)
            rd[u] += m
            rd[v] += m
            rc[q] += m
            cur[t] = 0
            if stop:
                return

    if P > 0:
        rec(0)
    elif not any(rd) and not any(rc):
        out.append([])
    if not out:
        return np.zeros((0, P), dtype=np.int64)
    return np.array(out, dtype=np.int64)
