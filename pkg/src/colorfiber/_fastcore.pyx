# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for colorfiber.

Mirror of colorfiber._purecore; the two must stay in behavioral lockstep
(the test suite compares outputs bit for bit).
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t

cdef extern from *:
    ctypedef unsigned long long uint128 "unsigned __int128"

BACKEND = "compiled"


cdef inline uint64_t _mix(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


def splitmix64_sequence(object seed, Py_ssize_t count):
    """The first `count` words of the SplitMix64 stream for `seed`."""
    cdef uint64_t s = <uint64_t>(int(seed) & ((1 << 64) - 1))
    out = np.empty(count, dtype=np.uint64)
    cdef uint64_t[:] ov = out
    cdef Py_ssize_t i
    for i in range(count):
        s = s + <uint64_t>0x9E3779B97F4A7C15
        ov[i] = _mix(s)
    return out


def chain_run(
    entries,
    move_idx,
    move_val,
    move_len,
    long long steps,
    long long burn_in,
    long long thin,
    object seed,
    bint lazy=False,
    bint simple_samples_only=False,
):
    """Run the switch chain; returns (samples, accepted, rejected, final).

    Identical stepping rule to the pure backend: per step one word picks
    the move by multiply-shift, one word picks the sign from its top bit;
    infeasible proposals are rejected in place.
    """
    cdef long long nmoves = move_idx.shape[0]
    if nmoves == 0:
        raise ValueError("empty move set")
    cur_arr = np.array(entries, dtype=np.int64)
    cdef int64_t[:] cur = cur_arr
    cdef const int32_t[:, :] midx = np.ascontiguousarray(move_idx, dtype=np.int32)
    cdef const int64_t[:, :] mval = np.ascontiguousarray(move_val, dtype=np.int64)
    cdef const int32_t[:] mlen = np.ascontiguousarray(move_len, dtype=np.int32)
    cdef Py_ssize_t P = cur_arr.shape[0]

    cdef long long max_samples = 0
    if steps > burn_in and thin > 0:
        max_samples = (steps - burn_in) // thin
    samples_arr = np.zeros((max_samples, P), dtype=np.int64)
    cdef int64_t[:, :] samples = samples_arr

    cdef uint64_t s = <uint64_t>(int(seed) & ((1 << 64) - 1))
    cdef uint64_t w
    cdef uint128 prod
    cdef long long t, accepted = 0, rejected = 0, nout = 0
    cdef long long idx
    cdef int sign, length, j
    cdef bint hold, ok, simple_now

    with nogil:
        for t in range(1, steps + 1):
            hold = False
            if lazy:
                s = s + <uint64_t>0x9E3779B97F4A7C15
                hold = (_mix(s) >> 63) != 0
            if not hold:
                s = s + <uint64_t>0x9E3779B97F4A7C15
                w = _mix(s)
                prod = (<uint128>w) * (<uint128>(<uint64_t>nmoves))
                idx = <long long>(<uint64_t>(prod >> 64))
                s = s + <uint64_t>0x9E3779B97F4A7C15
                sign = -1 if (_mix(s) >> 63) != 0 else 1
                length = mlen[idx]
                ok = True
                for j in range(length):
                    if cur[midx[idx, j]] + sign * mval[idx, j] < 0:
                        ok = False
                        break
                if ok:
                    for j in range(length):
                        cur[midx[idx, j]] += sign * mval[idx, j]
                    accepted += 1
                else:
                    rejected += 1
            if t > burn_in and thin > 0 and (t - burn_in) % thin == 0:
                simple_now = True
                if simple_samples_only:
                    for j in range(<int>P):
                        if cur[j] > 1:
                            simple_now = False
                            break
                if simple_now:
                    for j in range(<int>P):
                        samples[nout, j] = cur[j]
                    nout += 1
    if nout == max_samples:
        out = samples_arr
    else:
        out = samples_arr[:nout].copy()
    return out, int(accepted), int(rejected), cur_arr


cdef inline int _delta_at(int idx, int na, int nb, int oa, int ob) nogil:
    cdef int d = 0
    if idx == na:
        d += 1
    if idx == nb:
        d += 1
    if idx == oa:
        d -= 1
    if idx == ob:
        d -= 1
    return d


cdef inline bint _grevlex_new_smaller(int na, int nb, int oa, int ob) nogil:
    # delta = new pair minus old pair; true iff the rightmost nonzero
    # delta is positive (larger exponent at the rightmost difference).
    cdef int idxs[4]
    cdef int j, idx, d, best = -1, bestd = 0
    idxs[0] = na
    idxs[1] = nb
    idxs[2] = oa
    idxs[3] = ob
    for j in range(4):
        idx = idxs[j]
        d = _delta_at(idx, na, nb, oa, ob)
        if d != 0 and idx > best:
            best = idx
            bestd = d
    return bestd > 0


cdef long long _reduce_core(
    int64_t[:] expo,
    const int32_t[:] pu,
    const int32_t[:] pv,
    const int64_t[:] cols,
    const int64_t[:] w,
    const int32_t[:, :] pidx,
    int32_t[:] supp,
    list log,
) except -1:
    cdef Py_ssize_t P = expo.shape[0]
    cdef long long steps = 0
    cdef int ns, ii, jj, e1, e2, a, b, c, d
    cdef int p0, p1, p2, p3, tmp
    cdef int64_t z0, z1, z2, z3
    cdef int ca, cb, oa, ob, t0, t1
    cdef bint nested, cross_ok, other_ok, found
    cdef long long wd, wt, wo
    cdef int arr[4]
    cdef int q, r
    while True:
        ns = 0
        for ii in range(<int>P):
            if expo[ii] != 0:
                supp[ns] = ii
                ns += 1
        found = False
        for ii in range(ns):
            e1 = supp[ii]
            a = pu[e1]
            b = pv[e1]
            for jj in range(ii + 1, ns):
                e2 = supp[jj]
                c = pu[e2]
                d = pv[e2]
                if a == c or a == d or b == c or b == d:
                    continue
                if (a < c and c < b) != (a < d and d < b):
                    continue
                if not (
                    cols[a] == cols[c]
                    or cols[a] == cols[d]
                    or cols[b] == cols[c]
                    or cols[b] == cols[d]
                ):
                    continue
                arr[0] = a
                arr[1] = b
                arr[2] = c
                arr[3] = d
                for q in range(1, 4):
                    tmp = arr[q]
                    r = q
                    while r > 0 and arr[r - 1] > tmp:
                        arr[r] = arr[r - 1]
                        r -= 1
                    arr[r] = tmp
                p0 = arr[0]
                p1 = arr[1]
                p2 = arr[2]
                p3 = arr[3]
                z0 = cols[p0]
                z1 = cols[p1]
                z2 = cols[p2]
                z3 = cols[p3]
                nested = b > d
                ca = pidx[p0, p2]
                cb = pidx[p1, p3]
                if nested:
                    oa = pidx[p0, p1]
                    ob = pidx[p2, p3]
                    cross_ok = z0 == z1 or z2 == z3
                else:
                    oa = pidx[p0, p3]
                    ob = pidx[p1, p2]
                    cross_ok = z0 == z3 or z1 == z2
                other_ok = z0 == z2 or z1 == z3
                if not cross_ok and not other_ok:
                    raise RuntimeError(
                        "divisor with no admissible reconnection; "
                        "is the coloring non-decreasing?"
                    )
                if cross_ok:
                    t0 = ca
                    t1 = cb
                    if other_ok:
                        wt = w[ca] + w[cb]
                        wo = w[oa] + w[ob]
                        if wo < wt or (wo == wt and _grevlex_new_smaller(oa, ob, ca, cb)):
                            t0 = oa
                            t1 = ob
                else:
                    t0 = oa
                    t1 = ob
                wd = w[e1] + w[e2]
                wt = w[t0] + w[t1]
                if wt > wd:
                    raise RuntimeError("rewrite would increase the order")
                if wt == wd and not _grevlex_new_smaller(t0, t1, e1, e2):
                    raise RuntimeError("rewrite would not descend")
                expo[e1] -= 1
                expo[e2] -= 1
                expo[t0] += 1
                expo[t1] += 1
                if log is not None:
                    log.append((e1, e2, t0, t1))
                steps += 1
                found = True
                break
            if found:
                break
        if not found:
            break
    return steps


def reduce_monomial(expo, pair_u, pair_v, colors, weights, pidx, bint collect_log=False):
    """Rewrite `expo` (in place) to its normal form; returns the step count."""
    cdef int64_t[:] ev = expo
    cdef const int32_t[:] pu = np.ascontiguousarray(pair_u, dtype=np.int32)
    cdef const int32_t[:] pv = np.ascontiguousarray(pair_v, dtype=np.int32)
    cdef const int64_t[:] cols = np.ascontiguousarray(colors, dtype=np.int64)
    cdef const int64_t[:] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef const int32_t[:, :] px = np.ascontiguousarray(pidx, dtype=np.int32)
    supp_arr = np.empty(expo.shape[0], dtype=np.int32)
    cdef int32_t[:] supp = supp_arr
    log = [] if collect_log else None
    cdef long long steps = _reduce_core(ev, pu, pv, cols, w, px, supp, log)
    if collect_log:
        arr = np.array(log, dtype=np.int32) if log else np.zeros((0, 4), dtype=np.int32)
        return steps, arr
    return steps, None


def reduce_batch(monos, pair_u, pair_v, colors, weights, pidx):
    """Reduce every row of `monos` in place; returns per-row step counts."""
    cdef int64_t[:, :] mv = monos
    cdef const int32_t[:] pu = np.ascontiguousarray(pair_u, dtype=np.int32)
    cdef const int32_t[:] pv = np.ascontiguousarray(pair_v, dtype=np.int32)
    cdef const int64_t[:] cols = np.ascontiguousarray(colors, dtype=np.int64)
    cdef const int64_t[:] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef const int32_t[:, :] px = np.ascontiguousarray(pidx, dtype=np.int32)
    supp_arr = np.empty(monos.shape[1], dtype=np.int32)
    cdef int32_t[:] supp = supp_arr
    counts = np.zeros(monos.shape[0], dtype=np.int64)
    cdef int64_t[:] cv = counts
    cdef Py_ssize_t i
    for i in range(mv.shape[0]):
        cv[i] = _reduce_core(mv[i], pu, pv, cols, w, px, supp, None)
    return counts


def side_witness_flags(monos, pair_u, pair_v, colors):
    """Per row: 1 when the support holds a vertex-disjoint non-crossing
    pair of edges sharing an endpoint color, else 0."""
    cdef const int64_t[:, :] mv = np.ascontiguousarray(monos, dtype=np.int64)
    cdef const int32_t[:] pu = np.ascontiguousarray(pair_u, dtype=np.int32)
    cdef const int32_t[:] pv = np.ascontiguousarray(pair_v, dtype=np.int32)
    cdef const int64_t[:] cols = np.ascontiguousarray(colors, dtype=np.int64)
    cdef Py_ssize_t nrows = mv.shape[0]
    cdef Py_ssize_t P = mv.shape[1]
    flags = np.zeros(nrows, dtype=np.uint8)
    cdef uint8_t[:] fv = flags
    supp_arr = np.empty(P, dtype=np.int32)
    cdef int32_t[:] supp = supp_arr
    cdef Py_ssize_t i
    cdef int ns, ii, jj, e1, e2, a, b, c, d
    cdef bint hit
    with nogil:
        for i in range(nrows):
            ns = 0
            for ii in range(<int>P):
                if mv[i, ii] != 0:
                    supp[ns] = ii
                    ns += 1
            hit = False
            for ii in range(ns):
                e1 = supp[ii]
                a = pu[e1]
                b = pv[e1]
                for jj in range(ii + 1, ns):
                    e2 = supp[jj]
                    c = pu[e2]
                    d = pv[e2]
                    if a == c or a == d or b == c or b == d:
                        continue
                    if (a < c and c < b) != (a < d and d < b):
                        continue
                    if (
                        cols[a] == cols[c]
                        or cols[a] == cols[d]
                        or cols[b] == cols[c]
                        or cols[b] == cols[d]
                    ):
                        hit = True
                        break
                if hit:
                    break
            fv[i] = 1 if hit else 0
    return flags


cdef int _bt_rec(
    int t,
    int P,
    const int32_t[:] pu,
    const int32_t[:] pv,
    const int32_t[:] pc,
    int64_t[:] rd,
    int64_t[:] rc,
    const int32_t[:] last_v,
    const int32_t[:] last_c,
    int64_t[:] cur,
    bint simple,
    bint first_only,
    list out,
) except -1:
    cdef int u, v, q, i
    cdef int64_t m, mmax
    cdef bint dead, clean
    if t == P:
        clean = True
        for i in range(rd.shape[0]):
            if rd[i] != 0:
                clean = False
                break
        if clean:
            for i in range(rc.shape[0]):
                if rc[i] != 0:
                    clean = False
                    break
        if clean:
            out.append(np.asarray(cur).copy())
            if first_only:
                return 1
        return 0
    u = pu[t]
    v = pv[t]
    q = pc[t]
    mmax = rd[u]
    if rd[v] < mmax:
        mmax = rd[v]
    if rc[q] < mmax:
        mmax = rc[q]
    if simple and mmax > 1:
        mmax = 1
    m = mmax
    while m >= 0:
        rd[u] -= m
        rd[v] -= m
        rc[q] -= m
        cur[t] = m
        dead = (
            (last_v[u] == t and rd[u] != 0)
            or (last_v[v] == t and rd[v] != 0)
            or (last_c[q] == t and rc[q] != 0)
        )
        if not dead:
            if _bt_rec(t + 1, P, pu, pv, pc, rd, rc, last_v, last_c, cur, simple, first_only, out):
                rd[u] += m
                rd[v] += m
                rc[q] += m
                cur[t] = 0
                return 1
        rd[u] += m
        rd[v] += m
        rc[q] += m
        cur[t] = 0
        m -= 1
    return 0


def fiber_backtrack(pair_u, pair_v, pair_cell, degrees, cells, bint simple, bint first_only):
    """Enumerate entry vectors realizing the degree/cell label.

    Same branch order as the pure backend: multiplicities tried largest
    first, so rows arrive in descending lexicographic order.
    """
    cdef const int32_t[:] pu = np.ascontiguousarray(pair_u, dtype=np.int32)
    cdef const int32_t[:] pv = np.ascontiguousarray(pair_v, dtype=np.int32)
    cdef const int32_t[:] pc = np.ascontiguousarray(pair_cell, dtype=np.int32)
    cdef Py_ssize_t P = pu.shape[0]
    cdef Py_ssize_t n = len(degrees)
    cdef Py_ssize_t nc = len(cells)
    rd_arr = np.array(degrees, dtype=np.int64)
    rc_arr = np.array(cells, dtype=np.int64)
    cdef int64_t[:] rd = rd_arr
    cdef int64_t[:] rc = rc_arr
    last_v_arr = np.full(n, -1, dtype=np.int32)
    last_c_arr = np.full(nc, -1, dtype=np.int32)
    cdef int32_t[:] last_v = last_v_arr
    cdef int32_t[:] last_c = last_c_arr
    cdef Py_ssize_t t
    for t in range(P):
        last_v[pu[t]] = <int32_t>t
        last_v[pv[t]] = <int32_t>t
        last_c[pc[t]] = <int32_t>t
    cdef Py_ssize_t i
    for i in range(n):
        if rd[i] != 0 and last_v[i] < 0:
            return np.zeros((0, P), dtype=np.int64)
    for i in range(nc):
        if rc[i] != 0 and last_c[i] < 0:
            return np.zeros((0, P), dtype=np.int64)
    cur_arr = np.zeros(P, dtype=np.int64)
    cdef int64_t[:] cur = cur_arr
    out: list = []
    if P > 0:
        _bt_rec(0, <int>P, pu, pv, pc, rd, rc, last_v, last_c, cur, simple, first_only, out)
    else:
        clean = not rd_arr.any() and not rc_arr.any()
        if clean:
            out.append(np.zeros(0, dtype=np.int64))
    if not out:
        return np.zeros((0, P), dtype=np.int64)
    return np.stack(out)
