"""Hot numeric kernels: cycle/walk enumeration, modular determinants, grid log-sums.

Each kernel has a numba @njit implementation and a pure-Python/numpy fallback
with identical semantics.  Setting ZETAGRAPH_NO_NUMBA=1 forces the fallback;
otherwise numba is used whenever it imports.  benchmarks/bench_kernels.py
compares the two paths.
"""

from __future__ import annotations

import math
import os

import numpy as np

NUMBA_ENABLED = os.environ.get("ZETAGRAPH_NO_NUMBA", "") not in ("1", "true", "yes")

if NUMBA_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False

if not NUMBA_ENABLED:
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


def accel_active() -> bool:
    return NUMBA_ENABLED


# ---------------------------------------------------------------------------
# closed non-backtracking cycle counting (arc sequences, cyclic constraints)
# ---------------------------------------------------------------------------

def _count_closed_nbt_py(terminus, origin, inv, vout_indptr, vout_arcs, k, budget):
    total = 0
    used = 0
    narcs = len(terminus)
    arcseq = [0] * k
    cand = [0] * k
    for e0 in range(narcs):
        used += 1
        if used > budget:
            return -1, used
        if k == 1:
            if terminus[e0] == origin[e0] and inv[e0] != e0:
                total += 1
            continue
        arcseq[0] = e0
        pos = 1
        cand[1] = vout_indptr[terminus[e0]]
        while pos >= 1:
            prev = arcseq[pos - 1]
            if cand[pos] >= vout_indptr[terminus[prev] + 1]:
                pos -= 1
                if pos >= 1:
                    cand[pos] += 1
                continue
            f = vout_arcs[cand[pos]]
            if f == inv[prev]:
                cand[pos] += 1
                continue
            used += 1
            if used > budget:
                return -1, used
            if pos == k - 1:
                if terminus[f] == origin[e0] and inv[f] != e0:
                    total += 1
                cand[pos] += 1
                continue
            arcseq[pos] = f
            pos += 1
            cand[pos] = vout_indptr[terminus[f]]
    return total, used


_count_closed_nbt_nb = njit(cache=True)(_count_closed_nbt_py) if NUMBA_ENABLED else None


def count_closed_nbt(terminus, origin, inv, vout_indptr, vout_arcs, k, budget):
    """Count cyclic arc sequences (e_1..e_k) with t(e_i)=o(e_{i+1}) and
    e_{i+1} != e_i^{-1}, both read cyclically.  Returns (count, extensions);
    count == -1 signals the budget was exhausted."""
    args = (np.asarray(terminus, np.int64), np.asarray(origin, np.int64),
            np.asarray(inv, np.int64), np.asarray(vout_indptr, np.int64),
            np.asarray(vout_arcs, np.int64), k, budget)
    if NUMBA_ENABLED:
        return _count_closed_nbt_nb(*args)
    return _count_closed_nbt_py(*args)


# ---------------------------------------------------------------------------
# closed alternating walk counting
# ---------------------------------------------------------------------------

def _count_closed_alt_py(origin, terminus, byo_indptr, byo_arcs, byt_indptr,
                         byt_arcs, k, start_tshare, budget):
    # share type of transition j (1-based): t-share iff (j odd) == start_tshare
    total = 0
    used = 0
    narcs = len(origin)
    arcseq = [0] * k
    cand = [0] * k
    for e0 in range(narcs):
        used += 1
        if used > budget:
            return -1, used
        arcseq[0] = e0
        pos = 1
        if pos == k:
            continue  # k == 1 cannot close an alternating cycle
        tshare = ((1 % 2 == 1) == start_tshare)
        if tshare:
            cand[1] = byt_indptr[terminus[e0]]
        else:
            cand[1] = byo_indptr[origin[e0]]
        while pos >= 1:
            prev = arcseq[pos - 1]
            tshare = ((pos % 2 == 1) == start_tshare)
            if tshare:
                hi = byt_indptr[terminus[prev] + 1]
                arcs_list = byt_arcs
            else:
                hi = byo_indptr[origin[prev] + 1]
                arcs_list = byo_arcs
            if cand[pos] >= hi:
                pos -= 1
                if pos >= 1:
                    cand[pos] += 1
                continue
            f = arcs_list[cand[pos]]
            if f == prev:
                cand[pos] += 1
                continue
            used += 1
            if used > budget:
                return -1, used
            if pos == k - 1:
                # wrap transition k: type per parity, plus no tail (f != e0)
                wrap_tshare = ((k % 2 == 1) == start_tshare)
                ok = f != e0
                if ok:
                    if wrap_tshare:
                        ok = terminus[f] == terminus[e0]
                    else:
                        ok = origin[f] == origin[e0]
                if ok:
                    total += 1
                cand[pos] += 1
                continue
            arcseq[pos] = f
            pos += 1
            nxt_tshare = ((pos % 2 == 1) == start_tshare)
            if nxt_tshare:
                cand[pos] = byt_indptr[terminus[f]]
            else:
                cand[pos] = byo_indptr[origin[f]]
    return total, used


_count_closed_alt_nb = njit(cache=True)(_count_closed_alt_py) if NUMBA_ENABLED else None


def count_closed_alt(origin, terminus, byo_indptr, byo_arcs, byt_indptr, byt_arcs,
                     k, start_tshare, budget):
    """Count closed alternating arc sequences of length k for one share pattern.

    start_tshare=True means the transition e_1 -> e_2 shares the terminus.
    Cyclic distinctness of adjacent arcs covers both no-backtracking and the
    no-tail condition.  Returns (count, extensions) with count == -1 on budget
    exhaustion."""
    args = (np.asarray(origin, np.int64), np.asarray(terminus, np.int64),
            np.asarray(byo_indptr, np.int64), np.asarray(byo_arcs, np.int64),
            np.asarray(byt_indptr, np.int64), np.asarray(byt_arcs, np.int64),
            k, start_tshare, budget)
    if NUMBA_ENABLED:
        return _count_closed_alt_nb(*args)
    return _count_closed_alt_py(*args)


# ---------------------------------------------------------------------------
# non-backtracking alternating walk count matrices
# ---------------------------------------------------------------------------

def _nbtaw_fill_py(origin, terminus, byo_indptr, byo_arcs, byt_indptr, byt_arcs,
                   kmax, out_start, counts, budget):
    # counts: int64 (kmax+1, n, n); walks of length j >= 1 accumulated at counts[j]
    used = 0
    narcs = len(origin)
    arcseq = [0] * (kmax + 1)
    cand = [0] * (kmax + 1)
    for e0 in range(narcs):
        used += 1
        if used > budget:
            return -1
        if out_start:
            u = origin[e0]
            end = terminus[e0]
        else:
            u = terminus[e0]
            end = origin[e0]
        counts[1, u, end] += 1
        if kmax == 1:
            continue
        arcseq[1] = e0
        pos = 2
        cand[2] = _nbtaw_cand_start(origin, terminus, byo_indptr, byt_indptr,
                                    e0, pos, out_start)
        while pos >= 2:
            prev = arcseq[pos - 1]
            # transition (pos-1): out-start walks share terminus on odd transitions
            tshare = ((pos % 2 == 0) == out_start)
            if tshare:
                hi = byt_indptr[terminus[prev] + 1]
                arcs_list = byt_arcs
            else:
                hi = byo_indptr[origin[prev] + 1]
                arcs_list = byo_arcs
            if cand[pos] >= hi:
                pos -= 1
                if pos >= 2:
                    cand[pos] += 1
                continue
            f = arcs_list[cand[pos]]
            if f == prev:
                cand[pos] += 1
                continue
            used += 1
            if used > budget:
                return -1
            if out_start:
                end = origin[f] if pos % 2 == 0 else terminus[f]
            else:
                end = terminus[f] if pos % 2 == 0 else origin[f]
            counts[pos, u, end] += 1
            if pos == kmax:
                cand[pos] += 1
                continue
            arcseq[pos] = f
            pos += 1
            cand[pos] = _nbtaw_cand_start(origin, terminus, byo_indptr, byt_indptr,
                                          f, pos, out_start)
    return used


def _nbtaw_cand_start_py(origin, terminus, byo_indptr, byt_indptr, prev, pos, out_start):
    tshare = ((pos % 2 == 0) == out_start)
    if tshare:
        return byt_indptr[terminus[prev]]
    return byo_indptr[origin[prev]]


if NUMBA_ENABLED:
    _nbtaw_cand_start = njit(cache=True)(_nbtaw_cand_start_py)
    _nbtaw_fill_nb = njit(cache=True)(_nbtaw_fill_py)
else:
    _nbtaw_cand_start = _nbtaw_cand_start_py


def nbtaw_fill(origin, terminus, byo_indptr, byo_arcs, byt_indptr, byt_arcs,
               kmax, out_start, n, budget):
    """Count non-backtracking alternating walks of every length 1..kmax.

    Returns an int64 array (kmax+1, n, n); entry [k, u, v] is the number of
    such walks u -> v of length k starting with an out-edge (out_start=True)
    or an in-edge.  Raises nothing; returns None on budget exhaustion."""
    counts = np.zeros((kmax + 1, n, n), dtype=np.int64)
    args = (np.asarray(origin, np.int64), np.asarray(terminus, np.int64),
            np.asarray(byo_indptr, np.int64), np.asarray(byo_arcs, np.int64),
            np.asarray(byt_indptr, np.int64), np.asarray(byt_arcs, np.int64),
            kmax, out_start, counts, budget)
    if NUMBA_ENABLED:
        used = _nbtaw_fill_nb(*args)
    else:
        used = _nbtaw_fill_py(*args)
    if used < 0:
        return None
    return counts


# ---------------------------------------------------------------------------
# determinants of integer matrices modulo 31-bit primes
# ---------------------------------------------------------------------------

def _moddet_py(mat, primes):
    out = np.empty(len(primes), dtype=np.int64)
    s = mat.shape[0]
    for pi in range(len(primes)):
        p = int(primes[pi])
        work = [[int(mat[i, j]) % p for j in range(s)] for i in range(s)]
        det = 1
        for col in range(s):
            piv = -1
            for r in range(col, s):
                if work[r][col] != 0:
                    piv = r
                    break
            if piv == -1:
                det = 0
                break
            if piv != col:
                work[piv], work[col] = work[col], work[piv]
                det = -det
            a = work[col][col]
            det = det * a % p
            inva = pow(a, p - 2, p)
            for r in range(col + 1, s):
                f = work[r][col]
                if f:
                    f = f * inva % p
                    rowr = work[r]
                    rowc = work[col]
                    for j in range(col, s):
                        rowr[j] = (rowr[j] - f * rowc[j]) % p
        out[pi] = det % p
    return out


def _moddet_nb_impl(mat, primes):  # pragma: no cover - exercised via dispatcher
    out = np.empty(len(primes), dtype=np.int64)
    s = mat.shape[0]
    work = np.empty((s, s), dtype=np.int64)
    for pi in range(len(primes)):
        p = primes[pi]
        for i in range(s):
            for j in range(s):
                work[i, j] = mat[i, j] % p
        det = 1
        sign = 1
        for col in range(s):
            piv = -1
            for r in range(col, s):
                if work[r, col] != 0:
                    piv = r
                    break
            if piv == -1:
                det = 0
                break
            if piv != col:
                for j in range(col, s):
                    tmp = work[piv, j]
                    work[piv, j] = work[col, j]
                    work[col, j] = tmp
                sign = -sign
            a = work[col, col]
            det = det * a % p
            # modular inverse by binary powmod, exponent p-2
            inva = 1
            base = a
            e = p - 2
            while e > 0:
                if e & 1:
                    inva = inva * base % p
                base = base * base % p
                e >>= 1
            for r in range(col + 1, s):
                f = work[r, col]
                if f != 0:
                    f = f * inva % p
                    for j in range(col, s):
                        work[r, j] = (work[r, j] - f * work[col, j]) % p
        if sign < 0 and det != 0:
            det = p - det
        out[pi] = det
    return out


_moddet_nb = njit(cache=True)(_moddet_nb_impl) if NUMBA_ENABLED else None


def moddet(mat: np.ndarray, primes: np.ndarray) -> np.ndarray:
    """Determinant of an int64 matrix modulo each prime (residues in [0, p))."""
    if NUMBA_ENABLED:
        return _moddet_nb(np.ascontiguousarray(mat, np.int64),
                          np.asarray(primes, np.int64))
    return _moddet_py(np.asarray(mat, np.int64), np.asarray(primes, np.int64))


# ---------------------------------------------------------------------------
# tensor-grid log sums for torus limits and Mahler measures
# ---------------------------------------------------------------------------

def _torus_logsum_py(cosv, d, a2, b2):
    # sum over the d-fold grid of log(a2 - b2 * s^2), s = sum of cosines
    G = len(cosv)
    if d == 1:
        s = cosv
    elif d == 2:
        s = (cosv[:, None] + cosv[None, :]).ravel()
    else:
        total = 0.0
        minarg = math.inf
        pair = (cosv[:, None] + cosv[None, :]).ravel() if d >= 2 else cosv
        base = pair
        for _ in range(d - 3):
            base = (base[:, None] + cosv[None, :]).ravel()
        if d == 3:
            base = pair
        for c0 in cosv:
            s = base + c0
            arg = a2 - b2 * s * s
            m = arg.min()
            if m < minarg:
                minarg = m
            if m > 0.0:
                total += float(np.log(arg).sum())
        if minarg <= 0.0:
            return math.nan, float(minarg)
        return total, float(minarg)
    arg = a2 - b2 * s * s
    minarg = float(arg.min())
    if minarg <= 0.0:
        return math.nan, minarg
    return float(np.log(arg).sum()), minarg


def _torus_logsum_nb_impl(cosv, d, a2, b2):  # pragma: no cover
    G = cosv.shape[0]
    total = 0.0
    minarg = 1e300
    if d == 1:
        for i in range(G):
            s = cosv[i]
            arg = a2 - b2 * s * s
            if arg < minarg:
                minarg = arg
            if arg > 0.0:
                total += math.log(arg)
    elif d == 2:
        for i in range(G):
            ci = cosv[i]
            for j in range(G):
                s = ci + cosv[j]
                arg = a2 - b2 * s * s
                if arg < minarg:
                    minarg = arg
                if arg > 0.0:
                    total += math.log(arg)
    elif d == 3:
        for i in range(G):
            ci = cosv[i]
            for j in range(G):
                cij = ci + cosv[j]
                for k in range(G):
                    s = cij + cosv[k]
                    arg = a2 - b2 * s * s
                    if arg < minarg:
                        minarg = arg
                    if arg > 0.0:
                        total += math.log(arg)
    else:
        npts = G ** d
        for flat in range(npts):
            rem = flat
            s = 0.0
            for _ in range(d):
                s += cosv[rem % G]
                rem //= G
            arg = a2 - b2 * s * s
            if arg < minarg:
                minarg = arg
            if arg > 0.0:
                total += math.log(arg)
    if minarg <= 0.0:
        return math.nan, minarg
    return total, minarg


_torus_logsum_nb = njit(cache=True)(_torus_logsum_nb_impl) if NUMBA_ENABLED else None


def torus_logsum(cosv: np.ndarray, d: int, a2: float, b2: float):
    """Grid sum of log(a2 - b2*(sum of d cosines)^2); (sum, min integrand arg).

    The sum is nan when the minimum argument is <= 0."""
    cosv = np.asarray(cosv, np.float64)
    if NUMBA_ENABLED:
        return _torus_logsum_nb(cosv, d, float(a2), float(b2))
    return _torus_logsum_py(cosv, d, float(a2), float(b2))


def _mahler_logsum_py(cosv, d, sign, c, eps):
    G = len(cosv)
    if d <= 2:
        s = cosv if d == 1 else (cosv[:, None] + cosv[None, :]).ravel()
        f = np.abs(sign * 2.0 * s - c)
        sing = np.flatnonzero(f < eps)
        fs = np.where(f < eps, 1.0, f)
        total = float(np.log(fs).sum())
        return total, float(f.min()), len(sing), [int(x) for x in sing[:8]]
    total = 0.0
    minabs = math.inf
    nsing = 0
    first = []
    base = cosv
    for _ in range(d - 2):
        base = (base[:, None] + cosv[None, :]).ravel()
    for i0, c0 in enumerate(cosv):
        s = base + c0
        f = np.abs(sign * 2.0 * s - c)
        m = float(f.min())
        if m < minabs:
            minabs = m
        bad = np.flatnonzero(f < eps)
        if len(bad):
            nsing += len(bad)
            for b in bad[: max(0, 8 - len(first))]:
                first.append(i0 * len(base) + int(b))
            f = np.where(f < eps, 1.0, f)
        total += float(np.log(f).sum())
    return total, minabs, nsing, first


def _mahler_logsum_nb_impl(cosv, d, sign, c, eps, first):  # pragma: no cover
    G = cosv.shape[0]
    total = 0.0
    minabs = 1e300
    nsing = 0
    npts = G ** d
    for flat in range(npts):
        rem = flat
        s = 0.0
        for _ in range(d):
            s += cosv[rem % G]
            rem //= G
        f = abs(sign * 2.0 * s - c)
        if f < minabs:
            minabs = f
        if f < eps:
            if nsing < first.shape[0]:
                first[nsing] = flat
            nsing += 1
        else:
            total += math.log(f)
    return total, minabs, nsing


_mahler_logsum_nb = njit(cache=True)(_mahler_logsum_nb_impl) if NUMBA_ENABLED else None


def mahler_logsum(cosv: np.ndarray, d: int, sign: float, c: float, eps: float = 1e-14):
    """Grid sum of log|sign*2*s - c| skipping near-zero nodes.

    Returns (sum, min |f|, number of near-zero nodes, first few flat node
    indices)."""
    cosv = np.asarray(cosv, np.float64)
    if NUMBA_ENABLED:
        first = np.full(8, -1, dtype=np.int64)
        total, minabs, nsing = _mahler_logsum_nb(cosv, d, float(sign), float(c),
                                                 float(eps), first)
        return total, float(minabs), int(nsing), [int(x) for x in first if x >= 0]
    return _mahler_logsum_py(cosv, d, float(sign), float(c), float(eps))


def warmup():
    """Trigger JIT compilation of every kernel on tiny inputs."""
    if not NUMBA_ENABLED:
        return
    term = np.array([1, 0], np.int64)
    orig = np.array([0, 1], np.int64)
    inv = np.array([1, 0], np.int64)
    indptr = np.array([0, 1, 2], np.int64)
    arcs = np.array([0, 1], np.int64)
    count_closed_nbt(term, orig, inv, indptr, arcs, 2, 1000)
    count_closed_alt(orig, term, indptr, arcs, indptr, np.array([1, 0], np.int64),
                     2, True, 1000)
    nbtaw_fill(orig, term, indptr, arcs, indptr, np.array([1, 0], np.int64),
               2, True, 2, 1000)
    moddet(np.eye(3, dtype=np.int64), np.array([2147483647], np.int64))
    cos2 = np.cos(2 * np.pi * (np.arange(4) + 0.5) / 4)
    torus_logsum(cos2, 1, 4.0, 0.1)
    torus_logsum(cos2, 2, 9.0, 0.1)
    torus_logsum(cos2, 3, 16.0, 0.1)
    mahler_logsum(cos2, 2, 1.0, 9.0)
