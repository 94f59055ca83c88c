"""numba kernels for the hot enumeration loops."""

import numpy as np
from numba import njit


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _classify_rgs(a, n, nxt, last, bpar, apar):
    """Return (atomic, connected, crossing_connected) for one RGS."""
    nb = 0
    for i in range(n):
        nxt[i] = -1
    for i in range(n):
        lab = a[i]
        if lab == nb:
            nb += 1
            last[lab] = i
        else:
            nxt[last[lab]] = i
            last[lab] = i
    # atomic: every gap m|m+1 is spanned by an arc
    atomic = True
    reach = -1
    for m in range(n - 1):
        if nxt[m] > reach:
            reach = nxt[m]
        if reach <= m:
            atomic = False
            break
    if n == 1:
        return True, True, True
    if not atomic:
        return False, False, False
    for b in range(nb):
        bpar[b] = b
    for i in range(n):
        apar[i] = i
    narcs = 0
    for i in range(n):
        k = nxt[i]
        if k < 0:
            continue
        narcs += 1
        for j in range(i + 1, k):
            l = nxt[j]
            if l > k:
                r1 = _find(bpar, a[i])
                r2 = _find(bpar, a[j])
                if r1 != r2:
                    bpar[r1] = r2
                s1 = _find(apar, i)
                s2 = _find(apar, j)
                if s1 != s2:
                    apar[s1] = s2
    root = _find(bpar, 0)
    connected = True
    for b in range(1, nb):
        if _find(bpar, b) != root:
            connected = False
            break
    if not connected:
        return True, False, False
    cc = narcs > 0
    aroot = -1
    for i in range(n):
        if nxt[i] >= 0:
            r = _find(apar, i)
            if aroot < 0:
                aroot = r
            elif r != aroot:
                cc = False
                break
    return True, True, cc


@njit(cache=True)
def classify_counts(n):
    out = np.zeros(4, dtype=np.int64)
    a = np.zeros(n, dtype=np.int64)
    m = np.zeros(n, dtype=np.int64)
    nxt = np.empty(n, dtype=np.int64)
    last = np.empty(n, dtype=np.int64)
    bpar = np.empty(n, dtype=np.int64)
    apar = np.empty(n, dtype=np.int64)
    while True:
        at, co, cc = _classify_rgs(a, n, nxt, last, bpar, apar)
        out[0] += 1
        if at:
            out[1] += 1
        if co:
            out[2] += 1
        if cc:
            out[3] += 1
        i = n - 1
        while i > 0 and a[i] == m[i - 1] + 1:
            i -= 1
        if i == 0:
            break
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]
    return out


# ---------------------------------------------------------------------------
# orbit scans over F_q^dim.  A point is its base-q code sum_i v_i q^i.  Each
# generator acts linearly as v -> v (I + N) with N stored column-sparse:
# column b of generator g lists the pairs (a, N[a, b]).


@njit(cache=True)
def _step_generic(c, dig, g, col_ptr, col_b, term_ptr, term_a, term_c, add, mul, pw):
    newc = c
    for ci in range(col_ptr[g], col_ptr[g + 1]):
        b = col_b[ci]
        delta = 0
        for t in range(term_ptr[ci], term_ptr[ci + 1]):
            delta = add[delta, mul[dig[term_a[t]], term_c[t]]]
        if delta != 0:
            nd = add[dig[b], delta]
            newc += (nd - dig[b]) * pw[b]
    return newc


@njit(cache=True)
def orbit_scan(q, p, dim, add, mul, col_ptr, col_b, term_ptr, term_a, term_c, zc, nexp, reps):
    """Partition all q^dim points into orbits.

    Returns (hist, norbits, status).  hist[s, e] counts orbits of size p^e whose
    minimal point has coordinate zc zero (s = 0) or nonzero (s = 1).  Orbit
    representatives (minimal codes) are written to ``reps`` while there is room.
    status is 1 if some orbit size is not a power of p.
    """
    total = q**dim
    pw = np.empty(dim, dtype=np.int64)
    acc = 1
    for i in range(dim):
        pw[i] = acc
        acc *= q
    ngen = col_ptr.shape[0] - 1
    visited = np.zeros(total, dtype=np.uint8)
    stack = np.empty(total, dtype=np.int64)
    dig = np.empty(max(dim, 1), dtype=np.int64)
    hist = np.zeros((2, nexp), dtype=np.int64)
    norbits = 0
    status = 0
    for s in range(total):
        if visited[s]:
            continue
        visited[s] = 1
        stack[0] = s
        top = 1
        size = 0
        while top > 0:
            top -= 1
            c = stack[top]
            size += 1
            x = c
            for i in range(dim):
                dig[i] = x % q
                x //= q
            for g in range(ngen):
                nc = _step_generic(c, dig, g, col_ptr, col_b, term_ptr, term_a, term_c, add, mul, pw)
                if visited[nc] == 0:
                    visited[nc] = 1
                    stack[top] = nc
                    top += 1
        e = 0
        while size % p == 0:
            size //= p
            e += 1
        if size != 1 or e >= nexp:
            status = 1
            e = 0
        side = 0
        if zc >= 0 and (s // pw[zc]) % q != 0:
            side = 1
        hist[side, e] += 1
        if norbits < reps.shape[0]:
            reps[norbits] = s
        norbits += 1
    return hist, norbits, status


@njit(cache=True)
def _parity(x):
    x ^= x >> 32
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return x & 1


@njit(cache=True)
def orbit_scan_gf2(dim, col_ptr, col_b, col_mask, zc, nexp, reps):
    """q = 2 specialisation: points are bitmasks and each column update is a parity."""
    total = np.int64(1) << dim
    ngen = col_ptr.shape[0] - 1
    visited = np.zeros(total, dtype=np.uint8)
    stack = np.empty(total, dtype=np.int64)
    hist = np.zeros((2, nexp), dtype=np.int64)
    norbits = 0
    status = 0
    for s in range(total):
        if visited[s]:
            continue
        visited[s] = 1
        stack[0] = s
        top = 1
        size = 0
        while top > 0:
            top -= 1
            c = stack[top]
            size += 1
            for g in range(ngen):
                nc = c
                for ci in range(col_ptr[g], col_ptr[g + 1]):
                    if _parity(c & col_mask[ci]):
                        nc ^= np.int64(1) << col_b[ci]
                if visited[nc] == 0:
                    visited[nc] = 1
                    stack[top] = nc
                    top += 1
        e = 0
        while size % 2 == 0:
            size //= 2
            e += 1
        if size != 1 or e >= nexp:
            status = 1
            e = 0
        side = 0
        if zc >= 0 and (s >> zc) & 1:
            side = 1
        hist[side, e] += 1
        if norbits < reps.shape[0]:
            reps[norbits] = s
        norbits += 1
    return hist, norbits, status


@njit(cache=True)
def single_orbit(start, q, dim, add, mul, col_ptr, col_b, term_ptr, term_a, term_c):
    """Sorted codes of the orbit through ``start``."""
    total = q**dim
    pw = np.empty(dim, dtype=np.int64)
    acc = 1
    for i in range(dim):
        pw[i] = acc
        acc *= q
    ngen = col_ptr.shape[0] - 1
    visited = np.zeros(total, dtype=np.uint8)
    stack = np.empty(total, dtype=np.int64)
    out = np.empty(total, dtype=np.int64)
    dig = np.empty(max(dim, 1), dtype=np.int64)
    visited[start] = 1
    stack[0] = start
    top = 1
    n = 0
    while top > 0:
        top -= 1
        c = stack[top]
        out[n] = c
        n += 1
        x = c
        for i in range(dim):
            dig[i] = x % q
            x //= q
        for g in range(ngen):
            nc = _step_generic(c, dig, g, col_ptr, col_b, term_ptr, term_a, term_c, add, mul, pw)
            if visited[nc] == 0:
                visited[nc] = 1
                stack[top] = nc
                top += 1
    return np.sort(out[:n])
