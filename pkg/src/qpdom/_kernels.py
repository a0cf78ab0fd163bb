"""Compiled inner loops.

Every array here is 1-indexed (slot 0 unused) so vertex ids line up with the
public API. Infinity is the int64 maximum and only ever combined through
``sat_add``; values are bounded by n so no finite sum reaches it.
"""

import numpy as np
from numba import njit

INF = np.iinfo(np.int64).max

_OK, _CYCLE, _DISCONNECTED = 0, 1, 2


@njit(cache=True, inline="always")
def sat_add(x, y):
    if x == INF or y == INF:
        return INF
    return x + y


@njit(cache=True, inline="always")
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


# ---------------------------------------------------------------------------
# tree plumbing
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def prufer_decode(seq, n):
    """Edges (us, vs) of the labeled tree on 1..n encoded by ``seq`` (n >= 2)."""
    degree = np.ones(n + 1, np.int64)
    degree[0] = 0
    for x in seq:
        degree[x] += 1
    us = np.empty(n - 1, np.int64)
    vs = np.empty(n - 1, np.int64)
    ptr = 1
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    e = 0
    for x in seq:
        us[e] = leaf
        vs[e] = x
        e += 1
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    us[e] = leaf
    vs[e] = n
    return us, vs


@njit(cache=True, nogil=True)
def build_csr(n, us, vs):
    """Sorted adjacency in CSR form: neighbors of v are targets[offsets[v]:offsets[v+1]]."""
    m = us.shape[0]
    deg = np.zeros(n + 2, np.int64)
    for e in range(m):
        deg[us[e]] += 1
        deg[vs[e]] += 1
    offsets = np.zeros(n + 2, np.int64)
    for v in range(1, n + 1):
        offsets[v + 1] = offsets[v] + deg[v]
    # two-pass counting sort: bucket by destination, then stably by source
    by_dst_src = np.empty(2 * m, np.int64)
    by_dst_dst = np.empty(2 * m, np.int64)
    fill = offsets.copy()
    for e in range(m):
        u = us[e]
        v = vs[e]
        by_dst_src[fill[v]] = u
        by_dst_dst[fill[v]] = v
        fill[v] += 1
        by_dst_src[fill[u]] = v
        by_dst_dst[fill[u]] = u
        fill[u] += 1
    targets = np.empty(2 * m, np.int64)
    fill = offsets.copy()
    for p in range(2 * m):
        s = by_dst_src[p]
        targets[fill[s]] = by_dst_dst[p]
        fill[s] += 1
    return offsets, targets


@njit(cache=True, nogil=True)
def forest_status(n, us, vs):
    """0 if the edges form a spanning tree of 1..n, 1 on a cycle, 2 if disconnected."""
    root = np.arange(n + 1)
    comps = n
    for e in range(us.shape[0]):
        a = us[e]
        while root[a] != a:
            root[a] = root[root[a]]
            a = root[a]
        b = vs[e]
        while root[b] != b:
            root[b] = root[root[b]]
            b = root[b]
        if a == b:
            return _CYCLE
        root[a] = b
        comps -= 1
    if comps != 1:
        return _DISCONNECTED
    return _OK


@njit(cache=True, nogil=True)
def bfs_renumber(offsets, targets, n, root):
    """Breadth-first renumbering from ``root``; neighbors are visited in ascending id."""
    new_to_old = np.zeros(n + 1, np.int64)
    old_to_new = np.zeros(n + 1, np.int64)
    parent = np.zeros(n + 1, np.int64)
    new_to_old[1] = root
    old_to_new[root] = 1
    tail = 2
    for head in range(1, n + 1):
        v = new_to_old[head]
        for p in range(offsets[v], offsets[v + 1]):
            w = targets[p]
            if old_to_new[w] == 0 and w != root:
                old_to_new[w] = tail
                new_to_old[tail] = w
                parent[tail] = head
                tail += 1
    return parent, old_to_new, new_to_old


# ---------------------------------------------------------------------------
# dynamic programs
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def paper_dp(parent, n, k):
    """Single (b, z) pair per vertex, transitions exactly as published."""
    a = np.full(n + 1, INF, np.int64)
    b = np.full(n + 1, INF, np.int64)
    c = np.ones(n + 1, np.int64)
    d = np.zeros(n + 1, np.int64)
    z = np.full(n + 1, INF, np.int64)
    for i in range(n, 1, -1):
        j = parent[i]
        zz = z[j]
        av = min(sat_add(a[j], a[i]), sat_add(a[j], b[i]))
        t = sat_add(b[j], c[i])
        if av > t and z[j] == k - 1:
            av = t
        bv = min(sat_add(b[j], a[i]), sat_add(b[j], b[i]))
        t = sat_add(d[j], c[i])
        if bv > t:
            bv = t
            zz = 1
        t = sat_add(b[j], c[i])
        if bv > t and z[j] <= k - 2:
            bv = t
            zz = z[j] + 1
        if bv == INF:
            zz = INF
        cv = min(sat_add(c[j], b[i]), sat_add(c[j], c[i]), sat_add(c[j], d[i]))
        dv = min(sat_add(d[j], a[i]), sat_add(d[j], b[i]))
        a[j] = av
        b[j] = bv
        c[j] = cv
        d[j] = dv
        z[j] = zz
    return min(a[1], b[1], c[1]), a, b, c, d, z


@njit(cache=True, nogil=True)
def frontier_dp(parent, n, k, record):
    """Per-vertex table over states A, B_1..B_{k-1}, C, D (column index = state).

    Column 0 is A, column z in 1..k-1 is B with exactly z in-set neighbors of
    the root, column k is C and column k+1 is D. With ``record`` the parent's
    prior state and the child's state achieving every cell are kept per merge.
    """
    W = k + 2
    C = k
    D = k + 1
    T = np.full((n + 1, W), INF, np.int64)
    for v in range(1, n + 1):
        T[v, C] = 1
        T[v, D] = 0
    rows = n + 1 if record else 1
    rp = np.full((rows, W), -1, np.int32)
    rc = np.full((rows, W), -1, np.int32)
    new = np.empty(W, np.int64)
    newp = np.empty(W, np.int32)
    newc = np.empty(W, np.int32)
    for i in range(n, 1, -1):
        j = parent[i]
        # child not in S: A then B_1..B_{k-1}
        ab = INF
        ab_s = -1
        for s in range(0, C):
            if T[i, s] < ab:
                ab = T[i, s]
                ab_s = s
        # child next to an in-set parent: B_1..B_{k-1}, C, D
        bcd = INF
        bcd_s = -1
        for s in range(1, W):
            if T[i, s] < bcd:
                bcd = T[i, s]
                bcd_s = s
        ci = T[i, C]

        # A: parent already at k, or reaches k through an in-set child
        best = sat_add(T[j, 0], ab)
        bp = 0
        bc = ab_s
        src = k - 1 if k >= 2 else D
        cand = sat_add(T[j, src], ci)
        if cand < best:
            best = cand
            bp = src
            bc = C
        new[0] = best
        newp[0] = bp
        newc[0] = bc

        for zv in range(1, k):
            best = sat_add(T[j, zv], ab)
            bp = zv
            bc = ab_s
            src = zv - 1 if zv >= 2 else D
            cand = sat_add(T[j, src], ci)
            if cand < best:
                best = cand
                bp = src
                bc = C
            new[zv] = best
            newp[zv] = bp
            newc[zv] = bc

        new[C] = sat_add(T[j, C], bcd)
        newp[C] = C
        newc[C] = bcd_s
        new[D] = sat_add(T[j, D], ab)
        newp[D] = D
        newc[D] = ab_s

        for s in range(W):
            T[j, s] = new[s]
        if record:
            for s in range(W):
                rp[i, s] = newp[s]
                rc[i, s] = newc[s]
    return T, rp, rc


@njit(cache=True, nogil=True)
def frontier_value(parent, n, k):
    T, _, _ = frontier_dp(parent, n, k, False)
    best = INF
    for s in range(0, k + 1):
        if T[1, s] < best:
            best = T[1, s]
    return best


@njit(cache=True, nogil=True)
def backtrack(parent, n, k, root_state, rp, rc):
    """Final state of every vertex's one-vertex table; state k means 'in the set'."""
    need = np.empty(n + 1, np.int64)
    need[0] = -1
    need[1] = root_state
    for i in range(2, n + 1):
        j = parent[i]
        s = need[j]
        need[i] = rc[i, s]
        need[j] = rp[i, s]
    return need


# ---------------------------------------------------------------------------
# brute force and structural scans
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def neighbor_masks(offsets, targets, n):
    nb = np.zeros(n, np.int64)
    for v in range(1, n + 1):
        m = 0
        for p in range(offsets[v], offsets[v + 1]):
            m |= 1 << (targets[p] - 1)
        nb[v - 1] = m
    return nb


@njit(cache=True, nogil=True)
def mask_profile(nb, n):
    """For every subset S (bit v-1 = vertex v): max |N(v) & S| over v outside S.

    -1 marks a non-dominating subset; the full set scores 0.
    """
    total = 1 << n
    full = total - 1
    out = np.empty(total, np.int64)
    for S in range(total):
        rest = full & ~S
        m = 0
        for v in range(n):
            if (rest >> v) & 1:
                c = popcount(nb[v] & S)
                if c == 0:
                    m = -1
                    break
                if c > m:
                    m = c
        out[S] = m
    return out


@njit(cache=True, nogil=True)
def min_by_overload(nb, n, maxdeg):
    """best[m] = smallest dominating set whose worst outside vertex sees exactly m members."""
    best = np.full(maxdeg + 1, INF, np.int64)
    prof = mask_profile(nb, n)
    for S in range(1 << n):
        m = prof[S]
        if m >= 0:
            size = popcount(S)
            if size < best[m]:
                best[m] = size
    return best


@njit(cache=True, nogil=True)
def extremal_flags(offsets, targets, n):
    """(strong supports independent and dominating, component condition, failing vertex).

    The failing vertex is some member of the first component violating the
    count condition, or 0.
    """
    leaf = np.zeros(n + 1, np.bool_)
    for v in range(1, n + 1):
        leaf[v] = offsets[v + 1] - offsets[v] == 1
    strong = np.zeros(n + 1, np.bool_)
    for v in range(1, n + 1):
        cnt = 0
        for p in range(offsets[v], offsets[v + 1]):
            if leaf[targets[p]]:
                cnt += 1
        strong[v] = cnt >= 2

    cond1 = True
    for v in range(1, n + 1):
        hit = False
        for p in range(offsets[v], offsets[v + 1]):
            if strong[targets[p]]:
                hit = True
                break
        if strong[v] and hit:
            cond1 = False  # not independent
            break
        if not strong[v] and not hit:
            cond1 = False  # not dominating
            break

    cond2 = True
    bad = 0
    seen = np.zeros(n + 1, np.bool_)
    stamp = np.zeros(n + 1, np.int64)
    stack = np.empty(n, np.int64)
    comp_id = 0
    for s0 in range(1, n + 1):
        if seen[s0] or strong[s0] or leaf[s0]:
            continue
        comp_id += 1
        size = 0
        touched = 0
        top = 0
        stack[top] = s0
        top += 1
        seen[s0] = True
        while top:
            top -= 1
            v = stack[top]
            size += 1
            for p in range(offsets[v], offsets[v + 1]):
                w = targets[p]
                if strong[w]:
                    if stamp[w] != comp_id:
                        stamp[w] = comp_id
                        touched += 1
                elif not leaf[w] and not seen[w]:
                    seen[w] = True
                    stack[top] = w
                    top += 1
        if touched != size + 1:
            cond2 = False
            bad = s0
            break
    return cond1, cond2, bad


# ---------------------------------------------------------------------------
# exhaustive corpus sweep
# ---------------------------------------------------------------------------

# counters returned by crosscheck_block
N_TREES, N_PAIRS, N_FRONTIER_ORACLE, N_PAPER_FRONTIER, N_EXTREMAL_MISMATCH, N_EXTREMAL = range(6)
N_COUNTERS = 6
FINDING_WIDTH = 6  # index, k, frontier, published, oracle, kind (0 frontier/oracle, 1 published, 2 extremal)


@njit(cache=True, nogil=True)
def crosscheck_block(n, start, stop, kfix, max_findings):
    """Check every Prüfer index in [start, stop) for labeled trees on n vertices.

    kfix = 0 checks all k in 1..max(1, Delta); otherwise only min(kfix, Delta).
    """
    counts = np.zeros(N_COUNTERS, np.int64)
    findings = np.zeros((3 * max_findings, FINDING_WIDTH), np.int64)
    per_kind = np.zeros(3, np.int64)  # at most max_findings rows of each kind
    nf = 0
    L = max(n - 2, 0)
    seq = np.empty(L, np.int64)
    for idx in range(start, stop):
        if n == 1:
            us = np.empty(0, np.int64)
            vs = np.empty(0, np.int64)
        else:
            r = idx
            for p in range(L - 1, -1, -1):
                seq[p] = r % n + 1
                r //= n
            us, vs = prufer_decode(seq, n)
        offsets, targets = build_csr(n, us, vs)
        parent, _, _ = bfs_renumber(offsets, targets, n, 1)
        delta = 0
        for v in range(1, n + 1):
            delta = max(delta, offsets[v + 1] - offsets[v])
        kmax = max(delta, 1)
        nb = neighbor_masks(offsets, targets, n)
        best = min_by_overload(nb, n, kmax)
        # prefix minima: oracle value for every k
        orc = np.empty(kmax + 1, np.int64)
        run = INF
        for m in range(kmax + 1):
            run = min(run, best[m])
            orc[m] = run
        counts[N_TREES] += 1

        if kfix == 0:
            klo, khi = 1, kmax
        else:
            klo = min(kfix, kmax)
            khi = klo
        for k in range(klo, khi + 1):
            f = frontier_value(parent, n, k)
            pv, _, _, _, _, _ = paper_dp(parent, n, k)
            o = orc[k]
            counts[N_PAIRS] += 1
            kind = -1
            if f != o:
                counts[N_FRONTIER_ORACLE] += 1
                kind = 0
            if pv != f:
                counts[N_PAPER_FRONTIER] += 1
                if kind < 0:
                    kind = 1
            if kind >= 0 and per_kind[kind] < max_findings:
                per_kind[kind] += 1
                findings[nf, 0] = idx
                findings[nf, 1] = k
                findings[nf, 2] = f
                findings[nf, 3] = pv
                findings[nf, 4] = o
                findings[nf, 5] = kind
                nf += 1

        if n >= 2:
            c1, c2, _ = extremal_flags(offsets, targets, n)
            ext = c1 and c2
            if ext:
                counts[N_EXTREMAL] += 1
            # oracle side: perfect domination number vs 2 * domination number - 1
            tight = orc[1] == 2 * orc[kmax] - 1
            if ext != tight:
                counts[N_EXTREMAL_MISMATCH] += 1
                if per_kind[2] < max_findings:
                    per_kind[2] += 1
                    findings[nf, 0] = idx
                    findings[nf, 1] = 1
                    findings[nf, 2] = 1 if ext else 0
                    findings[nf, 3] = orc[1]
                    findings[nf, 4] = orc[kmax]
                    findings[nf, 5] = 2
                    nf += 1
    return counts, findings[:nf]
