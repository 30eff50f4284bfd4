"""Jitted hot loops for the exhaustive scans.

Matchings are enumerated by backtracking, always pairing the smallest
unmatched vertex, so every fixed-point-free involution on 4b vertices is
visited exactly once.  A prefix (pairs fixed for the first decisions)
turns a call into one subtree of the search, which is how the scan is
split across workers; merging per-prefix results in prefix order makes
parallel runs bit-identical to serial ones.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _count_faces(m, sig, seen, stamp):
    """Total face count of the matching m over the three colors.

    Each face yields two orbits of the directed step map sigma_c o m
    (one per traversal direction), so F_c is half the orbit count.
    """
    n = m.shape[0]
    total = 0
    for ci in range(3):
        stamp += 1
        orbits = 0
        for v0 in range(n):
            if seen[v0] == stamp:
                continue
            orbits += 1
            v = v0
            while seen[v] != stamp:
                seen[v] = stamp
                v = sig[ci, m[v]]
        total += orbits // 2
    return total, stamp


@njit(cache=True)
def _is_connected(m, parent):
    b = parent.shape[0]
    for i in range(b):
        parent[i] = i
    for v in range(4 * b):
        w = m[v]
        if v < w:
            ru = v // 4
            while parent[ru] != ru:
                ru = parent[ru]
            rv = w // 4
            while parent[rv] != rv:
                rv = parent[rv]
            if ru != rv:
                parent[ru] = rv
    roots = 0
    for i in range(b):
        if parent[i] == i:
            roots += 1
    return roots == 1


@njit(cache=True)
def scan_store(b, prefix, sig, out_m, out_w):
    """Visit all matchings extending the prefix; store connected ones.

    Returns (total visited, number stored).  out_w holds 2*omega.
    """
    n = 4 * b
    half = n // 2
    m = np.full(n, -1, np.int8)
    npre = prefix.shape[0]
    for t in range(npre):
        m[prefix[t, 0]] = prefix[t, 1]
        m[prefix[t, 1]] = prefix[t, 0]
    sv = np.empty(half, np.int8)
    sw = np.empty(half, np.int8)
    parent = np.empty(b, np.int64)
    seen = np.zeros(n, np.int64)
    stamp = 0
    total = 0
    stored = 0

    v = 0
    while v < n and m[v] >= 0:
        v += 1
    if v >= n:
        total = 1
        if _is_connected(m, parent):
            F, stamp = _count_faces(m, sig, seen, stamp)
            out_m[0, :] = m
            out_w[0] = 6 + 3 * b - 2 * F
            stored = 1
        return total, stored

    depth = npre
    w = v
    while True:
        w += 1
        while w < n and m[w] >= 0:
            w += 1
        if w >= n:
            if depth == npre:
                break
            depth -= 1
            v = sv[depth]
            w = sw[depth]
            m[v] = -1
            m[w] = -1
            continue
        m[v] = w
        m[w] = v
        sv[depth] = v
        sw[depth] = w
        if depth + 1 == half:
            total += 1
            if _is_connected(m, parent):
                F, stamp = _count_faces(m, sig, seen, stamp)
                out_m[stored, :] = m
                out_w[stored] = 6 + 3 * b - 2 * F
                stored += 1
            m[v] = -1
            m[w] = -1
            continue
        depth += 1
        v += 1
        while m[v] >= 0:
            v += 1
        w = v
    return total, stored


@njit(cache=True)
def scan_aggregate(b, prefix, sig, hist, rep_m):
    """Histogram 2*omega over connected matchings extending the prefix.

    Tracks representatives of the minimal-2*omega stratum seen so far
    (up to rep_m.shape[0], in visit order).  Returns
    (total visited, connected count, min two_omega, rep count).
    """
    n = 4 * b
    half = n // 2
    cap = rep_m.shape[0]
    m = np.full(n, -1, np.int8)
    npre = prefix.shape[0]
    for t in range(npre):
        m[prefix[t, 0]] = prefix[t, 1]
        m[prefix[t, 1]] = prefix[t, 0]
    sv = np.empty(half, np.int8)
    sw = np.empty(half, np.int8)
    parent = np.empty(b, np.int64)
    seen = np.zeros(n, np.int64)
    stamp = 0
    total = 0
    connected = 0
    min_two = np.int64(1 << 30)
    rep_count = 0

    v = 0
    while v < n and m[v] >= 0:
        v += 1
    if v >= n:
        if _is_connected(m, parent):
            F, stamp = _count_faces(m, sig, seen, stamp)
            two = 6 + 3 * b - 2 * F
            hist[two] += 1
            min_two = two
            rep_m[0, :] = m
            rep_count = 1
            connected = 1
        return 1, connected, min_two, rep_count

    depth = npre
    w = v
    while True:
        w += 1
        while w < n and m[w] >= 0:
            w += 1
        if w >= n:
            if depth == npre:
                break
            depth -= 1
            v = sv[depth]
            w = sw[depth]
            m[v] = -1
            m[w] = -1
            continue
        m[v] = w
        m[w] = v
        sv[depth] = v
        sw[depth] = w
        if depth + 1 == half:
            total += 1
            if _is_connected(m, parent):
                connected += 1
                F, stamp = _count_faces(m, sig, seen, stamp)
                two = 6 + 3 * b - 2 * F
                hist[two] += 1
                if two < min_two:
                    min_two = two
                    rep_count = 0
                if two == min_two and rep_count < cap:
                    rep_m[rep_count, :] = m
                    rep_count += 1
            m[v] = -1
            m[w] = -1
            continue
        depth += 1
        v += 1
        while m[v] >= 0:
            v += 1
        w = v
    return total, connected, min_two, rep_count


@njit(cache=True)
def split_identity_bulk(b, M, sig):
    """For each stored matching, detect every 2-edge-cut among the color-0
    edge pairs and verify F(closed-split) == F + 3, which is the face
    additivity F(G) = F(G_L) + F(G_R) - 3 without relabeling the sides.

    Returns (number of 2-edge-cuts found, number of identity violations).
    """
    n = 4 * b
    ne = n // 2
    eu = np.empty(ne, np.int64)
    ev = np.empty(ne, np.int64)
    parent = np.empty(b, np.int64)
    comp = np.empty(b, np.int64)
    seen = np.zeros(n, np.int64)
    stamp = 0
    m2 = np.empty(n, np.int8)
    cuts = 0
    violations = 0
    for row in range(M.shape[0]):
        m = M[row]
        F0, stamp = _count_faces(m, sig, seen, stamp)
        k = 0
        for v in range(n):
            if v < m[v]:
                eu[k] = v
                ev[k] = m[v]
                k += 1
        for p in range(ne):
            for q in range(p + 1, ne):
                # bubble components without edges p and q
                for i in range(b):
                    parent[i] = i
                for t in range(ne):
                    if t == p or t == q:
                        continue
                    ru = eu[t] // 4
                    while parent[ru] != ru:
                        ru = parent[ru]
                    rv = ev[t] // 4
                    while parent[rv] != rv:
                        rv = parent[rv]
                    if ru != rv:
                        parent[ru] = rv
                ncomp = 0
                for i in range(b):
                    r = i
                    while parent[r] != r:
                        r = parent[r]
                    comp[i] = r
                    if r == i:
                        ncomp += 1
                if ncomp != 2:
                    continue
                cuts += 1
                a = eu[p]
                bb = ev[p]
                c = eu[q]
                d = ev[q]
                if comp[c // 4] == comp[a // 4]:
                    x, y = c, d
                else:
                    x, y = d, c
                for i in range(n):
                    m2[i] = m[i]
                m2[a] = x
                m2[x] = a
                m2[bb] = y
                m2[y] = bb
                F1, stamp = _count_faces(m2, sig, seen, stamp)
                if F1 != F0 + 3:
                    violations += 1
    return cuts, violations
