"""Compiled hot loops.

Everything here works on ``int64`` bit-mask rows of at most 63 vertices
(64-vertex graphs never reach these kernels: the exponential routines are
capped far lower, and the search is capped at 12 vertices).
"""

from __future__ import annotations

import numba as nb
import numpy as np

_JIT = dict(cache=True, nogil=True)
# numba cannot reload cached self-recursive functions (or their callers) safely
_JIT_RECURSIVE = dict(cache=False, nogil=True)


@nb.njit(**_JIT)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@nb.njit(**_JIT)
def low_index(x):
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


@nb.njit(**_JIT)
def longest_cycle(adj, target):
    """Longest cycle of the graph ``adj`` by subset DP.

    The cycle's lowest vertex ``s`` is fixed in turn; ``reach[m]`` holds the
    possible endpoints of a path that starts at ``s`` and covers exactly the
    vertex set ``m`` (masks are stored relative to ``s``).  Stops early once a
    cycle of length ``>= target`` is found.  Returns the cycle as a vertex array
    (empty when the graph is a forest).
    """
    c = adj.shape[0]
    best_len = 0
    best = np.zeros(0, np.int64)
    for s in range(c):
        width = c - s
        if width <= best_len or width < 3:
            break
        local = np.zeros(width, np.int64)
        for i in range(width):
            local[i] = adj[s + i] >> s
        reach = np.zeros(1 << width, np.uint32)
        reach[1] = 1
        found_mask = 0
        found_end = -1
        for mask in range(1, 1 << width, 2):
            ends = np.int64(reach[mask])
            if ends == 0:
                continue
            size = popcount(mask)
            if size >= 3 and size > best_len and (ends & local[0]):
                best_len = size
                found_mask = mask
                found_end = low_index(ends & local[0])
            e = ends
            while e:
                v = low_index(e)
                e &= e - 1
                nxt = local[v] & ~np.int64(mask)
                while nxt:
                    w = low_index(nxt)
                    nxt &= nxt - 1
                    reach[mask | (1 << w)] |= np.uint32(1 << w)
        if found_end >= 0:
            cyc = np.zeros(best_len, np.int64)
            mask = found_mask
            cur = found_end
            pos = best_len - 1
            while True:
                cyc[pos] = cur + s
                pos -= 1
                if mask == 1:
                    break
                prev_mask = mask & ~(1 << cur)
                cand = np.int64(reach[prev_mask]) & local[cur]
                cur = low_index(cand)
                mask = prev_mask
            best = cyc
            if best_len >= target:
                return best
    return best


@nb.njit(**_JIT)
def longest_path(adj):
    """A maximum-order path of a connected graph by subset DP over end vertices."""
    c = adj.shape[0]
    if c == 0:
        return np.zeros(0, np.int64)
    reach = np.zeros(1 << c, np.uint32)
    for v in range(c):
        reach[1 << v] = np.uint32(1 << v)
    best_mask = 1
    best_size = 1
    for mask in range(1, 1 << c):
        ends = np.int64(reach[mask])
        if ends == 0:
            continue
        size = popcount(mask)
        if size > best_size:
            best_size = size
            best_mask = mask
        e = ends
        while e:
            v = low_index(e)
            e &= e - 1
            nxt = adj[v] & ~np.int64(mask)
            while nxt:
                w = low_index(nxt)
                nxt &= nxt - 1
                reach[mask | (1 << w)] |= np.uint32(1 << w)
    out = np.zeros(best_size, np.int64)
    mask = best_mask
    cur = low_index(np.int64(reach[mask]))
    pos = 0
    while True:
        out[pos] = cur
        pos += 1
        if pos == best_size:
            break
        prev_mask = mask & ~(1 << cur)
        cand = np.int64(reach[prev_mask]) & adj[cur]
        cur = low_index(cand)
        mask = prev_mask
    return out


@nb.njit(**_JIT_RECURSIVE)
def clique_count(adj, cand, r):
    """Number of ``r``-cliques inside the vertex set ``cand``."""
    if r == 0:
        return 1
    if r == 1:
        return popcount(cand)
    total = 0
    c = cand
    while c:
        v = low_index(c)
        c &= c - 1
        sub = adj[v] & c
        if popcount(sub) >= r - 1:
            total += clique_count(adj, sub, r - 1)
    return total


@nb.njit(**_JIT_RECURSIVE)
def has_matching(adj, mask, need):
    """True when the subgraph induced by ``mask`` has a matching of ``need`` edges."""
    if need <= 0:
        return True
    live = np.int64(0)
    c = mask
    while c:
        v = low_index(c)
        c &= c - 1
        if adj[v] & mask:
            live |= np.int64(1) << v
    if popcount(live) < 2 * need:
        return False
    v = low_index(live)
    rest = live & ~(np.int64(1) << v)
    nbrs = adj[v] & rest
    while nbrs:
        w = low_index(nbrs)
        nbrs &= nbrs - 1
        if has_matching(adj, rest & ~(np.int64(1) << w), need - 1):
            return True
    return has_matching(adj, rest, need)


@nb.njit(**_JIT_RECURSIVE)
def has_long_path(adj, cur, target, visited, length, need):
    """A ``cur``-``target`` path avoiding ``visited`` with at least ``need`` edges."""
    if (adj[cur] >> target) & 1 and length + 1 >= need:
        return True
    nxt = adj[cur] & ~visited & ~(np.int64(1) << target)
    while nxt:
        w = low_index(nxt)
        nxt &= nxt - 1
        if has_long_path(adj, w, target, visited | (np.int64(1) << w), length + 1, need):
            return True
    return False


@nb.njit(**_JIT_RECURSIVE)
def is_maximal(adj, n, k, s, nu):
    """No non-edge can be added without a long cycle or an (s+1)-matching."""
    full = (np.int64(1) << n) - 1
    for u in range(n):
        for v in range(u + 1, n):
            if (adj[u] >> v) & 1:
                continue
            bu = np.int64(1) << u
            bv = np.int64(1) << v
            grows = has_matching(adj, full & ~bu & ~bv, nu)
            if grows and nu + 1 > s:
                continue
            if k <= n and has_long_path(adj, u, v, bu, 0, k - 1):
                continue
            return False
    return True


@nb.njit(**_JIT_RECURSIVE)
def explore(n, k, s, r, best, eu, ev, start, stop, G0, P0, nu0, ub0,
            front_G, front_P, front_nu, front_ub, witness):
    """Include/exclude DFS over the edges ``eu[i]-ev[i]`` from depth ``start``.

    ``G`` holds the included edges, ``P`` the included plus undecided ones, so
    ``ub = N(K_r, P)`` bounds every completion.  The include branch is dropped
    as soon as the graph gains a cycle of length ``>= k`` or a matching of
    ``s + 1`` edges; the exclude branch is dropped when ``ub`` can no longer
    beat ``best``.  States reaching depth ``stop < len(eu)`` are written to the
    ``front_*`` arrays (up to their capacity) instead of being expanded.

    Returns ``(best, nodes, frontier_count, improved, maximal_leaves)``; the
    best graph found, if it beats the incoming ``best``, is left in ``witness``.
    """
    m = eu.shape[0]
    full = (np.int64(1) << n) - 1
    G = G0.copy()
    P = P0.copy()
    ub = ub0
    nu = np.zeros(m + 2, np.int64)
    state = np.zeros(m + 2, np.int64)
    delta = np.zeros(m + 2, np.int64)
    nu[start] = nu0
    check_cycle = k <= n
    nodes = 0
    frontier = 0
    improved = False
    maximal = 0
    cap = front_G.shape[0]
    depth = start
    state[depth] = 0
    while depth >= start:
        if depth == stop:
            if stop == m:
                if ub > best:
                    best = ub
                    improved = True
                    for v in range(n):
                        witness[v] = G[v]
                    if is_maximal(G, n, k, s, nu[depth]):
                        maximal += 1
            else:
                if frontier < cap:
                    for v in range(n):
                        front_G[frontier, v] = G[v]
                        front_P[frontier, v] = P[v]
                    front_nu[frontier] = nu[depth]
                    front_ub[frontier] = ub
                frontier += 1
            depth -= 1
            continue
        u = eu[depth]
        v = ev[depth]
        bu = np.int64(1) << u
        bv = np.int64(1) << v
        st = state[depth]
        if st == 0:
            state[depth] = 1
            ok = True
            new_nu = nu[depth]
            if has_matching(G, full & ~bu & ~bv, nu[depth]):
                new_nu += 1
                if new_nu > s:
                    ok = False
            if ok and check_cycle and has_long_path(G, u, v, bu, 0, k - 1):
                ok = False
            if ok:
                G[u] |= bv
                G[v] |= bu
                nu[depth + 1] = new_nu
                nodes += 1
                depth += 1
                state[depth] = 0
        elif st == 1:
            state[depth] = 2
            if (G[u] >> v) & 1:
                G[u] &= ~bv
                G[v] &= ~bu
            d = clique_count(P, P[u] & P[v], r - 2)
            if ub - d > best:
                P[u] &= ~bv
                P[v] &= ~bu
                ub -= d
                delta[depth] = d
                nu[depth + 1] = nu[depth]
                nodes += 1
                depth += 1
                state[depth] = 0
            else:
                delta[depth] = -1
        else:
            if delta[depth] >= 0:
                P[u] |= bv
                P[v] |= bu
                ub += delta[depth]
            depth -= 1
    return best, nodes, frontier, improved, maximal
