"""Exact graph invariants: clique counts, matchings, cycles, paths, blocks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import comb

import numpy as np

from . import _kernels
from .errors import CapacityError, CountOverflowError, PreconditionError
from .graph import Graph, bits

DEFAULT_COMPONENT_LIMIT = 24
UINT64_MAX = (1 << 64) - 1


def checked(value: int) -> int:
    """Return ``value`` if it fits an unsigned 64-bit count, else raise."""
    if value < 0 or value > UINT64_MAX:
        raise CountOverflowError(f"count {value} does not fit in 64 bits")
    return value


# -- cliques -----------------------------------------------------------------


def _is_clique(adj: tuple[int, ...], cand: int) -> bool:
    for v in bits(cand):
        if (cand & ~(1 << v)) & ~adj[v]:
            return False
    return True


def _cliques_in(adj: tuple[int, ...], cand: int, r: int) -> int:
    size = cand.bit_count()
    if r == 0:
        return 1
    if size < r:
        return 0
    if r == 1:
        return size
    if _is_clique(adj, cand):
        return comb(size, r)
    total = 0
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        sub = adj[v] & rest
        if sub.bit_count() >= r - 1:
            total += _cliques_in(adj, sub, r - 1)
    return total


def count_cliques(g: Graph, r: int) -> int:
    """Number of ``r``-vertex complete subgraphs of ``g``."""
    if r < 0:
        raise PreconditionError(f"clique size must be non-negative, got {r}")
    return checked(_cliques_in(g.adjacency, g.vertex_mask, r))


# -- matchings ---------------------------------------------------------------


@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def covered(self) -> int:
        mask = 0
        for u, v in self.edges:
            mask |= (1 << u) | (1 << v)
        return mask

    def is_valid_for(self, g: Graph) -> bool:
        seen = 0
        for u, v in self.edges:
            if u == v or not g.has_edge(u, v):
                return False
            pair = (1 << u) | (1 << v)
            if seen & pair:
                return False
            seen |= pair
        return True


def maximum_matching(g: Graph) -> Matching:
    """A maximum matching of ``g``."""
    mate = _augmenting_matching(g.order, g.adjacency)
    return Matching(tuple((v, mate[v]) for v in range(g.order) if mate[v] > v))


def _augmenting_matching(order: int, adj: tuple[int, ...]) -> list[int]:
    nbrs = [list(bits(a)) for a in adj]
    match = [-1] * order
    for v in range(order):
        if match[v] == -1:
            for w in nbrs[v]:
                if match[w] == -1:
                    match[v], match[w] = w, v
                    break

    for root in range(order):
        if match[root] != -1 or not adj[root]:
            continue
        used = [False] * order
        parent = [-1] * order
        base = list(range(order))
        used[root] = True
        queue = deque([root])
        end = -1

        def lca(a: int, b: int) -> int:
            seen = [False] * order
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue and end == -1:
            v = queue.popleft()
            for to in nbrs[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * order
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(order):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        end = to
                        break
                    used[match[to]] = True
                    queue.append(match[to])
        v = end
        while v != -1:
            pv = parent[v]
            ppv = match[pv]
            match[v], match[pv] = pv, v
            v = ppv
    return match


def matching_number(g: Graph) -> int:
    """Size of a maximum matching (``nu``)."""
    mate = _augmenting_matching(g.order, g.adjacency)
    return sum(1 for m in mate if m != -1) // 2


# -- blocks ------------------------------------------------------------------


def _block_masks(adj: tuple[int, ...]) -> list[int]:
    """Vertex masks of all blocks (2-connected pieces and cut-edges) of any graph."""
    order = len(adj)
    disc = [-1] * order
    low = [0] * order
    clock = 0
    blocks: list[int] = []
    for root in range(order):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        if not adj[root]:
            continue
        vstack = [root]
        stack = [(root, -1, iter(list(bits(adj[root]))))]
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    vstack.append(w)
                    stack.append((w, v, iter(list(bits(adj[w])))))
                    descended = True
                    break
                if w != parent and disc[w] < low[v]:
                    low[v] = disc[w]
            if descended:
                continue
            stack.pop()
            if parent == -1:
                continue
            if low[v] < low[parent]:
                low[parent] = low[v]
            if low[v] >= disc[parent]:
                mask = 1 << parent
                while True:
                    x = vstack.pop()
                    mask |= 1 << x
                    if x == v:
                        break
                blocks.append(mask)
    blocks.sort(key=lambda m: (m & -m, m))
    return blocks


@dataclass(frozen=True)
class BlockCutTree:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    is_strict: bool

    def leaf_blocks(self) -> list[int]:
        """Indices of blocks holding exactly one cut vertex."""
        return [i for i, b in enumerate(self.blocks) if len(b & self.cut_vertices) == 1]


def block_cut_decompose(g: Graph) -> BlockCutTree:
    """Block decomposition of a connected graph with at least two vertices."""
    if g.order < 2:
        raise PreconditionError("block decomposition needs at least two vertices")
    if not g.is_connected():
        raise PreconditionError("block decomposition needs a connected graph")
    masks = _block_masks(g.adjacency)
    counts = [0] * g.order
    for m in masks:
        for v in bits(m):
            counts[v] += 1
    cuts = frozenset(v for v in range(g.order) if counts[v] > 1)
    blocks = tuple(frozenset(bits(m)) for m in masks)
    return BlockCutTree(blocks, cuts, all(len(b) != 2 for b in blocks))


def block_count(g: Graph) -> int:
    """Number of blocks (2-connected pieces and bridges); isolated vertices count as none."""
    return len(_block_masks(g.adjacency))


# -- cycles and paths --------------------------------------------------------


def _twin_reduce(adj: tuple[int, ...], mask: int, extra: int) -> int:
    """Drop surplus false twins inside ``mask``.

    Vertices with the same neighbourhood (inside ``mask``) are interchangeable;
    a cycle visits at most ``d`` of a class with ``d`` common neighbours and a
    path at most ``d + 1``, so any ``d + extra`` representatives suffice.
    """
    classes: dict[int, list[int]] = {}
    for v in bits(mask):
        classes.setdefault(adj[v] & mask, []).append(v)
    keep = 0
    for nbhd, members in classes.items():
        quota = nbhd.bit_count() + extra
        for v in members[:quota]:
            keep |= 1 << v
    return keep


def _local(adj: tuple[int, ...], mask: int) -> tuple[list[int], np.ndarray]:
    verts = list(bits(mask))
    index = {v: i for i, v in enumerate(verts)}
    rows = np.zeros(len(verts), np.int64)
    for i, v in enumerate(verts):
        row = 0
        for u in bits(adj[v] & mask):
            row |= 1 << index[u]
        rows[i] = row
    return verts, rows


def longest_cycle(g: Graph, target: int | None = None,
                  limit: int = DEFAULT_COMPONENT_LIMIT) -> list[int]:
    """Vertices of a longest cycle in cyclic order (empty for a forest).

    With ``target`` set, returns as soon as a cycle of at least that length
    is found; the result is then a witness, not necessarily the longest.
    """
    adj = g.adjacency
    goal = target if target is not None else g.order + 1
    best: list[int] = []
    for block in _block_masks(adj):
        size = block.bit_count()
        if size < 3 or size <= len(best):
            continue
        if _is_clique(adj, block):
            best = list(bits(block))
        else:
            reduced = _twin_reduce(adj, block, 0)
            if reduced.bit_count() > limit:
                raise CapacityError(
                    f"block of {reduced.bit_count()} vertices exceeds the cycle-search limit {limit}")
            if reduced.bit_count() <= len(best):
                continue
            verts, rows = _local(adj, reduced)
            cyc = _kernels.longest_cycle(rows, max(goal, len(best) + 1))
            if len(cyc) > len(best):
                best = [verts[i] for i in cyc]
        if len(best) >= goal:
            break
    return best


def circumference(g: Graph, limit: int = DEFAULT_COMPONENT_LIMIT) -> int:
    """Length of a longest cycle; 0 for forests."""
    return len(longest_cycle(g, limit=limit))


def longest_path(g: Graph, limit: int = DEFAULT_COMPONENT_LIMIT) -> list[int]:
    """Vertex sequence of a maximum-order path."""
    adj = g.adjacency
    best: list[int] = []
    for comp in g.components():
        if comp.bit_count() <= len(best):
            continue
        if _is_clique(adj, comp):
            best = list(bits(comp))
            continue
        reduced = _twin_reduce(adj, comp, 1)
        if reduced.bit_count() > limit:
            raise CapacityError(
                f"component of {reduced.bit_count()} vertices exceeds the path-search limit {limit}")
        verts, rows = _local(adj, reduced)
        found = _kernels.longest_path(rows)
        if len(found) > len(best):
            best = [verts[i] for i in found]
    return best


def is_free(g: Graph, k: int, s: int, limit: int = DEFAULT_COMPONENT_LIMIT) -> bool:
    """True iff ``g`` has no cycle of length ``>= k`` and no matching of ``s + 1`` edges."""
    if k < 3 or s < 0:
        raise PreconditionError(f"need k >= 3 and s >= 0, got k={k}, s={s}")
    if matching_number(g) > s:
        return False
    return len(longest_cycle(g, target=k, limit=limit)) < k

