"""Immutable bit-mask graphs and the composition algebra used by the constructions.

Vertices are ``0..order-1``; ``adj[v]`` is an int whose bit ``u`` is set when
``uv`` is an edge.  Composition operators keep the left operand's labels and
shift the right operand by ``len(left)``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, PreconditionError

MAX_ORDER = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_order(order: int) -> None:
    if order < 0:
        raise PreconditionError(f"order must be non-negative, got {order}")
    if order > MAX_ORDER:
        raise CapacityError(f"order {order} exceeds the {MAX_ORDER}-vertex capacity")


class Graph:
    """Undirected simple graph on at most 64 vertices."""

    __slots__ = ("_adj", "_hash")

    def __init__(self, adjacency: Sequence[int] = ()) -> None:
        adj = tuple(int(a) for a in adjacency)
        order = len(adj)
        _check_order(order)
        full = (1 << order) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise PreconditionError(f"vertex {v} has a neighbour outside 0..{order - 1}")
            if row >> v & 1:
                raise PreconditionError(f"vertex {v} has a loop")
            for u in bits(row):
                if not adj[u] >> v & 1:
                    raise PreconditionError(f"adjacency is not symmetric at {v}-{u}")
        self._adj = adj
        self._hash = None

    @classmethod
    def _trusted(cls, adj: tuple[int, ...]) -> "Graph":
        g = cls.__new__(cls)
        g._adj = adj
        g._hash = None
        return g

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        _check_order(order)
        adj = [0] * order
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise PreconditionError(f"edge {u}-{v} outside 0..{order - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(tuple(adj))

    @property
    def order(self) -> int:
        return len(self._adj)

    @property
    def adjacency(self) -> tuple[int, ...]:
        return self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._adj)
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edge_count})"

    def neighbors(self, v: int) -> int:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self._adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, row in enumerate(self._adj) for v in bits(row >> (u + 1) << (u + 1))]

    @property
    def vertex_mask(self) -> int:
        return (1 << self.order) - 1

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.from_edges(self.order, list(self.edges()) + list(edges))

    def remove_edge(self, u: int, v: int) -> "Graph":
        adj = list(self._adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph._trusted(tuple(adj))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced by ``vertices``, relabelled in increasing order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            row = 0
            for u in bits(self._adj[v]):
                if u in index:
                    row |= 1 << index[u]
            adj.append(row)
        return Graph._trusted(tuple(adj))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.order)):
            raise PreconditionError("relabel expects a permutation of 0..order-1")
        adj = [0] * self.order
        for v, row in enumerate(self._adj):
            new = 0
            for u in bits(row):
                new |= 1 << perm[u]
            adj[perm[v]] = new
        return Graph._trusted(tuple(adj))

    def components(self) -> list[int]:
        """Vertex masks of connected components, ordered by lowest vertex."""
        seen = 0
        out = []
        for v in range(self.order):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self._adj[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.order <= 1 or len(self.components()) == 1


def primitive(kind: str, t: int) -> Graph:
    """``K_t`` for ``kind="clique"``, ``I_t`` for ``kind="independent"``."""
    _check_order(t)
    if kind == "clique":
        full = (1 << t) - 1
        return Graph._trusted(tuple(full & ~(1 << v) for v in range(t)))
    if kind == "independent":
        return Graph._trusted((0,) * t)
    raise PreconditionError(f"unknown primitive kind {kind!r}")


def clique(t: int) -> Graph:
    return primitive("clique", t)


def independent(t: int) -> Graph:
    return primitive("independent", t)


def union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; ``h`` is shifted after ``g``."""
    _check_order(g.order + h.order)
    shift = g.order
    return Graph._trusted(g.adjacency + tuple(a << shift for a in h.adjacency))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    _check_order(g.order + h.order)
    shift = g.order
    left_all = (1 << shift) - 1
    right_all = ((1 << h.order) - 1) << shift
    adj = tuple(a | right_all for a in g.adjacency)
    adj += tuple((a << shift) | left_all for a in h.adjacency)
    return Graph._trusted(adj)


def replicate(m: int, h: Graph) -> Graph:
    """``m`` disjoint copies of ``h``."""
    if m < 0:
        raise PreconditionError(f"replicate count must be non-negative, got {m}")
    _check_order(m * h.order)
    out = Graph._trusted(())
    for _ in range(m):
        out = union(out, h)
    return out


def path(t: int) -> Graph:
    return Graph.from_edges(t, [(i, i + 1) for i in range(t - 1)])


def cycle(t: int) -> Graph:
    if t < 3:
        raise PreconditionError(f"a cycle needs at least 3 vertices, got {t}")
    return Graph.from_edges(t, [(i, (i + 1) % t) for i in range(t)])


def _merge(g: Graph, u: int, v: int) -> Graph:
    # u and v become one vertex placed at min(u, v); later labels shift down by one
    keep, drop = min(u, v), max(u, v)
    adj = list(g.adjacency)
    merged = (adj[u] | adj[v]) & ~((1 << u) | (1 << v))
    for w in bits(adj[drop]):
        adj[w] = (adj[w] & ~(1 << drop)) | (1 << keep)
    adj[keep] = merged
    for w in bits(merged):
        adj[w] |= 1 << keep
    del adj[drop]
    low = (1 << drop) - 1
    out = tuple((a & low) | ((a >> (drop + 1)) << drop) for a in adj)
    return Graph._trusted(out)


def contract(g: Graph, u: int, v: int) -> Graph:
    """``G/uv``: merge the ends of an edge, dropping loops and parallel edges."""
    if not (0 <= u < g.order and 0 <= v < g.order) or not g.has_edge(u, v):
        raise PreconditionError(f"{u}-{v} is not an edge")
    return _merge(g, u, v)


def identify(g: Graph, u: int, v: int) -> Graph:
    """Merge two distinct non-adjacent vertices."""
    if not (0 <= u < g.order and 0 <= v < g.order) or u == v:
        raise PreconditionError(f"cannot identify {u} and {v}")
    if g.has_edge(u, v):
        raise PreconditionError(f"{u}-{v} is an edge; use contract")
    return _merge(g, u, v)


def complete_pairs(order: int) -> list[tuple[int, int]]:
    """All vertex pairs in lexicographic order."""
    return list(combinations(range(order), 2))
