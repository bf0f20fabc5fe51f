"""Seeded random graph generators for the property checks.

Every generator is a pure function of its seed and bounds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, PreconditionError
from .graph import MAX_ORDER, Graph
from .invariants import BlockCutTree, block_cut_decompose, is_free

KINDS = ("free_graph", "block_tree", "two_connected", "connected")


@dataclass(frozen=True)
class RandomInstance:
    kind: str
    seed: int
    graph: Graph
    tree: BlockCutTree | None = None
    k: int | None = None
    s: int | None = None


def _shuffled(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.order))
    rng.shuffle(perm)
    return g.relabel(perm)


def _order(rng: random.Random, n: int | None, lo: int, hi: int, floor: int) -> int:
    if n is None:
        if lo > hi:
            raise PreconditionError(f"empty size range {lo}..{hi}")
        n = rng.randint(lo, hi)
    if n < floor:
        raise PreconditionError(f"needs at least {floor} vertices, got {n}")
    if n > MAX_ORDER:
        raise CapacityError(f"{n} vertices exceed the {MAX_ORDER}-vertex capacity")
    return n


def random_free_graph(seed: int, k: int, s: int, n: int | None = None,
                      n_range: tuple[int, int] = (4, 12)) -> Graph:
    """A graph with circumference < k and matching number <= s.

    Candidate edges arrive in random order and each is kept with a random
    probability; an edge whose addition breaks freeness is rejected.
    """
    rng = random.Random(seed)
    n = _order(rng, n, *n_range, floor=1)
    keep_prob = rng.uniform(0.3, 1.0)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    g = Graph.from_edges(n, [])
    for u, v in pairs:
        if rng.random() >= keep_prob:
            continue
        trial = g.add_edges([(u, v)])
        if is_free(trial, k, s):
            g = trial
    return g


def random_block_tree(seed: int, max_blocks: int = 6, sizes: tuple[int, int] = (3, 9),
                      odd_only: bool = True) -> Graph:
    """Blocks (cliques or cycles) glued tree-like at single vertices."""
    rng = random.Random(seed)
    lo, hi = sizes
    if lo < 3:
        raise PreconditionError("blocks must have at least 3 vertices")
    choices = [t for t in range(lo, hi + 1) if t % 2 == 1 or not odd_only]
    if not choices:
        raise PreconditionError(f"no admissible block size in {lo}..{hi}")
    if 1 + max_blocks * (hi - 1) > MAX_ORDER:
        raise CapacityError("block-tree bounds could exceed the vertex capacity")
    count = rng.randint(1, max_blocks)
    edges: list[tuple[int, int]] = []
    order = 0
    for i in range(count):
        size = rng.choice(choices)
        if i == 0:
            verts = list(range(size))
            order = size
        else:
            verts = [rng.randrange(order)] + list(range(order, order + size - 1))
            order += size - 1
        if rng.random() < 0.5:
            edges.extend(combinations(verts, 2))
        else:
            rng.shuffle(verts)
            edges.extend((verts[j], verts[(j + 1) % size]) for j in range(size))
    return _shuffled(Graph.from_edges(order, edges), rng)


def random_two_connected(seed: int, n: int | None = None,
                         n_range: tuple[int, int] = (3, 12), chord_prob: float | None = None) -> Graph:
    """Ear decomposition from a random cycle, then random chords."""
    rng = random.Random(seed)
    n = _order(rng, n, *n_range, floor=3)
    first = rng.randint(3, n)
    edges = {(i, (i + 1) % first) for i in range(first)}
    order = first
    while order < n:
        length = rng.randint(1, n - order)
        a, b = rng.sample(range(order), 2)
        chain = [a] + list(range(order, order + length)) + [b]
        edges.update(zip(chain, chain[1:]))
        order += length
    prob = rng.uniform(0.0, 0.5) if chord_prob is None else chord_prob
    for u, v in combinations(range(n), 2):
        if rng.random() < prob:
            edges.add((u, v))
    return _shuffled(Graph.from_edges(n, edges), rng)


def random_connected(seed: int, n: int | None = None,
                     n_range: tuple[int, int] = (2, 12), extra_prob: float | None = None) -> Graph:
    """Random recursive tree plus random extra edges."""
    rng = random.Random(seed)
    n = _order(rng, n, *n_range, floor=1)
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    prob = rng.uniform(0.0, 0.4) if extra_prob is None else extra_prob
    for u, v in combinations(range(n), 2):
        if rng.random() < prob:
            edges.add((u, v))
    return _shuffled(Graph.from_edges(n, edges), rng)


def random_instances(kind: str, seed: int, **bounds) -> RandomInstance:
    """Dispatch on ``kind``; ``bounds`` are forwarded to the specific generator."""
    if kind == "free_graph":
        k, s = bounds.pop("k"), bounds.pop("s")
        return RandomInstance(kind, seed, random_free_graph(seed, k, s, **bounds), k=k, s=s)
    if kind == "block_tree":
        g = random_block_tree(seed, **bounds)
        return RandomInstance(kind, seed, g, block_cut_decompose(g))
    if kind == "two_connected":
        return RandomInstance(kind, seed, random_two_connected(seed, **bounds))
    if kind == "connected":
        return RandomInstance(kind, seed, random_connected(seed, **bounds))
    raise PreconditionError(f"unknown instance kind {kind!r}; expected one of {KINDS}")
