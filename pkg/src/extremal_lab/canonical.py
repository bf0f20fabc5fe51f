"""Canonical codes by colour refinement plus individualisation.

The search below the refined partition is exhaustive, except that vertices of
a cell which are twins of one another are interchangeable and only one of each
twin class is individualised.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import CapacityError
from .graph import Graph

DEFAULT_CANONICAL_LIMIT = 12


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    changed = True
    while changed:
        changed = False
        for splitter in list(cells):
            smask = 0
            for v in splitter:
                smask |= 1 << v
            new_cells = []
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
                if len(groups) > 1:
                    changed = True
                    new_cells.extend(groups[c] for c in sorted(groups))
                else:
                    new_cells.append(cell)
            cells = new_cells
            if changed:
                break
    return cells


def _leaf_code(adj: tuple[int, ...], order: list[int], colors: Sequence[int]) -> bytes:
    n = len(order)
    out = bytearray([n])
    if colors:
        out.extend(colors[v] for v in order)
    acc = nbits = 0
    for j in range(1, n):
        row = adj[order[j]]
        for i in range(j):
            acc = acc << 1 | (row >> order[i] & 1)
            nbits += 1
            if nbits == 8:
                out.append(acc)
                acc = nbits = 0
    if nbits:
        out.append(acc << (8 - nbits))
    return bytes(out)


def _twins(adj: tuple[int, ...], u: int, v: int) -> bool:
    mask = ~((1 << u) | (1 << v))
    return adj[u] & mask == adj[v] & mask


@lru_cache(maxsize=1 << 16)
def _canonical(adj: tuple[int, ...], colors: tuple[int, ...]) -> bytes:
    n = len(adj)
    palette = sorted(set(colors)) if colors else [0]
    start = [[v for v in range(n) if (colors[v] if colors else 0) == c] for c in palette]
    best = b""

    def search(cells: list[list[int]]) -> None:
        nonlocal best
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            code = _leaf_code(adj, [c[0] for c in cells], colors)
            if code > best:
                best = code
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if any(_twins(adj, u, v) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search([c for c in start if c])
    return best


def canonical_code(g: Graph, colors: Sequence[int] | None = None,
                   limit: int = DEFAULT_CANONICAL_LIMIT) -> bytes:
    """Byte string equal for two (vertex-coloured) graphs iff they are isomorphic.

    ``colors`` optionally assigns a small non-negative int to every vertex;
    isomorphisms must then preserve colours.
    """
    if g.order > limit:
        raise CapacityError(f"canonical codes are limited to {limit} vertices, got {g.order}")
    cols = tuple(int(c) for c in colors) if colors is not None else ()
    if cols and len(cols) != g.order:
        raise ValueError("colors must give one value per vertex")
    return _canonical(g.adjacency, cols)
