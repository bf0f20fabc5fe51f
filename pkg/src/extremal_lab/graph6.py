"""graph6 text codec (McKay's 6-bit format, header optional on input, never emitted)."""

from __future__ import annotations

from typing import Iterable

from .errors import CapacityError, Graph6ParseError
from .graph import MAX_ORDER, Graph

HEADER = ">>graph6<<"


def _size_bytes(n: int) -> list[int]:
    if n <= 62:
        return [n + 63]
    return [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]


def encode(g: Graph) -> str:
    """Header-free graph6 text for ``g``."""
    n = g.order
    out = _size_bytes(n)
    adj = g.adjacency
    acc = nbits = 0
    for j in range(1, n):
        for i in range(j):
            acc = acc << 1 | (adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out).decode("ascii")


def decode(text: str) -> Graph:
    """Parse one graph6 line (surrounding whitespace is ignored)."""
    base = 0
    stripped = text.strip()
    if stripped.startswith(HEADER):
        base = text.index(HEADER) + len(HEADER)
        stripped = stripped[len(HEADER):]
    else:
        base = len(text) - len(text.lstrip())
    if not stripped:
        raise Graph6ParseError("empty graph6 string", base)
    data = stripped.encode("ascii", errors="replace")
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise Graph6ParseError(f"byte {c!r} outside the graph6 range 63..126", base + i)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        raise CapacityError(f"graph6 orders above {MAX_ORDER} are not supported")
    else:
        if len(data) < 4:
            raise Graph6ParseError("truncated order field", base + len(data))
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
        if n > MAX_ORDER:
            raise CapacityError(f"graph6 order {n} exceeds {MAX_ORDER}")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - pos != need:
        raise Graph6ParseError(
            f"expected {need} adjacency bytes for order {n}, found {len(data) - pos}",
            base + min(len(data), pos + need))
    adj = [0] * n
    bit = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[pos + bit // 6] - 63
            if byte >> (5 - bit % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit += 1
    if bit % 6:
        tail = (data[pos + bit // 6] - 63) & ((1 << (6 - bit % 6)) - 1)
        if tail:
            raise Graph6ParseError("non-zero padding bits", base + pos + bit // 6)
    return Graph(adj)


def read_stream(text: str) -> list[Graph]:
    """Decode newline-separated graph6 lines, skipping blank ones."""
    graphs = []
    offset = 0
    for line in text.splitlines(keepends=True):
        if line.strip():
            try:
                graphs.append(decode(line))
            except Graph6ParseError as exc:
                raise Graph6ParseError(str(exc).rsplit(" (at byte", 1)[0], offset + exc.offset) from None
        offset += len(line.encode())
    return graphs


def write_stream(graphs: Iterable[Graph]) -> str:
    return "".join(encode(g) + "\n" for g in graphs)
