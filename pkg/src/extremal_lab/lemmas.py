"""Executable lemma checkers, the stability partition and the potential function."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from functools import total_ordering
from math import comb
from typing import Iterator, Sequence

from . import graph6
from .constructions import Family, applicable_families, build_construction, derive_params
from .errors import ParameterError, PreconditionError
from .generators import random_block_tree, random_connected, random_free_graph, random_two_connected
from .graph import Graph, bits, contract
from .invariants import (
    BlockCutTree,
    Matching,
    block_cut_decompose,
    circumference,
    count_cliques,
    is_free,
    longest_cycle,
    longest_path,
    matching_number,
)

LEMMAS = ("dirac-kopylov", "binom", "near-perfect", "star", "contraction", "stability")


# -- binomial inequality -----------------------------------------------------


class BinomResult(str, enum.Enum):
    HOLDS = "holds"
    HOLDS_STRICTLY = "holds_strictly"
    FAILS = "fails"
    PRECONDITION_FAILED = "precondition_failed"


def binom_inequality_check(r: int, w: int, x: int, y: int, z: int) -> BinomResult:
    """Compare C(x,r)+C(y,r) with C(w,r)+C(z,r) when x+y = w+z and x dominates w, z and r."""
    if r < 2 or min(w, x, y, z) < 0:
        return BinomResult.PRECONDITION_FAILED
    if x + y != w + z or x < w or x < z or x < r:
        return BinomResult.PRECONDITION_FAILED
    lhs = comb(x, r) + comb(y, r)
    rhs = comb(w, r) + comb(z, r)
    if lhs < rhs:
        return BinomResult.FAILS
    if x > w and x > z:
        return BinomResult.HOLDS_STRICTLY if lhs > rhs else BinomResult.FAILS
    return BinomResult.HOLDS


# -- matchings in block trees ------------------------------------------------


def _hamiltonian_cycle(g: Graph, block: frozenset[int]) -> list[int]:
    verts = sorted(block)
    cyc = longest_cycle(g.induced(verts), target=len(verts))
    if len(cyc) != len(verts):
        raise PreconditionError(f"block {verts} is not Hamiltonian")
    return [verts[i] for i in cyc]


def _pair_along(cyc: list[int], skip: int) -> list[tuple[int, int]]:
    i = cyc.index(skip)
    rest = cyc[i + 1:] + cyc[:i]
    return [tuple(sorted(rest[j:j + 2])) for j in range(0, len(rest), 2)]


def near_perfect_matching_excluding(g: Graph, tree: BlockCutTree, v: int) -> Matching:
    """A matching covering every vertex except ``v``.

    A leaf block is peeled off together with its Hamiltonian cycle: the side
    that must avoid the shared cut vertex skips it along the cycle, the other
    side recurses with the cut vertex as the new excluded vertex.
    """
    if not 0 <= v < g.order:
        raise PreconditionError(f"vertex {v} outside 0..{g.order - 1}")
    if not tree.is_strict:
        raise PreconditionError("block-cut tree is not strict (it has a cut-edge block)")
    covered = frozenset().union(*tree.blocks) if tree.blocks else frozenset()
    if covered != frozenset(range(g.order)):
        raise PreconditionError("blocks do not cover the graph")
    cycles = {}
    for block in tree.blocks:
        if len(block) % 2 == 0:
            raise PreconditionError(f"block {sorted(block)} has even order {len(block)}")
        cycles[block] = _hamiltonian_cycle(g, block)

    edges: list[tuple[int, int]] = []
    blocks = list(tree.blocks)
    skip = v
    while len(blocks) > 1:
        counts: dict[int, int] = {}
        for b in blocks:
            for x in b:
                counts[x] = counts.get(x, 0) + 1
        cuts = {x for x, c in counts.items() if c > 1}
        leaf = next(b for b in reversed(blocks) if len(b & cuts) == 1)
        (cut,) = leaf & cuts
        blocks.remove(leaf)
        if skip in leaf and skip != cut:
            edges += _pair_along(cycles[leaf], skip)
            skip = cut
        else:
            edges += _pair_along(cycles[leaf], cut)
    edges += _pair_along(cycles[blocks[0]], skip)
    return Matching(tuple(sorted(edges)))


def block_cut_star_of(blocks: Sequence[Graph]) -> Graph:
    """Glue the blocks at one common centre, each contributing its vertex 0."""
    edges: list[tuple[int, int]] = []
    order = 1
    for i, b in enumerate(blocks):
        if b.order < 2 or not b.is_connected():
            raise PreconditionError(f"block {i} must be connected with at least two vertices")
        label = [0] + list(range(order, order + b.order - 1))
        edges += [(label[u], label[w]) for u, w in b.edges()]
        order += b.order - 1
    return Graph.from_edges(order, edges)


def blocks_of(g: Graph) -> list[Graph]:
    """Induced block subgraphs of a connected graph, in decomposition order."""
    return [g.induced(b) for b in block_cut_decompose(g).blocks]


# -- path and cycle lemmas ---------------------------------------------------


@dataclass(frozen=True)
class Outcome:
    status: str
    detail: str

    @property
    def failed(self) -> bool:
        return self.status == "fail"


@dataclass(frozen=True)
class DiracKopylovReport:
    path: tuple[int, ...]
    dirac: Outcome
    kopylov: Outcome

    @property
    def passed(self) -> bool:
        return not (self.dirac.failed or self.kopylov.failed)

    def witness(self) -> str:
        return f"path={'-'.join(map(str, self.path))};dirac={self.dirac.detail};kopylov={self.kopylov.detail}"


def _is_two_connected(g: Graph) -> bool:
    if g.order < 3 or not g.is_connected():
        return False
    tree = block_cut_decompose(g)
    return len(tree.blocks) == 1


def dirac_kopylov_check(g: Graph) -> DiracKopylovReport:
    """Longest-path length and cycle-length bounds from the ends of a longest path."""
    if g.order == 0:
        skip = Outcome("skipped", "empty graph")
        return DiracKopylovReport((), skip, skip)
    p = longest_path(g)
    u, w = p[0], p[-1]
    if g.is_connected():
        need = min(g.order, g.degree(u) + g.degree(w) + 1)
        ok = len(p) >= need
        dirac = Outcome("pass" if ok else "fail", f"{len(p)}>={need}" if ok else f"{len(p)}<{need}")
    else:
        dirac = Outcome("skipped", "not connected")
    if _is_two_connected(g):
        on_path = sum(1 << x for x in p)
        du = (g.neighbors(u) & on_path).bit_count()
        dw = (g.neighbors(w) & on_path).bit_count()
        need = min(len(p), du + dw)
        circ = circumference(g)
        ok = circ >= need
        kopylov = Outcome("pass" if ok else "fail", f"{circ}>={need}" if ok else f"{circ}<{need}")
    else:
        kopylov = Outcome("skipped", "not 2-connected")
    return DiracKopylovReport(tuple(p), dirac, kopylov)


# -- contraction -------------------------------------------------------------


@dataclass(frozen=True)
class ContractionReport:
    edges_checked: int
    violations: tuple[tuple[int, int], ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def witness(self) -> str:
        if not self.violations:
            return f"checked={self.edges_checked}"
        return "violations=" + ",".join(f"{u}-{v}" for u, v in self.violations)


def contraction_closure_check(g: Graph, k: int, s: int) -> ContractionReport:
    """Contract every edge of a free graph and re-test freeness."""
    if not is_free(g, k, s):
        raise PreconditionError(f"graph is not free for k={k}, s={s}")
    bad = tuple((u, v) for u, v in g.edges() if not is_free(contract(g, u, v), k, s))
    return ContractionReport(g.edge_count, bad)


# -- stability partition -----------------------------------------------------


@dataclass(frozen=True)
class StabilityPartition:
    X: frozenset[int]
    Y: frozenset[int]
    Z: frozenset[int]

    @property
    def t0(self) -> int:
        return len(self.Z)

    @property
    def p(self) -> int:
        return len(self.X) + 1

    def violations(self, g: Graph) -> list[str]:
        """Clauses of the partition that ``g`` breaks (empty when valid)."""
        out = []
        if (self.X | self.Y | self.Z) != frozenset(range(g.order)) or \
                len(self.X) + len(self.Y) + len(self.Z) != g.order:
            out.append("X, Y, Z do not partition the vertex set")
            return out
        xmask = sum(1 << x for x in self.X)
        zmask = sum(1 << z for z in self.Z)
        for x in self.X:
            if (xmask & ~(1 << x)) & ~g.neighbors(x):
                out.append(f"X is not a clique at vertex {x}")
                break
        for y in sorted(self.Y):
            if g.neighbors(y) != xmask:
                out.append(f"vertex {y} of Y has neighbourhood other than X")
                break
        for z in sorted(self.Z):
            if g.degree(z) < self.p:
                out.append(f"vertex {z} of Z has degree {g.degree(z)} < {self.p}")
                break
            if g.neighbors(z) & ~(xmask | zmask):
                out.append(f"vertex {z} of Z has a neighbour in Y")
                break
        return out


def _cliques_of_size(g: Graph, size: int) -> Iterator[int]:
    # lexicographic order of the sorted vertex tuples
    def grow(chosen: int, cand: int, need: int) -> Iterator[int]:
        if need == 0:
            yield chosen
            return
        for v in bits(cand):
            if (cand >> v).bit_count() < need:
                return
            yield from grow(chosen | (1 << v), cand & g.neighbors(v) & ~((2 << v) - 1), need - 1)

    yield from grow(0, g.vertex_mask, size)


def _partition_for(g: Graph, xmask: int, p: int) -> StabilityPartition | None:
    ymask = 0
    for v in range(g.order):
        if g.neighbors(v) == xmask:
            ymask |= 1 << v
    zmask = g.vertex_mask & ~xmask & ~ymask
    for z in bits(zmask):
        if g.degree(z) < p:
            return None
    return StabilityPartition(frozenset(bits(xmask)), frozenset(bits(ymask)), frozenset(bits(zmask)))


def stability_decompose(g: Graph, p: int) -> StabilityPartition | None:
    """The valid partition with the largest ``Y``, ties broken by the least ``X``.

    A non-empty ``Y`` forces ``X`` to be the common neighbourhood of ``Y``, so
    candidates are first the clique neighbourhoods of size ``p - 1`` shared by
    the most vertices; ``Y = {}`` is tried afterwards over all ``(p-1)``-cliques.
    """
    if p < 3:
        raise PreconditionError(f"stability partition needs p >= 3, got {p}")
    groups: dict[int, int] = {}
    for v in range(g.order):
        nb = g.neighbors(v)
        if nb.bit_count() == p - 1:
            groups[nb] = groups.get(nb, 0) + 1
    clique_nbhds = [m for m in groups if all(((m & ~(1 << x)) & ~g.neighbors(x)) == 0 for x in bits(m))]
    clique_nbhds.sort(key=lambda m: (-groups[m], list(bits(m))))
    for xmask in clique_nbhds:
        found = _partition_for(g, xmask, p)
        if found is not None:
            return found
    for xmask in _cliques_of_size(g, p - 1):
        if xmask in groups:
            continue
        found = _partition_for(g, xmask, p)
        if found is not None:
            return found
    return None


def _require_valid(g: Graph, partition: StabilityPartition) -> None:
    problems = partition.violations(g)
    if problems:
        raise PreconditionError("invalid partition: " + "; ".join(problems))


@total_ordering
@dataclass(frozen=True, eq=False)
class PhiPotential:
    e: int
    k3: int
    cz_plus_y: int
    cz: int | None = None

    def key(self) -> tuple[int, ...]:
        head = (self.e, self.k3, self.cz_plus_y)
        return head if self.cz is None else head + (self.cz,)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhiPotential):
            return NotImplemented
        return self.key() == other.key()

    def __lt__(self, other: "PhiPotential") -> bool:
        if len(self.key()) != len(other.key()):
            raise TypeError("cannot compare triple and quadruple potentials")
        return self.key() < other.key()

    def __hash__(self) -> int:
        return hash(self.key())


def phi_potential(g: Graph, partition: StabilityPartition, variant: str = "triple") -> PhiPotential:
    """(edges, triangles, c(Z)+|Y|) and optionally c(Z), the number of components of G[Z]."""
    if variant not in ("triple", "quadruple"):
        raise PreconditionError(f"variant must be 'triple' or 'quadruple', got {variant!r}")
    _require_valid(g, partition)
    cz = len(g.induced(partition.Z).components()) if partition.Z else 0
    return PhiPotential(g.edge_count, count_cliques(g, 3), cz + len(partition.Y),
                        cz if variant == "quadruple" else None)


def exceptional_edges(g: Graph, partition: StabilityPartition) -> list[tuple[int, int]]:
    """Edges inside ``Z`` whose ends are both adjacent to all of ``X``."""
    _require_valid(g, partition)
    xmask = sum(1 << x for x in partition.X)
    full = {z for z in partition.Z if g.neighbors(z) & xmask == xmask}
    return [(u, v) for u, v in g.edges() if u in full and v in full]


# -- line-oriented reports ---------------------------------------------------


@dataclass(frozen=True)
class LemmaRecord:
    """One check: lemma id, seed, instance graph6, pass/fail and a witness string."""

    lemma: str
    seed: int | None
    graph6: str
    passed: bool
    witness: str = field(default="-")

    def to_line(self) -> str:
        wit = self.witness.replace("\t", " ").replace("\n", " ") or "-"
        seed = "-" if self.seed is None else str(self.seed)
        return "\t".join((self.lemma, seed, self.graph6 or "-", "pass" if self.passed else "fail", wit))

    @classmethod
    def from_line(cls, line: str) -> "LemmaRecord":
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 5 or parts[3] not in ("pass", "fail"):
            raise ValueError(f"malformed lemma record: {line!r}")
        lemma, seed, g6, status, wit = parts
        return cls(lemma, None if seed == "-" else int(seed), g6, status == "pass", wit)


def _fmt_edges(edges) -> str:
    return ",".join(f"{u}-{v}" for u, v in edges) or "none"


def _check_near_perfect(g: Graph) -> tuple[bool, str]:
    tree = block_cut_decompose(g)
    for v in range(g.order):
        m = near_perfect_matching_excluding(g, tree, v)
        full = g.vertex_mask & ~(1 << v)
        if not m.is_valid_for(g) or m.covered != full:
            return False, f"v={v};matching={_fmt_edges(m.edges)}"
    return True, f"vertices={g.order};blocks={len(tree.blocks)}"


def _check_star(g: Graph) -> tuple[bool, str]:
    star = block_cut_star_of(blocks_of(g))
    nu, nu_star = matching_number(g), matching_number(star)
    return nu >= nu_star, f"nu={nu};nu_star={nu_star}"


def _check_stability(g: Graph, p: int) -> tuple[bool, str]:
    part = stability_decompose(g, p)
    if part is None:
        return False, "no partition"
    ok = not part.violations(g) and len(part.X) == p - 1
    return ok, (f"X={sorted(part.X)};Y={sorted(part.Y)};t0={part.t0}")


def check_graph(lemma: str, g: Graph, *, k: int = 5, s: int = 3, p: int | None = None,
                seed: int | None = None) -> LemmaRecord:
    """Run one graph-based lemma check and package it as a record."""
    code = graph6.encode(g)
    if lemma == "dirac-kopylov":
        rep = dirac_kopylov_check(g)
        return LemmaRecord(lemma, seed, code, rep.passed, rep.witness())
    if lemma == "contraction":
        rep = contraction_closure_check(g, k, s)
        return LemmaRecord(lemma, seed, code, rep.passed, rep.witness())
    if lemma == "near-perfect":
        ok, wit = _check_near_perfect(g)
        return LemmaRecord(lemma, seed, code, ok, wit)
    if lemma == "star":
        ok, wit = _check_star(g)
        return LemmaRecord(lemma, seed, code, ok, wit)
    if lemma == "stability":
        ok, wit = _check_stability(g, p if p is not None else derive_params(g.order, k, s).p)
        return LemmaRecord(lemma, seed, code, ok, wit)
    if lemma == "binom":
        raise PreconditionError("the binomial check takes integers, not a graph")
    raise PreconditionError(f"unknown lemma {lemma!r}; expected one of {LEMMAS}")


def stability_expected(family: Family | str, params) -> bool:
    """Whether the construction's own layout is a valid stability partition.

    It fails exactly when the odd clique ``K_{2t+1}`` (G3) or ``K_{2d+1}`` (G4)
    is so small that its vertices have degree ``2t+1 < p``.
    """
    family = Family.parse(family) if isinstance(family, str) else family
    if family is Family.STAR:
        return False
    if family is Family.G3 and params.t:
        return 2 * params.t + 1 >= params.p
    if family is Family.G4 and params.d:
        return 2 * params.d + 1 >= params.p
    return True


def _random_construction(rng: random.Random) -> tuple[Graph, int]:
    while True:
        k = rng.randint(5, 10)
        s = rng.randint(2, 6)
        params = derive_params(rng.randint(2 * s + 2, 30), k, s)
        fams = [f for f in applicable_families(params) if stability_expected(f, params)]
        if fams:
            g = build_construction(rng.choice(fams), params)
            perm = list(range(g.order))
            rng.shuffle(perm)
            return g.relabel(perm), params.p


def random_check(lemma: str, seed: int, *, k: int = 5, s: int = 3) -> LemmaRecord:
    """Check ``lemma`` on the instance determined by ``seed``."""
    if lemma == "binom":
        rng = random.Random(seed)
        r = rng.randint(2, 6)
        x = rng.randint(r, 30)
        w = rng.randint(0, x)
        z = rng.randint(x - w, x)
        y = w + z - x
        result = binom_inequality_check(r, w, x, y, z)
        ok = result is not BinomResult.FAILS
        return LemmaRecord(lemma, seed, "-", ok, f"r={r},w={w},x={x},y={y},z={z}:{result.value}")
    if lemma == "dirac-kopylov":
        g = random_two_connected(seed) if seed % 2 else random_connected(seed)
    elif lemma == "contraction":
        g = random_free_graph(seed, k, s)
    elif lemma == "near-perfect":
        g = random_block_tree(seed)
    elif lemma == "star":
        g = random_block_tree(seed, odd_only=False)
    elif lemma == "stability":
        g, p = _random_construction(random.Random(seed))
        ok, wit = _check_stability(g, p)
        return LemmaRecord(lemma, seed, graph6.encode(g), ok, wit)
    else:
        raise PreconditionError(f"unknown lemma {lemma!r}; expected one of {LEMMAS}")
    return check_graph(lemma, g, k=k, s=s, seed=seed)


def run_lemma_checks(lemma: str, trials: int, seed: int = 0, **params) -> Iterator[LemmaRecord]:
    """Records for seeds ``seed, seed+1, ..., seed+trials-1``."""
    if trials < 0:
        raise ParameterError(f"trials must be non-negative, got {trials}")
    for i in range(trials):
        yield random_check(lemma, seed + i, **params)
