"""Parameter arithmetic, the candidate extremal families and their clique counts.

Each family is described once as a small expression tree (cliques, independent
sets, unions, joins, disjoint copies).  The same tree is either materialised
into a :class:`~extremal_lab.graph.Graph` or evaluated in closed form through
the union/join identities for clique counts, so the closed form never needs
the graph itself.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from math import comb

from .errors import ParameterError
from .graph import Graph, clique, independent, join, replicate, union
from .invariants import checked


class Family(str, enum.Enum):
    G1 = "G1"
    G2 = "G2"
    G3 = "G3"
    G4 = "G4"
    G5 = "G5"
    G6 = "G6"
    STAR = "STAR"

    @classmethod
    def parse(cls, name: str) -> "Family":
        try:
            return cls(name.upper())
        except ValueError:
            raise ParameterError(f"unknown family {name!r}; expected one of "
                                 + ", ".join(f.value for f in cls)) from None


@dataclass(frozen=True)
class FamilyParams:
    """``(n, k, s, r)`` with the derived quantities the constructions use.

    ``a, b`` (odd ``k``) and ``c, d, q, t`` (even ``k``) solve
    ``s - p + 1 = a(p-2) + b = c(p-1) + d = q(p-2) + t`` with the remainders in
    range; they are ``None`` when ``s < p`` or the parity does not use them.
    """

    n: int
    k: int
    s: int
    r: int = 2
    p: int = field(init=False)
    parity: str = field(init=False)
    a: int | None = field(init=False, default=None)
    b: int | None = field(init=False, default=None)
    c: int | None = field(init=False, default=None)
    d: int | None = field(init=False, default=None)
    q: int | None = field(init=False, default=None)
    t: int | None = field(init=False, default=None)

    def __post_init__(self) -> None:
        p = (self.k - 1) // 2 + 1
        set_ = object.__setattr__
        set_(self, "p", p)
        set_(self, "parity", "odd" if self.k == 2 * p - 1 else "even")
        if self.s < p or p < 3:
            return
        rest = self.s - p + 1
        if self.parity == "odd":
            set_(self, "a", rest // (p - 2))
            set_(self, "b", rest % (p - 2))
        else:
            set_(self, "c", rest // (p - 1))
            set_(self, "d", rest % (p - 1))
            set_(self, "q", rest // (p - 2))
            set_(self, "t", rest % (p - 2))

    @property
    def star_branch(self) -> bool:
        return self.p > self.s

    def with_n(self, n: int) -> "FamilyParams":
        return FamilyParams(n, self.k, self.s, self.r)

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "s": self.s, "r": self.r}


def derive_params(n: int, k: int, s: int, r: int = 2) -> FamilyParams:
    """Validated :class:`FamilyParams`."""
    if k < 5:
        raise ParameterError(f"k must be at least 5 (so that p >= 3), got k={k}")
    if s < 1:
        raise ParameterError(f"s must be at least 1, got s={s}")
    if n < 1:
        raise ParameterError(f"n must be at least 1, got n={n}")
    if r < 0:
        raise ParameterError(f"r must be non-negative, got r={r}")
    return FamilyParams(n, k, s, r)


# -- expression trees --------------------------------------------------------


class _Node:
    order: int

    def build(self) -> Graph:
        raise NotImplementedError

    def cliques(self, top: int) -> list[int]:
        """``[N(K_0), ..., N(K_top)]``."""
        raise NotImplementedError


@dataclass
class _K(_Node):
    size: int

    @property
    def order(self) -> int:
        return self.size

    def build(self) -> Graph:
        return clique(self.size)

    def cliques(self, top: int) -> list[int]:
        return [checked(comb(self.size, i)) for i in range(top + 1)]


@dataclass
class _I(_Node):
    size: int

    @property
    def order(self) -> int:
        return self.size

    def build(self) -> Graph:
        return independent(self.size)

    def cliques(self, top: int) -> list[int]:
        return ([1, self.size] + [0] * top)[: top + 1]


@dataclass
class _Union(_Node):
    parts: tuple[_Node, ...]

    @property
    def order(self) -> int:
        return sum(p.order for p in self.parts)

    def build(self) -> Graph:
        out = independent(0)
        for part in self.parts:
            out = union(out, part.build())
        return out

    def cliques(self, top: int) -> list[int]:
        out = [1] + [0] * top
        for part in self.parts:
            vec = part.cliques(top)
            for i in range(1, top + 1):
                out[i] = checked(out[i] + vec[i])
        return out


@dataclass
class _Join(_Node):
    left: _Node
    right: _Node

    @property
    def order(self) -> int:
        return self.left.order + self.right.order

    def build(self) -> Graph:
        return join(self.left.build(), self.right.build())

    def cliques(self, top: int) -> list[int]:
        lv, rv = self.left.cliques(top), self.right.cliques(top)
        return [checked(sum(lv[j] * rv[i - j] for j in range(i + 1))) for i in range(top + 1)]


@dataclass
class _Copies(_Node):
    count: int
    part: _Node

    @property
    def order(self) -> int:
        return self.count * self.part.order

    def build(self) -> Graph:
        return replicate(self.count, self.part.build())

    def cliques(self, top: int) -> list[int]:
        vec = self.part.cliques(top)
        return [1] + [checked(self.count * x) for x in vec[1:]]


# -- families ----------------------------------------------------------------


def _require(cond: bool, family: Family, message: str) -> None:
    if not cond:
        raise ParameterError(f"{family.value} not applicable: {message}")


def _layout(family: Family, P: FamilyParams) -> tuple[_Node, int]:
    """Expression tree and residual independent-set size (may be negative)."""
    p, n = P.p, P.n
    if family is Family.STAR:
        _require(P.star_branch, family, f"needs p > s (p={p}, s={P.s})")
        return _Join(_K(P.s), _I(n - P.s)), n - P.s

    _require(P.s >= p, family, f"needs s >= p (p={p}, s={P.s})")
    apex = _K(1)
    if family in (Family.G1, Family.G2):
        _require(P.parity == "odd", family, f"needs odd k (k={P.k})")
        a, b = P.a, P.b
        if family is Family.G1:
            free = n - p + 1 - a * (2 * p - 3)
            body = _Union((_Join(_K(p - 2), _I(free)), _Copies(a, _K(2 * p - 3))))
        else:
            lo = -(-(p - 1) // 2)
            _require(lo <= b <= p - 3, family, f"needs ceil((p-1)/2) <= b <= p-3 (b={b}, p={p})")
            free = n - p - a * (2 * p - 3) - 2 * b
            body = _Union((_Join(_K(p - 2), _I(free)), _Copies(a, _K(2 * p - 3)), _K(2 * b + 1)))
        return _Join(apex, body), free

    _require(P.parity == "even", family, f"needs even k (k={P.k})")
    c, d, q, t = P.c, P.d, P.q, P.t
    if family is Family.G3:
        if t == 0:
            free = n - p + 1 - q * (2 * p - 3)
            body = _Union((_Join(_K(p - 2), _I(free)), _Copies(q, _K(2 * p - 3))))
        else:
            free = n - p - q * (2 * p - 3) - 2 * t
            body = _Union((_Join(_K(p - 2), _I(free)), _Copies(q, _K(2 * p - 3)), _K(2 * t + 1)))
    elif family is Family.G4:
        if d == 0:
            free = n - p + 1 - c * (2 * p - 2)
            body = _Union((_Join(_K(p - 2), _I(free)), _Copies(c, _K(2 * p - 2))))
        else:
            free = n - p - c * (2 * p - 2) - 2 * d
            body = _Union((_Join(_K(p - 2), _I(free)), _Copies(c, _K(2 * p - 2)), _K(2 * d + 1)))
    elif family is Family.G5:
        _require(1 <= d <= p - 3, family, f"needs 1 <= d <= p-3 (d={d}, p={p})")
        _require(c >= p - d - 2, family, f"needs c >= p-d-2 (c={c}, d={d}, p={p})")
        free = n - (c + 1) * (2 * p - 2) - d
        body = _Union((_Join(_K(p - 2), _I(free)),
                       _Copies(c - p + d + 2, _K(2 * p - 2)),
                       _Copies(p - d - 1, _K(2 * p - 3))))
    else:
        _require(1 <= d <= p - 2, family, f"needs 1 <= d <= p-2 (d={d}, p={p})")
        free = n - p - 1 - c * (2 * p - 2)
        body = _Union((_Join(_K(p - 2), _Union((_K(2), _I(free)))), _Copies(c, _K(2 * p - 2))))
    return _Join(apex, body), free


def minimum_order(family: Family | str, params: FamilyParams) -> int:
    """Smallest ``n`` for which every independent set in the layout is non-negative."""
    family = Family.parse(family) if isinstance(family, str) else family
    _, free = _layout(family, params)
    return max(params.n - free, 1)


def _checked_layout(family: Family, params: FamilyParams) -> _Node:
    tree, free = _layout(family, params)
    if free < 0:
        raise ParameterError(
            f"{family.value} needs n >= {params.n - free} (residual independent set "
            f"would have {free} vertices at n={params.n})")
    return tree


def build_construction(family: Family | str, params: FamilyParams) -> Graph:
    """Materialise a family member on exactly ``params.n`` vertices."""
    family = Family.parse(family) if isinstance(family, str) else family
    g = _checked_layout(family, params).build()
    assert g.order == params.n
    return g


def formula_clique_count(family: Family | str, params: FamilyParams, r: int | None = None) -> int:
    """``N(K_r, family)`` from binomial sums, without building the graph."""
    family = Family.parse(family) if isinstance(family, str) else family
    r = params.r if r is None else r
    if r < 0:
        raise ParameterError(f"r must be non-negative, got {r}")
    return _checked_layout(family, params).cliques(r)[r]


def construction_id(family: Family | str, params: FamilyParams) -> str:
    family = Family.parse(family) if isinstance(family, str) else family
    return f"{family.value}[n={params.n},k={params.k},s={params.s}]"


_ID = re.compile(r"^\s*(\w+)\[n=(\d+),k=(\d+),s=(\d+)\]\s*$")


def parse_construction_id(text: str, r: int = 2) -> tuple[Family, FamilyParams]:
    m = _ID.match(text)
    if not m:
        raise ParameterError(f"not a construction id: {text!r}")
    family = Family.parse(m.group(1))
    n, k, s = (int(x) for x in m.group(2, 3, 4))
    return family, derive_params(n, k, s, r)


# -- theorem values ----------------------------------------------------------


@dataclass(frozen=True)
class TheoremEvaluation:
    params: FamilyParams
    branch: str
    families: tuple[Family, ...]
    values: dict[Family, int]
    excluded: dict[Family, str]
    value: int

    @property
    def below_threshold(self) -> bool:
        """Some named family could not be built at this ``n``."""
        return bool(self.excluded)


def theorem_families(params: FamilyParams) -> tuple[str, tuple[Family, ...]]:
    """Branch label and the families the matching theorem names for it."""
    p = params.p
    if params.star_branch:
        return "p>s", (Family.STAR,)
    if params.parity == "odd":
        lo = -(-(p - 1) // 2)
        if params.b < lo:
            return "odd: b < ceil((p-1)/2)", (Family.G1,)
        return "odd: b >= ceil((p-1)/2)", (Family.G1, Family.G2)
    if params.d == 0:
        return "even: d = 0", (Family.G3, Family.G4)
    if params.d <= p - 3:
        return "even: 1 <= d <= p-3", (Family.G3, Family.G4, Family.G5, Family.G6)
    return "even: d = p-2", (Family.G3, Family.G4, Family.G6)


def theorem_evaluation(params: FamilyParams) -> TheoremEvaluation:
    """Evaluate every family named for the parameter branch; families that cannot
    be built (too few vertices, or ``c < p-d-2`` for G5) are listed in ``excluded``."""
    if params.k < 5:
        raise ParameterError(f"k must be at least 5, got k={params.k}")
    branch, families = theorem_families(params)
    values: dict[Family, int] = {}
    excluded: dict[Family, str] = {}
    for fam in families:
        try:
            values[fam] = formula_clique_count(fam, params)
        except ParameterError as exc:
            excluded[fam] = str(exc)
    return TheoremEvaluation(params, branch, families, values, excluded,
                             max(values.values(), default=0))


def theorem_value(params: FamilyParams) -> int:
    """Largest clique count among the named families buildable at ``params.n``.

    Always a lower bound on the extremal number; the theorems assert equality
    only for sufficiently large ``n``.
    """
    return theorem_evaluation(params).value


def matching_turan_value(n: int, s: int, r: int) -> int:
    """Maximum number of ``K_r`` in an ``n``-vertex graph with matching number ``<= s``."""
    if r < 2:
        raise ParameterError(f"r must be at least 2, got {r}")
    if n < 2 * s + 1:
        raise ParameterError(f"needs n >= 2s+1 (n={n}, s={s})")
    return checked(max(comb(2 * s + 1, r), comb(s, r) + (n - s) * comb(s, r - 1)))


def applicable_families(params: FamilyParams) -> list[Family]:
    """Families that can be built for these parameters at ``params.n``."""
    out = []
    for fam in Family:
        try:
            _checked_layout(fam, params)
        except ParameterError:
            continue
        out.append(fam)
    return out
