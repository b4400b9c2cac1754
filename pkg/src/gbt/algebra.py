"""The Brauer quiver of a tree and its generalized Brauer tree algebra.

Paths are kept in normal form ``(start node, side vertex, length)``.  All
structure constants are 0 or 1, so multiplication of basis paths returns a
basis index or None.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .field import RATIONAL, Field, rank
from .tree import GBTree, RootedTree


class Arrow(NamedTuple):
    vertex: str
    t: int
    source: str
    target: str

    @property
    def name(self) -> str:
        return f"gamma[{self.vertex},{self.t}]"


class NormalPath(NamedTuple):
    start: str
    vertex: str | None  # None for the stationary path
    length: int


@dataclass
class BrauerQuiver:
    nodes: list[str]
    arrows: list[Arrow]
    orders: dict[str, tuple[str, ...]]
    mult: dict[str, int]
    ends: dict[str, tuple[str, str]]

    def deg(self, v: str) -> int:
        return len(self.orders[v])

    def full(self, v: str) -> int:
        """Length of the m-th power of the cycle around ``v``."""
        return self.mult[v] * self.deg(v)

    def pos(self, v: str, n: str) -> int:
        return self.orders[v].index(n) + 1

    def at(self, v: str, j: int) -> str:
        cyc = self.orders[v]
        return cyc[(j - 1) % len(cyc)]

    def arrow(self, v: str, t: int) -> Arrow:
        t = (t - 1) % self.deg(v) + 1
        return self.arrows[self._arrow_index[(v, t)]]

    def __post_init__(self):
        self._arrow_index = {(a.vertex, a.t): k for k, a in enumerate(self.arrows)}
        self.incoming = {n: [a for a in self.arrows if a.target == n] for n in self.nodes}
        self.outgoing = {n: [a for a in self.arrows if a.source == n] for n in self.nodes}


def build_quiver(t: RootedTree | GBTree) -> BrauerQuiver:
    """Arrows gamma[v,t] run from rho_v^(t-1) to rho_v^t, cyclically.

    A rooted tree contributes its normalized orders, so the parent edge is
    last around every non-root vertex.
    """
    if isinstance(t, RootedTree):
        orders, tree = t.order, t.tree
    else:
        orders, tree = tree_orders(t), t
    arrows = []
    for v in tree.vertices:
        cyc = orders[v]
        for k in range(1, len(cyc) + 1):
            arrows.append(Arrow(v, k, cyc[(k - 2) % len(cyc)], cyc[k - 1]))
    return BrauerQuiver(list(tree.edges), arrows, dict(orders), dict(tree.mult), dict(tree.edges))


def tree_orders(t: GBTree) -> dict[str, tuple[str, ...]]:
    return {v: tuple(t.orders.get(v, ())) for v in t.vertices}


class PathAlgebra:
    """Basis of normal paths and their multiplication table."""

    def __init__(self, quiver: BrauerQuiver, field: Field = RATIONAL):
        self.quiver = q = quiver
        self.field = field
        self.basis: list[NormalPath] = []
        for n in q.nodes:
            self.basis.append(NormalPath(n, None, 0))
            for v in q.ends[n]:
                self.basis.extend(NormalPath(n, v, k) for k in range(1, q.full(v)))
            self.basis.append(self.socle_path(n))
        self.index = {p: i for i, p in enumerate(self.basis)}
        self._table: dict[tuple[int, int], int | None] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def socle_path(self, n: str) -> NormalPath:
        v = min(self.quiver.ends[n])
        return NormalPath(n, v, self.quiver.full(v))

    def is_socle(self, p: NormalPath) -> bool:
        return p.vertex is not None and p.length == self.quiver.full(p.vertex)

    def end(self, p: NormalPath) -> str:
        if p.vertex is None:
            return p.start
        q = self.quiver
        return q.at(p.vertex, q.pos(p.vertex, p.start) + p.length)

    def normal(self, n: str, v: str | None, length: int) -> int | None:
        """Basis index of the path of ``length`` around ``v`` starting at ``n``."""
        if length == 0 or v is None:
            return self.index[NormalPath(n, None, 0)]
        full = self.quiver.full(v)
        if length > full:
            return None
        if length == full:
            return self.index[self.socle_path(n)]
        return self.index[NormalPath(n, v, length)]

    def gamma(self, v: str, j: int, length: int = 1) -> int | None:
        """The path [gamma_v^j : length], as a basis index (None when zero)."""
        q = self.quiver
        return self.normal(q.at(v, j - 1), v, length)

    def stationary(self, n: str) -> int:
        return self.index[NormalPath(n, None, 0)]

    def arrow_path(self, a: Arrow) -> int | None:
        return self.normal(a.source, a.vertex, 1)

    def mul_basis(self, i: int, j: int) -> int | None:
        key = (i, j)
        if key not in self._table:
            self._table[key] = self._mul(self.basis[i], self.basis[j])
        return self._table[key]

    def _mul(self, x: NormalPath, y: NormalPath) -> int | None:
        if self.end(x) != y.start:
            return None
        if x.length == 0:
            return self.index[y]
        if y.length == 0:
            return self.index[x]
        if self.is_socle(x) or self.is_socle(y) or x.vertex != y.vertex:
            return None
        return self.normal(x.start, x.vertex, x.length + y.length)

    def multiply(self, a: dict, b: dict) -> dict:
        """Product of elements given as {basis index: coefficient}."""
        out: dict = {}
        for i, x in a.items():
            for j, y in b.items():
                k = self.mul_basis(i, j)
                if k is not None:
                    out[k] = out.get(k, 0) + x * y
        return {k: v for k, v in out.items() if v != 0}

    def paths_between(self, j: str, i: str) -> list[int]:
        """Basis of e_j A e_i: paths starting at ``j`` and ending at ``i``."""
        return [k for k, p in enumerate(self.basis) if p.start == j and self.end(p) == i]

    def paths_from(self, n: str) -> list[int]:
        return [k for k, p in enumerate(self.basis) if p.start == n]

    def path_name(self, k: int) -> str:
        p = self.basis[k]
        if p.vertex is None:
            return f"e[{p.start}]"
        j = self.quiver.pos(p.vertex, p.start) + 1
        j = (j - 1) % self.quiver.deg(p.vertex) + 1
        return f"[gamma[{p.vertex},{j}]:{p.length}]"


def build_algebra(q: BrauerQuiver, field: Field = RATIONAL) -> PathAlgebra:
    return PathAlgebra(q, field)


def cartan_matrix(A: PathAlgebra) -> list[list[int]]:
    """Entry (i, j) is dim Hom(P_i, P_j) = dim e_j A e_i, in node order."""
    nodes = A.quiver.nodes
    return [[len(A.paths_between(j, i)) for j in nodes] for i in nodes]


def dim_hom_formula(t: RootedTree | GBTree, i: str, j: str) -> int:
    tree = t.tree if isinstance(t, RootedTree) else t
    a, b = set(tree.edges[i]), set(tree.edges[j])
    return sum(tree.mult[v] for v in a & b)


def symmetric_form(A: PathAlgebra) -> list[list[int]]:
    """Gram matrix of <a, b> = total socle coefficient of ab on basis paths."""
    socles = {A.index[A.socle_path(n)] for n in A.quiver.nodes}
    return [[1 if A.mul_basis(i, j) in socles else 0 for j in range(A.dim)] for i in range(A.dim)]


def is_symmetric_algebra(A: PathAlgebra) -> bool:
    g = symmetric_form(A)
    sym = all(g[i][j] == g[j][i] for i in range(A.dim) for j in range(i))
    return sym and rank(A.field.matrix(g)) == A.dim
