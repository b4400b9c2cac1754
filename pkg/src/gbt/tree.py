"""Generalized Brauer trees: parsing, validation, rooting and traversals."""
from __future__ import annotations

import hashlib
import random
from collections import deque
from dataclasses import dataclass, field

ROOT = 0  # the edge-side image of the root vertex


class TreeError(ValueError):
    """Malformed or invalid tree input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class GBTree:
    """A tree with vertex multiplicities and a cyclic order of edges at every vertex.

    ``edges`` maps labels to their two endpoints and keeps declaration order,
    which is also the order used to break ties (root rotation, node order).
    """

    vertices: list[str]
    edges: dict[str, tuple[str, str]]
    mult: dict[str, int]
    orders: dict[str, tuple[str, ...]]
    root: str | None = None

    def incident(self, v: str) -> list[str]:
        return [n for n, ends in self.edges.items() if v in ends]

    def other_end(self, n: str, v: str) -> str:
        a, b = self.edges[n]
        return b if a == v else a

    def with_root(self, root: str) -> GBTree:
        return GBTree(list(self.vertices), dict(self.edges), dict(self.mult), dict(self.orders), root)

    def to_text(self) -> str:
        lines = [f"vertex {v} {self.mult[v]}" for v in self.vertices]
        lines += [f"edge {n} {a} {b}" for n, (a, b) in self.edges.items()]
        lines += [f"order {v}: {' '.join(self.orders[v])}" for v in self.vertices if v in self.orders]
        if self.root is not None:
            lines.append(f"root {self.root}")
        return "\n".join(lines) + "\n"

    def fingerprint(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()[:16]


def parse_tree(text: str) -> GBTree:
    """Parse the line-oriented tree format and validate the result."""
    vertices: list[str] = []
    mult: dict[str, int] = {}
    edges: dict[str, tuple[str, str]] = {}
    orders: dict[str, tuple[str, ...]] = {}
    order_lines: dict[str, int] = {}
    root = None
    root_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *rest = line.split()
        if word == "vertex":
            if len(rest) != 2:
                raise TreeError("expected 'vertex <id> <multiplicity>'", lineno)
            v, m = rest
            if v in mult:
                raise TreeError(f"duplicate vertex {v}", lineno)
            try:
                m = int(m)
            except ValueError:
                raise TreeError(f"multiplicity {m!r} is not an integer", lineno) from None
            if m < 1:
                raise TreeError(f"multiplicity of {v} must be positive", lineno)
            vertices.append(v)
            mult[v] = m
        elif word == "edge":
            if len(rest) != 3:
                raise TreeError("expected 'edge <label> <id> <id>'", lineno)
            n, a, b = rest
            if n in edges:
                raise TreeError(f"duplicate edge label {n}", lineno)
            for v in (a, b):
                if v not in mult:
                    raise TreeError(f"unknown vertex {v} in edge {n}", lineno)
            edges[n] = (a, b)
        elif word == "order":
            if not rest or not rest[0].endswith(":"):
                raise TreeError("expected 'order <id>: <label> ...'", lineno)
            v = rest[0][:-1]
            if v not in mult:
                raise TreeError(f"unknown vertex {v} in order line", lineno)
            if v in orders:
                raise TreeError(f"duplicate order for {v}", lineno)
            for n in rest[1:]:
                if n not in edges:
                    raise TreeError(f"unknown edge {n} in order of {v}", lineno)
            orders[v] = tuple(rest[1:])
            order_lines[v] = lineno
        elif word == "root":
            if len(rest) != 1:
                raise TreeError("expected 'root <id>'", lineno)
            root, root_line = rest[0], lineno
        else:
            raise TreeError(f"unknown keyword {word!r}", lineno)
    if root is not None and root not in mult:
        raise TreeError(f"unknown root vertex {root}", root_line)
    for v in vertices:
        inc = [n for n, ends in edges.items() if v in ends]
        if v not in orders and len(inc) == 1:
            orders[v] = (inc[0],)
    tree = GBTree(vertices, edges, mult, orders, root)
    problems = validate(tree)
    if problems:
        v = next((v for v in vertices if v in problems[0].split()), None)
        raise TreeError("; ".join(problems), order_lines.get(v))
    return tree


def validate(t: GBTree) -> list[str]:
    """All violated tree invariants, as messages; empty when ``t`` is valid."""
    problems = []
    if not t.vertices:
        return ["no vertices"]
    for n, (a, b) in t.edges.items():
        if a == b:
            problems.append(f"edge {n} is a loop")
    pairs = [frozenset(e) for e in t.edges.values()]
    if len(set(pairs)) != len(pairs):
        problems.append("multi-edge")
    # connectivity, then acyclicity (a connected graph is a tree iff |E| = |V| - 1)
    adj = {v: [] for v in t.vertices}
    for a, b in t.edges.values():
        adj[a].append(b)
        adj[b].append(a)
    seen = {t.vertices[0]}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != len(t.vertices):
        problems.append("not connected")
    if len(t.edges) >= len(t.vertices) and not any("loop" in p for p in problems):
        problems.append("has a cycle")
    for v in t.vertices:
        if t.mult.get(v, 0) < 1:
            problems.append(f"multiplicity at {v} is not positive")
        inc = set(t.incident(v))
        order = t.orders.get(v)
        if order is None:
            if inc:
                problems.append(f"missing cyclic order at {v}")
            continue
        if len(order) != len(set(order)) or set(order) != inc:
            problems.append(f"cyclic order at {v} is not a permutation of its incident edges")
    if t.root is not None and t.root not in t.mult:
        problems.append(f"unknown root {t.root}")
    return problems


class RootedTree:
    """A generalized Brauer tree with a root and its depth/parent/child/sibling maps.

    Cyclic orders are normalized: at a non-root vertex the parent edge comes
    last; at the root the earliest declared incident edge comes first.  The
    edge-level maps identify an edge ``n`` with its endpoint away from the root.
    """

    def __init__(self, tree: GBTree, root: str | None = None):
        root = tree.root if root is None else root
        if root is None:
            raise TreeError("no root given")
        if root not in tree.mult:
            raise TreeError(f"unknown root vertex {root}")
        problems = validate(tree)
        if problems:
            raise TreeError("; ".join(problems))
        self.tree = tree.with_root(root)
        self.root = root
        self.vdepth: dict[str, int] = {root: 0}
        self.vparent: dict[str, str] = {}
        self.edge_vertex: dict[str, str] = {}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for n in tree.incident(v):
                w = tree.other_end(n, v)
                if w not in self.vdepth:
                    self.vdepth[w] = self.vdepth[v] + 1
                    self.vparent[w] = v
                    self.edge_vertex[n] = w
                    queue.append(w)
        self.vertex_edge = {w: n for n, w in self.edge_vertex.items()}
        self.order: dict[str, tuple[str, ...]] = {}
        rank = {n: i for i, n in enumerate(tree.edges)}
        for v in tree.vertices:
            cyc = list(tree.orders.get(v, ()))
            if not cyc:
                self.order[v] = ()
                continue
            if v == root:
                k = min(range(len(cyc)), key=lambda i: rank[cyc[i]])
            else:
                k = (cyc.index(self.vertex_edge[v]) + 1) % len(cyc)
            self.order[v] = tuple(cyc[k:] + cyc[:k])
        self.height = max(self.vdepth.values())
        self.edges = list(tree.edges)

    # -- vertex level -------------------------------------------------------
    def vdeg(self, v: str) -> int:
        return len(self.order[v])

    def vchild(self, v: str, j: int) -> str:
        """The edge rho_v^j, with j reduced into 1..deg(v)."""
        cyc = self.order[v]
        return cyc[(j - 1) % len(cyc)]

    def vpos(self, v: str, n: str) -> int:
        """Position (1-based) of edge ``n`` in the normalized order at ``v``."""
        return self.order[v].index(n) + 1

    def vsib(self, v: str) -> int:
        return self.vpos(self.vparent[v], self.vertex_edge[v])

    # -- edge level ---------------------------------------------------------
    def vertex_of(self, n) -> str:
        return self.root if n == ROOT else self.edge_vertex[n]

    def depth(self, n) -> int:
        return self.vdepth[self.vertex_of(n)]

    def deg(self, n) -> int:
        return self.vdeg(self.vertex_of(n))

    def mult(self, n) -> int:
        return self.tree.mult[self.vertex_of(n)]

    def parent(self, n):
        """Edge image of the parent vertex: an edge label, or ROOT."""
        p = self.vparent[self.vertex_of(n)]
        return self.vertex_edge.get(p, ROOT)

    def ancestor(self, n, k: int):
        for _ in range(k):
            n = self.parent(n)
        return n

    def child(self, n, j: int) -> str:
        return self.vchild(self.vertex_of(n), j)

    def sib(self, n) -> int:
        return self.vsib(self.vertex_of(n))

    def is_leaf(self, n) -> bool:
        return self.deg(n) == 1 and n != ROOT

    # -- traversals ---------------------------------------------------------
    def preorder_traversals(self) -> tuple[list[str], list[str], list[int]]:
        """Vertex, edge and multiplicity lists of the preorder traversal."""
        out: list[str] = []

        def walk(v):
            out.append(v)
            last = self.vdeg(v) if v == self.root else self.vdeg(v) - 1
            for j in range(1, last + 1):
                walk(self.edge_vertex[self.vchild(v, j)])

        walk(self.root)
        edges = [self.vertex_edge[v] for v in out[1:]]
        return out, edges, [self.tree.mult[v] for v in out]

    def stratum(self, n) -> int:
        return self.height - self.depth(n)

    def invariant(self) -> tuple[int, tuple[int, ...]]:
        return len(self.edges), tuple(sorted(self.tree.mult.values()))


def preorder_traversals(rt: RootedTree):
    return rt.preorder_traversals()


def root_tree(t: GBTree, v0: str | None = None) -> RootedTree:
    return RootedTree(t, v0)


def build_star(leaf_mults, center_mult: int) -> RootedTree:
    """Star with the given leaf multiplicities in cyclic order, rooted at the center.

    The center is ``w0``, leaves ``w1..wN``, and the edge to ``wt`` is labelled ``t``.
    """
    leaf_mults = list(leaf_mults)
    if not leaf_mults:
        raise ValueError("a star needs at least one leaf")
    if center_mult < 1 or min(leaf_mults) < 1:
        raise ValueError("multiplicities must be positive")
    vertices = ["w0"] + [f"w{t}" for t in range(1, len(leaf_mults) + 1)]
    mult = {"w0": center_mult} | {f"w{t}": m for t, m in enumerate(leaf_mults, start=1)}
    edges = {str(t): ("w0", f"w{t}") for t in range(1, len(leaf_mults) + 1)}
    orders = {"w0": tuple(edges)} | {f"w{t}": (str(t),) for t in range(1, len(leaf_mults) + 1)}
    return RootedTree(GBTree(vertices, edges, mult, orders, "w0"))


def random_tree(seed: int, max_edges: int = 8, max_mult: int = 3) -> GBTree:
    """A random valid tree with a chosen root; deterministic in ``seed``."""
    if max_edges < 1 or max_mult < 1:
        raise ValueError("bounds must be at least 1")
    rng = random.Random(seed)
    nedges = rng.randint(1, max_edges)
    vertices = ["v0"]
    edges: dict[str, tuple[str, str]] = {}
    for k in range(1, nedges + 1):
        a = rng.choice(vertices)
        b = f"v{k}"
        vertices.append(b)
        edges[str(k)] = (a, b)
    mult = {v: rng.randint(1, max_mult) for v in vertices}
    orders = {}
    for v in vertices:
        inc = [n for n, ends in edges.items() if v in ends]
        rng.shuffle(inc)
        orders[v] = tuple(inc)
    return GBTree(vertices, edges, mult, orders, rng.choice(vertices))
