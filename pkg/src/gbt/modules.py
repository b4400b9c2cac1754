"""Right A-modules as representations of the Brauer quiver.

A representation stores one matrix per arrow, acting on column vectors from
the space at the source to the space at the target.  Since modules are right
modules, the path gamma*delta acts as X(delta) X(gamma).
"""
from __future__ import annotations

import itertools
import random
from collections import Counter

from .algebra import PathAlgebra
from .field import (
    Matrix,
    block_diag,
    column_basis,
    complement_columns,
    coordinates,
    hstack,
    is_zero,
    kernel_basis,
    kernel_matrix,
    pivot_columns,
    rank,
    submatrix,
    to_rows,
    vstack,
)
from .tree import RootedTree


class RelationError(ValueError):
    pass


class Representation:
    """Finite-dimensional right A-module given by arrow matrices.

    ``summands`` is set on direct sums of standard projectives: the basis at
    node i is then the concatenation, over the summands P_a, of the paths from
    a to i in algebra order, and the generators are the stationary paths.
    """

    def __init__(self, A: PathAlgebra, dims: dict, action: list, check: bool = True,
                 summands: list | None = None, name: str | None = None):
        self.A = A
        self.field = A.field
        self.nodes = A.quiver.nodes
        self.dims = {n: dims.get(n, 0) for n in self.nodes}
        self.action = action
        self.summands = summands
        self.name = name
        self._paths: dict[int, Matrix] = {}
        if check:
            bad = self.relation_failures()
            if bad:
                raise RelationError(f"relations fail: {bad[:3]}")

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> list[int]:
        return [self.dims[n] for n in self.nodes]

    def is_zero(self) -> bool:
        return self.dim == 0

    def act(self, arrow) -> Matrix:
        k = arrow if isinstance(arrow, int) else self.A.quiver._arrow_index[(arrow.vertex, arrow.t)]
        return self.action[k]

    def path_matrix(self, k: int) -> Matrix:
        """Action of basis path ``k``, from the space at its start to its end."""
        if k not in self._paths:
            p = self.A.basis[k]
            q = self.A.quiver
            m = self.field.identity(self.dims[p.start])
            for j in range(p.length):
                a = q.arrow(p.vertex, q.pos(p.vertex, p.start) + 1 + j)
                m = self.act(a) * m
            self._paths[k] = m
        return self._paths[k]

    def relation_failures(self) -> list[str]:
        q = self.A.quiver
        bad = []
        for a in q.arrows:
            for b in q.outgoing[a.target]:
                if b.vertex != a.vertex and not is_zero(self.act(b) * self.act(a)):
                    bad.append(f"mixed {a.name}{b.name}")
        for v, cyc in q.orders.items():
            for t in range(1, len(cyc) + 1):
                m = self.field.identity(self.dims[q.arrow(v, t).source])
                for j in range(q.full(v) + 1):
                    m = self.act(q.arrow(v, t + j)) * m
                if not is_zero(m):
                    bad.append(f"overflow at {v},{t}")
        for n in q.nodes:
            cycles = []
            for v in q.ends[n]:
                m = self.field.identity(self.dims[n])
                for j in range(q.full(v)):
                    m = self.act(q.arrow(v, q.pos(v, n) + 1 + j)) * m
                cycles.append(m)
            if cycles[0] != cycles[1]:
                bad.append(f"socle identification at {n}")
        return bad

    def is_projective_sum(self) -> bool:
        return self.summands is not None

    def offsets(self) -> dict:
        out, k = {}, 0
        for n in self.nodes:
            out[n] = k
            k += self.dims[n]
        return out

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Representation{label} dims={self.dim_vector()}>"


class ModuleMap:
    """Homomorphism given by one matrix per node (target dim x source dim)."""

    def __init__(self, source: Representation, target: Representation, mats: dict):
        self.source = source
        self.target = target
        self.mats = mats

    @classmethod
    def zero(cls, X: Representation, Y: Representation) -> ModuleMap:
        return cls(X, Y, {n: X.field.zeros(Y.dims[n], X.dims[n]) for n in X.nodes})

    @classmethod
    def identity(cls, X: Representation) -> ModuleMap:
        return cls(X, X, {n: X.field.identity(X.dims[n]) for n in X.nodes})

    def __getitem__(self, n) -> Matrix:
        return self.mats[n]

    def compose(self, other: ModuleMap) -> ModuleMap:
        """self after other."""
        return ModuleMap(other.source, self.target, {n: self.mats[n] * other.mats[n] for n in self.mats})

    def __mul__(self, other):
        if isinstance(other, ModuleMap):
            return self.compose(other)
        c = self.source.field.scalar(other)
        return ModuleMap(self.source, self.target, {n: m * c for n, m in self.mats.items()})

    __rmul__ = __mul__

    def __add__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(self.source, self.target, {n: m + other.mats[n] for n, m in self.mats.items()})

    def __sub__(self, other: ModuleMap) -> ModuleMap:
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        return isinstance(other, ModuleMap) and all(self.mats[n] == other.mats[n] for n in self.mats)

    def is_zero(self) -> bool:
        return all(is_zero(m) for m in self.mats.values())

    def is_homomorphism(self) -> bool:
        X, Y = self.source, self.target
        for k, a in enumerate(X.A.quiver.arrows):
            if self.mats[a.target] * X.action[k] != Y.action[k] * self.mats[a.source]:
                return False
        return True

    def rank(self) -> int:
        return sum(rank(m) for m in self.mats.values())

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective() and self.is_surjective()

    def vector(self) -> list:
        """All entries, node by node; used to do linear algebra on Hom spaces."""
        out = []
        for n in self.source.nodes:
            out.extend(self.mats[n].entries())
        return out


# -- construction of modules --------------------------------------------------

def _sparse_action(A, dims, entries) -> list:
    """Arrow matrices from {(arrow, row, col): value} entries."""
    fld = A.field
    per = [dict() for _ in A.quiver.arrows]
    for (k, r, c), v in entries.items():
        per[k][(r, c)] = v
    return [fld.from_sparse(dims[a.target], dims[a.source], per[k]) for k, a in enumerate(A.quiver.arrows)]


def projective_sum(A: PathAlgebra, summands: list) -> Representation:
    """Direct sum of standard projectives P_a, one per entry of ``summands``."""
    q = A.quiver
    pos = {}  # (summand index, path) -> coordinate at the path's end node
    dims = Counter()
    for s, a in enumerate(summands):
        for k in A.paths_from(a):
            end = A.end(A.basis[k])
            pos[(s, k)] = dims[end]
            dims[end] += 1
    entries = {}
    arrow_paths = [A.arrow_path(a) for a in q.arrows]
    for s, a in enumerate(summands):
        for k in A.paths_from(a):
            end = A.end(A.basis[k])
            for ai, arr in enumerate(q.arrows):
                if arr.source != end or arrow_paths[ai] is None:
                    continue
                prod = A.mul_basis(k, arrow_paths[ai])
                if prod is not None:
                    entries[(ai, pos[(s, prod)], pos[(s, k)])] = 1
    name = "+".join(f"P{a}" for a in summands) if summands else "0"
    return Representation(A, dims, _sparse_action(A, dims, entries), check=False,
                          summands=list(summands), name=name)


def proj_module(A: PathAlgebra, n: str) -> Representation:
    return projective_sum(A, [n])


def summand_offsets(P: Representation) -> list[dict]:
    """For each summand of a projective sum, its starting coordinate at every node."""
    A = P.A
    out, acc = [], Counter()
    for a in P.summands:
        out.append({n: acc[n] for n in P.nodes})
        for k in A.paths_from(a):
            acc[A.end(A.basis[k])] += 1
    return out


def path_coordinate(P: Representation, s: int, k: int) -> tuple[str, int]:
    """Node and coordinate of basis path ``k`` inside summand ``s`` of ``P``."""
    A = P.A
    a = P.summands[s]
    end = A.end(A.basis[k])
    local = A.paths_between(a, end).index(k)
    return end, summand_offsets(P)[s][end] + local


def zero_module(A: PathAlgebra) -> Representation:
    return projective_sum(A, [])


def simple_module(A: PathAlgebra, n: str) -> Representation:
    dims = {m: int(m == n) for m in A.quiver.nodes}
    return Representation(A, dims, _sparse_action(A, dims, {}), name=f"S{n}")


def map_from_generators(P: Representation, Y: Representation, images: list) -> ModuleMap:
    """The map from a projective sum sending the s-th generator to ``images[s]``.

    ``images[s]`` is a column matrix in Y at the node of the s-th summand.
    """
    A = P.A
    fld = P.field
    cols = {n: [] for n in P.nodes}
    for s, a in enumerate(P.summands):
        y = images[s]
        for n in P.nodes:
            for k in A.paths_between(a, n):
                cols[n].append(Y.path_matrix(k) * y)
    mats = {}
    for n in P.nodes:
        mats[n] = hstack(cols[n], Y.dims[n], fld) if cols[n] else fld.zeros(Y.dims[n], 0)
    return ModuleMap(P, Y, mats)


def generator_images(f: ModuleMap) -> list:
    """Inverse of map_from_generators: images of the generators of a projective sum."""
    P = f.source
    offs = summand_offsets(P)
    return [submatrix(f.mats[a], range(f.target.dims[a]), [offs[s][a]]) for s, a in enumerate(P.summands)]


def element_vector(P: Representation, s: int, element: dict, node: str) -> Matrix:
    """Column vector at ``node`` of summand ``s`` for an algebra element {path: coeff}."""
    A = P.A
    vec = [0] * P.dims[node]
    off = summand_offsets(P)[s][node]
    local = A.paths_between(P.summands[s], node)
    for k, c in element.items():
        if A.basis[k].start != P.summands[s] or A.end(A.basis[k]) != node:
            raise ValueError("element does not lie in the requested summand and node")
        vec[off + local.index(k)] += c
    return P.field.column(vec)


def path_to_hom(A: PathAlgebra, sigma, source: str | None = None,
                P_i: Representation | None = None, P_j: Representation | None = None) -> ModuleMap:
    """Left multiplication by a path (or element) from j to i, as a map P_i -> P_j."""
    if isinstance(sigma, int):
        sigma = {sigma: 1}
    starts = {A.basis[k].start for k in sigma}
    ends = {A.end(A.basis[k]) for k in sigma}
    if len(starts) != 1 or len(ends) != 1:
        raise ValueError("element is not homogeneous between two nodes")
    j, i = starts.pop(), ends.pop()
    if source is not None and source != i:
        raise ValueError(f"path ends at {i}, not at {source}")
    P_i = P_i or proj_module(A, i)
    P_j = P_j or proj_module(A, j)
    return map_from_generators(P_i, P_j, [element_vector(P_j, 0, sigma, i)])


# -- subquotients ---------------------------------------------------------------

def subrepresentation(X: Representation, bases: dict) -> tuple[Representation, ModuleMap]:
    """Submodule with the given column bases per node (assumed closed) and its inclusion."""
    fld = X.field
    dims = {n: bases[n].ncols() for n in X.nodes}
    action = []
    for k, a in enumerate(X.A.quiver.arrows):
        bs, bt = bases[a.source], bases[a.target]
        if dims[a.source] == 0 or dims[a.target] == 0:
            action.append(fld.zeros(dims[a.target], dims[a.source]))
        else:
            action.append(coordinates(bt, X.action[k] * bs))
    sub = Representation(X.A, dims, action, check=False)
    return sub, ModuleMap(sub, X, dict(bases))


def _closure_bases(X: Representation, spans: dict) -> dict:
    """Smallest submodule containing the given column spans per node."""
    fld = X.field
    cur = {n: column_basis(spans[n]) if spans.get(n) is not None and spans[n].ncols() else
           fld.zeros(X.dims[n], 0) for n in X.nodes}
    q = X.A.quiver
    changed = True
    while changed:
        changed = False
        for k, a in enumerate(q.arrows):
            b = cur[a.source]
            if b.ncols() == 0:
                continue
            img = X.action[k] * b
            t = a.target
            merged = hstack([cur[t], img], X.dims[t], fld)
            r = rank(merged)
            if r > cur[t].ncols():
                cur[t] = column_basis(merged)
                changed = True
    return cur


def submodule_generated(X: Representation, vectors: list) -> tuple[Representation, ModuleMap]:
    """Submodule generated by (node, column vector) pairs."""
    fld = X.field
    spans = {}
    for n, v in vectors:
        if v.nrows() != X.dims[n]:
            raise ValueError(f"vector has {v.nrows()} entries, space at {n} has {X.dims[n]}")
        spans[n] = v if n not in spans else hstack([spans[n], v], X.dims[n], fld)
    return subrepresentation(X, _closure_bases(X, spans))


def quotient(X: Representation, sub_bases: dict) -> tuple[Representation, ModuleMap]:
    """X modulo the submodule with the given per-node bases, with the projection."""
    fld = X.field
    proj, lift = {}, {}
    for n in X.nodes:
        d = X.dims[n]
        b = sub_bases[n]
        comp = complement_columns(b, d)
        e = submatrix(fld.identity(d), range(d), comp)
        lift[n] = e
        full = hstack([b, e], d, fld)
        inv = full.inv() if d else full
        proj[n] = submatrix(inv, range(b.ncols(), d), range(d))
    dims = {n: lift[n].ncols() for n in X.nodes}
    action = [proj[a.target] * X.action[k] * lift[a.source] for k, a in enumerate(X.A.quiver.arrows)]
    Q = Representation(X.A, dims, action, check=False)
    Q.lift = lift  # section of the projection, node by node
    return Q, ModuleMap(X, Q, proj)


def kernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return subrepresentation(f.source, {n: kernel_matrix(f.mats[n]) for n in f.source.nodes})


def image_bases(f: ModuleMap) -> dict:
    return {n: column_basis(f.mats[n]) for n in f.target.nodes}


def image(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return subrepresentation(f.target, image_bases(f))


def cokernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return quotient(f.target, image_bases(f))


def direct_sum(mods: list[Representation]) -> Representation:
    A = mods[0].A
    if all(m.summands is not None for m in mods):
        return projective_sum(A, [a for m in mods for a in m.summands])
    dims = {n: sum(m.dims[n] for m in mods) for n in A.quiver.nodes}
    action = [block_diag([m.action[k] for m in mods], A.field) for k in range(len(A.quiver.arrows))]
    return Representation(A, dims, action, check=False)


def sum_injections(mods: list[Representation], total: Representation) -> list[ModuleMap]:
    fld = total.field
    out = []
    acc = Counter()
    for m in mods:
        mats = {}
        for n in total.nodes:
            e = fld.identity(total.dims[n])
            mats[n] = submatrix(e, range(total.dims[n]), range(acc[n], acc[n] + m.dims[n]))
            acc[n] += m.dims[n]
        out.append(ModuleMap(m, total, mats))
    return out


def map_into_sum(X: Representation, maps: list[ModuleMap], total: Representation) -> ModuleMap:
    """The map X -> total whose components are ``maps``."""
    mats = {}
    for n in X.nodes:
        parts = [f.mats[n] for f in maps]
        mats[n] = vstack(parts, X.dims[n], X.field) if parts else X.field.zeros(0, X.dims[n])
    return ModuleMap(X, total, mats)


def map_from_sum(total: Representation, maps: list[ModuleMap], Y: Representation) -> ModuleMap:
    mats = {}
    for n in total.nodes:
        parts = [f.mats[n] for f in maps]
        mats[n] = hstack(parts, Y.dims[n], Y.field) if parts else Y.field.zeros(Y.dims[n], 0)
    return ModuleMap(total, Y, mats)


# -- Hom spaces -----------------------------------------------------------------

def hom_space(X: Representation, Y: Representation) -> list[ModuleMap]:
    """A basis of Hom_A(X, Y)."""
    fld = X.field
    if X.summands is not None:
        out = []
        for s, a in enumerate(X.summands):
            for e in range(Y.dims[a]):
                images = [fld.zeros(Y.dims[b], 1) for b in X.summands]
                images[s] = submatrix(fld.identity(Y.dims[a]), range(Y.dims[a]), [e])
                out.append(map_from_generators(X, Y, images))
        return out
    off, nvars = {}, 0
    for n in X.nodes:
        off[n] = nvars
        nvars += X.dims[n] * Y.dims[n]
    if nvars == 0:
        return []
    eqs: dict = {}
    row = 0
    for k, a in enumerate(X.A.quiver.arrows):
        s, t = a.source, a.target
        dxs, dxt, dys, dyt = X.dims[s], X.dims[t], Y.dims[s], Y.dims[t]
        if dyt == 0 or dxs == 0:
            continue
        xg = to_rows(X.action[k])  # dxt x dxs
        yg = to_rows(Y.action[k])  # dyt x dys
        for i in range(dyt):
            for j in range(dxs):
                for kk in range(dxt):
                    v = xg[kk][j]
                    if v != 0:
                        key = (row, off[t] + i * dxt + kk)
                        eqs[key] = eqs.get(key, 0) + v
                for kk in range(dys):
                    v = yg[i][kk]
                    if v != 0:
                        key = (row, off[s] + kk * dxs + j)
                        eqs[key] = eqs.get(key, 0) - v
                row += 1
    system = fld.from_sparse(row, nvars, eqs)
    out = []
    for vec in kernel_basis(system):
        mats = {n: fld.from_entries(Y.dims[n], X.dims[n], vec[off[n]:off[n] + X.dims[n] * Y.dims[n]])
                for n in X.nodes}
        out.append(ModuleMap(X, Y, mats))
    return out


def hom_dim(X: Representation, Y: Representation) -> int:
    return len(hom_space(X, Y))


def combine(maps: list[ModuleMap], coeffs, X=None, Y=None) -> ModuleMap:
    if not maps:
        return ModuleMap.zero(X, Y)
    out = maps[0] * coeffs[0]
    for f, c in zip(maps[1:], coeffs[1:]):
        if c != 0:
            out = out + f * c
    return out


# -- radical, socle, tops ---------------------------------------------------------

def radical_bases(X: Representation) -> dict:
    fld = X.field
    out = {}
    for n in X.nodes:
        imgs = [X.action[k] for k, a in enumerate(X.A.quiver.arrows) if a.target == n and X.dims[a.source]]
        out[n] = column_basis(hstack(imgs, X.dims[n], fld)) if imgs else fld.zeros(X.dims[n], 0)
    return out


def socle_bases(X: Representation) -> dict:
    fld = X.field
    out = {}
    for n in X.nodes:
        outs = [X.action[k] for k, a in enumerate(X.A.quiver.arrows) if a.source == n and X.dims[a.target]]
        out[n] = kernel_matrix(vstack(outs, X.dims[n], fld)) if outs else fld.identity(X.dims[n])
    return out


def rad(X: Representation) -> tuple[Representation, ModuleMap]:
    return subrepresentation(X, radical_bases(X))


def soc(X: Representation) -> tuple[Representation, ModuleMap]:
    return subrepresentation(X, socle_bases(X))


def top(X: Representation) -> tuple[Representation, ModuleMap]:
    return quotient(X, radical_bases(X))


def top_dims(X: Representation) -> dict:
    r = radical_bases(X)
    return {n: X.dims[n] - r[n].ncols() for n in X.nodes}


def socle_dims(X: Representation) -> dict:
    return {n: b.ncols() for n, b in socle_bases(X).items()}


def loewy_layers(X: Representation) -> list[dict]:
    """Composition factors of rad^k X / rad^(k+1) X for k = 0, 1, ..."""
    fld = X.field
    cur = {n: fld.identity(X.dims[n]) for n in X.nodes}
    layers = []
    while any(b.ncols() for b in cur.values()):
        nxt = {}
        for n in X.nodes:
            imgs = [X.action[k] * cur[a.source] for k, a in enumerate(X.A.quiver.arrows)
                    if a.target == n and cur[a.source].ncols()]
            nxt[n] = column_basis(hstack(imgs, X.dims[n], fld)) if imgs else fld.zeros(X.dims[n], 0)
        layers.append({n: cur[n].ncols() - nxt[n].ncols() for n in X.nodes
                       if cur[n].ncols() - nxt[n].ncols()})
        cur = nxt
    return layers


def composition_factors(X: Representation) -> dict:
    return {n: d for n, d in X.dims.items() if d}


# -- covers, hulls, syzygies ------------------------------------------------------

def projective_cover(X: Representation) -> tuple[Representation, ModuleMap]:
    """Minimal projective cover; generators lift the first basis vectors outside rad X."""
    fld = X.field
    r = radical_bases(X)
    summands, images = [], []
    for n in X.nodes:
        for c in complement_columns(r[n], X.dims[n]):
            summands.append(n)
            images.append(submatrix(fld.identity(X.dims[n]), range(X.dims[n]), [c]))
    P = projective_sum(X.A, summands)
    return P, map_from_generators(P, X, images)


def injective_hull(X: Representation) -> tuple[Representation, ModuleMap]:
    """Injective hull inside a sum of projectives (A is symmetric).

    For each node n, maps X -> P_n are chosen so that their restrictions to
    the socle of X at n are linearly independent.
    """
    A = X.A
    socb = socle_bases(X)
    summands, comps = [], []
    for n in X.nodes:
        sn = socb[n].ncols()
        if sn == 0:
            continue
        Pn = proj_module(A, n)
        zpos = path_coordinate(Pn, 0, A.index[A.socle_path(n)])[1]
        homs = hom_space(X, Pn)
        rows = [to_rows(h.mats[n] * socb[n])[zpos] for h in homs]
        picked = _pivot_rows(X.field.matrix(rows, sn)) if rows else []
        if len(picked) != sn:
            raise ArithmeticError(f"socle at {n} does not embed")
        for i in picked:
            summands.append(n)
            comps.append(homs[i])
    I = projective_sum(A, summands)
    return I, _into_projective_sum(X, comps, I)


def _pivot_rows(m: Matrix) -> list[int]:
    return pivot_columns(m.transpose())


def _into_projective_sum(X: Representation, maps: list[ModuleMap], I: Representation) -> ModuleMap:
    """Assemble maps X -> P_{a_s} into X -> I respecting I's per-node layout."""
    offs = summand_offsets(I)
    mats = {}
    for n in X.nodes:
        rows = [[0] * X.dims[n] for _ in range(I.dims[n])]
        for s, f in enumerate(maps):
            block = to_rows(f.mats[n])
            for i, r in enumerate(block):
                rows[offs[s][n] + i] = r
        mats[n] = X.field.matrix(rows, X.dims[n])
    return ModuleMap(X, I, mats)


def syzygy(X: Representation, t: int = 1) -> Representation:
    """Omega^t X: kernels of projective covers for t > 0, cokernels of injective hulls for t < 0."""
    for _ in range(abs(t)):
        if t > 0:
            _, epi = projective_cover(X)
            X, _ = kernel(epi)
        else:
            _, mono = injective_hull(X)
            X, _ = cokernel(mono)
    return X


def has_projective_summand(X: Representation) -> list[str]:
    """Nodes n such that P_n is a direct summand of X (X of a socle path is nonzero)."""
    A = X.A
    return [n for n in X.nodes if X.dims[n] and not is_zero(X.path_matrix(A.index[A.socle_path(n)]))]


# -- isomorphism ---------------------------------------------------------------------

def _is_invertible(f: ModuleMap) -> bool:
    for n, m in f.mats.items():
        if m.nrows() != m.ncols() or rank(m) != m.nrows():
            return False
    return True


def is_isomorphic(X: Representation, Y: Representation, seed: int = 0, trials: int = 40):
    """An isomorphism X -> Y, or None when none exists.

    Tries the Hom basis, then seeded random combinations.  A generic
    combination is invertible when any is, so a miss after ``trials`` random
    draws is vanishingly unlikely over the rationals.
    """
    if X.dim_vector() != Y.dim_vector():
        return None
    if X.dim == 0:
        return ModuleMap(X, Y, {n: X.field.zeros(0, 0) for n in X.nodes})
    H = hom_space(X, Y)
    if not H or len(H) != hom_dim(Y, X):
        return None
    for h in H:
        if _is_invertible(h):
            return h
    fld = X.field
    if fld.prime is not None and fld.prime ** len(H) <= 4096:
        for coeffs in itertools.product(range(fld.prime), repeat=len(H)):
            if any(coeffs):
                h = combine(H, coeffs)
                if _is_invertible(h):
                    return h
        return None
    rng = random.Random(seed)
    bound = 3
    for k in range(trials):
        coeffs = [rng.randint(-bound, bound) for _ in H]
        h = combine(H, coeffs)
        if _is_invertible(h):
            return h
        if k % 10 == 9:
            bound *= 4
    return None


# -- named modules -----------------------------------------------------------------

def _cycle_vector(A: PathAlgebra, P: Representation, n: str, v: str, length: int):
    k = A.normal(n, v, length)
    if k is None:
        return None
    node = A.end(A.basis[k])
    return node, element_vector(P, 0, {k: 1}, node)


def uniserial_plus(A: PathAlgebra, rt: RootedTree, n: str) -> Representation:
    """U_n^+: the uniserial part of rad P_n / soc P_n around the parent vertex of n."""
    return _uniserial(A, n, rt.vparent[rt.vertex_of(n)], f"U{n}+")


def uniserial_minus(A: PathAlgebra, rt: RootedTree, n: str) -> Representation:
    """U_n^-: the uniserial part of rad P_n / soc P_n around v_n."""
    return _uniserial(A, n, rt.vertex_of(n), f"U{n}-")


def _uniserial(A, n, v, name):
    if A.quiver.full(v) == 1:
        Z = zero_module(A)
        Z.name = name
        return Z
    P = proj_module(A, n)
    node, vec = _cycle_vector(A, P, n, v, 1)
    S, inc = submodule_generated(P, [(node, vec)])
    # the generated submodule contains soc P_n; pass to the quotient
    z = element_vector(P, 0, {A.index[A.socle_path(n)]: 1}, n)
    bases = {m: A.field.zeros(S.dims[m], 0) for m in A.quiver.nodes}
    bases[n] = coordinates(inc.mats[n], z)
    Q, _ = quotient(S, bases)
    Q.name = name
    return Q


def L_module(A: PathAlgebra, rt: RootedTree, n: str) -> Representation:
    """L_n: the submodule of P_n generated by [gamma_n^1 : (m_n - 1) deg(n) + 1]."""
    v = rt.vertex_of(n)
    P = proj_module(A, n)
    node, vec = _cycle_vector(A, P, n, v, (rt.mult(n) - 1) * rt.deg(n) + 1)
    L, _ = submodule_generated(P, [(node, vec)])
    L.name = f"L{n}"
    return L


def L_inclusion(A: PathAlgebra, rt: RootedTree, n: str, P: Representation | None = None):
    v = rt.vertex_of(n)
    P = P or proj_module(A, n)
    node, vec = _cycle_vector(A, P, n, v, (rt.mult(n) - 1) * rt.deg(n) + 1)
    return submodule_generated(P, [(node, vec)])
