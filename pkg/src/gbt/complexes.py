"""Bounded complexes of representations and Hom complexes between them.

Conventions: C[n]^l = C^(l+n) with differential (-1)^n d; the Hom complex
differential is delta(f) = d_Y f - (-1)^n f d_X on degree n; the cone of
f: X -> Y has terms X^(l+1) + Y^l and differential [[-d_X, 0], [f, d_Y]].
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .field import (
    Matrix,
    block,
    block_diag,
    column_basis,
    coordinates,
    field_of,
    hstack,
    kernel_matrix,
    pivot_columns,
    rank,
    submatrix,
)
from .modules import (
    ModuleMap,
    Representation,
    direct_sum,
    generator_images,
    image_bases,
    kernel,
    map_from_generators,
    quotient,
    summand_offsets,
    zero_module,
)


class ComplexError(ValueError):
    pass


class BoundedComplex:
    """Terms by degree and differentials d^l : C^l -> C^(l+1); d^2 = 0 is checked."""

    def __init__(self, A, terms: dict, diffs: dict | None = None, name: str | None = None, check: bool = True):
        self.A = A
        self.terms = {l: X for l, X in terms.items() if X.dim}
        self.name = name
        self._zero = zero_module(A)
        self.diffs = {}
        for l, d in (diffs or {}).items():
            if l in self.terms and l + 1 in self.terms:
                self.diffs[l] = d
        if check:
            for l in self.diffs:
                if not self.d(l).is_homomorphism():
                    raise ComplexError(f"differential in degree {l} is not a module map")
                if l + 1 in self.diffs and not (self.d(l + 1) * self.d(l)).is_zero():
                    raise ComplexError(f"d^{l + 1} d^{l} is not zero")

    @property
    def lo(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def hi(self) -> int:
        return max(self.terms) if self.terms else -1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, l: int) -> Representation:
        return self.terms.get(l, self._zero)

    def d(self, l: int) -> ModuleMap:
        if l in self.diffs:
            return self.diffs[l]
        return ModuleMap.zero(self.term(l), self.term(l + 1))

    def is_projective(self) -> bool:
        return all(X.summands is not None for X in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def cohomology_dims(self, l: int) -> dict:
        """Per-node dimensions of H^l, from ranks alone."""
        X = self.term(l)
        out = {}
        for n in X.nodes:
            out[n] = X.dims[n] - rank(self.d(l).mats[n]) - rank(self.d(l - 1).mats[n])
        return out

    def is_acyclic(self) -> bool:
        return all(not any(self.cohomology_dims(l).values()) for l in self.degrees())

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Complex{label} " + ", ".join(f"{l}: {self.terms[l].name or self.terms[l].dim_vector()}"
                                                for l in sorted(self.terms)) + ">"


def stalk(M: Representation, l: int = 0) -> BoundedComplex:
    return BoundedComplex(M.A, {l: M}, {}, name=f"{M.name or 'M'}[{-l}]")


def shift(C: BoundedComplex, n: int) -> BoundedComplex:
    sign = -1 if n % 2 else 1
    terms = {l - n: X for l, X in C.terms.items()}
    diffs = {l - n: d * sign for l, d in C.diffs.items()}
    return BoundedComplex(C.A, terms, diffs, name=f"{C.name}[{n}]" if C.name else None, check=False)


class ChainMap:
    def __init__(self, source: BoundedComplex, target: BoundedComplex, comps: dict):
        self.source = source
        self.target = target
        self.comps = comps

    def at(self, l: int) -> ModuleMap:
        if l in self.comps:
            return self.comps[l]
        return ModuleMap.zero(self.source.term(l), self.target.term(l))

    def degrees(self):
        return range(min(self.source.lo, self.target.lo), max(self.source.hi, self.target.hi) + 1)

    def is_chain_map(self) -> bool:
        X, Y = self.source, self.target
        for l in self.degrees():
            if not self.at(l).is_homomorphism():
                return False
            if not (self.at(l + 1) * X.d(l) - Y.d(l) * self.at(l)).is_zero():
                return False
        return True

    def compose(self, other: ChainMap) -> ChainMap:
        """self after other."""
        degs = set(self.comps) & set(other.comps)
        return ChainMap(other.source, self.target, {l: self.comps[l] * other.comps[l] for l in degs})

    def __mul__(self, other):
        if isinstance(other, ChainMap):
            return self.compose(other)
        return ChainMap(self.source, self.target, {l: f * other for l, f in self.comps.items()})

    def __add__(self, other: ChainMap) -> ChainMap:
        degs = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target, {l: self.at(l) + other.at(l) for l in degs})

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.comps.values())


def identity_map(C: BoundedComplex) -> ChainMap:
    return ChainMap(C, C, {l: ModuleMap.identity(X) for l, X in C.terms.items()})


def shift_map(f: ChainMap, n: int) -> ChainMap:
    return ChainMap(shift(f.source, n), shift(f.target, n), {l - n: g for l, g in f.comps.items()})


def cone(f: ChainMap) -> BoundedComplex:
    X, Y = f.source, f.target
    fld = X.A.field
    terms, diffs = {}, {}
    lo, hi = min(X.lo - 1, Y.lo), max(X.hi - 1, Y.hi)
    for l in range(lo, hi + 1):
        terms[l] = direct_sum([X.term(l + 1), Y.term(l)])
    for l in range(lo, hi):
        src, dst = terms[l], terms[l + 1]
        mats = {}
        for n in X.A.quiver.nodes:
            rs = [X.term(l + 2).dims[n], Y.term(l + 1).dims[n]]
            cs = [X.term(l + 1).dims[n], Y.term(l).dims[n]]
            mats[n] = block([[X.d(l + 1).mats[n] * -1, None],
                             [f.at(l + 1).mats[n], Y.d(l).mats[n]]], rs, cs, fld)
        diffs[l] = ModuleMap(src, dst, mats)
    return BoundedComplex(X.A, terms, diffs, name="cone")


def cohomology_data(C: BoundedComplex, l: int):
    """(H, Z, inclusion Z -> C^l, projection Z -> H) for H = H^l(C)."""
    Z, inc = kernel(C.d(l))
    img = image_bases(C.d(l - 1))
    fld = C.A.field
    sub = {}
    for n in C.A.quiver.nodes:
        if img[n].ncols() == 0:
            sub[n] = fld.zeros(Z.dims[n], 0)
        else:
            sub[n] = coordinates(inc.mats[n], img[n])
    H, proj = quotient(Z, sub)
    return H, Z, inc, proj


def cohomology(C: BoundedComplex, l: int) -> Representation:
    return cohomology_data(C, l)[0]


def induced_on_cohomology(f: ChainMap, l: int) -> ModuleMap:
    HX, _, incX, _ = cohomology_data(f.source, l)
    HY, ZY, incY, projY = cohomology_data(f.target, l)
    fld = f.source.A.field
    mats = {}
    for n in f.source.A.quiver.nodes:
        vals = f.at(l).mats[n] * incX.mats[n] * HX.lift[n]
        if ZY.dims[n] == 0 or vals.ncols() == 0:
            mats[n] = fld.zeros(HY.dims[n], HX.dims[n])
        else:
            mats[n] = projY.mats[n] * coordinates(incY.mats[n], vals)
    return ModuleMap(HX, HY, mats)


def is_quasi_iso(f: ChainMap) -> bool:
    return cone(f).is_acyclic()


def is_quasi_iso_by_cohomology(f: ChainMap) -> bool:
    for l in f.degrees():
        g = induced_on_cohomology(f, l)
        if not g.is_isomorphism():
            return False
    return True


# -- Hom complexes between a complex of projectives and any complex --------------

def _gen_dims(P: Representation, Y: Representation) -> list[int]:
    return [Y.dims[a] for a in P.summands]


def postcompose_matrix(P: Representation, g: ModuleMap) -> Matrix:
    """Hom(P, Y) -> Hom(P, Y') in generator coordinates, f -> g f."""
    fld = P.field
    return block_diag([g.mats[a] for a in P.summands], fld) if P.summands else \
        fld.zeros(0, 0)


def precompose_matrix(d: ModuleMap, Y: Representation) -> Matrix:
    """Hom(P, Y) -> Hom(P', Y) in generator coordinates, f -> f d, for d: P' -> P."""
    Pp, P = d.source, d.target
    A = P.A
    fld = P.field
    gens = generator_images(d)
    offs = summand_offsets(P)
    rows = _gen_dims(Pp, Y)
    cols = _gen_dims(P, Y)
    blocks = []
    for b, nb in enumerate(Pp.summands):
        x = gens[b].entries()
        row = []
        for a, na in enumerate(P.summands):
            acc = None
            for local, k in enumerate(A.paths_between(na, nb)):
                c = x[offs[a][nb] + local]
                if c != 0:
                    term = Y.path_matrix(k) * c
                    acc = term if acc is None else acc + term
            row.append(acc)
        blocks.append(row)
    return block(blocks, rows, cols, fld)


@dataclass
class HomComplex:
    """Total Hom complex Hom^n = prod_i Hom(X^i, Y^(i+n)) in generator coordinates."""

    X: BoundedComplex
    Y: BoundedComplex
    comps: dict = field(default_factory=dict)   # n -> list of (i, offset, size)
    dims: dict = field(default_factory=dict)
    diff: dict = field(default_factory=dict)    # n -> matrix Hom^n -> Hom^(n+1)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> Matrix:
        if n in self.diff:
            return self.diff[n]
        return self.X.A.field.zeros(self.dim(n + 1), self.dim(n))

    def cohomology_dim(self, n: int) -> int:
        return self.dim(n) - rank(self.d(n)) - rank(self.d(n - 1))

    def cocycles(self, n: int) -> Matrix:
        return kernel_matrix(self.d(n))

    def coboundaries(self, n: int) -> Matrix:
        return column_basis(self.d(n - 1))

    def to_chain_map(self, vec, n: int = 0) -> ChainMap:
        """A degree-n element as a chain map X -> Y[n] (components X^i -> Y^(i+n))."""
        entries = vec.entries() if hasattr(vec, "entries") else list(vec)
        fld = self.X.A.field
        comps = {}
        target = shift(self.Y, n) if n else self.Y
        for i, off, size in self.comps.get(n, []):
            P = self.X.term(i)
            Yt = self.Y.term(i + n)
            images, pos = [], off
            for a in P.summands:
                images.append(fld.column(entries[pos:pos + Yt.dims[a]]))
                pos += Yt.dims[a]
            comps[i] = map_from_generators(P, Yt, images)
        return ChainMap(self.X, target, comps)

    def to_vector(self, f: ChainMap, n: int = 0) -> Matrix:
        out = [0] * self.dim(n)
        for i, off, size in self.comps.get(n, []):
            if i in f.comps:
                pos = off
                for img in generator_images(f.comps[i]):
                    for v in img.entries():
                        out[pos] = v
                        pos += 1
        return self.X.A.field.column(out)


def total_hom_complex(X: BoundedComplex, Y: BoundedComplex, degrees=None) -> HomComplex:
    if not X.is_projective():
        raise ComplexError("the source must be a complex of projectives")
    H = HomComplex(X, Y)
    fld = X.A.field
    if X.is_zero() or Y.is_zero():
        return H
    lo, hi = Y.lo - X.hi, Y.hi - X.lo
    if degrees is None:
        degrees = range(lo, hi + 1)
    need = set(degrees) | {n + 1 for n in degrees}
    for n in range(lo, hi + 1):
        comps, off = [], 0
        for i in X.degrees():
            if i + n in Y.terms and i in X.terms:
                size = sum(_gen_dims(X.term(i), Y.term(i + n)))
                if size:
                    comps.append((i, off, size))
                    off += size
        H.comps[n] = comps
        H.dims[n] = off
    for n in sorted(need):
        if n not in H.comps or n + 1 not in H.comps:
            continue
        src, dst = H.comps[n], H.comps[n + 1]
        if not H.dims[n] or not H.dims[n + 1]:
            continue
        dst_index = {i: (off, size) for i, off, size in dst}
        items = {}
        sign = -1 if n % 2 else 1
        for i, off, size in src:
            P = X.term(i)
            if i in dst_index and i + n + 1 in Y.terms:
                m = postcompose_matrix(P, Y.d(i + n))
                items[(dst_index[i][0], off)] = m
            if i - 1 in dst_index and i - 1 in X.terms:
                m = precompose_matrix(X.d(i - 1), Y.term(i + n)) * (-sign)
                key = (dst_index[i - 1][0], off)
                items[key] = items[key] + m if key in items else m
        H.diff[n] = _assemble(items, H.dims[n + 1], H.dims[n], fld)
    return H


def _assemble(items: dict, nrows: int, ncols: int, fld) -> Matrix:
    out = [0] * (nrows * ncols)
    for (r0, c0), m in items.items():
        r, c = m.nrows(), m.ncols()
        e = m.entries()
        for i in range(r):
            base = (r0 + i) * ncols + c0
            for j in range(c):
                v = e[i * c + j]
                if v != 0:
                    out[base + j] = v
    return fld.from_entries(nrows, ncols, out)


def homotopy_hom_dim(X: BoundedComplex, Y: BoundedComplex, n: int = 0) -> int:
    """dim Hom_K(X, Y[n]) for a complex of projectives X."""
    return total_hom_complex(X, Y, degrees=[n - 1, n]).cohomology_dim(n)


def cohomology_representatives(H: HomComplex, n: int = 0) -> tuple[Matrix, Matrix]:
    """(reps, coboundaries): columns of ``reps`` project to a basis of H^n."""
    Z = H.cocycles(n)
    B = H.coboundaries(n)
    fld = H.X.A.field
    d = H.dim(n)
    aug = hstack([B, Z], d, fld)
    piv = [p - B.ncols() for p in pivot_columns(aug) if p >= B.ncols()]
    reps = submatrix(Z, range(d), piv)
    return reps, B


def reduce_class(vec: Matrix, reps: Matrix, B: Matrix) -> Matrix:
    """Coordinates of the class of a cocycle in the basis ``reps`` modulo ``B``."""
    fld = field_of(vec)
    d = vec.nrows()
    x = coordinates(hstack([reps, B], d, fld), vec)
    return submatrix(x, range(reps.ncols()), [0])


class EndAlgebra:
    """End_K(T) for T = sum of the given complexes of projectives.

    Basis elements are homotopy classes of chain maps T_a -> T_b; the product
    x * y is the composition x after y.
    """

    def __init__(self, parts: list[BoundedComplex], labels: list | None = None, check_orthogonal: bool = True,
                 span: int | None = None):
        self.parts = parts
        self.labels = labels or list(range(len(parts)))
        self.fld = parts[0].A.field
        N = len(parts)
        self.homs: dict = {}
        self.reps: dict = {}
        self.bounds: dict = {}
        self.basis: list[tuple[int, int, int]] = []  # (source part, target part, rep index)
        for a in range(N):
            for b in range(N):
                H = total_hom_complex(parts[a], parts[b])
                if check_orthogonal:
                    for n in H.dims:
                        if n != 0 and H.cohomology_dim(n):
                            raise ComplexError(
                                f"Hom(T_{self.labels[a]}, T_{self.labels[b]}[{n}]) is nonzero")
                reps, B = cohomology_representatives(H, 0)
                self.homs[(a, b)] = H
                self.reps[(a, b)] = reps
                self.bounds[(a, b)] = B
                self.basis.extend((a, b, k) for k in range(reps.ncols()))
        self.index = {x: i for i, x in enumerate(self.basis)}
        self._table: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def block_dim(self, a: int, b: int) -> int:
        return self.reps[(a, b)].ncols()

    def chain_map(self, i: int) -> ChainMap:
        a, b, k = self.basis[i]
        H = self.homs[(a, b)]
        col = submatrix(self.reps[(a, b)], range(H.dim(0)), [k])
        return H.to_chain_map(col)

    def classify(self, f: ChainMap, a: int, b: int) -> dict:
        """The class of a chain map T_a -> T_b as {basis index: coefficient}."""
        H = self.homs[(a, b)]
        reps = self.reps[(a, b)]
        if reps.ncols() == 0:
            return {}
        x = reduce_class(H.to_vector(f), reps, self.bounds[(a, b)])
        return {self.index[(a, b, k)]: c for k, c in enumerate(x.entries()) if c != 0}

    def multiply_basis(self, i: int, j: int) -> dict:
        """Class of (basis i) after (basis j)."""
        if (i, j) not in self._table:
            a1, b1, _ = self.basis[i]
            a2, b2, _ = self.basis[j]
            if b2 != a1:
                self._table[(i, j)] = {}
            else:
                self._table[(i, j)] = self.classify(self.chain_map(i).compose(self.chain_map(j)), a2, b1)
        return self._table[(i, j)]

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, c in x.items():
            for j, e in y.items():
                for k, v in self.multiply_basis(i, j).items():
                    out[k] = out.get(k, 0) + c * e * v
        return {k: v for k, v in out.items() if v != 0}

    def idempotent(self, a: int) -> dict:
        f = identity_map(self.parts[a])
        return self.classify(f, a, a)

    def cartan(self) -> list[list[int]]:
        N = len(self.parts)
        return [[self.block_dim(a, b) for b in range(N)] for a in range(N)]


def end_algebra(parts: list[BoundedComplex], labels=None) -> EndAlgebra:
    return EndAlgebra(parts, labels)


def precompose_on_hom(H_src: HomComplex, H_dst: HomComplex, g: ChainMap, n: int) -> Matrix:
    """Hom^n(X, Y) -> Hom^n(X', Y), f -> f g, for a degree-zero chain map g: X' -> X."""
    fld = H_src.X.A.field
    items = {}
    dst_index = {i: off for i, off, _ in H_dst.comps.get(n, [])}
    for i, off, size in H_src.comps.get(n, []):
        if i in dst_index and i in g.comps:
            m = precompose_matrix(g.comps[i], H_src.Y.term(i + n))
            items[(dst_index[i], off)] = m
    return _assemble(items, H_dst.dim(n), H_src.dim(n), fld)


def find_homotopy_equivalence(X: BoundedComplex, Y: BoundedComplex, seed: int = 0, trials: int = 30):
    """A chain map X -> Y that is a quasi-isomorphism, or None (both complexes of projectives)."""
    H = total_hom_complex(X, Y, degrees=[-1, 0])
    Z = H.cocycles(0)
    cols = [submatrix(Z, range(Z.nrows()), [k]) for k in range(Z.ncols())]
    rng = random.Random(seed)
    candidates = list(cols)
    fld = X.A.field
    for _ in range(trials):
        if not cols:
            break
        acc = fld.zeros(Z.nrows(), 1)
        for c in cols:
            acc = acc + c * rng.randint(-5, 5)
        candidates.append(acc)
    for v in candidates:
        f = H.to_chain_map(v)
        if is_quasi_iso(f):
            return f
    return None


def find_chain_isomorphism(X: BoundedComplex, Y: BoundedComplex, seed: int = 0, trials: int = 30):
    """A chain map X -> Y whose components are all isomorphisms, or None.

    Random combinations of a basis of degree-zero cocycles are tried; the
    terms must agree in degrees and dimensions for anything to be found.
    """
    if set(X.terms) != set(Y.terms) or any(X.term(l).dim_vector() != Y.term(l).dim_vector() for l in X.terms):
        return None
    H = total_hom_complex(X, Y, degrees=[0])
    Z = H.cocycles(0)
    if Z.ncols() == 0:
        return None
    rng = random.Random(seed)
    fld = X.A.field
    for k in range(trials):
        acc = fld.zeros(Z.nrows(), 1)
        for j in range(Z.ncols()):
            acc = acc + submatrix(Z, range(Z.nrows()), [j]) * rng.randint(-7, 7)
        f = H.to_chain_map(acc)
        if all(f.at(l).is_isomorphism() for l in X.terms):
            return f
    return None
