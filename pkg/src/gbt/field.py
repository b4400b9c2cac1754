"""Exact scalar arithmetic and dense linear algebra.

Matrices are python-flint matrices: ``fmpq_mat`` over the rationals and
``nmod_mat`` over a prime field.  Nothing in this package ever touches a
floating point number.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import flint

Matrix = flint.fmpq_mat | flint.nmod_mat


@dataclass(frozen=True)
class Field:
    """The ground field: rationals when ``prime`` is None, else GF(prime)."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and (self.prime < 2 or not flint.fmpz(self.prime).is_prime()):
            raise ValueError(f"{self.prime} is not a prime")

    @classmethod
    def parse(cls, text: str) -> Field:
        """Parse ``rational`` or ``gf:<prime>``."""
        text = text.strip().lower()
        if text in ("", "rational", "q", "qq"):
            return cls()
        if text.startswith("gf:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field {text!r}; expected 'rational' or 'gf:<prime>'")

    @classmethod
    def from_env(cls) -> Field:
        return cls.parse(os.environ.get("GBT_FIELD", "rational"))

    @property
    def name(self) -> str:
        return "rational" if self.prime is None else f"gf:{self.prime}"

    def scalar(self, x):
        if self.prime is not None:
            if isinstance(x, Fraction):
                return flint.nmod(x.numerator, self.prime) / flint.nmod(x.denominator, self.prime)
            return flint.nmod(int(x), self.prime)
        if isinstance(x, Fraction):
            return flint.fmpq(x.numerator, x.denominator)
        return flint.fmpq(x)

    def from_entries(self, nrows: int, ncols: int, entries) -> Matrix:
        if self.prime is None:
            return flint.fmpq_mat(nrows, ncols, [self.scalar(e) if isinstance(e, Fraction) else e
                                                 for e in entries])
        return flint.nmod_mat(nrows, ncols, [self.scalar(e) if isinstance(e, Fraction) else e
                                             for e in entries], self.prime)

    def matrix(self, rows, ncols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return self.from_entries(len(rows), ncols, [e for r in rows for e in r])

    def zeros(self, nrows: int, ncols: int) -> Matrix:
        if self.prime is None:
            return flint.fmpq_mat(nrows, ncols)
        return flint.nmod_mat(nrows, ncols, self.prime)

    def identity(self, n: int) -> Matrix:
        entries = [0] * (n * n)
        for i in range(n):
            entries[i * n + i] = 1
        return self.from_entries(n, n, entries)

    def from_sparse(self, nrows: int, ncols: int, items: dict) -> Matrix:
        entries = [0] * (nrows * ncols)
        for (i, j), v in items.items():
            entries[i * ncols + j] = v
        return self.from_entries(nrows, ncols, entries)

    def column(self, values) -> Matrix:
        values = list(values)
        return self.from_entries(len(values), 1, values)


RATIONAL = Field()


def field_of(m: Matrix) -> Field:
    if isinstance(m, flint.nmod_mat):
        return Field(int(m.modulus()))
    return RATIONAL


def shape(m: Matrix) -> tuple[int, int]:
    return m.nrows(), m.ncols()


def to_rows(m: Matrix) -> list[list]:
    r, c = shape(m)
    e = m.entries()
    return [e[i * c:(i + 1) * c] for i in range(r)]


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for x in m.entries())


def transpose(m: Matrix) -> Matrix:
    return m.transpose()


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the strictly increasing pivot columns."""
    nrows, ncols = shape(m)
    if nrows == 0 or ncols == 0:
        return m, []
    reduced, rk = m.rref()
    e = reduced.entries()
    pivots = []
    for i in range(rk):
        row = e[i * ncols:(i + 1) * ncols]
        start = pivots[-1] + 1 if pivots else 0
        for j in range(start, ncols):
            if row[j] != 0:
                pivots.append(j)
                break
    return reduced, pivots


def rank(m: Matrix) -> int:
    nrows, ncols = shape(m)
    if nrows == 0 or ncols == 0:
        return 0
    return m.rank()


def kernel_matrix(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the null space of ``m``."""
    nrows, ncols = shape(m)
    fld = field_of(m)
    if nrows == 0:
        return fld.identity(ncols)
    reduced, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    e = reduced.entries()
    out = [0] * (ncols * len(free))
    k = len(free)
    for col, f in enumerate(free):
        out[f * k + col] = 1
        for i, p in enumerate(pivots):
            v = e[i * ncols + f]
            if v != 0:
                out[p * k + col] = -v
    return fld.from_entries(ncols, k, out)


def kernel_basis(m: Matrix) -> list[list]:
    """Null space basis as a list of column vectors (lists of scalars)."""
    k = kernel_matrix(m)
    rows = to_rows(k)
    return [[rows[i][j] for i in range(len(rows))] for j in range(k.ncols())]


def solve(m: Matrix, b) -> Matrix | None:
    """One exact solution of ``m x = b`` or None when inconsistent.

    ``b`` may be a column matrix or a sequence; the answer is a column matrix.
    """
    nrows, ncols = shape(m)
    fld = field_of(m)
    if not isinstance(b, (flint.fmpq_mat, flint.nmod_mat)):
        b = fld.column(b)
    if b.nrows() != nrows:
        raise ValueError(f"dimension mismatch: matrix has {nrows} rows, right side {b.nrows()}")
    nb = b.ncols()
    aug = hstack([m, b], nrows)
    reduced, pivots = rref(aug)
    if any(p >= ncols for p in pivots):
        return None
    e = reduced.entries()
    w = ncols + nb
    out = [0] * (ncols * nb)
    for i, p in enumerate(pivots):
        for j in range(nb):
            out[p * nb + j] = e[i * w + ncols + j]
    return fld.from_entries(ncols, nb, out)


def hstack(mats: list[Matrix], nrows: int, fld: Field | None = None) -> Matrix:
    if fld is None:
        fld = field_of(mats[0]) if mats else RATIONAL
    ncols = sum(m.ncols() for m in mats)
    out = []
    rows = [to_rows(m) for m in mats]
    for i in range(nrows):
        for r in rows:
            out.extend(r[i])
    return fld.from_entries(nrows, ncols, out)


def vstack(mats: list[Matrix], ncols: int, fld: Field | None = None) -> Matrix:
    if fld is None:
        fld = field_of(mats[0]) if mats else RATIONAL
    nrows = sum(m.nrows() for m in mats)
    out = []
    for m in mats:
        out.extend(m.entries())
    return fld.from_entries(nrows, ncols, out)


def block(blocks: list[list[Matrix]], row_sizes: list[int], col_sizes: list[int], fld: Field) -> Matrix:
    """Assemble a block matrix; ``None`` entries stand for zero blocks."""
    nrows, ncols = sum(row_sizes), sum(col_sizes)
    out = [0] * (nrows * ncols)
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            m = blocks[bi][bj]
            if m is not None and rs and cs:
                e = m.entries()
                for i in range(rs):
                    base = (r0 + i) * ncols + c0
                    row = e[i * cs:(i + 1) * cs]
                    for j, v in enumerate(row):
                        if v != 0:
                            out[base + j] = v
            c0 += cs
        r0 += rs
    return fld.from_entries(nrows, ncols, out)


def block_diag(mats: list[Matrix], fld: Field) -> Matrix:
    rs = [m.nrows() for m in mats]
    cs = [m.ncols() for m in mats]
    blocks = [[mats[i] if i == j else None for j in range(len(mats))] for i in range(len(mats))]
    return block(blocks, rs, cs, fld)


def submatrix(m: Matrix, rows, cols) -> Matrix:
    rows, cols = list(rows), list(cols)
    c = m.ncols()
    e = m.entries()
    return field_of(m).from_entries(len(rows), len(cols), [e[i * c + j] for i in rows for j in cols])


def pivot_columns(m: Matrix) -> list[int]:
    """Indices of a maximal linearly independent set of columns (first-come)."""
    return rref(m)[1]


def column_basis(m: Matrix) -> Matrix:
    """Columns of ``m`` forming a basis of its column space."""
    return submatrix(m, range(m.nrows()), pivot_columns(m))


def complement_columns(basis: Matrix, dim: int) -> list[int]:
    """Standard basis indices completing the column span of ``basis`` to the whole space."""
    fld = field_of(basis)
    aug = hstack([basis, fld.identity(dim)], dim, fld)
    k = basis.ncols()
    return [p - k for p in pivot_columns(aug) if p >= k]


def coordinates(basis: Matrix, vectors: Matrix) -> Matrix:
    """Coordinates of the columns of ``vectors`` in the independent columns of ``basis``."""
    x = solve(basis, vectors)
    if x is None:
        raise ValueError("vectors are not in the span of the basis")
    return x
