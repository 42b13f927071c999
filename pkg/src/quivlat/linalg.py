"""Exact linear algebra over the rationals and over prime fields.

Everything downstream (Hom spaces, trace and reject submodules, lattice
membership) reduces to row reduction, kernels, images and subspace algebra,
so this module keeps those primitives exact and canonical: subspaces are
stored as reduced row echelon bases, which makes equality decidable by
tuple comparison.

Scalars are `fractions.Fraction` for the rational field and plain ints in
``range(p)`` for GF(p). Matrices are immutable row-major tuples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

_SMALL_PRIMES = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97}


class RationalField:
    """The field of rational numbers with Fraction scalars."""

    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("quivlat.QQ")


class PrimeField:
    """GF(p) for a prime p <= 97; elements are ints reduced mod p."""

    def __init__(self, p: int):
        if p not in _SMALL_PRIMES:
            raise ValueError(f"p must be a prime <= 97, got {p}")
        self.p = p
        self.name = f"GF({p})"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("quivlat.GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


class Matrix:
    """Immutable exact matrix tied to a field.

    ``data`` is a tuple of row tuples; a 0 x n or n x 0 matrix is legal and
    shows up constantly (maps in and out of zero spaces at a vertex).
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows: int, cols: int, entries: Iterable[Iterable]):
        data = tuple(tuple(field.from_int(e) if isinstance(e, int) else e for e in row)
                     for row in entries)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"shape mismatch: expected {rows}x{cols}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def zero(cls, field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return cls(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols required for an empty row list")
            cols = len(rows[0])
        return cls(field, len(rows), cols, rows)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.data == other.data and self.cols == other.cols)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"

    def entry(self, i: int, j: int):
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = f.zero()
                for k in range(self.cols):
                    acc = f.add(acc, f.mul(self.data[i][k], other.data[k][j]))
                row.append(acc)
            out.append(row)
        return Matrix(f, self.rows, other.cols, out)

    def add(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [[f.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)])

    def sub(self, other: "Matrix") -> "Matrix":
        f = self.field
        return self.add(other.scale(f.neg(f.one())))

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [[f.mul(c, e) for e in row] for row in self.data])

    def apply(self, vec: Sequence) -> tuple:
        """Multiply this matrix by a column vector given as a flat sequence."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        out = []
        for i in range(self.rows):
            acc = f.zero()
            for k in range(self.cols):
                acc = f.add(acc, f.mul(self.data[i][k], vec[k]))
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(e) for row in self.data for e in row)


def row_reduce(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns the RREF matrix together with the tuple of pivot column indices.
    Zero rows sink to the bottom; pivots are scaled to 1 and their columns
    cleared, so the result is a canonical representative of the row space.
    """
    f = m.field
    work = [list(row) for row in m.data]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, m.rows):
            if not f.is_zero(work[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = f.inv(work[r][c])
        work[r] = [f.mul(inv, e) for e in work[r]]
        for i in range(m.rows):
            if i != r and not f.is_zero(work[i][c]):
                factor = work[i][c]
                work[i] = [f.sub(a, f.mul(factor, b)) for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Matrix(f, m.rows, m.cols, work), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(row_reduce(m)[1])


def kernel_basis(m: Matrix) -> list[tuple]:
    """Canonical basis of the right null space {x : m x = 0}.

    One basis vector per free column, built from the RREF in free-column
    order with a 1 in the free coordinate.
    """
    f = m.field
    rref, pivots = row_reduce(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [f.zero()] * m.cols
        vec[fc] = f.one()
        for i, pc in enumerate(pivots):
            vec[pc] = f.neg(rref.data[i][fc])
        basis.append(tuple(vec))
    return basis


def image_basis(m: Matrix) -> list[tuple]:
    """Canonical (echelon) basis of the column space, as row vectors."""
    rref, pivots = row_reduce(m.transpose())
    return [rref.data[i] for i in range(len(pivots))]


def solve(m: Matrix, target: Sequence) -> tuple | None:
    """One solution x of m x = target, or None if the system is inconsistent."""
    f = m.field
    aug = Matrix(f, m.rows, m.cols + 1,
                 [list(m.data[i]) + [target[i]] for i in range(m.rows)])
    rref, pivots = row_reduce(aug)
    if m.cols in pivots:
        return None
    x = [f.zero()] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = rref.data[i][m.cols]
    return tuple(x)


class Subspace:
    """A subspace of field^n held as a reduced row echelon basis.

    Equal subspaces compare equal because the RREF basis is canonical.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient: int, vectors: Iterable[Sequence] = ()):
        vecs = [tuple(field.from_int(e) if isinstance(e, int) else e for e in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValueError("vector does not live in the ambient space")
        if vecs:
            rref, pivots = row_reduce(Matrix(field, len(vecs), ambient, vecs))
            self.basis = tuple(rref.data[i] for i in range(len(pivots)))
            self.pivots = pivots
        else:
            self.basis = ()
            self.pivots = ()
        self.field = field
        self.ambient = ambient

    @classmethod
    def zero(cls, field, ambient: int) -> "Subspace":
        return cls(field, ambient)

    @classmethod
    def full(cls, field, ambient: int) -> "Subspace":
        return cls(field, ambient, Matrix.identity(field, ambient).data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def contains(self, vec: Sequence) -> bool:
        f = self.field
        v = [f.from_int(e) if isinstance(e, int) else e for e in vec]
        for brow, p in zip(self.basis, self.pivots):
            if not f.is_zero(v[p]):
                c = v[p]
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, brow)]
        return all(f.is_zero(e) for e in v)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def reduce(self, vec: Sequence) -> tuple:
        """Canonical representative of vec modulo this subspace."""
        f = self.field
        v = [f.from_int(e) if isinstance(e, int) else e for e in vec]
        for brow, p in zip(self.basis, self.pivots):
            if not f.is_zero(v[p]):
                c = v[p]
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, brow)]
        return tuple(v)

    def coords(self, vec: Sequence) -> tuple | None:
        """Coordinates of vec in this subspace's basis, or None if outside."""
        f = self.field
        v = [f.from_int(e) if isinstance(e, int) else e for e in vec]
        out = []
        for brow, p in zip(self.basis, self.pivots):
            c = v[p]
            out.append(c)
            if not f.is_zero(c):
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, brow)]
        if any(not f.is_zero(e) for e in v):
            return None
        return tuple(out)

    def add(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient)
        # u = a . basis_self = b . basis_other; solve the stacked transpose system.
        f = self.field
        k, m = self.dim, other.dim
        stacked = Matrix(f, self.ambient, k + m,
                         [[self.basis[a][i] for a in range(k)] +
                          [f.neg(other.basis[b][i]) for b in range(m)]
                          for i in range(self.ambient)])
        vecs = []
        for kv in kernel_basis(stacked):
            coeffs = kv[:k]
            vec = [f.zero()] * self.ambient
            for a, c in enumerate(coeffs):
                if not f.is_zero(c):
                    vec = [f.add(x, f.mul(c, y)) for x, y in zip(vec, self.basis[a])]
            vecs.append(vec)
        return Subspace(f, self.ambient, vecs)

    def _check(self, other: "Subspace"):
        if self.field != other.field or self.ambient != other.ambient:
            raise ValueError("subspaces live in different ambient spaces")

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient == other.ambient and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.field!r}^{self.ambient})"
