"""Exact linear algebra over Q and GF(p).

Matrices wrap ``python-flint`` dense matrices (``fmpq_mat`` / ``nmod_mat``).
Everything above this module reduces its questions to row reduction here.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

import flint


class Field:
    """Base field descriptor."""

    characteristic: int = 0
    name: str = "?"

    def scalar(self, x):
        raise NotImplementedError

    def _mat(self, rows: int, cols: int, entries=None):
        raise NotImplementedError

    def parse(self, text: str):
        return self.scalar(Fraction(text.strip()))

    def __repr__(self):
        return self.name

    def random_scalar(self, rng: random.Random):
        raise NotImplementedError


class Rationals(Field):
    characteristic = 0
    name = "Q"

    def scalar(self, x):
        if isinstance(x, flint.fmpq):
            return x
        if isinstance(x, Fraction):
            return flint.fmpq(x.numerator, x.denominator)
        if isinstance(x, str):
            return self.parse(x)
        return flint.fmpq(int(x))

    def _mat(self, rows, cols, entries=None):
        if entries is None:
            return flint.fmpq_mat(rows, cols)
        return flint.fmpq_mat(rows, cols, entries)

    def random_scalar(self, rng):
        return flint.fmpq(rng.randint(-9, 9))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p: int):
        p = int(p)
        if p < 2 or p >= 2**31 or not flint.fmpz(p).is_prime():
            raise ValueError(f"GF({p}): modulus must be a prime below 2^31")
        self.characteristic = p
        self.p = p
        self.name = f"GF({p})"

    def scalar(self, x):
        if isinstance(x, flint.nmod):
            return x
        if isinstance(x, flint.fmpq):
            return flint.nmod(int(x.p), self.p) / flint.nmod(int(x.q), self.p)
        if isinstance(x, Fraction):
            return flint.nmod(x.numerator, self.p) / flint.nmod(x.denominator, self.p)
        if isinstance(x, str):
            return self.parse(x)
        return flint.nmod(int(x), self.p)

    def _mat(self, rows, cols, entries=None):
        if entries is None:
            return flint.nmod_mat(rows, cols, self.p)
        return flint.nmod_mat(rows, cols, [int(e) for e in entries], self.p)

    def random_scalar(self, rng):
        return flint.nmod(rng.randrange(self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_text(text: str) -> Field:
    parts = text.split()
    if parts == ["Q"]:
        return QQ
    if len(parts) == 2 and parts[0] == "GF":
        return GF(int(parts[1]))
    raise ValueError(f"unknown field {text!r}")


def _canon_entry(field, x):
    if isinstance(field, PrimeField):
        return int(x)
    return x


class Matrix:
    """Dense matrix over a `Field`; immutable by convention."""

    __slots__ = ("field", "m")

    def __init__(self, field: Field, m):
        self.field = field
        self.m = m

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, field._mat(rows, cols))

    @classmethod
    def identity(cls, field, n):
        m = field._mat(n, n)
        one = field.scalar(1)
        for i in range(n):
            m[i, i] = one
        return cls(field, m)

    @classmethod
    def from_rows(cls, field, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        r = len(rows)
        c = cols if cols is not None else (len(rows[0]) if rows else 0)
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged matrix rows")
            flat.extend(field.scalar(x) for x in row)
        return cls(field, field._mat(r, c, flat) if r and c else field._mat(r, c))

    @classmethod
    def from_entries(cls, field, rows, cols, flat):
        if rows == 0 or cols == 0:
            return cls(field, field._mat(rows, cols))
        return cls(field, field._mat(rows, cols, list(flat)))

    @classmethod
    def column(cls, field, values):
        values = list(values)
        return cls.from_entries(field, len(values), 1, [field.scalar(v) for v in values])

    @classmethod
    def random(cls, field, rows, cols, rng: random.Random, density: float = 1.0):
        flat = []
        zero = field.scalar(0)
        for _ in range(rows * cols):
            flat.append(field.random_scalar(rng) if rng.random() < density else zero)
        return cls.from_entries(field, rows, cols, flat)

    # shape / access -------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.m.nrows()

    @property
    def cols(self) -> int:
        return self.m.ncols()

    @property
    def shape(self):
        return (self.m.nrows(), self.m.ncols())

    def entries(self) -> list:
        if self.rows == 0 or self.cols == 0:
            return []
        return self.m.entries()

    def table(self) -> list[list]:
        if self.rows == 0:
            return []
        if self.cols == 0:
            return [[] for _ in range(self.rows)]
        return self.m.table()

    def __getitem__(self, ij):
        return self.m[ij]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and (self.rows == 0 or self.cols == 0 or self.m == other.m)

    def __hash__(self):
        return hash((self.shape, tuple(str(x) for x in self.entries())))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.table()})"

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        _check_shape(self, other)
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix(self.field, self.m + other.m)

    def __sub__(self, other):
        _check_shape(self, other)
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix(self.field, self.m - other.m)

    def __neg__(self):
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix(self.field, -self.m)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix(self.field, self.m * other.m)

    def scale(self, c):
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix(self.field, self.m * self.field.scalar(c))

    def T(self):
        if self.rows == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.cols, self.rows)
        return Matrix(self.field, self.m.transpose())

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if self.rows == 0:
            return self.field.scalar(1)
        return self.m.det()

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.det() != 0

    def inverse(self):
        if self.rows == 0:
            return self
        return Matrix(self.field, self.m.inv())

    def charpoly(self):
        return self.m.charpoly()

    def power(self, k: int):
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # slicing / assembly ---------------------------------------------------
    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        rows, cols = list(rows), list(cols)
        if not rows or not cols:
            return Matrix.zeros(self.field, len(rows), len(cols))
        if 4 * len(rows) * len(cols) < self.rows * self.cols:
            m = self.m
            flat = [m[i, j] for i in rows for j in cols]
        else:
            t = self.table()
            flat = [t[i][j] for i in rows for j in cols]
        return Matrix.from_entries(self.field, len(rows), len(cols), flat)

    def block(self, r0, r1, c0, c1):
        return self.submatrix(range(r0, r1), range(c0, c1))

    def col(self, j):
        return self.submatrix(range(self.rows), [j])

    def flatten(self):
        """Row-major entries as a column vector."""
        return Matrix.from_entries(self.field, self.rows * self.cols, 1, self.entries())

    def reshape(self, rows, cols):
        return Matrix.from_entries(self.field, rows, cols, self.entries())


def _check_shape(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def hstack(field, mats: Sequence[Matrix], rows: int | None = None) -> Matrix:
    mats = list(mats)
    if rows is None:
        if not mats:
            raise ValueError("hstack of nothing needs a row count")
        rows = mats[0].rows
    cols = sum(m.cols for m in mats)
    tables = [m.table() for m in mats]
    flat = []
    for i in range(rows):
        for t in tables:
            flat.extend(t[i])
    return Matrix.from_entries(field, rows, cols, flat)


def vstack(field, mats: Sequence[Matrix], cols: int | None = None) -> Matrix:
    mats = list(mats)
    if cols is None:
        if not mats:
            raise ValueError("vstack of nothing needs a column count")
        cols = mats[0].cols
    flat = []
    rows = 0
    for m in mats:
        if m.cols != cols:
            raise ValueError("vstack column mismatch")
        flat.extend(m.entries())
        rows += m.rows
    return Matrix.from_entries(field, rows, cols, flat)


def block_matrix(field, blocks: Sequence[Sequence[Matrix | None]], row_sizes, col_sizes) -> Matrix:
    """Assemble from a grid of blocks; ``None`` means zero."""
    zero = field.scalar(0)
    R, C = sum(row_sizes), sum(col_sizes)
    flat = [zero] * (R * C)
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            b = blocks[bi][bj]
            if b is not None and rs and cs:
                if b.shape != (rs, cs):
                    raise ValueError(f"block ({bi},{bj}) has shape {b.shape}, expected {(rs, cs)}")
                t = b.table()
                for i in range(rs):
                    base = (r0 + i) * C + c0
                    flat[base:base + cs] = t[i]
            c0 += cs
        r0 += rs
    return Matrix.from_entries(field, R, C, flat)


def block_diag(field, mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    n = len(mats)
    grid = [[mats[i] if i == j else None for j in range(n)] for i in range(n)]
    return block_matrix(field, grid, [m.rows for m in mats], [m.cols for m in mats])


def embed(field, m: Matrix, rows: int, cols: int, row_idx: Sequence[int], col_idx: Sequence[int]) -> Matrix:
    """Zero matrix of the given shape with ``m`` placed at the index lists."""
    zero = field.scalar(0)
    flat = [zero] * (rows * cols)
    t = m.table()
    for a, i in enumerate(row_idx):
        for b, j in enumerate(col_idx):
            flat[i * cols + j] = t[a][b]
    return Matrix.from_entries(field, rows, cols, flat)


def kron(a: Matrix, b: Matrix) -> Matrix:
    field = a.field
    ta, tb = a.table(), b.table()
    R, C = a.rows * b.rows, a.cols * b.cols
    zero = field.scalar(0)
    flat = [zero] * (R * C)
    for i in range(a.rows):
        for j in range(a.cols):
            x = ta[i][j]
            if x == 0:
                continue
            for k in range(b.rows):
                base = (i * b.rows + k) * C + j * b.cols
                rowb = tb[k]
                for l in range(b.cols):
                    if rowb[l] != 0:
                        flat[base + l] = x * rowb[l]
    return Matrix.from_entries(field, R, C, flat)


# ---------------------------------------------------------------------------
# row reduction


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (only the nonzero rows are kept)."""
    if m.rows == 0 or m.cols == 0:
        return Matrix.zeros(m.field, 0, m.cols), []
    R, r = m.m.rref()
    t = R.table()
    pivots = []
    for i in range(r):
        row = t[i]
        j = pivots[-1] + 1 if pivots else 0
        while row[j] == 0:
            j += 1
        pivots.append(j)
    flat = [x for i in range(r) for x in t[i]]
    return Matrix.from_entries(m.field, r, m.cols, flat), pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.m.rank()


def nullspace(m: Matrix) -> tuple[Matrix, list[int]]:
    """Right null space as the columns of a matrix, plus the free columns.

    Column ``k`` has a one at free column ``free[k]`` and zeros at the other
    free columns, so coordinates of a null vector are its entries at ``free``.
    """
    field = m.field
    n = m.cols
    R, piv = rref(m)
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    t = R.table()
    zero, one = field.scalar(0), field.scalar(1)
    flat = [zero] * (n * len(free))
    k = len(free)
    for c, j in enumerate(free):
        flat[j * k + c] = one
        for i, pj in enumerate(piv):
            v = t[i][j]
            if v != 0:
                flat[pj * k + c] = -v
    return Matrix.from_entries(field, n, k, flat), free


def kernel_basis(m: Matrix) -> list[Matrix]:
    """Basis of the right null space as column vectors; ``len == cols - rank``."""
    K, _ = nullspace(m)
    return [K.col(j) for j in range(K.cols)]


def solve(m: Matrix, b: Matrix) -> Matrix | None:
    """Some ``x`` with ``m @ x == b`` (columns of ``b`` solved jointly), or ``None``."""
    if b.rows != m.rows:
        raise ValueError(f"dimension mismatch: {m.shape} vs right-hand side {b.shape}")
    field = m.field
    n, k = m.cols, b.cols
    if m.rows == 0:
        return Matrix.zeros(field, n, k)
    aug = hstack(field, [m, b])
    R, piv = rref(aug)
    if piv and piv[-1] >= n:
        return None
    t = R.table()
    zero = field.scalar(0)
    flat = [zero] * (n * k)
    for i, pj in enumerate(piv):
        row = t[i]
        for c in range(k):
            flat[pj * k + c] = row[n + c]
    return Matrix.from_entries(field, n, k, flat)


def column_space(m: Matrix) -> Matrix:
    """Independent columns spanning the column space (reduced echelon basis)."""
    R, _ = rref(m.T())
    return R.T()


def row_space(m: Matrix) -> Matrix:
    R, _ = rref(m)
    return R


def complement_columns(sub: Matrix, n: int) -> list[int]:
    """Coordinates whose unit vectors complete the columns of ``sub`` to a basis of k^n."""
    if sub.cols == 0:
        return list(range(n))
    _, piv = rref(sub.T())
    ps = set(piv)
    return [j for j in range(n) if j not in ps]


def unit_columns(field, n: int, idx: Sequence[int]) -> Matrix:
    one = field.scalar(1)
    k = len(idx)
    flat = [field.scalar(0)] * (n * k)
    for c, j in enumerate(idx):
        flat[j * k + c] = one
    return Matrix.from_entries(field, n, k, flat)


def intersect(a: Matrix, b: Matrix) -> Matrix:
    """Basis of the intersection of two column spaces."""
    field = a.field
    if a.cols == 0 or b.cols == 0:
        return Matrix.zeros(field, a.rows, 0)
    K, _ = nullspace(hstack(field, [a, -b]))
    return column_space(a @ K.block(0, a.cols, 0, K.cols))


class Coordinates:
    """Coordinate extraction for a fixed subspace given by independent columns."""

    def __init__(self, basis: Matrix):
        self.basis = basis
        n, k = basis.shape
        R, piv = rref(basis.T())
        if len(piv) != k:
            raise ValueError("basis columns are dependent")
        self.pivots = piv
        # basis^T restricted to pivot columns is invertible
        Bp = basis.submatrix(piv, range(k))
        self._inv = Bp.inverse()

    def __call__(self, v: Matrix, check: bool = True) -> Matrix:
        """Coordinates (k x c) of the columns of ``v`` in the basis."""
        c = self._inv @ v.submatrix(self.pivots, range(v.cols))
        if check and not (self.basis @ c) == v:
            raise ValueError("vector not in the subspace")
        return c


def values_to_matrix(field, values: Iterable) -> Matrix:
    values = [field.scalar(v) for v in values]
    return Matrix.from_entries(field, len(values), 1, values)
