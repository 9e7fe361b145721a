"""
Exact dense linear algebra over a prime field F_p.

Matrices are thin immutable wrappers around int64 numpy arrays whose entries
are kept reduced into [0, p).  Everything here is small (dimensions of a few
dozen at most), so elimination is plain row reduction with numpy row ops.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import InputError


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise InputError(f"modulus {p!r} is not prime")
    return int(p)


class FieldScalar:
    """A residue mod a prime.  Only used at API edges; matrices store raw ints."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = check_prime(p)
        self.value = int(value) % self.p

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            if other.p != self.p:
                raise InputError("mixed moduli")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return FieldScalar(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldScalar(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldScalar(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldScalar(-self.value, self.p)

    def inverse(self) -> "FieldScalar":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldScalar(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldScalar(self._coerce(other), self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class Matrix:
    """Immutable rows x cols matrix over F_p."""

    __slots__ = ("a", "p")

    def __init__(self, entries, p: int = 2, *, shape=None):
        self.p = check_prime(p)
        a = np.array(entries, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim != 2:
            raise InputError(f"matrix must be 2-dimensional, got shape {a.shape}")
        a = np.mod(a, self.p)
        a.setflags(write=False)
        self.a = a

    @classmethod
    def _wrap(cls, a: np.ndarray, p: int) -> "Matrix":
        # trusted constructor: a is already reduced and owned by us
        m = object.__new__(cls)
        a.setflags(write=False)
        m.a = a
        m.p = p
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "Matrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "Matrix":
        return cls._wrap(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __getitem__(self, idx):
        return int(self.a[idx])

    def tolist(self):
        return self.a.tolist()

    def is_zero(self) -> bool:
        return not self.a.any()

    def _same_field(self, other: "Matrix"):
        if self.p != other.p:
            raise InputError(f"moduli differ: {self.p} vs {other.p}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix._wrap((self.a @ other.a) % self.p, self.p)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise InputError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap((self.a + other.a) % self.p, self.p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise InputError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._wrap((self.a - other.a) % self.p, self.p)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap((-self.a) % self.p, self.p)

    def scale(self, c: int) -> "Matrix":
        return Matrix._wrap((self.a * (int(c) % self.p)) % self.p, self.p)

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.a.T.copy(), self.p)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((self.p, self.shape, self.a.tobytes()))

    def __repr__(self):
        return f"Matrix({self.a.tolist()}, p={self.p})"


def hstack(blocks, rows: int, p: int) -> Matrix:
    if not blocks:
        return Matrix.zeros(rows, 0, p)
    return Matrix._wrap(np.hstack([b.a for b in blocks]), p)


def vstack(blocks, cols: int, p: int) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, cols, p)
    return Matrix._wrap(np.vstack([b.a for b in blocks]), p)


def block_diag(blocks, p: int) -> Matrix:
    r = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for b in blocks:
        out[i:i + b.rows, j:j + b.cols] = b.a
        i += b.rows
        j += b.cols
    return Matrix._wrap(out, p)


def kron(x: Matrix, y: Matrix) -> Matrix:
    return Matrix._wrap(np.kron(x.a, y.a) % x.p, x.p)


def _rref(a: np.ndarray, p: int, ncols: int | None = None):
    """Reduced row echelon form of a copy of `a`.

    Pivots are only searched in the first `ncols` columns (all by default),
    which is what augmented systems need.  Returns (R, pivot_columns).
    """
    r = np.array(a, dtype=np.int64, copy=True) % p
    nrows, total = r.shape
    ncols = total if ncols is None else ncols
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), p - 2, p)
        r[row] = (r[row] * inv) % p
        factors = r[:, col].copy()
        factors[row] = 0
        if factors.any():
            r = (r - np.outer(factors, r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rref(m: Matrix):
    r, piv = _rref(m.a, m.p)
    return Matrix._wrap(r, m.p), piv


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref(m.a, m.p)[1])


def nullspace_basis(m: Matrix) -> Matrix:
    """Columns form a basis of {x : m x = 0}, one per free column of the RREF."""
    n = m.cols
    if m.rows == 0:
        return Matrix.identity(n, m.p)
    r, piv = _rref(m.a, m.p)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        out[fc, k] = 1
        for i, pc in enumerate(piv):
            out[pc, k] = (-r[i, fc]) % m.p
    return Matrix._wrap(out, m.p)


def column_space_basis(m: Matrix) -> Matrix:
    """Reduced column echelon basis of the column space (canonical for the subspace)."""
    if m.cols == 0 or m.rows == 0:
        return Matrix.zeros(m.rows, 0, m.p)
    r, piv = _rref(m.a.T, m.p)
    return Matrix._wrap(r[:len(piv)].T.copy(), m.p)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Some x with a @ x == b, or None when the system is inconsistent."""
    if a.p != b.p:
        raise InputError(f"moduli differ: {a.p} vs {b.p}")
    if a.rows != b.rows:
        raise InputError(f"row counts differ: {a.rows} vs {b.rows}")
    n = a.cols
    if a.rows == 0:
        return Matrix.zeros(n, b.cols, a.p)
    aug = np.hstack([a.a, b.a])
    r, piv = _rref(aug, a.p, ncols=n)
    k = len(piv)
    if r[k:, n:].any():
        return None
    x = np.zeros((n, b.cols), dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, n:]
    return Matrix._wrap(x, a.p)


def quotient_map(subspace_basis: Matrix, ambient_dim: int) -> Matrix:
    """Surjection F_p^n -> F_p^(n-k) whose kernel is the span of the given columns."""
    if subspace_basis.rows != ambient_dim:
        raise InputError(
            f"basis has {subspace_basis.rows} rows, ambient dimension is {ambient_dim}")
    if rank(subspace_basis) != subspace_basis.cols:
        raise InputError("subspace basis columns are linearly dependent")
    return nullspace_basis(subspace_basis.T).T


def is_injective(m: Matrix) -> bool:
    return rank(m) == m.cols


def is_surjective(m: Matrix) -> bool:
    return rank(m) == m.rows


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise InputError(f"non-square matrix {m.shape} has no inverse")
    x = solve(m, Matrix.identity(m.rows, m.p))
    if x is None or rank(m) != m.rows:
        raise InputError("matrix is singular")
    return x


def same_column_space(a: Matrix, b: Matrix) -> bool:
    return column_space_basis(a) == column_space_basis(b)


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> Matrix:
    return Matrix._wrap(rng.integers(0, p, size=(rows, cols), dtype=np.int64), p)
