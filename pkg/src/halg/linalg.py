"""Dense exact linear algebra over prime fields F_p.

Everything downstream (Hom spaces, resolutions, Ext) reduces to the three
kernels here: reduced row echelon form, null space bases, and linear solves.
Matrices follow the column-vector convention: a linear map V -> W is stored
as a dim(W) x dim(V) matrix acting on column vectors.

All values are immutable after construction and all operations are pure, so
they are safe to share across threads without coordination.
"""

from __future__ import annotations

import numpy as np

__all__ = ["PrimeField", "Mat", "rref", "kernel_basis", "solve"]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


_MAX_MODULUS = 2**31 - 1  # keeps products inside int64


class PrimeField:
    """The field F_p for a machine-word prime p."""

    __slots__ = ("p", "_inverses")

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        if p > _MAX_MODULUS:
            raise ValueError(f"modulus {p} exceeds machine-word bound {_MAX_MODULUS}")
        self.p = p
        self._inverses: dict[int, int] = {}

    def inv(self, x: int) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        cached = self._inverses.get(x)
        if cached is None:
            cached = pow(x, self.p - 2, self.p)
            self._inverses[x] = cached
        return cached

    def mat(self, data, rows: int | None = None, cols: int | None = None) -> "Mat":
        a = np.array(data, dtype=np.int64)
        if rows is not None or cols is not None:
            a = a.reshape((rows, cols))
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {a.shape}")
        return Mat(self, a % self.p)

    def zeros(self, rows: int, cols: int) -> "Mat":
        return Mat(self, np.zeros((rows, cols), dtype=np.int64))

    def identity(self, n: int) -> "Mat":
        return Mat(self, np.eye(n, dtype=np.int64))

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class Mat:
    """Immutable dense matrix over a prime field."""

    __slots__ = ("field", "a", "_rref")

    def __init__(self, field: PrimeField, a: np.ndarray):
        if a.dtype != np.int64:
            a = a.astype(np.int64)
        a = a % field.p
        a.flags.writeable = False
        self.field = field
        self.a = a
        self._rref: tuple[Mat, tuple[int, ...]] | None = None

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        return Mat(self.field, (self.a @ other.a) % self.field.p)

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        return Mat(self.field, self.a + other.a)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        return Mat(self.field, self.a - other.a)

    def __neg__(self) -> "Mat":
        return Mat(self.field, -self.a)

    def scale(self, c: int) -> "Mat":
        return Mat(self.field, self.a * (int(c) % self.field.p))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and other.field == self.field
            and other.a.shape == self.a.shape
            and bool(np.array_equal(other.a, self.a))
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.a.shape, self.a.tobytes()))

    def is_zero(self) -> bool:
        return not self.a.any()

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.a.T.copy())

    def col(self, j: int) -> "Mat":
        return Mat(self.field, self.a[:, j : j + 1].copy())

    def hstack(self, other: "Mat") -> "Mat":
        self._check_field(other)
        return Mat(self.field, np.hstack([self.a, other.a]))

    def vstack(self, other: "Mat") -> "Mat":
        self._check_field(other)
        return Mat(self.field, np.vstack([self.a, other.a]))

    def kron(self, other: "Mat") -> "Mat":
        self._check_field(other)
        return Mat(self.field, np.kron(self.a, other.a) % self.field.p)

    def ravel(self) -> "Mat":
        """Row-major flattening into a single column vector."""
        return Mat(self.field, self.a.reshape(-1, 1).copy())

    def rank(self) -> int:
        return len(self.rref()[1])

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        if self._rref is None:
            self._rref = rref(self)
        return self._rref

    def kernel_basis(self) -> "Mat":
        return kernel_basis(self)

    def solve(self, b: "Mat") -> "Mat | None":
        return solve(self, b)

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        x = solve(self, self.field.identity(self.rows))
        if x is None:
            raise ValueError("matrix is not invertible")
        return x

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def __repr__(self) -> str:
        return f"Mat(p={self.field.p}, {self.a.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def _check_field(self, other: "Mat") -> None:
        if other.field != self.field:
            raise ValueError("mixed moduli in matrix operation")


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    p = m.field.p
    a = m.a.copy()
    a.flags.writeable = True
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = m.field.inv(int(a[r, c]))
        a[r] = (a[r] * inv) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    out = Mat(m.field, a)
    out._rref = (out, tuple(pivots))
    return out, tuple(pivots)


def kernel_basis(m: Mat) -> Mat:
    """Columns form a basis of the null space {x : m @ x = 0}."""
    r, pivots = m.rref()
    free = [c for c in range(m.cols) if c not in set(pivots)]
    k = m.field.zeros(m.cols, len(free)).a.copy()
    k.flags.writeable = True
    for j, c in enumerate(free):
        k[c, j] = 1
        for i, pc in enumerate(pivots):
            k[pc, j] = (-int(r.a[i, c])) % m.field.p
    return Mat(m.field, k)


def solve(m: Mat, b: Mat) -> Mat | None:
    """A particular solution X of m @ X = b, or None when b is outside the
    column space of m (per-column check via the augmented echelon form)."""
    if b.rows != m.rows:
        raise ValueError(f"row counts differ: {m.rows} vs {b.rows}")
    aug, pivots = rref(m.hstack(b))
    if any(c >= m.cols for c in pivots):
        return None
    x = m.field.zeros(m.cols, b.cols).a.copy()
    x.flags.writeable = True
    for i, c in enumerate(pivots):
        x[c, :] = aug.a[i, m.cols :]
    return Mat(m.field, x)
