"""Dense linear algebra over finite fields.

Every function takes the field object first; any object exposing ``add``,
``sub``, ``neg``, ``mul`` and ``inv`` on integer-encoded elements works.
Matrices are lists of rows, vectors are tuples. Pivoting picks the first
nonzero entry in the column.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

Vector = tuple
Matrix = list


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def mat_mul(F, A, B) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = zeros(len(A), cols)
    add, mul = F.add, F.mul
    for i, row in enumerate(A):
        acc = out[i]
        for k in range(inner):
            a = row[k]
            if a:
                brow = B[k]
                for j in range(cols):
                    b = brow[j]
                    if b:
                        acc[j] = add(acc[j], mul(a, b))
    return out


def mat_vec(F, A, x) -> Vector:
    return tuple(dot(F, row, x) for row in A)


def dot(F, u, v) -> int:
    add, mul = F.add, F.mul
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = add(acc, mul(a, b))
    return acc


def vec_add(F, u, v) -> Vector:
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_sub(F, u, v) -> Vector:
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def vec_scale(F, c, v) -> Vector:
    return tuple(F.mul(c, a) for a in v)


def lin_comb(F, coeffs, vectors, length: Optional[int] = None) -> Vector:
    if length is None:
        length = len(vectors[0]) if vectors else 0
    acc = [0] * length
    add, mul = F.add, F.mul
    for c, v in zip(coeffs, vectors):
        if c:
            for j, a in enumerate(v):
                if a:
                    acc[j] = add(acc[j], mul(c, a))
    return tuple(acc)


def rref(F, rows, ncols: Optional[int] = None):
    """Reduced row-echelon form. Returns ``(nonzero_rows, pivot_columns)``."""
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    nrows = len(M)
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        prow = M[r]
        if prow[c] != 1:
            s = inv(prow[c])
            prow = [mul(s, a) if a else 0 for a in prow]
            M[r] = prow
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    nf = neg(f)
                    row = M[i]
                    for j in range(c, ncols):
                        a = prow[j]
                        if a:
                            row[j] = add(row[j], mul(nf, a))
        pivots.append(c)
        r += 1
    return [tuple(row) for row in M[:r]], pivots


def rank(F, rows) -> int:
    return len(rref(F, rows)[1])


def nullspace(F, rows, ncols: int) -> list:
    """Basis (in RREF) of ``{x : row . x = 0 for every row}``."""
    R, pivots = rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    neg = F.neg
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for i, p in enumerate(pivots):
            if R[i][f]:
                x[p] = neg(R[i][f])
        basis.append(tuple(x))
    return rref(F, basis, ncols)[0]


def inverse(F, A) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + identity(n)[i] for i in range(n)]
    R, pivots = rref(F, aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return [list(row[n:]) for row in R[:n]]


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``field^ambient`` stored by its canonical RREF basis."""

    field: object
    ambient: int
    basis: tuple

    @classmethod
    def span(cls, F, vectors, ambient: int) -> "Subspace":
        return cls(F, ambient, tuple(rref(F, vectors, ambient)[0]))

    @classmethod
    def zero(cls, F, ambient: int) -> "Subspace":
        return cls(F, ambient, ())

    @classmethod
    def full(cls, F, ambient: int) -> "Subspace":
        return cls(F, ambient, tuple(tuple(r) for r in identity(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def contains(self, v) -> bool:
        return rank(self.field, list(self.basis) + [tuple(v)]) == self.dim

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def perp(self) -> "Subspace":
        return Subspace(self.field, self.ambient,
                        tuple(nullspace(self.field, self.basis, self.ambient)))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.basis + other.basis, self.ambient)

    def intersection(self, other: "Subspace") -> "Subspace":
        # U cap W = (U^perp + W^perp)^perp
        return (self.perp() + other.perp()).perp()

    def elements(self):
        """Enumerate all vectors (only sensible for tiny subspaces)."""
        F = self.field
        out = [tuple([0] * self.ambient)]
        for b in self.basis:
            out = [vec_add(F, v, vec_scale(F, c, b)) for v in out for c in range(F.order)]
        return out


@dataclass(frozen=True)
class SolutionSet:
    """Affine solution set ``particular + kernel``; empty when particular is None."""

    particular: Optional[tuple]
    kernel: Subspace

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def is_unique(self) -> bool:
        return not self.is_empty and self.kernel.dim == 0


def solve(F, A, b, ncols: Optional[int] = None) -> SolutionSet:
    """Solve ``A x = b``. Inconsistent systems give an empty solution set."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    kernel = Subspace(F, ncols, tuple(nullspace(F, A, ncols)))
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return SolutionSet(None, kernel)
    x = [0] * ncols
    for i, p in enumerate(pivots):
        x[p] = R[i][ncols]
    return SolutionSet(tuple(x), kernel)


# ---------------------------------------------------------------------------
# vectorised helpers used by brute-force enumeration


def span_enumerate(F, basis, length: int) -> np.ndarray:
    """All ``F``-linear combinations of the rows of ``basis`` (shape ``(q^k, length)``)."""
    add, mul = F.np_tables()[:2]
    N = length
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, N)
    words = np.zeros((1, N), dtype=np.int64)
    scalars = np.arange(F.order)
    for g in basis:
        multiples = mul[scalars[:, None], g[None, :]]          # (q, N)
        words = add[words[None, :, :], multiples[:, None, :]].reshape(-1, N)
    return words


def batch_rank(F, mats: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices ``(B, r, c)`` over ``F``."""
    A = np.array(mats, dtype=np.int64, copy=True)
    if A.ndim != 3:
        raise ValueError("expected a 3-d array")
    B, R, C = A.shape
    rk = np.zeros(B, dtype=np.int64)
    if B == 0 or R == 0 or C == 0:
        return rk
    if R > C:
        A = np.transpose(A, (0, 2, 1)).copy()
        R, C = C, R
    add, mul, sub, inv = F.np_tables()[:4]
    rows = np.arange(R)
    batch = np.arange(B)
    for c in range(C):
        col = A[:, :, c]
        cand = (col != 0) & (rows[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        idx = batch[has]
        p = piv[has]
        t = rk[has]
        prow = A[idx, p, :].copy()
        A[idx, p, :] = A[idx, t, :]
        A[idx, t, :] = prow
        pinv = inv[prow[:, c]]
        prow = mul[pinv[:, None], prow]
        A[idx, t, :] = prow
        below = rows[None, :] > t[:, None]                      # (b, R)
        factors = np.where(below, A[idx, :, c], 0)              # (b, R)
        A[idx] = sub[A[idx], mul[factors[:, :, None], prow[:, None, :]]]
        rk[has] += 1
        if (rk >= R).all():
            break
    return rk
