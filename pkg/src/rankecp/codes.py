"""Code objects, both dualities, shortening, brute-force distance and an ML oracle.

Two kinds of code are used throughout:

* :class:`ExtLinearCode` is linear over an extension field of the tower
  (normally F_{q^m}, occasionally F_{q^n}) and lives in ``field^n``.
* :class:`MatrixCode` is an F_q-linear space of ``rows x cols`` matrices,
  stored as flattened row-major vectors.

Brute-force routines enumerate the F_q-span of a code and rank every
codeword with vectorised elimination, so they stay usable up to about a
million codewords.
"""
from __future__ import annotations

import random
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import ParameterError, SizeError
from .fields import Basis, FieldTower
from .linalg import Subspace
from .matrix_space import mat_rep, vector_digits

BRUTE_LIMIT = 1 << 20
_CHUNK = 1 << 14


class ExtLinearCode:
    """An F-linear code in F^n, F a level of the tower (``"ext"`` by default)."""

    kind = "ext"

    def __init__(self, tower: FieldTower, n: int, generators: Sequence[Sequence[int]] = (),
                 level: str = "ext"):
        self.tower = tower
        self.level = level
        self.field = tower.level(level)
        self.q = tower.q
        self.deg = tower.degree(level)
        self.n = n
        for g in generators:
            if len(g) != n:
                raise ParameterError(f"generator of length {len(g)}, expected {n}")
        self.gens = tuple(linalg.rref(self.field, generators, n)[0])

    @classmethod
    def full(cls, tower, n, level="ext"):
        return cls(tower, n, linalg.identity(n), level)

    @property
    def k(self) -> int:
        return len(self.gens)

    dim = k

    def __eq__(self, other):
        return (isinstance(other, ExtLinearCode) and self.field.key == other.field.key
                and self.n == other.n and self.gens == other.gens)

    def __hash__(self):
        return hash((self.field.key, self.n, self.gens))

    def __repr__(self):
        return f"ExtLinearCode(n={self.n}, k={self.k}, level={self.level!r})"

    @cached_property
    def parity(self) -> tuple:
        return tuple(linalg.nullspace(self.field, self.gens, self.n))

    def dual(self) -> "ExtLinearCode":
        return ExtLinearCode(self.tower, self.n, self.parity, self.level)

    def contains(self, v) -> bool:
        F = self.field
        return all(linalg.dot(F, h, v) == 0 for h in self.parity)

    def encode(self, msg: Sequence[int]) -> tuple:
        if len(msg) != self.k:
            raise ParameterError(f"message of length {len(msg)}, expected {self.k}")
        return linalg.lin_comb(self.field, msg, self.gens, self.n)

    def random_word(self, rng: random.Random) -> tuple:
        return self.encode([rng.randrange(self.field.order) for _ in range(self.k)])

    def scalar_basis(self) -> list:
        """F_q-basis of the coefficient field used to turn F-spans into F_q-spans."""
        if self.level == "ext":
            return list(self.tower.alpha.elements)
        return [self.q ** i for i in range(self.deg)]

    def fq_basis(self) -> list:
        """F_q-basis ``{gamma_l g_j}`` of the code, ordered by generator then scalar."""
        F = self.field
        return [linalg.vec_scale(F, gam, g) for g in self.gens for gam in self.scalar_basis()]

    def to_matrix_code(self, basis: Optional[Basis] = None, label: str = "alpha") -> "MatrixCode":
        """M_basis(C); ``basis`` defaults to the tower's alpha."""
        basis = basis or self.tower.alpha
        if basis.field.key != self.field.key:
            raise ParameterError("basis lives in a different field")
        mats = [mat_rep(basis, v) for v in self.fq_basis()]
        return MatrixCode(self.tower.base, basis.m, self.n, mats, basis_used=label)

    def shorten(self, L: Subspace) -> "ExtLinearCode":
        """``A(L) = {a in A : RSupp(a) in L^perp}``, i.e. ``a . v = 0`` for v in L."""
        F = self.field
        eqs = [[linalg.dot(F, g, v) for g in self.gens] for v in L.basis]
        lam = linalg.nullspace(F, eqs, self.k)
        return ExtLinearCode(self.tower, self.n,
                             [linalg.lin_comb(F, c, self.gens, self.n) for c in lam], self.level)

    # -- enumeration -------------------------------------------------------

    def _digit_basis(self) -> np.ndarray:
        vecs = self.fq_basis()
        if not vecs:
            return np.zeros((0, self.deg * self.n), dtype=np.int64)
        return vector_digits(self.q, self.deg, np.array(vecs)).reshape(len(vecs), -1)

    @property
    def shape(self):
        return (self.deg, self.n)

    @property
    def fq_dim(self) -> int:
        return self.k * self.deg

    def words(self) -> np.ndarray:
        """All codewords as integer vectors, shape ``(q^(k deg), n)``."""
        mats = _all_digit_words(self)
        powers = self.q ** np.arange(self.deg, dtype=np.int64)
        return (mats * powers[None, :, None]).sum(axis=1)

    def word_key(self, v) -> tuple:
        return tuple(int(x) for x in v)


class MatrixCode:
    """F_q-linear code of ``rows x cols`` matrices, canonical RREF on flattened vectors."""

    kind = "matrix"

    def __init__(self, field, rows: int, cols: int, matrices=(), basis_used: str = "alpha"):
        self.field = field
        self.q = field.order
        self.rows = rows
        self.cols = cols
        self.n = cols
        self.basis_used = basis_used
        flat = [_flatten(M, rows, cols) for M in matrices]
        self.basis = tuple(linalg.rref(field, flat, rows * cols)[0])

    @classmethod
    def from_flat(cls, field, rows, cols, vectors, basis_used="alpha"):
        return cls(field, rows, cols, [_unflatten(v, cols) for v in vectors], basis_used)

    @classmethod
    def full(cls, field, rows, cols):
        return cls.from_flat(field, rows, cols, linalg.identity(rows * cols))

    @property
    def dim(self) -> int:
        return len(self.basis)

    fq_dim = dim

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return (isinstance(other, MatrixCode) and self.field.key == other.field.key
                and self.shape == other.shape and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field.key, self.shape, self.basis))

    def __repr__(self):
        return f"MatrixCode({self.rows}x{self.cols}, dim={self.dim})"

    def matrices(self) -> list:
        return [_unflatten(v, self.cols) for v in self.basis]

    def contains(self, M) -> bool:
        v = _flatten(M, self.rows, self.cols)
        return all(linalg.dot(self.field, h, v) == 0 for h in self.parity)

    @cached_property
    def parity(self) -> tuple:
        return tuple(linalg.nullspace(self.field, self.basis, self.rows * self.cols))

    def dual(self) -> "MatrixCode":
        """Dual for ``<C, D> = Tr(C D^T)``, which is the flat dot product."""
        return MatrixCode.from_flat(self.field, self.rows, self.cols, self.parity, self.basis_used)

    def transpose(self) -> "MatrixCode":
        return MatrixCode(self.field, self.cols, self.rows,
                          [linalg.transpose(M) for M in self.matrices()], self.basis_used)

    def combine(self, coeffs) -> list:
        v = linalg.lin_comb(self.field, coeffs, self.basis, self.rows * self.cols)
        return _unflatten(v, self.cols)

    def random_word(self, rng: random.Random) -> list:
        return self.combine([rng.randrange(self.q) for _ in range(self.dim)])

    def shorten(self, L: Subspace) -> "MatrixCode":
        """Matrices of the code whose rows are all orthogonal to L."""
        F = self.field
        mats = self.matrices()
        eqs = [[linalg.dot(F, M[i], v) for M in mats] for v in L.basis for i in range(self.rows)]
        mu = linalg.nullspace(F, eqs, self.dim)
        return MatrixCode(F, self.rows, self.cols, [self.combine(c) for c in mu], self.basis_used)

    def _digit_basis(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.rows * self.cols)

    def words(self) -> np.ndarray:
        """All codewords, shape ``(q^dim, rows, cols)``."""
        return _all_digit_words(self)

    def word_key(self, M) -> tuple:
        return tuple(int(x) for x in np.asarray(M).ravel())


def _flatten(M, rows, cols) -> tuple:
    if len(M) != rows or any(len(r) != cols for r in M):
        raise ParameterError(f"expected a {rows}x{cols} matrix")
    return tuple(x for r in M for x in r)


def _unflatten(v, cols) -> list:
    return [list(v[i:i + cols]) for i in range(0, len(v), cols)]


# ---------------------------------------------------------------------------
# duality helpers and conversions


def dual_ext(C: ExtLinearCode) -> ExtLinearCode:
    return C.dual()


def dual_base(C: MatrixCode) -> MatrixCode:
    return C.dual()


def to_matrix_code(C: ExtLinearCode, basis: str = "alpha") -> MatrixCode:
    """M_alpha(C) or M_alpha'(C) for ``basis`` in ``{"alpha", "alpha_prime"}``."""
    b = C.tower.basis(basis)
    return C.to_matrix_code(b, "alpha" if b is C.tower.alpha else "alpha_prime")


def shorten(A, L: Subspace):
    return A.shorten(L)


def diagonal_code(C: ExtLinearCode) -> MatrixCode:
    """D(C) for a code over the prime level: the span of diag(c), c in C."""
    if C.deg != 1:
        raise ParameterError("diagonal embedding needs a code over F_q")
    n = C.n
    mats = [[[g[i] if i == j else 0 for j in range(n)] for i in range(n)] for g in C.gens]
    return MatrixCode(C.field, n, n, mats, basis_used="diagonal")


# ---------------------------------------------------------------------------
# brute force


def _iter_digit_words(code):
    """Yield chunks of codewords as digit matrices, zero word first."""
    F = code.tower.base if isinstance(code, ExtLinearCode) else code.field
    basis = code._digit_basis()
    k = basis.shape[0]
    rows, cols = code.shape
    if F.order ** k > BRUTE_LIMIT:
        raise SizeError(f"code has {F.order}^{k} codewords, brute force limit is {BRUTE_LIMIT}")
    width = rows * cols
    t = 0
    while t < k and F.order ** (t + 1) <= _CHUNK:
        t += 1
    tail = linalg.span_enumerate(F, basis[k - t:], width)
    if t == k:
        yield tail.reshape(-1, rows, cols)
        return
    add = F.np_tables()[0]
    for h in linalg.span_enumerate(F, basis[:k - t], width):
        yield add[h[None, :], tail].reshape(-1, rows, cols)


def _all_digit_words(code) -> np.ndarray:
    return np.concatenate(list(_iter_digit_words(code)), axis=0)


def _base_field(code):
    return code.tower.base if isinstance(code, ExtLinearCode) else code.field


def min_weight_word(code):
    """``(d_R, witness)``; the zero code gives ``(n + 1, None)``."""
    if code.fq_dim == 0:
        return code.n + 1, None
    F = _base_field(code)
    best, witness = None, None
    for chunk in _iter_digit_words(code):
        ranks = linalg.batch_rank(F, chunk)
        ranks[np.all(chunk == 0, axis=(1, 2))] = code.n + 2
        i = int(np.argmin(ranks))
        if best is None or ranks[i] < best:
            best, witness = int(ranks[i]), chunk[i]
    if isinstance(code, ExtLinearCode):
        powers = code.q ** np.arange(code.deg, dtype=np.int64)
        witness = tuple(int(x) for x in (witness * powers[:, None]).sum(axis=0))
    else:
        witness = witness.tolist()
    return best, witness


def min_rank_distance(code, mode: str = "brute") -> int:
    if mode != "brute":
        raise ParameterError(f"unsupported distance mode {mode!r}")
    return min_weight_word(code)[0]


@lru_cache(maxsize=512)
def cached_distance(code) -> int:
    """Memoised :func:`min_rank_distance`; codes hash by content."""
    return min_rank_distance(code)


class _Oracle:
    """Sorted codeword table of one code, kept for repeated ML decoding."""

    def __init__(self, code):
        F = _base_field(code)
        digits = _all_digit_words(code)
        if isinstance(code, ExtLinearCode):
            powers = code.q ** np.arange(code.deg, dtype=np.int64)
            keys = (digits * powers[None, :, None]).sum(axis=1)
        else:
            keys = digits.reshape(digits.shape[0], -1)
        order = np.lexsort(keys.T[::-1])
        self.F = F
        self.digits = digits[order]
        self.keys = keys[order]
        self.code = code


_ORACLES: dict = {}


def _oracle(code) -> _Oracle:
    # equal codes have equal codeword sets, so the code itself is the key
    if code not in _ORACLES:
        if len(_ORACLES) > 32:
            _ORACLES.clear()
        _ORACLES[code] = _Oracle(code)
    return _ORACLES[code]


def ml_decode_oracle(code, received):
    """Nearest codeword in rank distance: ``(codeword, distance, tie)``.

    Ties are broken towards the lexicographically smallest integer encoding.
    """
    orc = _oracle(code)
    sub = orc.F.np_tables()[2]
    if isinstance(code, ExtLinearCode):
        r = vector_digits(code.q, code.deg, np.array([received], dtype=np.int64))[0]
    else:
        r = np.asarray(received, dtype=np.int64)
    ranks = linalg.batch_rank(orc.F, sub[r[None], orc.digits])
    d = int(ranks.min())
    hits = np.flatnonzero(ranks == d)
    best = orc.keys[hits[0]]
    if isinstance(code, ExtLinearCode):
        word = tuple(int(x) for x in best)
    else:
        word = _unflatten([int(x) for x in best], code.cols)
    return word, d, len(hits) > 1


def random_rank_error(field, m: int, n: int, t: int, rng: random.Random) -> list:
    """Uniform ``X Y`` with X (m x t) and Y (t x n) of full rank t."""
    if not 0 <= t <= min(m, n):
        raise ParameterError(f"rank {t} out of range for {m}x{n}")
    if t == 0:
        return linalg.zeros(m, n)

    def full_rank(r, c):
        while True:
            M = [[rng.randrange(field.order) for _ in range(c)] for _ in range(r)]
            if linalg.rank(field, M) == t:
                return M

    return linalg.mat_mul(field, full_rank(m, t), full_rank(t, n))
