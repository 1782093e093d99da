"""Matrix representation of extension-field vectors, rank weight and support.

``mat_rep`` follows the usual convention: row i of M(c) holds the
coordinates along the i-th basis element, column j belongs to position j.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from . import linalg
from .errors import ParameterError
from .fields import Basis, FieldTower
from .linalg import Subspace


def mat_rep(basis: Basis, c: Sequence[int]) -> list:
    cols = [basis.coords(x) for x in c]
    return [[col[i] for col in cols] for i in range(basis.m)]


def rep_inverse(basis: Basis, M) -> tuple:
    if len(M) != basis.m:
        raise ParameterError(f"expected {basis.m} rows")
    n = len(M[0]) if M else 0
    return tuple(basis.combine([M[i][j] for i in range(basis.m)]) for j in range(n))


def digit_matrix(q: int, m: int, c: Sequence[int]) -> list:
    """M(c) with respect to the polynomial basis: row i holds the base-q digit i."""
    return [[(x // q ** i) % q for x in c] for i in range(m)]


def rank_weight(tower_or_basis, c: Sequence[int]) -> int:
    """Rank of M(c) over F_q; independent of the chosen basis."""
    base, q, m = _params(tower_or_basis, c)
    return linalg.rank(base, digit_matrix(q, m, c))


def rank_support(tower_or_basis, c: Sequence[int]) -> Subspace:
    base, q, m = _params(tower_or_basis, c)
    return Subspace.span(base, digit_matrix(q, m, c), len(c))


def _params(obj, c):
    if isinstance(obj, Basis):
        return obj.base, obj.q, obj.m
    if isinstance(obj, FieldTower):
        return obj.base, obj.q, num_digits(obj.q, max(c, default=0))
    raise TypeError("expected a FieldTower or a Basis")


def num_digits(q: int, x: int) -> int:
    d = 1
    while x >= q:
        x //= q
        d += 1
    return d


def hamming_weight(c) -> int:
    return sum(1 for x in c if x)


def diag_embed(c: Sequence[int]) -> list:
    n = len(c)
    return [[c[i] if i == j else 0 for j in range(n)] for i in range(n)]


def extension_embed(basis: Basis, c: Sequence[int]) -> tuple:
    """E(c) = (a_1 c_1, ..., a_n c_n) for a basis a_1..a_n of F_{q^n}."""
    if len(c) != basis.m:
        raise ParameterError("extension_embed needs a vector of length equal to the degree")
    F = basis.field
    return tuple(F.mul(a, x) for a, x in zip(basis.elements, c))


def solve_linear(F, A, b) -> linalg.SolutionSet:
    return linalg.solve(F, A, b)


def vector_digits(q: int, m: int, words: np.ndarray) -> np.ndarray:
    """Batch of vectors ``(B, n)`` -> digit matrices ``(B, m, n)``."""
    words = np.asarray(words, dtype=np.int64)
    powers = q ** np.arange(m, dtype=np.int64)
    return (words[:, None, :] // powers[None, :, None]) % q


def digits_to_vectors(q: int, mats: np.ndarray) -> np.ndarray:
    mats = np.asarray(mats, dtype=np.int64)
    powers = q ** np.arange(mats.shape[1], dtype=np.int64)
    return (mats * powers[None, :, None]).sum(axis=1)
