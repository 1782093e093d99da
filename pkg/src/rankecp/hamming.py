"""Hamming-metric error-correcting pairs, decoded through the diagonal embedding.

An ECP (A, B) for C uses the coordinatewise product ``a * b``. Under
``D(c) = diag(c)`` it becomes a matrix pair ``(D(A), D(B))`` for ``D(C)``.
That pair breaks the strict matrix-pair conditions, since ``D(B)*``
contains rank-one off-diagonal matrices, yet the matrix decoder still
recovers every diagonal error of weight at most t.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

from . import linalg
from .codes import ExtLinearCode, MatrixCode, diagonal_code
from .decoder import (FAILURE, SUCCESS, DecodeOutcome, RankPair, decode_type2,
                      kernel_space_base)
from .errors import ParameterError
from .fields import FieldTower, make_field
from .matrix_space import diag_embed, hamming_weight


def reed_solomon(tower: FieldTower, k: int, points: Sequence[int]) -> ExtLinearCode:
    """Evaluations of polynomials of degree < k over the prime level of ``tower``."""
    F = tower.ext
    return ExtLinearCode(tower, len(points), [[F.pow(x, j) for x in points] for j in range(k)])


def coordinatewise(F, a, b) -> tuple:
    return tuple(F.mul(x, y) for x, y in zip(a, b))


def min_hamming_distance(C: ExtLinearCode) -> int:
    if C.k == 0:
        return C.n + 1
    w = C.words()
    wt = (w != 0).sum(axis=1)
    return int(wt[wt > 0].min())


@dataclass
class HammingPair:
    A: ExtLinearCode
    B: ExtLinearCode
    C: ExtLinearCode
    t: int
    embedded: RankPair

    @property
    def n(self) -> int:
        return self.C.n


def validate_hamming_pair(A, B, C, t: int) -> dict:
    F = C.field
    prods = [coordinatewise(F, a, b) for a in A.gens for b in B.gens]
    checks = {
        "product_in_dual": all(linalg.dot(F, p, c) == 0 for p in prods for c in C.gens),
        "dim_A": A.k > t,
        "dual_B_distance": min_hamming_distance(B.dual()) > t,
        "distance_sum": min_hamming_distance(A) + min_hamming_distance(C) > C.n,
    }
    return checks


def hamming_embed_pair(A: ExtLinearCode, B: ExtLinearCode, C: ExtLinearCode, t: int) -> HammingPair:
    if A.deg != 1:
        raise ParameterError("Hamming pairs must be over F_q itself")
    checks = validate_hamming_pair(A, B, C, t)
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise ParameterError(f"not a {t}-ECP: {', '.join(bad)} failed")
    emb = RankPair("II", diagonal_code(A), diagonal_code(B), diagonal_code(C), t,
                   meta={"family": "hamming-embedding"})
    return HammingPair(A, B, C, t, emb)


def grs_ecp(q: int = 8, t: int = 2) -> HammingPair:
    """The t-ECP ``A = RS_{t+1}``, ``B = RS_t`` for ``C = RS_{2t}^perp`` on all nonzero points."""
    tower = make_field(q, 1)
    pts = list(range(1, q))
    A = reed_solomon(tower, t + 1, pts)
    B = reed_solomon(tower, t, pts)
    C = reed_solomon(tower, 2 * t, pts).dual()
    return hamming_embed_pair(A, B, C, t)


def decode_hamming(hp: HammingPair, r: Sequence[int]) -> DecodeOutcome:
    """Decode through ``D(r)`` and read the diagonal back off."""
    out = decode_type2(hp.embedded, diag_embed(list(r)))
    if out.status != SUCCESS:
        return out
    E = out.error
    if any(E[i][j] for i in range(hp.n) for j in range(hp.n) if i != j):
        return DecodeOutcome(FAILURE, support=out.support, diagnostics=out.diagnostics)
    c = tuple(out.codeword[i][i] for i in range(hp.n))
    e = tuple(E[i][i] for i in range(hp.n))
    return DecodeOutcome(SUCCESS, c, e, out.support, out.diagnostics)


def embedded_kernel(hp: HammingPair, r: Sequence[int]) -> MatrixCode:
    K = kernel_space_base(hp.embedded, diag_embed(list(r)))
    A = hp.embedded.A
    return MatrixCode(A.field, A.rows, A.cols, list(K.words), "diagonal")


def hamming_kernel(hp: HammingPair, r: Sequence[int]) -> ExtLinearCode:
    """``K_H(r) = {a in A : (a * b) . r = 0 for all b in B}``."""
    A, F = hp.A, hp.A.field
    rows = [[linalg.dot(F, coordinatewise(F, a, b), r) for a in A.gens] for b in hp.B.gens]
    lam = linalg.nullspace(F, rows, A.k)
    return ExtLinearCode(A.tower, A.n, [A.encode(c) for c in lam])


def classical_ecp_decode(hp: HammingPair, r: Sequence[int]) -> DecodeOutcome:
    """Textbook ECP decoding: zeros of a kernel word locate, then erase."""
    F, n = hp.C.field, hp.n
    K = hamming_kernel(hp, r)
    if K.k == 0:
        return DecodeOutcome(FAILURE, diagnostics={"dim_K": 0})
    a = K.gens[0]
    zeros = [i for i in range(n) if a[i] == 0]
    H = hp.C.parity
    A = [[h[i] for i in zeros] for h in H]
    b = [linalg.dot(F, r, h) for h in H]
    sol = linalg.solve(F, A, b, len(zeros))
    diag = {"dim_K": K.k, "erasures": len(zeros)}
    if sol.is_empty or not sol.is_unique:
        return DecodeOutcome(FAILURE, diagnostics=diag)
    e = [0] * n
    for i, v in zip(zeros, sol.particular):
        e[i] = v
    if hamming_weight(e) > hp.t:
        return DecodeOutcome(FAILURE, diagnostics=diag)
    return DecodeOutcome(SUCCESS, linalg.vec_sub(F, r, e), tuple(e), None, diag)


def error_patterns(q: int, n: int, weight: int):
    """All vectors of the given Hamming weight over the integers 0..q-1."""
    for supp in combinations(range(n), weight):
        for vals in product(range(1, q), repeat=weight):
            e = [0] * n
            for i, v in zip(supp, vals):
                e[i] = v
            yield tuple(e)

