"""Error-correcting pairs: kernel spaces, erasure decoding, the two decoders,
validation and the conversion from pairs over F_{q^m} to matrix pairs.

Both decoders follow the same four steps:

1. compute the kernel space K of the received word,
2. take its first canonical basis element a,
3. set L' = RSupp(a)^perp, a space containing the error support,
4. erase on L'.

Running out of room at any step is reported through the status of a
:class:`DecodeOutcome` rather than raised.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from . import linalg
from .codes import ExtLinearCode, MatrixCode, cached_distance, min_weight_word
from .errors import (DecodingFailure, InconsistentInputError, ParameterError,
                     PreconditionError)
from .fields import Basis
from .linalg import Subspace
from .matrix_space import digit_matrix, mat_rep, rep_inverse
from .star import StarContext

SUCCESS = "success"
LOCATED = "located-only"
FAILURE = "failure"


@dataclass
class RankPair:
    """A candidate pair (A, B) for the code C with radius t.

    ``kind`` is ``"I"`` for codes over an extension field multiplied with a
    star context, ``"II"`` for matrix codes multiplied as matrices. ``role``
    records whether the pair is meant to correct or only to locate.
    """

    kind: str
    A: object
    B: object
    C: object
    t: int
    ctx: Optional[StarContext] = None
    use_phi: bool = False
    role: str = "correcting"
    meta: dict = field(default_factory=dict)
    embed_basis: Optional[Basis] = None

    def __post_init__(self):
        if self.kind not in ("I", "II"):
            raise ParameterError(f"unknown pair kind {self.kind!r}")
        if self.kind == "I" and self.ctx is None:
            raise ParameterError("a type-I pair needs a star context")

    def __hash__(self):
        return id(self)

    @property
    def n(self) -> int:
        return self.C.n

    @cached_property
    def effective_B(self) -> ExtLinearCode:
        """phi(B) when the pair multiplies through phi, otherwise B itself."""
        if not self.use_phi:
            return self.B
        return ExtLinearCode(self.B.tower, self.ctx.M, [self.ctx.phi(b) for b in self.B.gens],
                             self.B.level)

    @cached_property
    def products(self) -> list:
        """For each generator of B, the products with A's F_q-basis."""
        if self.kind == "I":
            prod = self.ctx.star_phi if self.use_phi else self.ctx.star
            basis = self.A.fq_basis()
            return [[prod(b, a) for a in basis] for b in self.B.gens]
        F = self.A.field
        return [[tuple(x for row in linalg.mat_mul(F, Bm, Am) for x in row)
                 for Am in self.A.matrices()] for Bm in self.B.matrices()]


@dataclass
class KernelSpace:
    """F_q-subspace of A: coordinates over A's F_q-basis and the matching words."""

    coords: Subspace
    words: tuple

    @property
    def dim(self) -> int:
        return self.coords.dim


@dataclass
class DecodeOutcome:
    status: str
    codeword: Optional[object] = None
    error: Optional[object] = None
    support: Optional[Subspace] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == SUCCESS


# ---------------------------------------------------------------------------
# kernel spaces


def kernel_space_ext(pair: RankPair, r: Sequence[int]) -> KernelSpace:
    """``K(r) = {a in A : (b * a) . r = 0 for all b in B}`` as an F_q-space."""
    if pair.kind != "I":
        raise ParameterError("kernel_space_ext needs a type-I pair")
    _check_length(pair, r)
    ctx = pair.ctx
    L, q = ctx.field, ctx.q
    rows = []
    for prods in pair.products:
        vals = [linalg.dot(L, p, r) for p in prods]
        # one F_q equation per coordinate of the L-valued condition
        rows.extend(digit_matrix(q, ctx.M, vals))
    basis = pair.A.fq_basis()
    coords = Subspace(pair.A.tower.base, len(basis),
                      tuple(linalg.nullspace(pair.A.tower.base, rows, len(basis))))
    words = tuple(_combine_fq(pair.A, c, basis) for c in coords.basis)
    return KernelSpace(coords, words)


def _combine_fq(A: ExtLinearCode, coeffs, basis) -> tuple:
    F = A.field
    return linalg.lin_comb(F, coeffs, basis, A.n)


def kernel_space_base(pair: RankPair, R) -> KernelSpace:
    """``K(R) = {A in 𝓐 : <B A, R> = 0 for all B in 𝓑}``."""
    if pair.kind != "II":
        raise ParameterError("kernel_space_base needs a type-II pair")
    Ac = pair.A
    F = Ac.field
    flat = _flat(R, Ac.rows, Ac.cols)
    rows = [[linalg.dot(F, p, flat) for p in prods] for prods in pair.products]
    coords = Subspace(F, Ac.dim, tuple(linalg.nullspace(F, rows, Ac.dim)))
    words = tuple(Ac.combine(c) for c in coords.basis)
    return KernelSpace(coords, words)


def _flat(M, rows, cols) -> tuple:
    if len(M) != rows or any(len(r) != cols for r in M):
        raise ParameterError(f"received matrix must be {rows}x{cols}")
    return tuple(x for r in M for x in r)


def _check_length(pair: RankPair, r):
    if len(r) != pair.n:
        raise ParameterError(f"received word has length {len(r)}, expected {pair.n}")
    if any(not 0 <= x < pair.C.field.order for x in r):
        raise ParameterError("received word has entries outside the code's field")


def support_of(code: ExtLinearCode, v) -> Subspace:
    return Subspace.span(code.tower.base, digit_matrix(code.q, code.deg, v), code.n)


def row_space(F, M, cols: int) -> Subspace:
    return Subspace.span(F, M, cols)


# ---------------------------------------------------------------------------
# erasure decoding


def erasure_decode(C: ExtLinearCode, r: Sequence[int], L: Subspace):
    """``(r - e, e)`` for the unique e with ``RSupp(e)`` in L and ``r - e`` in C."""
    if L.dim >= cached_distance(C):
        raise PreconditionError(f"dim L = {L.dim} is not below d_R(C) = {cached_distance(C)}")
    F = C.field
    G = L.basis
    A = [[linalg.dot(F, g, h) for g in G] for h in C.parity]
    b = [linalg.dot(F, r, h) for h in C.parity]
    sol = linalg.solve(F, A, b, len(G))
    if sol.is_empty:
        raise InconsistentInputError("no error with the given support explains the received word")
    e = linalg.lin_comb(F, sol.particular, G, C.n)
    return linalg.vec_sub(F, r, e), e


def erasure_decode_matrix(Cc: MatrixCode, R, L: Subspace):
    """Matrix form: ``E = Z G_L`` with Z over F_q, solved against a basis of 𝓒*."""
    if L.dim >= cached_distance(Cc):
        raise PreconditionError(f"dim L = {L.dim} is not below d_R = {cached_distance(Cc)}")
    F = Cc.field
    m, n = Cc.rows, Cc.cols
    G = L.basis
    ell = len(G)
    A, b = [], []
    flatR = _flat(R, m, n)
    for h in Cc.parity:
        H = [h[i * n:(i + 1) * n] for i in range(m)]
        # coefficient of Z[i][l] in <Z G, H> is G_l . H_i
        A.append([linalg.dot(F, G[l], H[i]) for i in range(m) for l in range(ell)])
        b.append(linalg.dot(F, flatR, h))
    sol = linalg.solve(F, A, b, m * ell)
    if sol.is_empty:
        raise InconsistentInputError("no error with the given row space explains the received word")
    Z = [list(sol.particular[i * ell:(i + 1) * ell]) for i in range(m)]
    E = linalg.mat_mul(F, Z, [list(g) for g in G]) if ell else linalg.zeros(m, n)
    Cw = [list(linalg.vec_sub(F, R[i], E[i])) for i in range(m)]
    return Cw, E


# ---------------------------------------------------------------------------
# decoders


def _locate(pair: RankPair, received):
    if pair.kind == "I":
        K = kernel_space_ext(pair, received)
        diag = {"dim_K": K.dim}
        if K.dim == 0:
            return None, diag
        Lp = support_of(pair.A, K.words[0]).perp()
    else:
        K = kernel_space_base(pair, received)
        diag = {"dim_K": K.dim}
        if K.dim == 0:
            return None, diag
        Lp = row_space(pair.A.field, K.words[0], pair.A.cols).perp()
    diag["dim_L"] = Lp.dim
    return Lp, diag


def locate_support(pair: RankPair, received) -> Subspace:
    """A space L' containing the error support, for errors of rank at most t."""
    Lp, diag = _locate(pair, received)
    if Lp is None:
        raise DecodingFailure("kernel space is zero")
    return Lp


def decode_type1(pair: RankPair, r: Sequence[int]) -> DecodeOutcome:
    if pair.kind != "I":
        raise ParameterError("decode_type1 needs a type-I pair")
    Lp, diag = _locate(pair, r)
    if Lp is None:
        return DecodeOutcome(FAILURE, diagnostics=diag)
    if Lp.dim >= cached_distance(pair.C):
        return DecodeOutcome(LOCATED, support=Lp, diagnostics=diag)
    try:
        c, e = erasure_decode(pair.C, r, Lp)
    except InconsistentInputError:
        return DecodeOutcome(FAILURE, support=Lp, diagnostics=diag)
    w = support_of(pair.C, e).dim
    diag["error_rank"] = w
    if w > pair.t:
        return DecodeOutcome(FAILURE, support=Lp, diagnostics=diag)
    return DecodeOutcome(SUCCESS, tuple(c), tuple(e), Lp, diag)


def decode_type2(pair: RankPair, R) -> DecodeOutcome:
    if pair.kind != "II":
        raise ParameterError("decode_type2 needs a type-II pair")
    Lp, diag = _locate(pair, R)
    if Lp is None:
        return DecodeOutcome(FAILURE, diagnostics=diag)
    if Lp.dim >= cached_distance(pair.C):
        return DecodeOutcome(LOCATED, support=Lp, diagnostics=diag)
    try:
        Cw, E = erasure_decode_matrix(pair.C, R, Lp)
    except InconsistentInputError:
        return DecodeOutcome(FAILURE, support=Lp, diagnostics=diag)
    w = linalg.rank(pair.C.field, E)
    diag["error_rank"] = w
    if w > pair.t:
        return DecodeOutcome(FAILURE, support=Lp, diagnostics=diag)
    return DecodeOutcome(SUCCESS, Cw, E, Lp, diag)


def decode(pair: RankPair, received) -> DecodeOutcome:
    return decode_type1(pair, received) if pair.kind == "I" else decode_type2(pair, received)


# ---------------------------------------------------------------------------
# validation


@dataclass
class Condition:
    ok: bool
    detail: str
    witness: object = None


@dataclass
class Certificate:
    kind: str
    t: int
    conditions: dict

    @property
    def locating(self) -> bool:
        return all(self.conditions[k].ok for k in ("product_in_dual", "dim_A", "dual_B_distance"))

    @property
    def valid(self) -> bool:
        return all(c.ok for c in self.conditions.values())

    def to_json(self) -> dict:
        return {
            "kind": self.kind, "t": self.t, "valid": self.valid, "locating": self.locating,
            "conditions": {k: {"ok": c.ok, "detail": c.detail, "witness": c.witness}
                           for k, c in self.conditions.items()},
        }


def validate_pair(pair: RankPair) -> Certificate:
    """Check the four pair conditions, brute-forcing the distances."""
    t, n = pair.t, pair.n
    conds = {}
    if pair.kind == "I":
        F = pair.ctx.field
        witness = next((p for prods in pair.products for p in prods
                        if any(linalg.dot(F, p, c) for c in pair.C.gens)), None)
        conds["product_in_dual"] = Condition(witness is None, "B * A inside C^perp", witness)
        conds["dim_A"] = Condition(pair.A.k > t, f"dim A = {pair.A.k} > {t}")
        dual_B = pair.effective_B.dual()
    else:
        F = pair.A.field
        Cd = pair.C
        witness = next((p for prods in pair.products for p in prods
                        if any(linalg.dot(F, p, c) for c in Cd.basis)), None)
        conds["product_in_dual"] = Condition(witness is None, "B A inside C*", witness)
        need = pair.A.rows * t
        conds["dim_A"] = Condition(pair.A.dim > need, f"dim A = {pair.A.dim} > {need}")
        dual_B = pair.B.dual()
    dB, wB = min_weight_word(dual_B)
    conds["dual_B_distance"] = Condition(dB > t, f"d_R(B dual) = {dB} > {t}",
                                         None if dB > t else wB)
    dA, wA = min_weight_word(pair.A)
    dC, wC = min_weight_word(pair.C)
    ok = dA + dC > n
    conds["distance_sum"] = Condition(ok, f"d_R(A) + d_R(C) = {dA} + {dC} > {n}",
                                      None if ok else {"A": wA, "C": wC})
    return Certificate(pair.kind, t, conds)


# ---------------------------------------------------------------------------
# conversion


def dual_of_basis(basis: Basis) -> Basis:
    """The basis a' with ``Tr(a_i a'_j) = delta_ij`` over F_q."""
    F, base = basis.field, basis.base
    q, M = basis.q, basis.m

    def tr(x):
        acc, y = 0, x
        for _ in range(M):
            acc = F.add(acc, y)
            y = F.pow(y, q)
        return acc

    els = basis.elements
    G = [[tr(F.mul(a, b)) for b in els] for a in els]
    X = linalg.inverse(base, G)
    return Basis(F, base, [basis.combine([X[k][j] for k in range(M)]) for j in range(M)])


def convert_pair(pair: RankPair) -> RankPair:
    """``(M_a(A), M_a(B))`` for ``M_a'(C)``, a the star basis and a' its dual."""
    if pair.kind != "I":
        raise ParameterError("convert_pair needs a type-I pair")
    basis = pair.ctx.basis
    dual = dual_of_basis(basis)
    base = pair.A.tower.base

    def image(code: ExtLinearCode, b: Basis, label: str) -> MatrixCode:
        return MatrixCode(base, b.m, code.n, [mat_rep(b, v) for v in code.fq_basis()], label)

    A2 = image(pair.A, basis, "alpha")
    B2 = image(pair.effective_B, basis, "alpha")
    C2 = image(pair.C, dual, "alpha_prime")
    tower = pair.A.tower
    level = "ext" if basis.field.key == tower.ext.key else "top"
    meta = {"converted_from": dict(pair.meta), "embed_field": tower.descriptor(),
            "embed_level": level}
    return RankPair("II", A2, B2, C2, pair.t, role=pair.role, meta=meta, embed_basis=dual)


def embed_received(pair2: RankPair, r: Sequence[int]) -> list:
    """``M_a'(r)`` for a pair produced by :func:`convert_pair`."""
    if pair2.embed_basis is None:
        raise ParameterError("pair does not carry an embedding basis")
    return mat_rep(pair2.embed_basis, r)


def unembed(pair2: RankPair, M) -> tuple:
    return rep_inverse(pair2.embed_basis, M)
