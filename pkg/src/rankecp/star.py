"""Star products, the map phi_n, the transposed pairing and products of codes.

For a basis ``gamma_1..gamma_M`` of a field L over F_q, write
``d = sum(gamma_i d_i)`` with ``d_i`` in F_q^n (the rows of M(d)). Then::

    c * d = sum(c_i d_i)      for c in L^M, d in L^n

so that ``M(c * d) = M(c) M(d)``. A :class:`StarContext` pins L, the basis,
the length n and the linear map phi used by ``c *_phi d = phi(c) * d``.
"""
from __future__ import annotations

from typing import Optional, Sequence

from . import linalg
from .codes import ExtLinearCode, MatrixCode
from .errors import ParameterError
from .fields import Basis, FieldTower
from .linearized import interpolate, lp_eval
from .matrix_space import mat_rep, rep_inverse


class StarContext:
    """Field, basis, length and phi for star products.

    ``phi`` is ``None`` for phi_n (only defined when the basis is the
    tower's alpha), or an ``M x n`` matrix over L for a user-supplied map.
    """

    def __init__(self, basis: Basis, n: int, phi=None, tower: Optional[FieldTower] = None):
        self.basis = basis
        self.field = basis.field
        self.q = basis.q
        self.M = basis.m
        self.n = n
        self.tower = tower
        self.phi_matrix = None
        if phi is not None:
            if len(phi) != self.M or any(len(r) != n for r in phi):
                raise ParameterError(f"phi must be a {self.M}x{n} matrix")
            self.phi_matrix = [list(r) for r in phi]
        elif n <= self.M:
            # phi_n(alpha_n) = alpha must hold for the interpolation-based map
            if self.phi(self.alpha_n) != tuple(basis.elements):
                raise ParameterError("phi_n does not fix the basis")

    @classmethod
    def for_tower(cls, tower: FieldTower, n: int, phi=None) -> "StarContext":
        return cls(tower.alpha, n, phi, tower)

    @property
    def alpha(self) -> tuple:
        return tuple(self.basis.elements)

    @property
    def alpha_n(self) -> tuple:
        """The first n basis elements; the completion for n > M is not fixed."""
        if self.n > self.M:
            raise ParameterError("alpha_n is only defined here for n <= m")
        return self.alpha[:self.n]

    def descriptor(self) -> dict:
        d = {"basis": list(self.basis.elements), "n": self.n}
        if self.phi_matrix is not None:
            d["phi"] = self.phi_matrix
        return d

    def star(self, c: Sequence[int], d: Sequence[int]) -> tuple:
        if len(c) != self.M:
            raise ParameterError(f"left factor must have length {self.M}")
        if len(d) != self.n:
            raise ParameterError(f"right factor must have length {self.n}")
        F = self.field
        rows = mat_rep(self.basis, d)
        acc = [0] * self.n
        for ci, row in zip(c, rows):
            if ci:
                for j, x in enumerate(row):
                    if x:
                        acc[j] = F.add(acc[j], F.mul(ci, x))
        return tuple(acc)

    def phi(self, c: Sequence[int]) -> tuple:
        if len(c) != self.n:
            raise ParameterError(f"phi expects length {self.n}")
        F = self.field
        if self.phi_matrix is not None:
            return linalg.mat_vec(F, self.phi_matrix, c)
        if self.n >= self.M:
            return tuple(c[:self.M])
        # F_c interpolates c on the first n basis elements, then is read off on all M
        Fc = interpolate(F, self.q, list(c), self.alpha[:self.n])
        return lp_eval(Fc, self.alpha)

    def star_phi(self, c: Sequence[int], d: Sequence[int]) -> tuple:
        return self.star(self.phi(c), d)

    def transposed_pairing(self, c: Sequence[int], d: Sequence[int]) -> tuple:
        """``c(d) = (c . d_1, ..., c . d_M)``, so that ``M(c(d)) = M(c) M(d)^T``."""
        if len(c) != len(d):
            raise ParameterError("pairing needs equal lengths")
        F = self.field
        return tuple(linalg.dot(F, c, row) for row in mat_rep(self.basis, d))

    def vec_transpose(self, b: Sequence[int]) -> tuple:
        """``b^T`` with ``M(b^T) = M(b)^T``; needs length M."""
        if len(b) != self.M:
            raise ParameterError(f"transpose needs length {self.M}")
        return rep_inverse(self.basis, linalg.transpose(mat_rep(self.basis, b)))


def star(ctx: StarContext, c, d) -> tuple:
    return ctx.star(c, d)


def phi_n(ctx: StarContext, c) -> tuple:
    return ctx.phi(c)


def star_phi(ctx: StarContext, c, d) -> tuple:
    return ctx.star_phi(c, d)


def transposed_pairing(ctx: StarContext, c, d) -> tuple:
    return ctx.transposed_pairing(c, d)


def vec_transpose(ctx: StarContext, b) -> tuple:
    return ctx.vec_transpose(b)


def product_generators(ctx: StarContext, B: ExtLinearCode, A: ExtLinearCode,
                       use_phi: bool = False) -> list:
    """All ``b_i * (gamma_l a_j)`` for generator rows and gamma in A's F_q-basis."""
    prod = ctx.star_phi if use_phi else ctx.star
    return [prod(b, a) for b in B.gens for a in A.fq_basis()]


def space_product_ext(ctx: StarContext, B: ExtLinearCode, A: ExtLinearCode,
                      use_phi: bool = False, tower: Optional[FieldTower] = None,
                      level: str = "ext") -> ExtLinearCode:
    """The L-span of ``B * A`` as a code of length n.

    Generators are added one at a time and the loop stops once the span is
    everything.
    """
    F = ctx.field
    tower = tower or ctx.tower or B.tower
    rows: list = []
    prod = ctx.star_phi if use_phi else ctx.star
    for b in B.gens:
        for a in A.fq_basis():
            v = prod(b, a)
            if any(v) and linalg.rank(F, rows + [v]) > len(rows):
                rows = linalg.rref(F, rows + [v], ctx.n)[0]
                if len(rows) == ctx.n:
                    return ExtLinearCode(tower, ctx.n, rows, level)
    return ExtLinearCode(tower, ctx.n, rows, level)


def space_product_base(Bc: MatrixCode, Ac: MatrixCode) -> MatrixCode:
    """F_q-span of all products ``B_i A_j``."""
    if Bc.cols != Ac.rows:
        raise ParameterError(f"cannot multiply {Bc.shape} by {Ac.shape} matrices")
    F = Ac.field
    size = Bc.rows * Ac.cols
    rows: list = []
    for Bm in Bc.matrices():
        for Am in Ac.matrices():
            v = tuple(x for r in linalg.mat_mul(F, Bm, Am) for x in r)
            if any(v) and linalg.rank(F, rows + [v]) > len(rows):
                rows = linalg.rref(F, rows + [v], size)[0]
                if len(rows) == size:
                    break
    return MatrixCode.from_flat(F, Bc.rows, Ac.cols, rows, Ac.basis_used)
