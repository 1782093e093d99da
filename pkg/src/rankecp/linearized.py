"""q-linearized polynomials ``a_0 x + a_1 x^[r] + ... + a_d x^[dr]`` with ``[i] = q^i``.

Multiplication is composition. Coefficients live in ``field``; evaluation
may happen in any field whose encoding extends it (see :mod:`rankecp.fields`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .errors import ParameterError


@dataclass(frozen=True)
class LinPoly:
    field: object
    q: int
    coeffs: tuple = ()
    r: int = 1

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x_power(cls, field, q, i: int, coeff: int = 1, r: int = 1) -> "LinPoly":
        """``coeff * x^[i r]``."""
        return cls(field, q, (0,) * i + (coeff,), r)

    @classmethod
    def identity(cls, field, q, r: int = 1) -> "LinPoly":
        return cls(field, q, (1,), r)

    @property
    def qdegree(self) -> int:
        """Index of the top term, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LinPoly") -> "LinPoly":
        _check_compatible(self, other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return LinPoly(F, self.q, tuple(F.add(x, y) for x, y in zip(a, b)), self.r)

    def __sub__(self, other: "LinPoly") -> "LinPoly":
        return self + other.scale(self.field.neg(1))

    def scale(self, c: int) -> "LinPoly":
        F = self.field
        return LinPoly(F, self.q, tuple(F.mul(c, a) for a in self.coeffs), self.r)

    def __call__(self, x: int, field=None) -> int:
        return lp_eval(self, x, field)

    def __matmul__(self, other: "LinPoly") -> "LinPoly":
        return symbolic_mul(self, other)

    def to_json(self) -> dict:
        return {"r": self.r, "coeffs": list(self.coeffs)}


def _check_compatible(F: LinPoly, G: LinPoly):
    if F.r != G.r:
        raise ParameterError(f"stride mismatch: {F.r} vs {G.r}")
    if F.q != G.q:
        raise ParameterError("polynomials over different base fields")


def lp_eval(F: LinPoly, x, field=None):
    """Evaluate at one element, or elementwise at a sequence of elements."""
    if not isinstance(x, int):
        return tuple(lp_eval(F, xi, field) for xi in x)
    K = field if field is not None else F.field
    step = F.q ** F.r
    acc, y = 0, x
    for a in F.coeffs:
        if a and y:
            acc = K.add(acc, K.mul(a, y))
        y = K.pow(y, step)
    return acc


def symbolic_mul(F: LinPoly, G: LinPoly, reduce: bool = False, m: Optional[int] = None) -> LinPoly:
    """``F o G``; ``(a x^[ir]) o (b x^[jr]) = a b^[ir] x^[(i+j)r]``.

    With ``reduce`` the index is folded modulo ``m`` (x^[m] = x on F_{q^m}),
    which keeps the map on F_{q^m} but not the polynomial itself.
    """
    _check_compatible(F, G)
    K = F.field
    if F.is_zero() or G.is_zero():
        return LinPoly(K, F.q, (), F.r)
    step = F.q ** F.r
    out = [0] * (len(F.coeffs) + len(G.coeffs) - 1)
    # b^[ir] for every G coefficient, updated as i grows
    frob = list(G.coeffs)
    for i, a in enumerate(F.coeffs):
        if a:
            for j, b in enumerate(frob):
                if b:
                    out[i + j] = K.add(out[i + j], K.mul(a, b))
        frob = [K.pow(b, step) for b in frob]
    if reduce:
        if m is None:
            raise ParameterError("reduce needs the extension degree m")
        folded = [0] * min(m, len(out))
        for i, c in enumerate(out):
            folded[i % m] = K.add(folded[i % m], c)
        out = folded
    return LinPoly(K, F.q, tuple(out), F.r)


def reduce_mod(F: LinPoly, m: int) -> LinPoly:
    K = F.field
    folded = [0] * min(m, max(len(F.coeffs), 1))
    for i, c in enumerate(F.coeffs):
        folded[i % m] = K.add(folded[i % m], c)
    return LinPoly(K, F.q, tuple(folded), F.r)


def interpolate(field, q: int, values: Sequence[int], points: Sequence[int]) -> LinPoly:
    """Unique F with q-degree < n and F(points[i]) = values[i].

    Built as ``sum(c_i G_i / G_i(alpha_i))`` where each ``G_i`` is the
    composition of the annihilators ``x^[1] - (v^[1]/v) x`` of the other
    points, ``v`` being the image of the next point under the partial chain.
    """
    n = len(points)
    if len(values) != n:
        raise ParameterError("need one value per point")
    K = field
    result = LinPoly(K, q, ())
    for i in range(n):
        c = values[i]
        if not c:
            continue
        G = annihilator(K, q, [p for j, p in enumerate(points) if j != i])
        g = lp_eval(G, points[i])
        if g == 0:
            raise ParameterError("interpolation points are not F_q-linearly independent")
        result = result + G.scale(K.mul(c, K.inv(g)))
    return result


def annihilator(field, q: int, points: Sequence[int]) -> LinPoly:
    """Monic linearized polynomial of q-degree len(points) vanishing on their F_q-span."""
    K = field
    G = LinPoly.identity(K, q)
    for p in points:
        v = lp_eval(G, p)
        if v == 0:
            raise ParameterError("interpolation points are not F_q-linearly independent")
        # L = x^[1] - (v^q / v) x
        ratio = K.mul(K.pow(v, q), K.inv(v))
        L = LinPoly(K, q, (K.neg(ratio), 1))
        G = symbolic_mul(L, G)
    return G


def interpolate_moore(field, q: int, values: Sequence[int], points: Sequence[int]) -> LinPoly:
    """Same result as :func:`interpolate`, by solving the transposed Moore system."""
    n = len(points)
    A = [[field.pow(p, q ** j) for j in range(n)] for p in points]
    sol = linalg.solve(field, A, list(values), n)
    if not sol.is_unique:
        raise ParameterError("interpolation points are not F_q-linearly independent")
    return LinPoly(field, q, sol.particular)


def moore_matrix(field, q: int, elements: Sequence[int], width: int, stride: int = 1) -> list:
    """Row i is ``(b_i, b_i^[s], b_i^[2s], ..., b_i^[(width-1)s])``."""
    step = q ** stride
    rows = []
    for b in elements:
        row, y = [], b
        for _ in range(width):
            row.append(y)
            y = field.pow(y, step)
        rows.append(row)
    return rows


def evaluation_span(field, q: int, k: int, points: Sequence[int], r: int = 1) -> list:
    """Generator rows of ``{ev_points(F) : F = sum_{j<k} a_j x^[jr]}``."""
    return linalg.transpose(moore_matrix(field, q, points, k, r)) if k else []
