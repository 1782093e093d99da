"""Finite fields and the tower F_q < F_{q^m} < F_{q^n}.

Elements are plain integers. An element of a degree-d extension of a field
of size b is ``sum(c_i * b**i)`` where ``c_i`` is the coefficient of ``x**i``.
Because every level uses this rule, the base-q digits of an element are its
coordinates in the polynomial basis over F_q, and the inclusions
F_q < F_{q^m} < F_{q^n} are the identity on integers.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import ParameterError, ReducibleModulusError, UnsupportedParameterError

TABLE_LIMIT = 1 << 16
MAX_Q = 16


def _prime_power(q: int):
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            return (p, e) if r == 1 else None
    return None


def _prime_factors(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class _Field:
    order: int
    char: int

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        return range(self.order)

    def np_tables(self):
        """``(add, mul, sub, inv, neg)`` lookup tables as numpy arrays."""
        return _np_tables(self)

    def __repr__(self):
        return f"GF({self.order})"


def _np_tables(field):
    cached = getattr(field, "_np_cache", None)
    if cached is not None:
        return cached
    Q = field.order
    if Q > 4096:
        raise ParameterError("numpy tables only for fields of order <= 4096")
    els = range(Q)
    add = np.array([[field.add(a, b) for b in els] for a in els], dtype=np.int64)
    mul = np.array([[field.mul(a, b) for b in els] for a in els], dtype=np.int64)
    neg = np.array([field.neg(a) for a in els], dtype=np.int64)
    sub = add[:, neg]
    inv = np.array([0] + [field.inv(a) for a in range(1, Q)], dtype=np.int64)
    field._np_cache = (add, mul, sub, inv, neg)
    return field._np_cache


class PrimeField(_Field):
    def __init__(self, p: int):
        if _prime_power(p) != (p, 1):
            raise ParameterError(f"{p} is not prime")
        self.p = self.char = self.order = p
        self.base = None
        self.degree = 1
        self.key = ("P", p)

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        if a == 0:
            return 1 if e == 0 else 0
        return pow(a, e % (self.p - 1), self.p)


# -- polynomials over a field: little-endian lists, no trailing zeros -------


def _ptrim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return _ptrim(out)


def _pdivmod(F, f, g):
    f = list(f)
    g = _ptrim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = F.inv(g[-1])
    dg = len(g) - 1
    quot = [0] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c:
            c = F.mul(c, lead_inv)
            quot[i - dg] = c
            for j, b in enumerate(g):
                if b:
                    f[i - dg + j] = F.sub(f[i - dg + j], F.mul(c, b))
    return _ptrim(quot), _ptrim(f[:dg])


def _pgcd(F, f, g):
    f, g = _ptrim(f), _ptrim(g)
    while g:
        f, g = g, _pdivmod(F, f, g)[1]
    return f


def _ppowmod(F, f, e, mod):
    result = [1]
    base = _pdivmod(F, f, mod)[1]
    while e:
        if e & 1:
            result = _pdivmod(F, _pmul(F, result, base), mod)[1]
        base = _pdivmod(F, _pmul(F, base, base), mod)[1]
        e >>= 1
    return result


def is_irreducible(F, f) -> bool:
    """Ben-Or test: no factor of degree <= deg(f)/2."""
    f = _ptrim(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = _ppowmod(F, h, F.order, f)
        diff = _ptrim([F.sub(a, b) for a, b in _zip_pad(h, x)])
        g = _pgcd(F, f, diff)
        if len(g) > 1:
            return False
    return True


def is_primitive(F, f) -> bool:
    if not is_irreducible(F, f):
        return False
    d = len(_ptrim(f)) - 1
    N = F.order ** d - 1
    for p in _prime_factors(N):
        if _ppowmod(F, [0, 1], N // p, f) == [1]:
            return False
    return True


def _zip_pad(f, g):
    n = max(len(f), len(g))
    return zip(list(f) + [0] * (n - len(f)), list(g) + [0] * (n - len(g)))


def first_primitive_polynomial(F, degree: int) -> tuple:
    """Monic primitive polynomial of the given degree with the smallest encoding.

    Candidates are ordered by ``sum(c_i * |F|**i)`` over the non-leading
    coefficients, i.e. by the integer that encodes the residue class of
    ``x**degree``.
    """
    Q = F.order
    for v in range(1, Q ** degree):
        coeffs = [(v // Q ** i) % Q for i in range(degree)] + [1]
        if coeffs[0] and is_primitive(F, coeffs):
            return tuple(coeffs)
    raise ParameterError(f"no primitive polynomial of degree {degree} over GF({Q})")


class ExtensionField(_Field):
    """``base[x] / (modulus)``; elements encoded base-|base| little-endian."""

    def __init__(self, base, modulus: Sequence[int], tables: Optional[bool] = None):
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise ParameterError("modulus must be monic of degree >= 1")
        if any(not 0 <= c < base.order for c in modulus):
            raise ParameterError("modulus coefficient outside the base field")
        if not is_irreducible(base, modulus):
            raise ReducibleModulusError(f"{list(modulus)} is reducible over {base!r}")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.char = base.char
        self.b = base.order
        self.order = base.order ** self.degree
        self.key = ("E", base.key, modulus)
        self._pows = [self.b ** i for i in range(self.degree)]
        if tables is None:
            tables = self.order <= TABLE_LIMIT
        self.has_tables = bool(tables)
        self._addtab = None
        if self.char != 2 and self.order <= 729:
            self._addtab = [[self._add_digits(a, b) for b in range(self.order)]
                            for a in range(self.order)]
        if self.has_tables:
            self._build_tables()

    # -- encoding
    def coeffs(self, a) -> list:
        b = self.b
        return [(a // p) % b for p in self._pows]

    def from_coeffs(self, cs) -> int:
        return sum(c * p for c, p in zip(cs, self._pows))

    # -- additive structure
    def _add_digits(self, a, b):
        p = self.char
        out, place = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def add(self, a, b):
        if self.char == 2:
            return a ^ b
        if self._addtab is not None:
            return self._addtab[a][b]
        return self._add_digits(a, b)

    def neg(self, a):
        if self.char == 2:
            return a
        p = self.char
        out, place = 0, 1
        while a:
            out += ((-(a % p)) % p) * place
            a //= p
            place *= p
        return out

    # -- multiplicative structure
    def _mul_schoolbook(self, a, b):
        if not a or not b:
            return 0
        F = self.base
        prod = _pmul(F, self.coeffs(a), self.coeffs(b))
        rem = _pdivmod(F, prod, self.modulus)[1]
        return self.from_coeffs(rem)

    def _build_tables(self):
        N = self.order - 1
        gen = self._find_generator()
        exp = [0] * (2 * N)
        log = [0] * self.order
        x = 1
        for i in range(N):
            exp[i] = x
            log[x] = i
            x = self._mul_schoolbook(x, gen)
        for i in range(N, 2 * N):
            exp[i] = exp[i - N]
        self._exp, self._log = exp, log
        self.generator = gen

    def _find_generator(self):
        N = self.order - 1
        factors = _prime_factors(N) if N > 1 else []
        candidates = [self.b] + list(range(2, self.order)) if self.degree > 1 else range(1, self.order)
        for g in candidates:
            if g == 0 or g >= self.order:
                continue
            if all(self._pow_schoolbook(g, N // p) != 1 for p in factors):
                return g
        raise ParameterError("no generator found")  # unreachable for a field

    def _pow_schoolbook(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._mul_schoolbook(result, a)
            a = self._mul_schoolbook(a, a)
            e >>= 1
        return result

    def mul(self, a, b):
        if not a or not b:
            return 0
        if self.has_tables:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_schoolbook(a, b)

    def pow(self, a, e):
        if a == 0:
            return 1 if e == 0 else 0
        N = self.order - 1
        if self.has_tables:
            return self._exp[(self._log[a] * e) % N]
        return self._pow_schoolbook(a, e % N)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.has_tables:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self._pow_schoolbook(a, self.order - 2)

    def log(self, a):
        return self._log[a]

    def __repr__(self):
        return f"GF({self.b}^{self.degree})"


def field_arith(F, op: str, a: int, b: Optional[int] = None) -> int:
    """Dispatch ``add | sub | mul | div | inv`` on integer-encoded elements."""
    if op == "inv":
        return F.inv(a)
    if op not in ("add", "sub", "mul", "div"):
        raise ParameterError(f"unknown operation {op!r}")
    return getattr(F, op)(a, b)


# -- default moduli ----------------------------------------------------------


@lru_cache(maxsize=None)
def _moduli_table():
    text = resources.files("rankecp").joinpath("data/moduli.json").read_text()
    return json.loads(text)


def default_modulus(F, degree: int) -> tuple:
    """Shipped table lookup, falling back to :func:`first_primitive_polynomial`."""
    key = f"{_field_label(F)}/{degree}"
    table = _moduli_table()["moduli"]
    if key in table:
        return tuple(table[key])
    return first_primitive_polynomial(F, degree)


def _field_label(F) -> str:
    if F.base is None:
        return str(F.order)
    return f"{_field_label(F.base)}[{','.join(map(str, F.modulus))}]"


@lru_cache(maxsize=None)
def make_base_field(q: int, modulus: Optional[tuple] = None):
    pe = _prime_power(q)
    if pe is None or q > MAX_Q:
        raise UnsupportedParameterError(f"q={q} must be a prime power <= {MAX_Q}")
    p, e = pe
    P = PrimeField(p)
    if e == 1:
        return P
    return ExtensionField(P, modulus or default_modulus(P, e))


# -- bases -------------------------------------------------------------------


class Basis:
    """An F_q-basis of a field, with coordinate maps.

    ``coords(x)`` returns the unique ``(c_1..c_m)`` in F_q with
    ``x = sum(c_i * elements[i])``.
    """

    def __init__(self, field, base, elements: Sequence[int]):
        self.field = field
        self.base = base
        self.q = base.order
        self.elements = tuple(int(e) for e in elements)
        self.m = _degree_over(field, self.q)
        if len(self.elements) != self.m:
            raise ParameterError(f"need {self.m} basis elements, got {len(self.elements)}")
        P = [self.digits(e) for e in self.elements]
        try:
            self._pinv = linalg.inverse(base, P)
        except ZeroDivisionError:
            raise ParameterError("basis elements are not F_q-linearly independent") from None
        self._table = None
        if field.order <= TABLE_LIMIT:
            self._table = [self._coords_solve(x) for x in range(field.order)]

    def digits(self, x) -> list:
        q = self.q
        out = []
        for _ in range(self.m):
            out.append(x % q)
            x //= q
        return out

    def _coords_solve(self, x):
        d = self.digits(x)
        F = self.base
        return tuple(linalg.dot(F, d, [self._pinv[i][j] for i in range(self.m)])
                     for j in range(self.m))

    def coords(self, x) -> tuple:
        if self._table is not None:
            return self._table[x]
        return self._coords_solve(x)

    def combine(self, coeffs) -> int:
        F = self.field
        acc = 0
        for c, a in zip(coeffs, self.elements):
            if c:
                acc = F.add(acc, F.mul(c, a))
        return acc

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.m

    def __eq__(self, other):
        return isinstance(other, Basis) and self.elements == other.elements \
            and self.field.key == other.field.key

    def __hash__(self):
        return hash((self.elements, self.field.key))

    def __repr__(self):
        return f"Basis({list(self.elements)})"


def _degree_over(F, q: int) -> int:
    d, size = 0, 1
    while size < F.order:
        size *= q
        d += 1
    if size != F.order:
        raise ParameterError(f"{F!r} is not an extension of GF({q})")
    return d


LEVELS = ("base", "ext", "top")


class FieldTower:
    """The chain F_q < F_{q^m} (< F_{q^n}, n = s*m) with a basis alpha and its dual.

    ``alpha`` defaults to the polynomial basis 1, x, ..., x^(m-1) of F_{q^m}.
    """

    def __init__(self, q: int, m: int, modulus=None, s: Optional[int] = None,
                 top_modulus=None, alpha=None, base_modulus=None, tables: Optional[bool] = None):
        if m < 1:
            raise ParameterError("m must be positive")
        self.q = q
        self.m = m
        self.base = make_base_field(q, tuple(base_modulus) if base_modulus else None)
        if m == 1:
            if modulus is not None and len(modulus) != 2:
                raise ParameterError("degree-1 tower takes no modulus")
            self.ext = self.base
            self.modulus = None
        else:
            if modulus is None:
                modulus = default_modulus(self.base, m)
            if len(modulus) != m + 1:
                raise ParameterError(f"modulus must have degree {m}")
            self.ext = ExtensionField(self.base, modulus, tables=tables)
            self.modulus = tuple(modulus)
        self.s = s
        self.top = None
        self.top_modulus = None
        if s is not None:
            if s < 1:
                raise ParameterError("s must be positive")
            if s == 1:
                self.top = self.ext
            else:
                if top_modulus is None:
                    top_modulus = default_modulus(self.ext, s)
                self.top = ExtensionField(self.ext, top_modulus, tables=tables)
                self.top_modulus = tuple(top_modulus)
        self.n = m * s if s is not None else None
        if alpha is None:
            alpha = [q ** i for i in range(m)]
        self.alpha = Basis(self.ext, self.base, alpha)
        self.alpha_dual = Basis(self.ext, self.base, dual_basis(self, self.alpha.elements))
        for i, a in enumerate(self.alpha.elements):
            for j, b in enumerate(self.alpha_dual.elements):
                assert self.trace(self.ext.mul(a, b)) == int(i == j)

    def level(self, name: str):
        F = {"base": self.base, "ext": self.ext, "top": self.top}.get(name)
        if F is None:
            raise ParameterError(f"tower has no level {name!r}")
        return F

    def degree(self, name: str) -> int:
        """Degree of a level over F_q."""
        return _degree_over(self.level(name), self.q)

    def basis(self, which: str = "alpha") -> Basis:
        if which in ("alpha", "a"):
            return self.alpha
        if which in ("alpha_prime", "dual", "alpha_dual"):
            return self.alpha_dual
        raise ParameterError(f"unknown basis {which!r}")

    def frobenius(self, x: int, j: int = 1, level: str = "ext") -> int:
        """``x ** (q ** j)``; j is reduced modulo the degree of the level."""
        F = self.level(level)
        d = _degree_over(F, self.q)
        return F.pow(x, self.q ** (j % d)) if d else x

    def trace(self, x: int, frm: str = "ext", to: str = "base") -> int:
        if frm not in LEVELS or to not in LEVELS or LEVELS.index(to) > LEVELS.index(frm):
            raise ParameterError(f"levels {frm!r} -> {to!r} are not nested")
        F = self.level(frm)
        lower = self.level(to)
        d = _degree_over(F, lower.order)
        Q = lower.order
        acc, y = 0, x
        for _ in range(d):
            acc = F.add(acc, y)
            y = F.pow(y, Q)
        return acc

    def descriptor(self) -> dict:
        d = {"q": self.q, "m": self.m}
        if self.modulus is not None:
            d["modulus"] = list(self.modulus)
        if self.s is not None:
            d["s"] = self.s
            if self.top_modulus is not None:
                d["top_modulus"] = list(self.top_modulus)
        if self.base.base is not None:
            d["base_modulus"] = list(self.base.modulus)
        if self.alpha.elements != tuple(self.q ** i for i in range(self.m)):
            d["alpha"] = list(self.alpha.elements)
        return d

    def __repr__(self):
        extra = f", s={self.s}" if self.s else ""
        return f"FieldTower(q={self.q}, m={self.m}{extra})"


def make_field(q: int, m: int = 1, modulus=None, **kwargs) -> FieldTower:
    """Build a tower; ``modulus`` is little-endian with the constant term first."""
    return _make_field_cached(q, m, _tup(modulus), kwargs.get("s"), _tup(kwargs.get("top_modulus")),
                              _tup(kwargs.get("alpha")), _tup(kwargs.get("base_modulus")),
                              kwargs.get("tables"))


def _tup(x):
    return tuple(x) if x is not None else None


@lru_cache(maxsize=64)
def _make_field_cached(q, m, modulus, s, top_modulus, alpha, base_modulus, tables):
    return FieldTower(q, m, modulus=modulus, s=s, top_modulus=top_modulus, alpha=alpha,
                      base_modulus=base_modulus, tables=tables)


def tower_from_descriptor(d: dict) -> FieldTower:
    return make_field(d["q"], d.get("m", 1), d.get("modulus"), s=d.get("s"),
                      top_modulus=d.get("top_modulus"), alpha=d.get("alpha"),
                      base_modulus=d.get("base_modulus"))


def dual_basis(tower: FieldTower, elements: Sequence[int]) -> tuple:
    """The basis a' with Tr(a_i a'_j) = delta_ij, via the inverse Gram matrix."""
    F = tower.ext
    G = [[tower.trace(F.mul(a, b)) for b in elements] for a in elements]
    X = linalg.inverse(tower.base, G)
    m = len(elements)
    return tuple(
        _combine(F, [X[k][j] for k in range(m)], elements) for j in range(m)
    )


def _combine(F, coeffs, elements):
    acc = 0
    for c, a in zip(coeffs, elements):
        if c:
            acc = F.add(acc, F.mul(c, a))
    return acc
