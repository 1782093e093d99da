"""Executable checks of the minimum-distance bounds coming from error-correcting pairs.

Each check brute-forces its premises, then the conclusion, and returns a
:class:`BoundReport`. A report whose premises hold but whose conclusion
fails would be a counterexample to a theorem, hence a bug somewhere.

The ``random_*`` helpers draw admissible-looking instances built from
Gabidulin codes and their random subcodes, for property sweeps.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg
from .codes import ExtLinearCode, MatrixCode, cached_distance, to_matrix_code
from .errors import ParameterError
from .families import find_normal_element, gabidulin, skew_cyclic_code
from .fields import FieldTower, make_field
from .matrix_space import digit_matrix
from .star import space_product_base

BOUND_NAMES = ("singleton", "product", "dual-product", "roos", "rank-ht")


@dataclass
class Premise:
    name: str
    ok: bool
    detail: str


@dataclass
class BoundReport:
    name: str
    conclusion: str
    premises: list = field(default_factory=list)
    actual: dict = field(default_factory=dict)
    holds: Optional[bool] = None
    params: dict = field(default_factory=dict)

    @property
    def admissible(self) -> bool:
        return all(p.ok for p in self.premises)

    @property
    def passed(self) -> bool:
        """True when the conclusion holds, or when a premise fails (nothing is claimed)."""
        return bool(self.holds) if self.admissible else True

    @property
    def counterexample(self) -> bool:
        return self.admissible and self.holds is False

    def to_json(self) -> dict:
        return {
            "name": self.name, "conclusion": self.conclusion, "params": self.params,
            "premises": [{"name": p.name, "ok": p.ok, "detail": p.detail} for p in self.premises],
            "admissible": self.admissible, "holds": self.holds, "actual": self.actual,
        }


def _d(code) -> int:
    return cached_distance(code)


def _as_matrix(code) -> MatrixCode:
    return to_matrix_code(code) if isinstance(code, ExtLinearCode) else code


def product_in_dual(Bc: MatrixCode, Ac: MatrixCode, Cc: MatrixCode) -> bool:
    """``𝓑𝓐`` inside ``𝓒*``."""
    P = space_product_base(Bc, Ac)
    F = Cc.field
    return all(linalg.dot(F, p, c) == 0 for p in P.basis for c in Cc.basis)


def singleton_sum(D) -> BoundReport:
    D = _as_matrix(D)
    d1, d2 = _d(D), _d(D.dual())
    n = D.cols
    rep = BoundReport("singleton", f"d_R(D) + d_R(D*) <= {n + 2}",
                      actual={"d_D": d1, "d_Ddual": d2, "equality": d1 + d2 == n + 2})
    rep.holds = d1 + d2 <= n + 2
    return rep


def bound_product(A, B, C, a: int, b: int) -> BoundReport:
    """If ``𝓑𝓐 ⊆ 𝓒*``, ``d_R(𝓐*) > a > 0`` and ``d_R(𝓑*) > b > 0`` then ``d_R(𝓒) >= a + b``."""
    A, B, C = map(_as_matrix, (A, B, C))
    dAs, dBs = _d(A.dual()), _d(B.dual())
    rep = BoundReport("product", f"d_R(C) >= {a + b}", params={"a": a, "b": b})
    rep.premises = [
        Premise("BA in C*", product_in_dual(B, A, C), "product space orthogonal to C"),
        Premise("d_R(A*) > a > 0", dAs > a > 0, f"d_R(A*) = {dAs}, a = {a}"),
        Premise("d_R(B*) > b > 0", dBs > b > 0, f"d_R(B*) = {dBs}, b = {b}"),
    ]
    dC = _d(C)
    rep.actual = {"d_C": dC, "d_Adual": dAs, "d_Bdual": dBs}
    rep.holds = dC >= a + b
    return rep


def bound_dual_product(A, B, C, b: int, c: int) -> BoundReport:
    """If ``𝓑𝓐 ⊆ 𝓒*``, ``d_R(𝓑*) > b > 0`` and ``d_R(𝓒*) > c > 0`` then ``d_R(𝓐) >= b + c``."""
    A, B, C = map(_as_matrix, (A, B, C))
    dBs, dCs = _d(B.dual()), _d(C.dual())
    rep = BoundReport("dual-product", f"d_R(A) >= {b + c}", params={"b": b, "c": c})
    rep.premises = [
        Premise("BA in C*", product_in_dual(B, A, C), "product space orthogonal to C"),
        Premise("d_R(B*) > b > 0", dBs > b > 0, f"d_R(B*) = {dBs}, b = {b}"),
        Premise("d_R(C*) > c > 0", dCs > c > 0, f"d_R(C*) = {dCs}, c = {c}"),
    ]
    dA = _d(A)
    m, n = A.rows, A.cols
    rep.actual = {"d_A": dA, "d_Bdual": dBs, "d_Cdual": dCs,
                  "A_is_mrd": mrd_check(A) if A.dim % m == 0 and n <= m else None}
    rep.holds = dA >= b + c
    return rep


def roos_bound(A, B, C, a: int, b: int) -> BoundReport:
    """Five premises give ``d_R(𝓒) > a + b``."""
    A, B, C = map(_as_matrix, (A, B, C))
    m, n = A.rows, A.cols
    dA, dAs, dBs = _d(A), _d(A.dual()), _d(B.dual())
    rep = BoundReport("roos", f"d_R(C) > {a + b}", params={"a": a, "b": b})
    rep.premises = [
        Premise("a, b > 0", a > 0 and b > 0, f"a = {a}, b = {b}"),
        Premise("(1) BA in C*", product_in_dual(B, A, C), "product space orthogonal to C"),
        Premise("(2) dim A > m a", A.dim > m * a, f"dim A = {A.dim}, m a = {m * a}"),
        Premise("(3) d_R(B*) > b", dBs > b, f"d_R(B*) = {dBs}"),
        Premise("(4) d_R(A) + a + b > n", dA + a + b > n, f"d_R(A) = {dA}, n = {n}"),
        Premise("(5) d_R(A*) > 1", dAs > 1, f"d_R(A*) = {dAs}"),
    ]
    dC = _d(C)
    rep.actual = {"d_C": dC, "d_A": dA, "d_Adual": dAs, "d_Bdual": dBs}
    rep.holds = dC > a + b
    return rep


def rank_ht_bound(tower: FieldTower, I: Sequence[int], normal: int, b: int, c: int,
                  delta: int, w: int) -> BoundReport:
    """Rank Hartmann-Tzeng: if ``{a^[b+i+jc]}`` is independent and lies in the root
    space T, then the q-cyclic code of T has ``d_R >= delta + w``."""
    n, m = tower.n, tower.m
    C = skew_cyclic_code(tower, I, normal)
    T = [tower.frobenius(normal, i, "top") for i in I]
    exps = [b + i + j * c for i in range(delta - 1) for j in range(w + 1)]
    S = [tower.frobenius(normal, e, "top") for e in exps]
    rk = lambda xs: linalg.rank(tower.base, digit_matrix(tower.q, n, xs)) if xs else 0
    g = math.gcd(c, n)
    rep = BoundReport("rank-ht", f"d_R(C) >= {delta + w}",
                      params={"I": sorted(set(i % n for i in I)), "normal": normal, "b": b,
                              "c": c, "delta": delta, "w": w})
    rep.premises = [
        Premise("delta + w <= m", delta >= 1 and w >= 0 and delta + w <= m,
                f"delta = {delta}, w = {w}, m = {m}"),
        Premise("gcd(c, n) < delta", c > 0 and g < delta, f"gcd({c}, {n}) = {g}"),
        Premise("set is independent", rk(S) == len(S), f"rank {rk(S)} of {len(S)} elements"),
        Premise("set inside T", rk(T + S) == rk(T), f"dim T = {rk(T)}"),
    ]
    dC = _d(C)
    rep.actual = {"d_C": dC, "dim_C": C.k, "exponents": sorted(e % n for e in exps)}
    rep.holds = dC >= delta + w
    return rep


def mrd_check(code, orientation: str = "auto") -> bool:
    """Singleton with equality: ``dim = max(m, n) (min(m, n) - d + 1)``.

    ``orientation`` is ``"as-is"`` (needs n <= m), ``"transpose"``, or
    ``"auto"``, which transposes when n > m.
    """
    M = _as_matrix(code)
    if orientation == "transpose" or (orientation == "auto" and M.cols > M.rows):
        M = M.transpose()
    elif orientation == "as-is" and M.cols > M.rows:
        raise ParameterError("as-is orientation needs n <= m; pass 'transpose' or 'auto'")
    elif orientation not in ("auto", "as-is", "transpose"):
        raise ParameterError(f"unknown orientation {orientation!r}")
    if M.dim == 0:
        return True
    m, n = M.rows, M.cols
    return M.dim == m * (n - _d(M) + 1)


# ---------------------------------------------------------------------------
# random instances


MATRIX_CONFIGS = ((2, 2, 2), (2, 3, 2), (2, 3, 3), (2, 4, 3), (2, 4, 4), (3, 2, 2))
HT_CONFIGS = ((2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3))


def random_points(tower: FieldTower, n: int, rng: random.Random) -> tuple:
    while True:
        pts = [rng.randrange(1, tower.ext.order) for _ in range(n)]
        if linalg.rank(tower.base, digit_matrix(tower.q, tower.m, pts)) == n:
            return tuple(pts)


def random_subcode(C: MatrixCode, rng: random.Random, dim: Optional[int] = None) -> MatrixCode:
    k = rng.randint(0, C.dim) if dim is None else dim
    F = C.field
    while True:
        coeffs = [[rng.randrange(F.order) for _ in range(C.dim)] for _ in range(k)]
        if linalg.rank(F, coeffs) == k:
            return MatrixCode(F, C.rows, C.cols, [C.combine(c) for c in coeffs], C.basis_used)


def _maybe_sub(C: MatrixCode, rng: random.Random) -> MatrixCode:
    if C.dim == 0 or rng.random() < 0.6:
        return C
    return random_subcode(C, rng, rng.randint(max(1, C.dim - 3), C.dim))


def _coprime_stride(m: int, rng: random.Random) -> int:
    return rng.choice([r for r in range(1, m + 1) if math.gcd(r, m) == 1])


def random_gabidulin_triple(rng: random.Random, config=None):
    """``(tower, A, B)``: A from Gab_{kA,m,n}, B from Gab_{kB,m,m}(alpha), both as matrix codes."""
    q, m, n = config or rng.choice(MATRIX_CONFIGS)
    tower = make_field(q, m)
    r = _coprime_stride(m, rng)
    kA = rng.randint(1, n - 1) if n > 1 else 1
    kB = rng.randint(1, max(1, n - kA))
    A = to_matrix_code(gabidulin(tower, kA, n, r, random_points(tower, n, rng)))
    Bb = tower.alpha.elements if rng.random() < 0.8 else random_points(tower, m, rng)
    B = to_matrix_code(gabidulin(tower, kB, m, r, Bb))
    return tower, _maybe_sub(A, rng), _maybe_sub(B, rng)


def random_product_instance(rng: random.Random, config=None):
    """``(A, B, C, a, b)`` with C a random subcode of ``(𝓑𝓐)*``."""
    _, A, B = random_gabidulin_triple(rng, config)
    Cmax = space_product_base(B, A).dual()
    C = _maybe_sub(Cmax, rng)
    a = rng.randint(1, max(1, _d(A.dual()) - 1))
    b = rng.randint(1, max(1, _d(B.dual()) - 1))
    return A, B, C, a, b


def random_dual_product_instance(rng: random.Random, config=None):
    """``(A, B, C, b, c)`` with A a random subcode of ``{A : <B A, C> = 0}``."""
    q, m, n = config or rng.choice(MATRIX_CONFIGS)
    tower = make_field(q, m)
    r = _coprime_stride(m, rng)
    kB = rng.randint(1, max(1, n - 1))
    kC = rng.randint(kB, n) if kB < n else n
    B = _maybe_sub(to_matrix_code(gabidulin(tower, kB, m, r)), rng)
    C0 = gabidulin(tower, kC, n, r, random_points(tower, n, rng)).dual()
    C = _maybe_sub(to_matrix_code(C0, "alpha_prime"), rng)
    # <B A, C> = <A, B^T C>
    Amax = space_product_base(B.transpose(), C).dual()
    A = _maybe_sub(Amax, rng)
    b = rng.randint(1, max(1, _d(B.dual()) - 1))
    c = rng.randint(1, max(1, _d(C.dual()) - 1))
    return A, B, C, b, c


def random_roos_instance(rng: random.Random, config=None):
    A, B, C, _, _ = random_product_instance(rng, config)
    m = A.rows
    a = rng.randint(1, max(1, (A.dim - 1) // m))
    b = rng.randint(1, max(1, _d(B.dual()) - 1))
    return A, B, C, a, b


def random_singleton_instance(rng: random.Random, config=None):
    q, m, n = config or rng.choice(MATRIX_CONFIGS)
    if rng.random() < 0.5:
        tower = make_field(q, m)
        k = rng.randint(0, n)
        D = to_matrix_code(gabidulin(tower, k, n, 1, random_points(tower, n, rng)))
        return _maybe_sub(D, rng)
    F = make_field(q, 1).base
    return random_subcode(MatrixCode.full(F, m, n), rng)


def _closure(S, m: int, n: int) -> list:
    out = set()
    for e in S:
        for u in range(0, n, m):
            out.add((e + u) % n)
    return sorted(out)


def random_ht_instance(rng: random.Random, config=None):
    """``(tower, I, normal, b, c, delta, w)`` for the rank-HT check."""
    q, m, s = config or rng.choice(HT_CONFIGS)
    tower = make_field(q, m, s=s)
    n = tower.n
    normal = find_normal_element(tower, seed=rng.randrange(1 << 30))
    delta = rng.randint(2, m)
    w = rng.randint(0, m - delta)
    cs = [c for c in range(1, n) if math.gcd(c, n) < delta]
    c = rng.choice(cs)
    b = rng.randrange(n)
    exps = [(b + i + j * c) % n for i in range(delta - 1) for j in range(w + 1)]
    extra = [e for e in range(n) if rng.random() < 0.2]
    I = _closure(exps + extra, m, n)
    return tower, I, normal, b, c, delta, w


def run_bound(name: str, rng: random.Random) -> BoundReport:
    """One random instance of the named bound."""
    if name == "singleton":
        return singleton_sum(random_singleton_instance(rng))
    if name == "product":
        return bound_product(*random_product_instance(rng))
    if name == "dual-product":
        return bound_dual_product(*random_dual_product_instance(rng))
    if name == "roos":
        return roos_bound(*random_roos_instance(rng))
    if name == "rank-ht":
        return rank_ht_bound(*random_ht_instance(rng))
    raise ParameterError(f"unknown bound {name!r}; choose from {', '.join(BOUND_NAMES)}")


def sweep(name: str, rng: random.Random, admissible: int = 100, max_tries: int = 2000):
    """Draw instances until ``admissible`` of them satisfy every premise."""
    reports = []
    tries = 0
    while sum(r.admissible for r in reports) < admissible:
        tries += 1
        if tries > max_tries:
            raise ParameterError(f"only {sum(r.admissible for r in reports)} admissible "
                                 f"{name} instances after {max_tries} draws")
        reports.append(run_bound(name, rng))
    return reports


__all__ = [
    "BOUND_NAMES", "BoundReport", "Premise", "bound_dual_product", "bound_product",
    "mrd_check", "rank_ht_bound", "roos_bound", "run_bound", "singleton_sum", "sweep",
]
