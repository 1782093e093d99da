"""Gabidulin codes and their pairs, normal elements, and skew-cyclic codes."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

from . import linalg
from .codes import ExtLinearCode, min_rank_distance
from .decoder import RankPair
from .errors import ParameterError, RankECPError, SearchError
from .fields import Basis, FieldTower
from .linearized import evaluation_span, moore_matrix
from .matrix_space import digit_matrix
from .star import StarContext


@dataclass(frozen=True)
class GabidulinSpec:
    k: int
    m: int
    n: int
    r: int = 1
    b: tuple = ()

    def to_json(self) -> dict:
        return {"k": self.k, "m": self.m, "n": self.n, "r": self.r, "b": list(self.b)}

    @classmethod
    def from_json(cls, d: dict) -> "GabidulinSpec":
        return cls(d["k"], d["m"], d["n"], d.get("r", 1), tuple(d.get("b", ())))


def _fq_rank(tower: FieldTower, elements: Sequence[int], level: str = "ext") -> int:
    return linalg.rank(tower.base, digit_matrix(tower.q, tower.degree(level), elements))


def default_points(tower: FieldTower, n: int) -> tuple:
    if n > tower.m:
        raise ParameterError(f"need n <= m for evaluation points (n={n}, m={tower.m})")
    return tuple(tower.alpha.elements[:n])


def check_gabidulin_spec(tower: FieldTower, spec: GabidulinSpec) -> GabidulinSpec:
    if spec.m != tower.m:
        raise ParameterError(f"spec has m={spec.m} but the tower has m={tower.m}")
    if not 0 <= spec.k <= spec.n <= spec.m:
        raise ParameterError("need 0 <= k <= n <= m")
    if spec.r < 1 or math.gcd(spec.r, spec.m) != 1:
        raise ParameterError(f"stride r={spec.r} must be positive and coprime to m={spec.m}")
    b = spec.b or default_points(tower, spec.n)
    if len(b) != spec.n:
        raise ParameterError(f"need {spec.n} evaluation points, got {len(b)}")
    if any(not 0 <= x < tower.ext.order for x in b) or _fq_rank(tower, b) != spec.n:
        raise ParameterError("evaluation points must be F_q-linearly independent")
    return GabidulinSpec(spec.k, spec.m, spec.n, spec.r, tuple(b))


def gabidulin(tower: FieldTower, k: int, n: int, r: int = 1, b: Sequence[int] = ()) -> ExtLinearCode:
    """Gab_{k,m,n}(r, b): evaluations of ``sum_{j<k} a_j x^[jr]`` at b."""
    spec = check_gabidulin_spec(tower, GabidulinSpec(k, tower.m, n, r, tuple(b)))
    return ExtLinearCode(tower, n, evaluation_span(tower.ext, tower.q, k, spec.b, r))


def gabidulin_from_spec(tower: FieldTower, spec: GabidulinSpec) -> ExtLinearCode:
    return gabidulin(tower, spec.k, spec.n, spec.r, spec.b)


def frobenius_code(C: ExtLinearCode, e: int) -> ExtLinearCode:
    """Coordinatewise ``x -> x^[e]`` applied to the code."""
    return ExtLinearCode(C.tower, C.n,
                         [[C.tower.frobenius(x, e, C.level) for x in g] for g in C.gens], C.level)


def gabidulin_dual(tower: FieldTower, k: int, n: int, r: int = 1, b: Sequence[int] = ()):
    """``(Gab_k(r, b)^perp, b')`` with the dual checked to equal ``Gab_{n-k}(r, b')``.

    ``b'`` spans the intersection of the conjugates ``D^[-jr]``, ``j < n - k``,
    which for a Gabidulin code D is exactly the line through its point vector.
    """
    C = gabidulin(tower, k, n, r, b)
    D = C.dual()
    if k == n:
        return D, None
    E = D
    for j in range(1, n - k):
        E = intersect_codes(E, frobenius_code(D, -j * r))
    if E.k != 1:
        raise RankECPError(f"dual is not a Gabidulin code (line space has dim {E.k})")
    bp = E.gens[0]
    if _fq_rank(tower, bp) != n or gabidulin(tower, n - k, n, r, bp) != D:
        raise RankECPError("dual is not a Gabidulin code")
    return D, tuple(bp)


def intersect_codes(C: ExtLinearCode, D: ExtLinearCode) -> ExtLinearCode:
    F = C.field
    return ExtLinearCode(C.tower, C.n, linalg.nullspace(F, C.parity + D.parity, C.n), C.level)


def gabidulin_recp(tower: FieldTower, t: int, n: int, r: int = 1, b: Sequence[int] = (),
                   variant: str = "alpha") -> RankPair:
    """The t-pair ``A = Gab_{t+1}(r, b)``, ``B = Gab_{t,m,m}(r, alpha)`` for ``Gab_{2t}(r, b)^perp``.

    ``variant="alpha_n"`` takes ``B = Gab_{t,m,n}(1, alpha_n)`` paired through phi_n.
    """
    m = tower.m
    if not (t >= 1 and 2 * t < n <= m):
        raise ParameterError(f"need 1 <= t and 2t < n <= m (t={t}, n={n}, m={m})")
    A = gabidulin(tower, t + 1, n, r, b)
    C = gabidulin(tower, 2 * t, n, r, b).dual()
    ctx = StarContext.for_tower(tower, n)
    if variant == "alpha":
        B = gabidulin(tower, t, m, r)
        use_phi = False
    elif variant == "alpha_n":
        if r != 1:
            raise ParameterError("the alpha_n variant needs r = 1")
        B = gabidulin(tower, t, n, 1, ctx.alpha_n)
        use_phi = True
    else:
        raise ParameterError(f"unknown variant {variant!r}")
    spec = GabidulinSpec(t + 1, m, n, r, tuple(b) or default_points(tower, n))
    return RankPair("I", A, B, C, t, ctx=ctx, use_phi=use_phi,
                    meta={"family": "gabidulin", "spec": spec.to_json(), "variant": variant})


def find_normal_element(tower: FieldTower, level: str = "top", seed: int = 0,
                        tries: int = 4096) -> int:
    """Seeded random search for x whose Frobenius orbit is an F_q-basis of the level."""
    F = tower.level(level)
    d = tower.degree(level)
    rng = random.Random(seed)
    candidates: Iterable[int] = (rng.randrange(1, F.order) for _ in range(tries))
    for x in list(candidates) + list(range(1, F.order)):
        if is_normal(tower, x, level):
            return x
    raise SearchError(f"no normal element found in a field of degree {d}")


def is_normal(tower: FieldTower, x: int, level: str = "top") -> bool:
    d = tower.degree(level)
    return _fq_rank(tower, normal_orbit(tower, x, level), level) == d


def normal_orbit(tower: FieldTower, x: int, level: str = "top") -> tuple:
    d = tower.degree(level)
    return tuple(tower.frobenius(x, i, level) for i in range(d))


# ---------------------------------------------------------------------------
# skew-cyclic codes


def _check_closed(I: Sequence[int], m: int, n: int, name: str = "I") -> tuple:
    S = sorted({i % n for i in I})
    if any((i + m) % n not in S for i in S):
        raise ParameterError(f"index set {name}={S} is not closed under +{m} mod {n}")
    return tuple(S)


def _top_tower(tower: FieldTower) -> int:
    if tower.top is None:
        raise ParameterError("the tower has no F_{q^n} level")
    return tower.n


def moore_parity(tower: FieldTower, normal: int, I: Sequence[int]) -> list:
    """Rows ``(a^[i], a^[i+1], ..., a^[i+n-1])`` for i in I."""
    n = _top_tower(tower)
    orbit = [tower.frobenius(normal, i, "top") for i in I]
    return moore_matrix(tower.top, tower.q, orbit, n)


def subfield_subcode(tower: FieldTower, parity_rows: Sequence[Sequence[int]], n: int) -> ExtLinearCode:
    """``{c in F_{q^m}^n : H c = 0}`` for H over F_{q^n}.

    Each F_{q^n} entry is split into its s coordinates over F_{q^m}, so one
    equation becomes s equations over F_{q^m}.
    """
    Q = tower.ext.order
    s = tower.degree("top") // tower.m
    eqs = []
    for h in parity_rows:
        for u in range(s):
            eqs.append([(x // Q ** u) % Q for x in h])
    return ExtLinearCode(tower, n, linalg.nullspace(tower.ext, eqs, n))


def skew_cyclic_code(tower: FieldTower, I: Sequence[int], normal: int) -> ExtLinearCode:
    """The F_{q^m}-linear q-cyclic code with parity-check matrix M_alpha(I)."""
    n = _top_tower(tower)
    I = _check_closed(I, tower.m, n)
    return subfield_subcode(tower, moore_parity(tower, normal, I), n)


def generated_subfield_subcode(tower: FieldTower, normal: int, I: Sequence[int]) -> ExtLinearCode:
    """Subfield subcode of the F_{q^n}-code generated by M_alpha(I)."""
    n = _top_tower(tower)
    full = ExtLinearCode(tower, n, moore_parity(tower, normal, I), level="top")
    return subfield_subcode(tower, full.parity, n)


def q_shift(tower: FieldTower, c: Sequence[int], level: str = "ext") -> tuple:
    return (tower.frobenius(c[-1], 1, level),) + tuple(tower.frobenius(x, 1, level) for x in c[:-1])


def is_q_cyclic(C: ExtLinearCode) -> bool:
    # the shift is semilinear, so checking a generating set is enough
    return all(C.contains(q_shift(C.tower, g, C.level)) for g in C.gens)


def longest_cyclic_run(J: Sequence[int], n: int) -> int:
    S = {j % n for j in J}
    if len(S) == n:
        return n
    best = 0
    for j in S:
        if (j - 1) % n not in S:
            run = 0
            while (j + run) % n in S:
                run += 1
            best = max(best, run)
    return best


@dataclass
class SkewSpec:
    m: int
    s: int
    normal: int
    I: tuple
    J: tuple = ()
    extra: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"m": self.m, "s": self.s, "normal": self.normal, "I": list(self.I), "J": list(self.J)}


def skew_cyclic_locating_pair(tower: FieldTower, I: Sequence[int], J: Sequence[int], t: int,
                              normal: Optional[int] = None, check_distance: bool = True) -> RankPair:
    """Subfield subcodes of the codes generated by M_alpha(I), M_alpha(J), for the
    q-cyclic code with parity checks M_alpha(I + J).

    The pair is flagged ``locating``; it is upgraded to ``correcting`` when
    ``d_R(A) + d_R(C) > n`` holds by brute force.
    """
    n = _top_tower(tower)
    m = tower.m
    I = _check_closed(I, m, n, "I")
    J = _check_closed(J, m, n, "J")
    if normal is None:
        normal = find_normal_element(tower)
    if not is_normal(tower, normal):
        raise ParameterError(f"{normal} is not a normal element of F_(q^{n})")
    if len(I) <= t:
        raise ParameterError(f"need #I > t (#I={len(I)}, t={t})")
    delta = longest_cyclic_run(J, n) + 1
    if delta <= t:
        raise ParameterError(f"J needs a run of at least t consecutive elements (delta={delta})")
    IJ = tuple(sorted({(i + j) % n for i in I for j in J}))
    A = generated_subfield_subcode(tower, normal, I)
    B = generated_subfield_subcode(tower, normal, J)
    C = skew_cyclic_code(tower, IJ, normal)
    ctx = StarContext(Basis(tower.top, tower.base, normal_orbit(tower, normal)), n, tower=tower)
    role = "locating"
    if check_distance and min_rank_distance(A) + min_rank_distance(C) > n:
        role = "correcting"
    spec = SkewSpec(m, tower.s, normal, I, J)
    return RankPair("I", A, B, C, t, ctx=ctx, role=role,
                    meta={"family": "skew", "spec": spec.to_json(), "I+J": list(IJ),
                          "delta": delta})
