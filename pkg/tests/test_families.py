import itertools
import random

import pytest
from hypothesis import given, strategies as st

from rankecp import linalg
from rankecp.codes import ExtLinearCode, min_rank_distance
from rankecp.decoder import validate_pair
from rankecp.errors import ParameterError
from rankecp.families import (GabidulinSpec, find_normal_element, gabidulin, gabidulin_dual,
                              gabidulin_from_spec, gabidulin_recp, is_normal, is_q_cyclic,
                              longest_cyclic_run, moore_parity, normal_orbit, q_shift,
                              skew_cyclic_code, skew_cyclic_locating_pair, subfield_subcode)
from rankecp.fields import dual_basis, make_field
from rankecp.star import StarContext, space_product_ext

W = 2
T4, T16, T27 = make_field(2, 2), make_field(2, 4), make_field(3, 3)
SKEW = make_field(2, 2, s=2)
NORMAL = 14


def random_points(T, n, rng):
    while True:
        pts = [rng.randrange(1, T.ext.order) for _ in range(n)]
        M = [[(x // T.q ** i) % T.q for x in pts] for i in range(T.m)]
        if linalg.rank(T.base, M) == n:
            return tuple(pts)


def test_gabidulin_examples():
    full = gabidulin(T16, 4, 4)
    assert full == ExtLinearCode.full(T16, 4) and min_rank_distance(full) == 1
    G = gabidulin(T4, 1, 2, 1, (1, W))
    assert G == ExtLinearCode(T4, 2, [[1, W]]) and min_rank_distance(G) == 2
    assert min_rank_distance(gabidulin(T16, 2, 4)) == 3


@pytest.mark.parametrize("T,n,r", [(T16, 4, 1), (T16, 3, 1), (T16, 4, 3), (T27, 3, 1),
                                   (T27, 3, 2), (make_field(3, 2), 2, 1), (make_field(4, 2), 2, 1)])
def test_gabidulin_is_mrd(T, n, r):
    rng = random.Random(n * 10 + r)
    for k in range(1, n + 1):
        b = random_points(T, n, rng)
        C = gabidulin(T, k, n, r, b)
        assert C.k == k
        assert min_rank_distance(C) == n - k + 1


def test_invalid_specs():
    with pytest.raises(ParameterError):
        gabidulin(T16, 2, 5)
    with pytest.raises(ParameterError):
        gabidulin(T16, 2, 4, r=2)
    with pytest.raises(ParameterError):
        gabidulin(T16, 2, 3, 1, (1, 2, 3))
    with pytest.raises(ParameterError):
        gabidulin(T16, 3, 2)


def test_spec_json_round_trip():
    spec = GabidulinSpec(2, 4, 4, 3, (1, 2, 4, 8))
    assert GabidulinSpec.from_json(spec.to_json()) == spec
    assert gabidulin_from_spec(T16, spec) == gabidulin(T16, 2, 4, 3, (1, 2, 4, 8))


def test_gabidulin_pair_conditions():
    pair = gabidulin_recp(T16, 1, 4)
    cert = validate_pair(pair)
    assert cert.valid
    assert pair.A.k == 2
    assert min_rank_distance(pair.B.dual()) == 2
    assert min_rank_distance(pair.A) + min_rank_distance(pair.C) == 6


@pytest.mark.parametrize("variant", ["alpha", "alpha_n"])
@pytest.mark.parametrize("T,t,n", [(T16, 1, 3), (T27, 1, 3), (make_field(2, 5), 2, 5)])
def test_gabidulin_pairs_valid(T, t, n, variant):
    if T.ext.order ** (t + 1) > 1 << 20 and variant == "alpha_n":
        pytest.skip("too large to brute force")
    assert validate_pair(gabidulin_recp(T, t, n, variant=variant)).valid


def test_gabidulin_pair_stride():
    assert validate_pair(gabidulin_recp(T16, 1, 4, r=3)).valid
    with pytest.raises(ParameterError):
        gabidulin_recp(T16, 2, 4)
    with pytest.raises(ParameterError):
        gabidulin_recp(T16, 1, 4, r=3, variant="alpha_n")


@pytest.mark.parametrize("r", [1, 3])
def test_product_of_gabidulin_codes(r):
    rng = random.Random(r)
    for n in (3, 4):
        ctx = StarContext.for_tower(T16, n)
        for k, l in itertools.product(range(1, 4), repeat=2):
            if k + l - 1 > n:
                continue
            b = random_points(T16, n, rng)
            P = space_product_ext(ctx, gabidulin(T16, k, 4, r), gabidulin(T16, l, n, r, b))
            assert P == gabidulin(T16, k + l - 1, n, r, b)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("k", [1, 2])
def test_phi_maps_gabidulin_to_gabidulin(n, k):
    ctx = StarContext.for_tower(T16, n)
    G = gabidulin(T16, k, n, 1, ctx.alpha_n)
    image = ExtLinearCode(T16, 4, [ctx.phi(g) for g in G.gens])
    assert image == gabidulin(T16, k, 4, 1)


def test_gabidulin_dual():
    D, bp = gabidulin_dual(T16, 4, 4)
    assert D.k == 0 and bp is None
    D, bp = gabidulin_dual(T4, 1, 2, 1, (1, W))
    assert D == ExtLinearCode(T4, 2, [[W, 1]]) and min_rank_distance(D) == 2
    rng = random.Random(3)
    for _ in range(10):
        k, r = rng.randint(1, 3), rng.choice([1, 3])
        b = random_points(T16, 4, rng)
        D, bp = gabidulin_dual(T16, k, 4, r, b)
        assert D.k == 4 - k
        assert D == gabidulin(T16, 4 - k, 4, r, bp)


def test_equivalence_under_fq_column_operations():
    rng = random.Random(5)
    F2 = T16.base
    for _ in range(20):
        while True:
            P = [[rng.randrange(2) for _ in range(4)] for _ in range(4)]
            if linalg.rank(F2, P) == 4:
                break
        k, r = rng.randint(1, 3), rng.choice([1, 3])
        b = random_points(T16, 4, rng)
        G = gabidulin(T16, k, 4, r, b)
        F = T16.ext
        moved = ExtLinearCode(T16, 4, [linalg.lin_comb(F, row, P, 4) for row in G.gens])
        bP = linalg.lin_comb(F, b, P, 4)
        assert moved == gabidulin(T16, k, 4, r, bP)


def test_normal_elements():
    small = make_field(2, 1, s=2)
    assert is_normal(small, W)
    assert not is_normal(small, 1)
    assert not is_normal(SKEW, 1)
    a = find_normal_element(SKEW, seed=3)
    assert is_normal(SKEW, a)
    assert find_normal_element(SKEW, seed=3) == a
    # the dual basis of a normal basis is normal
    orbit = normal_orbit(SKEW, a)
    G = [[SKEW.trace(SKEW.top.mul(x, y), "top") for y in orbit] for x in orbit]
    X = linalg.inverse(SKEW.base, G)
    dual = [linalg.lin_comb(SKEW.top, [X[k][j] for k in range(4)], [[o] for o in orbit], 1)[0]
            for j in range(4)]
    assert is_normal(SKEW, dual[0])
    assert sorted(normal_orbit(SKEW, dual[0])) == sorted(dual)


def test_dual_of_normal_basis_in_prime_tower():
    T = make_field(2, 4)
    for x in range(1, 16):
        orbit = tuple(T.frobenius(x, i) for i in range(4))
        M = [[(y >> i) & 1 for y in orbit] for i in range(4)]
        if linalg.rank(T.base, M) == 4:
            d = dual_basis(T, orbit)
            assert set(d) == {T.frobenius(d[0], i) for i in range(4)}


def test_skew_code_edges():
    assert skew_cyclic_code(SKEW, [], NORMAL) == ExtLinearCode.full(SKEW, 4)
    assert skew_cyclic_code(SKEW, range(4), NORMAL).k == 0
    with pytest.raises(ParameterError):
        skew_cyclic_code(SKEW, [0], NORMAL)


def test_skew_code_is_q_cyclic_exhaustive():
    C = skew_cyclic_code(SKEW, [0, 2], NORMAL)
    words = {tuple(w) for w in C.words().tolist()}
    assert all(q_shift(SKEW, w) in words for w in words)
    assert is_q_cyclic(C)


@pytest.mark.parametrize("seed", range(3))
def test_skew_codes_are_q_cyclic(seed):
    T = make_field(2, 2, s=3)
    a = find_normal_element(T, seed=seed)
    rng = random.Random(seed)
    base = rng.sample(range(6), rng.randint(1, 3))
    I = sorted({(i + 2 * u) % 6 for i in base for u in range(3)})
    assert is_q_cyclic(skew_cyclic_code(T, I, a))


def test_distinct_index_sets_give_distinct_codes():
    closed = [I for size in range(5) for I in itertools.combinations(range(4), size)
              if all((i + 2) % 4 in I for i in I)]
    codes = {skew_cyclic_code(SKEW, I, NORMAL) for I in closed}
    assert len(codes) == len(closed)


def test_subfield_subcode():
    assert subfield_subcode(SKEW, [], 4) == ExtLinearCode.full(SKEW, 4)
    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    assert subfield_subcode(SKEW, ident, 4).k == 0
    H = moore_parity(SKEW, NORMAL, [1])
    C = subfield_subcode(SKEW, H, 4)
    top = SKEW.top
    expect = {v for v in itertools.product(range(4), repeat=4)
              if all(linalg.dot(top, v, h) == 0 for h in H)}
    assert {tuple(w) for w in C.words().tolist()} == expect


def test_longest_run():
    assert longest_cyclic_run([1, 3], 4) == 1
    assert longest_cyclic_run([3, 0, 1], 4) == 3
    assert longest_cyclic_run(range(4), 4) == 4
    assert longest_cyclic_run([], 4) == 0


def test_skew_locating_pair():
    pair = skew_cyclic_locating_pair(SKEW, [0, 2], [1, 3], 1, NORMAL)
    cert = validate_pair(pair)
    assert cert.locating
    assert pair.role == ("correcting" if cert.valid else "locating")
    assert (pair.A.k, pair.B.k, pair.C.k) == (2, 2, 2)
    with pytest.raises(ParameterError):
        skew_cyclic_locating_pair(SKEW, [0, 2], [1, 3], 2, NORMAL)
    with pytest.raises(ParameterError):
        skew_cyclic_locating_pair(SKEW, [0, 2], [1, 3], 1, 1)


@given(st.integers(0, 50))
def test_q_shift_is_semilinear(seed):
    rng = random.Random(seed)
    c = [rng.randrange(4) for _ in range(4)]
    s = q_shift(SKEW, c)
    assert s == (SKEW.frobenius(c[-1]),) + tuple(SKEW.frobenius(x) for x in c[:-1])
