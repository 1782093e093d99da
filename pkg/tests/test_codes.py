import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rankecp import linalg
from rankecp.codes import (ExtLinearCode, MatrixCode, diagonal_code, dual_base, dual_ext,
                           min_rank_distance, min_weight_word, ml_decode_oracle,
                           random_rank_error, shorten, to_matrix_code)
from rankecp.errors import ParameterError, SizeError
from rankecp.families import gabidulin
from rankecp.fields import make_field
from rankecp.linalg import Subspace
from rankecp.matrix_space import mat_rep, rank_support, rank_weight, rep_inverse

W, W1 = 2, 3
T4, T8, T16 = make_field(2, 2), make_field(2, 3), make_field(2, 4)


def random_ext_code(T, n, rng, k=None):
    k = rng.randint(0, n) if k is None else k
    F = T.ext
    return ExtLinearCode(T, n, [[rng.randrange(F.order) for _ in range(n)] for _ in range(k)])


def brute_distance(code):
    """Reference distance by enumerating codewords one at a time."""
    F = code.tower.base
    best = code.n + 1
    for coeffs in itertools.product(range(code.field.order), repeat=code.k):
        if any(coeffs):
            w = linalg.rank(F, mat_rep(code.tower.alpha, code.encode(coeffs)))
            best = min(best, w)
    return best


def test_dual_examples():
    C = ExtLinearCode(T4, 2, [[1, W]])
    assert dual_ext(C) == ExtLinearCode(T4, 2, [[W, 1]])
    assert dual_ext(ExtLinearCode.full(T4, 2)).k == 0


@given(st.integers(0, 2**32), st.integers(1, 4))
def test_ext_dual_involution(seed, n):
    C = random_ext_code(T16, n, random.Random(seed))
    assert C.k + C.dual().k == n
    assert C.dual().dual() == C
    for g in C.gens:
        for h in C.parity:
            assert linalg.dot(T16.ext, g, h) == 0


@given(st.integers(0, 2**32))
def test_base_dual(seed):
    rng = random.Random(seed)
    F = T4.base
    k = rng.randint(0, 6)
    mats = [[[rng.randrange(2) for _ in range(3)] for _ in range(2)] for _ in range(k)]
    D = MatrixCode(F, 2, 3, mats)
    assert D.dim + D.dual().dim == 6
    assert D.dual().dual() == D
    assert dual_base(MatrixCode(F, 2, 3, [])).dim == 6


@pytest.mark.parametrize("m", [2, 3])
def test_duality_lemma(m):
    T = make_field(2, m)
    rng = random.Random(m)
    for _ in range(50):
        C = random_ext_code(T, m, rng)
        assert to_matrix_code(C.dual(), "alpha_prime") == to_matrix_code(C).dual()


def test_to_matrix_code_basics():
    Z = ExtLinearCode(T16, 4, [])
    assert to_matrix_code(Z).dim == 0
    G = gabidulin(T16, 2, 4)
    assert to_matrix_code(G).dim == 8
    assert to_matrix_code(G).shape == (4, 4)


@pytest.mark.parametrize("seed", range(8))
def test_distance_preserved_by_matrix_representation(seed):
    rng = random.Random(seed)
    C = random_ext_code(T8, 3, rng, rng.randint(1, 2))
    d = min_rank_distance(C)
    assert d == brute_distance(C)
    assert d == min_rank_distance(to_matrix_code(C))
    assert d == min_rank_distance(to_matrix_code(C, "alpha_prime"))
    assert min_rank_distance(C.dual()) == min_rank_distance(to_matrix_code(C).dual())


def test_distance_examples():
    assert min_rank_distance(ExtLinearCode(T16, 4, [])) == 5
    assert min_rank_distance(ExtLinearCode(T4, 2, [[1, W]])) == 2
    assert min_rank_distance(gabidulin(T16, 2, 4)) == 3
    with pytest.raises(ParameterError):
        min_rank_distance(gabidulin(T16, 2, 4), mode="bound")


def test_witness_has_minimum_weight():
    G = gabidulin(T16, 2, 4)
    d, w = min_weight_word(G)
    assert G.contains(w) and rank_weight(T16, w) == d


def test_size_limit():
    big = ExtLinearCode.full(make_field(2, 6), 4)
    with pytest.raises(SizeError):
        min_rank_distance(big)


def test_shorten_examples():
    G = gabidulin(T16, 2, 4)
    assert shorten(G, Subspace.zero(T16.base, 4)) == G
    assert shorten(G, Subspace.full(T16.base, 4)).k == 0


@pytest.mark.parametrize("seed", range(6))
def test_shorten_matches_filter(seed):
    rng = random.Random(seed)
    A = random_ext_code(T4, 3, rng, rng.randint(1, 3))
    L = Subspace.span(T4.base, [[rng.randrange(2) for _ in range(3)] for _ in range(rng.randint(0, 2))], 3)
    S = shorten(A, L)
    assert S.k >= A.k - L.dim
    Lp = L.perp()
    expect = {tuple(A.encode(c)) for c in itertools.product(range(4), repeat=A.k)
              if rank_support(T4.alpha, A.encode(c)).issubspace(Lp)}
    got = {tuple(S.encode(c)) for c in itertools.product(range(4), repeat=S.k)}
    assert got == expect


def test_matrix_shorten():
    G = gabidulin(T16, 3, 4)
    L = Subspace.span(T16.base, [[1, 0, 0, 0]], 4)
    S = to_matrix_code(G).shorten(L)
    for M in S.matrices():
        assert all(row[0] == 0 for row in M)
    assert S == to_matrix_code(shorten(G, L))
    assert S.dim == 8


@pytest.mark.parametrize("q,m,n", [(2, 2, 2), (2, 3, 3), (2, 4, 4), (3, 2, 2), (2, 2, 3)])
def test_singleton_bound(q, m, n):
    T = make_field(q, m)
    rng = random.Random(q * 100 + m * 10 + n)
    for _ in range(5):
        C = random_ext_code(T, n, rng, rng.randint(1, max(1, min(n, 6 // m))))
        D = to_matrix_code(C)
        if D.fq_dim * 1 > 16:
            continue
        d = min_rank_distance(D)
        assert D.dim / m <= n - d + 1


def test_hamming_distance_equals_diagonal_rank_distance():
    T = make_field(3, 1)
    rng = random.Random(4)
    for _ in range(10):
        C = random_ext_code(T, 4, rng, rng.randint(1, 3))
        dH = min(sum(1 for x in C.encode(c) if x) for c in itertools.product(range(3), repeat=C.k)
                 if any(c))
        assert min_rank_distance(diagonal_code(C)) == dH


def test_ml_oracle_examples():
    G = gabidulin(T16, 2, 4)
    rng = random.Random(1)
    c = G.random_word(rng)
    assert ml_decode_oracle(G, c) == (c, 0, False)
    E = random_rank_error(T16.base, 4, 4, 1, rng)
    r = tuple(T16.ext.add(x, y) for x, y in zip(c, rep_inverse(T16.alpha, E)))
    assert ml_decode_oracle(G, r) == (c, 1, False)


def test_ml_oracle_tie():
    G = gabidulin(T16, 2, 4)
    rng = random.Random(2)
    while True:
        r = tuple(rng.randrange(16) for _ in range(4))
        word, d, tie = ml_decode_oracle(G, r)
        if tie:
            break
    near = [tuple(int(x) for x in w) for w in G.words()
            if rank_weight(T16, [T16.ext.sub(a, b) for a, b in zip(r, w)]) == d]
    assert len(near) > 1 and word == min(near)


def test_ml_oracle_matrix_code():
    D = to_matrix_code(gabidulin(T8, 2, 3))
    M = D.matrices()[1]
    assert ml_decode_oracle(D, M) == (M, 0, False)


def test_random_rank_error():
    F = T16.base
    rng = random.Random(0)
    assert random_rank_error(F, 4, 4, 0, rng) == linalg.zeros(4, 4)
    for t in range(5):
        for _ in range(200):
            assert linalg.rank(F, random_rank_error(F, 4, 4, t, rng)) == t
    a = random_rank_error(F, 4, 4, 2, random.Random(42))
    assert a == random_rank_error(F, 4, 4, 2, random.Random(42))
    with pytest.raises(ParameterError):
        random_rank_error(F, 4, 4, 5, rng)


def test_code_words_enumeration():
    G = gabidulin(T16, 1, 4)
    words = G.words()
    assert words.shape == (16, 4)
    assert {tuple(w) for w in words.tolist()} == {G.encode([c]) for c in range(16)}
    assert np.all(words[0] == 0)
