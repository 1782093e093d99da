import random

import pytest

from rankecp.codes import diagonal_code, min_rank_distance
from rankecp.bounds import product_in_dual
from rankecp.decoder import SUCCESS
from rankecp.errors import ParameterError
from rankecp.fields import make_field
from rankecp.hamming import (classical_ecp_decode, decode_hamming, embedded_kernel,
                             error_patterns, grs_ecp, hamming_embed_pair, hamming_kernel,
                             min_hamming_distance, reed_solomon, validate_hamming_pair)
from rankecp.codes import MatrixCode
from rankecp.matrix_space import diag_embed

HP = grs_ecp(8, 2)
F = HP.C.field


def add(u, v):
    return tuple(F.add(x, y) for x, y in zip(u, v))


def test_grs_parameters():
    assert (HP.n, HP.C.k, min_hamming_distance(HP.C)) == (7, 3, 5)
    assert min_rank_distance(diagonal_code(HP.C)) == 5
    assert all(validate_hamming_pair(HP.A, HP.B, HP.C, 2).values())


def test_embedded_pair_breaks_strict_conditions():
    # every off-diagonal unit matrix is orthogonal to D(B), and it has rank one
    E01 = [[int((i, j) == (0, 1)) for j in range(7)] for i in range(7)]
    assert HP.embedded.B.dual().contains(E01)
    assert product_in_dual(HP.embedded.B, HP.embedded.A, HP.embedded.C)


def test_codeword_decodes_to_itself():
    c = HP.C.random_word(random.Random(0))
    out = decode_hamming(HP, c)
    assert out.status == SUCCESS and out.codeword == c and not any(out.error)


def test_sampled_errors_decode():
    rng = random.Random(1)
    patterns = list(error_patterns(8, 7, 1)) + list(error_patterns(8, 7, 2))
    for e in rng.sample(patterns, 150):
        c = HP.C.random_word(rng)
        out = decode_hamming(HP, add(c, e))
        assert out.ok and out.codeword == c and out.error == e
        ref = classical_ecp_decode(HP, add(c, e))
        assert ref.ok and tuple(ref.codeword) == c


def test_kernel_is_diagonal_image():
    rng = random.Random(2)
    patterns = list(error_patterns(8, 7, 2))
    for e in rng.sample(patterns, 30):
        r = add(HP.C.random_word(rng), e)
        KH = hamming_kernel(HP, r)
        assert embedded_kernel(HP, r) == MatrixCode(F, 7, 7, [diag_embed(list(a)) for a in KH.gens])
        assert all(a[i] == 0 for a in KH.gens for i in range(7) if e[i])


def test_invalid_pair_rejected():
    T = make_field(8, 1)
    pts = list(range(1, 8))
    A, B = reed_solomon(T, 2, pts), reed_solomon(T, 2, pts)
    C = reed_solomon(T, 4, pts).dual()
    with pytest.raises(ParameterError):
        hamming_embed_pair(A, B, C, 2)
    with pytest.raises(ParameterError):
        hamming_embed_pair(_ext_code(), B, C, 2)


def _ext_code():
    from rankecp.families import gabidulin
    return gabidulin(make_field(2, 4), 2, 4)


def test_error_patterns_count():
    assert len(list(error_patterns(8, 7, 1))) == 49
    assert len(list(error_patterns(8, 7, 2))) == 21 * 49
