import random

import pytest

from rankecp.bounds import (BOUND_NAMES, bound_dual_product, bound_product, mrd_check,
                            random_subcode, rank_ht_bound, roos_bound, run_bound,
                            singleton_sum, sweep)
from rankecp.codes import ExtLinearCode, MatrixCode, random_rank_error, to_matrix_code
from rankecp.decoder import RankPair, convert_pair, decode_type2
from rankecp.errors import ParameterError
from rankecp.families import gabidulin, gabidulin_recp, moore_parity, normal_orbit
from rankecp.fields import Basis, make_field
from rankecp.decoder import dual_of_basis
from rankecp.star import space_product_base

T4, T16 = make_field(2, 2), make_field(2, 4)
SKEW = make_field(2, 2, s=2)
PAIR2 = convert_pair(gabidulin_recp(T16, 1, 4))
A2, B2, C2 = PAIR2.A, PAIR2.B, PAIR2.C


def test_singleton_examples():
    rep = singleton_sum(ExtLinearCode(T4, 2, [[1, 2]]))
    assert rep.holds and rep.actual["equality"]
    rep = singleton_sum(MatrixCode(T4.base, 2, 3, []))
    assert rep.holds and rep.actual == {"d_D": 4, "d_Ddual": 1, "equality": True}
    F2 = T4.base
    rep = singleton_sum(MatrixCode(F2, 2, 2, [[[1, 0], [0, 0]], [[0, 1], [0, 0]]]))
    assert rep.holds and not rep.actual["equality"]


def test_product_bound_examples():
    rep = bound_product(A2, B2, C2, 2, 1)
    assert rep.admissible and rep.holds and rep.actual["d_C"] == 3
    rep = bound_product(A2, B2, C2, 0, 1)
    assert not rep.admissible and rep.passed
    assert not next(p for p in rep.premises if p.name.startswith("d_R(A*)")).ok


def test_mrd_corollary():
    # d_R(A) = n - t, dim A = m(t+1), d_R(B) = m - t + 1, dim B = mt
    t = 1
    A = to_matrix_code(gabidulin(T16, t + 1, 4))
    B = to_matrix_code(gabidulin(T16, t, 4))
    Dmax = space_product_base(B, A).dual()
    rng = random.Random(0)
    for D in (Dmax, random_subcode(Dmax, rng), random_subcode(Dmax, rng)):
        rep = bound_product(A, B, D, t + 1, t)
        assert rep.admissible and rep.holds


def test_dual_product_examples():
    n, t = 4, 1
    rep = bound_dual_product(A2, B2, C2, t, n - 2 * t)
    assert rep.admissible and rep.holds and rep.actual["d_A"] >= n - t
    assert rep.actual["A_is_mrd"] is True
    rep = bound_dual_product(A2, B2, C2, t, 3)
    assert not rep.admissible


def test_roos_examples():
    rep = roos_bound(A2, B2, C2, 1, 1)
    assert rep.admissible and rep.holds and rep.actual["d_C"] == 3
    weak_A = to_matrix_code(gabidulin(T16, 3, 4))
    rep = roos_bound(weak_A, B2, C2, 1, 1)
    assert not next(p for p in rep.premises if p.name.startswith("(4)")).ok


def test_roos_subcodes_are_correcting():
    Dmax = space_product_base(B2, A2).dual()
    rng = random.Random(1)
    for _ in range(3):
        D = random_subcode(Dmax, rng, rng.randint(1, Dmax.dim))
        assert roos_bound(A2, B2, D, 1, 1).holds
        pair = RankPair("II", A2, B2, D, 1)
        for _ in range(60):
            C = D.random_word(rng)
            E = random_rank_error(T16.base, 4, 4, 1, rng)
            R = [[x ^ y for x, y in zip(u, v)] for u, v in zip(C, E)]
            out = decode_type2(pair, R)
            assert out.ok and out.codeword == C


def test_rank_ht_examples():
    rep = rank_ht_bound(SKEW, [1, 3], 14, 1, 1, 2, 0)
    assert rep.admissible and rep.holds
    rep = rank_ht_bound(SKEW, [0, 2], 14, 0, 2, 2, 0)
    assert not rep.premises[1].ok
    rep = rank_ht_bound(SKEW, [0, 1, 2, 3], 1, 0, 1, 3, 0)
    assert not next(p for p in rep.premises if p.name == "set is independent").ok


def test_rank_ht_agrees_with_product_bound():
    # the F_16-linear codes generated by the Moore rows of I and J, against
    # the parity code of I + J; its subfield subcode is the skew code
    alpha = Basis(SKEW.top, SKEW.base, normal_orbit(SKEW, 14))
    I, J, IJ = [0, 2], [1, 3], [1, 3]
    A = ExtLinearCode(SKEW, 4, moore_parity(SKEW, 14, I), "top")
    B = ExtLinearCode(SKEW, 4, moore_parity(SKEW, 14, J), "top")
    C = ExtLinearCode(SKEW, 4, moore_parity(SKEW, 14, IJ), "top").dual()
    prod = bound_product(A.to_matrix_code(alpha), B.to_matrix_code(alpha),
                         C.to_matrix_code(dual_of_basis(alpha), "alpha_prime"), 1, 1)
    ht = rank_ht_bound(SKEW, IJ, 14, 1, 1, 2, 0)
    assert prod.admissible and ht.admissible
    assert prod.holds and ht.holds
    assert ht.actual["d_C"] >= prod.actual["d_C"]


def test_mrd_check():
    for k in range(0, 5):
        assert mrd_check(gabidulin(T16, k, 4))
        assert mrd_check(gabidulin(T16, k, 4).dual())
    assert mrd_check(gabidulin(make_field(2, 3), 2, 2))
    F2 = T4.base
    assert not mrd_check(MatrixCode(F2, 2, 2, [[[1, 0], [0, 0]], [[0, 1], [0, 0]]]))
    assert mrd_check(MatrixCode(F2, 2, 3, []))
    wide = to_matrix_code(gabidulin(T4, 1, 2)).transpose()
    assert wide.shape == (2, 2)
    tall = MatrixCode(F2, 2, 3, [[[1, 0, 0], [0, 1, 0]]])
    with pytest.raises(ParameterError):
        mrd_check(tall, "as-is")
    assert mrd_check(tall, "auto") == mrd_check(tall, "transpose")
    with pytest.raises(ParameterError):
        mrd_check(tall.transpose(), "sideways")


def test_mrd_duality():
    rng = random.Random(3)
    for _ in range(20):
        M = random_subcode(MatrixCode.full(T4.base, 2, 2), rng)
        if mrd_check(M):
            assert mrd_check(M.dual())


@pytest.mark.parametrize("name", BOUND_NAMES)
def test_short_sweeps(name):
    reports = sweep(name, random.Random(7), admissible=10)
    assert sum(r.admissible for r in reports) >= 10
    assert not any(r.counterexample for r in reports)
    assert all(isinstance(r.to_json(), dict) for r in reports)


def test_unknown_bound():
    with pytest.raises(ParameterError):
        run_bound("shift", random.Random(0))
