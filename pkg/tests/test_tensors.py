"""Tensor engine: spec examples, dense-oracle cross-checks, algebra laws."""

from fractions import Fraction

from yangbaxter.scalars import X1, rf
from yangbaxter.tensors import (
    Tensor2,
    embed,
    flip21,
    gauge_conjugate,
    mul2,
    mul3,
    project_traceless,
    weight_contract,
    weight_zero_ok,
)

from conftest import (
    dense2,
    dense2_from_grid,
    dense2_mul,
    dense3_embed,
    dense3_mul,
    dense3_to_tensor,
    random_sparse_tensor2,
)


def unit2(n, i, j, k, l, c=Fraction(1)):
    return Tensor2(n, {(i, j, k, l): c})


def test_embed_identity():
    one = Tensor2.identity(2)
    t3 = embed(one, 13)
    # 1 (x) 1 on legs 13 with identity inserted on leg 2 = 1 (x) 1 (x) 1
    expected = {
        (i, i, k, k, j, j): Fraction(1)
        for i in (1, 2)
        for j in (1, 2)
        for k in (1, 2)
    }
    assert t3.coeffs == expected


def test_embed_unit_on_23():
    t = unit2(2, 1, 2, 2, 1)
    got = embed(t, 23)
    expected = {(m, m, 1, 2, 2, 1): Fraction(1) for m in (1, 2)}
    assert got.coeffs == expected


def test_p12_t13_exchange(rng):
    # P^12 t^13 = t^23 P^12 for the permutation tensor
    for n in (2, 3):
        P = Tensor2.perm(n)
        for _ in range(5):
            t = random_sparse_tensor2(n, rng)
            lhs = mul3(embed(P, 12), embed(t, 13))
            rhs = mul3(embed(t, 23), embed(P, 12))
            assert lhs == rhs


def test_mul2_perm_squares_to_identity():
    for n in (2, 3, 4):
        P = Tensor2.perm(n)
        assert mul2(P, P) == Tensor2.identity(n)


def test_perm_swaps_vectors():
    # P(w (x) v) = v (x) w, read off coefficientwise: P e_i1 ... via units:
    # (P (w (x) v))_{ab} = w_b v_a; check on basis vectors w = e_i, v = e_k
    # through P . (e_i1 (x) e_k1) = e_k1 (x) e_i1.
    n = 3
    P = Tensor2.perm(n)
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            rank_one = unit2(n, i, 1, k, 1)
            assert mul2(P, rank_one) == unit2(n, k, 1, i, 1)


def test_mul2_orthogonal_units_vanish():
    assert mul2(unit2(2, 1, 1, 1, 1), unit2(2, 2, 2, 2, 2)).is_zero()


def test_mul_size_mismatch():
    import pytest

    with pytest.raises(ValueError):
        mul2(Tensor2.perm(2), Tensor2.perm(3))


def test_mul2_against_dense_oracle(rng):
    n = 3
    for _ in range(5):
        a = random_sparse_tensor2(n, rng, nnz=5)
        b = random_sparse_tensor2(n, rng, nnz=5)
        got = mul2(a, b)
        want = dense2_from_grid(dense2_mul(dense2(a), dense2(b), n), n)
        assert got == want


def test_mul3_against_dense_oracle(rng):
    n = 2
    for _ in range(3):
        a = random_sparse_tensor2(n, rng, nnz=4)
        b = random_sparse_tensor2(n, rng, nnz=4)
        got = mul3(embed(a, 12), embed(b, 13))
        want = dense3_to_tensor(
            dense3_mul(dense3_embed(a, 12, n), dense3_embed(b, 13, n), n), n
        )
        assert got == want


def test_flip21_examples():
    n = 4
    P = Tensor2.perm(n)
    assert flip21(P) == P
    assert flip21(unit2(n, 1, 2, 3, 4)) == unit2(n, 3, 4, 1, 2)


def test_flip21_involution_and_antihomomorphism(rng):
    n = 3
    for _ in range(5):
        a = random_sparse_tensor2(n, rng)
        b = random_sparse_tensor2(n, rng)
        assert flip21(flip21(a)) == a
        assert flip21(mul2(a, b)) == mul2(flip21(a), flip21(b))


def test_p_conjugation_is_flip(rng):
    n = 3
    P = Tensor2.perm(n)
    for _ in range(5):
        t = random_sparse_tensor2(n, rng)
        assert mul2(mul2(P, t), P) == flip21(t)


def test_project_traceless_examples():
    n = 3
    one = Tensor2.identity(n)
    assert project_traceless(one, (1,)).is_zero()
    p0 = Tensor2.perm_diag(n)
    got = project_traceless(p0, (1, 2))
    want = p0 - one.scale(Fraction(1, n))
    assert got == want
    offdiag = unit2(n, 1, 2, 2, 1)
    assert project_traceless(offdiag, (1, 2)) == offdiag


def test_weight_contract_examples():
    n = 2
    p0 = Tensor2.perm_diag(n)
    alpha = [Fraction(1), Fraction(-1)]
    assert weight_contract(p0, alpha, alpha) == 2
    # CG n=3 closed-form s contracted with alpha_1, alpha_2 -> 1/2
    s = Tensor2(3, {
        (1, 1, 2, 2): Fraction(1, 6), (2, 2, 1, 1): Fraction(-1, 6),
        (1, 1, 3, 3): Fraction(-1, 6), (3, 3, 1, 1): Fraction(1, 6),
        (2, 2, 3, 3): Fraction(1, 6), (3, 3, 2, 2): Fraction(-1, 6),
    })
    a1 = [Fraction(1), Fraction(-1), Fraction(0)]
    a2 = [Fraction(0), Fraction(1), Fraction(-1)]
    assert weight_contract(s, a1, a2) == Fraction(1, 2)
    # antisymmetric diagonal tensor against equal weights vanishes
    assert weight_contract(s, a1, a1) == 0


def test_gauge_conjugate_zero_phi():
    n = 3
    t = random_sparse_tensor2(n, __import__("random").Random(5), nnz=5)
    assert gauge_conjugate(t, [0, 0, 0], n) == t.map_scalars(rf)


def test_gauge_conjugate_monomial_factors():
    # entry at e_ij (x) e_kl picks up exp((phi_j - phi_k) u)
    n = 2
    t = unit2(n, 1, 2, 2, 1)
    got = gauge_conjugate(t, [Fraction(1, 2), Fraction(0)], n)
    # phi_j - phi_k = phi_2 - phi_2 = 0 here
    assert got == t.map_scalars(rf)
    t2 = unit2(n, 2, 1, 2, 2)
    got2 = gauge_conjugate(t2, [Fraction(1, 2), Fraction(0)], n)
    # phi_1 - phi_2 = 1/2: factor e^{u/2} = X1^(2n/2) = X1^2
    assert got2.coeffs[(2, 1, 2, 2)] == rf(1) * X1**2


def test_weight_zero_rule():
    assert weight_zero_ok(Tensor2.perm(3))
    assert weight_zero_ok(Tensor2.identity(3))
    assert not weight_zero_ok(unit2(3, 1, 2, 1, 1))


def test_variables_used():
    from yangbaxter.scalars import Y1
    from yangbaxter.tensors import variables_used

    assert variables_used(Tensor2.perm(2)) == set()
    spectral = Tensor2.perm(2).scale((1 - Y1) ** -1).scale(rf(1) * X1)
    assert variables_used(spectral) == {"X1", "Y1"}
