"""Residual verifiers: positive certificates, engineered failures, numerics."""

from fractions import Fraction

import pytest

from yangbaxter import verify
from yangbaxter.builders import (
    baxterize,
    build_R_ggs_general,
    build_R_st,
    build_r_ts,
    build_r_uv,
    build_rst,
    build_y,
    f_v,
    hat_r,
    q_minus_qinv,
)
from yangbaxter.scalars import PoleOrderError, X1, Y1, Y2, rf
from yangbaxter.tensors import Tensor2, gauge_conjugate
from yangbaxter.triples import (
    BDTriple,
    SWedge,
    compatible_permutations,
    enumerate_triples,
    s0_from_structure,
    solve_s_system,
)

from conftest import cg_structure, trivial_structures


def unit2(n, i, j, k, l, c=Fraction(1)):
    return Tensor2(n, {(i, j, k, l): c})


# --- constant CYBE ---------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cybe_rst_zero(n):
    assert verify.cybe_residual(build_rst(n)).is_zero()


def test_cybe_nonzero_witness():
    # e21 (x) e12 alone: only [r12, r23] survives, giving
    # e21 (x) e11 (x) e12 - e21 (x) e22 (x) e12; checked against a hand
    # expansion of the matrix-unit products.
    r = unit2(2, 2, 1, 1, 2)
    res = verify.cybe_residual(r)
    assert res.coeffs == {
        (2, 1, 1, 1, 1, 2): Fraction(1),
        (2, 1, 2, 2, 1, 2): Fraction(-1),
    }
    assert res.lex_witness() == ((2, 1, 1, 1, 1, 2), Fraction(1))


def test_cybe_nilpotent_unit_is_a_solution():
    # every commutator shares a leg carrying e12 e12 = 0
    assert verify.cybe_residual(unit2(2, 1, 2, 1, 2)).is_zero()


def test_cybe_all_triples_full_basis():
    for n in (2, 3, 4):
        for t in enumerate_triples(n):
            particular, basis = solve_s_system(t)
            for s in [particular] + [particular + b for b in basis]:
                assert verify.cybe_residual(build_r_ts(t, s)).is_zero()


# --- spectral CYBE ---------------------------------------------------------


def test_cybe_spectral_hat_r():
    for n in (2, 3):
        for t in enumerate_triples(n):
            particular, _ = solve_s_system(t)
            rh = hat_r(build_r_ts(t, particular))
            assert verify.cybe_spectral_residual(rh).is_zero()
            assert verify.unitarity_check(rh, "classical").passed


def test_cybe_spectral_half_perm():
    # P/2 satisfies the normalization r + r^21 = P but is not a constant
    # CYBE solution for n >= 2 (the commutator sum leaves a permutation
    # term), so its spectral lift fails too; n = 1 is the trivial case.
    rh1 = hat_r(Tensor2.perm(1).scale(Fraction(1, 2)))
    assert verify.cybe_spectral_residual(rh1).is_zero()
    half = Tensor2.perm(3).scale(Fraction(1, 2))
    assert not verify.cybe_residual(half).is_zero()
    assert not verify.cybe_spectral_residual(hat_r(half)).is_zero()
    assert verify.unitarity_check(hat_r(half), "classical").passed


def test_spectral_combination_equals_constant_combination():
    """The three-slot spectral combination of hat_r collapses to the
    constant combination r12 r13 - r23 r12 + r13 r23."""
    for t in [BDTriple.make(2, {}), BDTriple.make(3, {1: 2})]:
        particular, _ = solve_s_system(t)
        r = build_r_ts(t, particular)
        rh = hat_r(r)
        a = rh.embed(12)
        b = rh.substitute({"Y1": Y1 * Y2}).embed(13)
        c = rh.substitute({"Y1": Y2}).embed(23)
        lhs = a.mul(b) - c.mul(a) + b.mul(c)
        rc = r.map_scalars(rf)
        rhs = (
            rc.embed(12).mul(rc.embed(13))
            - rc.embed(23).mul(rc.embed(12))
            + rc.embed(13).mul(rc.embed(23))
        )
        assert lhs == rhs


def test_unitarity_failure_witness():
    r = Tensor2.perm(2).scale((1 - Y1) ** -1)
    rep = verify.unitarity_check(r, "classical")
    assert rep.result == "fail"
    assert rep.witness is not None


def test_cybe_spectral_rejects_two_parameter_input():
    st = cg_structure(3)
    r = build_r_uv(st, formula="kernel")
    with pytest.raises(ValueError):
        verify.cybe_spectral_residual(r)


# --- QYBE and Hecke --------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_qybe_rst_zero(n):
    assert verify.qybe_residual(build_R_st(n)).is_zero()


def test_qybe_identity_tensor():
    assert verify.qybe_residual(Tensor2.identity(3).map_scalars(rf)).is_zero()


def test_qybe_cg3_general_formula():
    t = BDTriple.make(3, {1: 2})
    st = cg_structure(3)
    R = build_R_ggs_general(t, s0_from_structure(st))
    assert verify.qybe_residual(R).is_zero()
    assert verify.hecke_residual(R).is_zero()


def test_hecke_degenerate_failure():
    # R = P: PR = 1 (x) 1, residual (1 - q)(1 + 1/q) != 0
    res = verify.hecke_residual(Tensor2.perm(2).map_scalars(rf))
    assert not res.is_zero()
    assert res.lex_witness() is not None


# --- AYBE ------------------------------------------------------------------


def test_aybe_baxterization_family():
    """y + f(v) P solves the AYBE iff f satisfies the functional equation;
    the K = -1 family member works, a constant f = 1 does not."""
    (a2,) = trivial_structures(2)
    y = build_y(a2)
    good = y + Tensor2.perm(2).scale(f_v())
    assert verify.aybe_residual(good).is_zero()
    bad = y + Tensor2.perm(2).map_scalars(rf)
    assert not verify.aybe_residual(bad).is_zero()


def test_aybe_all_structures_small_n():
    for n in (2, 3):
        for t in enumerate_triples(n):
            for st in compatible_permutations(t):
                r = build_r_uv(st, formula="kernel")
                assert verify.aybe_residual(r).is_zero()
                assert verify.unitarity_check(r, "associative").passed


def test_aybe_gauge_covariance():
    st = cg_structure(3)
    r = build_r_uv(st, formula="kernel")
    for phi in [(Fraction(1, 2),) * 3, (1, 0, -1), (1, Fraction(1, 3), Fraction(-1, 3))]:
        rp = gauge_conjugate(r, phi, 3)
        assert verify.aybe_residual(rp).is_zero()
        assert verify.unitarity_check(rp, "associative").passed


def test_aybe_commutator_identity():
    """AYBE(r) - reversed-AYBE(r) equals the commutator sum identically,
    and the sum vanishes for unitary solutions."""
    st = cg_structure(3)
    r = build_r_uv(st, formula="kernel")
    direct = verify.aybe_residual(r)
    reversed_ = verify.aybe_reversed_residual(r)
    commutators = verify.aybe_commutator_sum(r)
    assert (direct - reversed_) == commutators
    assert commutators.is_zero()
    # the identity direct - reversed = commutators holds for any matrix
    junk = Tensor2(2, {(1, 1, 2, 2): f_v(), (2, 1, 1, 2): rf(1) * X1**2})
    d = verify.aybe_residual(junk) - verify.aybe_reversed_residual(junk)
    assert d == verify.aybe_commutator_sum(junk)


# --- lift obstruction and necessity -----------------------------------------------------


def test_obstruction_passes_for_associative():
    for st in [trivial_structures(2)[0], cg_structure(3), cg_structure(4)]:
        r = build_r_ts(st.triple, s0_from_structure(st))
        assert verify.lift_obstruction(r).is_zero()


def test_obstruction_reversing5_witness(reversing5):
    from yangbaxter.tensors import weight_zero_ok

    particular, basis = solve_s_system(reversing5)
    for s in [particular] + [particular + b for b in basis]:
        res = verify.lift_obstruction(build_r_ts(reversing5, s))
        assert res.coeffs.get((3, 1, 3, 4, 4, 5)) == Fraction(1)
        assert weight_zero_ok(res)


def test_obstruction_trivial_wrong_s_fails_on_diagonal():
    # s = 0 for n = 3 violates the diagonal system: t' = 0, not +-1/2
    res = verify.lift_obstruction(build_r_ts(BDTriple.make(3, {}), SWedge(3)))
    assert not res.is_zero()
    key, value = res.lex_witness()
    i, j, k, l, m, p = key
    assert (i, k, m) == (j, l, p)  # diagonal witness
    assert value == Fraction(1, 18)


# --- lift and Laurent data -------------------------------------------------


def test_check_lift_positive():
    for n in (2, 3):
        for t in enumerate_triples(n):
            for st in compatible_permutations(t):
                s0 = s0_from_structure(st)
                r = build_r_uv(st, s0, formula="kernel")
                assert verify.check_lift(r, t, s0).passed


def test_check_lift_ignores_higher_order():
    st = cg_structure(3)
    s0 = s0_from_structure(st)
    r = build_r_uv(st, s0, formula="kernel")
    # (e^u - 1)(1 x 1) vanishes to first order at u = 0
    bump = Tensor2.identity(3).scale(rf(1) * X1**6 - 1)
    assert verify.check_lift(r + bump, st.triple, s0).passed


def test_check_lift_detects_extra_pole():
    st = cg_structure(3)
    s0 = s0_from_structure(st)
    r = build_r_uv(st, s0, formula="kernel")
    extra = Tensor2.identity(3).scale((1 - X1**-6) ** -1)
    rep = verify.check_lift(r + extra, st.triple, s0)
    assert rep.result == "fail"
    assert rep.witness is not None


def test_check_r01_from_lift_and_shifts():
    from yangbaxter.tensors import variables_used

    (a2,) = trivial_structures(2)
    r = build_r_uv(a2, formula="kernel")
    r0 = verify.tensor_u_coefficient(r, 2, 0, order=1)
    r1 = verify.tensor_u_coefficient(r, 2, 1, order=1)
    # expansion coefficients live in Y1 only
    assert variables_used(r0) <= {"Y1"}
    assert variables_used(r1) <= {"Y1"}
    assert verify.check_r01(r0, r1).passed
    shift = Tensor2.identity(2).scale(rf(Fraction(1, 3)))
    assert verify.check_r01(r0, r1 + shift).result == "fail"
    vshift = Tensor2.identity(2).scale(rf(1) * Y1 - 1)  # (e^v - 1) 1x1
    assert verify.check_r01(r0, r1 + vshift).result == "fail"


def test_pr_limit_positive():
    for st in [trivial_structures(2)[0], cg_structure(3)]:
        r = build_r_uv(st, formula="kernel")
        assert verify.pr_limit_check(r, st.n).passed


def test_pr_limit_unitarity_failure():
    n = 2
    pole = Tensor2.identity(n).scale((1 - X1 ** (-2 * n)) ** -1)
    bad = pole + Tensor2.perm_diag(n).scale(rf(1) * Y1)
    rep = verify.pr_limit_check(bad, n)
    assert rep.result == "fail"


def test_pr_limit_surviving_pole():
    n = 2
    r = Tensor2.perm_diag(n).scale((1 - X1 ** (-2 * n)) ** -1)
    with pytest.raises(PoleOrderError):
        verify.pr_limit_check(r, n)


def test_pr_limit_constant_in_u():
    # no u-dependence, no pole: passes iff the base classical matrix does
    t = BDTriple.make(2, {})
    particular, _ = solve_s_system(t)
    rh = hat_r(build_r_ts(t, particular))
    assert verify.pr_limit_check(rh, 2).passed


# --- central identity ------------------------------------------------------


def test_central_identity():
    for st in [trivial_structures(2)[0], cg_structure(3)]:
        from yangbaxter.builders import build_R_ggs_assoc

        s0 = s0_from_structure(st)
        lhs = build_r_uv(st, s0, formula="quantum").scale(q_minus_qinv(st.n))
        rhs = baxterize(build_R_ggs_assoc(st, s0))
        assert lhs == rhs


# --- numeric mode ----------------------------------------------------------


def test_numeric_qybe_rst_n10():
    R = build_R_st(10)
    rep = verify.numeric_residual("qybe", {"R": R}, 10, samples=3, tolerance=1e-9, seed=3)
    assert rep.passed
    assert rep.max_abs_residual < 1e-9


def test_numeric_aybe_naive_promotion_fails(reversing5):
    """Gluing the spectral P-term onto the quantum matrix of a
    non-associative triple does not solve the AYBE."""
    particular, _ = solve_s_system(reversing5)
    R = build_R_ggs_general(reversing5, particular)
    naive = Tensor2.perm(5).scale(f_v()) + R.scale(q_minus_qinv(5).inverse())
    rep = verify.numeric_residual(
        "aybe", {"r": naive}, 5, samples=4, tolerance=1e-9, seed=11
    )
    assert rep.result == "fail"
    assert rep.max_abs_residual > 1e-3


def test_numeric_matches_symbolic_verdicts():
    """Symbolic pass implies numeric pass on the small-n corpus."""
    for n in (2, 3):
        for t in enumerate_triples(n):
            for st in compatible_permutations(t):
                r = build_r_uv(st, formula="kernel")
                assert verify.aybe_residual(r).is_zero()
                rep = verify.numeric_residual(
                    "aybe", {"r": r}, n, samples=2, tolerance=1e-9, seed=5
                )
                assert rep.passed


def test_numeric_hecke_and_unitarity():
    st = cg_structure(4)
    from yangbaxter.builders import build_R_ggs_assoc

    R = build_R_ggs_assoc(st, s0_from_structure(st))
    assert verify.numeric_residual("hecke", {"R": R}, 4, 3, 1e-9, 2).passed
    r = build_r_uv(st, formula="kernel")
    assert verify.numeric_residual("unitarity_assoc", {"r": r}, 4, 3, 1e-9, 2).passed


def test_numeric_engine_matches_dense_oracle():
    """Sparse numeric AYBE equals a from-scratch dense-loop evaluation,
    entrywise, for both a solution and a non-solution."""
    from conftest import dense_numeric_aybe

    point = (0.31 + 0.52j, -0.44 + 0.27j, 0.62 - 0.35j, -0.53 + 0.41j)
    good = build_r_uv(trivial_structures(2)[0], formula="kernel")
    naive = Tensor2.perm(2).scale(f_v()) + build_R_st(2).scale(
        q_minus_qinv(2).inverse()
    ) + Tensor2(2, {(1, 2, 1, 2): rf(1) * X1})  # deliberately broken
    for r in (good, naive):
        residual, _ = verify._numeric_tensors("aybe", {"r": r}, 2, point)
        dense = dense_numeric_aybe(r, 2, point)
        keys = set(residual.coeffs) | set(dense)
        for key in keys:
            lhs = residual.coeffs.get(key, 0j)
            rhs = dense.get(key, 0j)
            assert abs(lhs - rhs) < 1e-12, (key, lhs, rhs)
    # and the broken matrix really does fail while the good one passes
    res_good, _ = verify._numeric_tensors("aybe", {"r": good}, 2, point)
    res_bad, _ = verify._numeric_tensors("aybe", {"r": naive}, 2, point)
    assert res_good.max_abs() < 1e-12
    assert res_bad.max_abs() > 1e-3


def test_numeric_determinism():
    st = cg_structure(3)
    r = build_r_uv(st, formula="kernel")
    rep1 = verify.numeric_residual("aybe", {"r": r}, 3, 4, 1e-9, 42)
    rep2 = verify.numeric_residual("aybe", {"r": r}, 3, 4, 1e-9, 42)
    assert rep1.max_abs_residual == rep2.max_abs_residual
    assert rep1.to_json() == rep2.to_json()


# --- reports ---------------------------------------------------------------


def test_report_json_shape():
    rep = verify.report_from_residual(
        "cybe", verify.cybe_residual(build_rst(2)), provenance={"n": 2}
    )
    doc = rep.as_dict()
    assert doc["identity"] == "cybe"
    assert doc["result"] == "pass"
    assert doc["witness"] is None
    assert doc["provenance"] == {"n": 2}
    failing = verify.report_from_residual(
        "cybe", verify.cybe_residual(unit2(2, 2, 1, 1, 2))
    )
    assert failing.result == "fail"
    assert failing.witness == {"index": [2, 1, 1, 1, 1, 2], "value": "1"}
