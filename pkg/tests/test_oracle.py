"""Predicted main terms, the W function, and the partial Euler product J."""

import cmath
import math

import mpmath
import pytest

from gpylab import oracle
from gpylab import tuples as tc
from gpylab.errors import DomainError
from gpylab.singular import singular_series

H1 = tc.TupleH((0, 2))
H2 = tc.TupleH((0, 6))


def params(N=10**5, ell1=1, ell2=1, h0=None, V=5):
    R = (3.0 * N) ** 0.2
    return oracle.MainTermParams(H1, H2, ell1, ell2, R, N, V, h0)


def test_g00_identity_with_class_count():
    for H, V in ((H1, 5), (tc.TupleH((0, 2, 6)), 7)):
        val = oracle.g00(H, V)
        S = singular_series(H)
        factor = tc.regular_class_count(H, V) / tc.primorial(V)
        assert val.mid * factor == pytest.approx(S.mid, rel=1e-9)


def test_g00_boundary_small_V():
    val = oracle.g00(H1, 2)
    S = singular_series(H1)
    assert val.mid == pytest.approx(2.0 * S.mid, rel=1e-9)


def test_g00_rejects_inadmissible():
    with pytest.raises(DomainError):
        oracle.g00(tc.TupleH((0, 2, 4)), 5)


def test_t4_zero_ell_same_tuple_collapses():
    N, V = 10**5, 5
    R = (3.0 * N) ** 0.2
    p = oracle.MainTermParams(H1, H1, 0, 0, R, N, V)
    out = oracle.main_term_t4(p)
    S = singular_series(H1)
    want = N * math.log(R) ** 2 / 2 * S.mid
    assert out["mid"] == pytest.approx(want, rel=1e-9)


def test_t4_binomial_symmetry():
    a = oracle.main_term_t4(params(ell1=2, ell2=1))
    b = oracle.main_term_t4(params(ell1=1, ell2=2))
    assert a["mid"] == b["mid"]


def test_t4_scales_linearly_in_N():
    p1 = oracle.MainTermParams(H1, H2, 1, 1, 10.0, 10**5, 5)
    p2 = oracle.MainTermParams(H1, H2, 1, 1, 10.0, 2 * 10**5, 5)
    a = oracle.main_term_t4(p1)
    b = oracle.main_term_t4(p2)
    assert b["mid"] == pytest.approx(2 * a["mid"], rel=1e-12)


def test_t4_scopes_differ_by_class_count():
    agg = oracle.main_term_t4(params(), "aggregate")
    per = oracle.main_term_t4(params(), "per_class")
    count = tc.regular_class_count(H1.union(H2), 5)
    assert agg["mid"] == pytest.approx(per["mid"] * count, rel=1e-12)


def test_t4_density_adjustment_factor():
    out = oracle.main_term_t4(params())
    Hu = H1.union(H2)
    share = tc.regular_class_count(Hu, 5) / tc.primorial(5)
    assert out["density_adjusted_mid"] == pytest.approx(out["mid"] * share, rel=1e-12)


def test_t5_case_factor_values():
    lr = math.log(params().R)
    assert oracle.c_r_factor(params(h0=4)) == 1.0
    # h0 inside one tuple: (l1+l2+1) log R / ((l1+1)(r+l1+l2+1)).
    one = oracle.c_r_factor(params(h0=2))
    assert one == pytest.approx(3 * lr / (2 * 4), rel=1e-12)
    both = oracle.c_r_factor(params(h0=0))
    assert both == pytest.approx(4 * 3 * lr / (2 * 2 * 4), rel=1e-12)


def test_t5_outside_case_assembly():
    p = params(h0=8)
    out = oracle.main_term_t5(p)
    S = singular_series(tc.TupleH((0, 2, 6, 8)))
    lr = math.log(p.R)
    want = p.N * 1.0 * 2 * lr**3 / 6 * S.mid
    assert out["mid"] == pytest.approx(want, rel=1e-9)
    assert out["case"] == "outside"


def test_t5_inadmissible_extension_predicts_zero():
    out = oracle.main_term_t5(params(h0=4))
    assert out["mid"] == 0.0
    assert out["density_adjusted_mid"] == 0.0


def test_t5_requires_h0():
    with pytest.raises(DomainError):
        oracle.main_term_t5(params())


def test_w_function_against_mpmath():
    for t in (0.3, 1.0, 5.0, 14.1, 60.0):
        want = complex(1j * t * mpmath.zeta(1 + 1j * t))
        got = oracle.w_function(t)
        assert cmath.isclose(got, want, rel_tol=1e-9)


def test_w_function_series_region_against_mpmath():
    for t in (0.001, 0.01, 0.049):
        want = complex(1j * t * mpmath.zeta(1 + 1j * t))
        assert cmath.isclose(oracle.w_function(t), want, rel_tol=1e-9)


def test_w_conjugate_symmetry():
    for t in (0.02, 0.7, 12.0):
        assert cmath.isclose(
            oracle.w_function(-t), oracle.w_function(t).conjugate(), rel_tol=1e-12
        )


def test_w_at_zero_is_one():
    assert oracle.w_function(0.0) == 1.0 + 0.0j


def test_verify_w_bounds_report_shape():
    rep = oracle.verify_w_bounds(t_grid_max=20.0, step=0.05)
    assert set(rep) >= {"t0", "t1", "power_bound_worst_t", "power_bound_worst_margin"}


def test_j_product_small_X_by_hand():
    t = 1.0
    want = 1.0
    for p in (2, 3, 5, 7):
        want *= abs(1 - p ** (-1 - 1j * t)) / (1 - 1 / p)
    assert oracle.j_product(t, 10) == pytest.approx(want, rel=1e-12)


def test_j_product_grows_with_X():
    vals = [oracle.j_product(1.0, 10**k) for k in (2, 3, 4)]
    assert vals[0] < vals[1] < vals[2]


def test_compare_straddling_zero_is_not_comparable():
    rep = oracle.compare(1.0, 0.0, 0.5)
    assert rep["comparable"] is False


def test_compare_ratio_bounds_bracket_ratio():
    rep = oracle.compare(2.0, 1.0, 0.1)
    assert rep["comparable"]
    assert rep["ratio_lo"] <= rep["ratio"] <= rep["ratio_hi"]
    assert rep["ratio"] == pytest.approx(2.0)
