import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings

from einstab.catalog import exceptional_wallach_descriptor, flag_r2_descriptor, full_flag_sun_descriptor, parse_space
from einstab.linalg import bareiss_det
from einstab.lichnerowicz import (
    Kind, NonRationalMatrixError, NotEinsteinError, build_matrix, charpoly, charpoly_certificate,
    classify, classify_from_matrix, default_tol, hessian_fd, lichnerowicz_report, rational_form,
    second_variation, submatrix_bounds, tt_certificate, tt_charpoly, tt_eigenvectors, tt_spectrum,
    verdict_from_spectrum,
)
from einstab.space import DiagonalMetric
from strategies import positive_rationals, space_and_metric


@given(space_and_metric())
@settings(max_examples=200, deadline=None)
def test_homothety_direction_is_in_the_kernel(sm):
    space, x = sm
    assert all(sum(row) == 0 for row in rational_form(space, x))
    L = np.array([[float(v) for v in row] for row in build_matrix(space, x)])
    v = np.sqrt(np.array(space.dims, dtype=float))
    assert np.max(np.abs(L @ v)) <= 1e-10 * max(1.0, np.max(np.abs(L)))


@given(space_and_metric())
@settings(max_examples=100, deadline=None)
def test_matrix_is_symmetric_and_similar_to_rational_form(sm):
    space, x = sm
    L = np.array([[float(v) for v in row] for row in build_matrix(space, x)])
    N = np.array([[float(v) for v in row] for row in rational_form(space, x)])
    assert np.allclose(L, L.T, rtol=1e-12, atol=1e-12 * max(1.0, np.max(np.abs(L))))
    s = np.sqrt(np.array(space.dims, dtype=float))
    assert np.allclose(np.diag(1 / s) @ L @ np.diag(s), N, rtol=1e-10, atol=1e-10 * max(1.0, np.max(np.abs(L))))


@given(space_and_metric(max_r=4), positive_rationals)
@settings(max_examples=60, deadline=None)
def test_matrix_scales_inversely(sm, c):
    space, x = sm
    assert rational_form(space, tuple(c * v for v in x)) == tuple(
        tuple(v / c for v in row) for row in rational_form(space, x))


@given(space_and_metric(max_r=4))
@settings(max_examples=60, deadline=None)
def test_charpoly_matches_bareiss_and_floats(sm):
    space, x = sm
    N = rational_form(space, x)
    p = charpoly(N)
    r = space.r
    assert p[-1] == 1 and p[0] == (-1) ** r * bareiss_det(N) == 0
    roots = np.sort(np.roots([float(c) for c in reversed(p)]).real)
    eig = np.sort(np.linalg.eigvals(np.array([[float(v) for v in row] for row in N])).real)
    assert np.allclose(roots, eig, atol=1e-6 * max(1.0, np.max(np.abs(eig))))


def test_tt_charpoly_certifies_w11_spectrum():
    w11 = exceptional_wallach_descriptor("W11")
    q = tt_charpoly(w11, (1, 1, 1))
    assert q == (F(25, 36), F(-5, 3), F(1))
    assert tt_certificate(w11, (1, 1, 1), F(5, 6))
    assert not tt_certificate(w11, (1, 1, 1), F(13, 18))
    with pytest.raises(NonRationalMatrixError):
        tt_certificate(w11, (1, 1, 1), 5 / 6)


def test_charpoly_rejects_irrational_entries():
    with pytest.raises(NonRationalMatrixError):
        charpoly([[math.sqrt(2)]])
    assert charpoly_certificate([[F(1), F(2)], [F(2), F(1)]], F(3))


def test_w11_is_g_stable():
    v = classify(exceptional_wallach_descriptor("W11"), (1, 1, 1))
    assert v.kind is Kind.G_STABLE and v.coindex == 0 and v.two_rho == F(13, 18)
    assert v.tt_spectrum == pytest.approx((5 / 6, 5 / 6), abs=1e-14)


def test_w2_standard_metric_is_a_local_minimum():
    v = classify(parse_space("W2:1,1,1"), (1, 1, 1))
    assert v.kind is Kind.LOCAL_MINIMUM and v.coindex == 2
    assert v.two_rho == F(5, 6)


def test_w2_kahler_metric_is_a_saddle_with_kernel():
    v = classify(parse_space("W2:1,1,1"), (2, 1, 1))
    assert v.kind is Kind.SADDLE and v.coindex == 1 and not v.ricci_locally_invertible
    assert abs(v.lambda_min) < 1e-14


def test_su4_standard_metric_is_degenerate():
    space = full_flag_sun_descriptor(4)
    v = classify(space, (1,) * space.r)
    assert v.kind is Kind.DEGENERATE and v.two_rho == F(3, 4)


def test_non_einstein_metric_is_rejected_with_residual():
    with pytest.raises(NotEinsteinError) as info:
        classify(parse_space("W2:1,1,1"), (1, 1, 3))
    assert info.value.residual > 0.1


def test_verdict_is_scale_invariant():
    space = parse_space("W2:1,1,1")
    for c in (F(1, 3), F(7, 2)):
        v = classify(space, (2 * c, c, c))
        assert v.kind is Kind.SADDLE and v.coindex == 1


def test_classify_from_matrix_trivial_cases():
    assert classify_from_matrix(np.eye(3), (1, 1, 1), 0.5).kind is Kind.G_STABLE
    assert classify_from_matrix(np.zeros((3, 3)), (1, 1, 1), 1.0).kind is Kind.LOCAL_MINIMUM


def test_trivial_summand_eigenvalues_are_discounted():
    # one eigenvalue sitting exactly at 2 rho comes from the trivial directions
    v = verdict_from_spectrum([0.5, 1.0, 2.0], 1.0, trivial_dim=1)
    assert v.kind is Kind.SADDLE and v.coindex == 1
    assert verdict_from_spectrum([0.5, 1.0, 2.0], 1.0).kind is Kind.DEGENERATE


def test_tolerance_from_environment(monkeypatch):
    monkeypatch.setenv("ESW_TOL", "0.2")
    assert default_tol() == 0.2
    assert verdict_from_spectrum([0.9, 2.0], 1.0).kind is Kind.DEGENERATE
    monkeypatch.delenv("ESW_TOL")
    assert verdict_from_spectrum([0.9, 2.0], 1.0).kind is Kind.SADDLE


def test_flag_r2_closed_form_eigenvalue():
    for d1, d2 in ((4, 1), (3, 5)):
        space = flag_r2_descriptor(d1, d2)
        (lam,) = tt_spectrum(space, build_matrix(space, (1, 2)))
        assert lam == pytest.approx(2 * (d1 + d2) / (d1 + 4 * d2), rel=1e-14)


def test_second_variation_on_eigen_directions():
    space = exceptional_wallach_descriptor("W15")
    g = DiagonalMetric((1, 1, 1))
    vals, vecs = tt_eigenvectors(space, build_matrix(space, g))
    s = np.sqrt(np.array(space.dims, dtype=float))
    t2r = float(classify(space, g).two_rho)
    for lam, a in zip(vals, vecs.T):
        v = a / s
        assert second_variation(space, g, v) == pytest.approx(0.5 * (t2r - lam) * float(a @ a), abs=1e-13)
        assert hessian_fd(space, g, v) == pytest.approx(second_variation(space, g, v), rel=1e-5, abs=1e-9)
    with pytest.raises(ValueError):
        second_variation(space, g, (1.0, 0.0, 0.0))


def test_submatrix_bounds_interlace():
    space = full_flag_sun_descriptor(5)
    g = (1,) * space.r
    tt = tt_spectrum(space, build_matrix(space, g))
    lo, hi = submatrix_bounds(space, g, [0, 1, 4, 7])
    assert tt[0] - 1e-12 <= lo <= hi <= tt[-1] + 1e-12
    assert submatrix_bounds(space, g, [3]) is None


def test_report_fields():
    rep = lichnerowicz_report(exceptional_wallach_descriptor("W13"), (1, 1, 1))
    assert rep.kernel_dim_tt == 0 and len(rep.full_spectrum) == 3
    assert rep.lambda_min == pytest.approx(0.8) and rep.lambda_max == pytest.approx(0.8)
    assert min(abs(v) for v in rep.full_spectrum) < 1e-14
