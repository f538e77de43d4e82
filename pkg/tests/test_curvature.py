import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from einstab.catalog import exceptional_wallach_descriptor, flag_r2_descriptor, parse_space
from einstab.curvature import (
    curvature_report, einstein_residual, moment_eigenvalues, mu_norm_sq, ricci_components,
    ricci_eigenvalues, scalar_curvature, scalar_curvature_normalized, scalar_gradient, two_rho,
)
from einstab.space import DiagonalMetric
from strategies import positive_rationals, space_and_metric


def test_w11_standard_metric():
    w11 = exceptional_wallach_descriptor("W11")
    assert ricci_eigenvalues(w11, (1, 1, 1)) == (F(13, 36),) * 3
    assert two_rho(w11, (1, 1, 1)) == F(13, 18)
    assert einstein_residual(w11, (1, 1, 1)) == 0.0


def test_w13_normalized_scalar_curvature_is_exact():
    w13 = exceptional_wallach_descriptor("W13")
    assert scalar_curvature_normalized(w13, (1, 1, 1)) == F(352, 5)


def test_float_metric_gives_floats():
    w11 = exceptional_wallach_descriptor("W11")
    rho = ricci_eigenvalues(w11, (1.0, 1.0, 1.0))
    assert all(isinstance(v, float) for v in rho)
    assert rho[0] == pytest.approx(13 / 36, rel=1e-15)


def test_wrong_length_and_unknown_form():
    w11 = exceptional_wallach_descriptor("W11")
    with pytest.raises(ValueError):
        ricci_eigenvalues(w11, (1, 1))
    with pytest.raises(ValueError):
        ricci_eigenvalues(w11, (1, 1, 1), form="nope")


@given(space_and_metric())
@settings(max_examples=150, deadline=None)
def test_three_forms_of_ricci_agree_exactly(sm):
    space, x = sm
    sym = ricci_eigenvalues(space, x)
    assert sym == ricci_eigenvalues(space, x, form="split") == ricci_eigenvalues(space, x, form="moment")


@given(space_and_metric())
@settings(max_examples=150, deadline=None)
def test_trace_identity_exact(sm):
    space, x = sm
    rho = ricci_eigenvalues(space, x)
    assert scalar_curvature(space, x) == sum(d * r for d, r in zip(space.dims, rho))


@given(space_and_metric())
@settings(max_examples=150, deadline=None)
def test_gradient_identity_exact(sm):
    space, x = sm
    rho = ricci_eigenvalues(space, x)
    assert scalar_gradient(space, x) == tuple(-d * r / xk for d, r, xk in zip(space.dims, rho, x))


@given(space_and_metric(), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_gradient_matches_finite_differences(sm, seed):
    space, x = sm
    xf = [float(v) for v in x]
    grad = scalar_gradient(space, xf)
    k = seed % space.r
    h = 1e-5 * xf[k]
    up, down = list(xf), list(xf)
    up[k] += h
    down[k] -= h
    fd = (float(scalar_curvature(space, up)) - float(scalar_curvature(space, down))) / (2 * h)
    scale = sum(abs(float(v)) * d for v, d in zip(grad, space.dims)) + abs(fd)
    assert abs(fd - grad[k]) <= 1e-7 * max(scale, 1e-12)


@given(space_and_metric(), positive_rationals)
@settings(max_examples=100, deadline=None)
def test_scaling_laws(sm, c):
    space, x = sm
    cx = tuple(c * v for v in x)
    assert ricci_eigenvalues(space, cx) == tuple(r / c for r in ricci_eigenvalues(space, x))
    assert scalar_curvature(space, cx) == scalar_curvature(space, x) / c
    a, b = float(scalar_curvature_normalized(space, x)), float(scalar_curvature_normalized(space, cx))
    assert math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)


@given(space_and_metric())
@settings(max_examples=80, deadline=None)
def test_mu_norm_and_moment_map(sm):
    space, x = sm
    m = moment_eigenvalues(space, x)
    # Sc = sum b_k d_k / (2 x_k) - |mu|^2 / 4
    sc = sum(b * d / (2 * xk) for b, d, xk in zip(space.killing, space.dims, x)) - mu_norm_sq(space, x) / 4
    assert sc == scalar_curvature(space, x)
    assert len(m) == space.r


def test_ricci_components_are_x_rho():
    w2 = parse_space("W2:1,1,1")
    assert ricci_components(w2, (1, 1, 2)) == (F(1, 3), F(1, 3), F(2, 3))


def test_flag_r2_standard_and_kahler_metrics_are_einstein():
    for d1, d2 in ((4, 1), (2, 3), (7, 7)):
        space = flag_r2_descriptor(d1, d2)
        assert einstein_residual(space, (1, 2)) == 0.0
        assert einstein_residual(space, (1, F(4 * d2, d1 + 2 * d2))) == 0.0


def test_curvature_report_fields():
    rep = curvature_report(parse_space("W11"), DiagonalMetric((1, F(1, 2), 1)))
    assert rep.rho == (F(31, 72), F(37, 72), F(31, 72))
    assert rep.scalar == F(385, 8)
    assert rep.einstein_residual > 0.1
