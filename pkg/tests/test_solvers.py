from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from einstab.catalog import exceptional_wallach_descriptor, generalized_wallach, parse_space, wallach_descriptor
from einstab.curvature import einstein_residual
from einstab.lichnerowicz import build_matrix, tt_certificate, tt_spectrum
from einstab.solvers import (
    Source, catalog_einstein_metrics, match_solutions, polish_metric, solve_auto, solve_equal_dims,
    solve_flag_r2, solve_numeric, solve_two_equal, solve_w2_general, solve_w4_quartic, w4_quartic,
)
from einstab import poly

small_rationals = st.builds(F, st.integers(1, 49), st.just(100))


def _same_metric(a, b, tol=1e-7):
    a = np.array([float(v) for v in a])
    b = np.array([float(v) for v in b])
    return float(np.max(np.abs(a / a[0] - b / b[0]))) < tol


def _closed_spectrum_matches(space, sol):
    tt = tt_spectrum(space, build_matrix(space, sol.metric))
    want = sorted(float(v) for v in sol.tt_spectrum)
    return np.allclose([tt[0], tt[-1]], [want[0], want[-1]], atol=1e-9)


@given(small_rationals)
@settings(max_examples=60, deadline=None)
def test_equal_dims_closed_forms(b):
    space = generalized_wallach(b, b, b)
    sols = solve_equal_dims(b, space)
    assert [s.label for s in sols] == ["g_kil", "g_1", "g_2", "g_3"]
    for s in sols:
        assert einstein_residual(space, s.metric) == 0.0
        assert _closed_spectrum_matches(space, s)
        for lam in set(s.tt_spectrum):
            assert tt_certificate(space, s.metric, lam)


@given(small_rationals, small_rationals)
@settings(max_examples=80, deadline=None)
def test_two_equal_closed_forms(b, c):
    assume(b != c)
    space = generalized_wallach(b, b, c)
    for s in solve_two_equal(b, c, space):
        if not s.exists:
            assert s.reason
            continue
        assert einstein_residual(space, s.metric) < 1e-12
        assert _closed_spectrum_matches(space, s)


@pytest.mark.parametrize("a", [(F(1, 6), F(1, 6), F(1, 4)), (F(1, 5), F(1, 5), F(1, 10)), (F(1, 8), F(1, 8), F(1, 3))])
def test_two_equal_agrees_with_numeric_search(a):
    space = generalized_wallach(*a)
    closed = [s for s in solve_two_equal(a[0], a[2], space) if s.exists]
    numeric = solve_numeric(space)
    assert len(numeric) == len(closed)
    for s in closed:
        assert any(_same_metric(s.metric.x, n.metric.x) for n in numeric)


@pytest.mark.parametrize("klm", [(1, 2, 3), (1, 2, 4), (2, 3, 5)])
def test_w2_general_four_metrics(klm):
    space = wallach_descriptor("W2", *klm)
    sols = solve_w2_general(*klm)
    assert [s.two_rho for s in sols[1:]] == [F(1, sum(klm))] * 3
    numeric = solve_numeric(space)
    assert len(numeric) == 4
    for s in sols:
        assert einstein_residual(space, s.metric) == 0.0
        assert _closed_spectrum_matches(space, s)
        assert any(_same_metric(s.metric.x, n.metric.x) for n in numeric)


def test_w2_general_rejects_repeated_parameters():
    with pytest.raises(ValueError):
        solve_w2_general(1, 1, 2)


@pytest.mark.parametrize("l", [2, 3, 7])
def test_w4_quartic_roots_are_einstein_and_match_numeric(l):
    space = wallach_descriptor("W4", l)
    sols = solve_w4_quartic(l)
    assert len(sols) == 2 and all(s.residual < 1e-10 for s in sols)
    numeric = solve_numeric(space)
    matched = match_solutions(numeric, [s.metric.x for s in sols])
    assert all(m is not None for m in matched)
    assert poly.count_roots(w4_quartic(l), F(0)) == 2


def test_flag_r2_metrics():
    for d1, d2 in ((1, 1), (4, 1), (9, 2)):
        sols = solve_flag_r2(d1, d2)
        assert [s.metric.x for s in sols] == [(1, 2), (1, F(4 * d2, d1 + 2 * d2))]


def test_numeric_solver_on_w8_finds_two_metrics():
    sols = solve_numeric(exceptional_wallach_descriptor("W8"))
    assert len(sols) == 2 and all(s.source is Source.NUMERIC for s in sols)
    matched = match_solutions(sols, [(1, 1.4618, 1.8845), (1, 0.8640, 0.4838)], gauge=True)
    assert all(m is not None for m in matched)


@pytest.mark.parametrize("spec, labels", [
    ("W5:l=5", {"q+", "q-", "p+", "p-"}),
    ("W12", {"q+", "q-"}),
    ("W2:1,2,2", {"q+", "q-", "p+", "p-"}),
    ("W2:2,1,2", {"q+", "q-", "p+", "p-"}),
    ("W2:1,2,3", {"g_0", "g_k", "g_l", "g_m"}),
    ("W4:l=3", {"g_1", "g_2"}),
    ("W11", {"g_kil", "g_1", "g_2", "g_3"}),
    ("flag_r2:4,1", {"g_0", "g_1"}),
])
def test_solve_auto_dispatch(spec, labels):
    space = parse_space(spec)
    found = {s.label for s in solve_auto(space) if s.exists}
    assert found == labels
    for s in solve_auto(space):
        if s.exists:
            assert einstein_residual(space, s.metric) < 1e-10


def test_solve_auto_reorders_to_put_the_equal_pair_first():
    space = parse_space("W2:2,1,2")
    q_plus = next(s for s in solve_auto(space) if s.label == "q+")
    assert q_plus.metric.x[1] == 2 * q_plus.metric.x[0]


def test_polish_metric_recovers_table_value():
    sol = polish_metric(exceptional_wallach_descriptor("W10"), (1, 0.8882, 0.5717))
    assert sol is not None and sol.residual < 1e-12
    assert sol.metric.x[1] == pytest.approx(0.8882, abs=1e-4)


def test_catalog_metric_sweep():
    items = catalog_einstein_metrics()
    assert len(items) >= 50
    assert all(einstein_residual(space, s.metric) < 1e-10 for space, s in items)
