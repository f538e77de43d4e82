import csv

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from einstab.catalog import exceptional_wallach_descriptor, wallach_descriptor
from einstab.curvature import scalar_curvature
from einstab.flow import Terminal, flow, log_distance, unstable_dimension_probe, write_csv
from einstab.space import DiagonalMetric


def volume(space, g):
    return float(np.sum(np.array(space.dims) * np.log(np.array(g.as_float()))))


def test_einstein_start_stops_immediately():
    w11 = exceptional_wallach_descriptor("W11")
    traj = flow(w11, (2, 2, 2), t_max=5.0)
    assert traj.terminal is Terminal.CONVERGED
    assert traj.times == (0.0,)


def test_stable_metric_attracts():
    w11 = exceptional_wallach_descriptor("W11")
    traj = flow(w11, (1.1, 0.95, 1.0), t_max=200.0, dt=1e-2)
    assert traj.terminal is Terminal.CONVERGED
    assert log_distance(traj.final, DiagonalMetric((1, 1, 1))) < 1e-6


def test_unstable_metric_repels():
    w15 = exceptional_wallach_descriptor("W15")
    g = DiagonalMetric((1, 1, 1))
    x0 = DiagonalMetric((1.01, 0.995, 1.0))
    traj = flow(w15, x0, t_max=100.0, dt=1e-2)
    assert log_distance(traj.final, g) > 10 * log_distance(x0, g)
    assert traj.scalars[-1] > float(scalar_curvature(w15, g))


@given(st.lists(st.floats(0.3, 3.0), min_size=3, max_size=3))
@settings(max_examples=25, deadline=None)
def test_scalar_curvature_nondecreasing_and_volume_fixed(x):
    space = wallach_descriptor("W2", 1, 2, 3)
    traj = flow(space, x, t_max=2.0, dt=5e-3)
    sc = np.array(traj.scalars)
    assert np.all(np.diff(sc) >= -1e-9 * np.maximum(1.0, np.abs(sc[1:])))
    v0 = volume(space, traj.states[0])
    assert all(abs(volume(space, g) - v0) < 1e-9 * max(1.0, abs(v0)) for g in traj.states)


def test_csv_layout(tmp_path):
    space = wallach_descriptor("W2", 1, 1, 1)
    traj = flow(space, (1.0, 1.2, 0.9), t_max=0.5, dt=1e-2)
    path = tmp_path / "traj.csv"
    write_csv(traj, path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["t", "x1", "x2", "x3", "scalar"]
    assert len(rows) == len(traj.times) + 1
    assert float(rows[-1][0]) == pytest.approx(traj.times[-1])


def test_rejects_bad_input():
    space = wallach_descriptor("W2", 1, 1, 1)
    with pytest.raises(ValueError):
        flow(space, (1, 1), t_max=1.0)
    with pytest.raises(ValueError):
        flow(space, (1, -1, 1), t_max=1.0)
    with pytest.raises(ValueError):
        flow(space, (1, 1, 1), t_max=1.0, dt=0.0)


def test_probe_on_local_minimum_counts_both_directions():
    w15 = exceptional_wallach_descriptor("W15")
    assert unstable_dimension_probe(w15, DiagonalMetric((1, 1, 1))) == 2
