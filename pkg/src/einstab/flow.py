"""Normalized Ricci flow on diagonal invariant metrics.

On the unit-volume slice the flow ``x_k' = -2 x_k rho_k + (2 Sc / n) x_k`` is
the gradient ascent of scalar curvature, so G-stable Einstein metrics attract
and Einstein metrics with coindex ``c`` repel along ``c`` directions.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
import numpy as np

from .curvature import scalar_curvature
from .lichnerowicz import build_matrix, tt_eigenvectors
from .space import DiagonalMetric, SpaceDescriptor


class Terminal(str, enum.Enum):
    CONVERGED = "ConvergedToEinstein"
    MAX_TIME = "MaxTimeReached"
    DIVERGED = "Diverged"


@dataclass(frozen=True)
class FlowTrajectory:
    times: tuple[float, ...]
    states: tuple[DiagonalMetric, ...]
    scalars: tuple[float, ...]
    terminal: Terminal
    terminal_value: float  # residual when converged, max |x| otherwise

    @property
    def final(self) -> DiagonalMetric:
        return self.states[-1]


class _Field:
    """Pure-Python float evaluation; r is tiny and calls are many."""

    def __init__(self, space: SpaceDescriptor):
        self.terms = [(i, j, k, float(c)) for i, j, k, c in space.constants.ordered()]
        self.half_b = [float(b) / 2 for b in space.killing]
        self.quarter_inv_d = [0.25 / d for d in space.dims]
        self.d = [float(d) for d in space.dims]
        self.n = float(space.n)
        self.r = space.r

    def rho(self, x):
        acc = [0.0] * self.r
        for i, j, k, c in self.terms:
            xi, xj, xk = x[i], x[j], x[k]
            acc[k] += (xi * xi + xj * xj - xk * xk) / (xi * xj * xk) * c
        return [hb / xk - a * q for hb, xk, a, q in zip(self.half_b, x, acc, self.quarter_inv_d)]

    def scalar(self, rho):
        return sum(d * rk for d, rk in zip(self.d, rho))

    def velocity(self, x):
        rho = self.rho(x)
        mean = 2.0 * self.scalar(rho) / self.n
        return [xk * (mean - 2.0 * rk) for xk, rk in zip(x, rho)]

    def residual(self, x):
        rho = self.rho(x)
        mean = self.scalar(rho) / self.n
        return max(abs(rk - mean) for rk in rho) / max(abs(mean), 1e-300)

    def log_volume(self, x):
        return sum(d * math.log(xk) for d, xk in zip(self.d, x))


def flow(space: SpaceDescriptor, x0, t_max: float = 10.0, dt: float = 1e-3,
         store_every: int | None = None, converge_tol: float = 1e-10,
         box: tuple[float, float] = (1e-6, 1e6)) -> FlowTrajectory:
    """Classical RK4 with a volume renormalization after every step."""
    if not (dt > 0 and t_max > 0):
        raise ValueError("dt and t_max must be positive")
    x0 = x0.x if isinstance(x0, DiagonalMetric) else tuple(x0)
    if len(x0) != space.r:
        raise ValueError("initial metric has wrong length")
    field = _Field(space)
    x = [float(v) for v in x0]
    if any(not v > 0 for v in x):
        raise ValueError("initial metric must be positive")
    target = field.log_volume(x)
    every = store_every or max(1, math.ceil(1.0 / (100.0 * dt)))

    times, states, scalars = [], [], []

    def store(t, x):
        times.append(t)
        states.append(DiagonalMetric(tuple(x)))
        scalars.append(field.scalar(field.rho(x)))

    store(0.0, x)
    steps = int(math.ceil(t_max / dt - 1e-9))
    terminal, value = Terminal.MAX_TIME, max(x)
    residual = field.residual(x)
    if residual < converge_tol:
        return FlowTrajectory(tuple(times), tuple(states), tuple(scalars), Terminal.CONVERGED, residual)
    for step in range(1, steps + 1):
        k1 = field.velocity(x)
        k2 = field.velocity([a + 0.5 * dt * b for a, b in zip(x, k1)])
        k3 = field.velocity([a + 0.5 * dt * b for a, b in zip(x, k2)])
        k4 = field.velocity([a + dt * b for a, b in zip(x, k3)])
        x = [a + dt / 6.0 * (p + 2 * q + 2 * s + w) for a, p, q, s, w in zip(x, k1, k2, k3, k4)]
        if min(x) <= 0 or not all(math.isfinite(v) for v in x):
            terminal, value = Terminal.DIVERGED, math.inf
            break
        scale = math.exp((target - field.log_volume(x)) / field.n)
        x = [v * scale for v in x]
        t = step * dt
        if max(x) > box[1] or min(x) < box[0]:
            store(t, x)
            terminal, value = Terminal.DIVERGED, max(abs(v) for v in x)
            break
        residual = field.residual(x)
        if residual < converge_tol:
            store(t, x)
            terminal, value = Terminal.CONVERGED, residual
            break
        if step % every == 0 or step == steps:
            store(t, x)
    else:
        value = max(x)
    return FlowTrajectory(tuple(times), tuple(states), tuple(scalars), terminal, value)


def write_csv(traj: FlowTrajectory, path) -> None:
    r = len(traj.states[0])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["t"] + [f"x{k + 1}" for k in range(r)] + ["scalar"])
        for t, g, sc in zip(traj.times, traj.states, traj.scalars):
            w.writerow([repr(t)] + [repr(float(v)) for v in g.x] + [repr(sc)])


def log_distance(g: DiagonalMetric, h: DiagonalMetric) -> float:
    """Sup distance in ``ln x`` after removing the homothety factor."""
    u = np.log(np.array(g.as_float()))
    v = np.log(np.array(h.as_float()))
    diff = (u - u[0]) - (v - v[0])
    return float(np.max(np.abs(diff)))


def unstable_dimension_probe(space: SpaceDescriptor, g, n_probes: int = 2, eps: float = 1e-4,
                             t_probe: float | None = None, dt: float = 1e-2) -> int:
    """Number of TT eigen-directions along which the flow leaves ``g``.

    Each direction is kicked by ``n_probes`` amplitudes ``eps, -eps, 2 eps, ...``
    and flowed for a short time, a few linear e-folding times, so that the
    quadratic leakage into other directions stays negligible. A direction
    counts as unstable when some kick moves away from ``g`` while ``Sc``
    rises above ``Sc(g)``.
    """
    g = g if isinstance(g, DiagonalMetric) else DiagonalMetric(tuple(g))
    vals, vecs = tt_eigenvectors(space, build_matrix(space, g))
    sqrt_d = np.sqrt(np.array(space.dims, dtype=float))
    base = np.array(g.as_float())
    sc0 = float(scalar_curvature(space, g))
    two_rho = 2.0 * sc0 / space.n
    if t_probe is None:
        gaps = [abs(v - two_rho) for v in vals if abs(v - two_rho) > 1e-6 * max(1.0, abs(two_rho))]
        t_probe = min(50.0, 3.0 / min(gaps)) if gaps else 10.0
    amplitudes = [eps * (1 + k // 2) * (1 if k % 2 == 0 else -1) for k in range(n_probes)]
    count = 0
    for col in range(vecs.shape[1]):
        v = vecs[:, col] / sqrt_d
        v /= np.max(np.abs(v))
        for amp in amplitudes:
            x0 = DiagonalMetric(tuple(base * np.exp(amp * v)))
            traj = flow(space, x0, t_max=t_probe, dt=min(dt, t_probe / 100))
            away = traj.terminal is Terminal.DIVERGED or \
                log_distance(traj.final, g) > log_distance(x0, g)
            if away and traj.scalars[-1] > sc0:
                count += 1
                break
    return count
