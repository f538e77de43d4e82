"""Ricci eigenvalues, scalar curvature and Einstein residuals of diagonal metrics.

All sums over ``[ijk]`` are ordered sums; see :meth:`StructureConstants.ordered`.
Every function stays exact on ``Fraction`` input except where a real root is
unavoidable (the volume factor of ``Sc_N``).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence
from fractions import Fraction

from .space import DiagonalMetric, Scalar, SpaceDescriptor, is_exact

RESIDUAL_FLOOR = 1e-300


@dataclass(frozen=True)
class CurvatureReport:
    rho: tuple[Scalar, ...]
    m: tuple[Scalar, ...]
    scalar: Scalar
    scalar_normalized: float
    mu_norm_sq: Scalar
    einstein_residual: float


def _x(space: SpaceDescriptor, g) -> tuple:
    x = g.x if isinstance(g, DiagonalMetric) else DiagonalMetric(tuple(g)).x
    if len(x) != space.r:
        raise ValueError(f"metric has {len(x)} coefficients, space has r={space.r}")
    return x


def mu_norm_sq(space: SpaceDescriptor, g) -> Scalar:
    x = _x(space, g)
    total = Fraction(0)
    for i, j, k, c in space.constants.ordered():
        total += x[k] / (x[i] * x[j]) * c
    return total


def moment_eigenvalues(space: SpaceDescriptor, g) -> tuple[Scalar, ...]:
    x = _x(space, g)
    neg = [Fraction(0)] * space.r
    pos = [Fraction(0)] * space.r
    for i, j, k, c in space.constants.ordered():
        neg[k] += x[j] / (x[i] * x[k]) * c
        pos[k] += x[k] / (x[i] * x[j]) * c
    return tuple(
        -neg[k] / (2 * d) + pos[k] / (4 * d) for k, d in enumerate(space.dims)
    )


def ricci_eigenvalues(space: SpaceDescriptor, g, form: str = "symmetric") -> tuple[Scalar, ...]:
    """Eigenvalue of the Ricci operator on each summand.

    ``form`` selects one of three algebraically equal expressions:
    ``"symmetric"`` (default), ``"split"`` or ``"moment"`` (``b_k/2x_k + m_k``).
    """
    x = _x(space, g)
    if form == "moment":
        m = moment_eigenvalues(space, g)
        return tuple(b / (2 * xk) + mk for b, xk, mk in zip(space.killing, x, m))
    if form == "symmetric":
        return _ricci_symmetric(space, x, tuple(type(v) for v in x))
    acc = [Fraction(0)] * space.r
    for i, j, k, c in space.constants.ordered():
        if form == "split":
            acc[k] += (x[i] / (x[j] * x[k]) + x[j] / (x[i] * x[k]) - x[k] / (x[i] * x[j])) * c
        else:
            raise ValueError(f"unknown form {form!r}")
    return tuple(
        b / (2 * xk) - a / (4 * d)
        for b, xk, a, d in zip(space.killing, x, acc, space.dims)
    )


@functools.lru_cache(maxsize=4096)
def _ricci_symmetric(space: SpaceDescriptor, x: tuple, kinds: tuple) -> tuple[Scalar, ...]:
    # memoized: solvers, classification and reports ask for the same metrics repeatedly;
    # ``kinds`` keeps 1 and 1.0 apart, since they hash alike
    acc = [Fraction(0)] * space.r
    sq = [xk * xk for xk in x]
    # the summand is symmetric in (i, j), so each sorted triple is visited once
    for triple, c in space.constants:
        a, b, e = (t - 1 for t in triple)
        for k, i, j in dict.fromkeys(((a, b, e), (b, a, e), (e, a, b))):
            mult = 1 if i == j else 2
            acc[k] += mult * c * (sq[i] + sq[j] - sq[k]) / (x[i] * x[j] * x[k])
    return tuple(
        bk / (2 * xk) - ak / (4 * d)
        for bk, xk, ak, d in zip(space.killing, x, acc, space.dims)
    )


def ricci_components(space: SpaceDescriptor, g) -> tuple[Scalar, ...]:
    """Ricci tensor in a ``Q``-orthonormal basis: ``(x_k rho_k)``."""
    x = _x(space, g)
    return tuple(xk * rk for xk, rk in zip(x, ricci_eigenvalues(space, g)))


def scalar_curvature(space: SpaceDescriptor, g) -> Scalar:
    x = _x(space, g)
    first = sum((b * d / xk for b, d, xk in zip(space.killing, space.dims, x)), Fraction(0))
    return first / 2 - mu_norm_sq(space, g) / 4


def volume_factor(space: SpaceDescriptor, g) -> float:
    """``(prod x_k^{d_k})^{1/n}``, computed in logs."""
    x = _x(space, g)
    return math.exp(sum(d * math.log(xk) for d, xk in zip(space.dims, x)) / space.n)


def scalar_curvature_normalized(space: SpaceDescriptor, g) -> Scalar:
    """Scale-invariant ``Sc``; exact when the metric has unit determinant."""
    x = _x(space, g)
    sc = scalar_curvature(space, g)
    if all(is_exact(v) for v in x) and math.prod(Fraction(v) ** d for v, d in zip(x, space.dims)) == 1:
        return sc
    return volume_factor(space, g) * float(sc)


def einstein_residual(space: SpaceDescriptor, g) -> float:
    """Relative max deviation of ``rho_k`` from their ``d``-weighted mean."""
    return residual_of(space, ricci_eigenvalues(space, g))


def residual_of(space: SpaceDescriptor, rho: Sequence[Scalar]) -> float:
    """:func:`einstein_residual` from already computed Ricci eigenvalues."""
    mean = sum((d * rk for d, rk in zip(space.dims, rho)), Fraction(0)) / space.n
    spread = max(abs(rk - mean) for rk in rho)
    return float(spread) / max(abs(float(mean)), RESIDUAL_FLOOR)


def scalar_gradient(space: SpaceDescriptor, g) -> tuple[Scalar, ...]:
    """Partial derivatives of ``Sc`` in ``x_k``, differentiated term by term."""
    x = _x(space, g)
    grad = [-b * d / (2 * xk ** 2) for b, d, xk in zip(space.killing, space.dims, x)]
    for i, j, k, c in space.constants.ordered():
        term = x[k] / (x[i] * x[j]) * c
        for idx, sign in ((k, 1), (i, -1), (j, -1)):
            grad[idx] -= sign * term / x[idx] / 4
    return tuple(grad)


def two_rho(space: SpaceDescriptor, g) -> Scalar:
    """Twice the weighted-mean Ricci eigenvalue (twice the Einstein constant at Einstein ``g``)."""
    return two_rho_of(space, ricci_eigenvalues(space, g))


def two_rho_of(space: SpaceDescriptor, rho: Sequence[Scalar]) -> Scalar:
    return 2 * sum((d * rk for d, rk in zip(space.dims, rho)), Fraction(0)) / space.n


def curvature_report(space: SpaceDescriptor, g) -> CurvatureReport:
    return CurvatureReport(
        rho=ricci_eigenvalues(space, g),
        m=moment_eigenvalues(space, g),
        scalar=scalar_curvature(space, g),
        scalar_normalized=scalar_curvature_normalized(space, g),
        mu_norm_sq=mu_norm_sq(space, g),
        einstein_residual=einstein_residual(space, g),
    )
