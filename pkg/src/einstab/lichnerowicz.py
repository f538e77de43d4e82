"""Lichnerowicz Laplacian on diagonal invariant 2-tensors and stability verdicts.

The matrix is taken in the orthonormal basis ``I_k / sqrt(d_k)``; the vector
``(sqrt(d_1), ..., sqrt(d_r))`` (the metric itself) always lies in its
kernel and its orthogonal hyperplane carries the TT directions.
"""

from __future__ import annotations

import enum
import functools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .curvature import residual_of, ricci_eigenvalues, scalar_curvature, two_rho_of
from .linalg import bareiss_det, hyperplane_basis, jacobi_eigh, jacobi_eigenvalues
from .space import DiagonalMetric, Scalar, SpaceDescriptor, is_exact

EINSTEIN_TOL = 1e-8
DEFAULT_TOL = 1e-7


def default_tol() -> float:
    """Base classification tolerance; ``ESW_TOL`` overrides it."""
    value = os.environ.get("ESW_TOL")
    return float(value) if value else DEFAULT_TOL


class NotEinsteinError(ValueError):
    def __init__(self, residual: float):
        super().__init__(f"metric is not Einstein (residual {residual:.3e})")
        self.residual = residual


class NonRationalMatrixError(ValueError):
    pass


class Kind(str, enum.Enum):
    G_STABLE = "GStable"
    LOCAL_MINIMUM = "LocalMinimum"
    SADDLE = "Saddle"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class LichnerowiczReport:
    matrix: tuple[tuple[Scalar, ...], ...]
    full_spectrum: tuple[float, ...]
    tt_spectrum: tuple[float, ...]
    lambda_min: float
    lambda_max: float
    kernel_dim_tt: int


@dataclass(frozen=True)
class StabilityVerdict:
    kind: Kind
    coindex: int
    two_rho: Scalar
    margin: float
    tolerance: float
    ricci_locally_invertible: bool
    tt_spectrum: tuple[float, ...] = ()

    @property
    def lambda_min(self) -> float:
        return self.tt_spectrum[0] if self.tt_spectrum else math.inf

    @property
    def lambda_max(self) -> float:
        return self.tt_spectrum[-1] if self.tt_spectrum else -math.inf


def _sqrt_dd(dk: int, dm: int) -> Scalar:
    prod = dk * dm
    root = math.isqrt(prod)
    return Fraction(root) if root * root == prod else math.sqrt(prod)


def _raw_entries(space: SpaceDescriptor, g):
    x = g.x if isinstance(g, DiagonalMetric) else DiagonalMetric(tuple(g)).x
    r = space.r
    exact = all(is_exact(v) for v in x)
    zero = Fraction(0) if exact else 0.0
    diag = [zero] * r
    off = [[zero] * r for _ in range(r)]
    sq = [v * v for v in x]
    terms = space.constants.ordered() if exact else [(i, j, k, float(c)) for i, j, k, c in space.constants.ordered()]
    for i, j, k, c in terms:
        # (i, j, k) read as the kk-entry sum: both i and j differ from k
        if i != k and j != k:
            diag[k] += x[k] / (x[i] * x[j]) * c
        # (i, k, m) read as the km-entry sum, here relabelled (i, j, k) -> (i, k, m)
        if j != k:
            off[j][k] += c * (sq[i] - sq[j] - sq[k]) / (x[i] * x[j] * x[k])
    for triple, c in space.constants:
        a, b, e = (t - 1 for t in triple)
        c = c if exact else float(c)
        # [ikk] with i != k contributes once to the kk entry
        if a == b != e:
            diag[a] += c * x[e] / sq[a]
        elif b == e != a:
            diag[b] += c * x[a] / sq[b]
    return diag, off


def build_matrix(space: SpaceDescriptor, g) -> tuple[tuple[Scalar, ...], ...]:
    """Matrix of the Lichnerowicz Laplacian on ``span{I_k/sqrt(d_k)}``.

    Off-diagonal sums run over every ``i``, including ``i = k`` and ``i = m``.
    """
    diag, off = _raw_entries(space, g)
    dims = space.dims
    return tuple(
        tuple(diag[k] / dims[k] if k == m else off[k][m] / _sqrt_dd(dims[k], dims[m])
              for m in range(space.r))
        for k in range(space.r)
    )


def rational_form(space: SpaceDescriptor, g) -> tuple[tuple[Scalar, ...], ...]:
    """The similar matrix ``D^{-1/2} L D^{1/2}`` in the basis ``I_k``.

    Its entries avoid ``sqrt(d_k d_m)``, so they are rational whenever the
    metric and the constants are.
    """
    diag, off = _raw_entries(space, g)
    dims = space.dims
    return tuple(
        tuple((diag[k] if k == m else off[k][m]) / dims[k] for m in range(space.r))
        for k in range(space.r)
    )


def charpoly(matrix) -> tuple[Fraction, ...]:
    """Exact ``det(t I - A)`` by Faddeev-LeVerrier, lowest coefficient first."""
    if not matrix_is_exact(matrix):
        raise NonRationalMatrixError("characteristic polynomial needs rational entries")
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        m = [[sum((a[i][t] * m[t][j] for t in range(n)), Fraction(0)) + (coeffs[n - k + 1] if i == j else 0)
              for j in range(n)] for i in range(n)]
        trace = sum((a[i][t] * m[t][i] for i in range(n) for t in range(n)), Fraction(0))
        coeffs[n - k] = -trace / k
    return tuple(coeffs)


def tt_charpoly(space: SpaceDescriptor, g) -> tuple[Fraction, ...]:
    """Characteristic polynomial of the TT block: the full one divided by ``t``."""
    p = charpoly(rational_form(space, g))
    if p[0] != 0:
        raise ArithmeticError("kernel direction missing: determinant is nonzero")
    return p[1:]


def tt_certificate(space: SpaceDescriptor, g, lam) -> bool:
    """``lam`` is a TT eigenvalue, decided exactly."""
    if not is_exact(lam):
        raise NonRationalMatrixError("exact certificate needs a rational eigenvalue")
    q = tt_charpoly(space, g)
    lam = Fraction(lam)
    acc = Fraction(0)
    for c in reversed(q):
        acc = acc * lam + c
    return acc == 0


def matrix_is_exact(matrix) -> bool:
    return all(is_exact(v) for row in matrix for v in row)


def spectrum(matrix) -> list[float]:
    """Ascending eigenvalues via cyclic Jacobi."""
    if len(matrix) == 0:
        return []
    return jacobi_eigenvalues(matrix)


@functools.lru_cache(maxsize=256)
def _tt_basis(dims: tuple[int, ...]) -> np.ndarray:
    basis = hyperplane_basis([math.sqrt(d) for d in dims])
    basis.flags.writeable = False
    return basis


def _tt_eigh(dims: Sequence[int], matrix):
    basis = _tt_basis(tuple(dims))
    a = np.array([[float(v) for v in row] for row in matrix])
    reduced = basis.T @ a @ basis
    reduced = (reduced + reduced.T) / 2
    w, v = jacobi_eigh(reduced)
    return w, basis @ v


def tt_spectrum(space_or_dims, matrix) -> list[float]:
    """Spectrum on the hyperplane orthogonal to ``(sqrt(d_k))``; empty when r = 1."""
    dims = space_or_dims.dims if isinstance(space_or_dims, SpaceDescriptor) else tuple(space_or_dims)
    if len(dims) <= 1:
        return []
    return [float(w) for w in _tt_eigh(dims, matrix)[0]]


def tt_eigenvectors(space: SpaceDescriptor, matrix):
    """TT eigenvalues and eigenvectors in the ``a``-coordinates of the orthonormal basis."""
    return _tt_eigh(space.dims, matrix)


def lichnerowicz_report(space: SpaceDescriptor, g, tol: float | None = None) -> LichnerowiczReport:
    matrix = build_matrix(space, g)
    full = spectrum(matrix)
    tt = tt_spectrum(space, matrix)
    scale = max([1.0] + [abs(v) for v in full])
    ktol = (tol if tol is not None else default_tol()) * scale
    return LichnerowiczReport(
        matrix=matrix,
        full_spectrum=tuple(full),
        tt_spectrum=tuple(tt),
        lambda_min=tt[0] if tt else math.nan,
        lambda_max=tt[-1] if tt else math.nan,
        kernel_dim_tt=sum(1 for v in tt if abs(v) <= ktol),
    )


def _effective_tol(two_rho: float, tol: float | None) -> float:
    if tol is not None:
        return tol
    base = default_tol()
    return max(base, base * abs(two_rho))


def verdict_from_spectrum(tt: Sequence[float], two_rho: Scalar, trivial_dim: int = 0,
                          tol: float | None = None) -> StabilityVerdict:
    t2r = float(two_rho)
    eff = _effective_tol(t2r, tol)
    tt = sorted(float(v) for v in tt)
    kernel = sum(1 for v in tt if abs(v) <= eff)
    rest = sorted(tt, key=lambda v: abs(v - t2r))[trivial_dim:]
    margin = min((abs(v - t2r) for v in rest), default=math.inf)
    below = sum(1 for v in rest if v < t2r - eff)
    above = sum(1 for v in rest if v > t2r + eff)
    if len(rest) - below - above > 0:
        kind = Kind.DEGENERATE
    elif below == 0:
        kind = Kind.G_STABLE
    elif above == 0:
        kind = Kind.LOCAL_MINIMUM
    else:
        kind = Kind.SADDLE
    return StabilityVerdict(
        kind=kind, coindex=below, two_rho=two_rho, margin=margin, tolerance=eff,
        ricci_locally_invertible=kernel == 0, tt_spectrum=tuple(tt),
    )


def classify(space: SpaceDescriptor, g, tol: float | None = None) -> StabilityVerdict:
    """Stability type of an Einstein metric as a critical point of ``Sc`` on unit volume."""
    rho = ricci_eigenvalues(space, g)
    residual = residual_of(space, rho)
    if residual > EINSTEIN_TOL:
        raise NotEinsteinError(residual)
    two_rho = two_rho_of(space, rho)
    # the spectrum is taken in floating point anyway, so skip exact entries here
    g = g if isinstance(g, DiagonalMetric) else DiagonalMetric(tuple(g))
    tt = tt_spectrum(space, build_matrix(space, g.as_float()))
    return verdict_from_spectrum(tt, two_rho, space.trivial_dim, tol)


def classify_from_matrix(matrix, dims: Sequence[int], two_rho: Scalar, trivial_dim: int = 0,
                         tol: float | None = None) -> StabilityVerdict:
    """Same verdict for a space entered through an explicitly known reduced matrix."""
    return verdict_from_spectrum(tt_spectrum(dims, matrix), two_rho, trivial_dim, tol)


def second_variation(space: SpaceDescriptor, g, v: Sequence[float]) -> float:
    """Hessian of ``Sc`` on unit volume along the log-direction ``v``.

    ``v`` must satisfy ``sum d_k v_k = 0``; it equals the second derivative of
    ``t -> Sc(x_k exp(t v_k))`` at ``t = 0``.
    """
    if len(v) != space.r:
        raise ValueError("direction has wrong length")
    trace = sum(d * float(vk) for d, vk in zip(space.dims, v))
    scale = max(1.0, sum(d * abs(float(vk)) for d, vk in zip(space.dims, v)))
    if abs(trace) > 1e-10 * scale:
        raise ValueError(f"direction is not traceless (sum d_k v_k = {trace:.3e})")
    rho = ricci_eigenvalues(space, g)
    t2r = 2 * float(sum(d * rk for d, rk in zip(space.dims, rho))) / space.n
    a = np.array([float(vk) * math.sqrt(d) for d, vk in zip(space.dims, v)])
    L = np.array([[float(e) for e in row] for row in build_matrix(space, g)])
    return 0.5 * (t2r * float(a @ a) - float(a @ L @ a))


def charpoly_certificate(matrix, lam) -> bool:
    """``det(L - lam I) == 0`` decided exactly."""
    if not matrix_is_exact(matrix) or not is_exact(lam):
        raise NonRationalMatrixError("exact certificate needs rational entries and eigenvalue")
    lam = Fraction(lam)
    shifted = [
        [Fraction(v) - (lam if i == j else 0) for j, v in enumerate(row)]
        for i, row in enumerate(matrix)
    ]
    return bareiss_det(shifted) == 0


def submatrix_bounds(space: SpaceDescriptor, g, subset: Sequence[int]):
    """Extreme eigenvalues of the principal submatrix on ``subset`` (0-based),
    restricted to its own traceless hyperplane; ``None`` for fewer than two indices.

    By interlacing the interval sits inside ``[lambda_p, lambda_p^max]``.
    """
    idx = sorted(set(subset))
    if not idx:
        raise ValueError("subset must be nonempty")
    if len(idx) < 2:
        return None
    matrix = build_matrix(space, g)
    sub = [[matrix[i][j] for j in idx] for i in idx]
    tt = tt_spectrum([space.dims[i] for i in idx], sub)
    return tt[0], tt[-1]


def volume_preserving_curve(g, v: Sequence[float], t: float) -> DiagonalMetric:
    x = g.x if isinstance(g, DiagonalMetric) else tuple(g)
    return DiagonalMetric(tuple(float(xk) * math.exp(t * float(vk)) for xk, vk in zip(x, v)))


def hessian_fd(space: SpaceDescriptor, g, v: Sequence[float], h: float = 1e-4) -> float:
    """Central second difference of ``Sc`` along ``x_k exp(t v_k)``."""
    def sc(t):
        return float(scalar_curvature(space, volume_preserving_curve(g, v, t)))
    return (sc(h) - 2.0 * sc(0.0) + sc(-h)) / (h * h)
