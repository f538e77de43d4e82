"""Einstein metrics: closed-form families, the SU(2l)/U(l) quartic, and a
deterministic multistart Newton solver for arbitrary descriptors."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction as F
from typing import Sequence

import numpy as np

from . import poly
from .catalog import flag_r2_descriptor, generalized_wallach, wallach_descriptor
from .curvature import einstein_residual, residual_of, ricci_eigenvalues, two_rho_of
from .space import DiagonalMetric, Scalar, SpaceDescriptor, exact_sqrt, is_exact

RESIDUAL_TOL = 1e-10


class Source(str, enum.Enum):
    EQUAL_DIMS = "ClosedFormEqualDims"
    TWO_EQUAL = "ClosedFormTwoEqual"
    W2_GENERAL = "ClosedFormW2General"
    W4_QUARTIC = "ClosedFormW4Quartic"
    FLAG_R2 = "ClosedFormFlagR2"
    NUMERIC = "Numeric"
    GIVEN = "Given"


@dataclass(frozen=True)
class EinsteinSolution:
    """One Einstein metric, or a recorded non-existence (``exists=False``).

    ``tt_spectrum`` holds the closed-form TT eigenvalues when the family
    provides them; it is empty for numeric solutions.
    """

    label: str
    metric: DiagonalMetric | None
    two_rho: Scalar | None
    residual: float
    source: Source
    exists: bool = True
    reason: str = ""
    tt_spectrum: tuple[Scalar, ...] = ()
    space: SpaceDescriptor | None = field(default=None, repr=False, compare=False)


def _two_rho_of(space: SpaceDescriptor, g: DiagonalMetric) -> Scalar:
    return two_rho_of(space, ricci_eigenvalues(space, g))


def _verified(space, label, x, source, two_rho=None, tt=()) -> EinsteinSolution:
    g = DiagonalMetric(tuple(x))
    rho = ricci_eigenvalues(space, g)
    residual = residual_of(space, rho)
    if residual > RESIDUAL_TOL:
        raise ArithmeticError(f"{space.name} {label}: closed form has residual {residual:.3e}")
    if two_rho is None:
        two_rho = two_rho_of(space, rho)
    return EinsteinSolution(label, g, two_rho, residual, source,
                            tt_spectrum=tuple(sorted(tt, key=float)), space=space)


def _missing(label, source, reason) -> EinsteinSolution:
    return EinsteinSolution(label, None, None, math.nan, source, exists=False, reason=reason)


# --- three equal dimensions -------------------------------------------------

def solve_equal_dims(b, space: SpaceDescriptor | None = None) -> list[EinsteinSolution]:
    """``g_kil`` and the three ``g_i`` on a generalized Wallach space with ``a_k = b``."""
    b = F(b)
    if not 0 < b < F(1, 2):
        raise ValueError("need 0 < b < 1/2")
    space = space or generalized_wallach(b, b, b)
    out = [_verified(space, "g_kil", (1, 1, 1), Source.EQUAL_DIMS, 1 - b, (3 * b, 3 * b))]
    t = (1 - 2 * b) / (2 * b)
    tt = ((12 * b * b + 4 * b - 1) / (2 * (1 - 2 * b)), 3 * (1 - 2 * b) / 2)
    for i in range(3):
        x = [F(1)] * 3
        x[i] = t
        out.append(_verified(space, f"g_{i + 1}", x, Source.EQUAL_DIMS, (1 + 2 * b) / 2, tt))
    return out


# --- two equal dimensions ---------------------------------------------------

def two_equal_T(b, c):
    return 1 - 2 * (2 * b + c) + 16 * b * b * (b + c)


def lamp_spectrum(b, c, p):
    """Nonzero eigenvalues at ``g_p`` from the quartic ``D(p)``."""
    c4 = (b + c) * (8 * b**3 * c + 1 - 4 * b**2 + 8 * b**4)
    c3 = 8 * b**2 * (b + c) * (4 * b * c + 4 * b**2 - 1)
    c2 = 96 * c * b**4 - 8 * b**3 + 48 * c**2 * b**3 + 48 * b**5 - 2 * c - 8 * c * b**2
    D = c4 * p**4 + c3 * p**3 + c2 * p**2 + c3 * p + c4
    root = exact_sqrt(2 * b * D)
    base = 4 * c * b**2 * (p + 1) ** 2 + b * (p**2 + 1)
    den = 2 * b * p * (p + 1)
    return ((base - root) / den, (base + root) / den)


def solve_two_equal(b, c, space: SpaceDescriptor | None = None) -> list[EinsteinSolution]:
    """``g_{q+-} = (1, 1, q)`` and ``g_{p+-} = (p, 1, 2b(p+1))`` for ``a = (b, b, c)``."""
    b, c = F(b), F(c)
    if b <= 0 or c <= 0:
        raise ValueError("need b, c > 0")
    space = space or generalized_wallach(b, b, c)
    out = []

    radicand = 1 - 4 * (b + c) * (1 - 2 * c)
    if radicand < 0:
        reason = f"q radicand 1-4(b+c)(1-2c) = {radicand} < 0"
        out += [_missing("q+", Source.TWO_EQUAL, reason), _missing("q-", Source.TWO_EQUAL, reason)]
    else:
        s = exact_sqrt(radicand)
        for label, sign in (("q+", 1), ("q-", -1)):
            q = (1 + sign * s) / (2 * (b + c))
            if q <= 0:
                out.append(_missing(label, Source.TWO_EQUAL, f"q = {q} is not positive"))
                continue
            tt = (b * (4 - q * q) / q, q * (b + 2 * c))
            out.append(_verified(space, label, (1, 1, q), Source.TWO_EQUAL, 1 - b * q, tt))

    T = two_equal_T(b, c)
    if T <= 0:
        reason = f"T = {T} <= 0"
        out += [_missing("p+", Source.TWO_EQUAL, reason), _missing("p-", Source.TWO_EQUAL, reason)]
    else:
        lead = 1 - 2 * b + 8 * b * b * (b + c)
        s = exact_sqrt(lead**2 - 4 * (b + c) ** 2 * (1 - 4 * b * b) ** 2)
        den = 2 * (b + c) * (1 - 4 * b * b)
        for label, sign in (("p+", 1), ("p-", -1)):
            p = (lead + sign * s) / den
            two_rho = (1 + p) * (1 - 4 * b * b) / (2 * p)
            out.append(_verified(space, label, (p, 1, 2 * b * (p + 1)), Source.TWO_EQUAL,
                                 two_rho, lamp_spectrum(b, c, p)))
    return out


# --- W2 with pairwise distinct parameters ------------------------------------

def solve_w2_general(k: int, l: int, m: int) -> list[EinsteinSolution]:
    if len({k, l, m}) != 3:
        raise ValueError("k, l, m must be pairwise distinct; use solve_equal_dims or solve_two_equal")
    space = wallach_descriptor("W2", k, l, m)
    s = k + l + m
    prod = (k + l) * (k + m) * (l + m)
    two_rho0 = F(prod + 2 * k * l * m, s * prod)
    root = exact_sqrt(F(prod * (prod - 8 * k * l * m)))
    den = 2 * s * prod
    tt0 = ((prod + 4 * k * l * m - root) / den, (prod + 4 * k * l * m + root) / den)
    out = [_verified(space, "g_0", (l + m, k + m, k + l), Source.W2_GENERAL, two_rho0, tt0)]
    for label, x, p in (
        ("g_k", (l + m + 2 * k, k + m, k + l), k),
        ("g_l", (l + m, k + 2 * l + m, k + l), l),
        ("g_m", (l + m, k + m, k + l + 2 * m), m),
    ):
        others = s - p
        tt = (F(0), F(4 * p + others, s * (2 * p + others)))
        out.append(_verified(space, label, x, Source.W2_GENERAL, F(1, s), tt))
    return out


# --- SU(2l)/U(l) --------------------------------------------------------------

def w4_quartic(l: int) -> tuple[F, ...]:
    """Coefficients (lowest first) of the quartic whose positive roots are ``x_3``."""
    return poly.normalize([
        12 * l**4 - 20 * l**3 + 7 * l**2 + 2 * l - 1,
        -(48 * l**3 - 48 * l**2 + 4 * l + 4) * l,
        (72 * l**2 - 36 * l - 4) * l**2,
        -(48 * l - 8) * l**3,
        12 * l**4,
    ])


def w4_x2(l: int, x3: float) -> float:
    return (2 * l * l * x3 * x3 + 2 * l * x3 + 1 - l - 2 * l * l) / (2 * l * (2 * l * x3 - 2 * l + 1))


def solve_w4_quartic(l: int) -> list[EinsteinSolution]:
    if l < 2:
        raise ValueError("need l >= 2")
    space = wallach_descriptor("W4", l)
    p = w4_quartic(l)
    brackets = poly.isolate_positive_roots(p)
    if len(brackets) != 2:
        raise ArithmeticError(f"W4 l={l}: expected two positive roots, found {len(brackets)}")
    out = []
    for n, (lo, hi) in enumerate(brackets, start=1):
        x3 = poly.polish_root(p, lo, hi)
        out.append(_verified(space, f"g_{n}", (1.0, w4_x2(l, x3), x3), Source.W4_QUARTIC))
    return out


# --- two-summand flag manifolds ---------------------------------------------

def solve_flag_r2(d1: int, d2: int) -> list[EinsteinSolution]:
    space = flag_r2_descriptor(d1, d2)

    def lam(x1, x2):
        return F(d1 + d2) * x2 / ((d1 + 4 * d2) * x1 * x1)

    out = []
    for label, x in (("g_0", (F(1), F(2))), ("g_1", (F(1), F(4 * d2, d1 + 2 * d2)))):
        out.append(_verified(space, label, x, Source.FLAG_R2, tt=(lam(*x),)))
    return out


# --- dispatch -------------------------------------------------------------------

def wallach_a(space: SpaceDescriptor) -> tuple[Scalar, ...] | None:
    """``a_k`` when ``space`` is a generalized Wallach space with ``b_k = 1``."""
    if space.r != 3 or any(b != 1 for b in space.killing):
        return None
    if [t for t, _ in space.constants] != [(1, 2, 3)]:
        return None
    return space.a_values()


def _relabelled(space: SpaceDescriptor, order: Sequence[int]) -> SpaceDescriptor:
    """Summand ``order[j]`` (0-based) of ``space`` becomes summand ``j``."""
    perm = [0] * space.r
    for new, old in enumerate(order):
        perm[old] = new + 1
    return SpaceDescriptor(space.name, tuple(space.dims[i] for i in order),
                           tuple(space.killing[i] for i in order), space.constants.relabel(perm),
                           space.trivial_dim, space.notes)


def _two_equal_any_order(space: SpaceDescriptor, a) -> list[EinsteinSolution]:
    pair = next((i, j) for i, j in ((0, 1), (0, 2), (1, 2)) if a[i] == a[j])
    odd = 3 - sum(pair)
    order = (pair[0], pair[1], odd)
    inner = _relabelled(space, order)
    out = []
    for sol in solve_two_equal(a[pair[0]], a[odd], inner):
        if not sol.exists:
            out.append(sol)
            continue
        x = [None] * 3
        for new, old in enumerate(order):
            x[old] = sol.metric.x[new]
        out.append(_verified(space, sol.label, x, sol.source, sol.two_rho, sol.tt_spectrum))
    return out


def solve_auto(space: SpaceDescriptor) -> list[EinsteinSolution]:
    """Closed forms where the structure allows, multistart Newton otherwise."""
    family, _, arg = space.name.partition(":")
    family = family.upper()
    a = wallach_a(space)
    if a is not None:
        distinct = len(set(a))
        if distinct == 1 and a[0] < F(1, 2):
            return solve_equal_dims(a[0], space)
        if distinct == 2:
            return _two_equal_any_order(space, a)
        if family == "W2" and arg:
            k, l, m = (int(v) for v in arg.split(","))
            if space == wallach_descriptor("W2", k, l, m):
                return solve_w2_general(k, l, m)
        if family == "W4" and a[0] == F(1, 4) and a[2] > a[0]:
            l = 1 / (4 * (a[2] - a[0]))
            if l.denominator == 1 and space.dims == wallach_descriptor("W4", int(l)).dims:
                return solve_w4_quartic(int(l))
    if family == "FLAG_R2" and space.r == 2:
        d1, d2 = space.dims
        if space == flag_r2_descriptor(d1, d2):
            return solve_flag_r2(d1, d2)
    if space.r == 1:
        g = DiagonalMetric((F(1),))
        return [EinsteinSolution("g_1", g, _two_rho_of(space, g), 0.0, Source.GIVEN, space=space)]
    return solve_numeric(space)


# --- numeric multistart Newton -----------------------------------------------

class _RicciKernel:
    """Float evaluation of the Ricci eigenvalues for repeated calls."""

    def __init__(self, space: SpaceDescriptor):
        terms = list(space.constants.ordered())
        self.r = space.r
        self.i = np.array([t[0] for t in terms], dtype=int)
        self.j = np.array([t[1] for t in terms], dtype=int)
        self.k = np.array([t[2] for t in terms], dtype=int)
        self.c = np.array([float(t[3]) for t in terms])
        self.b = np.array([float(v) for v in space.killing])
        self.d = np.array(space.dims, dtype=float)

    def rho(self, x: np.ndarray) -> np.ndarray:
        xi, xj, xk = x[self.i], x[self.j], x[self.k]
        w = (xi * xi + xj * xj - xk * xk) / (xi * xj * xk) * self.c
        acc = np.bincount(self.k, weights=w, minlength=self.r) if w.size else np.zeros(self.r)
        return self.b / (2 * x) - acc / (4 * self.d)


def _newton(kernel: _RicciKernel, u0: np.ndarray, tol: float, max_iter: int, h: float):
    def F(u):
        rho = kernel.rho(np.concatenate(([1.0], np.exp(u))))
        return rho[1:] - rho[0]

    u = u0.astype(float)
    fu = F(u)
    for _ in range(max_iter):
        norm = float(np.max(np.abs(fu)))
        if norm < tol:
            return u
        n = u.size
        jac = np.empty((n, n))
        for col in range(n):
            du = np.zeros(n)
            du[col] = h
            jac[:, col] = (F(u + du) - fu) / h
        try:
            step = np.linalg.solve(jac, -fu)
        except np.linalg.LinAlgError:
            return None
        t = 1.0
        while t > 1e-6:
            cand = u + t * step
            if np.all(np.abs(cand) < math.log(1e6)):
                fc = F(cand)
                if np.all(np.isfinite(fc)) and float(np.max(np.abs(fc))) < norm:
                    break
            t /= 2
        else:
            return None
        u, fu = cand, fc
    return u if float(np.max(np.abs(fu))) < tol else None


def solve_numeric(space: SpaceDescriptor, points: int = 7, lo: float = 0.1, hi: float = 5.0,
                  tol: float = 1e-12, dedup: float = 1e-6, max_iter: int = 100,
                  fd_step: float = 1e-7) -> list[EinsteinSolution]:
    """All Einstein metrics reached from a log-uniform start grid, gauge ``x_1 = 1``."""
    if space.r < 2:
        raise ValueError("need r >= 2")
    kernel = _RicciKernel(space)
    axis = np.linspace(math.log(lo), math.log(hi), points)
    roots: list[np.ndarray] = []
    for start in itertools.product(axis, repeat=space.r - 1):
        u = _newton(kernel, np.array(start), tol, max_iter, fd_step)
        if u is None:
            continue
        if all(float(np.max(np.abs(u - v))) > dedup for v in roots):
            roots.append(u)
    roots.sort(key=lambda v: tuple(v))
    out = []
    for n, u in enumerate(roots, start=1):
        g = DiagonalMetric((1.0,) + tuple(float(v) for v in np.exp(u)))
        residual = einstein_residual(space, g)
        if residual > RESIDUAL_TOL:
            continue
        out.append(EinsteinSolution(f"n_{n}", g, float(_two_rho_of(space, g)), residual,
                                    Source.NUMERIC, space=space))
    return out


def match_solutions(found: Sequence[EinsteinSolution], expected: Sequence[Sequence[float]],
                    gauge: bool = True) -> list[EinsteinSolution | None]:
    """Pair each expected metric with the closest found metric (``x_1 = 1`` gauge)."""
    out = []
    for target in expected:
        target = np.array([float(v) for v in target])
        if gauge:
            target = target / target[0]
        best, dist = None, math.inf
        for sol in found:
            if sol.metric is None:
                continue
            x = np.array(sol.metric.as_float())
            if gauge:
                x = x / x[0]
            e = float(np.max(np.abs(x - target)))
            if e < dist:
                best, dist = sol, e
        out.append(best)
    return out


# --- prescribed Ricci curve ---------------------------------------------------

def kahler_ricci_curve(t: float) -> DiagonalMetric:
    """Metrics with the same volume and Ricci tensor as ``(1, 1, 2)``."""
    if not t > 0:
        raise ValueError("need t > 0")
    s = math.sqrt(t * t + 8.0 / t)
    return DiagonalMetric((float(t), 0.5 * (s - t), 0.5 * (t + s)))


def exact_two_rho(sol: EinsteinSolution) -> bool:
    return is_exact(sol.two_rho)


def polish_metric(space: SpaceDescriptor, x0: Sequence[float], tol: float = 1e-12,
                  max_iter: int = 100, fd_step: float = 1e-7) -> EinsteinSolution | None:
    """Newton refinement of an approximate Einstein metric, returned in the gauge ``x_1 = 1``."""
    if space.r < 2:
        raise ValueError("need r >= 2")
    x0 = np.array([float(v) for v in x0])
    if np.any(x0 <= 0):
        raise ValueError("metric must be positive")
    u = _newton(_RicciKernel(space), np.log(x0[1:] / x0[0]), tol, max_iter, fd_step)
    if u is None:
        return None
    g = DiagonalMetric((1.0,) + tuple(float(v) for v in np.exp(u)))
    residual = einstein_residual(space, g)
    if residual > RESIDUAL_TOL:
        return None
    return EinsteinSolution("polished", g, float(_two_rho_of(space, g)), residual, Source.NUMERIC, space=space)


def catalog_einstein_metrics(specs: Sequence[str] | None = None,
                             max_numeric_r: int = 3) -> list[tuple[SpaceDescriptor, EinsteinSolution]]:
    """Every Einstein metric :func:`solve_auto` finds on the given catalog spaces
    (default: each family at its default parameters).

    Spaces with more than ``max_numeric_r`` summands and no closed form would
    need a long multistart search; for them only the standard metric is
    returned, when it is Einstein.
    """
    from .catalog import FAMILIES, parse_space
    out = []
    for spec in specs if specs is not None else FAMILIES:
        space = parse_space(spec)
        if space.r > max_numeric_r:
            g = DiagonalMetric((F(1),) * space.r)
            if einstein_residual(space, g) <= RESIDUAL_TOL:
                out.append((space, _verified(space, "g_kil", g.x, Source.GIVEN)))
            continue
        out.extend((space, sol) for sol in solve_auto(space) if sol.exists)
    return out
