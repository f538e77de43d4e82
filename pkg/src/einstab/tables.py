"""Table reproduction: recompute published cells from descriptors and diff them.

Each expected value carries a provenance tag:

* ``published``: transcribed as printed;
* ``published, corrected``: printed value with a typo fixed (see the row label);
* ``derived``: not printed as a number; evaluated here from a printed closed form.

Tolerances: 0 for rational expectations (decided exactly, eigenvalues through
a characteristic-polynomial certificate), 1e-9 for surds, 1e-6 for irrational
scalar curvature closed forms, 2e-3 for four-digit decimals.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction as F
from typing import Callable

from .catalog import exceptional_wallach_descriptor, wallach_descriptor
from .curvature import einstein_residual, scalar_curvature_normalized, two_rho
from .lichnerowicz import (Kind, NonRationalMatrixError, build_matrix, tt_certificate,
                           tt_spectrum, verdict_from_spectrum)
from .solvers import (EinsteinSolution, Source, lamp_spectrum, match_solutions, polish_metric,
                      solve_equal_dims, solve_numeric, solve_two_equal, solve_w2_general)
from .space import (DescriptorError, DiagonalMetric, Scalar, SpaceDescriptor, is_exact,
                    load_descriptor)

TABLE_IDS = ("W2", "W2Sc", "W3", "W3Sc", "W4", "W4_2", "W5")
GATED_IDS = ("FS3", "FS4", "FS5", "FS6")

EXACT = 0.0
SURD = 1e-9
CLOSED_FORM = 1e-6
FOUR_DIGITS = 2e-3

PUB = "published"
FIX = "published, corrected"
DER = "derived"


@dataclass(frozen=True)
class Row:
    label: str
    expected: object
    computed: object
    abs_err: float
    tolerance: float
    passed: bool
    provenance: str


@dataclass(frozen=True)
class TableReport:
    table_id: str
    rows: tuple[Row, ...]
    notes: tuple[str, ...] = ()
    complete: bool = True

    @property
    def passed(self) -> bool:
        return self.complete and all(r.passed for r in self.rows)

    @property
    def failures(self) -> list[Row]:
        return [r for r in self.rows if not r.passed]

    def to_dict(self) -> dict:
        return {
            "table": self.table_id,
            "passed": self.passed,
            "complete": self.complete,
            "rows": [
                {
                    "label": r.label,
                    "expected": _json_value(r.expected),
                    "computed": _json_value(r.computed),
                    "abs_err": None if math.isinf(r.abs_err) else r.abs_err,
                    "tolerance": r.tolerance,
                    "pass": r.passed,
                    "provenance": r.provenance,
                }
                for r in self.rows
            ],
            "notes": list(self.notes),
        }

    def render(self) -> str:
        head = ("label", "expected", "computed", "abs_err", "tol", "result", "provenance")
        body = [
            (r.label, fmt(r.expected), fmt(r.computed),
             "inf" if math.isinf(r.abs_err) else f"{r.abs_err:.2e}",
             f"{r.tolerance:g}", "PASS" if r.passed else "FAIL", r.provenance)
            for r in self.rows
        ]
        widths = [max(len(line[c]) for line in [head] + body) for c in range(len(head))]
        lines = [f"table {self.table_id}"]
        lines += ["  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in [head] + body]
        lines += [f"note: {n}" for n in self.notes]
        npass = sum(r.passed for r in self.rows)
        status = "PASS" if self.passed else ("INCOMPLETE" if not self.complete else "FAIL")
        lines.append(f"{self.table_id}: {npass}/{len(self.rows)} cells pass; {status}")
        return "\n".join(lines)


def fmt(value) -> str:
    if isinstance(value, F):
        return str(value)
    if isinstance(value, float):
        return f"{value:.10g}"
    if value is None:
        return "-"
    return str(value)


def _json_value(value):
    if isinstance(value, F):
        return str(value)
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


class _Rows:
    def __init__(self):
        self.rows: list[Row] = []
        self.notes: list[str] = []

    def add(self, label, expected, computed, tol, prov):
        if computed is None:
            self.rows.append(Row(label, expected, None, math.inf, tol, False, prov))
            return
        if tol == EXACT:
            ok = is_exact(expected) and is_exact(computed) and F(expected) == F(computed)
            # a float that happens to round onto the rational still fails the exact check
            err = 0.0 if ok else (abs(float(expected) - float(computed)) or math.inf)
        else:
            err = abs(float(expected) - float(computed))
            ok = err <= tol
        self.rows.append(Row(label, expected, computed, err, tol, ok, prov))

    def label(self, label, expected: str, computed: str, prov):
        ok = expected == computed
        self.rows.append(Row(label, expected, computed, 0.0 if ok else math.inf, EXACT, ok, prov))

    def eigen(self, label, space, g, expected, computed: float, tol, prov):
        """TT eigenvalue cell; a rational expectation needs an exact certificate."""
        if tol == EXACT:
            try:
                certified = tt_certificate(space, g, expected)
            except NonRationalMatrixError:
                certified = False
            close = abs(float(expected) - computed) <= 1e-9
            if certified and close:
                self.rows.append(Row(label, expected, F(expected), 0.0, EXACT, True, prov))
            else:
                err = abs(float(expected) - computed) or math.inf
                self.rows.append(Row(label, expected, computed, err, EXACT, False, prov))
            return
        self.add(label, expected, computed, tol, prov)

    def verdict(self, label, kind: Kind, coindex: int | None, v, prov):
        want = kind.value if coindex is None else f"{kind.value}/{coindex}"
        got = v.kind.value if coindex is None else f"{v.kind.value}/{v.coindex}"
        self.label(label, want, got, prov)

    def spectrum_cells(self, tag, space, sol: EinsteinSolution, lam_min, lam_max, two_rho,
                       kind: Kind, coindex, tol, prov, rho_tol=None, rho_prov=None):
        if sol is None or not sol.exists:
            for name in ("lambda_p", "lambda_max", "2rho", "type"):
                self.rows.append(Row(f"{tag} {name}", "exists", None, math.inf, EXACT, False, prov))
            return
        g = sol.metric
        tt = tt_spectrum(space, build_matrix(space, g))
        self.eigen(f"{tag} lambda_p", space, g, lam_min, tt[0], tol, prov)
        self.eigen(f"{tag} lambda_max", space, g, lam_max, tt[-1], tol, prov)
        self.add(f"{tag} 2rho", two_rho, sol.two_rho, tol if rho_tol is None else rho_tol, rho_prov or prov)
        v = verdict_from_spectrum(tt, sol.two_rho, space.trivial_dim)
        self.verdict(f"{tag} type", kind, coindex, v, PUB)


def _by_label(sols) -> dict[str, EinsteinSolution]:
    return {s.label: s for s in sols}


def _tol(value) -> float:
    return EXACT if is_exact(value) else SURD


# --- equal dimensions: spectra ------------------------------------------------

def _equal_dims_cases():
    """(tag, space, b, t, gkil cells, g_i cells, g_kil kind); cells are (lam_p, lam_max, 2rho)."""
    out = [("W1 so(3)", wallach_descriptor("W1", 1, 1, 1), F(1, 2), None,
            (F(3, 2), F(3, 2), F(1, 2)), None, Kind.G_STABLE)]
    for k in (3, 4, 5):
        b = F(k, 2 * (3 * k - 2))
        out.append((f"W1 k={k}", wallach_descriptor("W1", k, k, k), b, F(2 * (k - 1), k),
                    (F(3 * k, 2 * (3 * k - 2)),) * 2 + (F(5 * k - 4, 2 * (3 * k - 2)),),
                    (F(2 * k - 1, (k - 1) * (3 * k - 2)), F(3 * (k - 1), 3 * k - 2), F(2 * k - 1, 3 * k - 2)),
                    Kind.LOCAL_MINIMUM))
    for k in (1, 2):
        out.append((f"W2 k={k}", wallach_descriptor("W2", k, k, k), F(1, 6), F(2),
                    (F(1, 2), F(1, 2), F(5, 6)), (F(0), F(1), F(2, 3)), Kind.LOCAL_MINIMUM))
    for k in (1, 2, 3):
        out.append((f"W3 k={k}", wallach_descriptor("W3", k, k, k), F(k, 2 * (3 * k + 1)), F(2 * k + 1, k),
                    (F(3 * k, 2 * (3 * k + 1)),) * 2 + (F(5 * k + 2, 2 * (3 * k + 1)),),
                    (F(-(4 * k + 1), 2 * (2 * k + 1) * (3 * k + 1)), F(3 * (2 * k + 1), 2 * (3 * k + 1)),
                     F(4 * k + 1, 2 * (3 * k + 1))),
                    Kind.LOCAL_MINIMUM))
    half = (F(1, 2), F(1, 2), F(5, 6)), (F(0), F(1), F(2, 3))
    out.append(("W5 l=4", wallach_descriptor("W5", 4), F(1, 6), F(2), *half, Kind.LOCAL_MINIMUM))
    ex = {
        "W7": (F(1, 6), F(2), *half, Kind.LOCAL_MINIMUM),
        "W9": (F(2, 9), F(5, 4), (F(2, 3), F(2, 3), F(7, 9)), (F(13, 30), F(5, 6), F(13, 18)), Kind.LOCAL_MINIMUM),
        "W11": (F(5, 18), F(4, 5), (F(15, 18), F(15, 18), F(13, 18)), (F(2, 3), F(7, 6), F(7, 9)), Kind.G_STABLE),
        "W13": (F(4, 15), F(7, 8), (F(12, 15), F(12, 15), F(11, 15)), (F(7, 10), F(69, 70), F(23, 30)), Kind.G_STABLE),
        "W15": (F(1, 9), F(7, 2), (F(1, 3), F(1, 3), F(8, 9)), (F(-11, 42), F(7, 6), F(11, 18)), Kind.LOCAL_MINIMUM),
    }
    for name, (b, t, kil, gi, kind) in ex.items():
        out.append((name, exceptional_wallach_descriptor(name), b, t, kil, gi, kind))
    return out


def _kil_only(space) -> EinsteinSolution:
    g = DiagonalMetric((F(1),) * space.r)
    return EinsteinSolution("g_kil", g, two_rho(space, g), einstein_residual(space, g), Source.GIVEN, space=space)


def reproduce_w2() -> TableReport:
    out = _Rows()
    for tag, space, b, t, kil, gi, kind in _equal_dims_cases():
        out.add(f"{tag} b", b, space.a_values()[0], EXACT, PUB)
        if t is None:
            out.spectrum_cells(f"{tag} g_kil", space, _kil_only(space), *kil, kind, None, EXACT, PUB)
            continue
        sols = _by_label(solve_equal_dims(b, space))
        out.add(f"{tag} (1-2b)/2b", t, sols["g_1"].metric.x[0], EXACT, PUB)
        coindex = 2 if kind is Kind.LOCAL_MINIMUM else 0
        out.spectrum_cells(f"{tag} g_kil", space, sols["g_kil"], *kil, kind, coindex, EXACT, PUB)
        for i in (1, 2, 3):
            out.spectrum_cells(f"{tag} g_{i}", space, sols[f"g_{i}"], *gi, Kind.SADDLE, 1, EXACT, PUB)
    return TableReport("W2", tuple(out.rows))


# --- equal dimensions: normalized scalar curvature -----------------------------

def reproduce_w2sc() -> TableReport:
    out = _Rows()
    cbrt = lambda v: float(v) ** (1.0 / 3.0)  # noqa: E731
    closed: dict[str, tuple[Scalar, float | None]] = {"W1 so(3)": (F(3, 4), None)}
    for k in (3, 4, 5):
        # printed prefactor is twice this; the denominator 2(3k-2) matches a direct evaluation
        closed[f"W1 k={k}"] = (F(3 * k * k * (5 * k - 4), 4 * (3 * k - 2)),
                               3 * k * k * (2 * k - 1) / (2 * (3 * k - 2)) * cbrt(F(2 * k - 2, k)))
    for k in (1, 2):
        closed[f"W2 k={k}"] = (F(5 * k * k, 2), 2 ** (4 / 3) * k * k)
    for k in (1, 2, 3):
        n = 12 * k * k
        closed[f"W3 k={k}"] = (F(n * (5 * k + 2), 4 * (3 * k + 1)),
                               3 * k * k * (4 * k + 1) / (3 * k + 1) * cbrt(F(2 * k + 1, k)))
    closed.update({
        "W5 l=4": (F(15, 2), 6 * cbrt(2)),
        "W7": (F(20), 16 * cbrt(2)),
        "W9": (F(112, 3), 52 / 3 * cbrt(10)),
        "W11": (F(455, 12), 49 / 6 * 10 ** (2 / 3)),
        # printed with 7^(2/3); 7^(1/3) reproduces the printed decimal 70.3958
        "W13": (F(352, 5), 184 / 5 * cbrt(7)),
        "W15": (F(32, 3), 11 / 3 * cbrt(28)),
    })
    for tag, space, b, t, *_ in _equal_dims_cases():
        kil_val, gi_val = closed[tag]
        if t is None:
            out.add(f"{tag} g_kil Sc_N", kil_val, scalar_curvature_normalized(space, (1, 1, 1)), EXACT, PUB)
            continue
        sols = _by_label(solve_equal_dims(b, space))
        out.add(f"{tag} g_kil Sc_N", kil_val, scalar_curvature_normalized(space, sols["g_kil"].metric), EXACT, PUB)
        prov = FIX if tag.startswith("W1 k") or tag == "W13" else DER
        for i in (1, 2, 3):
            out.add(f"{tag} g_{i} Sc_N", gi_val, scalar_curvature_normalized(space, sols[f"g_{i}"].metric),
                    CLOSED_FORM, prov)
    return TableReport("W2Sc", tuple(out.rows))


# --- two equal dimensions -------------------------------------------------------

W1_KM = ((1, 3), (2, 3), (4, 3), (1, 4), (5, 4), (2, 5))
W2_KM = tuple((k, m) for k in range(1, 5) for m in range(1, 5) if k != m)
W3_KM = ((1, 2), (2, 1), (1, 3), (3, 2))
W5_L = (5, 6, 7, 8)


def _two_equal_case(family: str, k: int, m: int):
    """Space, ``b``, ``c`` for ``SO/SU/Sp(k+2m)`` with two equal blocks of size ``m``."""
    space = wallach_descriptor(family, m, m, k)
    a = space.a_values()
    return space, a[0], a[2]


def _w1_T(k, m):
    return F(-2 * k * k + 2 * (k + m) * (m - 2) ** 2 + 8 * (m - 1), (k + 2 * m - 2) ** 3)


def _w1_q(k, m):
    s = math.sqrt(k * k - 4 * m + 4) if k * k - 4 * m + 4 >= 0 else None
    if s is None:
        return None
    return tuple((k + 2 * m - 2 + sign * s) / (k + m) for sign in (1, -1))


def _w1_p(k, m):
    T = _w1_T(k, m)
    if T <= 0:
        return None
    d1 = F(k - 1 + m, 2) * (k + 2 * m - 2) ** 3 * T
    num = 5 * m**3 + (9 * k - 16) * m**2 + (20 + 5 * k * k - 20 * k) * m + k**3 - 6 * k * k - 8 + 12 * k
    den = (k - 2 + m) * (k - 2 + 3 * m) * (k + m)
    root = 2 * (2 * m + k - 2) * math.sqrt(d1)
    return ((num + root) / den, (num - root) / den)


def _w3_q(k, m):
    s = math.sqrt(k * k + 2 * m + 1)
    return tuple((k + 2 * m + 1 + sign * s) / (k + m) for sign in (1, -1))


def _w3_p(k, m):
    d2 = (2 * k + 1 + 2 * m) * ((k + 1) ** 2 + 4 * m * k + 2 * m * m * k + 2 * m**3 + 4 * m * m + 4 * m)
    num = 10 * m * k + 5 * m**3 + 5 * m * k * k + 9 * m * m * k + (k + 1) ** 3 + 5 * m + 8 * m * m
    den = (k + 1 + 3 * m) * (k + 1 + m) * (m + k)
    root = (2 * m + k + 1) * math.sqrt(d2)
    return ((num + root) / den, (num - root) / den)


def _two_equal_metric_params():
    """(tag, space, b, c, expected {label: value or None}, provenance) for every two-equal case."""
    out = []
    for k, m in W1_KM:
        space, b, c = _two_equal_case("W1", k, m)
        q, p = _w1_q(k, m), _w1_p(k, m)
        exp = {"q+": q and q[0], "q-": q and q[1], "p+": p and p[0], "p-": p and p[1]}
        out.append((f"W1 k={k} m={m}", space, b, c, exp, DER))
    for k, m in W2_KM:
        space, b, c = _two_equal_case("W2", k, m)
        exp = {"q+": F(2), "q-": F(2 * m, k + m), "p+": F(k + 3 * m, k + m), "p-": F(k + m, k + 3 * m)}
        out.append((f"W2 k={k} m={m}", space, b, c, exp, PUB))
    for k, m in W3_KM:
        space, b, c = _two_equal_case("W3", k, m)
        q, p = _w3_q(k, m), _w3_p(k, m)
        exp = {"q+": q[0], "q-": q[1], "p+": p[0], "p-": p[1]}
        out.append((f"W3 k={k} m={m}", space, b, c, exp, DER))
    for l in W5_L:
        space = wallach_descriptor("W5", l)
        a = space.a_values()
        exp = {"q+": F(2), "q-": F(2 * (l - 2), l), "p+": F(3 * l - 4, l), "p-": F(l, 3 * l - 4)}
        out.append((f"W5 l={l}", space, a[0], a[2], exp, PUB))
    r29, r1177 = math.sqrt(29), math.sqrt(1177)
    for name, exp in (
        ("W6", {"q+": None, "q-": None, "p+": F(5, 3), "p-": F(3, 5)}),
        ("W12", {"q+": (15 + r29) / 14, "q-": (15 - r29) / 14, "p+": None, "p-": None}),
        ("W14", {"q+": None, "q-": None, "p+": (499 + 9 * r1177) / 392, "p-": (499 - 9 * r1177) / 392}),
    ):
        space = exceptional_wallach_descriptor(name)
        a = space.a_values()
        out.append((name, space, a[0], a[2], exp, PUB))
    return out


def _param_of(sol: EinsteinSolution):
    x = sol.metric.x
    return x[2] if sol.label.startswith("q") else x[0]


def reproduce_w3() -> TableReport:
    out = _Rows()
    for tag, space, b, c, exp, prov in _two_equal_metric_params():
        sols = _by_label(solve_two_equal(b, c, space))
        for label in ("q+", "q-", "p+", "p-"):
            want, sol = exp[label], sols[label]
            if want is None:
                out.label(f"{tag} {label}", "absent", "absent" if not sol.exists else "present", prov)
            elif not sol.exists:
                out.add(f"{tag} {label}", want, None, _tol(want), prov)
            else:
                out.add(f"{tag} {label}", want, _param_of(sol), _tol(want), prov)
    return TableReport("W3", tuple(out.rows))


def _w3sc_closed(tag: str, label: str, space, sol) -> tuple[float, float, str] | None:
    """Closed-form ``Sc_N`` with its tolerance and provenance, or ``None`` when not printed."""
    fam = tag.split()[0]
    if fam in ("W1", "W2", "W3"):
        k, m = (int(part.split("=")[1]) for part in tag.split()[1:])
    if fam == "W1":
        s = 2 * m + k - 2
        if label.startswith("q"):
            q = float(sol.metric.x[2])
            val = m * (2 * k + m) * (4 * m + 2 * k - 4 - m * q) / (4 * s) * q ** (m / (2 * k + m))
        else:
            # exponents follow the volume factor (d_1 = d_2 = km, d_3 = m^2); the printed ones are swapped
            p = float(sol.metric.x[0])
            val = ((p + 1) * m * (2 * k + m) * (3 * m * m + 4 * k * m - 8 * m + k * k - 4 * k + 4)
                   / (4 * p * s * s) * p ** (k / (2 * k + m)) * (m * (p + 1) / s) ** (m / (2 * k + m)))
            return val, CLOSED_FORM, FIX
        return val, CLOSED_FORM, DER
    if fam == "W2":
        e1, e2 = m / (2 * k + m), k / (2 * k + m)
        base = m * (2 * k + m) / (2 * m + k)
        val = {
            "q+": base * (m + k) * 2 ** e1,
            "q-": base * (m * m + 3 * k * m + k * k) / (m + k) * (2 * m / (m + k)) ** e1,
            "p+": base * (m + k) * ((3 * m + k) / (m + k)) ** e2 * (2 * m / (m + k)) ** e1,
            "p-": base * (3 * m + k) * ((m + k) / (3 * m + k)) ** e2 * (2 * m / (3 * m + k)) ** e1,
        }[label]
        return val, CLOSED_FORM, DER
    if fam == "W3":
        s = 2 * m + k + 1
        if label.startswith("q"):
            q = float(sol.metric.x[2])
            val = m * (2 * k + m) * (4 * m + 2 * k + 2 - m * q) / s * q ** (m / (2 * k + m))
        else:
            p = float(sol.metric.x[0])
            val = ((p + 1) * m * (2 * k + m) * (3 * m * m + 4 * k * m + 4 * m + k * k + 2 * k + 1)
                   / (p * s * s) * p ** (k / (2 * k + m)) * (m * (p + 1) / s) ** (m / (2 * k + m)))
        return val, CLOSED_FORM, DER
    if fam == "W5":
        l = int(tag.split("=")[1])
        e = (l - 2) / (l + 2)
        val = {
            "q+": l * (2 + l) / 4 * 2 ** e,
            "q-": (2 + l) * (l * l + 2 * l - 4) / (4 * l) * (2 * (l - 2) / l) ** e,
            "p+": l * (2 + l) / 4 * ((3 * l - 4) / l) ** (2 / (l + 2)) * (2 * (l - 2) / l) ** e,
            "p-": (3 * l - 4) * (2 + l) / 4 * (l / (3 * l - 4)) ** (2 / (l + 2)) * (2 * (l - 2) / (3 * l - 4)) ** e,
        }[label]
        return val, CLOSED_FORM, DER
    if fam == "W6":
        return 28 / 5 * 120 ** (2 / 7), CLOSED_FORM, DER
    if fam == "W12":
        return {"q+": 69.1037, "q-": 68.5187}[label], FOUR_DIGITS, PUB
    if fam == "W14":
        return 14.5750, FOUR_DIGITS, PUB
    return None


def reproduce_w3sc() -> TableReport:
    out = _Rows()
    for tag, space, b, c, exp, _ in _two_equal_metric_params():
        sols = _by_label(solve_two_equal(b, c, space))
        for label in ("q+", "q-", "p+", "p-"):
            sol = sols[label]
            if exp[label] is None or not sol.exists:
                continue
            val, tol, prov = _w3sc_closed(tag, label, space, sol)
            out.add(f"{tag} {label} Sc_N", val, scalar_curvature_normalized(space, sol.metric), tol, prov)
    return TableReport("W3Sc", tuple(out.rows))


# --- two equal dimensions: spectra ---------------------------------------------

def _q_cells(b, c, q):
    lam = sorted([b * (4 - q * q) / q, q * (b + 2 * c)], key=float)
    return lam[0], lam[1], 1 - b * q


def reproduce_w4() -> TableReport:
    """Spectra and types of the two-equal metrics on the infinite families."""
    out = _Rows()
    for tag, space, b, c, exp, prov in _two_equal_metric_params():
        fam = tag.split()[0]
        if fam not in ("W1", "W2", "W3", "W5"):
            continue
        sols = _by_label(solve_two_equal(b, c, space))
        T = (1 - 2 * (2 * b + c) + 16 * b * b * (b + c))
        for label in ("q+", "q-", "p+", "p-"):
            sol = sols[label]
            if exp[label] is None:
                continue
            if not sol.exists:
                out.spectrum_cells(f"{tag} g_{label}", space, None, 0, 0, 0, Kind.SADDLE, 1, EXACT, prov)
                continue
            if label.startswith("q"):
                if fam == "W2":
                    k, m = (int(part.split("=")[1]) for part in tag.split()[1:])
                    cells = {
                        "q+": (F(0), F(2 * k + m, k + 2 * m), F(k + m, k + 2 * m)),
                        "q-": tuple(sorted([F(k, k + m), F(m * (2 * k + m), (k + 2 * m) * (k + m))]))
                        + (F(k * k + m * m + 3 * k * m, (k + m) * (k + 2 * m)),),
                    }[label]
                elif fam == "W5":
                    l = int(tag.split("=")[1])
                    cells = {
                        "q+": (F(0), F(l + 2, 2 * (l - 1)), F(l, 2 * (l - 1))),
                        "q-": (F(2, l), F(l * l - 4, 2 * l * (l - 1)), F(l * l + 2 * l - 4, 2 * l * (l - 1))),
                    }[label]
                else:
                    cells = _q_cells(b, c, _param_of(sol))
                minimum = label == "q-" and (fam != "W1" or T > 0)
                kind, coindex = (Kind.LOCAL_MINIMUM, 2) if minimum else (Kind.SADDLE, 1)
            else:
                p = _param_of(sol)
                if fam == "W2":
                    k, m = (int(part.split("=")[1]) for part in tag.split()[1:])
                    cells = {
                        "p+": (F(0), F((k + 5 * m) * (k + m), (2 * m + k) * (k + 3 * m)), F(m + k, k + 2 * m)),
                        "p-": (F(0), F(k + 5 * m, k + 2 * m), F(k + 3 * m, k + 2 * m)),
                    }[label]
                elif fam == "W5":
                    l = int(tag.split("=")[1])
                    cells = {
                        "p+": (F(0), F(l * (5 * l - 8), 2 * (3 * l * l - 7 * l + 4)), F(l, 2 * (l - 1))),
                        "p-": (F(0), F(5 * l - 8, 2 * (l - 1)), F(3 * l - 4, 2 * (l - 1))),
                    }[label]
                else:
                    lo, hi = lamp_spectrum(b, c, p)
                    cells = (lo, hi, (1 + p) * (1 - 4 * b * b) / (2 * p))
                kind, coindex = Kind.SADDLE, 1
            tol = EXACT if all(is_exact(v) for v in cells) else SURD
            cell_prov = PUB if fam in ("W2", "W5") else DER
            out.spectrum_cells(f"{tag} g_{label}", space, sol, *cells, kind, coindex, tol, cell_prov)
    return TableReport("W4", tuple(out.rows))


def reproduce_w4_2() -> TableReport:
    out = _Rows()
    r1465, r29, r1177 = math.sqrt(1465), math.sqrt(29), math.sqrt(1177)
    cases = {
        "W6": {
            "p+": ((67 - r1465) / 120, (67 + r1465) / 120, F(3, 5), SURD),
            "p-": ((67 - r1465) / 72, (67 + r1465) / 72, F(1), SURD),
        },
        "W12": {
            "q+": ((9 - r29) / 14, (165 + 11 * r29) / 210, (55 - r29) / 70, SURD),
            "q-": ((165 - 11 * r29) / 210, (9 + r29) / 14, (55 + r29) / 70, SURD),
        },
        # 2rho: a factor 9 restored on the root in the denominator, matching the printed decimals
        "W14": {
            "p+": (0.1494, 0.8657, 28 * (99 + r1177) / (9 * (499 + 9 * r1177)), FOUR_DIGITS),
            "p-": (0.3080, 1.7839, 28 * (99 - r1177) / (9 * (499 - 9 * r1177)), FOUR_DIGITS),
        },
    }
    for name, rows in cases.items():
        space = exceptional_wallach_descriptor(name)
        a = space.a_values()
        sols = _by_label(solve_two_equal(a[0], a[2], space))
        for label, (lo, hi, rho, tol) in rows.items():
            out.spectrum_cells(f"{name} g_{label}", space, sols[label], lo, hi, rho, Kind.SADDLE, 1, tol, PUB,
                               rho_tol=_tol(rho), rho_prov=FIX if name == "W14" else PUB)
        four = {"W12": {"q+": (0.2582, 1.0677, 0.7087), "q-": (0.5036, 1.0275, 0.8626)},
                "W6": {"p+": (0.2393, 0.8772, 0.6), "p-": (0.3989, 1.4621, 1.0)},
                "W14": {"p+": (0.1494, 0.8657, 0.5134), "p-": (0.3080, 1.7839, 1.0579)}}.get(name, {})
        for label, vals in four.items():
            sol = sols[label]
            tt = tt_spectrum(space, build_matrix(space, sol.metric))
            for cell, want, got in zip(("lambda_p", "lambda_max", "2rho"), vals, (tt[0], tt[-1], sol.two_rho)):
                out.add(f"{name} g_{label} {cell} (decimal)", want, float(got), FOUR_DIGITS, PUB)
    return TableReport("W4_2", tuple(out.rows))


# --- pairwise distinct dimensions ------------------------------------------------

W2_GENERAL = ((1, 2, 3), (1, 2, 4), (2, 3, 4), (1, 3, 5))
NUMERIC_ROWS = {
    "W8": (
        ("g_1", (1, 1.4618, 1.8845), 0.1605, 0.9669, 0.5745, 21.7434),
        ("g_2", (1, 0.8640, 0.4838), 0.3464, 1.6227, 1.0116, 21.5470),
    ),
    "W10": (
        ("g_1", (1, 0.8882, 0.5717), 0.4354, 1.3150, 0.9492, 36.7796),
        ("g_2", (1, 1.1896, 1.6291), 0.2118, 1.0217, 0.6480, 37.1468),
    ),
}


def reproduce_w5() -> TableReport:
    out = _Rows()
    for name, rows in NUMERIC_ROWS.items():
        space = exceptional_wallach_descriptor(name)
        found = solve_numeric(space)
        out.add(f"{name} solution count", 2, len(found), EXACT, PUB)
        matched = match_solutions(found, [r[1] for r in rows])
        for (label, x, lo, hi, rho, scn), sol in zip(rows, matched):
            tag = f"{name} {label}"
            if sol is None:
                out.add(f"{tag} found", 1, None, EXACT, PUB)
                continue
            for idx in (1, 2):
                out.add(f"{tag} x{idx + 1}", x[idx], sol.metric.x[idx], FOUR_DIGITS, PUB)
            out.spectrum_cells(tag, space, sol, lo, hi, rho, Kind.SADDLE, 1, FOUR_DIGITS, PUB)
            out.add(f"{tag} Sc_N", scn, scalar_curvature_normalized(space, sol.metric), FOUR_DIGITS, PUB)
    for k, l, m in W2_GENERAL:
        space = wallach_descriptor("W2", k, l, m)
        sols = _by_label(solve_w2_general(k, l, m))
        s, prod = k + l + m, (k + l) * (k + m) * (l + m)
        root_sq = prod * (prod - 8 * k * l * m)
        root = math.isqrt(root_sq)
        if root * root == root_sq:
            lo, hi = (F(prod + 4 * k * l * m + sgn * root, 2 * s * prod) for sgn in (-1, 1))
        else:
            lo, hi = ((prod + 4 * k * l * m + sgn * math.sqrt(root_sq)) / (2 * s * prod) for sgn in (-1, 1))
        rho0 = F(prod + 2 * k * l * m, s * prod)
        tag = f"W2 ({k},{l},{m})"
        out.spectrum_cells(f"{tag} g_0", space, sols["g_0"], lo, hi, rho0, Kind.LOCAL_MINIMUM, 2,
                           _tol(lo), DER, rho_tol=EXACT)
        for label, p in (("g_k", k), ("g_l", l), ("g_m", m)):
            hi = F(4 * p + s - p, s * (s + p))
            out.spectrum_cells(f"{tag} {label}", space, sols[label], F(0), hi, F(1, s), Kind.SADDLE, 1, EXACT, PUB)
        out.add(f"{tag} numeric solution count", 4, len(solve_numeric(space)), EXACT, PUB)
    return TableReport("W5", tuple(out.rows))


# --- flag manifolds with b_2 = 1, gated on user-supplied descriptors ------------

S = math.sqrt
# slug -> rows (label, metric, Sc_N, TT eigenvalues ascending, 2rho, coindex); None = not printed
FLAG_TABLES: dict[str, dict[str, tuple]] = {
    "FS3": {
        "E8_E6xSU2xU1": (
            ("g_0", (1, 2, 3), 1577 / 30 * 1207959552 ** (1 / 83), (6 / 5 - S(51) / 30, 6 / 5 + S(51) / 30), F(19, 30), 0),
            ("g_1", (1, 0.914286, 1.54198), 66.9159, (0.478572, 1.55965), 0.821452, 1),
            ("g_2", (1, 1.0049, 0.129681), 65.6151, (0.118731, 1.272251), 0.829109, 1),
        ),
        "E8_SU8xU1": (
            ("g_0", (1, 2, 3), 782 / 15 * 1152 ** (1 / 23), ((11 - S(6)) / 10, (11 + S(6)) / 10), F(17, 30), 0),
            ("g_1", (1, 0.717586, 1.25432), 69.5453, (0.4676547, 1.340237), 0.819949, 1),
            ("g_2", (1, 1.06853, 0.473177), 69.1155, (0.326773, 1.166896), 0.785751, 1),
        ),
        "E7_SU5xSU3xU1": (
            ("g_0", (1, 2, 3), 250 / 9 * 24 ** (1 / 10), (F(5, 6), F(4, 3)), F(5, 9), 0),
            ("g_1", (1, 0.678535, 1.201221), 37.4141, (0.469601, 1.311724), 0.825338, 1),
            ("g_2", (1, 1.090568, 0.546044), 37.3277, (0.352429, 1.157063), 0.772758, 1),
        ),
        "E7_SU6xSU2xU1": (
            ("g_0", (1, 2, 3), 517 / 18 * 294912 ** (1 / 47), ((7 - S(2)) / 6, (7 + S(2)) / 6), F(11, 18), 0),
            ("g_1", (1, 0.85368, 1.45259), 37.0717, (0.469565, 1.485343), 0.816530, 1),
            ("g_2", (1, 1.01573, 0.229231), 36.4084, (0.194860, 1.232011), 0.820660, 1),
        ),
        "E6_SU3xSU3xSU2xU1": (
            ("g_0", (1, 2, 3), 203 / 12 * 4608 ** (1 / 29), (9 / 8 - S(33) / 24, 9 / 8 + S(33) / 24), F(7, 12), 0),
            ("g_1", (1, 0.771752, 1.33186), 22.2677, (0.465849, 1.391997), 0.815861, 1),
            ("g_2", (1, 1.04268, 0.373467), 22.0134, (0.281933, 1.187358), 0.801967, 1),
        ),
        "F4_SU3xSU2xU1_r3": (
            ("g_0", (1, 2, 3), 100 / 9 * 24 ** (1 / 10), (F(5, 6), F(4, 3)), F(5, 9), 0),
            ("g_1", (1, 0.678535, 1.201221), 14.9656, (0.469601, 1.311722), 0.825338, 1),
            ("g_2", (1, 1.090568, 0.546044), 14.9311, (0.352428, 1.157064), 0.772757, 1),
        ),
        "G2_U2": (
            ("g_0", (1, 2, 3), 25 / 12 * 18 ** (1 / 5), (F(1, 2), F(5, 4)), F(5, 12), 0),
            ("g_1", (1, 1.67467, 2.05238), 3.7104, (0.413430, 1.211009), 0.502068, 1),
            ("g_2", (1, 0.186894, 0.981478), 3.4422, (0.19355, 2.670881), 0.970058, 1),
        ),
    },
    "FS4": {
        "F4_SU3xSU2xU1_r4": (
            ("g_0", (1, 2, 3, 4), 70 / 9 * 24 ** (1 / 10), (F(1, 2), F(20, 27), F(7, 6)), F(14, 36), 0),
            ("g_1", (1, 1.2761, 1.9578, 2.3178), 14.5693, (0.4111, 0.8447, 1.2064), 0.5380, 1),
            ("g_2", (1, 0.9704, 0.2291, 1.0097), 14.0370, (0.2108, 1.2583, 2.1506), 0.8231, 1),
        ),
        "E7_SU4xSU3xSU2xU1": (
            ("g_0", (1, 2, 3, 4), 212 / 9 * 24 ** (8 / 53), ((11 - S(13)) / 12, F(53, 54), (11 + S(13)) / 12), F(4, 9), 0),
            ("g_1", (1, 0.8233, 1.2942, 1.3449), 37.6284, (0.5001, 1.0457, 1.2838), 0.7173, 1),
            ("g_2", (1, 0.9912, 0.5783, 1.1312), 37.3618, (0.4331, 1.0696, 1.3332), 0.7626, 1),
        ),
        "E8_SU7xSU2xU1": (
            ("g_0", (1, 2, 3, 4), 637 / 15 * S(2) * 3 ** (1 / 7),
             (9 / 10 - S(21) / 15, F(14, 15), 9 / 10 + S(21) / 15), F(13, 30), 0),
            ("g_1", (1, 0.9133, 1.4136, 1.5196), 69.6567, (0.4826, 1.0134, 1.2468), 0.6781, 1),
            ("g_2", (1, 0.9663, 0.4898, 1.0809), 68.8049, (0.3937, 1.1307, 1.3923), 0.7826, 1),
        ),
        "E8_SU10xSU3xU1": (
            ("g_0", (1, 2, 3, 4), 658 / 15 * 41472 ** (2 / 47),
             (19 / 20 - S(309) / 60, F(97, 90), 19 / 20 + S(309) / 60), F(7, 15), 0),
            ("g_1", (1, 0.6496, 1.1094, 1.0610), 66.5752, (0.5039, 1.1437, 1.4399), 0.7970, 1),
            ("g_2", (1, 1.1560, 1.0178, 0.2146), 66.1753, (0.1698, 0.9025, 1.1115), 0.7038, 1),
            ("g_3", (1, 1.0970, 0.7703, 1.2969), 66.9855, (0.4527, 1.0347, 1.3018), 0.7173, 1),
            ("g_4", (1, 0.7633, 1.0090, 0.1910), 65.7898, (0.2157, 0.6048, 1.5116), 0.8030, 2),
        ),
    },
    "FS5": {
        "E8_SU5xSU4xU1": (
            ("g_0", (1, 2, 3, 4, 5), 572 / 15 * 2 ** (25 / 52) * 3 ** (5 / 26) * 5 ** (1 / 26),
             (0.483308, 0.807779, 1.002382, 1.156529), F(11, 30), 0),
            ("g_1", (1, 0.599785, 1.08371, 0.901823, 1.22291), 68.8905,
             (0.510214, 1.027352, 1.238460, 1.655126), 0.757540, 1),
            ("g_2", (1, 1.02137, 0.546007, 1.05352, 1.10879), 68.7023,
             (0.444857, 1.112644, 1.251940, 1.598781), 0.731014, 1),
            ("g_3", (1, 1.08294, 1.04088, 0.532615, 1.10351), 68.7757,
             (0.387659, 0.850534, 1.094764, 1.233562), 0.678788, 1),
            ("g_4", (1, 0.720713, 1.02546, 0.475234, 1.07095), 68.6913,
             (0.458617, 0.613228, 1.437954, 1.612703), 0.773963, 2),
            ("g_5", (1, 1.03732, 1.04718, 1.03082, 0.29862), 68.4798,
             (0.240674, 0.791323, 1.169060, 1.320873), 0.674542, 1),
        ),
    },
    "FS6": {
        "E8_SU5xSU3xSU2xU1": (
            ("g_0", (1, 2, 3, 4, 5, 6), 159 / 5 * 2 ** (65 / 106) * 3 ** (25 / 106) * 5 ** (5 / 53),
             (0.373056, 0.616209, 0.784713, 0.907323, 1.025363), F(3, 10), 0),
            ("g_1", (1, 0.823084, 1.1467, 1.17377, 1.42664, 1.46519), 68.6856,
             (0.560023, 0.753518, 0.990611, 1.177858, 1.218291), 0.627866, 1),
            ("g_2", (1, 0.986536, 0.636844, 1.06853, 1.13323, 0.921127), 68.4684,
             (0.499591, 0.995988, 1.060532, 1.188804, 1.256011), 0.697205, 1),
            ("g_3", (1, 0.90422, 0.778283, 0.927483, 1.03408, 0.359949), 68.2283,
             (0.371562, 0.622626, 0.981804, 1.317906, 1.460064), 0.735036, 2),
            ("g_4", (1, 0.954875, 0.965321, 1.00534, 0.290091, 1.01965), 67.8054,
             (0.262279, 0.832143, 1.186281, 1.385267, 1.473554), 0.698590, 1),
        ),
    },
}


def _flag_rows(out: _Rows, slug: str, space: SpaceDescriptor, rows) -> None:
    for label, x, scn, lams, rho, coindex in rows:
        tag = f"{slug} {label}"
        exact_seed = all(isinstance(v, int) for v in x)
        if exact_seed:
            g = DiagonalMetric(tuple(F(v) for v in x))
            residual = einstein_residual(space, g)
            sol = EinsteinSolution(label, g, two_rho(space, g), residual, Source.GIVEN, space=space) \
                if residual <= 1e-10 else None
        else:
            sol = polish_metric(space, x)
        if sol is None:
            out.add(f"{tag} Einstein", 1, None, EXACT, PUB)
            continue
        for idx in range(1, len(x)):
            tol = EXACT if exact_seed else FOUR_DIGITS
            out.add(f"{tag} x{idx + 1}", F(x[idx]) if exact_seed else x[idx], sol.metric.x[idx], tol, PUB)
        tt = tt_spectrum(space, build_matrix(space, sol.metric))
        for n, want in enumerate(lams):
            tol = EXACT if is_exact(want) and exact_seed else (SURD if exact_seed and len(lams) <= 3 else FOUR_DIGITS)
            out.eigen(f"{tag} lambda_{n + 1}", space, sol.metric, want, tt[n] if n < len(tt) else math.nan, tol, PUB)
        out.add(f"{tag} 2rho", rho, sol.two_rho, EXACT if is_exact(rho) and exact_seed else FOUR_DIGITS, PUB)
        out.add(f"{tag} Sc_N", scn, scalar_curvature_normalized(space, sol.metric),
                CLOSED_FORM if exact_seed else FOUR_DIGITS, DER if exact_seed else PUB)
        v = verdict_from_spectrum(tt, sol.two_rho, space.trivial_dim)
        kind = Kind.G_STABLE if coindex == 0 else Kind.SADDLE
        out.verdict(f"{tag} type", kind, coindex, v, PUB)


def reproduce_flag(table_id: str, descriptor_dir: str | os.PathLike | None) -> TableReport:
    """Flag manifolds with ``b_2 = 1``; the constants come from ``<descriptor_dir>/<slug>.json``."""
    spaces = FLAG_TABLES[table_id]
    if descriptor_dir is None:
        note = (f"{table_id} needs structural constants that are not bundled; pass --descriptor-dir "
                f"with one descriptor file per space: " + ", ".join(f"{s}.json" for s in spaces))
        return TableReport(table_id, (), (note,), complete=False)
    out = _Rows()
    complete = True
    for slug, rows in spaces.items():
        path = os.path.join(os.fspath(descriptor_dir), f"{slug}.json")
        if not os.path.exists(path):
            out.notes.append(f"missing descriptor {path}; rows for {slug} skipped")
            complete = False
            continue
        try:
            space = load_descriptor(path)
        except DescriptorError as exc:
            out.notes.append(f"bad descriptor {path}: {exc}")
            complete = False
            continue
        _flag_rows(out, slug, space, rows)
    return TableReport(table_id, tuple(out.rows), tuple(out.notes), complete)


REPRODUCERS: dict[str, Callable[[], TableReport]] = {
    "W2": reproduce_w2,
    "W2Sc": reproduce_w2sc,
    "W3": reproduce_w3,
    "W3Sc": reproduce_w3sc,
    "W4": reproduce_w4,
    "W4_2": reproduce_w4_2,
    "W5": reproduce_w5,
}


def reproduce(table_id: str, descriptor_dir=None) -> TableReport:
    if table_id in REPRODUCERS:
        return REPRODUCERS[table_id]()
    if table_id in FLAG_TABLES:
        return reproduce_flag(table_id, descriptor_dir)
    raise KeyError(f"unknown table {table_id!r}; choose from {', '.join(TABLE_IDS + GATED_IDS)}")
