"""Catalog of homogeneous spaces with known structural constants.

Generalized Wallach spaces (three summands, only ``[123]`` nonzero) with
``G`` simple and ``Q = -Killing`` so every ``b_k = 1``; flag manifolds with
two summands; and the full flag manifolds ``SU(n)/T``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction as F
from itertools import combinations

from .space import SpaceDescriptor, StructureConstants


class CatalogError(ValueError):
    pass


def _from_a(name: str, a, bracket, notes: str = "") -> SpaceDescriptor:
    dims = []
    for k, ak in enumerate(a):
        d = F(bracket) / F(ak)
        if d.denominator != 1 or d <= 0:
            raise AssertionError(f"{name}: d_{k + 1} = [123]/a_{k + 1} = {d} is not a positive integer")
        dims.append(int(d))
    return SpaceDescriptor(
        name=name,
        dims=tuple(dims),
        killing=(F(1),) * 3,
        constants=StructureConstants(3, {(1, 2, 3): F(bracket)}),
        notes=notes,
    )


def generalized_wallach(a1, a2, a3, name: str | None = None) -> SpaceDescriptor:
    """Smallest integral three-summand descriptor with the given ``a_k``.

    Curvature and the Lichnerowicz matrix of a generalized Wallach space
    depend only on ``a_k = [123]/d_k``, so any common scale works; this picks
    ``[123] = lcm`` of the numerators.
    """
    a = [F(a1), F(a2), F(a3)]
    if any(v <= 0 for v in a):
        raise CatalogError("a_k must be positive")
    bracket = math.lcm(*(v.numerator for v in a))
    name = name or f"GW(a={','.join(map(str, a))})"
    return _from_a(name, a, bracket)


def wallach_descriptor(family: str, *params: int) -> SpaceDescriptor:
    """Infinite families W1-W5; W6-W15 are forwarded to the exceptional table."""
    family = family.upper()
    if family in EXCEPTIONAL:
        if params:
            raise CatalogError(f"{family} takes no parameters")
        return exceptional_wallach_descriptor(family)
    if family in ("W1", "W2", "W3"):
        if len(params) != 3 or any(p < 1 for p in params):
            raise CatalogError(f"{family} needs three positive integers (k, l, m)")
        k, l, m = params
        s = k + l + m
        if family == "W1":
            if list(params).count(2) >= 2:
                raise CatalogError("W1 excludes (k, 2, 2) and its permutations")
            a, br = [F(p, 2 * (s - 2)) for p in params], F(k * l * m, 2 * (s - 2))
            label = f"SO({s})/SO({k})xSO({l})xSO({m})"
        elif family == "W2":
            a, br = [F(p, 2 * s) for p in params], F(k * l * m, s)
            label = f"SU({s})/S(U({k})xU({l})xU({m}))"
        else:
            a, br = [F(p, 2 * (s + 1)) for p in params], F(2 * k * l * m, s + 1)
            label = f"Sp({s})/Sp({k})xSp({l})xSp({m})"
        return _from_a(f"{family}:{k},{l},{m}", a, br, label)
    if family == "W4":
        if len(params) != 1 or params[0] < 2:
            raise CatalogError("W4 needs l >= 2")
        (l,) = params
        # dims (l^2-1, l(l+1), l(l-1)); a_1 = 1/4 matches the SU(2l)/U(l) quartic.
        a = [F(1, 4), F(l - 1, 4 * l), F(l + 1, 4 * l)]
        return _from_a(f"W4:l={l}", a, F(l * l - 1, 4), f"SU({2 * l})/U({l})")
    if family == "W5":
        if len(params) != 1 or params[0] < 4:
            raise CatalogError("W5 needs l >= 4")
        (l,) = params
        a = [F(l - 2, 4 * (l - 1)), F(l - 2, 4 * (l - 1)), F(1, 2 * (l - 1))]
        return _from_a(f"W5:l={l}", a, F(l - 2, 2), f"SO({2 * l})/U(1)xU({l - 1})")
    raise CatalogError(f"unknown Wallach family {family!r}")


# name -> (a_1, a_2, a_3, [123], quotient)
EXCEPTIONAL = {
    "W6": (F(1, 4), F(1, 4), F(1, 6), F(4), "E6/SU(4)xSp(1)xSp(1)xR"),
    "W7": (F(1, 6), F(1, 6), F(1, 6), F(8, 3), "E6/SO(8)xR^2"),
    "W8": (F(1, 4), F(1, 8), F(7, 24), F(7, 2), "E6/Sp(3)xSp(1)"),
    "W9": (F(2, 9), F(2, 9), F(2, 9), F(64, 9), "E7/SO(8)x3Sp(1)"),
    "W10": (F(2, 9), F(1, 6), F(5, 18), F(20, 3), "E7/SU(6)xSp(1)xR"),
    "W11": (F(5, 18), F(5, 18), F(5, 18), F(175, 18), "E7/SO(8)"),
    "W12": (F(1, 5), F(1, 5), F(4, 15), F(64, 5), "E8/SO(12)x2Sp(1)"),
    "W13": (F(4, 15), F(4, 15), F(4, 15), F(256, 15), "E8/SO(8)xSO(8)"),
    "W14": (F(5, 18), F(5, 18), F(1, 9), F(20, 9), "F4/SO(5)x2Sp(1)"),
    "W15": (F(1, 9), F(1, 9), F(1, 9), F(8, 9), "F4/SO(8)"),
}


def exceptional_wallach_descriptor(name: str) -> SpaceDescriptor:
    name = name.upper()
    if name not in EXCEPTIONAL:
        raise CatalogError(f"unknown exceptional Wallach space {name!r}")
    *a, br, label = EXCEPTIONAL[name]
    return _from_a(name, a, br, label)


def flag_r2_descriptor(d1: int, d2: int) -> SpaceDescriptor:
    """Two-summand flag manifold; only ``[112] = d1 d2 / (d1 + 4 d2)``."""
    if d1 < 1 or d2 < 1:
        raise CatalogError("dimensions must be positive")
    return SpaceDescriptor(
        name=f"flag_r2:{d1},{d2}",
        dims=(d1, d2),
        killing=(F(1), F(1)),
        constants=StructureConstants(2, {(1, 1, 2): F(d1 * d2, d1 + 4 * d2)}),
    )


def sun_pairs(n: int) -> list[tuple[int, int]]:
    """Summand labels of ``SU(n)/T`` in the order used by :func:`full_flag_sun_descriptor`."""
    return list(combinations(range(1, n + 1), 2))


def full_flag_sun_descriptor(n: int) -> SpaceDescriptor:
    """``SU(n)/T``: one 2-dimensional summand per pair, ``[efg] = 1/n`` on triangles."""
    if n < 3:
        raise CatalogError("SU(n)/T needs n >= 3")
    pairs = sun_pairs(n)
    index = {p: k + 1 for k, p in enumerate(pairs)}
    entries = {}
    for a, b, c in combinations(range(1, n + 1), 3):
        entries[(index[(a, b)], index[(a, c)], index[(b, c)])] = F(1, n)
    r = len(pairs)
    return SpaceDescriptor(
        name=f"full_flag_sun:{n}",
        dims=(2,) * r,
        killing=(F(1),) * r,
        constants=StructureConstants(r, entries),
        notes=f"SU({n})/T",
    )


FAMILIES = {
    "W1": "SO(k+l+m)/SO(k)xSO(l)xSO(m), params k,l,m",
    "W2": "SU(k+l+m)/S(U(k)xU(l)xU(m)), params k,l,m",
    "W3": "Sp(k+l+m)/Sp(k)xSp(l)xSp(m), params k,l,m",
    "W4": "SU(2l)/U(l), param l>=2",
    "W5": "SO(2l)/U(1)xU(l-1), param l>=4",
    **{name: row[-1] for name, row in EXCEPTIONAL.items()},
    "flag_r2": "two-summand flag manifold, params d1,d2",
    "full_flag_sun": "SU(n)/T, param n>=3",
}

_DEFAULT_PARAMS = {
    "W1": "3,3,3", "W2": "1,1,1", "W3": "1,1,1", "W4": "l=2", "W5": "l=4",
    "flag_r2": "4,1", "full_flag_sun": "4",
}


def parse_space(spec: str) -> SpaceDescriptor:
    """Resolve ``W11``, ``W2:1,2,3``, ``W5:l=5``, ``flag_r2:4,1``,
    ``full_flag_sun:5`` or a descriptor file path."""
    name, _, arg = spec.partition(":")
    family = {k.upper(): k for k in FAMILIES}.get(name.upper())
    if family is None:
        if spec.endswith(".json"):
            from .space import load_descriptor
            return load_descriptor(spec)
        raise CatalogError(f"unknown space {spec!r}")
    if not arg and family not in EXCEPTIONAL:
        arg = _DEFAULT_PARAMS[family]
    nums = [int(v) for v in re.findall(r"-?\d+", arg)]
    if family in EXCEPTIONAL:
        if arg:
            raise CatalogError(f"{family} takes no parameters")
        return exceptional_wallach_descriptor(family)
    if family == "flag_r2":
        if len(nums) != 2:
            raise CatalogError("flag_r2 needs d1,d2")
        return flag_r2_descriptor(*nums)
    if family == "full_flag_sun":
        if len(nums) != 1:
            raise CatalogError("full_flag_sun needs n")
        return full_flag_sun_descriptor(nums[0])
    return wallach_descriptor(family, *nums)


def stiefel_reduced_matrix(k: int) -> tuple[tuple[float, ...], ...]:
    """Reduced Lichnerowicz matrix of ``SO(k+2)/SO(k)`` at its Einstein metric
    ``(1, 1, 2k/(k+1))``, on the ``Ad(SO(k) x SO(2))``-invariant diagonal tensors.

    Dims are ``(k, k, 1)`` and ``2 rho = k/(k+1)``; enter it through
    :func:`einstab.lichnerowicz.classify_from_matrix`.
    """
    if k < 3:
        raise CatalogError("the reduced matrix needs k >= 3")
    diag = F(k + 1, 2 * k * k)
    off = F(k * k - 2 * k - 1, 2 * k * k * (k + 1))
    s = -math.sqrt(k) / (k + 1)
    last = F(2 * k, k + 1)
    return ((float(diag), float(off), s), (float(off), float(diag), s), (s, s, float(last)))
