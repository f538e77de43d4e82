"""Exact univariate polynomials over the rationals and Sturm root isolation.

Coefficients are stored lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = tuple[Fraction, ...]


def normalize(p: Sequence) -> Poly:
    coeffs = [Fraction(c) for c in p]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(p: Poly) -> int:
    return len(p) - 1


def evaluate(p: Sequence, x):
    acc = 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return normalize([k * c for k, c in enumerate(p)][1:])


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(normalize(a))
    quot = [Fraction(0)] * max(len(rem) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b) and rem:
        factor = rem[-1] / lead
        shift = len(rem) - len(b)
        quot[shift] = factor
        for k, c in enumerate(b):
            rem[shift + k] -= factor * c
        rem = list(normalize(rem))
    return normalize(quot), tuple(rem)


def remainder(a: Poly, b: Poly) -> Poly:
    return divmod_poly(a, b)[1]


def gcd(a: Sequence, b: Sequence) -> Poly:
    """Monic greatest common divisor."""
    a, b = normalize(a), normalize(b)
    while b:
        a, b = b, remainder(a, b)
    return tuple(c / a[-1] for c in a) if a else a


def square_free(p: Sequence) -> Poly:
    """``p / gcd(p, p')``: same distinct roots, all simple."""
    p = normalize(p)
    if len(p) <= 2:
        return p
    return divmod_poly(p, gcd(p, derivative(p)))[0]


def sturm_chain(p: Sequence) -> list[Poly]:
    """Sturm sequence of the square-free part, so that repeated roots and
    roots at the interval ends are counted correctly."""
    p = square_free(p)
    chain = [p, derivative(p)]
    while chain[-1]:
        chain.append(tuple(-c for c in remainder(chain[-2], chain[-1])))
    return chain[:-1]


def sign_changes(chain: Sequence[Poly], x: Fraction) -> int:
    signs = [s for s in (evaluate(q, x) for q in chain) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def _changes_at_infinity(chain: Sequence[Poly]) -> int:
    signs = [q[-1] for q in chain if q]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def count_roots(p: Sequence, lo: Fraction, hi: Fraction | None = None) -> int:
    """Distinct real roots in ``(lo, hi]``; ``hi=None`` means ``+inf``."""
    chain = sturm_chain(p)
    top = _changes_at_infinity(chain) if hi is None else sign_changes(chain, Fraction(hi))
    return sign_changes(chain, Fraction(lo)) - top


def cauchy_bound(p: Sequence) -> Fraction:
    p = normalize(p)
    lead = abs(p[-1])
    return 1 + max(abs(c) / lead for c in p[:-1])


def isolate_positive_roots(p: Sequence, width: Fraction = Fraction(1, 10**6)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]``, each holding exactly one positive root."""
    p = normalize(p)
    chain = sturm_chain(p)

    def count(lo, hi):
        return sign_changes(chain, lo) - sign_changes(chain, hi)

    out = []
    stack = [(Fraction(0), cauchy_bound(p))]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)
        if n == 0:
            continue
        if n == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.extend([(mid, hi), (lo, mid)])
    return sorted(out)


def polish_root(p: Sequence, lo: Fraction, hi: Fraction, tol: float = 1e-13, max_iter: int = 200) -> float:
    """Safeguarded Newton iteration for the single root in ``(lo, hi]``.

    Steps leaving the bracket fall back to bisection; the bracket shrinks
    on every step using the sign of the square-free part.
    """
    sf = square_free(p)
    if evaluate(sf, Fraction(hi)) == 0:
        return float(hi)
    pf = [float(c) for c in sf]
    dpf = [float(c) for c in derivative(sf)]
    a, b = float(lo), float(hi)
    fa = evaluate(pf, a)
    x = 0.5 * (a + b)
    for _ in range(max_iter):
        fx, dfx = evaluate(pf, x), evaluate(dpf, x)
        if fx == 0.0:
            return x
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b = x
        nxt = x - fx / dfx if dfx else 0.5 * (a + b)
        if not a < nxt < b:
            nxt = 0.5 * (a + b)
        if abs(nxt - x) <= tol * max(1.0, abs(x)) or b - a <= tol * max(1.0, abs(x)):
            return nxt
        x = nxt
    return x
