"""Small dense linear algebra: cyclic Jacobi, hyperplane bases, exact determinants."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

MAX_ORDER = 64


class NotSymmetricError(ValueError):
    pass


def as_float_matrix(matrix) -> np.ndarray:
    return np.array([[float(v) for v in row] for row in matrix], dtype=float)


def check_symmetric(a: np.ndarray, tol: float = 1e-12) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    if a.size and float(np.max(np.abs(a - a.T))) > tol * scale:
        raise NotSymmetricError("matrix is not symmetric")


def jacobi_eigh(matrix, rel_tol: float = 1e-13, max_sweeps: int = 100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm drops below
    ``rel_tol * ||A||_F``. Returns ascending eigenvalues and the matching
    orthonormal eigenvectors as columns.
    """
    a = as_float_matrix(matrix) if not isinstance(matrix, np.ndarray) else matrix.astype(float).copy()
    check_symmetric(a)
    n = a.shape[0]
    if n > MAX_ORDER:
        raise ValueError(f"order {n} exceeds {MAX_ORDER}")
    v = np.eye(n)
    if n <= 1:
        return np.diag(a).copy(), v
    norm = float(np.linalg.norm(a))
    target = rel_tol * norm
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= target or norm == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                h = a[q, q] - a[p, p]
                if abs(h) + 100.0 * abs(apq) == abs(h):
                    t = apq / h  # tiny angle; avoids overflow in theta**2
                else:
                    theta = h / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def jacobi_eigenvalues(matrix, rel_tol: float = 1e-13) -> list[float]:
    return [float(w) for w in jacobi_eigh(matrix, rel_tol)[0]]


def hyperplane_basis(normal) -> np.ndarray:
    """Orthonormal basis (columns) of the complement of ``normal``.

    The Householder reflection ``H`` mapping ``e_1`` to ``normal/|normal|``
    is orthogonal and symmetric, so its columns 2..r span the complement.
    """
    u = np.asarray(normal, dtype=float)
    u = u / np.linalg.norm(u)
    r = u.size
    e1 = np.zeros(r)
    e1[0] = 1.0
    w = e1 - u if u[0] <= 0 else e1 + u
    if np.linalg.norm(w) < 1e-15:
        return np.eye(r)[:, 1:]
    w /= np.linalg.norm(w)
    h = np.eye(r) - 2.0 * np.outer(w, w)
    return h[:, 1:]


def bareiss_det(matrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    n = len(rows)
    if n == 0:
        return Fraction(1)
    # clear denominators so elimination runs over the integers
    common = math.lcm(*(v.denominator for row in rows for v in row))
    m = [[int(v * common) for v in row] for row in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], common ** n)
