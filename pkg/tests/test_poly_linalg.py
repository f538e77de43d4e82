from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from einstab import poly
from einstab.linalg import (
    MAX_ORDER, NotSymmetricError, bareiss_det, hyperplane_basis, jacobi_eigh, jacobi_eigenvalues,
)

int_roots = st.lists(st.integers(-20, 20), min_size=1, max_size=6)


def _from_roots(roots):
    p = (F(1),)
    for r in roots:
        p = poly.normalize([-r * p[0]] + [p[i - 1] - r * p[i] for i in range(1, len(p))] + [p[-1]])
    return p


@given(int_roots)
@settings(max_examples=150, deadline=None)
def test_sturm_counts_distinct_roots(roots):
    p = _from_roots(roots)
    assert poly.count_roots(p, F(-100)) == len(set(roots))
    assert poly.count_roots(p, F(0)) == len({r for r in roots if r > 0})
    assert poly.count_roots(p, F(-100), F(0)) == len({r for r in roots if r <= 0})


@given(int_roots)
@settings(max_examples=100, deadline=None)
def test_isolation_and_polish(roots):
    p = _from_roots(roots)
    brackets = poly.isolate_positive_roots(p)
    positive = sorted({r for r in roots if r > 0})
    assert len(brackets) == len(positive)
    for (lo, hi), r in zip(brackets, positive):
        assert lo < r <= hi
        assert poly.polish_root(p, lo, hi) == pytest.approx(r, abs=1e-9)


def test_irrational_roots():
    p = (F(-2), F(0), F(1))  # t^2 - 2
    [(lo, hi)] = poly.isolate_positive_roots(p)
    assert poly.polish_root(p, lo, hi) == pytest.approx(2 ** 0.5, rel=1e-14)


def test_remainder_and_derivative():
    assert poly.derivative((F(1), F(2), F(3))) == (F(2), F(6))
    assert poly.remainder((F(-1), F(0), F(1)), (F(-1), F(1))) == ()
    with pytest.raises(ZeroDivisionError):
        poly.remainder((F(1),), ())


symmetric = st.integers(1, 7).flatmap(lambda n: st.lists(
    st.floats(-10, 10, allow_nan=False), min_size=n * n, max_size=n * n).map(
        lambda v: (lambda a: (a + a.T) / 2)(np.array(v).reshape(n, n))))


@given(symmetric)
@settings(max_examples=150, deadline=None)
def test_jacobi_matches_lapack(a):
    w, v = jacobi_eigh(a)
    ref = np.linalg.eigvalsh(a)
    scale = max(1.0, float(np.linalg.norm(a)))
    assert np.allclose(w, ref, atol=1e-11 * scale)
    assert np.allclose(v.T @ v, np.eye(len(w)), atol=1e-10)
    assert np.allclose(a @ v, v * w, atol=1e-10 * scale)


def test_jacobi_handles_tiny_off_diagonal():
    a = np.array([[1.0, 1e-300], [1e-300, 2.0]])
    assert jacobi_eigenvalues(a) == pytest.approx([1.0, 2.0])


def test_jacobi_guards():
    with pytest.raises(NotSymmetricError):
        jacobi_eigh([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        jacobi_eigh(np.eye(MAX_ORDER + 1))


@given(st.lists(st.integers(1, 40), min_size=2, max_size=10))
@settings(max_examples=100, deadline=None)
def test_hyperplane_basis_is_orthonormal_complement(dims):
    n = np.sqrt(np.array(dims, dtype=float))
    b = hyperplane_basis(n)
    assert b.shape == (len(dims), len(dims) - 1)
    assert np.allclose(b.T @ b, np.eye(len(dims) - 1), atol=1e-12)
    assert np.allclose(n @ b, 0.0, atol=1e-12)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.integers(-9, 9), min_size=n * n, max_size=n * n)))
@settings(max_examples=100, deadline=None)
def test_bareiss_matches_float_determinant(entries):
    n = int(round(len(entries) ** 0.5))
    m = [[F(entries[i * n + j]) for j in range(n)] for i in range(n)]
    assert bareiss_det(m) == round(np.linalg.det(np.array(entries, dtype=float).reshape(n, n)))
