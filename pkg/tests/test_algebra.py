"""Exact scalar/polynomial arithmetic and the deterministic eigensolver."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2nu.algebra import (
    GaussianRational,
    MultiPoly,
    NonConvergence,
    NotDivisible,
    RadicalScalar,
    hermitian_eigenvalues,
    poly_divide_exact,
    poly_substitute_linear,
    squarefree_decompose,
)


# ---------- squarefree decomposition ----------

@pytest.mark.parametrize(
    "n,g,d",
    [(1, 1, 1), (2, 1, 2), (4, 2, 1), (12, 2, 3), (84, 2, 21), (5760, 24, 10)],
)
def test_squarefree_decompose(n, g, d):
    assert squarefree_decompose(n) == (g, d)
    assert g * g * d == n


@given(st.integers(min_value=1, max_value=10**6))
def test_squarefree_decompose_property(n):
    g, d = squarefree_decompose(n)
    assert g * g * d == n
    for f in range(2, int(math.isqrt(d)) + 1):
        assert d % (f * f) != 0


# ---------- radical scalars ----------

def test_radical_product_reduces():
    # sqrt(2) * sqrt(42) = 2 sqrt(21)
    prod = RadicalScalar.radical(2) * RadicalScalar.radical(42)
    assert prod == RadicalScalar.radical(21, 2)


def test_radical_square_is_rational():
    r = RadicalScalar.radical(6, Fraction(1, 3))
    sq = r * r
    assert sq.is_rational()
    assert sq.as_rational() == Fraction(2, 3)


def test_div_radical():
    one = RadicalScalar.from_rational(1)
    inv = one.div_radical(1, 14)          # 1 / sqrt(14)
    assert inv * RadicalScalar.radical(14) == one


def test_gaussian_arithmetic():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1, 0)
    z = GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    assert (z * z.conjugate()).im == 0
    assert z / z == GaussianRational(1, 0)


_gaussians = st.builds(
    GaussianRational,
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
)
_radicals = st.dictionaries(
    st.sampled_from([1, 2, 3, 5, 6, 7, 14]), _gaussians, max_size=3
).map(RadicalScalar)


@settings(max_examples=60, deadline=None)
@given(_radicals, _radicals, _radicals)
def test_radical_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a + (-a) == RadicalScalar.zero()


@settings(max_examples=60, deadline=None)
@given(_radicals, _radicals)
def test_radical_float_embedding(a, b):
    za, zb = a.to_complex(), b.to_complex()
    prod = (a * b).to_complex()
    assert abs(prod - za * zb) <= 1e-12 * (1 + abs(za * zb))
    assert abs((a + b).to_complex() - (za + zb)) <= 1e-12 * (1 + abs(za + zb))


def test_radical_conjugate_multiplicative():
    a = RadicalScalar({2: GaussianRational(1, 2), 1: GaussianRational(0, -3)})
    b = RadicalScalar({3: GaussianRational(Fraction(1, 2), 1)})
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


# ---------- polynomials ----------

def test_poly_basic():
    x1 = MultiPoly.linear(1, 0)
    x2 = MultiPoly.linear(0, 1)
    p = (x1 + x2) * (x1 - x2)
    assert p == x1 * x1 - x2 * x2
    assert p.is_homogeneous(2)
    assert p.evaluate(3, 2) == 5


def test_substitute_linear():
    x1 = MultiPoly.linear(1, 0)
    p = x1 * x1
    m = ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))  # swap x1, x2
    q = poly_substitute_linear(p, m)
    assert q == MultiPoly.linear(0, 1) * MultiPoly.linear(0, 1)


def test_divide_exact_roundtrip():
    x1 = MultiPoly.linear(1, 0)
    x2 = MultiPoly.linear(0, 1)
    d = x1 * x1 + 2 * x2
    q = x1 * x2 - MultiPoly.constant(Fraction(3, 7)) * x1
    n = q * d
    assert poly_divide_exact(n, d) == q


def test_divide_not_divisible():
    x1 = MultiPoly.linear(1, 0)
    x2 = MultiPoly.linear(0, 1)
    with pytest.raises(NotDivisible):
        poly_divide_exact(x1 * x1 + x2, x1 + x2)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.tuples(st.integers(0, 3), st.integers(0, 3)),
            st.fractions(min_value=-4, max_value=4, max_denominator=5),
        ),
        min_size=1,
        max_size=4,
    ),
    st.lists(
        st.tuples(
            st.tuples(st.integers(0, 3), st.integers(0, 3)),
            st.fractions(min_value=-4, max_value=4, max_denominator=5),
        ),
        min_size=1,
        max_size=4,
    ),
)
def test_divide_exact_property(qc, dc):
    q = MultiPoly(dict(qc))
    d = MultiPoly(dict(dc))
    if d.is_zero():
        return
    n = q * d
    if n.is_zero():
        return
    assert poly_divide_exact(n, d) == q


# ---------- Hermitian eigensolver ----------

def _random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


@pytest.mark.parametrize("n,seed", [(2, 0), (3, 1), (5, 2), (8, 3), (12, 4)])
def test_jacobi_matches_lapack(n, seed):
    m = _random_hermitian(n, seed)
    ours = hermitian_eigenvalues(m)
    ref = np.linalg.eigvalsh(m)
    assert np.allclose(ours, ref, atol=1e-10, rtol=1e-10)


def test_jacobi_diagonal_and_zero():
    assert hermitian_eigenvalues(np.diag([3.0, -1.0, 2.0])) == [-1.0, 2.0, 3.0]
    assert hermitian_eigenvalues(np.zeros((4, 4))) == [0.0] * 4


def test_jacobi_degenerate_spectrum():
    # repeated eigenvalues with an off-diagonal perturbation basis change
    rng = np.random.default_rng(9)
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    d = np.diag([2.0, 2.0, 2.0, -1.0, -1.0, 5.0])
    m = q @ d @ q.conj().T
    ours = hermitian_eigenvalues(m)
    assert np.allclose(ours, sorted([2.0, 2.0, 2.0, -1.0, -1.0, 5.0]), atol=1e-10)


def test_jacobi_nonconvergence_guard():
    m = _random_hermitian(6, 11)
    with pytest.raises(NonConvergence):
        hermitian_eigenvalues(m, max_sweeps=0)
