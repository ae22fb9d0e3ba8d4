"""Exact scalar and polynomial arithmetic plus a deterministic Hermitian eigensolver.

Scalar tower: Rational (= fractions.Fraction) -> GaussianRational (a + bi)
-> RadicalScalar (finite sums sum_d c_d * sqrt(d) with squarefree d and
GaussianRational c_d). Polynomials are sparse bivariate over Rational with
the third coordinate eliminated via x3 = -x1 - x2.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class AlgebraError(Exception):
    pass


class NotDivisible(AlgebraError):
    """Exact polynomial division failed; signals a transcription error upstream."""


class NonConvergence(AlgebraError):
    """Jacobi eigensolver exceeded its sweep cap."""


Rational = Fraction


def rat(p, q=1):
    return Fraction(p, q)


def squarefree_decompose(n):
    """Return (g, d) with n = g*g*d and d squarefree, for positive integer n."""
    if n <= 0:
        raise ValueError("squarefree_decompose needs a positive integer")
    g, d, f = 1, 1, 2
    m = n
    while f * f <= m:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            g *= f ** (e // 2)
            if e % 2:
                d *= f
        f += 1 if f == 2 else 2
    d *= m
    return g, d


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        other = _as_gaussian(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gaussian(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_gaussian(other) - self

    def __mul__(self, other):
        other = _as_gaussian(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gaussian(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return self * GaussianRational(other.re / n, -other.im / n)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        other = _as_gaussian(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def to_complex(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _as_gaussian(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")


class RadicalScalar:
    """Finite sum over squarefree positive d of GaussianRational * sqrt(d)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for d, c in terms.items():
                c = _as_gaussian(c)
                if not c.is_zero():
                    self.terms[d] = self.terms.get(d, GaussianRational()) + c
            self.terms = {d: c for d, c in self.terms.items() if not c.is_zero()}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def from_rational(cls, r):
        return cls({1: GaussianRational(r, 0)})

    @classmethod
    def from_gaussian(cls, g):
        return cls({1: _as_gaussian(g)})

    @classmethod
    def radical(cls, d, coeff=1):
        """coeff * sqrt(d) with d reduced to squarefree form."""
        g, d0 = squarefree_decompose(d)
        return cls({d0: _as_gaussian(coeff) * Fraction(g)})

    def __add__(self, other):
        other = _as_radical(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, GaussianRational()) + c
        return RadicalScalar(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_radical(other))

    def __rsub__(self, other):
        return _as_radical(other) - self

    def __neg__(self):
        return RadicalScalar({d: -c for d, c in self.terms.items()})

    def __mul__(self, other):
        other = _as_radical(other)
        out = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                g, d = squarefree_decompose(d1 * d2)
                c = c1 * c2 * Fraction(g)
                out[d] = out.get(d, GaussianRational()) + c
        return RadicalScalar(out)

    __rmul__ = __mul__

    def div_radical(self, coeff, d=1):
        """Divide by the monomial radical coeff * sqrt(d)."""
        coeff = _as_gaussian(coeff)
        if coeff.is_zero():
            raise ZeroDivisionError("division by zero radical")
        g, d0 = squarefree_decompose(d)
        inv = RadicalScalar({d0: (GaussianRational(1) / coeff) * Fraction(1, g * d0)})
        return self * inv

    def conjugate(self):
        return RadicalScalar({d: c.conjugate() for d, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def is_rational(self):
        return all(d == 1 and c.im == 0 for d, c in self.terms.items())

    def as_rational(self):
        if self.is_zero():
            return Fraction(0)
        if not self.is_rational():
            raise AlgebraError(f"not a rational value: {self!r}")
        return self.terms[1].re

    def __eq__(self, other):
        other = _as_radical(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted((d, c.re, c.im) for d, c in self.terms.items())))

    def to_complex(self):
        return sum(
            (c.to_complex() * float(d) ** 0.5 for d, c in self.terms.items()),
            0.0 + 0.0j,
        )

    def to_float(self):
        z = self.to_complex()
        if abs(z.imag) > 1e-12 * max(1.0, abs(z.real)):
            raise AlgebraError("value has a nonzero imaginary part")
        return z.real

    def to_triples(self):
        return [
            (d, str(c.re), str(c.im))
            for d, c in sorted(self.terms.items())
        ]

    def __repr__(self):
        if not self.terms:
            return "RadicalScalar(0)"
        parts = [f"({c.re}+{c.im}i)sqrt({d})" for d, c in sorted(self.terms.items())]
        return "RadicalScalar(" + " + ".join(parts) + ")"


def _as_radical(x):
    if isinstance(x, RadicalScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return RadicalScalar.from_rational(x)
    if isinstance(x, GaussianRational):
        return RadicalScalar.from_gaussian(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to RadicalScalar")


def radical_mul(a, b):
    return _as_radical(a) * _as_radical(b)


class MultiPoly:
    """Sparse exact polynomial in (x1, x2) over Rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for m, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[m] = self.coeffs.get(m, Fraction(0)) + c
            self.coeffs = {m: c for m, c in self.coeffs.items() if c}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def linear(cls, c1, c2):
        """c1*x1 + c2*x2"""
        return cls({(1, 0): Fraction(c1), (0, 1): Fraction(c2)})

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c0 = Fraction(other)
            return MultiPoly({m: c * c0 for m, c in self.coeffs.items()})
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other, cap=None):
        """Product, optionally truncated to total degree <= cap."""
        other = _as_poly(other)
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if cap is not None and i + j > cap:
                    continue
                m = (i, j)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return MultiPoly(out)

    def pow(self, n, cap=None):
        out = MultiPoly.constant(1)
        for _ in range(n):
            out = out.mul(self, cap=cap)
        return out

    def truncate(self, cap):
        return MultiPoly({m: c for m, c in self.coeffs.items() if m[0] + m[1] <= cap})

    def homogeneous_component(self, deg):
        return MultiPoly({m: c for m, c in self.coeffs.items() if m[0] + m[1] == deg})

    def degree(self):
        if not self.coeffs:
            return -1
        return max(i + j for i, j in self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def is_homogeneous(self, deg):
        return all(i + j == deg for i, j in self.coeffs)

    def constant_term(self):
        return self.coeffs.get((0, 0), Fraction(0))

    def evaluate(self, x1, x2):
        x1, x2 = Fraction(x1), Fraction(x2)
        return sum((c * x1 ** i * x2 ** j for (i, j), c in self.coeffs.items()),
                   Fraction(0))

    def __eq__(self, other):
        return (self - _as_poly(other)).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "MultiPoly(0)"
        parts = [f"{c}*x1^{i}*x2^{j}" for (i, j), c in sorted(self.coeffs.items())]
        return "MultiPoly(" + " + ".join(parts) + ")"


def _as_poly(x):
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultiPoly.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to MultiPoly")


def poly_substitute_linear(p, m):
    """Exact composition p(Mx) for a 2x2 rational matrix m = ((a,b),(c,d)):
    x1 -> a*x1 + b*x2, x2 -> c*x1 + d*x2."""
    (a, b), (c, d) = m
    y1 = MultiPoly.linear(a, b)
    y2 = MultiPoly.linear(c, d)
    deg = p.degree()
    if deg < 0:
        return MultiPoly.zero()
    pow1 = [MultiPoly.constant(1)]
    pow2 = [MultiPoly.constant(1)]
    for _ in range(deg):
        pow1.append(pow1[-1] * y1)
        pow2.append(pow2[-1] * y2)
    out = MultiPoly.zero()
    for (i, j), coef in p.coeffs.items():
        out = out + pow1[i] * pow2[j] * coef
    return out


def _lex_leading(p):
    m = max(p.coeffs)
    return m, p.coeffs[m]


def poly_divide_exact(n, d):
    """Return q with n = q * d exactly, else raise NotDivisible.

    Single-divisor lex reduction: if n is genuinely divisible this always
    terminates with zero remainder, because lex leading monomials are
    multiplicative.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    q = MultiPoly.zero()
    r = n
    md, cd = _lex_leading(d)
    while not r.is_zero():
        mr, cr = _lex_leading(r)
        if mr[0] < md[0] or mr[1] < md[1]:
            raise NotDivisible(f"leading monomial {mr} not divisible by {md}")
        t = MultiPoly({(mr[0] - md[0], mr[1] - md[1]): cr / cd})
        q = q + t
        r = r - t * d
    return q


def hermitian_eigenvalues(m, tol=1e-14, max_sweeps=100):
    """Real spectrum (ascending, with multiplicity) of a Hermitian matrix.

    Deterministic cyclic complex Jacobi sweeps. Raises NonConvergence if the
    off-diagonal mass does not drop below tol * ||m||_F within max_sweeps.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return []
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return [0.0] * n
    offdiag_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = float(np.sqrt(np.sum(np.abs(a[offdiag_mask]) ** 2)))
        if off <= tol * scale:
            vals = np.real(np.diag(a))
            return sorted(float(v) for v in vals)
        thresh = off / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                bmag = abs(apq)
                if bmag <= 0.01 * tol * scale or bmag < 1e-3 * thresh:
                    continue
                phase = apq / bmag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * bmag)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # unitary [[c, s*phase], [-s*conj(phase), c]] on the (p, q) plane
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * np.conj(phase) * colq
                a[:, q] = s * phase * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * phase * rowq
                a[q, :] = s * np.conj(phase) * rowp + c * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    raise NonConvergence(f"Jacobi did not converge within {max_sweeps} sweeps")
