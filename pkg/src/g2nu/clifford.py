"""Spinor model S = Lambda* C^3, Clifford multiplications, the spin lifts of
the adjoint action, the operator family B^{lambda,mu} on S (x) S, their
spectra, the eta/h values for the trivial representation, the spectral-flow
terms, and the Casimir gap certificate.

Basis of S: (1, f1, f2, f3, f12, f13, f23, f123), degrees (0,1,1,1,2,2,2,3).
Convention: all Clifford generators are anti-Hermitian with c_i^2 = -1:
c_{1,2,3} = i(eps_i + iota_i), c_{5,6,7} = eps_i - iota_i,
c_4 = i(-1)^deg. The volume element c1 c5 c2 c6 c3 c7 c4 acts as +id.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import (
    GaussianRational,
    RadicalScalar,
    hermitian_eigenvalues,
)
from .liealg import build_basis, structure_constants

DEFAULT_KERNEL_TOL = 1e-8
GAP_BAND = 1e-4

_BASIS_INDEX = {
    (): 0, (1,): 1, (2,): 2, (3,): 3,
    (1, 2): 4, (1, 3): 5, (2, 3): 6, (1, 2, 3): 7,
}
DEGREES = (0, 1, 1, 1, 2, 2, 2, 3)


class MismatchError(Exception):
    pass


class AmbiguousKernel(Exception):
    pass


class CertificateFailed(Exception):
    pass


@dataclass
class EtaResult:
    eta: int
    h: int
    spectrum: list


@dataclass
class GapReport:
    casimir: list
    min_offset: Fraction
    b0_max_abs: float
    certificate_ok: bool


def _zero8():
    z = RadicalScalar.zero()
    return [[z for _ in range(8)] for _ in range(8)]


def _mat8_mul(x, y):
    out = _zero8()
    for i in range(8):
        for t in range(8):
            xit = x[i][t]
            if xit.is_zero():
                continue
            for j in range(8):
                if not y[t][j].is_zero():
                    out[i][j] = out[i][j] + xit * y[t][j]
    return out


def _mat8_add(x, y):
    return [[a + b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def _mat8_scale(x, c):
    return [[a * c for a in row] for row in x]


def mat8_equal(x, y):
    return all((a - b).is_zero() for rx, ry in zip(x, y) for a, b in zip(rx, ry))


def mat8_conj_transpose(x):
    return [[x[j][i].conjugate() for j in range(8)] for i in range(8)]


def mat8_to_numpy(x):
    return np.array([[a.to_complex() for a in row] for row in x])


def _wedge(i):
    """Matrix of the wedge operator eps_i on the ordered basis."""
    e = _zero8()
    one = RadicalScalar.from_rational(1)
    for tup, a in _BASIS_INDEX.items():
        if i in tup:
            continue
        new = tuple(sorted(tup + (i,)))
        sign = (-1) ** sum(1 for t in tup if t < i)
        e[_BASIS_INDEX[new]][a] = one * sign
    return e


def _transpose(x):
    return [[x[j][i] for j in range(8)] for i in range(8)]


def clifford_generators():
    """Dict i -> 8x8 exact matrix of c_i, i in 1..7."""
    i_unit = RadicalScalar.from_gaussian(GaussianRational(0, 1))
    gens = {}
    for a in (1, 2, 3):
        eps = _wedge(a)
        iota = _transpose(eps)
        gens[a] = _mat8_scale(_mat8_add(eps, iota), i_unit)
        gens[a + 4] = _mat8_add(eps, _mat8_scale(iota, RadicalScalar.from_rational(-1)))
    c4 = _zero8()
    for a, deg in enumerate(DEGREES):
        c4[a][a] = i_unit * ((-1) ** deg)
    gens[4] = c4
    return gens


def spin_ad(p, basis=None, gens=None):
    """Formula-driven spin lifts: dict a -> (1/4) sum_{i,j} <[e_a,e_i],e_j> c_i c_j
    for a in 1..8."""
    if gens is None:
        gens = clifford_generators()
    consts = structure_constants(p, basis=basis)
    quarter = Fraction(1, 4)
    out = {}
    prod_cache = {}
    for a in range(1, 9):
        m = _zero8()
        for (aa, i, j), coef in consts.items():
            if aa != a:
                continue
            key = (i, j)
            if key not in prod_cache:
                prod_cache[key] = _mat8_mul(gens[i], gens[j])
            m = _mat8_add(m, _mat8_scale(prod_cache[key], coef * quarter))
        out[a] = m
    return out


def spin_ad_displayed(p, gens=None):
    """Transcription of the displayed closed forms for the seven spin lifts,
    with the scale r read as s = sqrt(6q)."""
    if gens is None:
        gens = clifford_generators()
    k, l, q = p.k, p.l, p.q
    sqrt2 = RadicalScalar.radical(2)
    inv_s = RadicalScalar.radical(6 * q, Fraction(1, 6 * q))
    six_s = inv_s * 6

    def cc(i, j):
        return _mat8_mul(gens[i], gens[j])

    quarter = Fraction(1, 4)
    terms = {
        1: [(-1 * sqrt2, 2, 3), (sqrt2, 6, 7), (-(k + l) * six_s, 4, 5)],
        2: [(sqrt2, 1, 3), (-1 * sqrt2, 5, 7), (k * six_s, 4, 6)],
        3: [(-1 * sqrt2, 1, 2), (sqrt2, 5, 6), (l * six_s, 4, 7)],
        4: [((k + l) * six_s, 1, 5), (-k * six_s, 2, 6), (-l * six_s, 3, 7)],
        5: [(sqrt2, 2, 7), (-1 * sqrt2, 3, 6), (-(k + l) * six_s, 1, 4)],
        6: [(-1 * sqrt2, 1, 7), (sqrt2, 3, 5), (k * six_s, 2, 4)],
        7: [(sqrt2, 1, 6), (-1 * sqrt2, 2, 5), (l * six_s, 3, 4)],
    }
    out = {}
    for a, lst in terms.items():
        m = _zero8()
        for coef, i, j in lst:
            m = _mat8_add(m, _mat8_scale(cc(i, j), coef))
        out[a] = _mat8_scale(m, RadicalScalar.from_rational(quarter))
    return out


def spin_ad_checked(p):
    """Formula-driven spin lifts, verified entry-by-entry against the
    transcribed closed forms. Raises MismatchError with an entry diff."""
    gens = clifford_generators()
    computed = spin_ad(p, gens=gens)
    displayed = spin_ad_displayed(p, gens=gens)
    diffs = []
    for a in range(1, 8):
        for i in range(8):
            for j in range(8):
                d = computed[a][i][j] - displayed[a][i][j]
                if not d.is_zero():
                    diffs.append((a, i, j, repr(d)))
    if diffs:
        raise MismatchError(f"spin lift transcription mismatch: {diffs[:10]}")
    return computed


def spin_weights(p):
    """Eigenvalue multiset of the spin lift of the unnormalized circle
    generator i*diag(k, l, -k-l), as integers c (eigenvalues i*c)."""
    ad = spin_ad(p)
    m = mat8_to_numpy(ad[8]) * np.sqrt(2 * p.q)
    vals = np.linalg.eigvals(m)
    if np.max(np.abs(vals.real)) > 1e-9:
        raise MismatchError("spin lift of the circle generator is not anti-Hermitian")
    return sorted(int(round(v)) for v in vals.imag)


def build_B(lam, mu, p, spin=None, gens=None):
    """Exact 64x64 matrix of sum_i c_i (lam ad~_i (x) 1 + mu 1 (x) ad~_i)
    on S (x) S, as a sparse dict (row, col) -> RadicalScalar."""
    if gens is None:
        gens = clifford_generators()
    if spin is None:
        spin = spin_ad(p, gens=gens)
    lam, mu = Fraction(lam), Fraction(mu)
    out = {}

    def _acc(r, c, v):
        if (r, c) in out:
            out[(r, c)] = out[(r, c)] + v
        else:
            out[(r, c)] = v

    for i in range(1, 8):
        ci = gens[i]
        adi = spin[i]
        if lam:
            ca = _mat8_mul(ci, adi)
            for r in range(8):
                for c in range(8):
                    v = ca[r][c]
                    if v.is_zero():
                        continue
                    v = v * lam
                    for t in range(8):
                        _acc(8 * r + t, 8 * c + t, v)
        if mu:
            for r1 in range(8):
                for c1 in range(8):
                    v1 = ci[r1][c1]
                    if v1.is_zero():
                        continue
                    for r2 in range(8):
                        for c2 in range(8):
                            v2 = adi[r2][c2]
                            if v2.is_zero():
                                continue
                            _acc(8 * r1 + r2, 8 * c1 + c2, v1 * v2 * mu)
    return {k: v for k, v in out.items() if not v.is_zero()}


def big_to_numpy(op):
    m = np.zeros((64, 64), dtype=complex)
    for (r, c), v in op.items():
        m[r, c] = v.to_complex()
    return m


def is_hermitian_exact(op):
    for (r, c), v in op.items():
        w = op.get((c, r), RadicalScalar.zero())
        if not (v - w.conjugate()).is_zero():
            return False
    return True


def spectrum_dump(op, result):
    """JSON-serializable audit record of an operator: ascending spectrum,
    eta, h, and the nonzero exact entries as [row, col, [(d, re, im), ...]]."""
    return {
        "spectrum": list(result.spectrum),
        "eta": result.eta,
        "h": result.h,
        "matrix": [
            [r, c, v.to_triples()]
            for (r, c), v in sorted(op.items())
            if not v.is_zero()
        ],
    }


def kernel_tolerance():
    return float(os.environ.get("G2NU_EIG_TOL", DEFAULT_KERNEL_TOL))


def eta_h(op, tol=None):
    """Signed eigenvalue count and certified kernel dimension of a Hermitian
    operator (sparse exact dict or dense numpy array)."""
    if tol is None:
        tol = kernel_tolerance()
    if isinstance(op, dict):
        m = big_to_numpy(op)
    else:
        m = np.asarray(op, dtype=complex)
    spec = hermitian_eigenvalues(m)
    band = [v for v in spec if tol < abs(v) < GAP_BAND]
    if band:
        raise AmbiguousKernel(
            f"eigenvalues {band} inside the ({tol}, {GAP_BAND}) band"
        )
    eta = sum(1 for v in spec if v > tol) - sum(1 for v in spec if v < -tol)
    h = sum(1 for v in spec if abs(v) <= tol)
    return EtaResult(eta=eta, h=h, spectrum=spec)


@dataclass
class OperatorSuite:
    reductive: EtaResult       # B^{1/3,0}
    levi_civita: EtaResult     # B^{1/2,1/2}
    b0: EtaResult
    b0_max_abs: float


def operator_suite(p):
    """Spectra and eta/h of the three distinguished operators, sharing one
    exact construction of the Clifford generators and spin lifts."""
    gens = clifford_generators()
    spin = spin_ad(p, gens=gens)
    red = eta_h(build_B(Fraction(1, 3), 0, p, spin=spin, gens=gens))
    lc = eta_h(build_B(Fraction(1, 2), Fraction(1, 2), p, spin=spin, gens=gens))
    b0 = eta_h(build_B(Fraction(1, 3), 1, p, spin=spin, gens=gens))
    b0_max = max(abs(b0.spectrum[0]), abs(b0.spectrum[-1]))
    return OperatorSuite(reductive=red, levi_civita=lc, b0=b0, b0_max_abs=b0_max)


def b0_spectrum(p):
    """Spectrum of B0 = sum_i c_i ((1/3) ad~_i (x) 1 + 1 (x) ad~_i)."""
    op = build_B(Fraction(1, 3), 1, p)
    return eta_h(op)


def reductive_eta(p):
    return eta_h(build_B(Fraction(1, 3), 0, p))


def levi_civita_eta(p):
    return eta_h(build_B(Fraction(1, 2), Fraction(1, 2), p))


def casimir_values(p):
    """The four exact Casimir values of the circle on the even-form
    representation; all are <= 2."""
    k, l, q = p.k, p.l, p.q
    return [
        Fraction(0),
        Fraction((k - l) ** 2, 2 * q),
        Fraction((2 * k + l) ** 2, 2 * q),
        Fraction((2 * l + k) ** 2, 2 * q),
    ]


def weyl_norm_sq(pq):
    pp, qq = pq
    return Fraction(2, 3) * (pp * pp + qq * qq + pp * qq) + 2 * (pp + qq) + 2


def min_nontrivial_offset(search=4):
    """min over (p,q) != (0,0) of ||gamma_{(p,q)} + rho||^2 - ||rho||^2; the
    expression is monotone in p and q so a small enumeration is exhaustive."""
    best = None
    for pp in range(search + 1):
        for qq in range(search + 1):
            if (pp, qq) == (0, 0):
                continue
            v = weyl_norm_sq((pp, qq)) - 2
            if best is None or v < best:
                best = v
    return best


def gap_certificate(p, b0_max=None):
    """Certify min nontrivial Casimir-shifted norm >= (max|eig B0| / 2)^2, so
    only the trivial representation can contribute spectral flow."""
    cas = casimir_values(p)
    if any(c > 2 for c in cas):
        raise CertificateFailed(f"a Casimir value exceeds 2: {cas}")
    if b0_max is None:
        spec = b0_spectrum(p).spectrum
        b0_max = max(abs(spec[0]), abs(spec[-1]))
    offset = min_nontrivial_offset()
    ok = float(offset) >= (b0_max / 2.0) ** 2 - 1e-6
    report = GapReport(
        casimir=cas, min_offset=offset, b0_max_abs=b0_max, certificate_ok=ok
    )
    if not ok:
        raise CertificateFailed(f"gap certificate failed: {report}")
    return report


def spectral_flow_terms(p, suite=None):
    """(J_D, J_B). J_D = 0 identically (the reductive Dirac operator has
    trivial kernel and equal eta). J_B is the trivial-representation
    difference eta(B^{1/2,1/2}) - (eta+h)(B^{1/3,0}), justified by the gap
    certificate."""
    if suite is None:
        suite = operator_suite(p)
    gap_certificate(p, b0_max=suite.b0_max_abs)
    j_b = suite.levi_civita.eta - (suite.reductive.eta + suite.reductive.h)
    return 0, j_b
