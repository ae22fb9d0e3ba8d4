"""Exact model of su(3), the circle embedding, the adapted basis, roots,
Weyl group, and the weight machinery used by the eta-invariant formulas.

Conventions: the metric is <X, Y> = -tr(XY). The Cartan subalgebra t consists
of i*diag(x1, x2, x3) with x1 + x2 + x3 = 0; weights are stored as rational
coefficient triples (n1, n2, n3) of L1, L2, L3 normalized to n3 = 0 using
L1 + L2 + L3 = 0. The circle direction s is spanned by i*diag(k, l, -k-l).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    GaussianRational,
    MultiPoly,
    RadicalScalar,
    poly_substitute_linear,
)


class InvalidParams(Exception):
    pass


@dataclass(frozen=True)
class AWParams:
    k: int
    l: int
    q: int
    epsilon: int


def validate_params(k, l):
    if not (isinstance(k, int) and isinstance(l, int)):
        raise InvalidParams("k and l must be integers")
    if k <= 0 or l <= 0:
        raise InvalidParams(f"need k, l > 0 in canonical form, got ({k}, {l})")
    if k == l:
        raise InvalidParams("k = l is excluded")
    if math.gcd(k, l) != 1:
        raise InvalidParams(f"k and l must be coprime, got ({k}, {l})")
    q = k * k + k * l + l * l
    epsilon = math.gcd(2 * k + l, 2 * l + k)
    if epsilon not in (1, 3):
        raise InvalidParams(f"unexpected epsilon {epsilon}")
    return AWParams(k=k, l=l, q=q, epsilon=epsilon)


def normalize_params(k, l):
    """Canonicalize (k, l) using permutations of the triple (k, l, -k-l) and a
    global sign flip. Returns (AWParams, orientation) where orientation is the
    permutation parity times the global sign. The canonical representative
    has k > l > 0."""
    if k > l > 0:
        return validate_params(k, l), 1
    if k == 0 or l == 0 or math.gcd(k, l) != 1:
        raise InvalidParams("k and l must be coprime")
    triple = (k, l, -k - l)
    if len({abs(t) for t in triple}) != 3 or 0 in triple:
        raise InvalidParams("triple (k, l, -k-l) must have distinct nonzero entries")
    candidates = []
    for perm in itertools.permutations(range(3)):
        sign = _perm_sign(perm)
        for g in (1, -1):
            kk = g * triple[perm[0]]
            ll = g * triple[perm[1]]
            if kk > ll > 0:
                candidates.append(((kk, ll), sign * g))
    candidates.sort()
    (kk, ll), orientation = candidates[0]
    return validate_params(kk, ll), orientation


def _perm_sign(perm):
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


def _r(x):
    return RadicalScalar.from_rational(x)


def _ir(x):
    return RadicalScalar.from_gaussian(GaussianRational(0, x))


def _mat(rows):
    return [[x if isinstance(x, RadicalScalar) else _r(x) for x in row] for row in rows]


def build_basis(p):
    """Basis e[1..8]: e1..e7 span m, e8 spans u(1)_{k,l}; orthonormal for -tr(XY).
    Index 0 is unused."""
    k, l, q = p.k, p.l, p.q
    h = RadicalScalar.radical(2, Fraction(1, 2))          # 1/sqrt(2)
    ih = _ir(1) * h                                       # i/sqrt(2)
    inv_s = RadicalScalar.radical(6 * q, Fraction(1, 6 * q))    # 1/sqrt(6q)
    inv_2q = RadicalScalar.radical(2 * q, Fraction(1, 2 * q))   # 1/sqrt(2q)
    z = _r(0)
    e = [None] * 9
    e[1] = _mat([[z, h, z], [-h, z, z], [z, z, z]])
    e[5] = _mat([[z, ih, z], [ih, z, z], [z, z, z]])
    e[2] = _mat([[z, z, z], [z, z, h], [z, -h, z]])
    e[6] = _mat([[z, z, z], [z, z, ih], [z, ih, z]])
    e[3] = _mat([[z, z, -h], [z, z, z], [h, z, z]])
    e[7] = _mat([[z, z, ih], [z, z, z], [ih, z, z]])
    idiag = _ir(1) * inv_s
    e[4] = _mat([
        [idiag * (2 * l + k), z, z],
        [z, idiag * (-2 * k - l), z],
        [z, z, idiag * (k - l)],
    ])
    jdiag = _ir(1) * inv_2q
    e[8] = _mat([
        [jdiag * k, z, z],
        [z, jdiag * l, z],
        [z, z, jdiag * (-k - l)],
    ])
    return e


def mat_mul(x, y):
    n = len(x)
    return [
        [sum((x[i][t] * y[t][j] for t in range(n)), RadicalScalar.zero())
         for j in range(n)]
        for i in range(n)
    ]


def mat_sub(x, y):
    return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def commutator(x, y):
    return mat_sub(mat_mul(x, y), mat_mul(y, x))


def trace(x):
    return sum((x[i][i] for i in range(len(x))), RadicalScalar.zero())


def inner(x, y):
    """<X, Y> = -tr(XY)"""
    return -trace(mat_mul(x, y))


def structure_constants(p, basis=None):
    """Dict (a, i, j) -> RadicalScalar with [e_a, e_i]_m = sum_j C[a,i,j] e_j,
    for a in 1..8 and i, j in 1..7. Zero entries are omitted."""
    e = basis if basis is not None else build_basis(p)
    out = {}
    for a in range(1, 9):
        for i in range(1, 8):
            br = commutator(e[a], e[i])
            for j in range(1, 8):
                c = inner(br, e[j])
                if not c.is_zero():
                    out[(a, i, j)] = c
    return out


@dataclass(frozen=True)
class Weight:
    """n1*L1 + n2*L2 + n3*L3 stored normalized with n3 = 0."""
    n1: Fraction
    n2: Fraction

    def __add__(self, other):
        return Weight(self.n1 + other.n1, self.n2 + other.n2)

    def __sub__(self, other):
        return Weight(self.n1 - other.n1, self.n2 - other.n2)

    def __neg__(self):
        return Weight(-self.n1, -self.n2)

    def scale(self, c):
        c = Fraction(c)
        return Weight(self.n1 * c, self.n2 * c)

    def is_zero(self):
        return self.n1 == 0 and self.n2 == 0


def weight(n1, n2, n3=0):
    n1, n2, n3 = Fraction(n1), Fraction(n2), Fraction(n3)
    return Weight(n1 - n3, n2 - n3)


ZERO_WEIGHT = weight(0, 0)


def weight_poly(w):
    """w evaluated on i*diag(x1, x2, -x1-x2), with the overall i dropped."""
    return MultiPoly.linear(w.n1, w.n2)


def roots_and_delta(p):
    """(beta1, beta2, beta3, rho_G, delta)"""
    beta1 = weight(1, -1, 0)
    beta2 = weight(0, 1, -1)
    beta3 = weight(1, 0, -1)
    rho = beta3
    k, l, eps = p.k, p.l, p.epsilon
    delta = weight(
        Fraction(-2 * l - k, eps), Fraction(2 * k + l, eps), Fraction(l - k, eps)
    )
    return beta1, beta2, beta3, rho, delta


def eval_on_E(w, p):
    """Rational r with -i*w(E) = r/s, where E is the positive unit Cartan
    direction orthogonal to s and s = sqrt(6q)."""
    k, l = p.k, p.l
    # dot with the zero-sum vector (-2l-k, 2k+l, l-k); n3 = 0 after normalization
    return w.n1 * (-2 * l - k) + w.n2 * (2 * k + l)


def m_coeff(w, p):
    """Rational m with w(X|_s) = m * (k*x1 + l*x2 + (k+l)*(x1+x2)) / (2q)."""
    return w.n1 * p.k + w.n2 * p.l


def restrict_to_s(w, p):
    """w(X|_s) as an exact rational linear form in (x1, x2)."""
    m = m_coeff(w, p)
    c = Fraction(m, 2 * p.q)
    return MultiPoly.linear(c * (2 * p.k + p.l), c * (p.k + 2 * p.l))


def s_weight_form(c, p):
    """Linear form of the s-weight i*c (eigenvalue i*c of ad(i*diag(k,l,-k-l)))
    evaluated on X|_s, with the overall i dropped."""
    cc = Fraction(c, 2 * p.q)
    return MultiPoly.linear(cc * (2 * p.k + p.l), cc * (p.k + 2 * p.l))


@dataclass(frozen=True)
class WeylElement:
    """Permutation sigma of {0,1,2} acting by x_i -> x_{sigma(i)}."""
    perm: tuple
    sign: int


def weyl_elements():
    out = []
    for perm in itertools.permutations(range(3)):
        out.append(WeylElement(perm=perm, sign=_perm_sign(perm)))
    return out


def weyl_matrix(g):
    """2x2 rational matrix of the substitution x_i -> x_{sigma(i)} after
    eliminating x3 = -x1 - x2."""
    rows = []
    for i in range(2):
        target = g.perm[i]
        if target == 0:
            rows.append((Fraction(1), Fraction(0)))
        elif target == 1:
            rows.append((Fraction(0), Fraction(1)))
        else:
            rows.append((Fraction(-1), Fraction(-1)))
    return tuple(rows)


def weyl_on_weight(w, g):
    """Weight whose linear form is weight_poly(w) composed with g."""
    coeffs = [w.n1, w.n2, Fraction(0)]
    new = [Fraction(0)] * 3
    for i in range(3):
        new[g.perm[i]] = coeffs[i]
    return weight(new[0], new[1], new[2])


def weyl_orbit(obj, g):
    """Apply the Weyl element g to a Weight or a polynomial (same type out)."""
    if isinstance(obj, Weight):
        return weyl_on_weight(obj, g)
    if isinstance(obj, MultiPoly):
        return poly_substitute_linear(obj, weyl_matrix(g))
    raise TypeError(f"cannot act on {type(obj).__name__}")


def structure_constants_json(p):
    """JSON-serializable dump of the nonzero structure constants for
    debugging: a sorted list of [a, i, j, value-string]."""
    sc = structure_constants(p)
    return [
        [a, i, j, repr(val)]
        for (a, i, j), val in sorted(sc.items())
    ]


def isotropy_weights(p):
    """Multiset of integers c: the isotropy representation on m decomposes into
    the fixed vector e4 and three planes with weights i*c under
    ad(i*diag(k, l, -k-l))."""
    k, l = p.k, p.l
    vals = [0, k - l, -(k - l), 2 * l + k, -(2 * l + k), 2 * k + l, -(2 * k + l)]
    return sorted(vals)
