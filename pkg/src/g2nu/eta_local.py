"""Local index terms I_D and I_B via degree-4 Taylor extraction, weight
lifting, and exact Weyl-antisymmetrized polynomial division.

The limit X -> 0 of the analytic expressions is evaluated by two exact
polynomial divisions; both must leave zero remainder, which machine-certifies
the cancellation of the fourth-order singularity. `weyl_limit` returns the
antisymmetrized constant

    c = [ sum_w sign(w) * I~(wX) / delta(wX) ] / (beta1*beta2*beta3)(X),

and the I-terms are c * WEYL_PREFACTOR. The prefactor 1/3 bundles the
2/|W| Weyl-averaging factor with the orientation of the circle-orthogonal
Cartan direction; it is the unique normalization under which the combination
-24*I_D + 3*I_B evaluates to 1 for every valid (k, l), matching the direct
high-precision numeric limit of the analytic integrand (see tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import MultiPoly, NotDivisible, poly_divide_exact, poly_substitute_linear
from .liealg import (
    AWParams,
    Weight,
    eval_on_E,
    m_coeff,
    restrict_to_s,
    roots_and_delta,
    s_weight_form,
    weight_poly,
    weyl_elements,
    weyl_matrix,
)

A2 = Fraction(-1, 24)       # z^2 coefficient of (z/2)/sinh(z/2)
A4 = Fraction(7, 5760)      # z^4 coefficient
WEYL_PREFACTOR = Fraction(1, 3)

_FACTORIALS = [1, 1, 2, 6, 24]


class NoLift(Exception):
    pass


class InconsistentIntegrand(Exception):
    pass


@dataclass(frozen=True)
class LiftedWeight:
    kappa: int          # the s-weight is i*kappa
    alpha: Weight       # lift to the full Cartan dual
    shift: int          # alpha = base + shift * delta


@dataclass
class WeylLimitDiagnostics:
    numerator_homogeneous: bool = False
    division_by_delta_product_exact: bool = False
    division_by_root_product_exact: bool = False


@dataclass
class LocalIndexResult:
    I_D: Fraction
    I_B: Fraction
    combo: Fraction
    lifts: list
    low_degrees_vanish: bool
    dirac_diag: WeylLimitDiagnostics = field(default_factory=WeylLimitDiagnostics)
    signature_diag: WeylLimitDiagnostics = field(default_factory=WeylLimitDiagnostics)


def ahat_truncated(arg, degree=4):
    """1 + A2*arg^2 + A4*arg^4, truncated at total degree `degree`."""
    out = MultiPoly.constant(1)
    sq = arg.mul(arg, cap=degree)
    out = out + sq * A2
    out = out + sq.mul(sq, cap=degree) * A4
    return out.truncate(degree)


def exp_truncated(arg, degree=4):
    """exp(arg) truncated at total degree `degree` for a linear form arg."""
    out = MultiPoly.constant(1)
    powr = MultiPoly.constant(1)
    for n in range(1, degree + 1):
        powr = powr.mul(arg, cap=degree)
        out = out + powr * Fraction(1, _FACTORIALS[n])
    return out


def pi_hat_weights(p):
    """The eight s-weights i*c of the even-form representation: two zeros and
    the three plane weights with both signs."""
    k, l = p.k, p.l
    return [0, 0, k - l, -(k - l), 2 * l + k, -(2 * l + k), 2 * k + l, -(2 * k + l)]


def lift_weight(c, p):
    """Lift the s-weight i*c to the unique Cartan weight alpha with
    alpha|_s = kappa and 0 <= -i*alpha(E) < -i*delta(E)."""
    beta1, beta2, beta3, _, delta = roots_and_delta(p)
    candidates = [
        Weight(Fraction(0), Fraction(0)),
        beta1, -beta1, beta2, -beta2, beta3, -beta3,
    ]
    base = None
    for cand in candidates:
        if m_coeff(cand, p) == c:
            base = cand
            break
    if base is None:
        raise NoLift(f"no root restricts to the s-weight {c}i for {p}")
    dE = eval_on_E(delta, p)
    bE = eval_on_E(base, p)
    shift = -math.floor(bE / dE)
    alpha = base + delta.scale(shift)
    aE = eval_on_E(alpha, p)
    if not (0 <= aE < dE):
        raise NoLift(f"window violated for s-weight {c}i: got {aE} not in [0, {dE})")
    return LiftedWeight(kappa=c, alpha=alpha, shift=shift)


def _root_data(p):
    beta1, beta2, beta3, _, delta = roots_and_delta(p)
    bpolys = [weight_poly(b) for b in (beta1, beta2, beta3)]
    rpolys = [restrict_to_s(b, p) for b in (beta1, beta2, beta3)]
    dpoly = weight_poly(delta)
    return bpolys, rpolys, dpoly


def _base_integrand(p, kappas, variant="appendix"):
    """Degree <= 4 truncation of the summed integrand at the identity Weyl
    element. `kappas` lists the s-weights i*c to include (with their lifts);
    the Dirac term is the single entry [0] read with lift 0."""
    bpolys, rpolys, dpoly = _root_data(p)
    ahat_roots = MultiPoly.constant(1)
    for b in bpolys:
        ahat_roots = ahat_roots.mul(ahat_truncated(b), cap=4)
    ahat_restr = MultiPoly.constant(1)
    for r in rpolys:
        ahat_restr = ahat_restr.mul(ahat_truncated(r), cap=4)
    if variant == "appendix":
        full = ahat_roots.mul(ahat_truncated(dpoly), cap=4)
        expo_sign = 1           # exponent -(alpha - delta/2)
    elif variant == "direct":
        full = ahat_roots
        expo_sign = -1          # exponent -(alpha + delta/2)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    half_delta = dpoly * Fraction(1, 2)
    total = MultiPoly.zero()
    for c in kappas:
        alpha = lift_weight(c, p).alpha
        lin = weight_poly(alpha) - half_delta * expo_sign
        unrestricted = full.mul(exp_truncated(-lin), cap=4)
        restricted = ahat_restr.mul(exp_truncated(-s_weight_form(c, p)), cap=4)
        total = total + unrestricted - restricted
    return total


def local_integrand_dirac(p, g, variant="appendix"):
    base = _base_integrand(p, [0], variant=variant)
    return poly_substitute_linear(base, weyl_matrix(g))


def local_integrand_signature(p, g, variant="appendix"):
    base = _base_integrand(p, pi_hat_weights(p), variant=variant)
    return poly_substitute_linear(base, weyl_matrix(g))


def antisymmetrized_components_vanish(base, max_degree=3):
    """True iff the homogeneous components of degree 0..max_degree of `base`
    antisymmetrize to zero over the Weyl group."""
    for deg in range(max_degree + 1):
        comp = base.homogeneous_component(deg)
        acc = MultiPoly.zero()
        for g in weyl_elements():
            acc = acc + poly_substitute_linear(comp, weyl_matrix(g)) * g.sign
        if not acc.is_zero():
            return False
    return True


def weyl_limit(integrand_family, p, diagnostics=None):
    """Antisymmetrized limit constant of a degree-4 homogeneous family.

    `integrand_family` maps a WeylElement to the degree-4 polynomial I~(gX).
    Computes N = sum_g sign(g) I~(gX) prod_{g' != g} delta(g'X) and
    D = prod_g delta(gX); both divisions N/D and (N/D)/prod(beta) must be
    exact, certifying the cancellation of the singularity.
    """
    if diagnostics is None:
        diagnostics = WeylLimitDiagnostics()
    _, _, dpoly = _root_data(p)
    elements = weyl_elements()
    deltas = {g: poly_substitute_linear(dpoly, weyl_matrix(g)) for g in elements}
    numerator = MultiPoly.zero()
    for g in elements:
        term = integrand_family(g) * g.sign
        for gp in elements:
            if gp is g:
                continue
            term = term * deltas[gp]
        numerator = numerator + term
    if numerator.is_zero():
        diagnostics.numerator_homogeneous = True
        diagnostics.division_by_delta_product_exact = True
        diagnostics.division_by_root_product_exact = True
        return Fraction(0)
    if not numerator.is_homogeneous(9):
        raise InconsistentIntegrand(
            "antisymmetrized numerator is not homogeneous of degree 9"
        )
    diagnostics.numerator_homogeneous = True
    denominator = MultiPoly.constant(1)
    for g in elements:
        denominator = denominator * deltas[g]
    quotient = poly_divide_exact(numerator, denominator)
    diagnostics.division_by_delta_product_exact = True
    bpolys, _, _ = _root_data(p)
    root_product = bpolys[0] * bpolys[1] * bpolys[2]
    constant = poly_divide_exact(quotient, root_product)
    diagnostics.division_by_root_product_exact = True
    if constant.degree() > 0:
        raise InconsistentIntegrand("limit quotient is not a constant")
    return constant.constant_term()


def compute_I_terms(p, variant="appendix"):
    """Exact I_D, I_B, and the combination -24*I_D + 3*I_B."""
    dirac_base = _base_integrand(p, [0], variant=variant)
    sig_base = _base_integrand(p, pi_hat_weights(p), variant=variant)
    low_ok = antisymmetrized_components_vanish(
        dirac_base
    ) and antisymmetrized_components_vanish(sig_base)
    dirac4 = dirac_base.homogeneous_component(4)
    sig4 = sig_base.homogeneous_component(4)
    dirac_diag = WeylLimitDiagnostics()
    sig_diag = WeylLimitDiagnostics()
    c_d = weyl_limit(
        lambda g: poly_substitute_linear(dirac4, weyl_matrix(g)), p, dirac_diag
    )
    c_b = weyl_limit(
        lambda g: poly_substitute_linear(sig4, weyl_matrix(g)), p, sig_diag
    )
    i_d = c_d * WEYL_PREFACTOR
    i_b = c_b * WEYL_PREFACTOR
    lifts = [lift_weight(c, p) for c in pi_hat_weights(p)]
    return LocalIndexResult(
        I_D=i_d,
        I_B=i_b,
        combo=-24 * i_d + 3 * i_b,
        lifts=lifts,
        low_degrees_vanish=low_ok,
        dirac_diag=dirac_diag,
        signature_diag=sig_diag,
    )


def check_u_equals_2v(p):
    """U = sum beta_i^4 - sum restricted beta_i^4 and V the analogous pair-sum
    of squares; returns True iff U - 2V = 0 exactly."""
    bpolys, rpolys, _ = _root_data(p)
    b2 = [b * b for b in bpolys]
    r2 = [r * r for r in rpolys]
    u = b2[0] * b2[0] + b2[1] * b2[1] + b2[2] * b2[2] \
        - (r2[0] * r2[0] + r2[1] * r2[1] + r2[2] * r2[2])
    v = b2[0] * b2[1] + b2[1] * b2[2] + b2[2] * b2[0] \
        - (r2[0] * r2[1] + r2[1] * r2[2] + r2[2] * r2[0])
    return (u - v * 2).is_zero()


def unrestricted_quartic_sum(p):
    """sum beta_i^4 without the restricted part (used by coefficient checks)."""
    bpolys, _, _ = _root_data(p)
    b2 = [b * b for b in bpolys]
    return b2[0] * b2[0] + b2[1] * b2[1] + b2[2] * b2[2]
