"""Command-line interface.

Commands:
  compute    full pipeline for one (k, l): exact I-terms, gap certificate,
             spectral-flow terms, nu-bar invariants, consistency checks
  sweep      CSV of compute reports over all canonical pairs up to bounds
  spectrum   spectra and (eta, h) of the three distinguished operators
  forms      coclosedness / nearly-parallel residuals of given parameters
  find-np    numeric search for a nearly-parallel structure
  curvature  exact scalar curvature of a diagonal metric
  refs       reference values of the invariant

Exit codes: 0 ok; 2 invalid input; 3 internal inconsistency (an exactness
certificate or cross-check failed). The env var G2NU_EIG_TOL overrides the
default 1e-8 kernel threshold.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from . import clifford, eta_local, g2forms
from .algebra import NotDivisible, NonConvergence
from .clifford import AmbiguousKernel, CertificateFailed
from .eta_local import InconsistentIntegrand, NoLift
from .liealg import InvalidParams, normalize_params

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_INCONSISTENT = 3

REFERENCE_TABLE = [
    {"space": "squashed S^7", "nu_bar": 1},
    {"space": "Aloff-Wallach N_{k,l} (magnitude)", "nu_bar": 41},
    {"space": "Berger SO(5)/SO(3)", "nu_bar": 1},
]

CSV_COLUMNS = [
    "k", "l", "q", "epsilon", "I_D", "I_B", "J_D", "J_B",
    "nu_plus", "nu_minus", "checks_passed",
]


class InternalInconsistency(Exception):
    pass


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _coclosed_check(p) -> bool:
    """Spot check of the coclosedness characterization at fixed parameters."""
    on = g2forms.coclosed_residual(
        g2forms.G2Params(1.1, 0.9, -1.2, 0.8, 0.0), p
    )
    off = g2forms.coclosed_residual(
        g2forms.G2Params(1.1, 0.9, -1.2, 0.8, 0.3), p
    )
    return on < 1e-12 and off > 1e-3


def compute_report(k: int, l: int) -> dict:
    """Full pipeline for one parameter pair; raises InternalInconsistency if
    any exactness certificate or cross-check fails."""
    p, orientation = normalize_params(k, l)
    local = eta_local.compute_I_terms(p)
    if not (
        local.low_degrees_vanish
        and local.dirac_diag.division_by_root_product_exact
        and local.signature_diag.division_by_root_product_exact
    ):
        raise InternalInconsistency("exactness certificates failed")
    suite = clifford.operator_suite(p)
    gap = clifford.gap_certificate(p, b0_max=suite.b0_max_abs)
    j_d, j_b = clifford.spectral_flow_terms(p, suite=suite)

    checks = {
        "combo_equals_one": local.combo == 1,
        "u_equals_2v": eta_local.check_u_equals_2v(p),
        "b0_max_eig_ok": abs(suite.b0_max_abs - 2 * math.sqrt(2)) < 1e-9,
        "eta_values_ok": (
            (suite.reductive.eta, suite.reductive.h) == (16, 0)
            and (suite.levi_civita.eta, suite.levi_civita.h) == (2, 2)
        ),
        "gap_ok": gap.certificate_ok,
        "coclosed_characterization_ok": _coclosed_check(p),
    }
    if not all(checks.values()):
        raise InternalInconsistency(f"consistency checks failed: {checks}")

    nu = -24 * local.I_D + 3 * local.I_B - 24 * j_d + 3 * j_b
    if nu.denominator != 1:
        raise InternalInconsistency(f"nu-bar is not an integer: {nu}")
    nu_plus = int(nu)
    nu_minus = -nu_plus
    if orientation < 0:
        nu_plus, nu_minus = nu_minus, nu_plus
    return {
        "k": p.k,
        "l": p.l,
        "q": p.q,
        "epsilon": p.epsilon,
        "I_D": _frac_str(local.I_D),
        "I_B": _frac_str(local.I_B),
        "J_D": j_d,
        "J_B": j_b,
        "nu_bar_plus": nu_plus,
        "nu_bar_minus": nu_minus,
        "checks": checks,
        "H4_order": 2 * p.q,
    }


def _canonical_pairs(k_max, l_max=None):
    out = []
    for k in range(2, k_max + 1):
        top = min(k - 1, l_max) if l_max is not None else k - 1
        for l in range(1, top + 1):
            if math.gcd(k, l) == 1:
                out.append((k, l))
    return out


def cmd_compute(args):
    report = compute_report(args.k, args.l)
    print(json.dumps(report, indent=None if args.json else 2, sort_keys=False))
    return EXIT_OK


def cmd_sweep(args):
    if args.k_max < 2:
        raise InvalidParams("--k-max must be >= 2")
    pairs = _canonical_pairs(args.k_max, args.l_max)
    try:
        handle = open(args.out, "w", newline="")
    except OSError as exc:
        raise InvalidParams(f"cannot write {args.out}: {exc}") from exc
    with handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for k, l in pairs:
            r = compute_report(k, l)
            writer.writerow([
                r["k"], r["l"], r["q"], r["epsilon"], r["I_D"], r["I_B"],
                r["J_D"], r["J_B"], r["nu_bar_plus"], r["nu_bar_minus"],
                all(r["checks"].values()),
            ])
    print(f"wrote {len(pairs)} rows to {args.out}")
    return EXIT_OK


def cmd_spectrum(args):
    p, _ = normalize_params(args.k, args.l)
    suite = clifford.operator_suite(p)
    j_d, j_b = clifford.spectral_flow_terms(p, suite=suite)
    out = {
        "k": p.k,
        "l": p.l,
        "reductive": {
            "eta": suite.reductive.eta,
            "h": suite.reductive.h,
            "spectrum": [round(v, 12) for v in suite.reductive.spectrum],
        },
        "levi_civita": {
            "eta": suite.levi_civita.eta,
            "h": suite.levi_civita.h,
            "spectrum": [round(v, 12) for v in suite.levi_civita.spectrum],
        },
        "b0": {
            "max_abs_eigenvalue": round(suite.b0_max_abs, 12),
            "spectrum": [round(v, 12) for v in suite.b0.spectrum],
        },
        "J_D": j_d,
        "J_B": j_b,
    }
    print(json.dumps(out))
    return EXIT_OK


def _parse_floats(text, n, what):
    parts = text.split(",")
    if len(parts) != n:
        raise InvalidParams(f"{what} needs {n} comma-separated values")
    try:
        return [float(x) for x in parts]
    except ValueError as exc:
        raise InvalidParams(f"bad {what}: {exc}") from exc


def cmd_forms(args):
    p, _ = normalize_params(args.k, args.l)
    a, b, c, d, x = _parse_floats(args.params, 5, "--params")
    try:
        gp = g2forms.G2Params(a, b, c, d, x)
        gp.validate()
        coc = g2forms.coclosed_residual(gp, p)
        lam, res = g2forms.nearly_parallel_residual(gp, p)
    except (ValueError, g2forms.DegenerateForm) as exc:
        raise InvalidParams(str(exc)) from exc
    out = {
        "k": p.k, "l": p.l,
        "pa": a, "pb": b, "pc": c, "pd": d, "px": x,
        "coclosed_residual": coc,
        "lambda_star": lam,
        "nearly_parallel_residual": res,
    }
    print(json.dumps(out))
    return EXIT_OK


def cmd_find_np(args):
    p, _ = normalize_params(args.k, args.l)
    sign_d = 1 if args.sign_d == "+" else -1
    sol = g2forms.find_nearly_parallel(p, sign_d)
    print(json.dumps(sol.to_dict(p)))
    return EXIT_OK


def cmd_curvature(args):
    p, _ = normalize_params(args.k, args.l)
    lam = args.lam.split(",")
    if len(lam) != 3:
        raise InvalidParams("--lambda needs 3 comma-separated values")
    try:
        lam = [Fraction(x) for x in lam]
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParams(f"bad --lambda: {exc}") from exc
    try:
        s = g2forms.park_scalar(p, lam)
    except ValueError as exc:
        raise InvalidParams(str(exc)) from exc
    out = {
        "k": p.k, "l": p.l,
        "lambda": [_frac_str(x) for x in lam],
        "scalar_curvature": _frac_str(s),
    }
    print(json.dumps(out))
    return EXIT_OK


def cmd_refs(args):
    print(json.dumps({"nu_bar_reference_values": REFERENCE_TABLE}))
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="g2nu",
        description=(
            "Exact computation of the nu-bar invariant of homogeneous "
            "nearly-parallel G2-structures on Aloff-Wallach spaces"
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def _kl(sp):
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--l", type=int, required=True)

    sp = sub.add_parser("compute", help="full invariant pipeline for one pair")
    _kl(sp)
    sp.add_argument("--json", action="store_true", help="compact one-line JSON")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("sweep", help="CSV over all canonical pairs")
    sp.add_argument("--k-max", type=int, required=True)
    sp.add_argument("--l-max", type=int, default=None)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("spectrum", help="operator spectra and eta invariants")
    _kl(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("forms", help="residuals of a parameter choice")
    _kl(sp)
    sp.add_argument("--params", required=True, metavar="a,b,c,d,x")
    sp.set_defaults(func=cmd_forms)

    sp = sub.add_parser("find-np", help="search for a nearly-parallel structure")
    _kl(sp)
    sp.add_argument("--sign-d", choices=["+", "-"], required=True)
    sp.set_defaults(func=cmd_find_np)

    sp = sub.add_parser("curvature", help="exact scalar curvature")
    _kl(sp)
    sp.add_argument("--lambda", dest="lam", required=True, metavar="a,b,c")
    sp.set_defaults(func=cmd_curvature)

    sp = sub.add_parser("refs", help="reference invariant values")
    sp.set_defaults(func=cmd_refs)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InvalidParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except g2forms.NotFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (
        InternalInconsistency,
        NotDivisible,
        NonConvergence,
        InconsistentIntegrand,
        NoLift,
        AmbiguousKernel,
        CertificateFailed,
    ) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
