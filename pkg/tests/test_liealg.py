"""Exact su(3) model: basis, structure constants, weights, Weyl group."""

from fractions import Fraction

import pytest

from g2nu.algebra import MultiPoly, RadicalScalar
from g2nu.liealg import (
    InvalidParams,
    build_basis,
    commutator,
    eval_on_E,
    inner,
    isotropy_weights,
    m_coeff,
    normalize_params,
    restrict_to_s,
    roots_and_delta,
    structure_constants,
    structure_constants_json,
    validate_params,
    weight,
    weight_poly,
    weyl_elements,
    weyl_matrix,
    weyl_on_weight,
)
from g2nu.algebra import poly_substitute_linear

PAIRS_10 = [
    (2, 1), (3, 1), (4, 1), (5, 2), (5, 3),
    (7, 1), (7, 4), (8, 3), (10, 1), (12, 5),
]


def _rat(x):
    return RadicalScalar.from_rational(Fraction(x))


def _over_s(num, q):
    """num / sqrt(6q) as an exact RadicalScalar."""
    return RadicalScalar.radical(6 * q, Fraction(num, 6 * q))


# ---------- parameter validation ----------

def test_validate_params_examples():
    p = validate_params(2, 1)
    assert (p.k, p.l, p.q, p.epsilon) == (2, 1, 7, 1)
    p = validate_params(4, 1)
    assert (p.q, p.epsilon) == (21, 3)
    p = validate_params(5, 2)
    assert (p.q, p.epsilon) == (39, 3)


@pytest.mark.parametrize("k,l", [(2, 2), (4, 2), (0, 1), (-2, 1), (1, 1)])
def test_validate_params_rejects(k, l):
    with pytest.raises(InvalidParams):
        validate_params(k, l)


def test_normalize_params_identity():
    p, orient = normalize_params(2, 1)
    assert (p.k, p.l, orient) == (2, 1, 1)


def test_normalize_params_noncanonical():
    # any sign/permutation variant of the triple lands on the same canonical pair
    ref, _ = normalize_params(3, 1)
    for kl in [(-3, -1), (1, 3), (-1, -3), (3, -4), (-4, 3), (1, -4)]:
        p, orient = normalize_params(*kl)
        assert (p.k, p.l) == (ref.k, ref.l)
        assert orient in (1, -1)


# ---------- basis ----------

@pytest.mark.parametrize("k,l", PAIRS_10[:4])
def test_basis_orthonormal(k, l):
    p = validate_params(k, l)
    e = build_basis(p)
    for i in range(1, 9):
        for j in range(i, 9):
            expect = _rat(1 if i == j else 0)
            assert inner(e[i], e[j]) == expect


def test_e8_at_21():
    p = validate_params(2, 1)
    e = build_basis(p)
    # e8 = (i / sqrt(14)) diag(2, 1, -3)
    c = RadicalScalar.radical(14, Fraction(1, 14))
    i1 = RadicalScalar.from_gaussian
    from g2nu.algebra import GaussianRational
    iu = RadicalScalar.from_gaussian(GaussianRational(0, 1))
    for a, d in ((0, 2), (1, 1), (2, -3)):
        assert e[8][a][a] == iu * c * d


def test_traceless_antihermitian():
    p = validate_params(5, 3)
    e = build_basis(p)
    for a in range(1, 9):
        tr = e[a][0][0] + e[a][1][1] + e[a][2][2]
        assert tr.is_zero()
        for i in range(3):
            for j in range(3):
                assert e[a][i][j] == -(e[a][j][i].conjugate())


# ---------- structure constants: the displayed bracket table ----------

def _expected_table(p):
    k, l, q = p.k, p.l, p.q
    h = Fraction(1, 2)  # entries +-1/sqrt(2) are RadicalScalar.radical(2, 1/2)
    r2 = RadicalScalar.radical(2, Fraction(1, 2))
    return {
        (1, 2, 3): -r2,
        (1, 3, 2): r2,
        (1, 4, 5): -_over_s(3 * (k + l), q),
        (1, 5, 4): _over_s(3 * (k + l), q),
        (1, 6, 7): r2,
        (1, 7, 6): -r2,
        (2, 3, 1): -r2,
        (2, 4, 6): _over_s(3 * k, q),
        (2, 5, 7): -r2,
        (2, 6, 4): -_over_s(3 * k, q),
        (2, 7, 5): r2,
        (3, 4, 7): _over_s(3 * l, q),
        (3, 5, 6): r2,
        (3, 6, 5): -r2,
        (3, 7, 4): -_over_s(3 * l, q),
        (5, 4, 1): _over_s(3 * (k + l), q),
        (5, 6, 3): r2,
        (5, 7, 2): -r2,
        (6, 4, 2): -_over_s(3 * k, q),
        (6, 7, 1): r2,
        (7, 4, 3): -_over_s(3 * l, q),
    }


@pytest.mark.parametrize("k,l", PAIRS_10)
def test_bracket_table(k, l):
    p = validate_params(k, l)
    sc = structure_constants(p)
    for (i, j, a), val in _expected_table(p).items():
        got = sc.get((i, j, a), RadicalScalar.zero())
        assert got == val, f"[e{i}, e{j}] . e{a} mismatch at {(k, l)}"


def test_structure_constants_skew():
    p = validate_params(3, 1)
    sc = structure_constants(p)
    for a in range(1, 8):
        for i in range(1, 8):
            for j in range(1, 8):
                lhs = sc.get((a, i, j), RadicalScalar.zero())
                rhs = sc.get((i, a, j), RadicalScalar.zero())
                assert lhs == -rhs


@pytest.mark.parametrize("k,l", [(2, 1), (7, 4)])
def test_jacobi_identity_su3(k, l):
    p = validate_params(k, l)
    e = build_basis(p)
    for a in range(1, 9):
        for b in range(a + 1, 9):
            for c in range(b + 1, 9):
                acc = commutator(commutator(e[a], e[b]), e[c])
                acc = mat_add3(
                    acc,
                    commutator(commutator(e[b], e[c]), e[a]),
                    commutator(commutator(e[c], e[a]), e[b]),
                )
                for row in acc:
                    for entry in row:
                        assert entry.is_zero()


def mat_add3(x, y, z):
    return [
        [a + b + c for a, b, c in zip(rx, ry, rz)]
        for rx, ry, rz in zip(x, y, z)
    ]


# ---------- weights ----------

def test_delta_annihilates_circle():
    for k, l in PAIRS_10:
        p = validate_params(k, l)
        _, _, _, _, delta = roots_and_delta(p)
        assert m_coeff(delta, p) == 0


def test_delta_positive_on_E():
    for k, l in PAIRS_10:
        p = validate_params(k, l)
        _, _, _, _, delta = roots_and_delta(p)
        assert eval_on_E(delta, p) == Fraction(6 * p.q, p.epsilon)


def test_roots_restrict_correctly():
    p = validate_params(2, 1)
    beta1, beta2, beta3, _, _ = roots_and_delta(p)
    assert m_coeff(beta1, p) == p.k - p.l          # 1
    assert m_coeff(beta2, p) == p.k + 2 * p.l      # 4 = 2l + k
    assert m_coeff(beta3, p) == 2 * p.k + p.l      # 5


def test_restrict_to_s_example():
    p = validate_params(2, 1)
    beta1, _, _, _, _ = roots_and_delta(p)
    # m = 1, q = 7: restriction is (1/14) (5 x1 + 4 x2)
    assert restrict_to_s(beta1, p) == MultiPoly.linear(
        Fraction(5, 14), Fraction(4, 14)
    )


def test_structure_constants_json_dump():
    import json

    p = validate_params(2, 1)
    dump = structure_constants_json(p)
    json.dumps(dump)  # serializable
    sc = structure_constants(p)
    assert len(dump) == len(sc)
    for a, i, j, s in dump:
        assert repr(sc[(a, i, j)]) == s


def test_isotropy_weights_21():
    p = validate_params(2, 1)
    assert isotropy_weights(p) == [-5, -4, -1, 0, 1, 4, 5]


# ---------- Weyl group ----------

def test_weyl_group_size_and_signs():
    els = weyl_elements()
    assert len(els) == 6
    assert sum(g.sign for g in els) == 0


def test_weyl_action_consistency():
    w = weight(2, -1, 3)
    for g in weyl_elements():
        via_weight = weight_poly(weyl_on_weight(w, g))
        via_matrix = poly_substitute_linear(weight_poly(w), weyl_matrix(g))
        assert via_weight == via_matrix


def test_weyl_orbit_dispatch():
    from g2nu.liealg import weyl_orbit

    w = weight(1, -2)
    for g in weyl_elements():
        assert weight_poly(weyl_orbit(w, g)) == weyl_orbit(weight_poly(w), g)
    with pytest.raises(TypeError):
        weyl_orbit(3.5, weyl_elements()[0])


def test_weyl_preserves_root_product():
    p = validate_params(2, 1)
    beta1, beta2, beta3, _, _ = roots_and_delta(p)
    prod = weight_poly(beta1) * weight_poly(beta2) * weight_poly(beta3)
    for g in weyl_elements():
        moved = poly_substitute_linear(prod, weyl_matrix(g))
        assert moved == prod * g.sign
