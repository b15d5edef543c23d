from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from shapkit.liealg import table_for
from shapkit.rootdata import DomainError, generic_hyperplane_points, hyperplane_sample, parse_algebra, parse_root
from shapkit.shap import construct
from shapkit.typea import (NCMatrix, build_minus, build_plus, matrix_unit, ncdet, power_product_gl,
                           scalar, sigma_pairing, split_check, tau_pairing, theta_det, theta_det_gl)
from shapkit.uea import make_order, pbw_for, reorder


def _pbw(alg):
    rs = parse_algebra(alg)
    t = table_for(rs)
    return rs, t, pbw_for(t, make_order(rs))


@given(st.integers(1, 4), st.data())
def test_ncdet_of_scalars_is_the_determinant(k, data):
    rs, t, pbw = _pbw("gl(2|1)")
    vals = [[data.draw(st.integers(-4, 4)) for _ in range(k)] for _ in range(k)]
    M = NCMatrix([[scalar(t, v) for v in row] for row in vals])
    want = sympy.Matrix(vals).det()
    for direction in ("right", "left"):
        got = ncdet(M, pbw, direction)
        assert got.terms.get(pbw.unit(), 0) == want and len(got.terms) <= 1


def test_ncdet_empty_and_nonsquare():
    rs, t, pbw = _pbw("gl(2|1)")
    assert ncdet(NCMatrix([]), pbw).terms == {pbw.unit(): 1}
    with pytest.raises(DomainError):
        ncdet(NCMatrix([[scalar(t, 1), scalar(t, 2)]]), pbw)


def test_ncdet_column_order_matters():
    # det->[[a, b], [c, d]] = a d - c b while det<- = d a - b c
    rs, t, pbw = _pbw("gl(3)")
    a, b = matrix_unit(rs, t, 2, 1), matrix_unit(rs, t, 3, 2)
    one = scalar(t, 1)
    M = NCMatrix([[a, None], [one, b]])
    from shapkit.uea import multiply
    assert ncdet(M, pbw, "right") == multiply(a, b)
    assert ncdet(M, pbw, "left") == multiply(b, a)
    assert multiply(a, b) != multiply(b, a)


def test_matrix_builders_shapes_and_entries():
    rs, t, _ = _pbw("gl(3|2)")
    lam = (Fraction(1), Fraction(2), Fraction(0), Fraction(-1), Fraction(3))
    Ap = build_plus(rs, t, lam, 1)
    assert Ap.shape == (3, 2)
    # subdiagonal (2, 1): -(lam + rho, (e1-e2)^vee)
    assert Ap.rows[1][0] == scalar(t, -sigma_pairing(rs, lam, 1, 2))
    Bp = build_plus(rs, t, lam, 1, shift=1)
    assert Bp.rows[1][0] == scalar(t, -(sigma_pairing(rs, lam, 1, 2) - 1))
    Am = build_minus(rs, t, lam, 2)
    assert Am.shape == (2, 1)
    assert Am.rows[0][0] == scalar(t, tau_pairing(rs, lam, 1, 2))
    assert Am.rows[1][0] == matrix_unit(rs, t, 5, 4)
    with pytest.raises(DomainError):
        matrix_unit(rs, t, 1, 2)


@pytest.mark.parametrize("alg", ["gl(1|1)", "gl(2|1)", "gl(1|2)", "gl(2|2)", "gl(3|1)"])
def test_three_expansions_agree_with_construction(alg):
    rs = parse_algebra(alg)
    t = table_for(rs)
    for r in rs.positive:
        if not r.isotropic:
            continue
        s = construct(rs, r.vec, 1, table=t)
        for lam in hyperplane_sample(rs, r.vec, 1, 3):
            for v in ("shtpa", "shtpb", "thtpa"):
                assert reorder(theta_det(rs, t, r.vec, lam, v), s.order) == s.at(lam), (r.vec, v)


def test_minus_sign_on_the_diagonal_disagrees():
    # with the opposite sign on the lower block's diagonal the expansion differs once s >= 2
    rs = parse_algebra("gl(1|2)")
    t = table_for(rs)
    g = parse_root(rs, "e1-d2")
    s = construct(rs, g, 1, table=t)
    lam = hyperplane_sample(rs, g, 1, 3)
    assert any(reorder(theta_det(rs, t, g, x, "shtpa", diag_sign=-1), s.order) != s.at(x) for x in lam)


def test_variant_and_root_errors():
    rs = parse_algebra("gl(2|1)")
    t = table_for(rs)
    with pytest.raises(DomainError):
        theta_det(rs, t, parse_root(rs, "e1-e2"), (0, 0, 0))
    with pytest.raises(DomainError):
        theta_det(rs, t, parse_root(rs, "e1-d1"), (0, 0, 0), variant="nope")
    with pytest.raises(DomainError):
        theta_det(parse_algebra("sl(3)"), table_for(parse_algebra("sl(3)")), (1, 0, -1), (0, 0, 0))


@pytest.mark.parametrize("alg", ["gl(3)", "gl(4)"])
def test_gl_determinant_and_products(alg):
    rs = parse_algebra(alg)
    t = table_for(rs)
    for r in rs.positive:
        s1 = construct(rs, r.vec, 1, table=t)
        for lam in hyperplane_sample(rs, r.vec, 1, 2):
            assert reorder(theta_det_gl(rs, t, r.vec, lam), s1.order) == s1.at(lam)
        s2 = construct(rs, r.vec, 2, table=t)
        for lam in generic_hyperplane_points(rs, r.vec, 2, 2, seed=7):
            assert reorder(power_product_gl(rs, t, r.vec, 2, lam), s2.order) == s2.at(lam)


def test_split_gl4():
    rs = parse_algebra("gl(4)")
    t = table_for(rs)
    n = 0
    for r, s, tt in itertools.combinations(range(1, 5), 3):
        for vals in itertools.product(range(-2, 3), repeat=4):
            if sigma_pairing(rs, vals, r, tt) == 1 and sigma_pairing(rs, vals, r, s) == 0:
                assert split_check(rs, t, r, s, tt, vals)
                n += 1
                break
    assert n == 4
    with pytest.raises(DomainError):
        split_check(rs, t, 1, 2, 3, (0, 0, 0, 0))
