from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shapkit.liealg import table_for
from shapkit.rootdata import DomainError, parse_algebra, parse_root
from shapkit.shap import construct
from shapkit.uea import generator, make_order, pbw_for
from shapkit.verma import (is_dominant, is_highest_weight, kac_product, kac_survival,
                           lambda_minimal, lambda_sets, independent, singular_vector,
                           theta_vector, verma_module)


def _sl2():
    rs = parse_algebra("gl(2)")
    return rs, table_for(rs)


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 5))
def test_sl2_raising_formula(l1, l2, k):
    # e f^k v = k ((lam, alpha) - k + 1) f^{k-1} v
    rs, t = _sl2()
    M = verma_module(t, (l1, l2))
    got = M.act(t.pos(0), {(k,): Fraction(1)})
    c = k * (l1 - l2 - k + 1)
    assert got == ({(k - 1,): Fraction(c)} if c else {})


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_sl2_singular_vector_is_power(k):
    rs, t = _sl2()
    u = singular_vector(t, (k - 1, 0), (k, -k))
    assert u is not None and u.terms == {(k,): 1}
    # off the hyperplane there is no singular vector
    assert singular_vector(t, (k, 0), (k, -k)) is None


def test_gl11_odd_raising():
    # e f v = (lam, alpha) v = lam1 + lam2 for signs (1, -1), and f^2 = 0
    rs = parse_algebra("gl(1|1)")
    t = table_for(rs)
    M = verma_module(t, (3, 4))
    assert M.act(t.pos(0), {(1,): Fraction(1)}) == {(0,): Fraction(7)}
    assert M.act(t.neg(0), {(1,): Fraction(1)}) == {}


def test_cartan_acts_by_weight():
    rs = parse_algebra("gl(2|1)")
    t = table_for(rs)
    lam = (Fraction(2), Fraction(-1), Fraction(5))
    M = verma_module(t, lam)
    mono = tuple(1 if r.vec == parse_root(rs, "e1-d1") else 0 for r in rs.positive)
    # weight lam - (e1 - d1) = (1, -1, 6)
    assert M.act(t.h(0), {mono: Fraction(1)}) == {mono: Fraction(1)}
    assert M.act(t.h(2), {mono: Fraction(1)}) == {mono: Fraction(6)}


def test_lambda_sets_gl21():
    rs = parse_algebra("gl(2|1)")
    g = parse_root(rs, "e1-d1")
    # (lam + rho, e1 - d1) = lam1 + lam3 + 1
    sets = lambda_sets(rs, (0, 0, -1))
    assert g in sets.B
    assert lambda_minimal(rs, (0, 0, -1), g)
    with pytest.raises(DomainError):
        lambda_minimal(rs, (0, 0, 0), g)


def test_theta_is_highest_weight_gl21():
    rs = parse_algebra("gl(2|1)")
    t = table_for(rs)
    g = parse_root(rs, "e1-d1")
    s = construct(rs, g, 1, table=t)
    for lam in [(0, 0, -1), (2, 5, -3), (Fraction(1, 2), 0, Fraction(-3, 2))]:
        assert is_highest_weight(t, theta_vector(t, s.element, lam))
        # and it matches the linear-algebra singular vector
        assert singular_vector(t, lam, g) == s.at(lam)


def test_kac_product_by_hand():
    rs = parse_algebra("gl(2|2)")
    # r = 1, s = 2: (1 - (mu, (e1-e2)^vee)) (1 - (mu, (d1-d2)^vee)), mu = lam + rho;
    # (d1-d2, d1-d2) = -2 and (mu, d1-d2) = mu4 - mu3, so the second pairing is mu3 - mu4
    lam = (3, 1, 0, 0)
    mu = [x + r for x, r in zip(lam, rs.rho)]
    a = mu[0] - mu[1]
    b = mu[2] - mu[3]
    assert kac_product(rs, lam, 1, 2) == (1 - a) * (1 - b)


def test_kac_survival_gl21_grid():
    rs = parse_algebra("gl(2|1)")
    t = table_for(rs)
    n = 0
    for vals in itertools.product(range(-3, 4), repeat=3):
        for r in rs.positive:
            if not r.isotropic:
                continue
            try:
                rep = kac_survival(rs, t, vals, r.vec)
            except DomainError:
                continue
            n += 1
            assert rep.nonzero and rep.matches
    assert n > 5


def test_kac_survival_requires_dominance():
    rs = parse_algebra("gl(2|1)")
    t = table_for(rs)
    assert not is_dominant(rs, (0, 1, 0))
    with pytest.raises(DomainError):
        kac_survival(rs, t, (0, 1, -1), parse_root(rs, "e2-d1"))


def test_independence_single_B_is_independent():
    rs = parse_algebra("gl(2|2)")
    t = table_for(rs)
    for vals in itertools.product(range(-2, 3), repeat=4):
        B = lambda_sets(rs, vals).B
        if len(B) == 1:
            rep = independent(rs, t, vals, B[0])
            assert rep.minimal and rep.independent
            return
    pytest.fail("no weight with |B| = 1 in the grid")


def test_verma_vector_reorders():
    rs = parse_algebra("sl(3)")
    t = table_for(rs)
    M = verma_module(t, (1, 0, 0))
    other = pbw_for(t, tuple(reversed(make_order(rs))))
    u = generator(other, 0)
    assert M.vector(u) == {next(iter(generator(M.pbw, 0).terms)): 1}
