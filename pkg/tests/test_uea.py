from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from shapkit.liealg import mat_add, mat_mul, mat_scale, table_for
from shapkit.rootdata import DomainError, parse_algebra, parse_root
from shapkit.uea import (HPoly, Hyperplane, UNElement, binomial_poly, divide_right_power,
                         from_json, generator, hyperplane_for, make_order, move_last, multiply,
                         pairing_poly, pbw_for, power_commute, reduce_element, reorder, specialize,
                         straighten, to_json)

ALGS = ["gl(2|1)", "gl(2|2)", "sl(3)", "sp(6)", "osp(2,4)", "osp(3,2)"]

# -- HPoly against sympy -------------------------------------------------------

X = sympy.symbols("x0:3")
polys = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3),
                        st.fractions(min_value=-5, max_value=5, max_denominator=3),
                        max_size=4)


def _sym(P):
    return sum((sympy.Rational(v.numerator, v.denominator) *
                sympy.Mul(*[x ** e for x, e in zip(X, k)]) for k, v in P.terms.items()), sympy.S(0))


def _hp(d):
    return HPoly(3, {k: v for k, v in d.items() if v})


@given(polys, polys)
def test_hpoly_ring_ops_match_sympy(a, b):
    P, Q = _hp(a), _hp(b)
    assert sympy.expand(_sym(P + Q) - (_sym(P) + _sym(Q))) == 0
    assert sympy.expand(_sym(P * Q) - _sym(P) * _sym(Q)) == 0
    assert sympy.expand(_sym(P - Q) - (_sym(P) - _sym(Q))) == 0


@given(polys, polys, polys, polys)
def test_hpoly_compose_matches_sympy(a, b, c, d):
    P = _hp(a)
    subs = [_hp(b), _hp(c), _hp(d)]
    want = _sym(P).subs({X[i]: _sym(subs[i]) for i in range(3)}, simultaneous=True)
    assert sympy.expand(_sym(P.compose(subs)) - want) == 0


@given(polys, st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_hpoly_shift_and_evaluate(a, v):
    P = _hp(a)
    pt = [Fraction(x) for x in v]
    # H.shift(vec) is lam -> H(lam - vec)
    assert P.shift(v).evaluate([0, 0, 0]) == P.evaluate([-x for x in pt])


@given(polys, st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any),
       st.integers(-5, 5), st.lists(st.integers(-6, 6), min_size=2, max_size=2))
def test_hyperplane_reduce_preserves_values(a, coeffs, const, free):
    P = _hp(a)
    hyp = Hyperplane(3, coeffs, const)
    R = hyp.reduce(P)
    assert all(k[hyp.pivot] == 0 for k in R.terms)
    # a point of the hyperplane: solve for the pivot
    pt = [Fraction(0)] * 3
    others = [i for i in range(3) if i != hyp.pivot]
    for i, x in zip(others, free):
        pt[i] = Fraction(x)
    pt[hyp.pivot] = -(sum(Fraction(coeffs[i]) * pt[i] for i in others) + const) / coeffs[hyp.pivot]
    assert hyp.contains(pt)
    assert R.evaluate(pt) == P.evaluate(pt)


def test_binomial_poly():
    x = HPoly.var(1, 0)
    b = binomial_poly(x, 3)
    assert [b.evaluate([n]) for n in range(6)] == [0, 0, 0, 1, 4, 10]


def test_pairing_poly_gl21():
    rs = parse_algebra("gl(2|1)")
    # (lam + rho, e1-d1) = lam1 + lam3 + 1: rho = (0, -1, 1), signs (1, 1, -1)
    P = pairing_poly(rs, parse_root(rs, "e1-d1"))
    assert P.evaluate([3, 0, 2]) == 3 + 2 + 1


# -- PBW straightening against the matrix representation -------------------------

def _rep(t, u):
    out = {}
    for mono, c in u.terms.items():
        M = {(i, i): Fraction(1) for i in range(len(t.vweight))}
        for g in u.pbw.word(mono):
            M = mat_mul(M, t.matrices[t.neg(g)])
        out = mat_add(out, mat_scale(M, c))
    return out


def _word_rep(t, word):
    M = {(i, i): Fraction(1) for i in range(len(t.vweight))}
    for g in word:
        M = mat_mul(M, t.matrices[t.neg(g)])
    return M


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(ALGS), st.data())
def test_straighten_respects_defining_representation(alg, data):
    rs = parse_algebra(alg)
    t = table_for(rs)
    K = len(rs.positive)
    order = data.draw(st.permutations(range(K)))
    pbw = pbw_for(t, tuple(order))
    word = data.draw(st.lists(st.integers(0, K - 1), max_size=4))
    u = straighten(pbw, word)
    assert not mat_add(_rep(t, u), _word_rep(t, word), -1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALGS), st.data())
def test_associativity_and_reorder_roundtrip(alg, data):
    rs = parse_algebra(alg)
    t = table_for(rs)
    K = len(rs.positive)
    o1 = tuple(data.draw(st.permutations(range(K))))
    o2 = tuple(data.draw(st.permutations(range(K))))
    pbw = pbw_for(t, o1)
    u, v, w = (straighten(pbw, data.draw(st.lists(st.integers(0, K - 1), max_size=3)))
               for _ in range(3))
    assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))
    assert reorder(reorder(u, o2), o1) == u


def test_isotropic_square_vanishes():
    rs = parse_algebra("gl(2|1)")
    pbw = pbw_for(table_for(rs), make_order(rs))
    k = rs.index(parse_root(rs, "e1-d1"))
    assert not straighten(pbw, [k, k])
    assert not generator(pbw, k, 2)


def test_odd_nonisotropic_square():
    # e_{-d1}^2 = 1/2 [e_{-d1}, e_{-d1}] = (c/2) e_{-2d1}
    rs = parse_algebra("osp(3,2)")
    t = table_for(rs)
    pbw = pbw_for(t, make_order(rs))
    k = rs.index(parse_root(rs, "d1"))
    k2 = rs.index(parse_root(rs, "2d1"))
    (kk, c), = t.table[(k, k)].items()
    assert kk == k2
    assert straighten(pbw, [k, k]).scale(c / 2) == straighten(pbw, [k2])


@pytest.mark.parametrize("alg,root", [("sl(3)", "e1-e2"), ("gl(2|1)", "e2-d1"), ("osp(3,2)", "d1")])
def test_power_commute_matches_product(alg, root):
    rs = parse_algebra(alg)
    t = table_for(rs)
    pbw = pbw_for(t, make_order(rs))
    k = rs.index(parse_root(rs, root))
    r_max = 1 if rs.positive[k].isotropic else 4
    for a in range(len(rs.positive)):
        z = generator(pbw, a)
        for r in range(r_max + 1):
            want = multiply(generator(pbw, k, r), z) if r else z
            if rs.positive[k].parity and not rs.positive[k].isotropic and r > 1:
                want = multiply(straighten(pbw, [k] * r), z)
            assert power_commute(pbw, k, r, z) == want


def test_divide_right_power():
    rs = parse_algebra("sl(3)")
    t = table_for(rs)
    k = rs.index(parse_root(rs, "e1-e2"))
    pbw = pbw_for(t, move_last(make_order(rs), k))
    u = multiply(straighten(pbw, [rs.index(parse_root(rs, "e2-e3"))]), generator(pbw, k, 2))
    assert multiply(divide_right_power(u, k, 2), generator(pbw, k, 2)) == u
    with pytest.raises(DomainError):
        divide_right_power(u, k, 3)


def test_symbolic_multiply_moves_cartan_coefficients():
    # e_{-a} H = (H shifted by the weight) e_{-a}: (e_{-a} h1) v_lam = e_{-a} (lam1) v_lam
    rs = parse_algebra("sl(3)")
    t = table_for(rs)
    pbw = pbw_for(t, make_order(rs))
    h = HPoly.var(3, 0)
    a = rs.index(parse_root(rs, "e1-e2"))
    u = straighten(pbw, [a, h])
    mono = next(iter(u.terms))
    assert u.terms[mono] == h
    v = straighten(pbw, [h, a])
    assert v.terms[mono] == h - 1


def test_json_roundtrip_and_specialize():
    from shapkit.shap import construct
    rs = parse_algebra("osp(2,4)")
    t = table_for(rs)
    s = construct(rs, parse_root(rs, "b+2a1+a2"), 1, order="cosp", table=t)
    back = from_json(t, to_json(s.element))
    assert back.pbw.order == s.element.pbw.order and back == s.element
    lam = (Fraction(1, 3), Fraction(2), Fraction(-5, 7))
    assert specialize(back, lam) == specialize(s.element, lam)
    hyp = hyperplane_for(rs, s.gamma, 1)
    assert reduce_element(s.element, hyp) == s.element


def test_make_order_presets():
    rs = parse_algebra("osp(2,4)")
    names = [r for r in ["b", "a1", "a2", "a1+a2", "2a1+a2", "b+a1", "b+a1+a2", "b+2a1+a2"]]
    explicit = make_order(rs, names)
    assert sorted(explicit) == list(range(8))
    assert make_order(rs, "cosp-opposite") == tuple(reversed(make_order(rs, "cosp")))
    with pytest.raises(DomainError):
        make_order(rs, ["b", "a1"])
    with pytest.raises(DomainError):
        make_order(rs, "sideways")
    assert isinstance(UNElement(pbw_for(table_for(rs), explicit), {}), UNElement)
