from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from shapkit.liealg import table_for
from shapkit.rootdata import (DomainError, NotRepresentable, WeylWord, generic_hyperplane_points,
                              hyperplane_sample, minimal_words, padded_sample, parse_algebra,
                              parse_root)
from shapkit.shap import (EXAMPLE_FIXTURES, borel_chain_check, construct, construct_at,
                          example_construction, example_factorizations, fixture_check,
                          parallel_map, power_word, theta_power_check, theta_square_check,
                          verify_bounds, word_divisible_off_hyperplane)
from shapkit.uea import format_element, make_order, reorder
from shapkit.verma import is_highest_weight, singular_vector, theta_vector

D, A = "distinguished", "anti_distinguished"
CASES = [("gl(2|1)", "e1-d1", 1, D), ("gl(2|2)", "e1-d2", 1, D), ("gl(3|1)", "e1-d1", 1, D),
         ("sl(3)", "e1-e3", 1, D), ("sl(3)", "e1-e3", 2, D), ("sl(4)", "e1-e4", 1, D),
         ("sp(6)", "e1+e2", 1, D), ("sp(6)", "2e1", 1, D), ("osp(2,4)", "b+2a1+a2", 1, D),
         ("osp(3,2)", "e1+d1", 1, D), ("osp(3,2)", "d1", 3, A), ("osp(3,2)", "e1+d1", 1, A)]


def _setup(alg, gtext, basis="distinguished"):
    rs = parse_algebra(alg, basis)
    return rs, table_for(rs), parse_root(rs, gtext)


# -- frozen small elements (checked against the singular-vector oracle below) ----

def test_gl21_two_term_element():
    rs, t, g = _setup("gl(2|1)", "e1-d1")
    s = construct(rs, g, 1, table=t)
    assert format_element(s.element) == \
        "(1) e[-(e1-e2)] e[-(e2-d1)]\n + (-h_e2 - h_d1) e[-(e1-d1)]"


def test_sl3_elements():
    rs, t, g = _setup("sl(3)", "e1-e3")
    assert format_element(construct(rs, g, 1, table=t).element) == \
        "(1) e[-(e1-e2)] e[-(e2-e3)]\n + (-h_e2 + h_e3) e[-(e1-e3)]"
    assert format_element(construct(rs, g, 2, table=t).element) == (
        "(1) e[-(e1-e2)]^2 e[-(e2-e3)]^2\n"
        " + (-2*h_e2 + 2*h_e3 + 2) e[-(e1-e2)] e[-(e2-e3)] e[-(e1-e3)]\n"
        " + (h_e2^2 - 2*h_e2*h_e3 + h_e3^2 - h_e2 + h_e3) e[-(e1-e3)]^2")


def test_simple_root_power():
    rs, t, g = _setup("gl(2)", "e1-e2")
    s = construct(rs, g, 3, table=t)
    assert s.word.indices == () and len(s.element.terms) == 1
    assert format_element(s.element) == "(1) e[-(e1-e2)]^3"


# -- oracle: the unique singular vector found by linear algebra ----------------

@pytest.mark.parametrize("alg,gtext,m,basis", CASES)
def test_matches_singular_vector_oracle(alg, gtext, m, basis):
    rs, t, g = _setup(alg, gtext, basis)
    s = construct(rs, g, m, table=t)
    eta = tuple(m * x for x in g)
    for lam in hyperplane_sample(rs, g, m, 3, word=s.word):
        u = singular_vector(t, lam, eta, order=s.order)
        assert u is not None
        assert u == s.at(lam)


@pytest.mark.parametrize("alg,gtext,m,basis", CASES)
def test_routes_agree(alg, gtext, m, basis):
    rs, t, g = _setup(alg, gtext, basis)
    s = construct(rs, g, m, table=t)
    ev = construct(rs, g, m, route="evaluated", table=t)
    assert ev.element == s.element
    for lam in hyperplane_sample(rs, g, m, 4, word=s.word):
        assert construct_at(rs, g, m, lam, order=s.order, table=t) == s.at(lam)


@settings(max_examples=40)
@given(st.sampled_from(["gl(2|1)", "gl(2|2)", "sl(3)", "sp(6)", "osp(2,4)", "osp(3,2)"]), st.data())
def test_highest_weight_property(alg, data):
    rs = parse_algebra(alg)
    t = table_for(rs)
    r = data.draw(st.sampled_from([r for r in rs.positive if not rs.is_even_half(r.vec)]))
    m = 1 if r.isotropic else data.draw(st.sampled_from([1, 3] if r.parity else [1, 2]))
    try:
        s = construct(rs, r.vec, m, table=t)
    except NotRepresentable:
        assume(False)
    i = data.draw(st.integers(0, 5))
    lam = padded_sample(rs, r.vec, m, i + 1, word=s.word)[-1]
    assert is_highest_weight(t, theta_vector(t, s.element, lam))


def test_normalization_and_homogeneity():
    for alg, gtext, m, basis in CASES:
        rs, t, g = _setup(alg, gtext, basis)
        s = construct(rs, g, m, table=t)
        # the simple-root monomial has coefficient 1
        from shapkit.rootdata import partition_weight, simple_partition
        assert s.element.terms[simple_partition(rs, tuple(m * x for x in g))] == 1
        assert {partition_weight(rs, mono) for mono in s.element.terms} == {tuple(m * x for x in g)}


def test_domain_errors():
    rs, t, g = _setup("gl(2|1)", "e1-d1")
    with pytest.raises(DomainError):
        construct(rs, g, 2, table=t)
    with pytest.raises(DomainError):
        construct(rs, g, 1, route="sideways", table=t)
    rs, t, _ = _setup("osp(3,2)", "d1")
    with pytest.raises(DomainError):
        construct(rs, parse_root(rs, "d1"), 2, table=t)
    with pytest.raises(DomainError):
        construct(rs, parse_root(rs, "2d1"), 1, table=t)
    rs, t, g = _setup("sl(3)", "e1-e3")
    with pytest.raises(DomainError):
        construct_at(rs, g, 1, (0, 0, 0), table=t)
    with pytest.raises(DomainError):
        construct(rs, g, 1, word=WeylWord((1,), 1), table=t)
    rs = parse_algebra("osp(3,2)", "anti_distinguished")
    with pytest.raises(NotRepresentable):
        construct(rs, parse_root(rs, "e1"), 1)


def test_order_only_changes_presentation():
    rs, t, g = _setup("osp(2,4)", "b+2a1+a2")
    a = construct(rs, g, 1, order="cosp", table=t)
    b = construct(rs, g, 1, order="cosp-opposite", table=t)
    lam = hyperplane_sample(rs, g, 1, 1)[0]
    assert reorder(a.at(lam), b.order) == b.at(lam)


# -- degree bounds ------------------------------------------------------------------

@pytest.mark.parametrize("alg,gtext,m,basis", [c for c in CASES if c[0] != "osp(3,2)"])
def test_bounds_even_group(alg, gtext, m, basis):
    rs, t, g = _setup(alg, gtext, basis)
    rep = verify_bounds(construct(rs, g, m, table=t))
    assert rep.ok and rep.leading_constant


def test_clifford_bound_osp32():
    rs = parse_algebra("osp(3,2)", "anti_distinguished")
    t = table_for(rs)
    s = construct(rs, parse_root(rs, "e1+d1"), 1, table=t)
    assert s.subgroup == "nonisotropic"
    rep = verify_bounds(s)
    assert rep.clifford_ok and rep.top_unique


def test_worked_example_equality():
    rs = parse_algebra("osp(2,4)")
    rep = verify_bounds(example_construction(rs))
    assert rep.ok and rep.degree_equality


# -- squares, powers, chains --------------------------------------------------------------

def test_isotropic_square_gl22():
    rs, t, g = _setup("gl(2|2)", "e1-d2")
    s = construct(rs, g, 1, table=t)
    for lam in generic_hyperplane_points(rs, g, 1, 4, seed=3):
        assert theta_square_check(rs, t, g, lam, s.element)
    with pytest.raises(DomainError):
        theta_square_check(rs, t, parse_root(rs, "e1-e2"), (0, 0, 0, 0))


def test_powers_sl3():
    rs, t, g = _setup("sl(3)", "e1-e3")
    for lam in generic_hyperplane_points(rs, g, 3, 3, seed=1):
        assert theta_power_check(rs, t, g, 3, lam)


def test_power_word_selection_sp6():
    # the two words with base a1 are not right-divisible at the shifted points
    rs, t, g = _setup("sp(6)", "e1+e2")
    words = minimal_words(rs, g)
    ok = {(w.indices, w.base): word_divisible_off_hyperplane(
        rs, t, g, 2, w, hyperplane_sample(rs, g, 2, 2, word=w)) for w in words}
    assert ok == {((1, 0, 2), 1): False, ((1, 2, 0), 1): False, ((1, 2, 1), 0): True}
    w = power_word(rs, t, g, 2)
    assert (w.indices, w.base) == ((1, 2, 1), 0)
    for lam in generic_hyperplane_points(rs, g, 2, 2, seed=5):
        assert theta_power_check(rs, t, g, 2, lam, word=w)


def test_borel_chain_gl21():
    rs, t, g = _setup("gl(2|1)", "e1-d1")
    pts = [p for p in generic_hyperplane_points(rs, g, 1, 12, seed=4)
           if (p[1] + rs.rho[1]) + (p[2] + rs.rho[2]) != 0][:5]
    rep = borel_chain_check(rs, t, g, pts)
    assert rep.ok and len(rep.constants) == 5


# -- worked example --------------------------------------------------------------------

@pytest.mark.parametrize("alg", ["osp(2,4)", "sp(6)"])
def test_worked_example_fixtures(alg):
    rs = parse_algebra(alg)
    t = table_for(rs)
    s = example_construction(rs, t)
    for name in EXAMPLE_FIXTURES:
        assert fixture_check(rs, t, name, s), name


def test_worked_example_factorizations():
    rs = parse_algebra("osp(2,4)")
    recs = example_factorizations(rs, count=2)
    assert recs and all(r.ok for r in recs)
    assert any(r.explicit for r in recs)


def test_parallel_map_is_order_stable(monkeypatch):
    monkeypatch.setenv("SHAPKIT_THREADS", "3")
    assert parallel_map(abs, [-3, 2, -1, 0]) == [3, 2, 1, 0]
    monkeypatch.setenv("SHAPKIT_THREADS", "junk")
    assert parallel_map(abs, [-1]) == [1]


def test_raw_and_reduced_agree_on_hyperplane():
    rs, t, g = _setup("sp(6)", "2e1")
    s = construct(rs, g, 2, table=t)
    from shapkit.uea import specialize
    for lam in generic_hyperplane_points(rs, g, 2, 3, seed=2):
        assert specialize(s.raw, lam) == s.at(lam)
    assert s.element.pbw.order == make_order(rs)
    assert Fraction(1) in {c.constant_value() for c in s.element.terms.values() if c.is_constant()}
