"""Sapovalov elements: inductive construction and the checks built on it.

theta_{gamma,m} is built along a minimal word w with gamma = w(beta), beta
simple, starting from e^m_{-beta}.  One step through a simple root alpha
solves

    e^{p+mq}_{-alpha} theta'(mu) = theta(lam) e^p_{-alpha},
    lam = s_alpha . mu,  p = (mu + rho, alpha^vee),  q = (gamma, alpha^vee),

symbolically in lam: e^{p+mq} is pushed past each e_{-pi'} with the
binomial expansion in ad e_{-alpha}, the binomials being polynomials in p.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .liealg import StructureTable, table_for
from .rootdata import (DomainError, RootSystem, WeylWord, apply_word, borel_chain,
                       build_root_system, choose_subgroup, clifford_degree, copair,
                       format_root, height, hyperplane_sample, minimal_word, minimal_words, n_set, pair,
                       partition_weight, reflect, shifted_pairing_form, simple_partition,
                       step_data)
from .uea import (HPoly, Hyperplane, PBW, UBElement, UNElement, _acc, ad_pow, hyperplane_for,
                  make_order, move_last, multiply, pairing_poly, pbw_for,
                  power_commute_coeffs, reduce_element, reorder, specialize)


class ConsistencyError(RuntimeError):
    """A step of the construction produced something the theory forbids."""


class VerificationError(RuntimeError):
    """An oracle disagreed with the construction."""


@dataclass
class ShapElement:
    rs: RootSystem
    gamma: tuple
    m: int
    word: WeylWord
    order: tuple
    element: UBElement          # coefficients reduced modulo H_{gamma,m}
    raw: UBElement              # coefficients as produced by the recursion
    route: str
    subgroup: str
    steps: list = field(default_factory=list)

    @property
    def hyperplane(self) -> Hyperplane:
        return hyperplane_for(self.rs, self.gamma, self.m)

    def at(self, lam) -> UNElement:
        return specialize(self.element, lam)


# ---------------------------------------------------------------------------
# parallel helper

def thread_cap():
    try:
        return max(1, int(os.environ.get("SHAPKIT_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Map over items, using up to SHAPKIT_THREADS worker processes."""
    items = list(items)
    n = min(thread_cap(), len(items), os.cpu_count() or 1)
    if n <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------------------
# preconditions

def check_pair(rs: RootSystem, gamma, m):
    gamma = tuple(gamma)
    k = rs.index(gamma)
    r = rs.positive[k]
    if m < 1:
        raise DomainError("m must be positive")
    if r.isotropic and m != 1:
        raise DomainError("isotropic gamma needs m = 1")
    if r.parity and not r.isotropic and m % 2 == 0:
        raise DomainError("odd non-isotropic gamma needs odd m")
    if rs.is_even_half(gamma):
        raise DomainError("gamma is twice an odd root")
    return r


def resolve_word(rs, gamma, word=None, subgroup=None):
    if word is None:
        if subgroup is None:
            subgroup = choose_subgroup(rs, gamma)
        word = minimal_word(rs, gamma, subgroup)
    else:
        if apply_word(rs, word, rs.simple_vecs[word.base]) != tuple(gamma):
            raise DomainError("word does not carry its base to gamma")
        if subgroup is None:
            odd = any(rs.positive[rs.simple[i]].parity for i in word.indices)
            subgroup = "nonisotropic" if odd else "even"
    return word, subgroup


def base_element(pbw: PBW, k, m, symbolic=True):
    mono = [0] * pbw.K
    mono[k] = m
    n = pbw.rs.dim
    return UBElement(pbw, {tuple(mono): HPoly.const(n, 1)}) if symbolic else \
        UNElement(pbw, {tuple(mono): Fraction(1)})


# ---------------------------------------------------------------------------
# symbolic induction

def _ad_sequence(pbw, k, mono):
    """[(ad e_{-alpha})^j e_{-mono} for j = 0..N], N maximal with nonzero value."""
    cur = UNElement(pbw, {mono: Fraction(1)})
    seq = [cur]
    while True:
        cur = ad_pow(pbw, k, 1, cur)
        if not cur:
            return seq
        seq.append(cur)


def _step(t: StructureTable, theta_prev: UBElement, i, gamma_prev, m, odd):
    rs = t.rs
    n = rs.dim
    k = rs.simple[i]
    a = rs.simple_vecs[i]
    gamma = reflect(rs, a, gamma_prev)
    q = copair(rs, gamma, a)
    if q.denominator != 1 or q <= 0:
        raise ConsistencyError(f"q = {q} is not a positive integer")
    q = int(q)
    if odd:
        if q != 2 or m != 1:
            raise ConsistencyError("odd step needs q = 2 and m = 1")
    pbw = pbw_for(t, move_last(theta_prev.pbw.order, k))
    th = reorder(theta_prev, pbw.order)
    # p(lam) = (mu + rho, alpha^vee) with mu = s_alpha . lam
    shifted = pairing_poly(rs, a)
    p = -shifted
    mu = [HPoly.var(n, j) - shifted * a[j] for j in range(n)]
    seqs = {mono: _ad_sequence(pbw, k, mono) for mono in th.terms}
    N = max(len(s) - 1 for s in seqs.values())
    eps = -1 if rs.positive[rs.index(gamma_prev)].parity else 1
    coef = power_commute_coeffs(p + m * q, odd=odd, eps=eps)
    coefs = [coef(j) for j in range(N + 1)]
    c = {}
    for mono, H in th.terms.items():
        Hmu = H.compose(mu)
        for j, ej in enumerate(seqs[mono]):
            cj = coefs[j] * Hmu
            if not cj:
                continue
            for z, b in ej.terms.items():
                z = list(z)
                z[k] += N - j
                _acc(c, tuple(z), cj * b)
    hyp = hyperplane_for(rs, gamma, m)
    T = N - m * q
    out = {}
    for z, cz in c.items():
        if z[k] < T:
            if hyp.reduce(cz):
                raise ConsistencyError(
                    f"cancelation failed at step through {format_root(rs, a)}")
            continue
        pi = list(z)
        pi[k] -= T
        # an odd power of an odd e_{-alpha} passes e_{-pi^0} with sign eps
        out[tuple(pi)] = cz * eps if odd else cz
    return UBElement(pbw, out), gamma, {"alpha": a, "q": q, "N": N}


def inductive_step_even(t, theta_prev, i, gamma_prev, m):
    """One step through an even simple root (index i into rs.simple)."""
    if t.rs.positive[t.rs.simple[i]].parity:
        raise DomainError("alpha must be even")
    return _step(t, theta_prev, i, gamma_prev, m, odd=False)


def inductive_step_odd(t, theta_prev, i, gamma_prev):
    """One step through an odd non-isotropic simple root (m = 1)."""
    r = t.rs.positive[t.rs.simple[i]]
    if not r.parity or r.isotropic:
        raise DomainError("alpha must be odd non-isotropic")
    return _step(t, theta_prev, i, gamma_prev, 1, odd=True)


def construct(rs: RootSystem, gamma, m=1, order="distinguished", route="symbolic",
              word=None, subgroup=None, table=None) -> ShapElement:
    gamma = tuple(gamma)
    check_pair(rs, gamma, m)
    word, subgroup = resolve_word(rs, gamma, word, subgroup)
    t = table or table_for(rs)
    final_order = order if isinstance(order, tuple) and all(isinstance(x, int) for x in order) \
        else make_order(rs, order)
    if route == "evaluated":
        return construct_evaluated(rs, gamma, m, final_order, word, subgroup, t)
    if route != "symbolic":
        raise DomainError(f"unknown route {route}")
    beta = rs.simple_vecs[word.base]
    theta = base_element(pbw_for(t, final_order), rs.index(beta), m)
    g = beta
    steps = [(g, theta)]
    for i in reversed(word.indices):
        odd = rs.positive[rs.simple[i]].parity == 1
        if odd:
            theta, g, _ = inductive_step_odd(t, theta, i, g)
        else:
            theta, g, _ = inductive_step_even(t, theta, i, g, m)
        steps.append((g, theta))
    raw = reorder(theta, final_order)
    element = reduce_element(raw, hyperplane_for(rs, gamma, m))
    s = ShapElement(rs, gamma, m, word, final_order, element, raw, "symbolic", subgroup, steps)
    _check_normalized(s)
    return s


def _check_normalized(s: ShapElement):
    rs = s.rs
    pi0 = simple_partition(rs, tuple(s.m * x for x in s.gamma))
    c = s.element.terms.get(pi0)
    if c is None or c != 1:
        raise ConsistencyError("coefficient of the simple-root monomial is not 1")
    target = tuple(s.m * x for x in s.gamma)
    for mono in s.element.terms:
        if partition_weight(rs, mono) != target:
            raise ConsistencyError("element is not weight homogeneous")


def step_reduced(rs, gamma_k, m, theta_k):
    """Reduce an intermediate element modulo its own hyperplane."""
    return reduce_element(theta_k, hyperplane_for(rs, gamma_k, m))


# ---------------------------------------------------------------------------
# evaluation at a point

def base_weight(rs, word, lam):
    return apply_word(rs, tuple(reversed(word.indices)), tuple(Fraction(x) for x in lam), dot=True)


def construct_at(rs: RootSystem, gamma, m, lam, order="distinguished", word=None,
                 subgroup=None, table=None) -> UNElement:
    """theta_{gamma,m}(lam) for lam in w.Lambda by the numeric recursion."""
    gamma = tuple(gamma)
    check_pair(rs, gamma, m)
    word, subgroup = resolve_word(rs, gamma, word, subgroup)
    t = table or table_for(rs)
    final_order = order if isinstance(order, tuple) and all(isinstance(x, int) for x in order) \
        else make_order(rs, order)
    nu = base_weight(rs, word, lam)
    beta = rs.simple_vecs[word.base]
    bk = rs.index(beta)
    if rs.positive[bk].isotropic:
        ok = pair(rs, tuple(x + r for x, r in zip(nu, rs.rho)), beta) == 0
    else:
        ok = copair(rs, tuple(x + r for x, r in zip(nu, rs.rho)), beta) == m
    if not ok:
        raise DomainError("lam is not on the hyperplane")
    return recursion_at(rs, t, word, m, nu, final_order)


def recursion_at(rs, t, word, m, nu, order):
    """Run the per-point recursion from base weight nu (any nu whose step
    values p are nonnegative integers); raises ConsistencyError when a left
    side is not right-divisible by e^p."""
    bk = rs.simple[word.base]
    steps, _ = step_data(rs, word, m, nu)
    theta = base_element(pbw_for(t, order), bk, m, symbolic=False)
    for i, p, q, _mu in steps:
        if p.denominator != 1 or p < 0:
            raise DomainError("lam is outside w.Lambda (negative or fractional p)")
        p = int(p)
        q = int(q)
        k = rs.simple[i]
        pbw = pbw_for(t, move_last(theta.pbw.order, k))
        th = reorder(theta, pbw.order)
        vec = pbw.apply_word([k] * (p + m * q), dict(th.terms))
        out = {}
        for mono, c in vec.items():
            if mono[k] < p:
                raise ConsistencyError("left side is not right-divisible by e^p")
            m2 = list(mono)
            m2[k] -= p
            out[tuple(m2)] = c
        theta = UNElement(pbw, out)
        if rs.positive[k].parity and _odd_weight(rs, theta):
            theta = UNElement(pbw, {mo: -c for mo, c in theta.terms.items()})
    return reorder(theta, order)


def _odd_weight(rs, u):
    mono = next(iter(u.terms))
    return sum(mono[j] for j, r in enumerate(rs.positive) if r.parity) % 2 == 1


# ---------------------------------------------------------------------------
# interpolation oracle

def _free_pairing_polys(rs, word):
    """For each simple root other than the base: lam -> (nu + rho, alpha^vee)
    (or (nu+rho, alpha) if isotropic), nu = w^{-1}.lam, as an HPoly in lam."""
    out = []
    for j, v in enumerate(rs.simple_vecs):
        if j == word.base:
            continue
        wv = apply_word(rs, word, v)
        coeffs, const = shifted_pairing_form(rs, wv)
        out.append((j, HPoly.linear(rs.dim, coeffs, const)))
    return out


def _simplex(k, D):
    return [c for c in itertools.product(range(D + 1), repeat=k) if sum(c) <= D]


def construct_evaluated(rs, gamma, m, order, word, subgroup, t, offset=1, holdout=4):
    """Interpolate per-point constructions over a simplex grid in the base
    pairings, then confirm on held-out points."""
    from .rootdata import weight_from_pairings
    frees = _free_pairing_polys(rs, word)
    k = len(frees)
    steps = []
    x0 = []
    for j, _ in frees:
        r = rs.positive[rs.simple[j]]
        odd = r.parity and not r.isotropic
        steps.append(2 if odd else 1)
        x0.append(2 * offset - 1 if odd else offset)
    D = m * int(height(rs, gamma))
    if subgroup == "nonisotropic":
        D = max(D, 2 * len(word) + 1)
    beta = rs.positive[rs.simple[word.base]]

    def weight_at(tpt):
        vals = [0] * len(rs.simple)
        vals[word.base] = 0 if beta.isotropic else m
        for (j, _), s, x, tt in zip(frees, steps, x0, tpt):
            vals[j] = x + s * tt
        nu = weight_from_pairings(rs, vals)
        return apply_word(rs, word, nu, dot=True)

    grid = _simplex(k, D)
    values = {}
    for tpt in grid:
        values[tpt] = construct_at(rs, gamma, m, weight_at(tpt), order, word, subgroup, t).terms
    monos = set()
    for v in values.values():
        monos.update(v)
    # Newton forward differences on the simplex
    n = rs.dim
    tvars = [(poly - x) * Fraction(1, s) for (j, poly), x, s in zip(frees, x0, steps)]
    basis_cache = {}

    def newton_basis(i):
        if i not in basis_cache:
            b = HPoly.const(n, 1)
            for tv, e in zip(tvars, i):
                for r in range(e):
                    b = b * (tv - r)
            div = 1
            for e in i:
                div *= math.factorial(e)
            basis_cache[i] = b * Fraction(1, div)
        return basis_cache[i]

    out = {}
    for mono in monos:
        poly = HPoly(n)
        for i in grid:
            d = Fraction(0)
            for s in itertools.product(*[range(e + 1) for e in i]):
                sign = (-1) ** (sum(i) - sum(s))
                w = 1
                for a, b in zip(i, s):
                    w *= comb(a, b)
                d += sign * w * values[s].get(mono, 0)
            if d:
                poly = poly + newton_basis(i) * d
        if poly:
            out[mono] = poly
    pbw = pbw_for(t, order)
    raw = UBElement(pbw, out)
    element = reduce_element(raw, hyperplane_for(rs, gamma, m))
    s = ShapElement(rs, tuple(gamma), m, word, order, element, raw, "evaluated", subgroup)
    _check_normalized(s)
    # held-out points beyond the grid
    for j in range(holdout):
        tpt = tuple(D + 1 + j + c for c in range(k))
        lam = weight_at(tpt)
        if specialize(element, lam) != construct_at(rs, gamma, m, lam, order, word, subgroup, t):
            raise VerificationError("interpolation disagrees on a held-out point")
    return s




# ---------------------------------------------------------------------------
# degree bounds

@dataclass
class BoundsReport:
    degree_ok: bool = True
    degree_equality: bool = True
    leading_degree_ok: bool = True
    leading_proportional: bool = True
    leading_constant: Fraction | None = None
    clifford_ok: bool | None = None
    top_unique: bool = True
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return self.degree_ok and self.leading_degree_ok and self.leading_proportional and \
            self.top_unique and self.clifford_ok is not False


def proportional(P: HPoly, Q: HPoly):
    """c with P = c Q, or None."""
    if not Q:
        return Fraction(0) if not P else None
    key = next(iter(Q.terms))
    c = P.terms.get(key, Fraction(0)) / Q.terms[key]
    return c if P == Q * c else None


def leading_product(s: ShapElement):
    """prod over N(w^{-1}) of (lam, alpha)^{m q(w, alpha)}, reduced on H."""
    rs = s.rs
    prod = HPoly.const(rs.dim, 1)
    for a in n_set(rs, s.word):
        q = copair(rs, s.gamma, a)
        prod = prod * pairing_poly(rs, a, shifted=False, coroot=False) ** int(s.m * q)
    return s.hyperplane.reduce(prod)


def verify_bounds(s: ShapElement, clifford=None) -> BoundsReport:
    """Degree bound |pi| + deg H_pi <= m ht(gamma) and the leading form of
    H_{m pi^gamma} when the word lies in the even Weyl group; the Clifford
    bound when the word uses the non-isotropic group with m = 1."""
    rs = s.rs
    rep = BoundsReport()
    ht = int(height(rs, s.gamma))
    bound = s.m * ht
    if clifford is None:
        clifford = s.subgroup == "nonisotropic"
    if clifford and s.m != 1:
        raise DomainError("the Clifford bound is stated for m = 1")
    top_mono = [0] * len(rs.positive)
    top_mono[rs.index(s.gamma)] = s.m
    top_mono = tuple(top_mono)
    degs = {mono: H.degree() for mono, H in s.element.terms.items()}
    for mono, d in degs.items():
        total = sum(mono) + d
        if s.subgroup == "even":
            if total > bound:
                rep.degree_ok = False
                rep.violations.append(("degree", mono, total))
            if total != bound:
                rep.degree_equality = False
        if clifford:
            if 2 * d > 2 * len(s.word) + 1 - clifford_degree(rs, mono):
                rep.clifford_ok = False
                rep.violations.append(("clifford", mono, d))
    if clifford and rep.clifford_ok is None:
        rep.clifford_ok = True
    if s.subgroup != "even":
        rep.degree_ok = True
        rep.degree_equality = False
    H = s.element.terms.get(top_mono)
    maxdeg = max(degs.values())
    if H is None:
        rep.leading_degree_ok = False
        rep.violations.append(("leading", "missing"))
        rep.top_unique = False
        return rep
    if s.subgroup == "even":
        want = s.m * (ht - 1)
        if H.degree() != want:
            rep.leading_degree_ok = False
            rep.violations.append(("leading-degree", H.degree(), want))
        lead = leading_product(s)
        c = proportional(H.top(), lead.top())
        rep.leading_constant = c
        if not c:
            rep.leading_proportional = False
            rep.violations.append(("leading-form", H.top()))
    holders = [mono for mono, d in degs.items() if d == maxdeg]
    if holders != [top_mono]:
        rep.top_unique = False
        rep.violations.append(("top", holders))
    return rep


# ---------------------------------------------------------------------------
# squares and powers

def theta_square_check(rs, t, gamma, lam, element=None) -> bool:
    """theta_gamma(lam - gamma) theta_gamma(lam) = 0 for isotropic gamma."""
    gamma = tuple(gamma)
    if not rs.positive[rs.index(gamma)].isotropic:
        raise DomainError("gamma must be isotropic")
    if element is None:
        element = construct(rs, gamma, 1, table=t).element
    lam = tuple(Fraction(x) for x in lam)
    if not hyperplane_for(rs, gamma, 1).contains(lam):
        raise DomainError("lam is not on the hyperplane")
    lam2 = tuple(a - b for a, b in zip(lam, gamma))
    return not multiply(specialize(element, lam2), specialize(element, lam))


def _shifted_bases(rs, word, gamma, m, lam):
    """Base weights w^{-1}.(lam - i gamma) = nu - i beta for i < m."""
    nu = base_weight(rs, word, lam)
    beta = rs.simple_vecs[word.base]
    return [tuple(a - i * b for a, b in zip(nu, beta)) for i in range(m)]


def word_divisible_off_hyperplane(rs, t, gamma, m, word, lams):
    """Whether the per-point recursion for theta_{gamma,1} along word is
    right-divisible at every shifted base weight nu - i beta, i < m."""
    order = make_order(rs)
    for lam in lams:
        for nu in _shifted_bases(rs, word, gamma, m, lam):
            try:
                recursion_at(rs, t, word, 1, nu, order)
            except (ConsistencyError, DomainError):
                return False
    return True


def power_word(rs, t, gamma, m, count=2):
    """A fixed minimal word along which theta_{gamma,1} is defined by the
    recursion at the shifted points the power identity evaluates it at.
    Falls back to the default word when none qualifies."""
    gamma = tuple(gamma)
    sub = choose_subgroup(rs, gamma)
    words = minimal_words(rs, gamma, sub)
    for w in words:
        lams = hyperplane_sample(rs, gamma, m, count, word=w)
        if word_divisible_off_hyperplane(rs, t, gamma, m, w, lams):
            return w
    return minimal_word(rs, gamma, sub)


def theta_power_check(rs, t, gamma, m, lam, word=None, elements=None) -> bool:
    """theta_{gamma,m}(lam) = theta_{gamma,1}(lam-(m-1)gamma) ... theta_{gamma,1}(lam)
    with one fixed word for every factor (power_word by default)."""
    gamma = tuple(gamma)
    if rs.positive[rs.index(gamma)].isotropic:
        raise DomainError("gamma must be non-isotropic")
    if elements is None:
        if word is None:
            word = power_word(rs, t, gamma, m)
        big = construct(rs, gamma, m, word=word, table=t)
        one = construct(rs, gamma, 1, word=word, table=t)
    else:
        big, one = elements
    lam = tuple(Fraction(x) for x in lam)
    if not big.hyperplane.contains(lam):
        raise DomainError("lam is not on the hyperplane")
    lhs = specialize(big.element, lam)
    prod = None
    for i in range(m - 1, -1, -1):
        f = specialize(one.raw, tuple(x - i * g for x, g in zip(lam, gamma)))
        f = reorder(f, lhs.pbw.order)
        prod = f if prod is None else multiply(prod, f)
    return prod == lhs


# ---------------------------------------------------------------------------
# Borel chains

def _ratio(v, w):
    """c with v = c w for {mono: Fraction} vectors, or None."""
    if not w:
        return Fraction(0) if not v else None
    key = next(iter(w))
    c = v.get(key, Fraction(0)) / w[key]
    for k in set(v) | set(w):
        if v.get(k, 0) != c * w.get(k, 0):
            return None
    return c


class ForeignAction:
    """Elements of U(n^-) for another Borel of gl(m|n), acting on a Verma
    module built from the distinguished one (same matrices)."""

    def __init__(self, target: StructureTable, source: StructureTable):
        self.target = target
        self.source = source
        self.dec = {k: target.decompose(source.matrices[source.neg(k)])
                    for k in range(source.K)}

    def apply(self, M, u: UNElement, vec):
        out = {}
        for mono, c in u.terms.items():
            cur = vec
            for g in reversed(u.pbw.word(mono)):
                cur = M.act_combination(self.dec[g], cur)
                if not cur:
                    break
            for k2, v2 in cur.items():
                _acc(out, k2, c * v2)
        return out


@dataclass
class ChainReport:
    constant: Fraction | None
    constants: list
    links_ok: bool
    link_values: list
    removable: set
    lead_constant: Fraction | None = None

    @property
    def ok(self):
        return self.constant is not None and self.constant != 0 and self.links_ok and \
            self.lead_constant not in (None, 0)


def chain_borels(rs, gamma):
    """The chain and, per Borel along it, (root system, structure table)."""
    chain = borel_chain(rs, gamma)
    out = []
    for sh in chain.shuffles:
        rsi = rs if sh == list(rs.shuffle) else build_root_system("gl", rs.m, rs.n, sh)
        out.append((rsi, table_for(rsi)))
    return chain, out


def _shifted(rs, lam, a):
    return pair(rs, tuple(x + r for x, r in zip(lam, rs.rho)), a)


def borel_chain_check(rs, t, gamma, lams, theta=None) -> ChainReport:
    """Sandwich e_{a1}..e_{ar} e_{-gamma} e_{-ar}..e_{-a1} v_lam against
    prod_{i in F}(lam+rho, a_i) theta_gamma(lam) v_lam, plus g_i h_i per link.

    theta^{(i)} for the intermediate Borels is the normalized singular vector
    of M_{b^{(i)}}(lam_i), found by linear algebra; theta^{(0)} is the
    constructed element."""
    from .verma import singular_vector, verma_module
    gamma = tuple(gamma)
    chain, borels = chain_borels(rs, gamma)
    if theta is None:
        theta = construct(rs, gamma, 1, table=t)
    acts = [ForeignAction(t, ti) for _, ti in borels]
    kg = rs.index(gamma)
    consts = []
    links_ok = True
    link_values = []
    for lam in lams:
        lam = tuple(Fraction(x) for x in lam)
        if any(_shifted(rs, lam, a) == 0 for a in chain.alphas):
            raise DomainError("untypical change of Borel at this lam")
        M = verma_module(t, lam)
        vec = M.highest()
        vs = [vec]
        for a in chain.alphas:
            vec = M.act(t.neg(rs.index(a)), vec)
            vs.append(vec)
        vec = M.act(t.neg(kg), vec)
        for a in reversed(chain.alphas):
            vec = M.act(t.pos(rs.index(a)), vec)
        factor = Fraction(1)
        for i in chain.removable:
            factor *= _shifted(rs, lam, chain.alphas[i])
        target = M.vector(specialize(theta.element, lam))
        consts.append(_ratio(vec, {k: v * factor for k, v in target.items()}))
        # links: theta^{(i)} acting at v_i, whose b^{(i)} weight is lam_i
        lams_i = [lam]
        for a in chain.alphas:
            lams_i.append(tuple(x - y for x, y in zip(lams_i[-1], a)))
        thetas = [specialize(theta.element, lam)]
        for (rsi, ti), li in zip(borels[1:], lams_i[1:]):
            u = singular_vector(ti, li, gamma)
            if u is None:
                raise DomainError("singular vector is not unique at this lam")
            thetas.append(u)
        applied = [acts[i].apply(M, thetas[i], vs[i]) for i in range(len(borels))]
        vals = []
        for i, a in enumerate(chain.alphas, start=1):
            ka = rs.index(a)
            h = _ratio(M.act(t.pos(ka), applied[i]), applied[i - 1])
            up = M.act(t.pos(ka), vs[i])
            g = _ratio(M.act(t.neg(ka), acts[i - 1].apply(M, thetas[i - 1], up)), applied[i])
            want = _shifted(rs, lam, a) * _shifted(rs, tuple(x - y for x, y in zip(lam, gamma)), a)
            ok = g is not None and h is not None and g * h == want
            links_ok = links_ok and ok
            vals.append((g, h, want))
        link_values.append(vals)
    const = consts[0] if consts and all(c == consts[0] for c in consts) else None
    # leading coefficient of e_{-gamma} against prod (lam, a_i), up to a constant
    mono = [0] * len(rs.positive)
    mono[kg] = 1
    coef = theta.element.terms.get(tuple(mono), HPoly(rs.dim))
    f = HPoly.const(rs.dim, 1)
    for i in chain.removable:
        f = f * pairing_poly(rs, chain.alphas[i], coroot=False)
    lead = HPoly.const(rs.dim, 1)
    for a in chain.alphas:
        lead = lead * pairing_poly(rs, a, shifted=False, coroot=False)
    hyp = theta.hyperplane
    lc = proportional(hyp.reduce(coef * f).top(), hyp.reduce(lead).top())
    return ChainReport(const, consts, links_ok, link_values, chain.removable, lc)


# ---------------------------------------------------------------------------
# worked example: gamma = b + 2a1 + a2 in osp(2,4) (and sp(6))
#
# Along the word s_1 s_2 s_1 the intermediate elements are theta_1, theta_2,
# theta_3 for b+a1, b+a1+a2, b+2a1+a2.  p, q, r are the pairings of the base
# weight nu with a1^vee, (2a1+a2)^vee, (a1+a2)^vee; r = 2q - p.

EXAMPLE_WORD = WeylWord((1, 2, 1), 0)
EXAMPLE_STAGE_WORDS = {1: (1,), 2: (2, 1), 3: (1, 2, 1)}
EXAMPLE_ROOTS = {1: "b+a1", 2: "b+a1+a2", 3: "b+2a1+a2"}


def _example_rs_check(rs):
    from .rootdata import simple_names
    if simple_names(rs) != ["b", "a1", "a2"]:
        raise DomainError("the worked example needs distinguished osp(2,4) or sp(6)")


def example_parameters(rs, stage):
    """(p, q, r) as polynomials in the weight at which theta_stage acts:
    (nu + rho, v^vee) = (lam + rho, (w v)^vee) for lam = w.nu."""
    from .rootdata import parse_root
    _example_rs_check(rs)
    w = EXAMPLE_STAGE_WORDS[stage]
    out = []
    for text in ("a1", "2a1+a2", "a1+a2"):
        v = apply_word(rs, w, parse_root(rs, text))
        out.append(pairing_poly(rs, v))
    return tuple(out)


# fixtures: (coefficient as a function of p, q, r, root names left to right)
EXAMPLE_FIXTURES = {
    "theta1": (1, "cosp", [
        (lambda p, q, r: p + 1, ["b+a1"]),
        (lambda p, q, r: 1, ["b", "a1"])]),
    "theta1-opposite": (1, "cosp-opposite", [
        (lambda p, q, r: p, ["b+a1"]),
        (lambda p, q, r: 1, ["a1", "b"])]),
    "theta2": (2, "odd-first-a2-last", [
        (lambda p, q, r: (p + 1) * (q + 1), ["b+a1+a2"]),
        (lambda p, q, r: p + 1, ["b+a1", "a2"]),
        (lambda p, q, r: 1, ["b", "a1", "a2"]),
        (lambda p, q, r: -(q + 1), ["b", "a1+a2"])]),
    "theta2-opposite": (2, "odd-last-a2-first", [
        (lambda p, q, r: p * q, ["b+a1+a2"]),
        (lambda p, q, r: p, ["a2", "b+a1"]),
        (lambda p, q, r: 1, ["a2", "a1", "b"]),
        (lambda p, q, r: -q, ["a1+a2", "b"])]),
    "theta3": (3, "cosp", [
        (lambda p, q, r: (p + 1) * (q + 1) * (r + 1), ["b+2a1+a2"]),
        (lambda p, q, r: (p + 1) * (q + 1), ["b+a1+a2", "a1"]),
        (lambda p, q, r: (q + 1) * (r + 1), ["b+a1", "a1+a2"]),
        (lambda p, q, r: -p * Fraction(1, 2) * (r + 1), ["b", "2a1+a2"]),
        (lambda p, q, r: 2 * (q + 1), ["b+a1", "a2", "a1"]),
        (lambda p, q, r: r - q + 1, ["b", "a1+a2", "a1"]),
        (lambda p, q, r: 1, ["b", "a2", "a1", "a1"])]),
    "theta3-opposite": (3, "cosp-opposite", [
        (lambda p, q, r: p * q * r, ["b+2a1+a2"]),
        (lambda p, q, r: p * q, ["a1", "b+a1+a2"]),
        (lambda p, q, r: q * r, ["a1+a2", "b+a1"]),
        (lambda p, q, r: -r * Fraction(1, 2) * (p + 1), ["2a1+a2", "b"]),
        (lambda p, q, r: 2 * q, ["a1", "a2", "b+a1"]),
        (lambda p, q, r: r - q - 1, ["a1", "a1+a2", "b"]),
        (lambda p, q, r: 1, ["a1", "a1", "a2", "b"])]),
}


def example_order(rs, name):
    """Root orders of the worked example."""
    if name in ("cosp", "cosp-opposite"):
        return make_order(rs, name)
    a2 = rs.simple[2]
    canon = range(len(rs.positive))
    odd = [k for k in canon if rs.positive[k].parity or rs.simple_coords(rs.positive[k].vec)[0] > 0]
    even = [k for k in canon if k not in odd and k != a2]
    order = odd + even + [a2]
    if name == "odd-first-a2-last":
        return tuple(order)
    if name == "odd-last-a2-first":
        return tuple(reversed(order))
    raise DomainError(f"unknown example order {name}")


def fixture_element(rs, t, name):
    """A displayed fixture as a symbolic element; every displayed word must
    already be a PBW monomial of its order."""
    from .rootdata import parse_root
    from .uea import straighten
    stage, oname, terms = EXAMPLE_FIXTURES[name]
    pbw = pbw_for(t, example_order(rs, oname))
    p, q, r = example_parameters(rs, stage)
    out = {}
    for coef, word in terms:
        ks = [rs.index(parse_root(rs, x)) for x in word]
        u = straighten(pbw, ks)
        if len(u.terms) != 1 or next(iter(u.terms.values())) != 1 or \
                list(pbw.word(next(iter(u.terms)))) != ks:
            raise DomainError(f"{' '.join(word)} is not ordered in {oname}")
        c = coef(p, q, r)
        if not isinstance(c, HPoly):
            c = HPoly.const(rs.dim, c)
        _acc(out, next(iter(u.terms)), c)
    return UBElement(pbw, out)


def example_construction(rs, t=None):
    """The inductive construction of theta_3 along s_1 s_2 s_1."""
    from .rootdata import parse_root
    _example_rs_check(rs)
    return construct(rs, parse_root(rs, "b+2a1+a2"), 1, order="cosp", word=EXAMPLE_WORD,
                     table=t or table_for(rs))


def fixture_check(rs, t, name, s=None):
    """Constructed stage element equals the fixture modulo its hyperplane,
    term for term in the fixture's order."""
    s = s or example_construction(rs, t)
    stage = EXAMPLE_FIXTURES[name][0]
    gamma, raw = s.steps[stage]
    want = fixture_element(rs, t, name)
    hyp = hyperplane_for(rs, gamma, 1)
    got = reduce_element(reorder(raw, want.pbw.order), hyp)
    return got.terms == reduce_element(want, hyp).terms


# factorizations at special values of p, q, r:
# (label, stage, parameter, value, left factor, right factor, explicit fixture)
EXAMPLE_FACTORIZATIONS = [
    ("p=0", 3, 0, 0, "a1+a2", "b+a1", "p=0"),
    ("q=0", 2, 1, 0, "a2", "b+a1", None),
    ("q=0", 3, 1, 0, "2a1+a2", "b", "q=0"),
    ("r=0", 3, 2, 0, "a1", "b+a1+a2", "r=0"),
    ("p=-1", 3, 0, -1, "b+a1", "a1+a2", None),
    ("q=-1", 2, 1, -1, "b+a1", "a2", None),
    ("q=-1", 3, 1, -1, "b", "2a1+a2", None),
    ("r=-1", 3, 2, -1, "b+a1+a2", "a1", None),
]

# explicit specialized forms (cosp-opposite order), coefficients in q or p
EXAMPLE_SPECIAL = {
    "p=0": [(lambda p, q: 2 * q * q, ["a1+a2", "b+a1"]), (lambda p, q: -q, ["2a1+a2", "b"]),
            (lambda p, q: 2 * q, ["a1", "a2", "b+a1"]), (lambda p, q: q - 1, ["a1", "a1+a2", "b"]),
            (lambda p, q: 1, ["a1", "a1", "a2", "b"])],
    "q=0": [(lambda p, q: Fraction(p, 2) * (p + 1), ["2a1+a2", "b"]),
            (lambda p, q: -(p + 1), ["a1", "a1+a2", "b"]),
            (lambda p, q: 1, ["a1", "a1", "a2", "b"])],
    "r=0": [(lambda p, q: 2 * q * q, ["a1", "b+a1+a2"]), (lambda p, q: 2 * q, ["a1", "a2", "b+a1"]),
            (lambda p, q: -(q + 1), ["a1", "a1+a2", "b"]), (lambda p, q: 1, ["a1", "a1", "a2", "b"])],
}


def example_points(rs, param, value, count):
    """Base weights nu on the hyperplane of b (m = 1) with the given
    parameter (0: p, 1: q, 2: r) fixed, walking outward over the others."""
    from .rootdata import weight_from_pairings, parse_root
    vecs = [parse_root(rs, x) for x in ("a1", "2a1+a2", "a1+a2")]
    b = 0 if rs.positive[rs.simple[0]].isotropic else 1
    out = []
    for a in range(-6, 7):
        for x in range(-6, 7):
            nu = weight_from_pairings(rs, [b, a, x])
            sh = tuple(u + v for u, v in zip(nu, rs.rho))
            vals = [copair(rs, sh, v) for v in vecs]
            if vals[param] == value:
                out.append((nu, vals))
    out.sort(key=lambda z: (abs(z[1][0]) + abs(z[1][1]) + abs(z[1][2]), z[1]))
    return out[:count]


@dataclass
class FactorizationRecord:
    label: str
    stage: int
    pqr: tuple
    on_hyperplanes: bool
    factors: bool
    explicit: bool | None

    @property
    def ok(self):
        return self.on_hyperplanes and self.factors and self.explicit is not False


def example_factorizations(rs, t=None, count=3, s=None):
    from .rootdata import parse_root
    from .uea import straighten
    t = t or table_for(rs)
    s = s or example_construction(rs, t)
    records = []
    for label, stage, param, value, left, right, special in EXAMPLE_FACTORIZATIONS:
        gamma_k, raw = s.steps[stage]
        elem = reduce_element(raw, hyperplane_for(rs, gamma_k, 1))
        gl_, gr_ = parse_root(rs, left), parse_root(rs, right)
        fl = construct(rs, gl_, 1, table=t)
        fr = construct(rs, gr_, 1, table=t)
        for nu, vals in example_points(rs, param, value, count):
            lam = apply_word(rs, EXAMPLE_STAGE_WORDS[stage], nu, dot=True)
            lam_l = tuple(a - b for a, b in zip(lam, gr_))
            on = hyperplane_for(rs, gamma_k, 1).contains(lam) and fr.hyperplane.contains(lam) \
                and fl.hyperplane.contains(lam_l)
            lhs = reorder(specialize(elem, lam), make_order(rs, "cosp-opposite"))
            prod = reorder(multiply(specialize(fl.element, lam_l),
                                    reorder(specialize(fr.element, lam), fl.order)), lhs.pbw.order)
            explicit = None
            if special is not None:
                pbw = lhs.pbw
                want = {}
                for coef, word in EXAMPLE_SPECIAL[special]:
                    u = straighten(pbw, [rs.index(parse_root(rs, x)) for x in word])
                    c = Fraction(coef(vals[0], vals[1]))
                    for mono, v in u.terms.items():
                        _acc(want, mono, c * v)
                explicit = want == lhs.terms
            records.append(FactorizationRecord(label, stage, tuple(vals), on, prod == lhs, explicit))
    return records
