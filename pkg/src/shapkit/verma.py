"""Verma modules M(lam): vectors are u v_lam with u in U(n^-)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .liealg import StructureTable
from .rootdata import (DomainError, RootSystem, copair, enumerate_partitions, format_root,
                       pair, partition_weight)
from .uea import UNElement, make_order, pbw_for, reorder, specialize


@dataclass
class VermaVector:
    lam: tuple
    u: UNElement

    def __bool__(self):
        return bool(self.u)


@dataclass
class LambdaSets:
    A0: list
    A1: list
    B: list


class VermaModule:
    """Action of g on M(lam) through straightening; memoized per monomial."""

    def __init__(self, table: StructureTable, lam, order=None):
        self.t = table
        self.rs = table.rs
        self.lam = tuple(Fraction(x) for x in lam)
        self.pbw = pbw_for(table, order if order is not None else make_order(self.rs))
        self._raise = {}

    def _acc(self, out, vec, c):
        for k, v in vec.items():
            s = out.get(k, 0) + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)

    def act_basis(self, b, mono):
        """x_b * e_{-mono} v_lam as {mono: Fraction}."""
        kind, i = self.t.kind(b)
        if kind == "neg":
            return self.pbw.gen_times(i, mono)
        if kind == "h":
            wt = partition_weight(self.rs, mono)
            c = self.lam[i] - wt[i]
            return {mono: c} if c else {}
        return self._raise_mono(b, mono)

    def _raise_mono(self, b, mono):
        key = (b, mono)
        hit = self._raise.get(key)
        if hit is not None:
            return hit
        first = None
        for k in self.pbw.order:
            if mono[k]:
                first = k
                break
        out = {}
        if first is not None:
            rest = list(mono)
            rest[first] -= 1
            rest = tuple(rest)
            # e_b e_{-f} = [e_b, e_{-f}] + sign e_{-f} e_b
            for c_idx, c in self.t.table[(b, first)].items():
                self._acc(out, self.act_basis(c_idx, rest), c)
            sign = -1 if self.t.parities[b] and self.t.parities[first] else 1
            for m2, c2 in self._raise_mono(b, rest).items():
                self._acc(out, self.pbw.gen_times(first, m2), sign * c2)
        self._raise[key] = out
        return out

    def act(self, b, vec):
        """x_b acting on a vector given as {mono: Fraction}."""
        out = {}
        for mono, c in vec.items():
            self._acc(out, self.act_basis(b, mono), c)
        return out

    def act_combination(self, x, vec):
        out = {}
        for b, c in x.items():
            self._acc(out, self.act(b, vec), c)
        return out

    def vector(self, u):
        """u v_lam for an element of U(n^-) in any order."""
        if u.pbw is not self.pbw:
            u = reorder(u, self.pbw.order)
        return dict(u.terms)

    def highest(self):
        return {self.pbw.unit(): Fraction(1)}


_MODULES = {}


def verma_module(t: StructureTable, lam, order=None) -> VermaModule:
    lam = tuple(Fraction(x) for x in lam)
    order = tuple(order) if order is not None else make_order(t.rs)
    key = (id(t), lam, order)
    M = _MODULES.get(key)
    if M is None:
        if len(_MODULES) > 256:
            _MODULES.clear()
        M = VermaModule(t, lam, order)
        _MODULES[key] = M
    return M


def act_raising(t: StructureTable, alpha, v: VermaVector) -> VermaVector:
    """e_alpha . v for alpha a positive root (vector or index)."""
    rs = t.rs
    k = alpha if isinstance(alpha, int) else rs.index(alpha)
    M = verma_module(t, v.lam, v.u.pbw.order)
    vec = M.act(t.pos(k), dict(v.u.terms))
    return VermaVector(v.lam, UNElement(M.pbw, vec))


def is_highest_weight(t: StructureTable, v: VermaVector) -> bool:
    return all(not act_raising(t, k, v) for k in t.rs.simple)


def theta_vector(t, element, lam) -> VermaVector:
    """theta(lam) v_lam for a symbolic or numeric element."""
    u = specialize(element, lam)
    return VermaVector(tuple(Fraction(x) for x in lam), u)


# ---------------------------------------------------------------------------
# the sets A(lam), B(lam)

def lambda_sets(rs: RootSystem, lam) -> LambdaSets:
    shifted = tuple(Fraction(x) + r for x, r in zip(lam, rs.rho))
    A0, A1, B = [], [], []
    for r in rs.positive:
        if not r.parity:
            if rs.is_even_half(r.vec):
                continue
            c = copair(rs, shifted, r.vec)
            if c.denominator == 1 and c > 0:
                A0.append(r.vec)
        elif r.isotropic:
            if pair(rs, shifted, r.vec) == 0:
                B.append(r.vec)
        else:
            c = copair(rs, shifted, r.vec)
            if c.denominator == 1 and c > 0 and c % 2 == 1:
                A1.append(r.vec)
    return LambdaSets(A0, A1, B)


def _even_cone(rs, vec):
    """Whether vec is a nonnegative integer combination of positive even roots."""
    if not any(vec):
        return True
    evens = [r.vec for r in rs.positive if not r.parity]
    target = [Fraction(c) for c in rs.simple_coords(vec)]
    if any(c < 0 or c.denominator != 1 for c in target):
        return False
    coords = [rs.simple_coords(v) for v in evens]
    seen = {}

    def rec(i, rem):
        if not any(rem):
            return True
        if i == len(coords):
            return False
        key = (i, tuple(rem))
        if key in seen:
            return seen[key]
        res = rec(i + 1, rem)
        r2 = list(rem)
        while not res:
            r2 = [a - b for a, b in zip(r2, coords[i])]
            if any(a < 0 for a in r2):
                break
            res = rec(i + 1, r2)
        seen[key] = res
        return res

    return rec(0, target)


def below(rs, g1, g2):
    """g1 <= g2: g2 - g1 is a sum of positive even roots."""
    return _even_cone(rs, tuple(a - b for a, b in zip(g2, g1)))


def lambda_minimal(rs: RootSystem, lam, gamma) -> bool:
    gamma = tuple(gamma)
    B = lambda_sets(rs, lam).B
    if gamma not in B:
        raise DomainError("gamma is not in B(lam)")
    for g in B:
        if g != gamma and below(rs, g, gamma) and pair(rs, g, gamma) != 0:
            return False
    return True


def _rank(rows):
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).rank()


@dataclass
class IndependenceReport:
    lam: tuple
    gamma: tuple
    minimal: bool
    independent: bool
    witness_coefficient: Fraction

    def record(self, rs):
        return {"lambda": [str(x) for x in self.lam], "gamma": format_root(rs, self.gamma),
                "minimal": self.minimal, "independent": self.independent,
                "witness_coefficient": str(self.witness_coefficient)}


def independent(rs: RootSystem, t: StructureTable, lam, gamma, theta_of=None) -> IndependenceReport:
    """Decide whether theta_gamma v_lam lies outside the sum of
    U(n^-) theta_{gamma'} v_lam over the other gamma' in B(lam)."""
    from .shap import construct
    gamma = tuple(gamma)
    lam = tuple(Fraction(x) for x in lam)
    sets = lambda_sets(rs, lam)
    if gamma not in sets.B:
        raise DomainError("gamma is not in B(lam)")
    if theta_of is None:
        def theta_of(g):
            return construct(rs, g, 1, order="odd-last").element
    order = make_order(rs, "odd-last")
    pbw = pbw_for(t, order)
    target = reorder(specialize(theta_of(gamma), lam), order)
    span = []
    for g in sets.B:
        if g == gamma:
            continue
        diff = tuple(a - b for a, b in zip(gamma, g))
        try:
            parts = enumerate_partitions(rs, diff) if any(diff) else [pbw.unit()]
        except DomainError:
            continue
        if not parts:
            continue
        th = reorder(specialize(theta_of(g), lam), order)
        for pi in parts:
            vec = {}
            for mono, c in th.terms.items():
                for m2, c2 in pbw.mono_times(pi, mono).items():
                    vec[m2] = vec.get(m2, 0) + c * c2
            span.append(vec)
    keys = sorted({k for v in span for k in v} | set(target.terms))
    rows = [[v.get(k, Fraction(0)) for k in keys] for v in span]
    r0 = _rank(rows)
    r1 = _rank(rows + [[target.terms.get(k, Fraction(0)) for k in keys]])
    witness_mono = [0] * len(rs.positive)
    witness_mono[rs.index(gamma)] = 1
    return IndependenceReport(lam, gamma, lambda_minimal(rs, lam, gamma), r1 > r0,
                              target.terms.get(tuple(witness_mono), Fraction(0)))


# ---------------------------------------------------------------------------
# Kac modules

def is_dominant(rs: RootSystem, lam):
    for r in rs.positive:
        if r.parity:
            continue
        c = copair(rs, lam, r.vec)
        if c.denominator != 1 or c < 0:
            return False
    return True


@dataclass
class KacReport:
    nonzero: bool
    coefficient: Fraction
    product: Fraction
    matches: bool


def kac_product(rs: RootSystem, lam, r, s):
    """prod_k (1 - (lam+rho, sigma_{r,r+k}^vee)) prod_k (1 - (lam+rho, tau_{k,s}^vee))."""
    shifted = tuple(Fraction(x) + c for x, c in zip(lam, rs.rho))
    m = rs.m
    out = Fraction(1)
    for k in range(1, m - r + 1):
        sig = [0] * rs.dim
        sig[r - 1] += 1
        sig[r + k - 1] -= 1
        out *= 1 - copair(rs, shifted, sig)
    for k in range(1, s):
        tau = [0] * rs.dim
        tau[m + k - 1] += 1
        tau[m + s - 1] -= 1
        out *= 1 - copair(rs, shifted, tau)
    return out


def kac_survival(rs: RootSystem, t: StructureTable, lam, gamma, element=None) -> KacReport:
    """Coefficient of the lone odd generator e_{-gamma} in theta_gamma(lam)
    written with odd root vectors leftmost."""
    from .shap import construct
    if rs.family != "gl":
        raise DomainError("Kac survival is implemented for gl(m|n)")
    gamma = tuple(gamma)
    lam = tuple(Fraction(x) for x in lam)
    lam_g = tuple(a - b for a, b in zip(lam, gamma))
    if not (is_dominant(rs, lam) and is_dominant(rs, lam_g)):
        raise DomainError("lam and lam - gamma must be dominant integral")
    shifted = tuple(x + c for x, c in zip(lam, rs.rho))
    if pair(rs, shifted, gamma) != 0:
        raise DomainError("lam is not on the hyperplane of gamma")
    r = next(i for i in range(rs.m) if gamma[i] == 1) + 1
    s = next(j for j in range(rs.n) if gamma[rs.m + j] == -1) + 1
    if element is None:
        element = construct(rs, gamma, 1, order="odd-first").element
    u = reorder(specialize(element, lam), make_order(rs, "odd-first"))
    mono = [0] * len(rs.positive)
    mono[rs.index(gamma)] = 1
    coef = u.terms.get(tuple(mono), Fraction(0))
    prod = kac_product(rs, lam, r, s)
    return KacReport(coef != 0, coef, prod, coef in (prod, -prod))


# ---------------------------------------------------------------------------
# singular vectors by linear algebra

def singular_vector(t: StructureTable, lam, eta, order=None, normalize=None):
    """The highest weight vector of weight lam - eta in M(lam), as an element
    of U(n^-) with the simple-root partition coefficient 1.  Returns None
    when that weight space of singular vectors is not one dimensional or the
    normalizing coefficient vanishes."""
    from .rootdata import simple_partition
    rs = t.rs
    M = verma_module(t, lam, order)
    parts = enumerate_partitions(rs, tuple(eta))
    rows = {}
    for j, pi in enumerate(parts):
        for s, k in enumerate(rs.simple):
            for mono, c in M.act(t.pos(k), {pi: Fraction(1)}).items():
                rows.setdefault((s, mono), [Fraction(0)] * len(parts))[j] += c
    A = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows.values()]) \
        if rows else sympy.zeros(1, len(parts))
    ns = A.nullspace()
    if len(ns) != 1:
        return None
    pi0 = normalize or simple_partition(rs, tuple(eta))
    v = ns[0]
    c0 = v[parts.index(pi0)]
    if c0 == 0:
        return None
    terms = {}
    for j, pi in enumerate(parts):
        x = v[j] / c0
        if x != 0:
            terms[pi] = Fraction(int(x.p), int(x.q))
    return UNElement(M.pbw, terms)
