"""PBW arithmetic in U(n^-) and U(b^-) = U(n^-) (x) S(h).

A PBW monomial e_{-pi} is an exponent tuple over ``rs.positive``; the root
order decides the factor order.  Elements of U(b^-) are written
sum_pi e_{-pi} H_pi with H_pi in S(h) on the right, viewed as polynomial
functions of the weight lam on which the element acts.
"""
from __future__ import annotations

import sys
from fractions import Fraction
from math import comb

from .liealg import StructureTable, table_for
from .rootdata import DomainError, RootSystem, format_root, parse_root, partition_weight

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


# ---------------------------------------------------------------------------
# polynomials on h*

class HPoly:
    """Polynomial in the weight coordinates with Fraction coefficients."""
    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = terms if terms is not None else {}

    @classmethod
    def const(cls, n, c):
        c = Fraction(c)
        return cls(n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, n, i):
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, n, coeffs, const=0):
        out = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                out[tuple(e)] = Fraction(c)
        if const:
            out[(0,) * n] = Fraction(const)
        return cls(n, out)

    def _lift(self, other):
        if isinstance(other, HPoly):
            return other
        return HPoly.const(self.n, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return HPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return HPoly(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, HPoly):
            c = Fraction(other)
            if not c:
                return HPoly(self.n)
            return HPoly(self.n, {k: v * c for k, v in self.terms.items()})
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                s = out.get(k, 0) + v1 * v2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return HPoly(self.n, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __pow__(self, e):
        out = HPoly.const(self.n, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            other = HPoly.const(self.n, other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_constant(self):
        return all(not any(k) for k in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.n, Fraction(0))

    def degree(self):
        return max((sum(k) for k in self.terms), default=-1)

    def homogeneous_part(self, d):
        return HPoly(self.n, {k: v for k, v in self.terms.items() if sum(k) == d})

    def top(self):
        return self.homogeneous_part(self.degree())

    def evaluate(self, point):
        total = Fraction(0)
        pt = [Fraction(x) for x in point]
        for k, v in self.terms.items():
            t = v
            for x, e in zip(pt, k):
                if e:
                    t *= x ** e
            total += t
        return total

    def compose(self, polys):
        """Substitute variable i by polys[i]."""
        cache = {}

        def pw(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = polys[i] ** e
            return cache[key]

        n = polys[0].n if polys else self.n
        out = HPoly(n)
        for k, v in self.terms.items():
            t = HPoly.const(n, v)
            for i, e in enumerate(k):
                if e:
                    t = t * pw(i, e)
            out = out + t
        return out

    def shift(self, vec):
        """H(lam - vec)."""
        if not any(vec) or self.is_constant():
            return self
        polys = [HPoly.linear(self.n, [int(i == j) for j in range(self.n)], -Fraction(vec[i]))
                 for i in range(self.n)]
        return self.compose(polys)

    def format(self, names):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (-sum(k), tuple(-x for x in k))):
            v = self.terms[k]
            mono = "*".join(f"{names[i]}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k) if e)
            if mono:
                coef = "" if v == 1 else "-" if v == -1 else f"{v}*"
                parts.append(f"{coef}{mono}")
            else:
                parts.append(f"{v}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"HPoly({self.format([f'x{i}' for i in range(self.n)])})"


def binomial_poly(P: HPoly, j):
    """P(P-1)...(P-j+1)/j!"""
    out = HPoly.const(P.n, 1)
    for i in range(j):
        out = out * (P - i)
    if j > 1:
        f = 1
        for i in range(2, j + 1):
            f *= i
        out = out * Fraction(1, f)
    return out


class Hyperplane:
    """Reduction modulo the ideal of {sum coeffs*x + const = 0}: the first
    variable with a nonzero coefficient is eliminated."""

    def __init__(self, n, coeffs, const):
        self.n = n
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self.const = Fraction(const)
        self.pivot = next(i for i, c in enumerate(self.coeffs) if c)
        cp = self.coeffs[self.pivot]
        self.sub = HPoly.linear(n, [(-c / cp if i != self.pivot else 0) for i, c in enumerate(self.coeffs)],
                                -self.const / cp)
        self._pows = {0: HPoly.const(n, 1)}

    def _pow(self, e):
        if e not in self._pows:
            self._pows[e] = self._pow(e - 1) * self.sub
        return self._pows[e]

    def reduce(self, P):
        if not isinstance(P, HPoly):
            return P
        piv = self.pivot
        out = {}
        for k, v in P.terms.items():
            e = k[piv]
            if not e:
                s = out.get(k, 0) + v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
                continue
            base = list(k)
            base[piv] = 0
            for k2, v2 in self._pow(e).terms.items():
                kk = tuple(a + b for a, b in zip(base, k2))
                s = out.get(kk, 0) + v * v2
                if s:
                    out[kk] = s
                else:
                    out.pop(kk, None)
        return HPoly(self.n, out)

    def contains(self, point):
        return sum(c * Fraction(x) for c, x in zip(self.coeffs, point)) + self.const == 0


def hyperplane_for(rs: RootSystem, gamma, m=1) -> Hyperplane:
    from .rootdata import hyperplane_form
    coeffs, const = hyperplane_form(rs, gamma, m)
    return Hyperplane(rs.dim, coeffs, const)


def pairing_poly(rs: RootSystem, alpha, shifted=True, coroot=True):
    """lam -> (lam + rho, alpha^vee) (or without rho / coroot scaling)."""
    from .rootdata import pair
    n = pair(rs, alpha, alpha)
    scale = Fraction(2) / n if coroot and n else Fraction(1)
    coeffs = [scale * s * a for s, a in zip(rs.signs, alpha)]
    const = sum(c * r for c, r in zip(coeffs, rs.rho)) if shifted else 0
    return HPoly.linear(rs.dim, coeffs, const)


# ---------------------------------------------------------------------------
# root orders and the PBW engine

def _acc(d, k, v):
    s = d.get(k, 0) + v
    if s:
        d[k] = s
    else:
        d.pop(k, None)


class PBW:
    """Straightening in U(n^-) for one root order (a permutation of the
    indices of rs.positive; the first entry is the leftmost factor)."""

    def __init__(self, table: StructureTable, order):
        self.t = table
        self.rs = table.rs
        self.K = len(self.rs.positive)
        self.order = tuple(order)
        if sorted(self.order) != list(range(self.K)):
            raise DomainError("order must be a permutation of the positive roots")
        self.pos = [0] * self.K
        for i, k in enumerate(self.order):
            self.pos[k] = i
        self.parity = [r.parity for r in self.rs.positive]
        self.iso = [r.isotropic for r in self.rs.positive]
        self.double = {}
        for k, r in enumerate(self.rs.positive):
            if r.parity and not r.isotropic:
                sq = table.table[(k, k)]  # [e_{-a}, e_{-a}] = c e_{-2a}
                (k2, c), = sq.items()
                self.double[k2] = (k, Fraction(2) / c)
        self.nb = {}
        for g in range(self.K):
            for f in range(self.K):
                self.nb[(g, f)] = tuple(table.table[(g, f)].items())
        self._gm = {}
        self._mm = {}

    def unit(self):
        return (0,) * self.K

    def word(self, mono):
        out = []
        for k in self.order:
            out.extend([k] * mono[k])
        return out

    def gen_times(self, g, mono):
        """e_{-g} * e_{-mono} as {mono: Fraction}."""
        key = (g, mono)
        hit = self._gm.get(key)
        if hit is not None:
            return hit
        if g in self.double:
            a, c = self.double[g]
            res = {}
            for m1, c1 in self.gen_times(a, mono).items():
                for m2, c2 in self.gen_times(a, m1).items():
                    _acc(res, m2, c * c1 * c2)
            self._gm[key] = res
            return res
        first = None
        for k in self.order:
            if mono[k]:
                first = k
                break
        pos = self.pos
        if first is None or pos[g] < pos[first]:
            new = list(mono)
            new[g] += 1
            res = {tuple(new): Fraction(1)}
        elif g == first:
            if self.iso[g]:
                res = {}
            else:
                new = list(mono)
                new[g] += 1
                res = {tuple(new): Fraction(1)}
        else:
            rest = list(mono)
            rest[first] -= 1
            rest = tuple(rest)
            sign = -1 if self.parity[g] and self.parity[first] else 1
            res = {}
            for m1, c1 in self.gen_times(g, rest).items():
                for m2, c2 in self.gen_times(first, m1).items():
                    _acc(res, m2, sign * c1 * c2)
            for k, c in self.nb[(g, first)]:
                for m2, c2 in self.gen_times(k, rest).items():
                    _acc(res, m2, c * c2)
        self._gm[key] = res
        return res

    def apply_word(self, word, vec):
        """word * vec, where vec is {mono: coeff} (coefficients may be HPoly)."""
        for g in reversed(word):
            out = {}
            for mono, c in vec.items():
                for m2, c2 in self.gen_times(g, mono).items():
                    _acc(out, m2, c * c2)
            vec = out
        return vec

    def mono_times(self, m1, m2):
        key = (m1, m2)
        hit = self._mm.get(key)
        if hit is None:
            hit = self.apply_word(self.word(m1), {m2: Fraction(1)})
            self._mm[key] = hit
        return hit


_PBW = {}


def pbw_for(table: StructureTable, order) -> PBW:
    key = (id(table), tuple(order))
    p = _PBW.get(key)
    if p is None:
        p = PBW(table, order)
        _PBW[key] = p
    return p


def make_order(rs: RootSystem, spec="distinguished"):
    """Root order presets: distinguished (height, then simple coordinates),
    odd-first, odd-last, cosp / cosp-opposite (the osp(2,4) and sp(6)
    walkthrough orders: roots involving b first and a1 last, or reversed),
    or an explicit sequence of roots (text or tuples) listing every positive root."""
    K = len(rs.positive)
    canon = list(range(K))
    if not isinstance(spec, str):
        idx = [rs.index(parse_root(rs, x) if isinstance(x, str) else tuple(x)) for x in spec]
        if sorted(idx) != canon:
            raise DomainError("explicit order must list every positive root once")
        return tuple(idx)
    if "," in spec:
        return make_order(rs, [s.strip() for s in spec.split(",")])
    if spec == "distinguished":
        return tuple(canon)
    if spec == "odd-first":
        return tuple([k for k in canon if rs.positive[k].parity] + [k for k in canon if not rs.positive[k].parity])
    if spec == "odd-last":
        return tuple([k for k in canon if not rs.positive[k].parity] + [k for k in canon if rs.positive[k].parity])
    if spec in ("cosp", "cosp-opposite"):
        from .rootdata import simple_names
        names = simple_names(rs)
        if names[:1] != ["b"] or len(names) != 3:
            raise DomainError("cosp orders need the sp(6)/osp(2,4) simple roots b, a1, a2")
        a1 = rs.index(rs.simple_vecs[1])
        coords = [rs.simple_coords(r.vec) for r in rs.positive]
        with_b = [k for k in canon if coords[k][0] > 0]
        rest = [k for k in canon if coords[k][0] == 0 and k != a1]
        order = with_b + rest + [a1]
        return tuple(order if spec == "cosp" else reversed(order))
    raise DomainError(f"unknown order {spec!r}")


def move_last(order, k):
    return tuple([x for x in order if x != k] + [k])


# ---------------------------------------------------------------------------
# elements

class UNElement:
    """sum_pi c_pi e_{-pi} with rational coefficients."""
    symbolic = False

    def __init__(self, pbw: PBW, terms=None):
        self.pbw = pbw
        self.terms = terms if terms is not None else {}

    @property
    def order(self):
        return self.pbw.order

    def copy(self, terms):
        return type(self)(self.pbw, terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return self.copy(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if isinstance(c, (int, Fraction)) and not c:
            return self.copy({})
        return self.copy({k: v * c for k, v in self.terms.items() if v * c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return self.pbw.order == other.pbw.order and self.terms == other.terms

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), 0)

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        return format_element(self)


class UBElement(UNElement):
    """sum_pi e_{-pi} H_pi with H_pi polynomial functions of the weight."""
    symbolic = True

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), HPoly(self.pbw.rs.dim))


def un_element(pbw, terms):
    return UNElement(pbw, {k: Fraction(v) for k, v in terms.items() if v})


def generator(pbw: PBW, k, power=1):
    mono = [0] * pbw.K
    mono[k] = power
    if power > 1 and pbw.iso[k]:
        return UNElement(pbw, {})
    return UNElement(pbw, {tuple(mono): Fraction(1)})


def as_symbolic(u: UNElement) -> UBElement:
    if u.symbolic:
        return u
    n = u.pbw.rs.dim
    return UBElement(u.pbw, {k: HPoly.const(n, v) for k, v in u.terms.items()})


def straighten(pbw: PBW, word):
    """Straighten a word of generators: ints are root indices (e_{-alpha}),
    HPoly items are Cartan elements, Fractions are scalars."""
    n = pbw.rs.dim
    symbolic = any(isinstance(x, HPoly) for x in word)
    if symbolic:
        vec = {pbw.unit(): HPoly.const(n, 1)}
    else:
        vec = {pbw.unit(): Fraction(1)}
    for g in reversed(word):
        if isinstance(g, HPoly):
            out = {}
            for mono, c in vec.items():
                _acc(out, mono, g.shift(partition_weight(pbw.rs, mono)) * c)
            vec = out
        elif isinstance(g, Fraction):
            vec = {k: v * g for k, v in vec.items()}
        else:
            vec = pbw.apply_word([g], vec)
    cls = UBElement if symbolic else UNElement
    return cls(pbw, vec)


def multiply(u, v):
    """Product in U(b^-); H on the right of u is moved past e_{-sigma} of v."""
    if u.pbw is not v.pbw:
        raise DomainError("factors use different root orders")
    pbw = u.pbw
    if not u.symbolic and not v.symbolic:
        out = {}
        for m1, c1 in u.terms.items():
            for m2, c2 in v.terms.items():
                for m3, c3 in pbw.mono_times(m1, m2).items():
                    _acc(out, m3, c1 * c2 * c3)
        return UNElement(pbw, out)
    u = as_symbolic(u)
    v = as_symbolic(v)
    out = {}
    for m2, c2 in v.terms.items():
        wt = partition_weight(pbw.rs, m2)
        for m1, c1 in u.terms.items():
            c = c1.shift(wt) * c2
            for m3, c3 in pbw.mono_times(m1, m2).items():
                _acc(out, m3, c * c3)
    return UBElement(pbw, out)


def reorder(u, order):
    """Rewrite u in the PBW basis of another order (coefficients stay right)."""
    new = pbw_for(u.pbw.t, order)
    if new is u.pbw:
        return u
    out = {}
    for mono, c in u.terms.items():
        for m2, c2 in new.apply_word(u.pbw.word(mono), {new.unit(): Fraction(1)}).items():
            _acc(out, m2, c * c2)
    return type(u)(new, out)


def element_parity(u):
    for mono in u.terms:
        return sum(e * p for e, p in zip(mono, u.pbw.parity)) % 2
    return 0


def ad_pow(pbw: PBW, k, j, u):
    """(ad e_{-alpha})^j u with the super sign convention."""
    x = generator(pbw, k)
    par = pbw.parity[k]
    for _ in range(j):
        if not u:
            break
        s = -1 if par and element_parity(u) else 1
        u = multiply(x, u) - multiply(u, x).scale(s)
    return u


def power_commute_coeffs(r, odd=False, eps=1):
    """Coefficients c_j with e^r z = sum_j c_j ((ad e)^j z) e^{r-j}.

    r may be an int or an HPoly.  For odd e (non-isotropic) the expansion
    splits by the parity of j; eps = (-1)^{|z|}."""
    if not odd:
        if isinstance(r, HPoly):
            return lambda j: binomial_poly(r, j)
        return lambda j: Fraction(comb(r, j)) if 0 <= j <= r else Fraction(0)
    # r = 2l or 2l + 1
    if isinstance(r, HPoly):
        ell = (r - 1) * Fraction(1, 2)

        def f(j):
            i, rem = divmod(j, 2)
            b = binomial_poly(ell, i)
            return b if rem else b * eps
        return f
    ell, top = divmod(r, 2)

    def g(j):
        i, rem = divmod(j, 2)
        b = Fraction(comb(ell, i)) if 0 <= i <= ell else Fraction(0)
        if top:
            return b if rem else b * eps
        return Fraction(0) if rem else b
    return g


def power_commute(pbw: PBW, k, r, a):
    """e^r_{-alpha} a as sum_j c_j ((ad e_{-alpha})^j a) e^{r-j}_{-alpha}."""
    odd = pbw.parity[k] == 1
    coef = power_commute_coeffs(r, odd, -1 if element_parity(a) else 1)
    out = UNElement(pbw, {}) if not a.symbolic else UBElement(pbw, {})
    cur = a
    j = 0
    while cur and j <= r:
        term = multiply(cur, generator(pbw, k, r - j)) if r - j else cur
        out = out + term.scale(coef(j))
        cur = ad_pow(pbw, k, 1, cur)
        j += 1
    return out


def divide_right_power(u, k, p):
    """Remove e^p_{-alpha} from the right; alpha must be last in the order."""
    if u.pbw.order[-1] != k:
        raise DomainError("alpha must be last in the order")
    out = {}
    for mono, c in u.terms.items():
        if mono[k] < p:
            raise DomainError("element is not right-divisible by the requested power")
        m2 = list(mono)
        m2[k] -= p
        out[tuple(m2)] = c
    return type(u)(u.pbw, out)


def specialize(u, lam) -> UNElement:
    if not u.symbolic:
        return u
    out = {}
    for mono, c in u.terms.items():
        v = c.evaluate(lam)
        if v:
            out[mono] = v
    return UNElement(u.pbw, out)


def reduce_element(u, hyp: Hyperplane):
    out = {}
    for mono, c in u.terms.items():
        r = hyp.reduce(c)
        if r:
            out[mono] = r
    return UBElement(u.pbw, out)


# ---------------------------------------------------------------------------
# output

def h_names(rs):
    return [f"h_{lab}" for lab in rs.labels]


def monomial_text(rs, pbw, mono):
    parts = []
    for k in pbw.order:
        e = mono[k]
        if e:
            parts.append(f"e[-({format_root(rs, rs.positive[k].vec)})]" + (f"^{e}" if e > 1 else ""))
    return " ".join(parts) if parts else "1"


def format_element(u):
    rs = u.pbw.rs
    if not u.terms:
        return "0"
    names = h_names(rs)
    lines = []
    for mono in sorted(u.terms, key=lambda m: (-sum(m), [-m[k] for k in u.pbw.order])):
        c = u.terms[mono]
        cs = c.format(names) if isinstance(c, HPoly) else str(c)
        lines.append(f"({cs}) {monomial_text(rs, u.pbw, mono)}")
    return "\n + ".join(lines)


def to_json(u):
    rs = u.pbw.rs
    names = h_names(rs)
    terms = []
    for mono in sorted(u.terms, key=lambda m: (-sum(m), [-m[k] for k in u.pbw.order])):
        c = u.terms[mono]
        if not isinstance(c, HPoly):
            c = HPoly.const(rs.dim, c)
        monos = [{"exps": {names[i]: e for i, e in enumerate(k) if e},
                  "num": v.numerator, "den": v.denominator}
                 for k, v in sorted(c.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0]))]
        terms.append({"pi": {format_root(rs, rs.positive[k].vec): mono[k] for k in u.pbw.order if mono[k]},
                      "coeff": {"monomials": monos}})
    return {"order": [format_root(rs, rs.positive[k].vec) for k in u.pbw.order], "terms": terms}


def from_json(table: StructureTable, data):
    rs = table.rs
    order = make_order(rs, data["order"])
    pbw = pbw_for(table, order)
    names = h_names(rs)
    out = {}
    for term in data["terms"]:
        mono = [0] * len(rs.positive)
        for root, e in term["pi"].items():
            mono[rs.index(parse_root(rs, root))] = int(e)
        poly = {}
        for mo in term["coeff"]["monomials"]:
            k = [0] * rs.dim
            for name, e in mo["exps"].items():
                k[names.index(name)] = int(e)
            poly[tuple(k)] = Fraction(mo["num"], mo["den"])
        out[tuple(mono)] = HPoly(rs.dim, poly)
    return UBElement(pbw, out)


__all__ = [
    "HPoly", "Hyperplane", "PBW", "UBElement", "UNElement", "ad_pow", "binomial_poly",
    "divide_right_power", "format_element", "from_json", "generator", "hyperplane_for",
    "make_order", "move_last", "multiply", "pairing_poly", "pbw_for", "power_commute",
    "power_commute_coeffs", "reduce_element", "reorder", "specialize", "straighten",
    "table_for", "to_json",
]
