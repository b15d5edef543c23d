"""Root data for gl(m|n), sl(m), sp(2n), osp(2,4) and osp(3,2).

Coordinates are taken in a basis of labels ``e1..em`` and ``d1..dn``.  The
invariant form is diagonal with +1 on the e-labels and -1 on the d-labels
(sp(2n) has e-labels only).  Roots are plain integer tuples; weights are
tuples of Fractions in the same coordinates.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy


class DomainError(ValueError):
    """Raised when an input lies outside the supported domain."""


class NotRepresentable(DomainError):
    """The root is not W'-conjugate to a simple root."""


@dataclass(frozen=True)
class Root:
    vec: tuple
    parity: int
    isotropic: bool


@dataclass(frozen=True)
class WeylWord:
    """w = s_{i1} ... s_{ik}, stored as simple-root indices (leftmost first).

    ``base`` is the index of the simple root beta with w(beta) = gamma.
    """
    indices: tuple
    base: int | None = None

    def __len__(self):
        return len(self.indices)


@dataclass
class BorelChain:
    """Adjacent odd reflections carrying the distinguished Borel to one in
    which gamma is simple.  ``shuffles[i]`` is the label order of the i-th
    Borel (``shuffles[0]`` is the starting one)."""
    gamma: tuple
    alphas: list
    shuffles: list
    removable: set = field(default_factory=set)


class RootSystem:
    def __init__(self, family, m, n, labels, signs, positive, simple, parities,
                 basis_choice, shuffle=None):
        self.family = family
        self.m = m
        self.n = n
        self.labels = list(labels)
        self.signs = tuple(signs)
        self.dim = len(labels)
        self.basis_choice = basis_choice
        self.shuffle = shuffle
        self.positive = []
        for v in positive:
            v = tuple(v)
            par = parities[v]
            iso = par == 1 and self._pair_int(v, v) == 0
            self.positive.append(Root(v, par, iso))
        self.simple_vecs = [tuple(v) for v in simple]
        self._index = {r.vec: k for k, r in enumerate(self.positive)}
        self.simple = [self._index[v] for v in self.simple_vecs]
        self._setup_simple_coords()
        # canonical ordering: height, then simple coefficients
        order = sorted(range(len(self.positive)),
                       key=lambda k: (sum(self.simple_coords(self.positive[k].vec)),
                                      tuple(-c for c in self.simple_coords(self.positive[k].vec))))
        self.positive = [self.positive[k] for k in order]
        self._index = {r.vec: k for k, r in enumerate(self.positive)}
        self.simple = [self._index[v] for v in self.simple_vecs]
        rho0 = [Fraction(0)] * self.dim
        rho1 = [Fraction(0)] * self.dim
        for r in self.positive:
            tgt = rho1 if r.parity else rho0
            for i, c in enumerate(r.vec):
                tgt[i] += Fraction(c, 2)
        self.rho0 = tuple(rho0)
        self.rho1 = tuple(rho1)
        self.rho = tuple(a - b for a, b in zip(rho0, rho1))

    # -- basic linear algebra on coordinates -----------------------------
    def _pair_int(self, x, y):
        return sum(s * a * b for s, a, b in zip(self.signs, x, y))

    def _setup_simple_coords(self):
        S = sympy.Matrix([list(v) for v in self.simple_vecs])
        proj = S.T * (S * S.T).inv()
        self._proj = [[Fraction(int(x.p), int(x.q)) for x in proj.row(i)]
                      for i in range(self.dim)]

    def simple_coords(self, vec):
        k = len(self.simple_vecs)
        c = [sum(Fraction(vec[i]) * self._proj[i][j] for i in range(self.dim))
             for j in range(k)]
        back = [sum(c[j] * self.simple_vecs[j][i] for j in range(k)) for i in range(self.dim)]
        if any(b != v for b, v in zip(back, vec)):
            raise DomainError(f"{vec} is not in the root lattice span")
        return c

    def index(self, vec):
        try:
            return self._index[tuple(vec)]
        except KeyError:
            raise DomainError(f"{format_root(self, vec)} is not a positive root") from None

    def is_positive_root(self, vec):
        return tuple(vec) in self._index

    def root(self, k) -> Root:
        return self.positive[k]

    def name(self):
        if self.family in ("gl", "sl") and self.n == 0:
            return f"{self.family}({self.m})"
        if self.family == "gl":
            return f"gl({self.m}|{self.n})"
        if self.family == "sp":
            return f"sp({2 * self.m})"
        return f"osp({self.m},{self.n})"

    def is_even_half(self, vec):
        """True when vec is an even root whose half is an odd root."""
        if any(c % 2 for c in vec):
            return False
        half = tuple(c // 2 for c in vec)
        return half in self._index and self.positive[self._index[half]].parity == 1

    def __repr__(self):
        return f"RootSystem({self.name()}, {self.basis_choice})"


# -- construction -----------------------------------------------------------

def _unit(dim, i, c=1):
    v = [0] * dim
    v[i] = c
    return v


def _add(*vs):
    return tuple(sum(x) for x in zip(*vs))


def build_root_system(family, m, n=0, basis_choice="distinguished") -> RootSystem:
    """family is one of gl, sl, sp, osp.

    gl(m|n) accepts an explicit label order (a sequence of labels) as
    basis_choice; positive roots are then x_a - x_b for a before b.
    sl(m) is carried in gl(m) coordinates.  For sp the rank is m (sp(2m)).
    For osp the pair (m, n) is the (orthogonal, symplectic) dimension pair;
    osp(2,4) and osp(3,2) are supported.
    """
    if family in ("gl", "sl"):
        if m < 1 or n < 0 or (family == "sl" and n):
            raise DomainError("bad rank for gl/sl")
        labels = [f"e{i}" for i in range(1, m + 1)] + [f"d{j}" for j in range(1, n + 1)]
        if isinstance(basis_choice, str):
            if basis_choice == "distinguished":
                shuffle = list(labels)
            elif basis_choice == "anti_distinguished":
                shuffle = labels[m:] + labels[:m]
            else:
                raise DomainError(f"unknown basis choice {basis_choice}")
        else:
            shuffle = list(basis_choice)
            if sorted(shuffle) != sorted(labels):
                raise DomainError("label order must be a permutation of the labels")
            basis_choice = "shuffle:" + ",".join(shuffle)
        dim = m + n
        pos_of = {lab: i for i, lab in enumerate(labels)}
        signs = [1] * m + [-1] * n
        positive, parities = [], {}
        for a, b in itertools.combinations(shuffle, 2):
            v = [0] * dim
            v[pos_of[a]] += 1
            v[pos_of[b]] -= 1
            positive.append(tuple(v))
            parities[tuple(v)] = int(a[0] != b[0])
        simple = []
        for a, b in zip(shuffle, shuffle[1:]):
            v = [0] * dim
            v[pos_of[a]] += 1
            v[pos_of[b]] -= 1
            simple.append(tuple(v))
        return RootSystem(family, m, n, labels, signs, positive, simple, parities,
                          basis_choice, shuffle)
    if family == "sp":
        if m < 1 or basis_choice != "distinguished":
            raise DomainError("sp(2n) supports the standard basis only")
        dim = m
        labels = [f"e{i}" for i in range(1, m + 1)]
        positive = []
        for i, j in itertools.combinations(range(m), 2):
            positive.append(_add(_unit(dim, i), _unit(dim, j, -1)))
            positive.append(_add(_unit(dim, i), _unit(dim, j)))
        for i in range(m):
            positive.append(tuple(_unit(dim, i, 2)))
        simple = [_add(_unit(dim, i), _unit(dim, i + 1, -1)) for i in range(m - 1)]
        simple.append(tuple(_unit(dim, m - 1, 2)))
        parities = {v: 0 for v in positive}
        return RootSystem("sp", m, 0, labels, [1] * m, positive, simple, parities,
                          basis_choice)
    if family == "osp":
        if (m, n) == (2, 4):
            labels = ["e1", "d1", "d2"]
            e, d1, d2 = (_unit(3, i) for i in range(3))
            even = [_add(d1, [-x for x in d2]), _add(d1, d2), tuple(_unit(3, 1, 2)),
                    tuple(_unit(3, 2, 2))]
            if basis_choice == "distinguished":
                odd = [_add(e, [-x for x in d1]), _add(e, [-x for x in d2]),
                       _add(e, d1), _add(e, d2)]
                simple = [odd[0], even[0], even[3]]
            elif basis_choice == "anti_distinguished":
                odd = [_add(d1, [-x for x in e]), _add(d2, [-x for x in e]),
                       _add(d1, e), _add(d2, e)]
                simple = [even[0], odd[1], odd[3]]
            else:
                raise DomainError(f"unknown basis choice {basis_choice}")
            parities = {v: 0 for v in even}
            parities.update({v: 1 for v in odd})
            return RootSystem("osp", 2, 4, labels, [1, -1, -1], even + odd, simple,
                              parities, basis_choice)
        if (m, n) == (3, 2):
            labels = ["e1", "d1"]
            e1, d1 = (1, 0), (0, 1)
            if basis_choice == "distinguished":
                odd = [(-1, 1), (1, 1), (0, 1)]
                simple = [(-1, 1), (1, 0)]
            elif basis_choice == "anti_distinguished":
                odd = [(1, -1), (1, 1), (0, 1)]
                simple = [(1, -1), (0, 1)]
            else:
                raise DomainError(f"unknown basis choice {basis_choice}")
            even = [e1, (0, 2)]
            parities = {v: 0 for v in even}
            parities.update({v: 1 for v in odd})
            return RootSystem("osp", 3, 2, labels, [1, -1], even + odd, simple, parities,
                              basis_choice)
        raise DomainError("only osp(2,4) and osp(3,2) are supported")
    raise DomainError(f"unknown family {family}")


def parse_algebra(text: str, basis_choice="distinguished") -> RootSystem:
    """Parse 'gl(2|1)', 'sl(3)', 'sp(6)', 'osp(2,4)', 'osp(3,2)'."""
    t = text.replace(" ", "").lower()
    try:
        fam, rest = t.split("(", 1)
        rest = rest.rstrip(")")
        if fam == "gl":
            if "|" in rest:
                m, n = (int(x) for x in rest.split("|"))
            else:
                m, n = int(rest), 0
            return build_root_system("gl", m, n, basis_choice)
        if fam == "sl":
            return build_root_system("sl", int(rest), 0, basis_choice)
        if fam == "sp":
            k = int(rest)
            if k % 2:
                raise DomainError("sp(2n) needs an even argument")
            return build_root_system("sp", k // 2, 0, basis_choice)
        if fam == "osp":
            m, n = (int(x) for x in rest.replace("|", ",").split(","))
            return build_root_system("osp", m, n, basis_choice)
    except DomainError:
        raise
    except ValueError:
        pass
    raise DomainError(f"cannot parse algebra {text!r}")


# -- names of roots ------------------------------------------------------------

def simple_names(rs: RootSystem):
    """Short names for simple roots: 'b' for the distinguished odd (or first)
    simple root of the sp(6)/osp(2,4) walkthrough, 'a1', 'a2', ... otherwise."""
    k = len(rs.simple)
    walk = (rs.family == "osp" and (rs.m, rs.n) == (2, 4) and rs.basis_choice == "distinguished") \
        or (rs.family == "sp" and rs.m == 3)
    if walk:
        return ["b", "a1", "a2"]
    iso = [i for i in range(k) if rs.positive[rs.simple[i]].isotropic]
    names = []
    a = 1
    for i in range(k):
        if len(iso) == 1 and i == iso[0]:
            names.append("b")
        else:
            names.append(f"a{a}")
            a += 1
    return names


def format_root(rs: RootSystem, vec) -> str:
    parts = []
    for lab, c in zip(rs.labels, vec):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts.append(f"{sign}{'' if mag == 1 else mag}{lab}")
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s


def _parse_terms(text):
    t = text.replace(" ", "")
    if not t:
        raise DomainError("empty root")
    if t[0] not in "+-":
        t = "+" + t
    out = []
    i = 0
    while i < len(t):
        sign = -1 if t[i] == "-" else 1
        i += 1
        j = i
        while j < len(t) and t[j].isdigit():
            j += 1
        coef = int(t[i:j]) if j > i else 1
        k = j
        while k < len(t) and t[k] not in "+-":
            k += 1
        name = t[j:k]
        if not name:
            raise DomainError(f"cannot parse root {text!r}")
        out.append((sign * coef, name))
        i = k
    return out


def parse_root(rs: RootSystem, text: str) -> tuple:
    """Parse 'e1-d2', '2d2' or simple-root names like 'b+2a1+a2'."""
    names = simple_names(rs)
    vec = [0] * rs.dim
    for coef, name in _parse_terms(text):
        if name in rs.labels:
            vec[rs.labels.index(name)] += coef
        elif name in names:
            sv = rs.simple_vecs[names.index(name)]
            for i in range(rs.dim):
                vec[i] += coef * sv[i]
        else:
            raise DomainError(f"unknown symbol {name!r} in {text!r}")
    return tuple(vec)


# -- form, reflections ---------------------------------------------------------

def pair(rs: RootSystem, x, y):
    return sum(Fraction(s) * a * b for s, a, b in zip(rs.signs, x, y))


def coroot(rs: RootSystem, alpha):
    """alpha^vee = 2 alpha / (alpha, alpha); undefined for isotropic roots."""
    n = pair(rs, alpha, alpha)
    if n == 0:
        raise DomainError("isotropic roots have no coroot")
    return tuple(Fraction(2 * a) / n for a in alpha)


def copair(rs: RootSystem, mu, alpha):
    """(mu, alpha^vee)."""
    n = pair(rs, alpha, alpha)
    if n == 0:
        raise DomainError("isotropic roots have no coroot")
    return 2 * pair(rs, mu, alpha) / n


def reflect(rs: RootSystem, alpha, mu):
    c = copair(rs, mu, alpha)
    out = tuple(Fraction(x) - c * a for x, a in zip(mu, alpha))
    return _intify(out)


def dot_reflect(rs: RootSystem, alpha, lam):
    """s_alpha . lam = s_alpha(lam + rho) - rho."""
    shifted = tuple(Fraction(x) + r for x, r in zip(lam, rs.rho))
    return tuple(y - r for y, r in zip(reflect(rs, alpha, shifted), rs.rho))


def _intify(v):
    return tuple(int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in v)


def apply_word(rs: RootSystem, word, vec, dot=False):
    """w(vec) (or w.vec) for w = s_{i1}...s_{ik}: the rightmost reflection acts first."""
    for i in reversed(tuple(getattr(word, "indices", word))):
        a = rs.simple_vecs[i]
        vec = dot_reflect(rs, a, vec) if dot else reflect(rs, a, vec)
    return vec


def height(rs: RootSystem, vec):
    return sum(rs.simple_coords(vec))


def _subgroup_gens(rs, subgroup):
    gens = []
    for i, k in enumerate(rs.simple):
        r = rs.positive[k]
        if r.isotropic:
            continue
        if subgroup == "even" and r.parity:
            continue
        if subgroup not in ("even", "nonisotropic"):
            raise DomainError(f"unknown subgroup {subgroup}")
        gens.append(i)
    return gens


def _even_version(rs, vec):
    k = rs.index(vec)
    if rs.positive[k].parity:
        return tuple(2 * c for c in vec)
    return tuple(vec)


def _orbit_bfs(rs, gamma, subgroup):
    """Breadth-first search from gamma; each level is kept in lexicographic
    order of the reflection sequence, so the first hit is the lex-least
    minimal word."""
    gens = _subgroup_gens(rs, subgroup)
    gamma = tuple(gamma)
    level = [(gamma, ())]
    seen = {gamma}
    while level:
        yield level
        nxt = []
        for v, path in level:
            for i in gens:
                u = reflect(rs, rs.simple_vecs[i], v)
                if u not in seen:
                    seen.add(u)
                    nxt.append((u, path + (i,)))
        nxt.sort(key=lambda t: t[1])
        level = nxt


def minimal_word(rs: RootSystem, gamma, subgroup="even") -> WeylWord:
    """Lexicographically least shortest w in W' with gamma = w(beta), beta simple."""
    gamma = tuple(gamma)
    rs.index(gamma)
    simple_set = {v: i for i, v in enumerate(rs.simple_vecs)}
    for level in _orbit_bfs(rs, gamma, subgroup):
        hits = [(path, simple_set[v]) for v, path in level if v in simple_set]
        if hits:
            path, b = min(hits)
            # path applies s_{i1} first to gamma, so w = s_{i1} ... s_{ik}
            return WeylWord(tuple(path), b)
    raise NotRepresentable(f"{format_root(rs, gamma)} is not {subgroup}-conjugate to a simple root")


def minimal_words(rs: RootSystem, gamma, subgroup="even"):
    """All shortest words w in W' with gamma = w(beta) for a simple beta."""
    w0 = minimal_word(rs, gamma, subgroup)
    gens = _subgroup_gens(rs, subgroup)
    out = []
    for word in itertools.product(gens, repeat=len(w0)):
        v = tuple(gamma)
        for i in word:
            v = reflect(rs, rs.simple_vecs[i], v)
        if v in rs.simple_vecs:
            out.append(WeylWord(tuple(word), rs.simple_vecs.index(v)))
    return out


def choose_subgroup(rs: RootSystem, gamma):
    """Even Weyl group when it suffices, else the non-isotropic one."""
    try:
        minimal_word(rs, gamma, "even")
        return "even"
    except NotRepresentable:
        minimal_word(rs, gamma, "nonisotropic")
        return "nonisotropic"


def n_set(rs: RootSystem, word) -> list:
    """N(w^{-1}) = {alpha in even positive roots : w^{-1} alpha < 0}."""
    inv = tuple(reversed(tuple(getattr(word, "indices", word))))
    out = []
    for r in rs.positive:
        if r.parity:
            continue
        v = apply_word(rs, inv, r.vec)
        if not rs.is_positive_root(v) and rs.is_positive_root(tuple(-x for x in v)):
            out.append(r.vec)
    return out


def n_set_recursive(rs: RootSystem, word) -> list:
    """Same set through N(w^{-1}) = s_a N(u^{-1}) u {a}, w = s_a u."""
    idx = tuple(getattr(word, "indices", word))
    acc = []
    for i in reversed(idx):
        a = rs.simple_vecs[i]
        acc = [tuple(reflect(rs, a, v)) for v in acc] + [_even_version(rs, a)]
    return acc


def q_factor(rs: RootSystem, word: WeylWord, alpha):
    """q(w, alpha) = (w beta, alpha^vee)."""
    gamma = apply_word(rs, word, rs.simple_vecs[word.base])
    return copair(rs, gamma, alpha)


# -- partitions ------------------------------------------------------------------

def partition_weight(rs: RootSystem, pi):
    w = [0] * rs.dim
    for k, e in enumerate(pi):
        if e:
            for i, c in enumerate(rs.positive[k].vec):
                w[i] += e * c
    return tuple(w)


def partition_degree(pi):
    return sum(pi)


def clifford_degree(rs: RootSystem, pi):
    """cg(pi) = sum pi(alpha) (2 - parity(alpha))."""
    return sum(e * (2 - rs.positive[k].parity) for k, e in enumerate(pi))


def enumerate_partitions(rs: RootSystem, eta) -> list:
    """Partitions of eta as exponent tuples over rs.positive, with pi <= 1 on
    isotropic roots and pi = 0 on even roots whose half is an odd root.
    Sorted by degree descending, then lexicographically descending."""
    target = [int(c) for c in rs.simple_coords(tuple(eta))]
    if any(c < 0 for c in target):
        return []
    coords = [[int(c) for c in rs.simple_coords(r.vec)] for r in rs.positive]
    K = len(rs.positive)
    caps = []
    for r in rs.positive:
        if rs.is_even_half(r.vec):
            caps.append(0)
        elif r.isotropic:
            caps.append(1)
        else:
            caps.append(None)
    out = []
    cur = [0] * K

    def rec(k, rem):
        if k < 0:
            if not any(rem):
                out.append(tuple(cur))
            return
        c = coords[k]
        e = 0
        r = list(rem)
        while True:
            cur[k] = e
            rec(k - 1, r)
            e += 1
            if caps[k] is not None and e > caps[k]:
                break
            r = [x - y for x, y in zip(r, c)]
            if any(x < 0 for x in r):
                break
        cur[k] = 0

    rec(K - 1, target)
    out.sort(key=lambda p: (-sum(p), tuple(-x for x in p)))
    return out


def simple_partition(rs: RootSystem, eta):
    """pi^0: the partition of eta using simple roots only."""
    c = rs.simple_coords(tuple(eta))
    pi = [0] * len(rs.positive)
    for j, k in enumerate(rs.simple):
        pi[k] = int(c[j])
    return tuple(pi)


# -- hyperplanes and sampling --------------------------------------------------------

def shifted_pairing_form(rs: RootSystem, alpha):
    """Linear form (coeffs, const) for lam -> (lam + rho, alpha^vee), or
    (lam + rho, alpha) when alpha is isotropic."""
    n = pair(rs, alpha, alpha)
    scale = Fraction(2) / n if n else Fraction(1)
    coeffs = tuple(scale * s * a for s, a in zip(rs.signs, alpha))
    const = sum(c * r for c, r in zip(coeffs, rs.rho))
    return coeffs, const


def hyperplane_form(rs: RootSystem, gamma, m=1):
    """(coeffs, const) with H_{gamma,m} = {lam : sum coeffs*lam + const = 0}."""
    coeffs = tuple(Fraction(s * a) for s, a in zip(rs.signs, gamma))
    const = sum(c * r for c, r in zip(coeffs, rs.rho)) - Fraction(m) * pair(rs, gamma, gamma) / 2
    return coeffs, const


def on_hyperplane(rs: RootSystem, gamma, m, lam):
    coeffs, const = hyperplane_form(rs, gamma, m)
    return sum(c * x for c, x in zip(coeffs, lam)) + const == 0


def _pairing_matrix_kernel(rs):
    rows = [[Fraction(s * a) for s, a in zip(rs.signs, v)] for v in rs.simple_vecs]
    M = sympy.Matrix(rows)
    return [[sympy.Rational(x) for x in z] for z in M.nullspace()]


def weight_from_pairings(rs: RootSystem, values):
    """nu with (nu + rho, alpha) forms equal to values[i] for each simple alpha
    (coroot pairing for non-isotropic alpha) and nu orthogonal (Euclidean) to
    the radical of the form on the root span."""
    rows, rhs = [], []
    for v, val in zip(rs.simple_vecs, values):
        coeffs, const = shifted_pairing_form(rs, v)
        rows.append([sympy.Rational(c.numerator, c.denominator) for c in coeffs])
        rhs.append(sympy.Rational(Fraction(val) - const))
    for z in _pairing_matrix_kernel(rs):
        rows.append(list(z))
        rhs.append(0)
    sol = sympy.Matrix(rows).solve(sympy.Matrix(rhs)) if len(rows) == rs.dim else \
        sympy.Matrix(rows).gauss_jordan_solve(sympy.Matrix(rhs))[0]
    return tuple(Fraction(int(x.p), int(x.q)) for x in sol)


def base_pairings(rs: RootSystem, word: WeylWord, lam):
    """Pairings (nu + rho, alpha^vee) of nu = w^{-1}.lam with the simple roots."""
    nu = apply_word(rs, tuple(reversed(word.indices)), lam, dot=True)
    out = []
    for v in rs.simple_vecs:
        coeffs, const = shifted_pairing_form(rs, v)
        out.append(sum(c * x for c, x in zip(coeffs, nu)) + const)
    return out


def step_data(rs: RootSystem, word: WeylWord, m, nu):
    """Per-step (alpha index, p, q, mu) for the chain beta -> ... -> gamma
    starting from nu; p = (mu + rho, alpha^vee), q = (gamma_new, alpha^vee)."""
    g = rs.simple_vecs[word.base]
    mu = tuple(nu)
    out = []
    for i in reversed(word.indices):
        a = rs.simple_vecs[i]
        p = copair(rs, tuple(x + r for x, r in zip(mu, rs.rho)), a)
        new = reflect(rs, a, g)
        q = copair(rs, new, a)
        out.append((i, p, q, mu))
        mu = dot_reflect(rs, a, mu)
        g = new
    return out, mu


def lambda_set_ok(rs: RootSystem, word: WeylWord, m, nu):
    """Whether every inductive step starting from nu has admissible p."""
    steps, _ = step_data(rs, word, m, nu)
    for i, p, q, _mu in steps:
        a = rs.positive[rs.simple[i]]
        if p.denominator != 1 or p < 0:
            return False
        if a.parity and p % 2 == 0:
            return False
    return True


def _grid_points(k, count):
    """Points of N^k ordered by total degree, then lexicographically."""
    if k == 0:
        yield ()
        return
    d = 0
    while True:
        pts = [c for c in itertools.product(range(d + 1), repeat=k) if sum(c) == d]
        for c in sorted(pts, reverse=True):
            yield c
        d += 1


def hyperplane_sample(rs: RootSystem, gamma, m, count, offset=1, subgroup=None,
                      seed=None, spread=6, word=None):
    """Sample lam in w.Lambda, a Zariski-dense subset of H_{gamma,m}.

    nu has (nu+rho, beta^vee) = m (or (nu+rho, beta) = 0 for isotropic beta)
    and positive pairings with the other simple roots, odd for odd ones.
    Deterministic grid walk from ``offset``; random points when ``seed`` is
    given.  Returns a list of weights (a single point when the hyperplane is
    zero dimensional)."""
    gamma = tuple(gamma)
    if word is None:
        if subgroup is None:
            subgroup = choose_subgroup(rs, gamma)
        word = minimal_word(rs, gamma, subgroup)
    b = word.base
    free = [i for i in range(len(rs.simple)) if i != b]
    rng = random.Random(seed) if seed is not None else None
    out = []
    seen = set()
    beta = rs.positive[rs.simple[b]]
    if beta.isotropic and m != 1:
        raise DomainError("isotropic gamma needs m = 1")
    grid = _grid_points(len(free), count)
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 200 * count + 1000:
            raise DomainError("sampling failed: parity constraints cannot be met")
        vals = [0] * len(rs.simple)
        vals[b] = 0 if beta.isotropic else m
        if rng is None:
            try:
                c = next(grid)
            except StopIteration:
                break
        else:
            c = [rng.randrange(spread) for _ in free]
        for j, i in enumerate(free):
            odd = rs.positive[rs.simple[i]].parity == 1 and not rs.positive[rs.simple[i]].isotropic
            if odd:
                vals[i] = 2 * (max(offset, 1) + c[j]) - 1
            else:
                vals[i] = offset + c[j]
        nu = weight_from_pairings(rs, vals)
        if not lambda_set_ok(rs, word, m, nu):
            continue
        lam = apply_word(rs, word, nu, dot=True)
        lam = tuple(Fraction(x) for x in lam)
        if lam in seen:
            if not free:
                break
            continue
        seen.add(lam)
        out.append(lam)
        if not free:
            break
    return out


def central_directions(rs: RootSystem):
    """Integral weights orthogonal to every root (empty for semisimple rs)."""
    out = []
    for z in _pairing_matrix_kernel(rs):
        den = 1
        for x in z:
            den = den * int(sympy.Rational(x).q) // math.gcd(den, int(sympy.Rational(x).q))
        out.append(tuple(Fraction(int(x * den)) for x in z))
    return out


def padded_sample(rs: RootSystem, gamma, m, count, word=None):
    """hyperplane_sample, topped up to count points by central translates
    when the grid is too small (e.g. no free simple roots)."""
    pts = hyperplane_sample(rs, gamma, m, count, word=word)
    dirs = central_directions(rs)
    if not pts or not dirs or len(pts) >= count:
        return pts
    base = list(pts)
    k = 1
    while len(pts) < count:
        for p in base:
            for sgn in (1, -1):
                if len(pts) < count:
                    pts.append(tuple(x + sgn * k * z for x, z in zip(p, dirs[0])))
        k += 1
    return pts


def generic_hyperplane_points(rs: RootSystem, gamma, m, count, seed=0, box=9):
    """Random integral-ish points of H_{gamma,m} (not necessarily in w.Lambda)."""
    rng = random.Random(seed)
    coeffs, const = hyperplane_form(rs, gamma, m)
    piv = next(i for i, c in enumerate(coeffs) if c != 0)
    out = []
    while len(out) < count:
        lam = [Fraction(rng.randint(-box, box)) for _ in range(rs.dim)]
        rest = sum(c * x for i, (c, x) in enumerate(zip(coeffs, lam)) if i != piv) + const
        lam[piv] = -rest / coeffs[piv]
        out.append(tuple(lam))
    return out


# -- Borel chains ------------------------------------------------------------------

def borel_chain(rs: RootSystem, gamma) -> BorelChain:
    """For gl(m|n) with the distinguished order and gamma = e_r - d_s: move d_j
    (j = 1..s) leftwards past e_m ... e_{r+1}, and past e_r too when j < s.
    Each adjacent swap is an odd reflection in alpha = e_k - d_j."""
    if rs.family != "gl" or rs.basis_choice != "distinguished":
        raise DomainError("Borel chains are implemented for distinguished gl(m|n)")
    gamma = tuple(gamma)
    k = rs.index(gamma)
    if not rs.positive[k].isotropic:
        raise DomainError("gamma must be odd isotropic")
    r = next(i for i in range(rs.m) if gamma[i] == 1) + 1
    s = next(j for j in range(rs.n) if gamma[rs.m + j] == -1) + 1
    order = list(rs.shuffle)
    shuffles = [list(order)]
    alphas = []
    for j in range(1, s + 1):
        d = f"d{j}"
        stop = r if j < s else r + 1
        for kk in range(rs.m, stop - 1, -1):
            e = f"e{kk}"
            pos = order.index(d)
            if order[pos - 1] != e:
                raise DomainError("unexpected label order in Borel chain")
            order[pos - 1], order[pos] = d, e
            v = [0] * rs.dim
            v[rs.labels.index(e)] += 1
            v[rs.labels.index(d)] -= 1
            alphas.append(tuple(v))
            shuffles.append(list(order))
    # F(gamma): links orthogonal to gamma
    removable = {i for i, a in enumerate(alphas) if pair(rs, a, gamma) == 0}
    # gamma must be simple in the last Borel
    last = shuffles[-1]
    pos_r = last.index(f"e{r}")
    if last[pos_r + 1] != f"d{s}":
        raise DomainError("chain does not make gamma simple")
    return BorelChain(gamma, alphas, shuffles, removable)
