"""Matrix realizations and structure constants.

Each algebra is realized by supermatrices over Q.  The basis is
``e_{-alpha}`` (index k), then the Cartan elements ``H_label`` (index K+j),
then ``e_{alpha}`` (index K+d+k), where K = |positive roots| and d = number of
labels.  Positive root vectors are scaled so that [e_a, e_{-a}] = h_a with
beta(h_a) = (a, beta).
"""
from __future__ import annotations

from fractions import Fraction

import sympy

from .rootdata import DomainError, RootSystem, format_root, parse_root


# sparse matrices: dict (i, j) -> Fraction

def mat_mul(a, b):
    out = {}
    rows = {}
    for (k, j), y in b.items():
        rows.setdefault(k, []).append((j, y))
    for (i, k), x in a.items():
        for j, y in rows.get(k, ()):
            v = out.get((i, j), 0) + x * y
            if v:
                out[(i, j)] = v
            else:
                out.pop((i, j), None)
    return out


def mat_add(a, b, s=1):
    out = dict(a)
    for key, y in b.items():
        v = out.get(key, 0) + s * y
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def mat_scale(a, c):
    return {k: c * v for k, v in a.items()} if c else {}


def supercommutator(a, pa, b, pb):
    return mat_add(mat_mul(a, b), mat_mul(b, a), -(-1) ** (pa * pb))


class StructureTable:
    """Bracket table of g on the basis described in the module docstring."""

    def __init__(self, rs: RootSystem, vparity, vweight, neg, pos, cartan):
        self.rs = rs
        self.vparity = vparity
        self.vweight = vweight
        self.K = len(rs.positive)
        self.d = rs.dim
        self.size = 2 * self.K + self.d
        self.matrices = list(neg) + list(cartan) + list(pos)
        self.weights = [tuple(-c for c in r.vec) for r in rs.positive] + \
            [(0,) * self.d] * self.d + [r.vec for r in rs.positive]
        self.parities = [r.parity for r in rs.positive] + [0] * self.d + \
            [r.parity for r in rs.positive]
        self._by_weight = {}
        for i, w in enumerate(self.weights):
            if any(w):
                self._by_weight[w] = i
        self.table = {}
        for a in range(self.size):
            for b in range(self.size):
                br = supercommutator(self.matrices[a], self.parities[a],
                                     self.matrices[b], self.parities[b])
                w = tuple(x + y for x, y in zip(self.weights[a], self.weights[b]))
                self.table[(a, b)] = self.decompose(br, w)

    # index helpers
    def neg(self, k):
        return k

    def h(self, j):
        return self.K + j

    def pos(self, k):
        return self.K + self.d + k

    def kind(self, i):
        if i < self.K:
            return "neg", i
        if i < self.K + self.d:
            return "h", i - self.K
        return "pos", i - self.K - self.d

    def decompose(self, mat, weight=None):
        """Write a matrix in the basis; raises if it is not in the span."""
        if not mat:
            return {}
        if weight is None:
            (i, j), _ = next(iter(mat.items()))
            weight = tuple(a - b for a, b in zip(self.vweight[i], self.vweight[j]))
        if any(weight):
            idx = self._by_weight.get(tuple(weight))
            if idx is None:
                raise DomainError("bracket leaves the algebra")
            basis = self.matrices[idx]
            key = next(iter(basis))
            c = mat.get(key, 0) / basis[key]
            if mat_add(mat, mat_scale(basis, c), -1):
                raise DomainError("matrix is not a root vector multiple")
            return {idx: c}
        out = {}
        rest = dict(mat)
        for j in range(self.d):
            H = self.matrices[self.K + j]
            key = next(k for k, v in sorted(H.items()) if v)
            c = mat.get(key, 0) / H[key]
            if c:
                out[self.K + j] = c
                rest = mat_add(rest, H, -c)
        if rest:
            raise DomainError("diagonal matrix outside the Cartan span")
        return out

    def bracket(self, x, y):
        """Bracket of two linear combinations {basis index: coeff}."""
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.table[(a, b)].items():
                    s = out.get(c, 0) + ca * cb * v
                    if s:
                        out[c] = s
                    else:
                        out.pop(c, None)
        return out

    def h_alpha(self, vec):
        """Cartan combination h with beta(h) = (vec, beta)."""
        return {self.K + j: Fraction(s * a) for j, (s, a) in enumerate(zip(self.rs.signs, vec)) if a}

    def weight_value(self, lam, i):
        """lam(H_i) for a Cartan basis index."""
        return Fraction(lam[i - self.K])


def _nullspace_root_vector(vparity, vweight, gram, alpha, parity, nv):
    """Root space of osp/sp: supported on entries (a, b) with
    wt(a) - wt(b) = alpha, subject to the invariance equations."""
    entries = [(a, b) for a in range(nv) for b in range(nv)
               if tuple(x - y for x, y in zip(vweight[a], vweight[b])) == tuple(alpha)
               and (vparity[a] + vparity[b]) % 2 == parity]
    if not entries:
        raise DomainError("no matrix entries for root")
    eqs = []
    # B(X u_a, u_b) + (-1)^{|X||a|} B(u_a, X u_b) = 0
    for a in range(nv):
        for b in range(nv):
            row = [0] * len(entries)
            for t, (i, j) in enumerate(entries):
                if j == a:
                    row[t] += gram.get((i, b), 0)
                if j == b:
                    row[t] += (-1) ** (parity * vparity[a]) * gram.get((a, i), 0)
            if any(row):
                eqs.append(row)
    M = sympy.Matrix(eqs) if eqs else sympy.zeros(1, len(entries))
    ns = M.nullspace()
    if len(ns) != 1:
        raise DomainError(f"root space of dimension {len(ns)}")
    v = ns[0]
    first = next(x for x in v if x != 0)
    out = {}
    for t, x in enumerate(v):
        if x != 0:
            y = x / first
            out[entries[t]] = Fraction(int(y.p), int(y.q))
    return out


def _walkthrough_overrides(rs, neg, par):
    """Fix e_{-gamma} for non-simple roots by the bracket recipes of the
    sp(6)/osp(2,4) walkthrough."""
    def idx(text):
        return rs.index(parse_root(rs, text))

    def br(x, y):
        return supercommutator(neg[x], par[x], neg[y], par[y])

    recipe = [("a1+a2", "a1", "a2"), ("2a1+a2", "a1", "a1+a2"), ("b+a1", "a1", "b"),
              ("b+a1+a2", "a2", "b+a1"), ("b+2a1+a2", "a1", "b+a1+a2")]
    for tgt, x, y in recipe:
        neg[idx(tgt)] = br(idx(x), idx(y))


def realize(rs: RootSystem) -> StructureTable:
    """Matrix realization of g with basis e_{-alpha}, H_label, e_alpha."""
    d = rs.dim
    if rs.family in ("gl", "sl"):
        nv = rs.m + rs.n
        vparity = [0] * rs.m + [1] * rs.n
        vweight = [tuple(int(i == a) for i in range(d)) for a in range(nv)]
        neg, pos = [], []
        for r in rs.positive:
            a = r.vec.index(1)
            b = r.vec.index(-1)
            neg.append({(b, a): Fraction(1)})
            pos.append({(a, b): Fraction(1)})
        cartan = [{(j, j): Fraction(1)} for j in range(d)]
    else:
        if rs.family == "sp":
            n = rs.m
            nv = 2 * n
            vparity = [0] * nv
            vweight = [tuple(int(i == a) for i in range(d)) for a in range(n)] + \
                [tuple(-int(i == a) for i in range(d)) for a in range(n)]
            gram = {}
            for a in range(n):
                gram[(a, n + a)] = 1
                gram[(n + a, a)] = -1
        elif (rs.m, rs.n) == (2, 4):
            # u, u' even (+-e1); w1, w2, w1', w2' odd (+-d1, +-d2)
            nv = 6
            vparity = [0, 0, 1, 1, 1, 1]
            vweight = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1), (0, -1, 0), (0, 0, -1)]
            gram = {(0, 1): 1, (1, 0): 1, (2, 4): 1, (4, 2): -1, (3, 5): 1, (5, 3): -1}
        elif (rs.m, rs.n) == (3, 2):
            nv = 5
            vparity = [0, 0, 0, 1, 1]
            vweight = [(1, 0), (0, 0), (-1, 0), (0, 1), (0, -1)]
            gram = {(0, 2): 1, (2, 0): 1, (1, 1): 1, (3, 4): 1, (4, 3): -1}
        else:
            raise DomainError("no realization for this algebra")
        neg = [_nullspace_root_vector(vparity, vweight, gram, tuple(-c for c in r.vec), r.parity, nv)
               for r in rs.positive]
        pos = [_nullspace_root_vector(vparity, vweight, gram, r.vec, r.parity, nv)
               for r in rs.positive]
        cartan = []
        for j in range(d):
            H = {}
            for a in range(nv):
                if vweight[a][j]:
                    H[(a, a)] = Fraction(vweight[a][j])
            cartan.append(H)
        if rs.basis_choice == "distinguished" and (
                (rs.family == "sp" and rs.m == 3) or (rs.family == "osp" and (rs.m, rs.n) == (2, 4))):
            _walkthrough_overrides(rs, neg, [r.parity for r in rs.positive])
    # scale e_alpha so that [e_a, e_{-a}] = h_a
    for k, r in enumerate(rs.positive):
        br = supercommutator(pos[k], r.parity, neg[k], r.parity)
        h = {}
        for j, (s, a) in enumerate(zip(rs.signs, r.vec)):
            if a:
                h = mat_add(h, cartan[j], Fraction(s * a))
        key = next(iter(h))
        if key not in br or not br[key]:
            raise DomainError(f"degenerate root pair for {format_root(rs, r.vec)}")
        c = h[key] / br[key]
        pos[k] = mat_scale(pos[k], c)
        if mat_add(supercommutator(pos[k], r.parity, neg[k], r.parity), h, -1):
            raise DomainError("normalization failed")
    return StructureTable(rs, vparity, vweight, neg, pos, cartan)


def bracket(t: StructureTable, x, y):
    return t.bracket(x, y)


_TABLES = {}


def table_for(rs: RootSystem) -> StructureTable:
    """Cached realization keyed by algebra and basis choice."""
    key = (rs.family, rs.m, rs.n, rs.basis_choice)
    t = _TABLES.get(key)
    if t is None:
        t = realize(rs)
        _TABLES[key] = t
    return t
