"""Determinant formulas for Sapovalov elements in type A.

For gl(m|n) and gamma = e_r - d_s the element theta_gamma(lam) is a sum of
products of two noncommutative determinants of matrices with entries in
U(n^-).  For gl(m) and alpha = e_r - e_t, theta_{alpha,1}(lam) is a single
determinant and powers are products of shifted determinants.

Matrix units e_{i,j} (1-based, i > j) are the negative root vectors of the
distinguished realization.  Entries are evaluated at a fixed weight lam.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .liealg import StructureTable
from .rootdata import DomainError, RootSystem, copair
from .uea import UNElement, generator, make_order, multiply, pbw_for, reorder


def _perm_sign(w):
    inv = sum(1 for a, b in itertools.combinations(range(len(w)), 2) if w[a] > w[b])
    return -1 if inv % 2 else 1


class NCMatrix:
    """Rectangular matrix of U(n^-) elements (None stands for 0)."""

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]

    @property
    def shape(self):
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def delete_row(self, i):
        """Drop row i (1-based)."""
        return NCMatrix([r for k, r in enumerate(self.rows, start=1) if k != i])

    def delete_col(self, j):
        return NCMatrix([[x for k, x in enumerate(r, start=1) if k != j] for r in self.rows])

    def append_col(self, col):
        if len(col) != len(self.rows):
            raise DomainError("column length does not match")
        return NCMatrix([r + [c] for r, c in zip(self.rows, col)])


def ncdet(M: NCMatrix, pbw, direction="right"):
    """Column-ordered determinant.  direction 'right' multiplies
    b_{w(1),1} ... b_{w(k),k}; 'left' multiplies b_{w(k),k} ... b_{w(1),1}.
    The 0 x 0 determinant is 1."""
    k, k2 = M.shape if M.rows else (0, 0)
    if k != k2:
        raise DomainError("determinant of a non-square matrix")
    if k == 0:
        return UNElement(pbw, {pbw.unit(): Fraction(1)})
    out = UNElement(pbw, {})
    for w in itertools.permutations(range(k)):
        factors = [M.rows[w[c]][c] for c in range(k)]
        if any(f is None or not f for f in factors):
            continue
        if direction == "left":
            factors.reverse()
        prod = factors[0]
        for f in factors[1:]:
            prod = multiply(prod, f)
        out = out + prod.scale(_perm_sign(w))
    return out


# -- entries -----------------------------------------------------------------

def _pbw(t):
    return pbw_for(t, make_order(t.rs))


def matrix_unit(rs: RootSystem, t: StructureTable, i, j):
    """e_{i,j} for i > j (1-based), the negative root vector of weight eps_i - eps_j."""
    if i <= j:
        raise DomainError("matrix unit must lie below the diagonal")
    v = [0] * rs.dim
    v[j - 1] += 1
    v[i - 1] -= 1
    return generator(_pbw(t), rs.index(tuple(v)))


def scalar(t, c):
    pbw = _pbw(t)
    c = Fraction(c)
    return UNElement(pbw, {pbw.unit(): c} if c else {})


def _shifted(rs, lam):
    return tuple(Fraction(x) + r for x, r in zip(lam, rs.rho))


def sigma_pairing(rs, lam, i, j):
    """(lam + rho, sigma_{i,j}^vee), sigma_{i,j} = eps_i - eps_j."""
    v = [0] * rs.dim
    v[i - 1] += 1
    v[j - 1] -= 1
    return copair(rs, _shifted(rs, lam), tuple(v))


def tau_pairing(rs, lam, k, l):
    """(lam + rho, tau_{k,l}^vee), tau_{k,l} = d_k - d_l."""
    v = [0] * rs.dim
    v[rs.m + k - 1] += 1
    v[rs.m + l - 1] -= 1
    return copair(rs, _shifted(rs, lam), tuple(v))


def _gamma_indices(rs, gamma):
    if rs.family != "gl" or rs.basis_choice != "distinguished":
        raise DomainError("determinant formulas need distinguished gl(m|n)")
    gamma = tuple(gamma)
    if not rs.positive[rs.index(gamma)].isotropic:
        raise DomainError("gamma must be e_r - d_s")
    r = gamma.index(1) + 1
    s = gamma.index(-1) - rs.m + 1
    return r, s


def build_plus(rs, t, lam, r, shift=0):
    """Upper block for the e-indices r..m, unshifted (shift 0) or shifted
    (shift 1): (m-r+1) x (m-r),
    entry (i, j) = e_{r+j, r+i-1} for j >= i, -a_j for i = j+1, else 0,
    a_j = (lam + rho, sigma_{r,r+j}^vee) - shift."""
    m = rs.m
    rows = []
    for i in range(1, m - r + 2):
        row = []
        for j in range(1, m - r + 1):
            if j >= i:
                row.append(matrix_unit(rs, t, r + j, r + i - 1))
            elif i == j + 1:
                row.append(scalar(t, -(sigma_pairing(rs, lam, r, r + j) - shift)))
            else:
                row.append(None)
        rows.append(row)
    if not rows:
        rows = [[]]
    return NCMatrix(rows)


def build_minus(rs, t, lam, s, shift=0, diag_sign=1):
    """Lower block for the d-indices 1..s, unshifted (shift 0) or shifted
    (shift 1): s x (s-1), entry
    (i, j) = diag_sign * (b_i - shift) for i = j, e_{m+i, m+j} for i > j,
    b_i = (lam + rho, tau_{i,s}^vee)."""
    m = rs.m
    rows = []
    for i in range(1, s + 1):
        row = []
        for j in range(1, s):
            if i == j:
                row.append(scalar(t, diag_sign * (tau_pairing(rs, lam, i, s) - shift)))
            elif i > j:
                row.append(matrix_unit(rs, t, m + i, m + j))
            else:
                row.append(None)
        rows.append(row)
    return NCMatrix(rows)


def theta_det(rs: RootSystem, t: StructureTable, gamma, lam, variant="shtpa", diag_sign=1):
    """theta_gamma(lam) for gl(m|n), gamma = e_r - d_s, by one of three
    determinant expansions:

    shtpa: odd vector rightmost, unshifted blocks, det->(upper) det<-(lower).
    shtpb: odd vector leftmost, shifted blocks, det<-(upper) det->(lower).
    thtpa: odd vectors inside an extra column of the unshifted upper block.
    """
    r, s = _gamma_indices(rs, gamma)
    m = rs.m
    pbw = _pbw(t)
    lam = tuple(Fraction(x) for x in lam)
    out = UNElement(pbw, {})
    if variant in ("shtpa", "shtpb"):
        shift = 0 if variant == "shtpa" else 1
        Ap = build_plus(rs, t, lam, r, shift)
        Am = build_minus(rs, t, lam, s, shift, diag_sign)
        for j in range(1, m - r + 2):
            for i in range(1, s + 1):
                odd = matrix_unit(rs, t, m + i, j + r - 1)
                if variant == "shtpa":
                    dp = ncdet(Ap.delete_row(j), pbw, "right")
                    dm = ncdet(Am.delete_row(i), pbw, "left")
                    term = multiply(multiply(dp, dm), odd).scale((-1) ** (m + r + i + j))
                else:
                    dp = ncdet(Ap.delete_row(j), pbw, "left")
                    dm = ncdet(Am.delete_row(i), pbw, "right")
                    term = multiply(multiply(odd, dp), dm).scale((-1) ** (i + j + r + m))
                out = out + term
        return out
    if variant == "thtpa":
        Ap = build_plus(rs, t, lam, r)
        Am = build_minus(rs, t, lam, s, 0, diag_sign)
        for i in range(1, s + 1):
            col = [matrix_unit(rs, t, m + i, k) for k in range(r, m + 1)]
            C = Ap.append_col(col) if Ap.shape[1] else NCMatrix([[c] for c in col])
            dm = ncdet(Am.delete_row(i), pbw, "left")
            out = out + multiply(dm, ncdet(C, pbw, "right")).scale((-1) ** (i + 1))
        return out
    raise DomainError(f"unknown determinant variant {variant}")


# -- gl(m) -------------------------------------------------------------------

def build_c(rs, t, lam, r, tt):
    """C_lam for alpha = e_r - e_t: (t-r) x (t-r), entry (i, j) =
    e_{r+j, r+i-1} for j >= i and -(lam + rho, sigma_{r,r+j}^vee) for i = j+1."""
    n = tt - r
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j >= i:
                row.append(matrix_unit(rs, t, r + j, r + i - 1))
            elif i == j + 1:
                row.append(scalar(t, -sigma_pairing(rs, lam, r, r + j)))
            else:
                row.append(None)
        rows.append(row)
    return NCMatrix(rows)


def _even_indices(rs, alpha):
    if rs.family not in ("gl", "sl") or rs.n:
        raise DomainError("the gl(m) determinant needs an even type A algebra")
    alpha = tuple(alpha)
    r = alpha.index(1) + 1
    tt = alpha.index(-1) + 1
    if tt <= r:
        raise DomainError("alpha must be positive")
    return r, tt


def theta_det_gl(rs: RootSystem, t: StructureTable, alpha, lam):
    """det->(C_lam), which equals theta_{alpha,1}(lam) on (lam+rho, alpha^vee) = 1."""
    r, tt = _even_indices(rs, alpha)
    return ncdet(build_c(rs, t, lam, r, tt), _pbw(t), "right")


def power_product_gl(rs: RootSystem, t: StructureTable, alpha, p, lam):
    """det C_{lam-(p-1)alpha} ... det C_{lam-alpha} det C_lam."""
    prod = None
    for i in range(p - 1, -1, -1):
        f = theta_det_gl(rs, t, alpha, tuple(Fraction(x) - i * a for x, a in zip(lam, alpha)))
        prod = f if prod is None else multiply(prod, f)
    return prod


def split_check(rs: RootSystem, t: StructureTable, r, s, tt, lam):
    """When (lam+rho, sigma_{r,t}^vee) = 1 and (lam+rho, sigma_{r,s}^vee) = 0:
    theta_{r,t}(lam) = theta_{r,s}(lam - sigma_{s,t}) theta_{s,t}(lam)."""
    lam = tuple(Fraction(x) for x in lam)
    if sigma_pairing(rs, lam, r, tt) != 1 or sigma_pairing(rs, lam, r, s) != 0:
        raise DomainError("weight outside the splitting locus")

    def root(i, j):
        v = [0] * rs.dim
        v[i - 1] += 1
        v[j - 1] -= 1
        return tuple(v)
    st = root(s, tt)
    whole = theta_det_gl(rs, t, root(r, tt), lam)
    right = theta_det_gl(rs, t, st, lam)
    left = theta_det_gl(rs, t, root(r, s), tuple(x - y for x, y in zip(lam, st)))
    return multiply(left, right) == whole


def in_order(u, order):
    return reorder(u, order)
