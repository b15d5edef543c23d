"""Command-line driver: construction, verification suites and walkthroughs.

    shapkit construct --algebra "gl(2|1)" --gamma e1-d1 --m 1
    shapkit verify --suite zprod --algebra "gl(2|2)"
    shapkit example osp24
    shapkit typea-det --algebra "gl(2|2)" --gamma e1-d2 --lam=-1,1,-1,1

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
Verification cells run in up to SHAPKIT_THREADS worker processes; the
report order does not depend on the thread count.
"""
from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from dataclasses import dataclass, field, fields
from fractions import Fraction

import sympy

from .liealg import table_for
from .rootdata import (DomainError, NotRepresentable, WeylWord, format_root,
                       generic_hyperplane_points, minimal_words, choose_subgroup,
                       padded_sample, parse_algebra, parse_root)
from .shap import (EXAMPLE_FACTORIZATIONS, EXAMPLE_FIXTURES, EXAMPLE_ROOTS,
                   ConsistencyError, borel_chain_check, construct,
                   construct_at, example_construction, example_factorizations,
                   example_parameters, fixture_check, parallel_map,
                   theta_power_check, theta_square_check, verify_bounds)
from .typea import power_product_gl, split_check, theta_det, theta_det_gl
from .uea import (format_element, make_order, multiply, pbw_for, reorder,
                  specialize, straighten, to_json)
from .verma import (independent, is_highest_weight, kac_survival, lambda_sets,
                    theta_vector)

SUITES = ("osp24", "typeA", "bounds", "zprod", "powers", "survival", "borel",
          "uniqueness", "kernel")
EXAMPLES = ("osp24", "osp24-opposite", "gl21")
VARIANTS = ("shtpa", "shtpb", "thtpa")

# default sample counts per suite (used when --samples is not given)
DEFAULT_SAMPLES = {"osp24": 3, "typeA": 20, "bounds": 4, "zprod": 10, "powers": 3,
                   "survival": 0, "borel": 10, "uniqueness": 6, "kernel": 30}

GL_SMALL = tuple(f"gl({m}|{n})" for m in (1, 2, 3) for n in (1, 2, 3))


# ---------------------------------------------------------------------------
# configuration

@dataclass
class RunConfig:
    """Parsed command line.  Defaults: m = 1, order distinguished, route
    symbolic, samples per suite (DEFAULT_SAMPLES), seed 0, text output."""
    command: str = "construct"
    algebra: str | None = None
    gamma: str | None = None
    m: int = 1
    order: str = "distinguished"
    route: str = "symbolic"
    samples: int | None = None
    seed: int = 0
    format: str = "text"
    suite: str = "all"
    name: str | None = None
    lam: str | None = None
    variant: str = "shtpa"

    def to_argv(self):
        """Command line that parses back to this config."""
        argv = [self.command]
        if self.command == "example":
            argv.append(self.name)
        for f in fields(self):
            if f.name in ("command", "name"):
                continue
            v = getattr(self, f.name)
            if v is None or v == f.default:
                continue
            argv.append(f"--{f.name}={v}")
        return argv


def build_parser():
    ap = argparse.ArgumentParser(prog="shapkit",
                                 description="Sapovalov elements for Lie superalgebras")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--algebra", help="e.g. gl(2|1), sl(3), sp(6), osp(2,4), osp(3,2)")
        p.add_argument("--gamma", help="positive root, e.g. e1-d1 or b+2a1+a2")
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--order", default="distinguished",
                       help="distinguished, odd-first, odd-last, cosp, cosp-opposite, "
                            "or a comma separated list of roots")
        p.add_argument("--route", default="symbolic", choices=("symbolic", "evaluated"))
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", default="text", choices=("text", "json"))
        p.add_argument("--lam", default=None, help="comma separated weight coordinates")
        p.add_argument("--variant", default="shtpa", choices=VARIANTS)
        p.add_argument("--suite", default="all", choices=SUITES + ("all",))

    common(sub.add_parser("construct", help="print theta_{gamma,m} or theta_{gamma,m}(lam)"))
    common(sub.add_parser("verify", help="run verification suites"))
    ex = sub.add_parser("example", help="annotated walkthroughs")
    ex.add_argument("name")
    common(ex)
    common(sub.add_parser("typea-det", help="determinant formula for gl(m|n) at a weight"))
    return ap


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    kw = {f.name: getattr(ns, f.name) for f in fields(RunConfig) if hasattr(ns, f.name)}
    return RunConfig(**kw)


def parse_weight(rs, text):
    vals = [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    if len(vals) != rs.dim:
        raise DomainError(f"weight needs {rs.dim} coordinates ({', '.join(rs.labels)})")
    return tuple(vals)


def _need(cfg, *names):
    for n in names:
        if getattr(cfg, n) is None:
            raise DomainError(f"--{n} is required")


def _order_spec(text):
    return text if "," not in text else [s.strip() for s in text.split(",")]


# ---------------------------------------------------------------------------
# construct / typea-det

def cmd_construct(cfg: RunConfig, out):
    _need(cfg, "algebra", "gamma")
    rs = parse_algebra(cfg.algebra)
    t = table_for(rs)
    gamma = parse_root(rs, cfg.gamma)
    order = make_order(rs, _order_spec(cfg.order))
    s = construct(rs, gamma, cfg.m, order=order, route=cfg.route, table=t)
    lam = parse_weight(rs, cfg.lam) if cfg.lam else None
    if lam is not None and not s.hyperplane.contains(lam):
        raise DomainError("lam is not on the hyperplane of gamma")
    u = s.element if lam is None else specialize(s.element, lam)
    head = {"algebra": rs.name(), "gamma": format_root(rs, gamma), "m": cfg.m,
            "word": list(s.word.indices), "base": s.word.base, "route": cfg.route}
    if lam is not None:
        head["lambda"] = [str(x) for x in lam]
    if cfg.format == "json":
        out.write(json.dumps({**head, "element": to_json(u)}, sort_keys=True) + "\n")
    else:
        out.write(f"# {head['algebra']}  gamma = {head['gamma']}  m = {cfg.m}  "
                  f"word = {head['word']} base {head['base']}\n")
        if lam is not None:
            out.write(f"# lambda = ({', '.join(head['lambda'])})\n")
        out.write(format_element(u) + "\n")
    return 0


def cmd_typea_det(cfg: RunConfig, out):
    _need(cfg, "algebra", "gamma", "lam")
    rs = parse_algebra(cfg.algebra)
    t = table_for(rs)
    gamma = parse_root(rs, cfg.gamma)
    lam = parse_weight(rs, cfg.lam)
    u = theta_det(rs, t, gamma, lam, cfg.variant)
    direct = construct(rs, gamma, 1, table=t)
    agree = None
    if direct.hyperplane.contains(lam):
        agree = reorder(u, direct.order) == direct.at(lam)
    if cfg.format == "json":
        out.write(json.dumps({"algebra": rs.name(), "gamma": format_root(rs, gamma),
                              "variant": cfg.variant, "lambda": [str(x) for x in lam],
                              "element": to_json(u), "agrees_with_construct": agree},
                             sort_keys=True) + "\n")
    else:
        out.write(format_element(u) + "\n")
        out.write(f"# agrees with construct: {agree}\n")
    return 0


# ---------------------------------------------------------------------------
# verification cells (top level so that they can run in worker processes)

@dataclass
class Result:
    suite: str
    check: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def record(self):
        return {"suite": self.suite, "check": self.check, "ok": self.ok, "detail": self.detail}


def _roots(rs, pred=lambda r: True):
    return [format_root(rs, r.vec) for r in rs.positive if pred(r)]


def cell_typea(alg, gtext, samples):
    """Symbolic construction, per-point recursion and the three determinant
    expansions agree on sampled lam in the hyperplane."""
    rs = parse_algebra(alg)
    t = table_for(rs)
    g = parse_root(rs, gtext)
    s = construct(rs, g, 1, table=t)
    pts = padded_sample(rs, g, 1, samples)
    bad = []
    for lam in pts:
        want = s.at(lam)
        got = {"construct_at": construct_at(rs, g, 1, lam, order=s.order, table=t)}
        for v in VARIANTS:
            got[v] = reorder(theta_det(rs, t, g, lam, v), s.order)
        bad += [k for k, u in got.items() if u != want]
    return Result("typeA", f"{alg} {gtext}", not bad and len(pts) >= samples,
                  {"samples": len(pts), "mismatches": sorted(set(bad))})


def cell_bounds(alg, gtext, m, samples, basis="distinguished", clifford=None):
    """Highest weight property at sampled points, the degree bound and the
    leading coefficient. The Clifford bound is checked for words through odd
    non-isotropic reflections, or always when clifford is True."""
    rs = parse_algebra(alg, basis)
    t = table_for(rs)
    g = parse_root(rs, gtext)
    label = f"{alg}{'' if basis == 'distinguished' else ' ' + basis} {gtext} m={m}"
    try:
        s = construct(rs, g, m, table=t)
    except NotRepresentable:
        return Result("bounds", label, True, {"skipped": "not a Weyl conjugate of a simple root"})
    rep = verify_bounds(s, clifford)
    pts = padded_sample(rs, g, m, samples, word=s.word)
    hw = all(is_highest_weight(t, theta_vector(t, s.element, lam)) for lam in pts)
    detail = {"highest_weight": hw, "samples": len(pts), "subgroup": s.subgroup,
              "degree": rep.degree_ok, "leading_form": rep.leading_degree_ok and rep.leading_proportional,
              "leading_constant": None if rep.leading_constant is None else str(rep.leading_constant),
              "clifford": rep.clifford_ok, "top_unique": rep.top_unique}
    return Result("bounds", label, hw and rep.ok and bool(pts), detail)


def cell_example_bounds(alg):
    """The worked-example elements reach equality in the degree bound."""
    from .shap import EXAMPLE_STAGE_WORDS as W
    rs = parse_algebra(alg)
    t = table_for(rs)
    eq = {}
    for stage, root in EXAMPLE_ROOTS.items():
        s = construct(rs, parse_root(rs, root), 1, word=WeylWord(W[stage], 0), table=t)
        rep = verify_bounds(s)
        eq[root] = rep.ok and rep.degree_equality
    return Result("bounds", f"{alg} worked example degree equality", all(eq.values()), eq)


def cell_square(alg, gtext, samples, seed):
    rs = parse_algebra(alg)
    t = table_for(rs)
    g = parse_root(rs, gtext)
    s = construct(rs, g, 1, table=t)
    pts = generic_hyperplane_points(rs, g, 1, samples, seed=seed)
    res = [theta_square_check(rs, t, g, lam, s.element) for lam in pts]
    return Result("zprod", f"{alg} {gtext}", all(res) and len(res) >= samples,
                  {"samples": len(res)})


def cell_power(alg, gtext, m, samples, seed):
    rs = parse_algebra(alg)
    t = table_for(rs)
    g = parse_root(rs, gtext)
    from .shap import power_word
    w = power_word(rs, t, g, m)
    big = construct(rs, g, m, word=w, table=t)
    one = construct(rs, g, 1, word=w, table=t)
    pts = generic_hyperplane_points(rs, g, m, samples, seed=seed)
    res = [theta_power_check(rs, t, g, m, lam, elements=(big, one)) for lam in pts]
    return Result("powers", f"{alg} {gtext} m={m}", all(res),
                  {"samples": len(res), "word": list(w.indices), "base": w.base})


def cell_power_gl(alg, gtext, samples, seed):
    """gl(m): the single determinant and the products of shifted determinants."""
    rs = parse_algebra(alg)
    t = table_for(rs)
    g = parse_root(rs, gtext)
    s1 = construct(rs, g, 1, table=t)
    ok1 = all(reorder(theta_det_gl(rs, t, g, lam), s1.order) == s1.at(lam)
              for lam in padded_sample(rs, g, 1, samples))
    okp = {}
    for p in (2, 3):
        sp = construct(rs, g, p, table=t)
        okp[p] = all(reorder(power_product_gl(rs, t, g, p, lam), sp.order) == sp.at(lam)
                     for lam in generic_hyperplane_points(rs, g, p, samples, seed=seed))
    return Result("powers", f"{alg} {gtext} determinant products", ok1 and all(okp.values()),
                  {"single": ok1, "products": {str(k): v for k, v in okp.items()}})


def cell_split(alg):
    rs = parse_algebra(alg)
    t = table_for(rs)
    from .typea import sigma_pairing
    oks = []
    for r, s, tt in itertools.combinations(range(1, rs.m + 1), 3):
        n = 0
        for vals in itertools.product(range(-3, 4), repeat=rs.dim):
            lam = tuple(Fraction(v) for v in vals)
            if sigma_pairing(rs, lam, r, tt) == 1 and sigma_pairing(rs, lam, r, s) == 0:
                oks.append(split_check(rs, t, r, s, tt, lam))
                n += 1
            if n >= 3:
                break
    return Result("powers", f"{alg} determinant splitting", all(oks) and bool(oks),
                  {"cases": len(oks)})


def cell_kac(alg, box=3):
    rs = parse_algebra(alg)
    t = table_for(rs)
    cnt = bad = 0
    for r in rs.positive:
        if not r.isotropic:
            continue
        el = construct(rs, r.vec, 1, order="odd-first", table=t).element
        for vals in itertools.product(range(-box, box + 1), repeat=rs.dim):
            lam = tuple(Fraction(v) for v in vals)
            try:
                rep = kac_survival(rs, t, lam, r.vec, el)
            except DomainError:
                continue
            cnt += 1
            bad += not (rep.nonzero and rep.matches)
    return Result("survival", f"{alg} Kac module coefficient", cnt > 0 and bad == 0,
                  {"cases": cnt, "failures": bad})


def cell_independence(alg, box=2):
    rs = parse_algebra(alg)
    t = table_for(rs)
    cache = {}

    def th(g):
        if g not in cache:
            cache[g] = construct(rs, g, 1, order="odd-last", table=t).element
        return cache[g]
    stats = {}
    bad = 0
    for vals in itertools.product(range(-box, box + 1), repeat=rs.dim):
        lam = tuple(Fraction(v) for v in vals)
        B = lambda_sets(rs, lam).B
        if len(B) not in (1, 2):
            continue
        for g in B:
            rep = independent(rs, t, lam, g, th)
            key = f"|B|={len(B)} minimal={rep.minimal} independent={rep.independent}"
            stats[key] = stats.get(key, 0) + 1
            bad += rep.minimal != rep.independent
    return Result("survival", f"{alg} independence vs minimality",
                  bad == 0 and any(k.startswith("|B|=2") for k in stats),
                  {"stats": dict(sorted(stats.items())), "failures": bad})


def _chain_points(rs, g, count, seed):
    from .shap import chain_borels, _shifted
    chain, _ = chain_borels(rs, g)
    rng = random.Random(seed)
    out = []
    for lam in generic_hyperplane_points(rs, g, 1, 20 * count, seed=seed, box=12):
        if all(_shifted(rs, lam, a) != 0 for a in chain.alphas):
            out.append(lam)
        if len(out) >= count:
            break
    rng.shuffle(out)
    return out


def cell_borel(alg, gtext, samples, seed):
    rs = parse_algebra(alg)
    t = table_for(rs)
    g = parse_root(rs, gtext)
    pts = _chain_points(rs, g, samples, seed)
    rep = borel_chain_check(rs, t, g, pts)
    return Result("borel", f"{alg} {gtext}", rep.ok and len(pts) >= samples,
                  {"samples": len(pts), "constant": None if rep.constant is None else str(rep.constant),
                   "links": rep.links_ok, "removable": sorted(rep.removable),
                   "lead_constant": None if rep.lead_constant is None else str(rep.lead_constant)})


def cell_uniqueness(alg, gtext, samples, seed, expect_off_discrepancy):
    """Distinct minimal words agree on the hyperplane; off it (raw
    coefficients) they may differ."""
    rs = parse_algebra(alg)
    t = table_for(rs)
    g = parse_root(rs, gtext)
    words = minimal_words(rs, g, choose_subgroup(rs, g))
    els = [construct(rs, g, 1, word=w, table=t) for w in words]
    on = all(reorder(e.at(lam), els[0].order) == els[0].at(lam)
             for lam in generic_hyperplane_points(rs, g, 1, samples, seed=seed) for e in els)
    rng = random.Random(seed)
    off_pts = [tuple(Fraction(rng.randint(-5, 5)) for _ in range(rs.dim)) for _ in range(samples)]
    off_pts = [p for p in off_pts if not els[0].hyperplane.contains(p)]
    differ = any(reorder(specialize(e.raw, p), els[0].order) != specialize(els[0].raw, p)
                 for p in off_pts for e in els[1:])
    ok = len(words) >= 2 and on and (differ or not expect_off_discrepancy)
    return Result("uniqueness", f"{alg} {gtext}", ok,
                  {"words": [[list(w.indices), w.base] for w in words], "on_hyperplane": on,
                   "off_hyperplane_discrepancy": differ})


def _super_jacobi(t):
    """[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]] on basis triples, and
    the grading of every table entry."""
    n = t.size
    par = t.parities
    for a, b in itertools.product(range(n), repeat=2):
        for c, v in t.table[(a, b)].items():
            w = tuple(x + y for x, y in zip(t.weights[a], t.weights[b]))
            if par[c] != (par[a] + par[b]) % 2 or (any(t.weights[c]) and t.weights[c] != w) \
                    or (not any(t.weights[c]) and any(w)):
                return "grading"
        sym = {k: -(-1) ** (par[a] * par[b]) * v for k, v in t.table[(b, a)].items()}
        if sym != t.table[(a, b)]:
            return "supersymmetry"
    for a, b, c in itertools.product(range(n), repeat=3):
        x, y, z = {a: 1}, {b: 1}, {c: 1}
        lhs = t.bracket(x, t.bracket(y, z))
        r1 = t.bracket(t.bracket(x, y), z)
        r2 = t.bracket(y, t.bracket(x, z))
        sgn = -1 if par[a] and par[b] else 1
        rhs = dict(r1)
        for k, v in r2.items():
            rhs[k] = rhs.get(k, 0) + sgn * v
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            return f"jacobi {a} {b} {c}"
    return None


def _random_element(rng, pbw):
    """A random word in the negative root vectors, straightened."""
    word = [rng.randrange(pbw.K) for _ in range(rng.randint(0, 3))]
    return straighten(pbw, word).scale(rng.randint(1, 5))


def cell_kernel(alg, samples, seed, basis="distinguished"):
    rs = parse_algebra(alg, basis)
    t = table_for(rs)
    err = _super_jacobi(t)
    rng = random.Random(seed)
    K = len(rs.positive)
    orders = [make_order(rs)]
    for _ in range(2):
        o = list(range(K))
        rng.shuffle(o)
        orders.append(tuple(o))
    assoc = roundtrip = True
    for _ in range(samples):
        pbw = pbw_for(t, rng.choice(orders))
        u, v, w = (_random_element(rng, pbw) for _ in range(3))
        if multiply(multiply(u, v), w) != multiply(u, multiply(v, w)):
            assoc = False
        uv = multiply(u, v)
        o2 = rng.choice(orders)
        if reorder(reorder(uv, o2), pbw.order) != uv:
            roundtrip = False
    label = f"{alg}{'' if basis == 'distinguished' else ' ' + basis}"
    return Result("kernel", label, err is None and assoc and roundtrip,
                  {"bracket": err or "ok", "associativity": assoc, "reorder_roundtrip": roundtrip})


def cell_osp24(alg, samples):
    rs = parse_algebra(alg)
    t = table_for(rs)
    s = example_construction(rs, t)
    fx = {name: fixture_check(rs, t, name, s) for name in EXAMPLE_FIXTURES}
    recs = example_factorizations(rs, t, samples, s)
    fac = {}
    for r in recs:
        key = f"{r.label} theta{r.stage}"
        fac[key] = fac.get(key, True) and r.ok
    return Result("osp24", f"{alg} fixtures and factorizations",
                  all(fx.values()) and all(fac.values()) and len(fac) == len(EXAMPLE_FACTORIZATIONS),
                  {"fixtures": fx, "factorizations": fac})


def _run_cell(cell):
    fn, args = cell
    try:
        return CELLS[fn](*args)
    except (DomainError, ConsistencyError) as e:
        return Result(fn, " ".join(str(a) for a in args), False, {"error": str(e)})


CELLS = {"typea": cell_typea, "bounds": cell_bounds, "example_bounds": cell_example_bounds,
         "square": cell_square, "power": cell_power, "power_gl": cell_power_gl,
         "split": cell_split, "kac": cell_kac, "independence": cell_independence,
         "borel": cell_borel, "uniqueness": cell_uniqueness, "kernel": cell_kernel,
         "osp24": cell_osp24}


def _iso(alg):
    rs = parse_algebra(alg)
    return _roots(rs, lambda r: r.isotropic)


def suite_cells(suite, cfg: RunConfig):
    """The verification cells of a suite; --algebra narrows the default set."""
    n = cfg.samples if cfg.samples is not None else DEFAULT_SAMPLES[suite]
    seed = cfg.seed
    alg = cfg.algebra
    cells = []
    if suite == "osp24":
        for a in ([alg] if alg else ["osp(2,4)", "sp(6)"]):
            cells.append(("osp24", (a, n)))
    elif suite == "typeA":
        for a in ([alg] if alg else GL_SMALL):
            cells += [("typea", (a, g, n)) for g in _iso(a)]
    elif suite == "bounds":
        if alg:
            rs = parse_algebra(alg)
            for r in rs.positive:
                if rs.is_even_half(r.vec):
                    continue
                cells.append(("bounds", (alg, format_root(rs, r.vec), 1, n)))
        else:
            for a in GL_SMALL:
                cells += [("bounds", (a, g, 1, n)) for g in _iso(a)]
            for a in ("sl(4)", "sp(6)"):
                rs = parse_algebra(a)
                for g in _roots(rs):
                    cells += [("bounds", (a, g, m, n)) for m in (1, 2, 3)]
            rs = parse_algebra("osp(3,2)", "anti_distinguished")
            for r in rs.positive:
                if not rs.is_even_half(r.vec):
                    cells.append(("bounds", ("osp(3,2)", format_root(rs, r.vec), 1, n,
                                             "anti_distinguished", True)))
            cells += [("example_bounds", (a,)) for a in ("osp(2,4)", "sp(6)")]
    elif suite == "zprod":
        for a in ([alg] if alg else ["gl(2|1)", "gl(2|2)", "gl(3|2)"]):
            cells += [("square", (a, g, n, seed)) for g in _iso(a)]
    elif suite == "powers":
        algs = [alg] if alg else ["sl(3)", "sl(4)", "sp(6)", "gl(3)", "gl(4)"]
        for a in algs:
            rs = parse_algebra(a)
            if rs.family == "gl" and rs.n == 0:
                cells += [("power_gl", (a, g, n, seed)) for g in _roots(rs)]
                if rs.m >= 3:
                    cells.append(("split", (a,)))
            else:
                cells += [("power", (a, g, m, n, seed)) for g in _roots(rs, lambda r: not r.isotropic)
                          for m in (2, 3)]
    elif suite == "survival":
        for a in ([alg] if alg else ["gl(2|1)", "gl(2|2)"]):
            cells.append(("kac", (a,)))
        cells.append(("independence", (alg or "gl(2|2)",)))
    elif suite == "borel":
        for a in ([alg] if alg else ["gl(2|2)"]):
            cells += [("borel", (a, g, n, seed)) for g in _iso(a)]
    elif suite == "uniqueness":
        cells.append(("uniqueness", ("gl(2|2)", "e1-d2", n, seed, False)))
        cells.append(("uniqueness", ("sl(3)", "e1-e3", n, seed, True)))
    elif suite == "kernel":
        algs = [(alg, "distinguished")] if alg else \
            [(a, "distinguished") for a in ("gl(2|1)", "gl(2|2)", "gl(3|2)", "sl(3)", "sl(4)",
                                            "sp(6)", "osp(2,4)", "osp(3,2)")] + \
            [("osp(3,2)", "anti_distinguished"), ("gl(2|2)", "anti_distinguished")]
        cells += [("kernel", (a, n, seed, b)) for a, b in algs]
    else:
        raise DomainError(f"unknown suite {suite}")
    return cells


def run_suite(suite, cfg: RunConfig):
    return parallel_map(_run_cell, suite_cells(suite, cfg))


def cmd_verify(cfg: RunConfig, out):
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    results = []
    for s in suites:
        results += run_suite(s, cfg)
    ok = all(r.ok for r in results) and bool(results)
    if cfg.format == "json":
        out.write(json.dumps({"suite": cfg.suite, "ok": ok,
                              "results": [r.record() for r in results]}, sort_keys=True) + "\n")
    else:
        for r in results:
            out.write(f"{'PASS' if r.ok else 'FAIL'}  {r.suite:<10} {r.check}  "
                      f"{json.dumps(r.detail, sort_keys=True)}\n")
        out.write(f"{'PASS' if ok else 'FAIL'}  {cfg.suite}: "
                  f"{sum(r.ok for r in results)}/{len(results)} checks\n")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# walkthroughs

def _fixture_text(rs, name):
    stage, oname, terms = EXAMPLE_FIXTURES[name]
    p, q, r = sympy.symbols("p q r")
    parts = []
    for coef, word in terms:
        c = sympy.factor(sympy.sympify(coef(p, q, r)))
        parts.append(f"({c}) " + " ".join(f"e[-({x})]" for x in word))
    return "\n   + ".join(parts)


def cmd_example(cfg: RunConfig, out):
    name = cfg.name
    if name not in EXAMPLES:
        raise DomainError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    if name == "gl21":
        return _example_gl21(cfg, out)
    rs = parse_algebra(cfg.algebra or "osp(2,4)")
    t = table_for(rs)
    s = example_construction(rs, t)
    suffix = "" if name == "osp24" else "-opposite"
    doc = {"algebra": rs.name(), "word": [1, 2, 1], "stages": []}
    lines = [f"# {rs.name()}: gamma = b+2a1+a2 along s_a1 s_a2 s_a1 from beta = b",
             "# p, q, r: pairings of the base weight nu with a1, 2a1+a2, a1+a2 (coroots)"]
    for stage in (1, 2, 3):
        fname = f"theta{stage}{suffix}"
        ok = fixture_check(rs, t, fname, s)
        pq = [str(x.format([f"h_{l}" for l in rs.labels])) for x in example_parameters(rs, stage)]
        oname = EXAMPLE_FIXTURES[fname][1]
        lines.append(f"\ntheta{stage} for {EXAMPLE_ROOTS[stage]}  (order {oname})")
        lines.append(f"  in lam:  p = {pq[0]},  q = {pq[1]},  r = {pq[2]}")
        lines.append("  = " + _fixture_text(rs, fname))
        lines.append(f"  construction matches: {'yes' if ok else 'NO'}")
        doc["stages"].append({"stage": stage, "root": EXAMPLE_ROOTS[stage], "order": oname,
                              "p": pq[0], "q": pq[1], "r": pq[2], "matches": ok})
    allok = all(st["matches"] for st in doc["stages"])
    if cfg.format == "json":
        doc["ok"] = allok
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return 0 if allok else 1


def _example_gl21(cfg, out):
    rs = parse_algebra("gl(2|1)")
    t = table_for(rs)
    g = parse_root(rs, "e1-d1")
    s = construct(rs, g, 1, table=t)
    doc = {"algebra": rs.name(), "gamma": "e1-d1", "word": list(s.word.indices),
           "base": s.word.base, "steps": []}
    lines = [f"# gl(2|1): gamma = e1-d1 from beta = {format_root(rs, rs.simple_vecs[s.word.base])}"
             f" along the word {list(s.word.indices)}"]
    for gk, raw in s.steps:
        gname = format_root(rs, gk)
        lines.append(f"\ntheta for {gname}:")
        lines.append("  " + format_element(raw))
        doc["steps"].append({"gamma": gname, "element": to_json(raw)})
    lines.append("\nreduced on the hyperplane:")
    lines.append("  " + format_element(s.element))
    doc["element"] = to_json(s.element)
    if cfg.format == "json":
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------

COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "example": cmd_example,
            "typea-det": cmd_typea_det}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[cfg.command](cfg, out)
    except (DomainError, NotRepresentable) as e:
        print(f"shapkit: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
