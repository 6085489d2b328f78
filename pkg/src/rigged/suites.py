"""Named invariant suites, one per acceptance family.

Each suite draws seeded instances, runs a construction against an independent
oracle and returns a :class:`SuiteResult`.  The ``anchors`` of a suite name the
results it exercises in plain words.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .catkit.category import DEFAULT_BUDGET
from .enriched.ecat import DEFAULT_K

BUDGET_ENV = "RIGGED_BUDGET"


@dataclass
class RunConfig:
    k: int = DEFAULT_K
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    out: Optional[str] = None
    format: str = "json"

    def __post_init__(self):
        env = os.environ.get(BUDGET_ENV)
        if env is not None:
            try:
                self.budget = int(env)
            except ValueError:
                raise ValueError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.format not in ("json", "dot", "text"):
            raise ValueError(f"unknown format {self.format!r}")


@dataclass
class SuiteResult:
    name: str
    anchors: List[str]
    instances: int = 0
    failures: List[str] = field(default_factory=list)
    seconds: float = 0.0
    details: Dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and self.instances > 0

    def as_dict(self) -> Dict:
        return {"suite": self.name, "anchors": self.anchors, "instances": self.instances,
                "failures": self.failures[:20], "failure_count": len(self.failures),
                "passed": self.passed, "details": self.details}


def _note(res: SuiteResult, ok: bool, what: str) -> None:
    res.instances += 1
    if not ok:
        res.failures.append(what)


# -- factorization system ----------------------------------------------------------

def _factorization_pool():
    from .generators import _circle, small_targets
    from .sset import boundary, horn, product, std_simplex
    pool = small_targets() + [std_simplex(3), boundary(3)[0], horn(3, 1)[0], horn(3, 3)[0],
                              product(std_simplex(1), std_simplex(2))]
    pool = [S for S in pool if S.size() <= 30]
    sources = [std_simplex(0), std_simplex(1), boundary(1)[0], std_simplex(2), boundary(2)[0],
               horn(2, 1)[0], _circle()]
    return sources, pool


def factorization(cfg: RunConfig, count: int = 500) -> SuiteResult:
    """Every map factors as vertex-surjective followed by ffiov, and every square has one filler."""
    from .fdelta import diagonal, diagonal_fillers, factorize, is_ffiov, is_surjective_on_vertices
    from .generators import random_map
    res = SuiteResult("factorization", ["F_Delta (surjective on vertices, ffiov) factorization system",
                                        "unique diagonal fillers"])
    rng = random.Random(cfg.seed)
    sources, targets = _factorization_pool()
    cross = 0
    while res.instances < count:
        A, B = rng.choice(sources), rng.choice(targets)
        f = random_map(A, B, rng)
        if f is None:
            continue
        l, r = factorize(f)
        tag = f"{A.label}->{B.label}"
        ok = is_surjective_on_vertices(l) and is_ffiov(r) and l.then(r) == f
        fills = diagonal_fillers(l, r, l, r)
        ok = ok and len(fills) == 1 and diagonal(l, r, l, r) == fills[0]
        # cross square against the factorization of w . f for a further map w
        w = random_map(B, rng.choice(targets), rng, cap=200)
        if w is not None:
            l2, r2 = factorize(f.then(w))
            u, v = l2, r.then(w)
            fills = diagonal_fillers(l, r2, u, v)
            ok = ok and len(fills) == 1 and diagonal(l, r2, u, v) == fills[0]
            cross += 1
        _note(res, ok, tag)
    res.details["cross_squares"] = cross
    return res


# -- rigged inserters ---------------------------------------------------------------

def rins_agreement(cfg: RunConfig, ns=(0, 1, 2), count: int = 100) -> SuiteResult:
    from .generators import random_rigged_diagrams
    from .inserters import rins_agreement as agree
    res = SuiteResult("rins-agreement", ["rigged inserter as weighted limit equals the pullback form",
                                         "matched projections and tight vertices"])
    for n in ns:
        for i, d in enumerate(random_rigged_diagrams(n, count, seed=cfg.seed)):
            rep = agree(d, cfg.k, budget=cfg.budget)
            _note(res, rep.ok, f"n={n} #{i} {d.S.label}->{d.T.label}")
        res.details[f"n={n}"] = count
    return res


def prism(cfg: RunConfig, n: int = 3, m: int = 3) -> SuiteResult:
    from .lifting import attachment_chain
    res = SuiteResult("prism", ["terminal vertex of interior prism cells",
                                "cell attachment rebuilds the prism"])
    for a in range(n + 1):
        for b in range(m + 1):
            rep = attachment_chain(a, b)
            _note(res, rep.ok, f"({a},{b}) terminal={rep.terminal_ok} rebuilds={rep.rebuilds}")
            res.details[f"{a}x{b}"] = rep.cells
    return res


# -- universal elements ---------------------------------------------------------------

def prop55(cfg: RunConfig, count: int = 320, squares: int = 200) -> SuiteResult:
    from .catkit.adjunction import is_lali
    from .generators import isofibration_family, lali_squares
    from .lifting import lali_morphism_via_universal, lali_via_universal, universal_iso_closure
    res = SuiteResult("prop55", ["lali iff a universal element over every vertex",
                                 "morphism of lalis iff universal elements are preserved",
                                 "universal elements closed under isomorphism"])
    fam = isofibration_family(cfg.seed, count=count)
    lalis = []
    for p in fam:
        rep = lali_via_universal(p, strict=False)
        _note(res, rep.agree and universal_iso_closure(p), f"{p.label}")
        if rep.oracle:
            lalis.append(p)
    morphisms = 0
    for sq in lali_squares(lalis, cfg.seed, count=squares):
        rep = lali_morphism_via_universal(sq, strict=False)
        morphisms += rep.oracle
        _note(res, rep.agree, f"square {sq.left.label} => {sq.right.label}")
    res.details.update(isofibrations=len(fam), lalis=len(lalis), squares=res.instances - len(fam),
                       lali_morphisms=morphisms)
    return res


def la_lali(cfg: RunConfig, count: int = 300, squares: int = 120, max_objects: int = 4) -> SuiteResult:
    from .catkit.adjunction import la_iff_lali_check, mate_transfer_check
    from .generators import functor_family, left_adjoint_squares
    res = SuiteResult("la-lali", ["left adjoint iff the comma projection is a lali",
                                  "mate transfer to comma objects"])
    las = 0
    for F in functor_family(cfg.seed, count=count):
        if max(len(F.source.objects), len(F.target.objects)) > max_objects:
            continue
        rep = la_iff_lali_check(F)
        las += rep.left_adjoint
        _note(res, rep.ok, f"{F.label}")
    for gamma, beta, a1, a2 in left_adjoint_squares(cfg.seed, count=squares):
        rep = mate_transfer_check(gamma, beta, a1, a2)
        _note(res, rep.agree and rep.witnesses_match, f"mate {gamma.label}")
    res.details["left_adjoints"] = las
    return res


def pullback_la(cfg: RunConfig, count: int = 100) -> SuiteResult:
    from .catkit.pullback_la import pullback_la as build
    from .generators import probe_lalis, pullback_la_instances
    res = SuiteResult("pullback-la", ["pullback of a loose arrow along a tight cartesian fibration",
                                      "constructed right adjoint and triangle identities",
                                      "projection reflects morphisms of left adjoints"])
    probes = probe_lalis()
    parts = {"triangles": 0, "oracle": 0, "projection": 0, "equations": 0, "reflection": 0}
    for i, (F, G) in enumerate(pullback_la_instances(cfg.seed, count=count)):
        _, _, rep = build(F, G, probes=probes)
        bad = []
        if not rep.triangles:
            bad.append("triangles")
        if not (rep.oracle_exists and rep.oracle_iso):
            bad.append("oracle")
        if not rep.projection_mate_iso:
            bad.append("projection")
        if not all(rep.equations.values()):
            bad.append("equations")
        if not rep.reflection_ok:
            bad.append("reflection")
        for b in bad:
            parts[b] += 1
        _note(res, not bad, f"#{i} {F.left.label} {G.left.label} {F.right.label}: {','.join(bad)}")
    res.details["failing_parts"] = parts
    return res


# -- Eilenberg-Moore ----------------------------------------------------------------------

def em(cfg: RunConfig, max_objects: int = 4) -> SuiteResult:
    from .enriched.monads import em_universal_property_check
    from .generators import monad_instances
    from .inserters import em_chain_demo
    res = SuiteResult("em", ["Eilenberg-Moore object represents the EM weight",
                             "forgetful arrow is tight and reflects tightness",
                             "EM object from rigged inserters and equifiers"])
    ms = [M for M in monad_instances(cfg.seed, max_objects=max_objects) if len(M.C.objects) <= max_objects]
    for M in ms:
        rep = em_universal_property_check(M, k=cfg.k)
        _note(res, rep.ok, f"{M.label}: {'; '.join(rep.failures)}")
        chain = em_chain_demo(M, k=cfg.k)
        _note(res, chain.ok, f"chain {M.label}")
    res.details["monads"] = len(ms)
    return res


# -- duality -----------------------------------------------------------------------------

def _power_instances():
    from .fdelta import chordate, inchordate, tight_simplex
    from .sset import boundary, std_simplex
    Js = [chordate(std_simplex(0)), chordate(boundary(1)[0]), inchordate(boundary(1)[0]),
          chordate(std_simplex(1)), tight_simplex(1, [1])]
    Ts = [chordate(std_simplex(1)), tight_simplex(1, [0]), tight_simplex(2, [0, 2])]
    return [(J, T) for J in Js for T in Ts]


def duality(cfg: RunConfig, ns=(0, 1, 2), count: int = 100) -> SuiteResult:
    from .enriched.ecat import constant_weight, duality_limit_check, terminal_ecat
    from .generators import random_rigged_diagrams
    from .inserters import rins_duality, rins_initial_check, rins_pullback
    res = SuiteResult("duality", ["limits in the co-dual are opposites of limits",
                                  "initially rigged inserters via the co-dual",
                                  "double co-dual is the identity"])
    for n in ns:
        for i, d in enumerate(random_rigged_diagrams(n, count, seed=cfg.seed)):
            R = rins_pullback(d, cfg.k, budget=cfg.budget)
            _note(res, rins_duality(d, cfg.k, H_full=R.H_full).isomorphic, f"terminal n={n} #{i}")
        for i, d in enumerate(random_rigged_diagrams(n, count, seed=cfg.seed, terminal=False)):
            rep = rins_initial_check(d, cfg.k)
            _note(res, rep.isomorphic and rep.double_dual_identity, f"initial n={n} #{i}")
    E = terminal_ecat(cfg.k)
    for J, T in _power_instances():
        rep = duality_limit_check(constant_weight(E, J), constant_weight(E, T), cfg.k)
        _note(res, rep.isomorphic, f"power {J.label} {T.label}")
    return res


# -- limits and fibrations -----------------------------------------------------------------

def jlim_cart(cfg: RunConfig) -> SuiteResult:
    from .catkit.fibration import Restriction, cart_check, jlim_check
    from .catkit.category import find_functors
    from .generators import isofibration_family, small_categories
    from .sset import boundary, empty_sset, std_simplex
    res = SuiteResult("jlim-cart", ["J-shaped limits iff the restriction is a lali",
                                    "limit preservation iff morphism of lalis",
                                    "Grothendieck fibration iff the Leibniz map is a lali"])
    shapes = [("empty", empty_sset()), ("D0", std_simplex(0)), ("bdD1", boundary(1)[0]), ("D1", std_simplex(1))]
    cats = small_categories()
    rng = random.Random(cfg.seed)
    for jn, J in shapes:
        restr = {}
        for A in cats:
            rep = jlim_check(A, J, budget=cfg.budget)
            _note(res, rep.agree, f"{A.label} {jn}")
            if rep.has_limits:
                restr[A.label] = (A, Restriction(A, J, cfg.budget))
        # preservation on functors between categories with these limits
        names = sorted(restr)
        for _ in range(6):
            if not names:
                break
            a, b = rng.choice(names), rng.choice(names)
            A, B = restr[a][0], restr[b][0]
            fs = list(find_functors(A, B, limit=30))
            if not fs:
                continue
            f = rng.choice(fs)
            rep = jlim_check(A, J, functors=[(f, restr[b][1])], budget=cfg.budget)
            _note(res, rep.agree, f"preservation {a}->{b} {jn}")
    fibs = 0
    for p in isofibration_family(cfg.seed):
        rep = cart_check(p)
        fibs += rep.fibration
        _note(res, rep.agree, f"cart {p.label}")
    res.details["fibrations"] = fibs
    return res


# -- joint reflection ---------------------------------------------------------------------------

def _lali_cones(cfg: RunConfig, lalis, limit: int):
    """Binary products of lalis and pullbacks of lali squares along isofibration squares."""
    from .catkit.adjunction import is_isofibration, is_lali, is_lali_morphism, pullback_of_squares
    from .catkit.adjunction import product_isofibration
    from .generators import lali_squares
    rng = random.Random(cfg.seed + 7)
    small = [p for p in lalis if len(p.source.objects) <= 2]
    cones = []
    for _ in range(limit):
        p1, p2 = rng.choice(small), rng.choice(small)
        P, legs = product_isofibration(p1, p2)
        cones.append(("product", P, legs))
    by_target: Dict = {}
    for sq in lali_squares(small, cfg.seed, count=120):
        if is_lali_morphism(sq)[0]:
            by_target.setdefault(id(sq.right), []).append(sq)
    made = 0
    for group in by_target.values():
        for G in group:
            if made >= limit:
                break
            if not (is_isofibration(G.top) and is_isofibration(G.bottom)):
                continue
            F = rng.choice(group)
            P, sqA, sqB = pullback_of_squares(F, G)
            if is_isofibration(P) and is_lali(P) is not None:
                cones.append(("pullback", P, [sqA, sqB]))
                made += 1
    return cones


def reflection(cfg: RunConfig, cones: int = 12, max_probes: int = 40) -> SuiteResult:
    from .catkit.adjunction import jointly_reflect_lali_check
    from .catkit.pullback_la import probe_squares
    from .enriched.ecat import constant_weight, limit_reflects_tightness, nat_object, terminal_ecat
    from .fdelta import EMap, chordate, eproduct, epullback, jointly_reflects, tight_simplex
    from .generators import isofibration_family, random_map, random_rigged_diagrams, random_tight, small_targets
    from .inserters import evaluation, power_inchordate, rins_pullback, rins_reflects_tightness, rins_weighted
    from .catkit.adjunction import is_lali
    from .sset import boundary, std_simplex
    res = SuiteResult("reflection", ["limit projections jointly reflect morphisms of lalis",
                                     "tight limit projections jointly reflect tightness"])
    probes = [tight_simplex(0, []), tight_simplex(0, [0]), tight_simplex(1, [0]), tight_simplex(1, [1]),
              chordate(std_simplex(1))]
    lalis = [p for p in isofibration_family(cfg.seed) if is_lali(p) is not None]
    from .generators import probe_lalis
    n_cat = 0
    for kind, P, legs in _lali_cones(cfg, lalis, cones):
        ok = True
        for X, _ in probe_lalis():
            for q in probe_squares(X, P, limit=max_probes):
                n_cat += 1
                ok = ok and jointly_reflect_lali_check(legs, q).agree
        _note(res, ok, f"{kind} {P.source.label}")
    rng = random.Random(cfg.seed)
    targets = small_targets()
    for i in range(20):
        S, T = random_tight(rng.choice(targets), rng), random_tight(rng.choice(targets), rng)
        E = eproduct(S, T)
        ok = all(jointly_reflects(E, list(E.projections), X, max_probes=200)[0] for X in probes)
        _note(res, ok, f"eproduct #{i}")
        C = random_tight(rng.choice(targets), rng)
        f, g = random_map(S.loose, C.loose, rng), random_map(T.loose, C.loose, rng)
        if f is not None and g is not None:
            E = epullback(EMap(S, C, f), EMap(T, C, g))
            ok = all(jointly_reflects(E, list(E.projections), X, max_probes=200)[0] for X in probes)
            _note(res, ok, f"epullback #{i}")
    for J in (std_simplex(0), boundary(1)[0], std_simplex(1)):
        for T in (chordate(std_simplex(1)), tight_simplex(2, [0, 2])):
            Pw = power_inchordate(T, J, cfg.k)
            evs = [evaluation(Pw, T, j) for j in J.vertices]
            ok = all(e.tight for e in evs) and all(jointly_reflects(Pw, evs, X, max_probes=200)[0] for X in probes)
            _note(res, ok, f"inchordate power {J.label} {T.label}")
    E1 = terminal_ecat(cfg.k)
    for J, T in _power_instances():
        L = nat_object(constant_weight(E1, J), constant_weight(E1, T), cfg.k)
        _note(res, limit_reflects_tightness(L, probes, max_probes=200)[0], f"power {J.label} {T.label}")
    for n in (1, 2):
        for i, d in enumerate(random_rigged_diagrams(n, 10, seed=cfg.seed)):
            R = rins_pullback(d, cfg.k)
            _note(res, rins_reflects_tightness(R, probes, max_probes=200)[0], f"rins n={n} #{i}")
            L = rins_weighted(d, cfg.k, H_full=R.H_full)
            _note(res, limit_reflects_tightness(L, probes, max_probes=200)[0], f"weighted n={n} #{i}")
    res.details["cat_probes"] = n_cat
    return res


def rins_lali(cfg: RunConfig, count: int = 30) -> SuiteResult:
    from .generators import rins_squares
    from .lifting import rins_lali_instance_check
    res = SuiteResult("rins-lali", ["rigged inserters of lalis are lalis",
                                    "projection is a morphism of lalis and reflects them",
                                    "lift solver along the prism attachment"])
    solved = 0
    for i, sq in enumerate(rins_squares(cfg.seed, count=count, k=cfg.k)):
        rep = rins_lali_instance_check(sq)
        solved += rep.problems_solved
        _note(res, rep.ok, f"#{i} {sq.label}")
    res.details["lifting_problems_solved"] = solved
    return res


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "factorization": factorization,
    "rins-agreement": rins_agreement,
    "prism": prism,
    "prop55": prop55,
    "la-lali": la_lali,
    "pullback-la": pullback_la,
    "em": em,
    "duality": duality,
    "jlim-cart": jlim_cart,
    "reflection": reflection,
    "rins-lali": rins_lali,
}


def run_suite(name: str, cfg: Optional[RunConfig] = None, **opts) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = cfg or RunConfig()
    t = time.perf_counter()
    res = SUITES[name](cfg, **opts)
    res.seconds = time.perf_counter() - t
    return res


# -- acceptance matrix -------------------------------------------------------------------

# criterion -> (suite, options, minimum instances, time limit in seconds or None)
ACCEPTANCE: Dict[int, Tuple[str, Dict, int, Optional[float]]] = {
    1: ("factorization", {"count": 500}, 500, 60),
    2: ("rins-agreement", {"ns": (0, 1, 2), "count": 100}, 300, 120),
    3: ("prism", {"n": 3, "m": 3}, 16, 10),
    4: ("prop55", {"count": 320}, 300, None),
    5: ("la-lali", {"count": 300, "max_objects": 4}, 300, None),
    6: ("pullback-la", {"count": 100}, 100, None),
    7: ("em", {"max_objects": 4}, 1, 180),
    8: ("jlim-cart", {}, 1, None),
    9: ("duality", {}, 1, None),
    10: ("reflection", {}, 1, None),
}


def check_criterion(number: int, cfg: Optional[RunConfig] = None) -> Tuple[SuiteResult, List[str], str]:
    """Run one criterion; returns the suite result, the list of problems and a one-line verdict."""
    suite, opts, minimum, limit = ACCEPTANCE[number]
    res = run_suite(suite, cfg, **opts)
    problems = []
    if res.failures:
        problems.append(f"{len(res.failures)} failing instances, first: {res.failures[0]}")
    if res.instances < minimum:
        problems.append(f"only {res.instances} instances, need {minimum}")
    if limit is not None and res.seconds >= limit:
        problems.append(f"took {res.seconds:.1f}s, limit {limit}s")
    line = (f"criterion {number}: {'FAIL' if problems else 'PASS'} [{suite}] {res.instances} instances, "
            f"{len(res.failures)} failures, {res.seconds:.1f}s")
    if problems:
        line += " (" + "; ".join(problems) + ")"
    return res, problems, line
