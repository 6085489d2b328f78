"""Seeded generators of small test instances."""

from __future__ import annotations

import random
from typing import Iterator, List, Optional, Tuple

from .fdelta import ESSet
from .sset import SSet, Simplex, SMap, boundary, disjoint_union, enumerate_maps, horn, product, std_simplex

# small simplicial sets used as targets; all have at most 20 cells
def _circle() -> SSet:
    return SSet({0: ["v"], 1: ["e"]}, {"e": [("v", (0,)), ("v", (0,))]}, label="S1")


def _two_loops() -> SSet:
    return SSet({0: ["a", "b"], 1: ["f", "g"]},
                {"f": [("b", (0,)), ("a", (0,))], "g": [("b", (0,)), ("a", (0,))]}, label="par")


def small_targets() -> List[SSet]:
    return [
        std_simplex(0), std_simplex(1), std_simplex(2), boundary(2)[0], horn(2, 1)[0], horn(2, 0)[0],
        product(std_simplex(1), std_simplex(1)), disjoint_union(std_simplex(1), std_simplex(0)),
        _circle(), _two_loops(),
    ]


def small_sources() -> List[SSet]:
    return [std_simplex(0), std_simplex(1), boundary(1)[0]]


def random_tight(S: SSet, rng: random.Random) -> ESSet:
    mode = rng.random()
    if mode < 0.25:
        return ESSet(S, S.vertices)
    if mode < 0.35:
        return ESSet(S, ())
    return ESSet(S, [v for v in S.vertices if rng.random() < 0.6])


def random_map(S: SSet, T: SSet, rng: random.Random, cap: int = 400, accept=None) -> Optional[SMap]:
    maps = [f for f in enumerate_maps(S, T, limit=cap) if accept is None or accept(f)]
    if not maps:
        return None
    return rng.choice(maps)


def random_rigged_diagrams(n: int, count: int, seed: int = 0, terminal: bool = True) -> Iterator:
    """Seeded rigged diagrams S x bd(Delta^n) -> T in F_Delta."""
    from .inserters import RiggedDiagram
    rng = random.Random(seed * 1000 + n)
    targets = small_targets()
    sources = small_sources()
    bd, _ = boundary(n)
    made = 0
    tries = 0
    while made < count and tries < 50 * count:
        tries += 1
        T = random_tight(rng.choice(targets), rng)
        S = random_tight(rng.choice(sources), rng)
        P = product(S.loose, bd)
        rv = n if terminal else 0

        def ok(f, S=S, T=T, P=P):
            if n == 0:
                return True
            for v in S.tight:
                if f.on_vertex((v, (rv,), (0,), (0,))) not in T.tight:
                    return False
            return True

        f = random_map(P, T.loose, rng, accept=ok)
        if f is None:
            continue
        made += 1
        yield RiggedDiagram(S, T, n, f, terminal)


# -- finite categories and strict monads -------------------------------------------

def small_posets() -> List:
    """Posets with at most 4 elements, one per shape used in the test matrix."""
    from .catkit.category import discrete, linear_order, poset

    def rel(pairs):
        return lambda a, b: a == b or (a, b) in pairs

    return [
        linear_order(0), linear_order(1), linear_order(2), linear_order(3), discrete([0, 1], label="2"),
        poset([0, 1, 2], rel({(0, 1), (0, 2)}), label="V"),
        poset([0, 1, 2], rel({(0, 2), (1, 2)}), label="L"),
        poset([0, 1, 2, 3], rel({(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)}), label="diamond"),
        poset([0, 1, 2, 3], rel({(0, 1), (2, 3)}), label="2x[1]"),
        poset([0, 1, 2, 3], rel({(0, 3), (1, 3), (2, 3)}), label="claw"),
    ]


def cyclic_group(n: int):
    from .catkit.category import from_generators
    return from_generators(["*"], {"*": n}, {"g": ("*", "*", tuple((i + 1) % n for i in range(n)))}, label=f"Z{n}")


def idempotent_monoid():
    from .catkit.category import from_generators
    return from_generators(["*"], {"*": 2}, {"e": ("*", "*", (0, 0))}, label="E")


def closure_monads(P) -> List:
    """All closure operators on a poset, as idempotent monads (mu = identity)."""
    from .catkit.category import CNat, find_functors, identity_functor
    from .enriched.monads import StrictMonad
    out = []
    for T in find_functors(P, P):
        if not all((a, T.obj[a]) in P.mor for a in P.objects):
            continue
        if any(T.obj[T.obj[a]] != T.obj[a] for a in P.objects):
            continue
        eta = CNat(identity_functor(P), T, {a: (a, T.obj[a]) for a in P.objects})
        mu = CNat(T.then(T), T, {a: (T.obj[a], T.obj[a]) for a in P.objects})
        out.append(StrictMonad(P, T, eta, mu, label=f"closure on {P.label}"))
    return out


def adjunction_monads(pairs=None) -> List:
    """T = R L for every functor L between the given categories admitting a right adjoint."""
    from .catkit.adjunction import search_right_adjoint
    from .catkit.category import find_functors, linear_order
    from .enriched.monads import monad_from_adjunction
    if pairs is None:
        ps = small_posets()
        pairs = [(ps[1], ps[0]), (ps[2], ps[1]), (ps[5], ps[1]), (ps[4], ps[1]), (ps[3], ps[1]), (ps[7], ps[2])]
    out = []
    for A, B in pairs:
        for L in find_functors(A, B):
            adj = search_right_adjoint(L)
            if adj is not None:
                out.append(monad_from_adjunction(adj, label=f"RL for {A.label}->{B.label}"))
    return out


def group_monads() -> List:
    """T = id, eta = g, mu = g^-1 on a cyclic group."""
    from .catkit.category import CNat, identity_functor
    from .enriched.monads import StrictMonad
    out = []
    for n in (2, 3):
        G = cyclic_group(n)
        I = identity_functor(G)
        g = ("*", "*", tuple((i + 1) % n for i in range(n)))
        gi = ("*", "*", tuple((i - 1) % n for i in range(n)))
        out.append(StrictMonad(G, I, CNat(I, I, {"*": g}), CNat(I, I, {"*": gi}), label=f"shift on Z{n}"))
    return out


def monad_instances(seed: int = 0, max_objects: int = 4) -> List:
    """Identity, closure, adjunction and group monads on categories with at most 4 objects.

    Each instance gets a seeded random marking of C (the marked objects are
    the tight vertices of N C); the identity monads are also kept fully marked.
    """
    from dataclasses import replace
    from .enriched.monads import identity_monad
    rng = random.Random(seed)
    base = [identity_monad(C) for C in small_posets() + [cyclic_group(2), idempotent_monoid()]]
    for P in small_posets():
        base.extend(closure_monads(P))
    base.extend(adjunction_monads())
    base.extend(group_monads())
    out = []
    seen = set()
    for M in base:
        if len(M.C.objects) > max_objects:
            continue
        key = (M.C.label, M.T.key, tuple(sorted(map(repr, M.eta.comp.items()))), tuple(sorted(map(repr, M.mu.comp.items()))))
        if key in seen:
            continue
        seen.add(key)
        marked = tuple(o for o in M.C.objects if rng.random() < 0.6)
        out.append(replace(M, marked=marked, _powers={}, _nu={}, _act={}))
        if M.label.startswith("id on"):
            out.append(replace(M, _powers={}, _nu={}, _act={}))
    return out


# -- small categories, isofibrations and squares of lalis ------------------------------

def chaotic(n: int):
    """n uniquely isomorphic objects."""
    from .catkit.category import from_generators
    objs = list(range(n))
    gens = {f"{a}{b}": (a, b, (0,)) for a in objs for b in objs if a != b}
    return from_generators(objs, {o: 1 for o in objs}, gens, label=f"I{n}")


def kronecker():
    """Two parallel arrows."""
    from .catkit.category import from_generators
    return from_generators(["a", "b"], {"a": 1, "b": 2}, {"s": ("a", "b", (0,)), "t": ("a", "b", (1,))}, label="K")


def split_idempotent():
    """s: a -> b, r: b -> a with r s = 1."""
    from .catkit.category import from_generators
    return from_generators(["a", "b"], {"a": 1, "b": 2}, {"s": ("a", "b", (0,)), "r": ("b", "a", (0, 0))}, label="Split")


def small_categories(max_objects: int = 4, max_morphisms: int = 14) -> List:
    """Posets, groups, monoids and a few non-posetal shapes within the size bounds."""
    from .catkit.category import linear_order, product_cat
    cats = small_posets() + [
        cyclic_group(2), cyclic_group(3), idempotent_monoid(), chaotic(2), chaotic(3), kronecker(),
        split_idempotent(),
    ]
    z2x1 = product_cat(linear_order(1), cyclic_group(2))
    z2x1.label = "[1]xZ2"
    i2x1 = product_cat(chaotic(2), linear_order(1))
    i2x1.label = "I2x[1]"
    cats += [z2x1, i2x1]
    return [C for C in cats if len(C.objects) <= max_objects and len(C.morphisms) <= max_morphisms]


def isofibration_family(seed: int = 0, count: int = 320, per_pair: int = 400) -> List:
    """A seeded sample of isofibrations between the small categories, in enumeration order."""
    from .catkit.adjunction import is_isofibration
    from .catkit.category import find_functors
    rng = random.Random(seed)
    cats = small_categories()
    pool = []
    for E in cats:
        for B in cats:
            if len(B.objects) > len(E.objects) + 1:
                continue
            for p in find_functors(E, B, limit=per_pair):
                if is_isofibration(p):
                    p.label = f"{E.label}->{B.label}"
                    pool.append(p)
    if len(pool) <= count:
        return pool
    # every lali is kept so that the square sweeps have material; the rest is sampled
    from .catkit.adjunction import is_lali
    keep = [i for i, p in enumerate(pool) if is_lali(p) is not None]
    rest = [i for i in range(len(pool)) if i not in set(keep)]
    idx = sorted(keep + rng.sample(rest, max(0, count - len(keep))))
    return [pool[i] for i in idx]


def lali_squares(lalis: List, seed: int = 0, count: int = 150, per_pair: int = 60) -> List:
    """Commutative squares between lalis: (e, b) with p2 e = b p1."""
    from .catkit.adjunction import CSquare
    from .catkit.category import find_functors
    rng = random.Random(seed)
    out = []
    pairs = [(a, b) for a in range(len(lalis)) for b in range(len(lalis))]
    rng.shuffle(pairs)
    for i, j in pairs:
        if len(out) >= count:
            break
        p1, p2 = lalis[i], lalis[j]
        found = []
        for b in find_functors(p1.target, p2.target, limit=8):
            bp = p1.then(b)
            for e in find_functors(p1.source, p2.source, limit=per_pair):
                if e.then(p2) == bp:
                    found.append(CSquare(e, b, p1, p2, check=False))
        if found:
            out.append(rng.choice(found))
    return out


def _compatible_nats(A, B, F, F2, G, G2):
    """Pairs (alpha: F => F2, beta: G => G2) with B alpha = beta A."""
    from .catkit.category import find_nats
    out = []
    betas = list(find_nats(G, G2))
    for al in find_nats(F, F2):
        for be in betas:
            if all(B.morph[al.comp[a]] == be.comp[A.obj[a]] for a in F.source.objects):
                out.append((al.comp, be.comp))
    return out


def rins_squares(seed: int = 0, count: int = 30, k: int = 2, max_objects: int = 3) -> List:
    """Seeded rigged-inserter squares between lalis with the m-th leg a morphism of lalis (m = 1, 2)."""
    from .catkit.adjunction import is_lali
    from .catkit.category import find_functors
    from .lifting import RinsSquare, universal_elements
    rng = random.Random(seed)
    lalis = [p for p in isofibration_family(seed) if is_lali(p) is not None
             and len(p.source.objects) <= max_objects and len(p.source.morphisms) <= 6]
    out = []
    tries = 0
    while len(out) < count and tries < 40 * count:
        tries += 1
        A, B = rng.choice(lalis), rng.choice(lalis)
        m = rng.choice((1, 1, 2))
        UA, UB = set(universal_elements(A, 2)), set(universal_elements(B, 2))
        legs = []
        for G in find_functors(A.target, B.target, limit=6):
            GA = A.then(G)
            for F in find_functors(A.source, B.source, limit=60):
                if F.then(B) == GA:
                    legs.append((F, G))
        if not legs:
            continue
        good = [(F, G) for F, G in legs if all(F.obj[x] in UB for x in UA)]
        if not good:
            continue
        picks = [rng.choice(legs) for _ in range(m)] + [rng.choice(good)]
        nats1, nats2 = {}, {}
        if m == 2:
            ok = True
            for i, j in ((0, 1), (0, 2), (1, 2)):
                cands = _compatible_nats(A, B, picks[i][0], picks[j][0], picks[i][1], picks[j][1])
                if not cands:
                    ok = False
                    break
                nats1[(i, j)], nats2[(i, j)] = rng.choice(cands)
            if not ok:
                continue
        sq = RinsSquare(A, B, m, [F for F, _ in picks], [G for _, G in picks], nats1, nats2, k=k,
                        label=f"{A.label} / {B.label} m={m}")
        out.append(sq)
    return out


def functor_family(seed: int = 0, count: int = 300, per_pair: int = 200) -> List:
    """A seeded sample of functors between the small categories (no isofibration condition)."""
    from .catkit.category import find_functors
    rng = random.Random(seed + 7)
    cats = small_categories()
    pool = []
    for A in cats:
        for B in cats:
            for F in find_functors(A, B, limit=per_pair):
                F.label = f"{A.label}->{B.label}"
                pool.append(F)
    idx = sorted(rng.sample(range(len(pool)), min(count, len(pool))))
    return [pool[i] for i in idx]


def left_adjoint_squares(seed: int = 0, count: int = 120, per_pair: int = 40) -> List:
    """(gamma, beta, adj1, adj2): squares gamma F2 = F1 beta between left adjoints F1, F2."""
    from .catkit.adjunction import search_right_adjoint
    from .catkit.category import find_functors
    rng = random.Random(seed + 11)
    lefts = []
    for F in functor_family(seed, count=600):
        adj = search_right_adjoint(F)
        if adj is not None:
            lefts.append(adj)
    out = []
    tries = 0
    while len(out) < count and tries < 20 * count:
        tries += 1
        a1, a2 = rng.choice(lefts), rng.choice(lefts)
        F1, F2 = a1.left, a2.left
        found = []
        for beta in find_functors(F1.target, F2.target, limit=6):
            Fb = F1.then(beta)
            for gamma in find_functors(F1.source, F2.source, limit=per_pair):
                if gamma.then(F2) == Fb:
                    found.append((gamma, beta, a1, a2))
        if found:
            out.append(rng.choice(found))
    return out


def pullback_la_instances(seed: int = 0, count: int = 100, per_pair: int = 40) -> List:
    """(F, G) squares into a common left-adjoint isofibration C meeting the preconditions of pullback_la."""
    from .catkit.adjunction import CSquare, search_right_adjoint
    from .catkit.category import find_functors
    from .catkit.fibration import is_grothendieck_fibration
    from .catkit.pullback_la import PreconditionError, check_preconditions
    rng = random.Random(seed + 13)
    las = [p for p in isofibration_family(seed, count=10 ** 6)
           if len(p.source.objects) <= 3 and search_right_adjoint(p) is not None]
    out = []
    seen = set()
    tries = 0
    while len(out) < count and tries < 60 * count:
        tries += 1
        A, B, C = rng.choice(las), rng.choice(las), rng.choice(las)
        Gs = []
        for G2 in find_functors(B.target, C.target, limit=8):
            if not is_grothendieck_fibration(G2):
                continue
            BG = B.then(G2)
            for G1 in find_functors(B.source, C.source, limit=per_pair):
                if G1.then(C) == BG and is_grothendieck_fibration(G1):
                    Gs.append(CSquare(G1, G2, B, C, check=False))
        Fs = []
        for F2 in find_functors(A.target, C.target, limit=8):
            AF = A.then(F2)
            for F1 in find_functors(A.source, C.source, limit=per_pair):
                if F1.then(C) == AF:
                    Fs.append(CSquare(F1, F2, A, C, check=False))
        if not Gs or not Fs:
            continue
        F, G = rng.choice(Fs), rng.choice(Gs)
        key = (F.top.key, F.bottom.key, G.top.key, G.bottom.key, A.label, B.label, C.label)
        if key in seen:
            continue
        try:
            check_preconditions(F, G)
        except PreconditionError:
            continue
        seen.add(key)
        out.append((F, G))
    return out


def probe_lalis() -> List:
    """Left adjoint isofibrations used as probe sources, with their adjunctions."""
    from .catkit.adjunction import search_right_adjoint
    from .catkit.category import identity_functor, linear_order, to_terminal
    ps = [identity_functor(linear_order(0)), to_terminal(linear_order(1)), identity_functor(linear_order(1))]
    return [(p, search_right_adjoint(p)) for p in ps]
