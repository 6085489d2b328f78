"""Finite categories, functors and natural transformations."""

from __future__ import annotations

import itertools
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..sset import BudgetExceeded, Simplex, SMap, SSet, name, sort_ids

DEFAULT_BUDGET = 10_000


class FinCat:
    """A finite category with an explicit composition table.

    ``compose[(g, f)]`` is ``g . f`` for ``cod f == dom g``.
    """

    def __init__(self, objects: Iterable, morphisms: Dict[Hashable, Tuple[Hashable, Hashable]],
                 identities: Dict, compose: Dict, label: str = "", check: bool = False):
        self.label = label
        self.objects = tuple(sort_ids(objects))
        self.mor = dict(morphisms)
        self.morphisms = tuple(sort_ids(self.mor))
        self.identities = dict(identities)
        self.table = compose
        self._hom: Dict = {}
        for f in self.morphisms:
            self._hom.setdefault(self.mor[f], []).append(f)
        self._out: Dict = {}
        self._in: Dict = {}
        for f in self.morphisms:
            a, b = self.mor[f]
            self._out.setdefault(a, []).append(f)
            self._in.setdefault(b, []).append(f)
        self._inv: Optional[Dict] = None
        if check:
            self.check()

    def dom(self, f):
        return self.mor[f][0]

    def cod(self, f):
        return self.mor[f][1]

    def hom(self, a, b) -> List:
        return self._hom.get((a, b), [])

    def out_of(self, a) -> List:
        return self._out.get(a, [])

    def into(self, b) -> List:
        return self._in.get(b, [])

    def ident(self, a):
        return self.identities[a]

    def comp(self, g, f):
        """g . f"""
        return self.table[(g, f)]

    def comp_many(self, *fs):
        """comp_many(h, g, f) = h . g . f"""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.table[(g, out)]
        return out

    def is_identity(self, f) -> bool:
        return self.identities[self.dom(f)] == f

    @property
    def inverses(self) -> Dict:
        if self._inv is None:
            inv = {}
            for f in self.morphisms:
                a, b = self.mor[f]
                for g in self.hom(b, a):
                    if self.table[(g, f)] == self.identities[a] and self.table[(f, g)] == self.identities[b]:
                        inv[f] = g
                        break
            self._inv = inv
        return self._inv

    def is_iso(self, f) -> bool:
        return f in self.inverses

    def inverse(self, f):
        return self.inverses[f]

    def isos_from(self, a) -> List:
        return [f for f in self.out_of(a) if f in self.inverses]

    def size(self) -> Tuple[int, int]:
        return len(self.objects), len(self.morphisms)

    def check(self) -> None:
        obs = set(self.objects)
        for a in self.objects:
            i = self.identities.get(a)
            if i is None or self.mor.get(i) != (a, a):
                raise ValueError(f"object {name(a)} lacks an identity")
        for f, (a, b) in self.mor.items():
            if a not in obs or b not in obs:
                raise ValueError(f"morphism {name(f)} has unknown endpoints")
        for f in self.morphisms:
            a, b = self.mor[f]
            for g in self.out_of(b):
                h = self.table.get((g, f))
                if h is None:
                    raise ValueError(f"composite {name(g)}.{name(f)} missing")
                if self.mor[h] != (a, self.cod(g)):
                    raise ValueError(f"composite {name(g)}.{name(f)} has wrong type")
            if self.table[(f, self.identities[a])] != f or self.table[(self.identities[b], f)] != f:
                raise ValueError(f"unit law fails at {name(f)}")
        for f in self.morphisms:
            for g in self.out_of(self.cod(f)):
                gf = self.table[(g, f)]
                for h in self.out_of(self.cod(g)):
                    if self.table[(h, gf)] != self.table[(self.table[(h, g)], f)]:
                        raise ValueError("associativity fails")

    def __repr__(self) -> str:
        lab = f" {self.label}" if self.label else ""
        return f"<FinCat{lab} {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


# -- constructors ----------------------------------------------------------

def from_generators(objects: Sequence, sizes: Dict, generators: Dict, label: str = "",
                    budget: int = DEFAULT_BUDGET) -> FinCat:
    """Concrete category of functions between finite sets closed under composition.

    ``sizes[o]`` is the cardinality of the set at object ``o``; a generator is
    ``name -> (dom, cod, tuple of values)``.  Morphisms are named by the
    function they compute: ``(dom, cod, values)``.
    """
    mor = {}
    for o in objects:
        mor[(o, o, tuple(range(sizes[o])))] = (o, o)
    frontier = []
    for g, (a, b, vals) in generators.items():
        key = (a, b, tuple(vals))
        if key not in mor:
            mor[key] = (a, b)
            frontier.append(key)
    while frontier:
        new = []
        for f in list(mor):
            for g in frontier:
                for (x, y) in ((g, f), (f, g)):
                    if y[1] == x[0]:
                        key = (y[0], x[1], tuple(x[2][v] for v in y[2]))
                        if key not in mor:
                            mor[key] = (key[0], key[1])
                            new.append(key)
                            if len(mor) > budget:
                                raise BudgetExceeded("generated category exceeds budget")
        frontier = new
    ident = {o: (o, o, tuple(range(sizes[o]))) for o in objects}
    table = {}
    for f in mor:
        for g in mor:
            if f[1] == g[0]:
                table[(g, f)] = (f[0], g[1], tuple(g[2][v] for v in f[2]))
    return FinCat(objects, mor, ident, table, label=label)


def poset(elements: Sequence, leq: Callable[[Hashable, Hashable], bool], label: str = "") -> FinCat:
    """Preorder category; the morphism a -> b is named (a, b)."""
    mor = {}
    for a in elements:
        for b in elements:
            if leq(a, b):
                mor[(a, b)] = (a, b)
    for a in elements:
        if (a, a) not in mor:
            raise ValueError("relation is not reflexive")
    table = {}
    for (a, b) in mor:
        for (b2, c) in mor:
            if b == b2:
                if (a, c) not in mor:
                    raise ValueError("relation is not transitive")
                table[((b, c), (a, b))] = (a, c)
    return FinCat(elements, mor, {a: (a, a) for a in elements}, table, label=label)


def linear_order(n: int) -> FinCat:
    return poset(list(range(n + 1)), lambda a, b: a <= b, label=f"[{n}]")


def discrete(objects: Sequence, label: str = "") -> FinCat:
    return poset(list(objects), lambda a, b: a == b, label=label or "disc")


def terminal_cat() -> FinCat:
    return discrete(["*"], label="1")


def empty_cat() -> FinCat:
    return FinCat([], {}, {}, {}, label="0")


def product_cat(A: FinCat, B: FinCat) -> FinCat:
    objs = [(a, b) for a in A.objects for b in B.objects]
    mor = {(f, g): ((A.dom(f), B.dom(g)), (A.cod(f), B.cod(g))) for f in A.morphisms for g in B.morphisms}
    ident = {(a, b): (A.ident(a), B.ident(b)) for a, b in objs}
    table = {}
    for (f, g) in mor:
        for f2 in A.out_of(A.cod(f)):
            for g2 in B.out_of(B.cod(g)):
                table[((f2, g2), (f, g))] = (A.comp(f2, f), B.comp(g2, g))
    return FinCat(objs, mor, ident, table, label=f"({A.label}x{B.label})")


def opposite_cat(C: FinCat) -> FinCat:
    mor = {f: (b, a) for f, (a, b) in C.mor.items()}
    table = {(f, g): h for (g, f), h in C.table.items()}
    return FinCat(C.objects, mor, C.identities, table, label=f"{C.label}^op")


def full_subcategory(C: FinCat, objects: Iterable) -> FinCat:
    obs = set(objects)
    mor = {f: ab for f, ab in C.mor.items() if ab[0] in obs and ab[1] in obs}
    table = {k: v for k, v in C.table.items() if k[0] in mor and k[1] in mor}
    return FinCat(obs, mor, {a: C.ident(a) for a in obs}, table, label=f"{C.label}|")


# -- functors -----------------------------------------------------------------

class CFunctor:
    def __init__(self, source: FinCat, target: FinCat, obj: Dict, mor: Dict, check: bool = False, label: str = ""):
        self.source = source
        self.target = target
        self.obj = obj
        self.morph = mor
        self.label = label
        self._key = None
        if check:
            self.check()

    def __call__(self, x):
        """Apply to a morphism."""
        return self.morph[x]

    def on_obj(self, a):
        return self.obj[a]

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = (tuple(self.obj[a] for a in self.source.objects),
                         tuple(self.morph[f] for f in self.source.morphisms))
        return self._key

    def __eq__(self, other):
        return isinstance(other, CFunctor) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def check(self) -> None:
        A, B = self.source, self.target
        for a in A.objects:
            if self.obj[a] not in B.identities:
                raise ValueError(f"object {name(a)} maps outside the target")
            if self.morph[A.ident(a)] != B.ident(self.obj[a]):
                raise ValueError(f"identity at {name(a)} not preserved")
        for f in A.morphisms:
            a, b = A.mor[f]
            if B.mor[self.morph[f]] != (self.obj[a], self.obj[b]):
                raise ValueError(f"morphism {name(f)} maps to the wrong hom-set")
        for (g, f), h in A.table.items():
            if B.comp(self.morph[g], self.morph[f]) != self.morph[h]:
                raise ValueError(f"composition {name(g)}.{name(f)} not preserved")

    def is_valid(self) -> bool:
        try:
            self.check()
        except (ValueError, KeyError):
            return False
        return True

    def then(self, G: "CFunctor") -> "CFunctor":
        """G . self"""
        return CFunctor(self.source, G.target, {a: G.obj[b] for a, b in self.obj.items()},
                        {f: G.morph[g] for f, g in self.morph.items()})

    def __repr__(self) -> str:
        return f"<CFunctor {self.label or ''} {self.source.label}->{self.target.label}>"


def fcompose(*Fs: CFunctor) -> CFunctor:
    """fcompose(H, G, F) = H . G . F"""
    out = Fs[-1]
    for G in reversed(Fs[:-1]):
        out = out.then(G)
    return out


def identity_functor(C: FinCat) -> CFunctor:
    return CFunctor(C, C, {a: a for a in C.objects}, {f: f for f in C.morphisms}, label="id")


def constant_functor(A: FinCat, B: FinCat, b) -> CFunctor:
    return CFunctor(A, B, {a: b for a in A.objects}, {f: B.ident(b) for f in A.morphisms})


def to_terminal(A: FinCat, T: Optional[FinCat] = None) -> CFunctor:
    T = T or terminal_cat()
    return constant_functor(A, T, T.objects[0])


def projections(P: FinCat, A: FinCat, B: FinCat) -> Tuple[CFunctor, CFunctor]:
    """Projections of a (sub)category of a product whose objects/morphisms are pairs."""
    p1 = CFunctor(P, A, {x: x[0] for x in P.objects}, {f: f[0] for f in P.morphisms})
    p2 = CFunctor(P, B, {x: x[1] for x in P.objects}, {f: f[1] for f in P.morphisms})
    return p1, p2


def product_functor(F: CFunctor, G: CFunctor, source: FinCat, target: FinCat) -> CFunctor:
    return CFunctor(source, target, {(a, b): (F.obj[a], G.obj[b]) for (a, b) in source.objects},
                    {(f, g): (F.morph[f], G.morph[g]) for (f, g) in source.morphisms})


class CNat:
    """Natural transformation F => G given by components."""

    def __init__(self, source: CFunctor, target: CFunctor, comp: Dict, check: bool = False):
        self.source = source
        self.target = target
        self.comp = comp
        if check:
            self.check()

    def __getitem__(self, a):
        return self.comp[a]

    def check(self) -> None:
        F, G = self.source, self.target
        A, B = F.source, F.target
        for a in A.objects:
            if B.mor[self.comp[a]] != (F.obj[a], G.obj[a]):
                raise ValueError(f"component at {name(a)} has the wrong type")
        for f in A.morphisms:
            a, b = A.mor[f]
            if B.comp(G.morph[f], self.comp[a]) != B.comp(self.comp[b], F.morph[f]):
                raise ValueError(f"naturality fails at {name(f)}")

    def is_valid(self) -> bool:
        try:
            self.check()
        except (ValueError, KeyError):
            return False
        return True

    def is_iso(self) -> bool:
        B = self.source.target
        return all(B.is_iso(m) for m in self.comp.values())

    def non_iso_components(self) -> List:
        B = self.source.target
        return [a for a in sort_ids(self.comp) if not B.is_iso(self.comp[a])]

    def vcomp(self, other: "CNat") -> "CNat":
        """other . self (vertical)."""
        B = self.source.target
        return CNat(self.source, other.target, {a: B.comp(other.comp[a], self.comp[a]) for a in self.comp})

    def whisker_left(self, H: CFunctor) -> "CNat":
        """H * self : H F => H G"""
        return CNat(self.source.then(H), self.target.then(H), {a: H.morph[m] for a, m in self.comp.items()})

    def whisker_right(self, K: CFunctor) -> "CNat":
        """self * K : F K => G K"""
        return CNat(K.then(self.source), K.then(self.target), {x: self.comp[K.obj[x]] for x in K.source.objects})

    def __eq__(self, other):
        return isinstance(other, CNat) and self.comp == other.comp

    def __hash__(self):
        return hash(tuple(sorted(((name(a), name(m)) for a, m in self.comp.items()))))


def identity_nat(F: CFunctor) -> CNat:
    B = F.target
    return CNat(F, F, {a: B.ident(F.obj[a]) for a in F.source.objects})


def is_identity_nat(alpha: CNat) -> bool:
    B = alpha.source.target
    return all(B.is_identity(m) for m in alpha.comp.values())


# -- functor search --------------------------------------------------------------

def find_functors(A: FinCat, B: FinCat, fixed_obj: Optional[Dict] = None, fixed_mor: Optional[Dict] = None,
                  limit: Optional[int] = None) -> Iterator[CFunctor]:
    """All functors A -> B (deterministic order), by backtracking."""
    fixed_obj = fixed_obj or {}
    fixed_mor = fixed_mor or {}
    objs = list(A.objects)
    nonid = [f for f in A.morphisms if not A.is_identity(f)]
    # order morphisms so that composites come after their factors when possible
    produced = 0
    obj_choices = [[fixed_obj[a]] if a in fixed_obj else list(B.objects) for a in objs]

    for combo in itertools.product(*obj_choices):
        om = dict(zip(objs, combo))
        mm = {A.ident(a): B.ident(om[a]) for a in objs}
        cands = []
        ok = True
        for f in nonid:
            a, b = A.mor[f]
            cs = B.hom(om[a], om[b])
            if f in fixed_mor:
                cs = [m for m in cs if m == fixed_mor[f]]
            if not cs:
                ok = False
                break
            cands.append(cs)
        if not ok:
            continue
        for res in _assign_morphisms(A, B, nonid, cands, mm):
            yield CFunctor(A, B, om, res)
            produced += 1
            if limit is not None and produced >= limit:
                return


def _assign_morphisms(A: FinCat, B: FinCat, nonid: List, cands: List, mm: Dict) -> Iterator[Dict]:
    index = {f: i for i, f in enumerate(nonid)}
    # constraints: (g, f, h) with h = g.f, checked once all three are assigned
    checks: Dict[int, List] = {}
    for (g, f), h in A.table.items():
        pos = max(index.get(g, -1), index.get(f, -1), index.get(h, -1))
        if pos >= 0:
            checks.setdefault(pos, []).append((g, f, h))
    n = len(nonid)
    assign = dict(mm)

    def rec(i):
        if i == n:
            yield dict(assign)
            return
        f = nonid[i]
        for m in cands[i]:
            assign[f] = m
            good = True
            for (g, f1, h) in checks.get(i, ()):
                if B.table[(assign[g], assign[f1])] != assign[h]:
                    good = False
                    break
            if good:
                yield from rec(i + 1)
        assign.pop(f, None)

    yield from rec(0)


def find_nats(F: CFunctor, G: CFunctor) -> Iterator[CNat]:
    A, B = F.source, F.target
    objs = list(A.objects)
    choices = [B.hom(F.obj[a], G.obj[a]) for a in objs]
    for combo in itertools.product(*choices):
        comp = dict(zip(objs, combo))
        ok = True
        for f in A.morphisms:
            a, b = A.mor[f]
            if B.comp(G.morph[f], comp[a]) != B.comp(comp[b], F.morph[f]):
                ok = False
                break
        if ok:
            yield CNat(F, G, comp)


class FunctorCat(FinCat):
    """Fun(A, B) materialized; objects are functor keys, morphisms (F, G, components)."""

    def __init__(self, A: FinCat, B: FinCat, budget: int = DEFAULT_BUDGET):
        self.A, self.B = A, B
        functors = []
        for F in find_functors(A, B):
            functors.append(F)
            if len(functors) > budget:
                raise BudgetExceeded(f"functor category exceeds budget {budget}")
        self.functor = {F.key: F for F in functors}
        mor = {}
        nats = {}
        for F in functors:
            for G in functors:
                for al in find_nats(F, G):
                    mid = (F.key, G.key, tuple(al.comp[a] for a in A.objects))
                    mor[mid] = (F.key, G.key)
                    nats[mid] = al
                    if len(mor) > 20 * budget:
                        raise BudgetExceeded("functor category has too many morphisms")
        self.nat = nats
        ident = {F.key: (F.key, F.key, tuple(B.ident(F.obj[a]) for a in A.objects)) for F in functors}
        by_dom: Dict = {}
        for m, (x, y) in mor.items():
            by_dom.setdefault(x, []).append(m)
        table = {}
        for f, (x, y) in mor.items():
            for g in by_dom.get(y, ()):
                comps = tuple(B.comp(g[2][i], f[2][i]) for i in range(len(A.objects)))
                table[(g, f)] = (x, mor[g][1], comps)
        super().__init__([F.key for F in functors], mor, ident, table, label=f"Fun({A.label},{B.label})")

    def component(self, m, a):
        return m[2][self.A.objects.index(a)]

    def obj_of(self, F: CFunctor):
        return F.key

    def mor_of(self, al: CNat):
        return (al.source.key, al.target.key, tuple(al.comp[a] for a in self.A.objects))


def precompose_functor(K: CFunctor, FA: FunctorCat, FB: FunctorCat) -> CFunctor:
    """Fun(A, C) -> Fun(J, C) restricting along K: J -> A."""
    J = K.source
    A = K.target
    idx = {a: i for i, a in enumerate(A.objects)}
    obj = {}
    for key in FA.objects:
        F = FA.functor[key]
        obj[key] = K.then(F).key
    mor = {}
    for m in FA.morphisms:
        x, y, comps = m
        mor[m] = (obj[x], obj[y], tuple(comps[idx[K.obj[j]]] for j in J.objects))
    return CFunctor(FA, FB, obj, mor)


def postcompose_functor(f: CFunctor, FA: FunctorCat, FB: FunctorCat) -> CFunctor:
    """Fun(J, A) -> Fun(J, B) postcomposing with f: A -> B."""
    obj = {}
    for key in FA.objects:
        obj[key] = FA.functor[key].then(f).key
    mor = {}
    for m in FA.morphisms:
        x, y, comps = m
        mor[m] = (obj[x], obj[y], tuple(f.morph[c] for c in comps))
    return CFunctor(FA, FB, obj, mor)


def arrow_cat(C: FinCat) -> "CommaCat":
    idc = identity_functor(C)
    return comma(idc, idc)


class CommaCat(FinCat):
    """F | G: objects (a, b, phi: Fa -> Gb); morphisms (src, tgt, u, v)."""

    def __init__(self, F: CFunctor, G: CFunctor):
        self.F, self.G = F, G
        A, B, C = F.source, G.source, F.target
        objs = []
        for a in A.objects:
            for b in B.objects:
                for phi in C.hom(F.obj[a], G.obj[b]):
                    objs.append((a, b, phi))
        mor = {}
        for x in objs:
            a, b, phi = x
            for y in objs:
                a2, b2, phi2 = y
                for u in A.hom(a, a2):
                    for v in B.hom(b, b2):
                        if C.comp(G.morph[v], phi) == C.comp(phi2, F.morph[u]):
                            mor[(x, y, u, v)] = (x, y)
        ident = {x: (x, x, A.ident(x[0]), B.ident(x[1])) for x in objs}
        by_dom: Dict = {}
        for m, (x, y) in mor.items():
            by_dom.setdefault(x, []).append(m)
        table = {}
        for f, (x, y) in mor.items():
            for g in by_dom.get(y, ()):
                table[(g, f)] = (x, g[1], A.comp(g[2], f[2]), B.comp(g[3], f[3]))
        super().__init__(objs, mor, ident, table, label=f"({F.label or 'F'}|{G.label or 'G'})")
        self.p_A = CFunctor(self, A, {x: x[0] for x in objs}, {m: m[2] for m in mor}, label="pA")
        self.p_B = CFunctor(self, B, {x: x[1] for x in objs}, {m: m[3] for m in mor}, label="pB")


def comma(F: CFunctor, G: CFunctor) -> CommaCat:
    if F.target is not G.target:
        raise ValueError("comma needs a common codomain")
    return CommaCat(F, G)


class PullbackCat(FinCat):
    def __init__(self, F: CFunctor, G: CFunctor):
        A, B = F.source, G.source
        self.F, self.G = F, G
        objs = [(a, b) for a in A.objects for b in B.objects if F.obj[a] == G.obj[b]]
        mor = {}
        for f in A.morphisms:
            for g in B.morphisms:
                if F.morph[f] == G.morph[g]:
                    mor[(f, g)] = ((A.dom(f), B.dom(g)), (A.cod(f), B.cod(g)))
        ident = {(a, b): (A.ident(a), B.ident(b)) for a, b in objs}
        by_dom: Dict = {}
        for m, (x, y) in mor.items():
            by_dom.setdefault(x, []).append(m)
        table = {}
        for f, (x, y) in mor.items():
            for g in by_dom.get(y, ()):
                table[(g, f)] = (A.comp(g[0], f[0]), B.comp(g[1], f[1]))
        super().__init__(objs, mor, ident, table, label=f"({A.label}x_{B.label})")
        self.p1, self.p2 = projections(self, A, B)


def pullback_cat(F: CFunctor, G: CFunctor) -> PullbackCat:
    return PullbackCat(F, G)


# -- isomorphism of categories -------------------------------------------------

def find_cat_isomorphism(A: FinCat, B: FinCat) -> Optional[CFunctor]:
    if A.size() != B.size():
        return None

    def sig(C, a):
        return (len(C.out_of(a)), len(C.into(a)), len(C.hom(a, a)))

    sa = {a: sig(A, a) for a in A.objects}
    sb = {b: sig(B, b) for b in B.objects}
    objs = list(A.objects)

    def rec(i, om, used):
        if i == len(objs):
            yield dict(om)
            return
        a = objs[i]
        for b in B.objects:
            if b in used or sb[b] != sa[a]:
                continue
            if any(len(A.hom(a, x)) != len(B.hom(b, om[x])) or len(A.hom(x, a)) != len(B.hom(om[x], b)) for x in om):
                continue
            om[a] = b
            used.add(b)
            yield from rec(i + 1, om, used)
            used.discard(b)
            del om[a]

    for om in rec(0, {}, set()):
        for F in find_functors(A, B, fixed_obj=om):
            if len(set(F.morph.values())) == len(B.morphisms):
                return F
    return None
