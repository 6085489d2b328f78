"""Strict monads, the category Mnd and the Eilenberg-Moore weight.

An ordinal is named by its number of elements, so the empty ordinal is 0 and
[n] is n + 1.  A morphism of ordinals is ``(values, q)``: a monotone map from
``len(values)`` elements to ``q`` elements.  Only ordinals up to a finite
``bound`` are materialized; composites whose ordinal sum leaves the bound
raise ``PartialComposite``.

A strict monad (T, eta, mu) on a finite category C acts on C through
Act: Delta_0 -> Fun(C, C), sending n to T^n and a monotone map to the
horizontal composite of its fibres, a fibre with r elements acting by the
r-fold multiplication (r = 0 is the unit).

The Eilenberg-Moore object {W, T} is computed from its defining universal
property.  For a probe category X, the n-cells of [Mnd, F_Delta](W, K(X, T-))
are chains of n morphisms of the category of W-cones: functors
Sigma: Delta_top -> Fun(X, C) with Sigma(a + g) = Act(a) * Sigma(g), and
equivariant natural transformations between them.  Nerves are fully faithful
and preserve products, so this is exact up to the truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..catkit.category import (
    CFunctor,
    CNat,
    FinCat,
    FunctorCat,
    find_functors,
    find_nats,
    identity_functor,
    identity_nat,
)
from ..catkit.nerve import Nerve, nerve_map
from ..fdelta import ESSet
from ..sset import Simplex, is_isomorphism, name
from .ecat import DEFAULT_K, ECat, PartialComposite
from .nerves import NerveECat, nerve_ecat, preserves_marking

DEFAULT_BOUND = 4
MND = "+"


class MonadLawError(ValueError):
    """A candidate (T, eta, mu) violates a monad law; the message names the law."""


# -- ordinals --------------------------------------------------------------------

def ordinal_cat(bound: int, top: bool = False) -> FinCat:
    """Delta_0 (or Delta_top, the top-preserving maps between non-empty ordinals) up to ``bound`` elements."""
    counts = range(1 if top else 0, bound + 1)
    mor = {}
    for p in counts:
        for q in counts:
            for vals in itertools.combinations_with_replacement(range(q), p):
                if top and vals[-1] != q - 1:
                    continue
                mor[(vals, q)] = (p, q)
    ident = {p: (tuple(range(p)), p) for p in counts}
    by_dom: Dict = {}
    for f, (p, q) in mor.items():
        by_dom.setdefault(p, []).append(f)
    table = {}
    for f, (p, q) in mor.items():
        for g in by_dom.get(q, ()):
            table[(g, f)] = (tuple(g[0][v] for v in f[0]), g[1])
    return FinCat(list(counts), mor, ident, table, label=("Dtop" if top else "D0") + f"<={bound}")


def ordinal_sum(f, g):
    """f + g: the first block is f, the second g shifted past the codomain of f."""
    return (f[0] + tuple(f[1] + v for v in g[0]), f[1] + g[1])


def sum_chains(C: FinCat, x: Tuple, y: Tuple, bound: int) -> Tuple:
    """Levelwise ordinal sum of two chains (start, morphisms) of equal length."""
    sx, mx = x
    sy, my = y
    if sx + sy > bound:
        raise PartialComposite(f"ordinal sum beyond {bound}")
    out = []
    for f, g in zip(mx, my):
        h = ordinal_sum(f, g)
        if h[1] > bound:
            raise PartialComposite(f"ordinal sum beyond {bound}")
        out.append(h)
    return sx + sy, out


def mnd_ecat(k: int = DEFAULT_K, bound: int = DEFAULT_BOUND) -> ECat:
    """One object +, hom = N(Delta_0) truncated, composition by ordinal sum; inchordate."""
    D0 = ordinal_cat(bound)
    N = Nerve(D0, k)

    def compose(a, b, c, g, f):
        s, ms = sum_chains(D0, N.chain_of(g), N.chain_of(f), bound)
        return N.simplex_of_chain(s, ms)

    E = ECat([MND], {(MND, MND): ESSet(N, [0])}, compose, {MND: 0}, k, label=f"Mnd<={bound}")
    E.bound = bound
    E.ordinals = D0
    return E


class EMWeight:
    """W(+) = N(Delta_top) with only [0] tight; Delta_0 acts by ordinal sum on the left.

    The action is partial at the bound, so it is exposed cellwise by ``act``.
    """

    def __init__(self, k: int = DEFAULT_K, bound: int = DEFAULT_BOUND, mnd: Optional[ECat] = None):
        self.k = k
        self.bound = bound
        self.A = mnd or mnd_ecat(k, bound)
        self.top = ordinal_cat(bound, top=True)
        self.value = ESSet(Nerve(self.top, k), [1])

    @property
    def hom(self) -> Nerve:
        return self.A.hom[(MND, MND)].loose

    def act(self, x: Simplex, w: Simplex) -> Simplex:
        N = self.value.loose
        s, ms = sum_chains(self.top, self.hom.chain_of(x), N.chain_of(w), self.bound)
        return N.simplex_of_chain(s, ms)

    def check(self, max_pairs: int = 50_000) -> int:
        """Simplicial compatibility, unit and associativity of the action where defined."""
        H, N = self.hom, self.value.loose
        seen = 0
        for n in range(self.k + 1):
            ident = self.A.identity_simplex(MND, n)
            for w in N.simplices(n):
                if self.act(ident, w) != w:
                    raise ValueError("the empty ordinal does not act trivially")
            hs = _by_ordinals(H, n)
            for x, w in _defined_pairs(hs, _by_ordinals(N, n), self.bound):
                xw = self.act(x, w)
                seen += 1
                if seen > max_pairs:
                    return seen
                for i in range(n + 1) if n > 0 else ():
                    if N.face(xw, i) != self.act(H.face(x, i), N.face(w, i)):
                        raise ValueError("the action is not simplicial")
                vx = H.vertex_tuple(x)
                vw = N.vertex_tuple(w)
                for vy, ys in hs.items():
                    if any(a + b + c > self.bound for a, b, c in zip(vy, vx, vw)):
                        continue
                    for y in ys:
                        yx = self.A.compose(MND, MND, MND, y, x)
                        if self.act(yx, w) != self.act(y, xw):
                            raise ValueError("the action is not associative")
        return seen


def _by_ordinals(S, n: int) -> Dict[Tuple, List[Simplex]]:
    out: Dict = {}
    for x in S.simplices(n):
        out.setdefault(S.vertex_tuple(x), []).append(x)
    return out


def _defined_pairs(xs: Dict, ws: Dict, bound: int):
    """Pairs of n-simplices whose levelwise ordinal sums stay within the bound."""
    for vx, xl in xs.items():
        for vw, wl in ws.items():
            if all(a + b <= bound for a, b in zip(vx, vw)):
                for x in xl:
                    for w in wl:
                        yield x, w


def em_weight(k: int = DEFAULT_K, bound: int = DEFAULT_BOUND) -> EMWeight:
    return EMWeight(k, bound)


# -- strict monads -------------------------------------------------------------------

def hcomp(beta: CNat, alpha: CNat) -> CNat:
    """beta * alpha : G F => G' F' for alpha: F => F' and beta: G => G'."""
    F, F2 = alpha.source, alpha.target
    G, G2 = beta.source, beta.target
    C = G.target
    comps = {x: C.comp(beta.comp[F2.obj[x]], G.morph[alpha.comp[x]]) for x in F.source.objects}
    return CNat(F.then(G), F2.then(G2), comps)


@dataclass
class StrictMonad:
    C: FinCat
    T: CFunctor
    eta: CNat
    mu: CNat
    marked: Optional[Tuple] = None
    label: str = ""
    _powers: Dict = field(default_factory=dict, repr=False)
    _nu: Dict = field(default_factory=dict, repr=False)
    _act: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.marked is None:
            self.marked = tuple(self.C.objects)
        self.marked = tuple(self.marked)

    def check(self) -> None:
        C, T = self.C, self.T
        if not T.is_valid():
            raise MonadLawError("T is not a functor")
        if not self.eta.is_valid():
            raise MonadLawError("eta is not natural")
        if not self.mu.is_valid():
            raise MonadLawError("mu is not natural")
        eta, mu = self.eta.comp, self.mu.comp
        for x in C.objects:
            tx = T.obj[x]
            if C.comp(mu[x], T.morph[mu[x]]) != C.comp(mu[x], mu[tx]):
                raise MonadLawError(f"associativity fails at {name(x)}")
            if C.comp(mu[x], eta[tx]) != C.ident(tx):
                raise MonadLawError(f"left unit law fails at {name(x)}")
            if C.comp(mu[x], T.morph[eta[x]]) != C.ident(tx):
                raise MonadLawError(f"right unit law fails at {name(x)}")

    def power(self, p: int) -> CFunctor:
        if p not in self._powers:
            self._powers[p] = identity_functor(self.C) if p == 0 else self.power(p - 1).then(self.T)
        return self._powers[p]

    def nu(self, r: int) -> CNat:
        """The r-fold multiplication T^r => T."""
        if r not in self._nu:
            if r == 0:
                out = self.eta
            elif r == 1:
                out = identity_nat(self.T)
            else:
                out = hcomp(identity_nat(self.T), self.nu(r - 1)).vcomp(self.mu)
            self._nu[r] = out
        return self._nu[r]

    def act(self, f) -> CNat:
        """Act(f): T^p => T^q for a monotone map f = (values, q)."""
        if f not in self._act:
            vals, q = f
            if q == 0:
                out = identity_nat(identity_functor(self.C))
            else:
                out = self.nu(vals.count(q - 1))
                for j in range(q - 2, -1, -1):
                    out = hcomp(self.nu(vals.count(j)), out)
            self._act[f] = out
        return self._act[f]

    def act_functor(self, bound: int, FC: Optional[FunctorCat] = None) -> Tuple[CFunctor, FunctorCat]:
        """Act: Delta_0 (up to ``bound``) -> Fun(C, C)."""
        D0 = ordinal_cat(bound)
        FC = FC or FunctorCat(self.C, self.C)
        F = CFunctor(D0, FC, {p: self.power(p).key for p in D0.objects},
                     {f: FC.mor_of(self.act(f)) for f in D0.morphisms})
        return F, FC

    def is_marked(self, x) -> bool:
        return x in self.marked


def monad_from_adjunction(adj, marked=None, label: str = "") -> StrictMonad:
    """T = R L, eta the unit, mu = R counit L."""
    L, R = adj.left, adj.right
    A = L.source
    T = L.then(R)
    eta = CNat(identity_functor(A), T, dict(adj.unit))
    mu = CNat(T.then(T), T, {a: R.morph[adj.counit[L.obj[a]]] for a in A.objects})
    return StrictMonad(A, T, eta, mu, marked, label)


def identity_monad(C: FinCat, marked=None) -> StrictMonad:
    I = identity_functor(C)
    return StrictMonad(C, I, identity_nat(I), identity_nat(I), marked, label=f"id on {C.label}")


# -- the loose monad N(Delta_0) -> K(N C, N C) ---------------------------------------

@dataclass
class MonadDiagram:
    """The loose monad generated by a strict one: + -> N(C), cells of N(Delta_0) act by the nerve of Act."""
    monad: StrictMonad
    mnd: ECat
    target: NerveECat
    act: CFunctor
    hom_map: object

    def check(self, max_pairs: int = 20_000) -> int:
        self.act.check()
        Hs = self.mnd.hom[(MND, MND)].loose
        seen = 0
        for n in range(self.mnd.k + 1):
            hs = _by_ordinals(Hs, n)
            for x, y in _defined_pairs(hs, hs, self.mnd.bound):
                seen += 1
                if seen > max_pairs:
                    return seen
                xy = self.mnd.compose(MND, MND, MND, x, y)
                if self.hom_map(xy) != self.target.compose(0, 0, 0, self.hom_map(x), self.hom_map(y)):
                    raise ValueError("the action does not respect ordinal sum")
        return seen


def strict_monad_diagram(M: StrictMonad, k: int = DEFAULT_K, bound: int = DEFAULT_BOUND) -> MonadDiagram:
    M.check()
    mnd = mnd_ecat(k, bound)
    target = nerve_ecat([M.C], preserves_marking([M.marked]), k)
    FC = target.funcats[(0, 0)]
    act, _ = M.act_functor(bound, FC)
    hom_map = nerve_map(act, mnd.hom[(MND, MND)].loose, target.nerves[(0, 0)])
    return MonadDiagram(M, mnd, target, act, hom_map)


# -- the algebra oracle -------------------------------------------------------------

@dataclass
class EMCategory:
    cat: FinCat
    forgetful: CFunctor
    structure: Dict
    marked: Tuple


def em_algebras(M: StrictMonad) -> EMCategory:
    """C^T: algebras (a, alpha) with the unit and associativity laws, and algebra maps."""
    C, T = M.C, M.T
    eta, mu = M.eta.comp, M.mu.comp
    algs = []
    for a in C.objects:
        for al in C.hom(T.obj[a], a):
            if C.comp(al, eta[a]) != C.ident(a):
                continue
            if C.comp(al, T.morph[al]) != C.comp(al, mu[a]):
                continue
            algs.append(("alg", a, al))
    mor = {}
    for x, y in itertools.product(algs, repeat=2):
        for h in C.hom(x[1], y[1]):
            if C.comp(h, x[2]) == C.comp(y[2], T.morph[h]):
                mor[("map", h, x, y)] = (x, y)
    ident = {x: ("map", C.ident(x[1]), x, x) for x in algs}
    by_dom: Dict = {}
    for f, (x, y) in mor.items():
        by_dom.setdefault(x, []).append(f)
    table = {}
    for f, (x, y) in mor.items():
        for g in by_dom.get(y, ()):
            table[(g, f)] = ("map", C.comp(g[1], f[1]), x, mor[g][1])
    CT = FinCat(algs, mor, ident, table, label=f"{C.label}^T")
    U = CFunctor(CT, C, {x: x[1] for x in algs}, {f: f[1] for f in mor})
    marked = tuple(x for x in algs if M.is_marked(x[1]))
    return EMCategory(CT, U, {x: x[2] for x in algs}, marked)


# -- W-cones --------------------------------------------------------------------------

class ConeCategory(FinCat):
    """Cones W -> K(X, T-) for the EM weight, truncated at ``bound`` ordinals.

    A cone is determined by f = Sigma(1) and alpha = Sigma(2 -> 1); every
    candidate (f, alpha) is expanded to a functor on Delta_top and kept only
    if it is a functor and is equivariant for the ordinal-sum action.
    """

    def __init__(self, M: StrictMonad, X: FinCat, bound: int = DEFAULT_BOUND):
        if bound < 3:
            raise ValueError("the EM weight needs ordinals with at least 3 elements")
        self.monad, self.X, self.bound = M, X, bound
        self.top = ordinal_cat(bound, top=True)
        self.D0 = ordinal_cat(bound)
        self.sigma: Dict = {}
        self.functor_of: Dict = {}
        self.rejected = 0
        C, T = M.C, M.T
        for f in find_functors(X, C):
            for al in find_nats(f.then(T), f):
                sig = self._expand(f, al)
                if self._is_cone(f, sig):
                    key = ("cone", f.key, tuple(al.comp[x] for x in X.objects))
                    self.sigma[key] = sig
                    self.functor_of[key] = f
                else:
                    self.rejected += 1
        mor = {}
        for s, t in itertools.product(self.sigma, repeat=2):
            for th in find_nats(self.functor_of[s], self.functor_of[t]):
                if self._is_cone_map(s, t, th):
                    mor[(s, t, tuple(th.comp[x] for x in X.objects))] = (s, t)
        ident = {s: (s, s, tuple(C.ident(self.functor_of[s].obj[x]) for x in X.objects)) for s in self.sigma}
        by_dom: Dict = {}
        for m, (s, t) in mor.items():
            by_dom.setdefault(s, []).append(m)
        table = {}
        n = len(X.objects)
        for m, (s, t) in mor.items():
            for m2 in by_dom.get(t, ()):
                table[(m2, m)] = (s, mor[m2][1], tuple(C.comp(m2[2][i], m[2][i]) for i in range(n)))
        super().__init__(list(self.sigma), mor, ident, table, label=f"Cone({X.label})")

    def _expand(self, f: CFunctor, al: CNat) -> Dict:
        """Sigma(g) for every top-preserving g, forced by f, alpha, functoriality and equivariance."""
        M, C = self.monad, self.monad.C
        X = self.X
        base = {}
        for r in range(1, self.bound + 1):
            if r == 1:
                base[r] = {x: C.ident(f.obj[x]) for x in X.objects}
            else:
                nu = M.nu(r - 1).comp
                base[r] = {x: C.comp(al.comp[x], nu[f.obj[x]]) for x in X.objects}
        sig = {}
        for g in self.top.morphisms:
            vals, q = g
            p = len(vals)
            r = vals.count(q - 1)
            head = M.act((vals[:p - r], q - 1)).comp
            Tp = M.power(p - r)
            sig[g] = {x: C.comp(head[f.obj[x]], Tp.morph[base[r][x]]) for x in X.objects}
        return sig

    def _is_cone(self, f: CFunctor, sig: Dict) -> bool:
        M, C, X = self.monad, self.monad.C, self.X
        top, D0 = self.top, self.D0
        for g in top.morphisms:
            p, q = top.mor[g]
            for x in X.objects:
                if C.mor[sig[g][x]] != (M.power(p - 1).obj[f.obj[x]], M.power(q - 1).obj[f.obj[x]]):
                    return False
        for b in top.objects:
            if any(not C.is_identity(sig[top.ident(b)][x]) for x in X.objects):
                return False
        for (h, g), hg in top.table.items():
            if any(C.comp(sig[h][x], sig[g][x]) != sig[hg][x] for x in X.objects):
                return False
        for a in D0.morphisms:
            pa, qa = D0.mor[a]
            act = M.act(a).comp
            Ta = M.power(pa)
            for g in top.morphisms:
                pg, qg = top.mor[g]
                if pa + pg > self.bound or qa + qg > self.bound:
                    continue
                ag = ordinal_sum(a, g)
                tgt = M.power(qg - 1)
                for x in X.objects:
                    rhs = C.comp(act[tgt.obj[f.obj[x]]], Ta.morph[sig[g][x]])
                    if sig[ag][x] != rhs:
                        return False
        return True

    def _is_cone_map(self, s, t, th: CNat) -> bool:
        M, C, X = self.monad, self.monad.C, self.X
        S, S2 = self.sigma[s], self.sigma[t]
        for g in self.top.morphisms:
            p, q = self.top.mor[g]
            Tp, Tq = M.power(p - 1), M.power(q - 1)
            for x in X.objects:
                if C.comp(S2[g][x], Tp.morph[th.comp[x]]) != C.comp(Tq.morph[th.comp[x]], S[g][x]):
                    return False
        return True


def cone_category(M: StrictMonad, X: FinCat, bound: int = DEFAULT_BOUND) -> ConeCategory:
    return ConeCategory(M, X, bound)


def comparison_functor(M: StrictMonad, em: EMCategory, FC: FunctorCat, cones: ConeCategory) -> CFunctor:
    """Fun(X, C^T) -> Cone(X): G -> (U G, structure of G), psi -> U psi."""
    X = FC.A
    U = em.forgetful
    obj = {}
    for key in FC.objects:
        G = FC.functor[key]
        obj[key] = ("cone", G.then(U).key, tuple(em.structure[G.obj[x]] for x in X.objects))
    mor = {}
    for m in FC.morphisms:
        s, t = FC.mor[m]
        mor[m] = (obj[s], obj[t], tuple(U.morph[c] for c in m[2]))
    return CFunctor(FC, cones, obj, mor)


@dataclass
class EMReport:
    k: int
    bound: int
    algebras: int
    per_object: List[Dict]
    forgetful_tight: bool
    reflects_tightness: bool
    probes: int
    failures: List[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def _bijective(F: CFunctor) -> bool:
    A, B = F.source, F.target
    return (sorted(map(name, F.obj.values())) == sorted(map(name, B.objects))
            and sorted(map(name, F.morph.values())) == sorted(map(name, B.morphisms))
            and len(set(F.obj.values())) == len(A.objects) and len(set(F.morph.values())) == len(A.morphisms))


def marked_probes(C: FinCat) -> List[Tuple[FinCat, Tuple]]:
    """Small marked categories used to probe reflection of tightness."""
    from ..catkit.category import linear_order, terminal_cat
    pt = terminal_cat()
    arrow = linear_order(1)
    return [(pt, ()), (pt, ("*",)), (arrow, ()), (arrow, (0,)), (arrow, (1,)), (arrow, (0, 1))]


def em_universal_property_check(M: StrictMonad, candidate: Optional[EMCategory] = None, k: int = DEFAULT_K,
                                bound: int = DEFAULT_BOUND) -> EMReport:
    """K(X, N C^T) ~ [Mnd, F_Delta](W, K(X, N T-)) for X in {N C, N C^T}, levelwise up to k.

    Also checks that U: N C^T -> N C is tight and reflects tightness.
    """
    M.check()
    em = candidate or em_algebras(M)
    cats = [M.C, em.cat]
    marks = [M.marked, em.marked]
    K = nerve_ecat(cats, preserves_marking(marks), k)
    failures: List[str] = []
    per = []
    for X in (0, 1):
        FC = K.funcats[(X, 1)]
        cones = cone_category(M, cats[X], bound)
        Phi = comparison_functor(M, em, FC, cones)
        row = {"probe": cats[X].label, "functors": len(FC.objects), "cones": len(cones.objects),
               "rejected": cones.rejected}
        if not Phi.is_valid():
            failures.append(f"comparison is not a functor at {cats[X].label}")
            per.append(row)
            continue
        if not _bijective(Phi):
            failures.append(f"comparison is not bijective at {cats[X].label}")
            per.append(row)
            continue
        lhs = K.hom[(X, 1)]
        Nc = Nerve(cones, k)
        cone_marks = preserves_marking([marks[X], M.marked])
        rhs = ESSet(Nc, [c for c in cones.objects if cone_marks(0, 1, cones.functor_of[c])])
        phi = nerve_map(Phi, lhs.loose, Nc)
        row["lhs_counts"] = lhs.loose.counts()
        row["rhs_counts"] = Nc.counts()
        if not is_isomorphism(phi):
            failures.append(f"nerves differ at {cats[X].label}")
        tight_ok = all((v in lhs.tight) == (phi.on_vertex(v) in rhs.tight) for v in lhs.loose.vertices)
        row["tight"] = len(lhs.tight)
        if not tight_ok:
            failures.append(f"tight vertices differ at {cats[X].label}")
        per.append(row)
    U = em.forgetful
    tight_sel = preserves_marking(marks)
    forgetful_tight = tight_sel(1, 0, U)
    if not forgetful_tight:
        failures.append("forgetful functor is not tight")
    reflects = True
    probes = 0
    pcats = [(cats[0], marks[0]), (cats[1], marks[1])] + marked_probes(M.C)
    for P, pm in pcats:
        sel = preserves_marking([pm, em.marked, M.marked])
        for G in find_functors(P, em.cat):
            probes += 1
            if sel(0, 1, G) != sel(0, 2, G.then(U)):
                reflects = False
    if not reflects:
        failures.append("forgetful functor does not reflect tightness")
    return EMReport(k, bound, len(em.cat.objects), per, forgetful_tight, reflects, probes, failures)
