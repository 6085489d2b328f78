"""Enhanced simplicial categories with truncated homs, functors into F_Delta and weighted limits.

A functor into F_Delta is stored by its values (enhanced simplicial sets) and
by an action map ``Delta^m x W(a) -> W(b)`` for each nondegenerate m-cell of
``A(a, b)``.  The weighted limit of ``F`` by ``W`` is the object of natural
transformations ``W -> F``: its n-cells are families ``Delta^n x W(a) -> F(a)``
that commute with the two actions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from ..fdelta import ESSet, EMap, eopposite, ehom, find_eisomorphism, is_tight_map, jointly_reflects
from ..sset import (
    BudgetExceeded,
    HomSSet,
    Simplex,
    SMap,
    SSet,
    cell_of_map,
    identity_map,
    levels_to_sset,
    name,
    precompose_prism,
    product,
    reverse,
    seq_simplex,
    std_simplex,
    truncated_hom,
)

DEFAULT_K = 2


class PartialComposite(ValueError):
    """A composite leaves the finite fragment of a truncated hom."""


def top_simplex(n: int) -> Simplex:
    return Simplex(tuple(range(n + 1)), tuple(range(n + 1)))


def prism_compose(G: SMap, F: SMap) -> SMap:
    """(u, w) -> G(u, F(u, w)) for F: Delta^m x U -> V and G: Delta^m x V -> W."""
    P = F.source
    m = P.left.top_dim
    Q = product(std_simplex(m), F.target)
    out = {}
    for c in P.all_cells():
        a, b, al, be = c
        out[c] = G(Q.pair(Simplex(a, al), F(P.ident(c))))
    return SMap(P, G.target, out)


def evaluate(g: SMap, u: Simplex, w: Simplex) -> Simplex:
    """g(u, w) for g: Delta^m x S -> T and simplices u of Delta^m, w of S of equal dimension."""
    return g(g.source.pair(u, w))


def constant_action(m: int, S: SSet, T: SSet, f: SMap) -> SMap:
    """Delta^m x S -> T, (u, w) -> f(w)."""
    P = product(std_simplex(m), S)
    return SMap(P, T, {c: f(Simplex(c[1], c[3])) for c in P.all_cells()})


class ECat:
    """A finite enhanced simplicial category truncated at dimension k.

    ``compose(a, b, c, g, f)`` composes simplices g of hom(b, c) and f of
    hom(a, b) of equal dimension.  ``ident[a]`` is a tight vertex of hom(a, a).
    """

    def __init__(self, objects: Sequence, hom: Dict[Tuple, ESSet],
                 compose: Callable[[Hashable, Hashable, Hashable, Simplex, Simplex], Simplex],
                 ident: Dict, k: int, label: str = ""):
        self.objects = tuple(objects)
        self.hom = hom
        self._compose = compose
        self.ident = ident
        self.k = k
        self.label = label

    def compose(self, a, b, c, g: Simplex, f: Simplex) -> Simplex:
        return self._compose(a, b, c, g, f)

    def identity_simplex(self, a, n: int) -> Simplex:
        return Simplex(self.ident[a], (0,) * (n + 1))

    def check(self, max_pairs: int = 20000) -> None:
        """Units, associativity and tightness of composition, levelwise up to k."""
        for a in self.objects:
            if self.ident[a] not in self.hom[(a, a)].tight:
                raise ValueError(f"identity at {name(a)} is not tight")
        for a, b in itertools.product(self.objects, repeat=2):
            H = self.hom[(a, b)]
            for n in range(self.k + 1):
                for f in H.loose.simplices(n):
                    if self.compose(a, b, b, self.identity_simplex(b, n), f) != f:
                        raise ValueError("left unit law fails")
                    if self.compose(a, a, b, f, self.identity_simplex(a, n)) != f:
                        raise ValueError("right unit law fails")
        seen = 0
        for a, b, c, d in itertools.product(self.objects, repeat=4):
            H1, H2, H3 = self.hom[(a, b)], self.hom[(b, c)], self.hom[(c, d)]
            for n in range(self.k + 1):
                for f in H1.loose.simplices(n):
                    for g in H2.loose.simplices(n):
                        seen += 1
                        if seen > max_pairs:
                            return
                        try:
                            gf = self.compose(a, b, c, g, f)
                        except PartialComposite:
                            continue
                        if n == 0 and H1.is_tight_simplex(f) and H2.is_tight_simplex(g):
                            if not self.hom[(a, c)].is_tight_simplex(gf):
                                raise ValueError("composite of tight arrows is not tight")
                        for h in H3.loose.simplices(n):
                            seen += 1
                            if seen > max_pairs:
                                return
                            try:
                                left = self.compose(a, c, d, h, gf)
                                right = self.compose(a, b, d, self.compose(b, c, d, h, g), f)
                            except PartialComposite:
                                continue
                            if left != right:
                                raise ValueError("associativity fails")

    def __repr__(self) -> str:
        return f"<ECat {self.label} objects={list(self.objects)} k={self.k}>"


class FdFunctor:
    """An enhanced functor A -> F_Delta (weight or diagram).

    ``action[(a, b)][x]`` is the map Delta^m x W(a) -> W(b) for a nondegenerate
    m-cell x of A(a, b).
    """

    def __init__(self, A: ECat, values: Dict, action: Dict[Tuple, Dict], label: str = ""):
        self.A = A
        self.values = values
        self.action = action
        self.label = label

    def act(self, a, b, x: Simplex) -> SMap:
        g = self.action[(a, b)][x.base]
        if x.nondegenerate:
            return g
        return precompose_prism(g, x.surj)

    def check(self) -> None:
        A = self.A
        for a in A.objects:
            W = self.values[a]
            for n in range(A.k + 1):
                idn = self.act(a, a, A.identity_simplex(a, n))
                if idn != constant_action(n, W.loose, W.loose, identity_map(W.loose)):
                    raise ValueError(f"identity at {name(a)} does not act trivially")
        for (a, b), H in A.hom.items():
            for v in H.tight:
                g = self.act(a, b, Simplex(v, (0,)))
                if not all(evaluate(g, top_simplex(0), Simplex(w, (0,))).base in self.values[b].tight
                           for w in self.values[a].tight):
                    raise ValueError(f"tight arrow {name(v)} acts by a loose map")
        for a, b, c in itertools.product(A.objects, repeat=3):
            for n in range(A.k + 1):
                for f in A.hom[(a, b)].loose.simplices(n):
                    for g in A.hom[(b, c)].loose.simplices(n):
                        try:
                            gf = A.compose(a, b, c, g, f)
                        except PartialComposite:
                            continue
                        if self.act(a, c, gf) != prism_compose(self.act(b, c, g), self.act(a, b, f)):
                            raise ValueError("action does not respect composition")


def representable(A: ECat, a) -> FdFunctor:
    """A(a, -) with action by postcomposition."""
    values = {b: A.hom[(a, b)] for b in A.objects}
    action = {}
    for b, c in itertools.product(A.objects, repeat=2):
        Hbc = A.hom[(b, c)].loose
        Hab = A.hom[(a, b)].loose
        acts = {}
        for x in Hbc.all_cells():
            m = Hbc.dim_of[x]
            P = product(std_simplex(m), Hab)
            xs = Hbc.ident(x)
            out = {}
            for cell in P.all_cells():
                u, f = P.split(P.ident(cell))
                out[cell] = A.compose(a, b, c, Hbc.apply(xs, tuple(u.base[t] for t in u.surj)), f)
            acts[x] = SMap(P, A.hom[(a, c)].loose, out)
        action[(b, c)] = acts
    return FdFunctor(A, values, action, label=f"{A.label}({name(a)},-)")


# -- the weighted limit engine -------------------------------------------------

@dataclass
class _Constraint:
    a: Hashable
    b: Hashable
    x: Simplex
    cells: list


class NatObject(ESSet):
    """{W, F}: an ESSet whose cells carry the natural families they stand for."""

    def __init__(self, loose: SSet, tight, W: FdFunctor, F: FdFunctor, payload: Dict, table: List[Dict], k: int):
        super().__init__(loose, tight)
        self.W, self.F = W, F
        self.payload = payload
        self.table = table
        self.k = k
        self.objects = W.A.objects

    def family(self, x: Simplex) -> Tuple[SMap, ...]:
        fam = self.payload[x.base]
        if x.nondegenerate:
            return fam
        return tuple(precompose_prism(s, x.surj) for s in fam)

    def component(self, x: Simplex, a) -> SMap:
        return self.family(x)[self.objects.index(a)]

    def projection(self, a, w) -> EMap:
        """Evaluation at the vertex w of W(a): {W, F} -> F(a)."""
        Fa = self.F.values[a]
        i = self.objects.index(a)
        out = {}
        for c in self.loose.all_cells():
            n = self.loose.dim_of[c]
            s = self.payload[c][i]
            out[c] = evaluate(s, top_simplex(n), Simplex(w, (0,) * (n + 1)))
        return EMap(self, Fa, SMap(self.loose, Fa.loose, out))

    def tight_projections(self) -> List[EMap]:
        return [self.projection(a, w) for a in self.objects for w in sorted(self.W.values[a].tight, key=name)]


def _constraint_cells(W: FdFunctor, F: FdFunctor, a, b, x: Simplex, n: int):
    """Cells of Delta^m x (Delta^n x W(a)) with their components, for one constraint."""
    m = x.dim
    Wa = W.values[a].loose
    PnW = product(std_simplex(n), Wa)
    Q = product(std_simplex(m), PnW)
    out = []
    for c in Q.all_cells():
        u, v = Q.split(Q.ident(c))
        t, w = PnW.split(v)
        out.append((u, v, t, w))
    return out


def nat_object(W: FdFunctor, F: FdFunctor, k: Optional[int] = None, budget: Optional[int] = None,
               homs: Optional[Dict] = None) -> NatObject:
    """The truncated end of [W-, F-]: the weighted limit {W, F} in F_Delta."""
    A = W.A
    k = A.k if k is None else k
    objs = list(A.objects)
    H = {}
    for a in objs:
        if homs is not None and a in homs:
            H[a] = homs[a]
        else:
            H[a] = truncated_hom(W.values[a].loose, F.values[a].loose, k, budget=budget)
    levels = []
    for n in range(k + 1):
        cands = {a: list(H[a].table[n].keys()) for a in objs}
        constraints = []
        for (a, b), Hab in A.hom.items():
            for x in Hab.loose.all_cells():
                if a == b and x == A.ident[a]:
                    continue
                xs = Hab.loose.ident(x)
                constraints.append(_Constraint(a, b, xs, _constraint_cells(W, F, a, b, xs, n)))
        memo: Dict = {}

        def key(ci: int, side: str, s: SMap):
            mk = (ci, side, s)
            got = memo.get(mk)
            if got is not None:
                return got
            con = constraints[ci]
            Wx = W.act(con.a, con.b, con.x)
            Fx = F.act(con.a, con.b, con.x)
            if side == "W":
                # (u, t, w) -> s_b(t, W_x(u, w))
                PnWb = s.source
                vals = tuple(s(PnWb.pair(t, evaluate(Wx, u, w))) for (u, v, t, w) in con.cells)
            else:
                # (u, t, w) -> F_x(u, s_a(t, w))
                vals = tuple(evaluate(Fx, u, s(v)) for (u, v, t, w) in con.cells)
            memo[mk] = vals
            return vals

        by_last: Dict[int, List[int]] = {}
        pos = {a: i for i, a in enumerate(objs)}
        for ci, con in enumerate(constraints):
            by_last.setdefault(max(pos[con.a], pos[con.b]), []).append(ci)
        # unary constraints prune candidate lists first
        for ci, con in enumerate(constraints):
            if con.a == con.b:
                cands[con.a] = [s for s in cands[con.a] if key(ci, "W", s) == key(ci, "F", s)]
        families = []
        assign: Dict = {}

        def rec(i):
            if i == len(objs):
                families.append(tuple(assign[a] for a in objs))
                if budget is not None and len(families) > budget:
                    raise BudgetExceeded("weighted limit exceeds budget")
                return
            a = objs[i]
            for s in cands[a]:
                assign[a] = s
                ok = True
                for ci in by_last.get(i, ()):
                    con = constraints[ci]
                    if con.a == con.b:
                        continue
                    if key(ci, "W", assign[con.b]) != key(ci, "F", assign[con.a]):
                        ok = False
                        break
                if ok:
                    rec(i + 1)
            assign.pop(a, None)

        rec(0)
        levels.append(families)

    def pre(fam, theta):
        return tuple(precompose_prism(s, theta) for s in fam)

    L, payload, table = levels_to_sset(levels, pre, lambda n, i, x: ("nat", n, i))
    tight = []
    for v in L.vertices:
        fam = payload[v]
        if all(is_tight_map(_vertex_component(s), W.values[a], F.values[a]) for a, s in zip(objs, fam)):
            tight.append(v)
    return NatObject(L, tight, W, F, payload, table, k)


def _vertex_component(s: SMap) -> SMap:
    """Delta^0 x S -> T viewed as S -> T."""
    P = s.source
    S = P.right
    return SMap(S, s.target, {c: s(P.pair(Simplex((0,), (0,) * (S.dim_of[c] + 1)), S.ident(c))) for c in S.all_cells()})


def weighted_limit(W: FdFunctor, F: FdFunctor, k: Optional[int] = None, budget: Optional[int] = None) -> NatObject:
    return nat_object(W, F, k, budget=budget)


def limit_reflects_tightness(L: NatObject, probes: Iterable[ESSet], max_probes: Optional[int] = None) -> Tuple[bool, int]:
    projs = L.tight_projections()
    total = 0
    for X in probes:
        ok, n = jointly_reflects(L, projs, X, max_probes=max_probes)
        total += n
        if not ok:
            return False, total
    return True, total


# -- instances -----------------------------------------------------------------

def fdelta_full_sub_ecat(objs: Sequence[ESSet], k: int = DEFAULT_K, budget: Optional[int] = None) -> ECat:
    """The full sub enhanced simplicial category of F_Delta on the given objects."""
    idx = list(range(len(objs)))
    hom = {}
    for i, j in itertools.product(idx, repeat=2):
        hom[(i, j)] = ehom(objs[i], objs[j], k, budget=budget)

    def compose(a, b, c, g, f):
        Hg, Hf, Hh = hom[(b, c)].hom, hom[(a, b)].hom, hom[(a, c)].hom
        n = g.dim
        return Hh.table[n][prism_compose(Hg.map_of(g), Hf.map_of(f))]

    ident = {i: cell_of_map(hom[(i, i)].hom, identity_map(objs[i].loose)).base for i in idx}
    E = ECat(idx, hom, compose, ident, k, label="F_Delta|")
    E.values = list(objs)
    return E


def self_diagram(E: ECat) -> FdFunctor:
    """The inclusion of a full sub ECat of F_Delta: i -> objs[i], acting by evaluation."""
    action = {}
    for (a, b), H in E.hom.items():
        action[(a, b)] = {x: H.hom.payload[x] for x in H.loose.all_cells()}
    return FdFunctor(E, {i: E.values[i] for i in E.objects}, action, label="incl")


def terminal_ecat(k: int = DEFAULT_K) -> ECat:
    pt = std_simplex(0)
    H = ESSet(pt, pt.vertices)
    return ECat(["*"], {("*", "*"): H}, lambda a, b, c, g, f: g, {"*": (0,)}, k, label="1")


def constant_weight(E: ECat, S: ESSet) -> FdFunctor:
    """The weight with value S at the only object of a one-object ECat acting trivially."""
    (a,) = E.objects
    H = E.hom[(a, a)].loose
    action = {(a, a): {x: constant_action(H.dim_of[x], S.loose, S.loose, identity_map(S.loose)) for x in H.all_cells()}}
    return FdFunctor(E, {a: S}, action)


# -- co-duality ---------------------------------------------------------------------

def _rev(x: Simplex, S: SSet) -> Simplex:
    return reverse(x, S.dim_of[x.base])


def ecat_co(K: ECat) -> ECat:
    """Homs replaced by their opposites; composition conjugated by reversal."""
    hom = {ab: eopposite(H) for ab, H in K.hom.items()}

    def compose(a, b, c, g, f):
        gf = K.compose(a, b, c, _rev(g, K.hom[(b, c)].loose), _rev(f, K.hom[(a, b)].loose))
        return _rev(gf, K.hom[(a, c)].loose)

    E = ECat(K.objects, hom, compose, dict(K.ident), K.k, label=f"{K.label}^co")
    E.co_of = K
    if hasattr(K, "values"):
        E.values = [eopposite(S) for S in K.values]
    return E


def reverse_action(g: SMap, Sop: SSet, Top: SSet) -> SMap:
    """Delta^m x S^op -> T^op from g: Delta^m x S -> T, via the reversal of Delta^m."""
    P = g.source
    m = P.left.top_dim
    S, T = P.right, g.target
    Q = product(std_simplex(m), Sop)
    out = {}
    for c in Q.all_cells():
        u, w = Q.split(Q.ident(c))
        seq = [m - u.base[t] for t in u.surj][::-1]
        u2 = seq_simplex(seq)
        w2 = _rev(w, S)
        out[c] = _rev(g(P.pair(u2, w2)), T)
    return SMap(Q, Top, out)


def co_functor(W: FdFunctor, Kco: ECat) -> FdFunctor:
    """W_co: K^co -> F_Delta, values opposites, action reversed."""
    values = {a: eopposite(S) for a, S in W.values.items()}
    action = {}
    for (a, b), acts in W.action.items():
        action[(a, b)] = {x: reverse_action(g, values[a].loose, values[b].loose) for x, g in acts.items()}
    return FdFunctor(Kco, values, action, label=f"{W.label}_co")


@dataclass
class DualityReport:
    k: int
    limit_counts: Tuple
    dual_counts: Tuple
    isomorphic: bool


def duality_limit_check(W: FdFunctor, F: FdFunctor, k: Optional[int] = None,
                        homs: Optional[Dict] = None, homs_co: Optional[Dict] = None) -> DualityReport:
    """{W, F} and the limit of the co-dual data agree up to the opposite.

    ``homs`` / ``homs_co`` optionally restrict the candidate maps per object
    (see ``nat_object``).
    """
    L = nat_object(W, F, k, homs=homs)
    Kco = ecat_co(W.A)
    Lco = nat_object(co_functor(W, Kco), co_functor(F, Kco), k, homs=homs_co)
    iso = find_eisomorphism(eopposite(L), Lco) is not None
    return DualityReport(L.k, L.counts(), Lco.counts(), iso)


def reversed_hom(H: HomSSet, Sop: SSet, Top: SSet) -> HomSSet:
    """The maps reverse_action(g) for g in H: a sub simplicial set of [S^op, T^op]."""
    levels = []
    for n in range(H.k + 1):
        levels.append([reverse_action(g, Sop, Top) for g in H.table[n]])
    sset, payload, table = levels_to_sset(levels, precompose_prism, lambda n, i, x: ("h", n, i))
    return HomSSet(Sop, Top, H.k, {n: sset.cells[n] for n in sset.cells}, sset.faces, payload, table,
                   label=f"{H.label}^rev")
