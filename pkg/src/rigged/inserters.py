"""Rigged n-inserters in F_Delta, as a pullback and as a weighted limit.

A rigged diagram is a map ``Dbar: S x bd(Delta^n) -> T`` whose leg at the
terminal vertex [n] (or the initial vertex [0]) preserves tightness.  Its
rigged inserter is the pullback of the curried ``S -> T^{bd Delta^n}`` along the
restriction ``T^{Delta^n} -> T^{bd Delta^n}``; the same object is the limit of
the diagram weighted by Psi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .enriched.ecat import (
    DEFAULT_K,
    DualityReport,
    NatObject,
    co_functor,
    duality_limit_check,
    ecat_co,
    reversed_hom,
    nat_object,
    top_simplex,
)
from .enriched.rigged_weight import X, Y, dcat_rigged, diagram_functor, weight_terminal_rigged
from .fdelta import (
    EHom,
    EMap,
    ESSet,
    curry,
    eopposite,
    find_eisomorphism,
    hom_map,
    inchordate,
    is_tight_map,
    jointly_reflects,
)
from .sset import (
    BudgetExceeded,
    HomSSet,
    Simplex,
    SMap,
    SSet,
    boundary,
    enumerate_maps,
    identity_surj,
    is_isomorphism,
    levels_to_sset,
    precompose_prism,
    opposite,
    product,
    pullback,
    reverse,
    seq_simplex,
    std_simplex,
    subcomplex,
    truncated_hom,
    vertex_map_of_hom,
)


class InvalidDiagram(ValueError):
    pass


@dataclass
class RiggedDiagram:
    """Dbar: S x bd(Delta^n) -> T with a tight terminal (or initial) leg."""

    S: ESSet
    T: ESSet
    n: int
    Dbar: SMap
    terminal: bool = True

    @property
    def rig_vertex(self) -> int:
        return self.n if self.terminal else 0

    def leg(self, j: int) -> SMap:
        """The composite ev_j . D: S -> T."""
        S = self.S.loose
        P = self.Dbar.source
        out = {c: self.Dbar(P.pair(S.ident(c), Simplex((j,), (0,) * (S.dim_of[c] + 1)))) for c in S.all_cells()}
        return SMap(S, self.T.loose, out)

    def check(self) -> None:
        bd, _ = boundary(self.n)
        P = self.Dbar.source
        if P.left is not self.S.loose or P.right is not bd or self.Dbar.target is not self.T.loose:
            raise InvalidDiagram("Dbar must be a map S x bd(Delta^n) -> T")
        self.Dbar.check()
        if self.n == 0:
            return
        leg = self.leg(self.rig_vertex)
        if not is_tight_map(leg, self.S, self.T):
            which = "terminal" if self.terminal else "initial"
            raise InvalidDiagram(f"the {which} leg of D is not tight")


def diagram_from_cells(S: ESSet, T: ESSet, n: int, cells: Dict[tuple, SMap], terminal: bool = True) -> RiggedDiagram:
    """Build Dbar from maps S x Delta^m -> T, one per nondegenerate m-cell of bd(Delta^n)."""
    bd, _ = boundary(n)
    P = product(S.loose, bd)
    out = {}
    for z in P.all_cells():
        a, c, al, be = z
        h = cells[c]
        m = len(c) - 1
        out[z] = h(h.source.pair(Simplex(a, al), std_simplex(m).realize(tuple(range(m + 1)), be)))
    d = RiggedDiagram(S, T, n, SMap(P, T.loose, out), terminal)
    d.check()
    return d


def constant_prism(f: SMap, m: int) -> SMap:
    """S x Delta^m -> T, (s, u) -> f(s)."""
    S = f.source
    P = product(S, std_simplex(m))
    return SMap(P, f.target, {z: f(Simplex(z[0], z[2])) for z in P.all_cells()})


# -- powers ------------------------------------------------------------------

def power_inchordate(T: ESSet, J: SSet, k: int = DEFAULT_K) -> EHom:
    """T^J for J inchordate: loose part [J, T], a vertex tight iff all its evaluations are."""
    H = truncated_hom(J, T.loose, k)
    tight = [v for v in H.vertices if all(vertex_map_of_hom(H, v).on_vertex(j) in T.tight for j in J.vertices)]
    return EHom(H, tight)


def evaluation(P: EHom, T: ESSet, j) -> EMap:
    """ev_j: T^J -> T at a vertex j of J."""
    H = P.hom
    J = H.src
    out = {}
    for c in H.all_cells():
        d = H.dim_of[c]
        g = H.payload[c]
        out[c] = g(g.source.pair(top_simplex(d), Simplex(j, (0,) * (d + 1))))
    return EMap(P, T, SMap(H, T.loose, out))


# -- the pullback presentation ---------------------------------------------------

class RiggedInserter(ESSet):
    """S x_{T^bd} T^{Delta^n} up to dimension k; cells carry pairs (s, sigma).

    ``p: R -> S`` and ``phi: R -> T^{Delta^n}`` are the two pullback
    projections, where ``T^{Delta^n}`` is the sub simplicial set ``H_full`` of
    the internal hom on the maps that occur.
    """

    def __init__(self, loose: SSet, tight, d: RiggedDiagram, payload: Dict, table: List[Dict],
                 H_full: HomSSet, k: int):
        super().__init__(loose, tight)
        self.diagram = d
        self.payload = payload
        self.table = table
        self.H_full = H_full
        self.k = k
        p, phi = {}, {}
        for c, (s, sigma) in payload.items():
            p[c] = s
            phi[c] = H_full.table[loose.dim_of[c]][sigma]
        self.p = EMap(self, d.S, SMap(loose, d.S.loose, p))
        self.phi = SMap(loose, H_full, phi)

    def cell_of(self, s: Simplex, sigma: SMap) -> Simplex:
        return self.table[s.dim][(s, sigma)]

    def evaluation_at(self, j: int) -> SMap:
        """R -> T: phi followed by evaluation at the vertex j of Delta^n."""
        ev = evaluation(EHom(self.H_full, []), self.diagram.T, (j,)).underlying
        return self.phi.then(ev)

    def projections(self) -> List[EMap]:
        return [self.p, EMap(self, self.diagram.T, self.evaluation_at(self.diagram.rig_vertex))]


def boundary_values(d: RiggedDiagram, s: Simplex) -> Dict:
    """The cells of Delta^m x bd(Delta^n) inside Delta^m x Delta^n with their values Dbar(s . u, c)."""
    m, n = s.dim, d.n
    S = d.S.loose
    Pd = d.Dbar.source
    Q = product(std_simplex(m), std_simplex(n))
    top = tuple(range(n + 1))
    fixed = {}
    for z in Q.all_cells():
        a, b, al, be = z
        if b == top:
            continue
        su = S.apply(s, tuple(a[i] for i in al))
        fixed[z] = d.Dbar(Pd.pair(su, Simplex(b, be)))
    return fixed


def extensions(d: RiggedDiagram, s: Simplex, budget: Optional[int] = None) -> List[SMap]:
    """All sigma: Delta^m x Delta^n -> T restricting to Dbar(s . -, -) on the boundary."""
    Q = product(std_simplex(s.dim), std_simplex(d.n))
    return list(enumerate_maps(Q, d.T.loose, fixed=boundary_values(d, s), limit=budget))


def _hom_from_levels(levels: List[List[SMap]], S: SSet, T: SSet, k: int) -> HomSSet:
    sset, payload, table = levels_to_sset(levels, precompose_prism, lambda n, i, x: ("h", n, i))
    return HomSSet(S, T, k, {n: sset.cells[n] for n in sset.cells}, sset.faces, payload, table,
                   label=f"[{S.label},{T.label}]|D")


def relevant_hom(d: RiggedDiagram, k: int, budget: Optional[int] = None) -> Tuple[HomSSet, List[List[Tuple]]]:
    """The sub simplicial set of [Delta^n, T] on maps whose boundary comes from D, and the pullback levels."""
    S = d.S.loose
    hom_levels: List[List[SMap]] = []
    pairs: List[List[Tuple]] = []
    total = 0
    for m in range(k + 1):
        seen = {}
        lev = []
        for s in S.simplices(m):
            for sigma in extensions(d, s):
                lev.append((s, sigma))
                seen.setdefault(sigma, None)
                total += 1
                if budget is not None and total > budget:
                    raise BudgetExceeded("rigged inserter exceeds budget")
        pairs.append(lev)
        hom_levels.append(list(seen))
    return _hom_from_levels(hom_levels, std_simplex(d.n), d.T.loose, k), pairs


def rins_pullback(d: RiggedDiagram, k: int = DEFAULT_K, budget: Optional[int] = None) -> RiggedInserter:
    """Levelwise pullback: m-cells are pairs (s, sigma) with sigma extending Dbar(s . -, -)."""
    d.check()
    S, T = d.S, d.T
    H_full, pairs = relevant_hom(d, k, budget)

    def pre(pair, theta):
        s, sigma = pair
        return (S.loose.apply(s, theta), precompose_prism(sigma, theta))

    L, payload, table = levels_to_sset(pairs, pre, lambda n, i, x: ("rins", n, i), label="rins")
    rv = (d.rig_vertex,)
    tight = []
    for v in L.vertices:
        s, sigma = payload[v]
        if s.base in S.tight and sigma(sigma.source.pair(top_simplex(0), Simplex(rv, (0,)))).base in T.tight:
            tight.append(v)
    return RiggedInserter(L, tight, d, payload, table, H_full, k)


def rins_pullback_generic(d: RiggedDiagram, k: int = DEFAULT_K, budget: Optional[int] = None) -> ESSet:
    """The same pullback from full truncated homs and the generic pullback of simplicial sets."""
    d.check()
    S, T, n = d.S, d.T, d.n
    if S.loose.top_dim > k:
        raise InvalidDiagram(f"S has dimension {S.loose.top_dim} > k = {k}")
    bd, inc = boundary(n)
    H_full = truncated_hom(std_simplex(n), T.loose, k, budget=budget)
    H_bd = truncated_hom(bd, T.loose, k, budget=budget)
    res = hom_map(H_full, H_bd, pre=inc)
    P = pullback(curry(d.Dbar, H_bd), res, budget=budget)
    L, _ = subcomplex(P, [c for c in P.all_cells() if P.dim_of[c] <= k], label="rins")
    rv = (d.rig_vertex,)
    tight = [v for v in L.vertices
             if v[0] in S.tight and vertex_map_of_hom(H_full, v[1]).on_vertex(rv) in T.tight]
    return ESSet(L, tight)


# -- the weighted presentation ------------------------------------------------------

@dataclass
class AgreementReport:
    n: int
    k: int
    pullback_counts: Tuple
    weighted_counts: Tuple
    comparison_iso: bool
    tight_match: bool
    projections_match: bool
    found_iso: bool

    @property
    def ok(self) -> bool:
        return self.comparison_iso and self.tight_match and self.projections_match and self.found_iso


def rins_weighted(d: RiggedDiagram, k: int = DEFAULT_K, budget: Optional[int] = None,
                  H_full: Optional[HomSSet] = None) -> NatObject:
    """{Psi, F_D} over D^n.

    Candidates at y are drawn from ``H_full`` when given (any sub simplicial set
    of [Delta^n, T] containing the natural ones), else from the full truncated hom.
    """
    if not d.terminal:
        raise InvalidDiagram("the weight Psi rigs the terminal vertex; use rins_initial")
    d.check()
    E = dcat_rigged(d.n, k)
    W = weight_terminal_rigged(d.n, k, E)
    F = diagram_functor(E, d.S, d.T, d.Dbar)
    homs = {Y: H_full} if H_full is not None else None
    return nat_object(W, F, k, budget=budget, homs=homs)


def comparison_map(L: NatObject, R: RiggedInserter) -> SMap:
    """{Psi, F_D} -> R: a family goes to (sigma_x(pt), sigma_y)."""
    out = {}
    for c in L.loose.all_cells():
        dd = L.loose.dim_of[c]
        sx, sy = L.payload[c]
        s = sx(sx.source.pair(top_simplex(dd), Simplex((0,), (0,) * (dd + 1))))
        out[c] = R.cell_of(s, sy)
    return SMap(L.loose, R.loose, out)


def rins_agreement(d: RiggedDiagram, k: int = DEFAULT_K, search_iso: bool = False, full_hom: bool = False,
                   budget: Optional[int] = None) -> AgreementReport:
    """Compare the two presentations: canonical comparison, tight sets and projections.

    With ``full_hom`` the weighted side searches the whole truncated hom
    [Delta^n, T] instead of the maps with boundary in the image of D.
    """
    R = rins_pullback(d, k, budget=budget)
    L = rins_weighted(d, k, budget=budget, H_full=None if full_hom else R.H_full)
    try:
        cmp = comparison_map(L, R)
        cmp.check()
        iso = is_isomorphism(cmp)
    except (KeyError, ValueError):
        cmp, iso = None, False
    tight_ok = proj_ok = False
    if iso:
        tight_ok = {cmp.on_vertex(v) for v in L.tight} == set(R.tight)
        proj_ok = (cmp.then(R.p.underlying) == L.projection(X, (0,)).underlying
                   and cmp.then(R.evaluation_at(d.n)) == L.projection(Y, (d.n,)).underlying)
    found = find_eisomorphism(L, R) is not None if search_iso else iso
    return AgreementReport(d.n, k, R.counts(), L.counts(), iso, tight_ok, proj_ok, found)


def rins_reflects_tightness(R: RiggedInserter, probes: List[ESSet], max_probes: Optional[int] = None) -> Tuple[bool, int]:
    """q into R is tight iff p . q is tight (given the cone)."""
    total = 0
    for Xp in probes:
        for q in enumerate_maps(Xp.loose, R.loose, limit=max_probes):
            total += 1
            t = is_tight_map(q, Xp, R)
            tp = is_tight_map(q.then(R.p.underlying), Xp, R.diagram.S)
            if t != tp:
                return False, total
    return True, total


def rins_duality(d: RiggedDiagram, k: int = DEFAULT_K, H_full: Optional[HomSSet] = None) -> DualityReport:
    """{Psi, F_D} against the limit of the co-dual weight and diagram in F_Delta^co."""
    E = dcat_rigged(d.n, k)
    W = weight_terminal_rigged(d.n, k, E)
    F = diagram_functor(E, d.S, d.T, d.Dbar)
    if H_full is None:
        return duality_limit_check(W, F, k)
    Kco = ecat_co(E)
    Wco, Fco = co_functor(W, Kco), co_functor(F, Kco)
    Hco = reversed_hom(H_full, Wco.values[Y].loose, Fco.values[Y].loose)
    return duality_limit_check(W, F, k, homs={Y: H_full}, homs_co={Y: Hco})


# -- the initial variant -------------------------------------------------------------

def _reverse_boundary_cell(c: tuple, n: int) -> tuple:
    return tuple(sorted(n - v for v in c))


def co_dual(d: RiggedDiagram) -> RiggedDiagram:
    """The diagram in F_Delta^co: S^op x bd -> T^op, rigged at the opposite end."""
    n = d.n
    Sop, Top = eopposite(d.S), eopposite(d.T)
    S, T = d.S.loose, d.T.loose
    bd, _ = boundary(n)
    Pd = d.Dbar.source
    P = product(Sop.loose, bd)
    out = {}
    for z in P.all_cells():
        s_op, c_op = P.split(P.ident(z))
        s = reverse(s_op, S.dim_of[s_op.base])
        seq = [n - c_op.base[t] for t in c_op.surj][::-1]
        c = bd.realize(_reverse_boundary_cell(c_op.base, n), _positions(seq))
        y = d.Dbar(Pd.pair(s, c))
        out[z] = reverse(y, T.dim_of[y.base])
    return RiggedDiagram(Sop, Top, n, SMap(P, Top.loose, out), not d.terminal)


def _positions(seq: List[int]) -> Tuple[int, ...]:
    verts = sorted(set(seq))
    pos = {v: i for i, v in enumerate(verts)}
    return tuple(pos[v] for v in seq)


def rins_initial(d: RiggedDiagram, k: int = DEFAULT_K) -> RiggedInserter:
    """Initially rigged inserter, computed directly as a pullback."""
    if d.terminal:
        raise InvalidDiagram("rins_initial needs a diagram rigged at [0]")
    return rins_pullback(d, k)


def rins(d: RiggedDiagram, k: int = DEFAULT_K) -> RiggedInserter:
    return rins_pullback(d, k)


@dataclass
class InitialReport:
    direct_counts: Tuple
    via_co_counts: Tuple
    isomorphic: bool
    double_dual_identity: bool


def rins_initial_check(d: RiggedDiagram, k: int = DEFAULT_K) -> InitialReport:
    """Direct pullback vs the opposite of the terminal inserter of the co-dual diagram."""
    R = rins_initial(d, k)
    dc = co_dual(d)
    Rc = rins_pullback(dc, k)
    iso = find_eisomorphism(R, eopposite(Rc)) is not None
    dd = co_dual(dc)
    same = (dd.Dbar.assign == d.Dbar.assign and dd.S.tight == d.S.tight and dd.T.tight == d.T.tight
            and dd.terminal == d.terminal)
    return InitialReport(R.counts(), Rc.counts(), iso, same)


# -- specializations ---------------------------------------------------------------

@dataclass
class Specialization:
    kind: str
    R: RiggedInserter
    projections: Dict[str, SMap] = field(default_factory=dict)


def product_diagram(S: ESSet, T: ESSet) -> RiggedDiagram:
    bd, _ = boundary(0)
    P = product(S.loose, bd)
    return RiggedDiagram(S, T, 0, SMap(P, T.loose, {}), True)


def inserter_diagram(S: ESSet, T: ESSet, f: SMap, g: SMap) -> RiggedDiagram:
    """D = (f, g) over bd(Delta^1); g must be tight."""
    return diagram_from_cells(S, T, 1, {(0,): constant_prism(f, 0), (1,): constant_prism(g, 0)})


def equifier_diagram(S: ESSet, T: ESSet, f: SMap, g: SMap, alpha: SMap, beta: SMap) -> RiggedDiagram:
    """Edges 01 = alpha, 02 = beta, 12 = the degenerate edge at g."""
    cells = {
        (0,): constant_prism(f, 0), (1,): constant_prism(g, 0), (2,): constant_prism(g, 0),
        (0, 1): alpha, (0, 2): beta, (1, 2): constant_prism(g, 1),
    }
    return diagram_from_cells(S, T, 2, cells)


def specialize(kind: str, k: int = DEFAULT_K, **data) -> Specialization:
    if kind == "product":
        d = product_diagram(data["S"], data["T"])
        return Specialization(kind, rins_pullback(d, k))
    if kind == "inserter":
        d = inserter_diagram(data["S"], data["T"], data["f"], data["g"])
        return Specialization(kind, rins_pullback(d, k))
    if kind == "comma":
        from .fdelta import eproduct
        A, B, C, f, g = data["A"], data["B"], data["C"], data["f"], data["g"]
        S = eproduct(A, B)
        p1, p2 = S.loose.projections
        d = inserter_diagram(S, C, p1.then(f), p2.then(g))
        R = rins_pullback(d, k)
        return Specialization(kind, R, {"p1": R.p.underlying.then(p1), "p2": R.p.underlying.then(p2), "phi": R.phi})
    if kind == "equifier":
        d = equifier_diagram(data["S"], data["T"], data["f"], data["g"], data["alpha"], data["beta"])
        return Specialization(kind, rins_pullback(d, k))
    raise ValueError(f"unknown specialization {kind!r}")


# -- the chain L -> A, E1 -> L, E2 -> E1 for a strict monad ----------------------------

def inserter_cat(S, C, f, g):
    """Objects (s, phi: f s -> g s); morphisms h: s -> s' with phi' . f h = g h . phi."""
    from .catkit.category import CFunctor, FinCat
    objs = [("ins", s, phi) for s in S.objects for phi in C.hom(f.obj[s], g.obj[s])]
    mor = {}
    for x in objs:
        for y in objs:
            for h in S.hom(x[1], y[1]):
                if C.comp(y[2], f.morph[h]) == C.comp(g.morph[h], x[2]):
                    mor[("ins", h, x, y)] = (x, y)
    ident = {x: ("ins", S.ident(x[1]), x, x) for x in objs}
    by_dom: Dict = {}
    for m, (x, y) in mor.items():
        by_dom.setdefault(x, []).append(m)
    table = {}
    for m, (x, y) in mor.items():
        for m2 in by_dom.get(y, ()):
            table[(m2, m)] = ("ins", S.comp(m2[1], m[1]), x, mor[m2][1])
    L = FinCat(objs, mor, ident, table, label=f"Ins({f.label or 'f'},{g.label or 'g'})")
    p = CFunctor(L, S, {x: x[1] for x in objs}, {m: m[1] for m in mor})
    phi = {x: x[2] for x in objs}
    return L, p, phi


def equifier_cat(L, C, alpha: Dict, beta: Dict):
    """The full subcategory of L on the objects where the two 2-cells agree."""
    from .catkit.category import CFunctor, full_subcategory
    keep = [x for x in L.objects if alpha[x] == beta[x]]
    E = full_subcategory(L, keep)
    E.label = f"Eq({L.label})"
    inc = CFunctor(E, L, {x: x for x in E.objects}, {m: m for m in E.morphisms})
    return E, inc


def nat_prism(F, G, alpha: Dict, NS, NT) -> SMap:
    """N S x Delta^1 -> N T for a natural transformation alpha: F => G."""
    C = NT.cat
    P = product(NS, std_simplex(1))
    out = {}
    for z in P.all_cells():
        a, b, al, be = z
        start, ms = NS.chain_of(Simplex(a, al))
        side = [b[t] for t in be]
        objs = [start] + [NS.cat.cod(m) for m in ms]
        first = F.obj[start] if side[0] == 0 else G.obj[start]
        chain = []
        for t, m in enumerate(ms, start=1):
            if side[t - 1] == side[t]:
                chain.append((F if side[t] == 0 else G).morph[m])
            else:
                chain.append(C.comp(G.morph[m], alpha[objs[t - 1]]))
        out[z] = NT.simplex_of_chain(first, chain)
    return SMap(P, NT, out)


@dataclass
class StageReport:
    name: str
    n: int
    objects: int
    morphisms: int
    projection_tight: bool
    projection_isofibration: bool
    projection_iso: bool
    rins_counts: Tuple = ()
    nerve_counts: Tuple = ()
    rins_matches: Optional[bool] = None


@dataclass
class EMChainReport:
    k: int
    stages: List[StageReport]
    algebras: int
    final_bijective: bool

    @property
    def ok(self) -> bool:
        return self.final_bijective and all(
            s.projection_tight and s.projection_isofibration and s.rins_matches is not False for s in self.stages)


def em_chain_demo(M, k: int = DEFAULT_K, nerve_check: bool = True) -> EMChainReport:
    """L = inserter(T, id), E1 = equifier(phi . eta p, id), E2 = equifier(phi . T phi, phi . mu p).

    Each stage is computed in Cat and, when ``nerve_check`` is set, also as a
    rigged 1- or 2-inserter of nerves; the two must be isomorphic up to k.
    The last stage must be isomorphic to the category of algebras.
    """
    from .catkit.adjunction import is_isofibration
    from .catkit.category import identity_functor
    from .catkit.nerve import Nerve, nerve_map
    from .enriched.monads import em_algebras
    M.check()
    C, T = M.C, M.T
    eta, mu = M.eta.comp, M.mu.comp
    I = identity_functor(C)
    marked = set(M.marked)

    def tight_of(cat, base_obj):
        return [x for x in cat.objects if base_obj(x) in marked]

    def proj_report(name, n, cat, proj, target_base):
        tight = all(target_base(proj.obj[x]) in marked for x in tight_of(cat, lambda x: x[1]))
        iso = (len(set(proj.obj.values())) == len(cat.objects) == len(proj.target.objects)
               and len(set(proj.morph.values())) == len(cat.morphisms) == len(proj.target.morphisms))
        return StageReport(name, n, len(cat.objects), len(cat.morphisms), tight, is_isofibration(proj), iso)

    L, p, phi = inserter_cat(C, C, T, I)
    alpha1 = {x: C.comp(x[2], eta[x[1]]) for x in L.objects}
    beta1 = {x: C.ident(x[1]) for x in L.objects}
    E1, inc1 = equifier_cat(L, C, alpha1, beta1)
    alpha2 = {x: C.comp(x[2], T.morph[x[2]]) for x in E1.objects}
    beta2 = {x: C.comp(x[2], mu[x[1]]) for x in E1.objects}
    E2, inc2 = equifier_cat(E1, C, alpha2, beta2)
    stages = [proj_report("L", 1, L, p, lambda a: a), proj_report("E1", 2, E1, inc1, lambda x: x[1]),
              proj_report("E2", 2, E2, inc2, lambda x: x[1])]

    if nerve_check:
        def ess(cat, kk):
            N = Nerve(cat, kk)
            return ESSet(N, tight_of(cat, lambda x: x if cat is C else x[1]))

        NC = ess(C, k)
        # stage L: rigged 1-inserter of (N T, id) into N C
        NT1 = ess(C, k + 1)
        dL = inserter_diagram(NC, NT1, nerve_map(T, NC.loose, NT1.loose), nerve_map(I, NC.loose, NT1.loose))
        pL = p
        # stage E1 / E2: rigged 2-inserters (equifiers) of nerve prisms
        NT2 = ess(C, k + 2)
        NL = ess(L, k)
        pE = nerve_map(pL, NL.loose, NT2.loose)
        d1 = equifier_diagram(NL, NT2, pE, pE,
                              nat_prism(pL, pL, alpha1, NL.loose, NT2.loose),
                              nat_prism(pL, pL, beta1, NL.loose, NT2.loose))
        NE1 = ess(E1, k)
        pE1 = inc1.then(pL)
        TTp = pE1.then(T).then(T)
        d2 = equifier_diagram(NE1, NT2, nerve_map(TTp, NE1.loose, NT2.loose), nerve_map(pE1, NE1.loose, NT2.loose),
                              nat_prism(TTp, pE1, alpha2, NE1.loose, NT2.loose),
                              nat_prism(TTp, pE1, beta2, NE1.loose, NT2.loose))
        for st, d, cat in zip(stages, (dL, d1, d2), (L, E1, E2)):
            R = rins_pullback(d, k)
            Ncat = ess(cat, k)
            st.rins_counts = R.loose.counts()
            st.nerve_counts = Ncat.loose.counts()
            st.rins_matches = find_eisomorphism(R, Ncat) is not None

    em = em_algebras(M)
    to_alg = {x: ("alg", x[1], x[2]) for x in E2.objects}
    maps_ok = sorted(map(repr, to_alg.values())) == sorted(map(repr, em.cat.objects))
    homs_ok = all(len(E2.hom(x, y)) == len(em.cat.hom(to_alg[x], to_alg[y])) for x in E2.objects for y in E2.objects)
    return EMChainReport(k, stages, len(em.cat.objects), maps_ok and homs_ok)
