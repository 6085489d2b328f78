"""Universal elements, lalis of nerves and the lift solver for rigged inserters.

Everything here lives on nerves of finite categories, which are 2-coskeletal:
a boundary ``bd(Delta^n) -> N E`` for n >= 3 always has a unique filler, so
lifting problems of dimension 1 and 2 decide universality.  The exhaustive
searches below do not use that shortcut; it is evaluated separately and the
two answers are compared.

Prisms ``Delta^n x Delta^m`` are the products of :mod:`rigged.sset`; a cell is
``(a, b, al, be)`` with ``a`` a face of ``Delta^n`` and ``b`` a face of
``Delta^m``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .catkit.adjunction import CSquare, is_isofibration, is_lali, is_lali_morphism, jointly_reflect_lali_check
from .catkit.category import CFunctor, FinCat, find_functors
from .catkit.nerve import Nerve, functor_of_nerve_map, homotopy_cat, homotopy_functor, nerve_map
from .fdelta import ESSet
from .inserters import RiggedDiagram, RiggedInserter, constant_prism, diagram_from_cells, nat_prism, rins_pullback
from .sset import (SSet, Simplex, SMap, boundary, enumerate_maps, is_isomorphism, name, product, pushout_mono,
                   sort_ids, std_simplex)

DEFAULT_NMAX = 3


# -- lifting problems and universal elements -------------------------------------------

@dataclass
class LiftProblem:
    """g: bd(Delta^n) -> E over d: Delta^n -> B along p, with g([n]) = anchor."""

    p: SMap
    g: SMap
    d: SMap
    anchor: object

    @property
    def n(self) -> int:
        return self.d.source.top_dim

    def check(self) -> None:
        n = self.n
        if n < 1:
            raise ValueError("lifting problems start in dimension 1")
        bd = self.g.source
        for c in bd.all_cells():
            if self.p(self.g.assign[c]) != self.d.assign[c]:
                raise ValueError(f"square does not commute at {name(c)}")
        if self.g.on_vertex((n,)) != self.anchor:
            raise ValueError("g does not send the last vertex to the anchor")


def solve_lift(problem: LiftProblem) -> Optional[SMap]:
    """Least lift l: Delta^n -> E with l|bd = g and p l = d, or None."""
    n = problem.n
    D = std_simplex(n)
    top = tuple(range(n + 1))
    fixed = dict(problem.g.assign)
    want = problem.d.assign[top]
    for l in enumerate_maps(D, problem.p.source, fixed=fixed):
        if problem.p(l.assign[top]) == want:
            return l
    return None


def boundary_problems(p: SMap, x, n: int):
    """Every lifting problem of dimension n at the vertex x, in enumeration order."""
    E, B = p.source, p.target
    bd, _ = boundary(n)
    D = std_simplex(n)
    for g in enumerate_maps(bd, E, fixed={(n,): Simplex(x, (0,))}):
        fixed = {c: p(g.assign[c]) for c in bd.all_cells()}
        for d in enumerate_maps(D, B, fixed=fixed):
            yield LiftProblem(p, g, d, x)


def _truncation(S: SSet) -> int:
    """Nerves know their truncation; other simplicial sets are taken as given."""
    return getattr(S, "k", 10 ** 6)


def lifting_witness(p: SMap, x, n_max: int = DEFAULT_NMAX) -> Optional[LiftProblem]:
    """The first lifting problem at x without a lift, searching n = 1 .. n_max."""
    top = min(n_max, _truncation(p.source), _truncation(p.target))
    for n in range(1, top + 1):
        for prob in boundary_problems(p, x, n):
            if solve_lift(prob) is None:
                return prob
    return None


def categorical_universal(P: CFunctor, x) -> bool:
    """Every E(e, x) -> B(Pe, Px) is a bijection."""
    E, B = P.source, P.target
    for e in E.objects:
        img = [P.morph[f] for f in E.hom(e, x)]
        if len(set(img)) != len(img) or set(img) != set(B.hom(P.obj[e], P.obj[x])):
            return False
    return True


class UniversalityMismatch(AssertionError):
    pass


def _as_nerve_map(p: Union[SMap, CFunctor], k: int) -> Tuple[SMap, Optional[CFunctor]]:
    if isinstance(p, CFunctor):
        N1, N2 = Nerve(p.source, k), Nerve(p.target, k)
        return nerve_map(p, N1, N2), p
    if isinstance(p.source, Nerve) and isinstance(p.target, Nerve):
        return p, functor_of_nerve_map(p, p.source, p.target)
    return p, None


def is_universal_element(p: Union[SMap, CFunctor], x, n_max: int = DEFAULT_NMAX) -> bool:
    """Lifting search up to n_max; on nerves the 1-categorical criterion must agree."""
    pm, P = _as_nerve_map(p, n_max)
    lifted = lifting_witness(pm, x, n_max) is None
    if P is not None and min(n_max, _truncation(pm.source)) >= 2:
        cat = categorical_universal(P, x)
        if cat != lifted:
            raise UniversalityMismatch(f"lift search says {lifted}, hom criterion says {cat} at {name(x)}")
    return lifted


def universal_elements(p: Union[SMap, CFunctor], n_max: int = DEFAULT_NMAX) -> List:
    pm, _ = _as_nerve_map(p, n_max)
    return [x for x in pm.source.vertices if is_universal_element(p if isinstance(p, CFunctor) else pm, x, n_max)]


# -- lalis via universal elements -----------------------------------------------

@dataclass
class LaliReport:
    lali: bool
    oracle: bool
    universal: Dict = field(default_factory=dict)
    witness: object = None

    @property
    def agree(self) -> bool:
        return self.lali == self.oracle


def _functor_of(p: Union[SMap, CFunctor]) -> CFunctor:
    if isinstance(p, CFunctor):
        return p
    return functor_of_nerve_map(p, p.source, p.target)


def lali_via_universal(p: Union[SMap, CFunctor], n_max: int = DEFAULT_NMAX, strict: bool = True) -> LaliReport:
    """p is a lali iff every vertex of the base has a universal element over it."""
    P = _functor_of(p)
    U = universal_elements(P, n_max)
    over = {y: [x for x in U if P.obj[x] == y] for y in P.target.objects}
    missing = [y for y in P.target.objects if not over[y]]
    rep = LaliReport(not missing, is_lali(P) is not None, over, missing[0] if missing else None)
    if strict and not rep.agree:
        raise UniversalityMismatch(f"universal elements say {rep.lali}, adjoint search says {rep.oracle} for {P!r}")
    return rep


@dataclass
class LaliMorphismReport:
    morphism: bool
    oracle: bool
    witness: object = None
    oracle_witness: object = None

    @property
    def agree(self) -> bool:
        return self.morphism == self.oracle and self.witness == self.oracle_witness


def lali_morphism_via_universal(sq: CSquare, n_max: int = DEFAULT_NMAX, strict: bool = True) -> LaliMorphismReport:
    """The square is a morphism of lalis iff its top sends universal elements to universal elements.

    The witness is the first base object (in object order) over which a
    universal element is sent to a non-universal one; the mate has a
    non-invertible component exactly there.
    """
    p1, p2, e = sq.left, sq.right, sq.top
    U1 = set(universal_elements(p1, n_max))
    U2 = set(universal_elements(p2, n_max))
    bad = [y for y in p1.target.objects if any(p1.obj[x] == y and e.obj[x] not in U2 for x in U1)]
    ok, wit = is_lali_morphism(sq)
    rep = LaliMorphismReport(not bad, ok, bad[0] if bad else None, wit)
    if strict and not rep.agree:
        raise UniversalityMismatch(f"universal criterion {rep.morphism}/{rep.witness} vs mate {ok}/{wit}")
    return rep


def universal_iso_closure(P: CFunctor, n_max: int = DEFAULT_NMAX) -> bool:
    """Universal elements are closed under isomorphism and unique up to iso in each fiber."""
    E = P.source
    U = set(universal_elements(P, n_max))
    for x in U:
        for f in E.isos_from(x):
            if E.cod(f) not in U:
                return False
    for x, y in itertools.combinations(sorted(U, key=name), 2):
        if P.obj[x] == P.obj[y] and not any(E.cod(f) == y for f in E.isos_from(x)):
            return False
    return True


# -- prism cells ---------------------------------------------------------------

def _in_boundary(cell, n: int, m: int) -> bool:
    a, b = cell[0], cell[1]
    return len(a) < n + 1 or len(b) < m + 1


def prism_complement_cells(n: int, m: int) -> List:
    """Nondegenerate cells of Delta^n x Delta^m outside bd(Delta^n x Delta^m), by dimension.

    Each one is checked to contain the vertex (n, m); failure is an error.
    """
    Q = product(std_simplex(n), std_simplex(m))
    out = []
    for d in range(Q.top_dim + 1):
        for c in Q.cells[d]:
            if _in_boundary(c, n, m):
                continue
            if (n, m) not in _points(c):
                raise AssertionError(f"cell {name(c)} misses the vertex ({n},{m})")
            out.append(c)
    return out


def _points(cell) -> List[Tuple[int, int]]:
    a, b, al, be = cell
    return [(a[i], b[j]) for i, j in zip(al, be)]


def terminal_vertex(cell) -> Tuple[int, int]:
    return _points(cell)[-1]


def prism_boundary(n: int, m: int) -> Tuple[SSet, SMap]:
    """bd(Delta^n x Delta^m) as a subcomplex of the prism."""
    from .sset import subcomplex
    Q = product(std_simplex(n), std_simplex(m))
    return subcomplex(Q, [c for c in Q.all_cells() if _in_boundary(c, n, m)], label=f"bd(D{n}xD{m})")


@dataclass
class AttachmentReport:
    n: int
    m: int
    cells: int
    layers: List[Tuple[int, int]]
    terminal_ok: bool
    rebuilds: bool

    @property
    def ok(self) -> bool:
        return self.terminal_ok and self.rebuilds


def attachment_chain(n: int, m: int) -> AttachmentReport:
    """Glue the complement cells onto bd(Delta^n x Delta^m) one dimension at a time.

    Layer j is the pushout of the coproduct of bd(Delta^j) -> Delta^j along the
    attaching map into the previous stage; the final stage must be isomorphic
    to the prism via the evident comparison map.
    """
    Q = product(std_simplex(n), std_simplex(m))
    cells = prism_complement_cells(n, m)
    terminal_ok = all(terminal_vertex(c) == (n, m) for c in cells)
    X, inc = prism_boundary(n, m)
    where = {c: c for c in X.all_cells()}          # prism cell -> cell of the current stage
    comp = dict(inc.assign)                        # stage cell -> prism simplex
    layers = []
    by_dim: Dict[int, List] = {}
    for c in cells:
        by_dim.setdefault(len(c[2]) - 1, []).append(c)
    for j in sorted(by_dim):
        layer = by_dim[j]
        layers.append((j, len(layer)))
        Z, Y, attach = _coproduct_boundaries(j, layer, Q, where, X)
        P = pushout_mono(attach, _coproduct_inclusion(Z, Y))
        new_where = {c: P.inl.assign[w].base for c, w in where.items()}
        new_comp = {P.inl.assign[w].base: v for w, v in comp.items()}
        for idx, c in enumerate(layer):
            tgt = P.inr.assign[(idx, tuple(range(j + 1)))]
            new_where[c] = tgt.base
            new_comp[tgt.base] = Q.ident(c)
        X, where, comp = P, new_where, new_comp
    rebuilds = is_isomorphism(SMap(X, Q, comp, check=True)) if X.size() == Q.size() else False
    return AttachmentReport(n, m, len(cells), layers, terminal_ok, rebuilds)


def _coproduct_boundaries(j: int, layer: Sequence, Q, where: Dict, X: SSet):
    """Z = sum of bd(Delta^j), Y = sum of Delta^j, and the attaching map Z -> X."""
    D = std_simplex(j)
    bd, _ = boundary(j)
    zc, zf, yc, yf = {}, {}, {}, {}
    attach = {}
    for idx, c in enumerate(layer):
        for cell in D.all_cells():
            dd = len(cell) - 1
            yc.setdefault(dd, []).append((idx, cell))
            if dd:
                yf[(idx, cell)] = [(idx, f.base) for f in D.faces[cell]]
        for cell in bd.all_cells():
            dd = len(cell) - 1
            zc.setdefault(dd, []).append((idx, cell))
            if dd:
                zf[(idx, cell)] = [(idx, f.base) for f in bd.faces[cell]]
            sub = Q.apply(Q.ident(c), cell)
            attach[(idx, cell)] = Simplex(where[sub.base], sub.surj)
    Z = SSet(zc, {c: [(f, tuple(range(len(c[1]) - 1))) for f in fs] for c, fs in zf.items()})
    Y = SSet(yc, {c: [(f, tuple(range(len(c[1]) - 1))) for f in fs] for c, fs in yf.items()})
    return Z, Y, SMap(Z, X, attach, check=True)


def _coproduct_inclusion(Z: SSet, Y: SSet) -> SMap:
    return SMap(Z, Y, {c: Y.ident(c) for c in Z.all_cells()}, check=True)


# -- rigged-inserter squares ----------------------------------------------------

def functor_diagram(S: Nerve, T: Nerve, m: int, functors: Sequence[CFunctor], nats: Optional[Dict] = None,
                    ) -> RiggedDiagram:
    """Dbar: N A x bd(Delta^m) -> N B from functors at the vertices and 2-cells on the edges (m <= 2)."""
    if m not in (1, 2):
        raise ValueError("functor diagrams are built for m = 1 and m = 2")
    nats = nats or {}
    SE, TE = ESSet(S, S.vertices), ESSet(T, T.vertices)
    cells = {(i,): constant_prism(nerve_map(F, S, T), 0) for i, F in enumerate(functors)}
    if m == 2:
        for i, j in ((0, 1), (0, 2), (1, 2)):
            cells[(i, j)] = nat_prism(functors[i], functors[j], nats[(i, j)], S, T)
    return diagram_from_cells(SE, TE, m, cells)


def rins_map(R1: RiggedInserter, R2: RiggedInserter, A_map: SMap, B_map: SMap) -> SMap:
    """(s, sigma) -> (A s, B sigma)."""
    out = {}
    for c in R1.loose.all_cells():
        s, sigma = R1.payload[c]
        try:
            out[c] = R2.cell_of(A_map(s), sigma.then(B_map))
        except KeyError:
            raise ValueError(f"(A, B) does not carry D_1 into D_2 at {name(c)}") from None
    return SMap(R1.loose, R2.loose, out)


@dataclass
class RinsSquare:
    """A lali A: A1 -> A2, a lali B: B1 -> B2 and D = (D1, D2) with B D1 = D2 (A x 1)."""

    A: CFunctor
    B: CFunctor
    m: int
    functors1: List[CFunctor]
    functors2: List[CFunctor]
    nats1: Dict = field(default_factory=dict)
    nats2: Dict = field(default_factory=dict)
    k: int = 2
    label: str = ""

    def __post_init__(self):
        k = self.k
        A, B = self.A, self.B
        self.NA1, self.NA2 = Nerve(A.source, k), Nerve(A.target, k)
        # prisms Delta^k x Delta^m land in dimension k + m
        self.NB1, self.NB2 = Nerve(B.source, k + self.m), Nerve(B.target, k + self.m)
        self.A_map = nerve_map(A, self.NA1, self.NA2)
        self.B_map = nerve_map(B, self.NB1, self.NB2)
        self.d1 = functor_diagram(self.NA1, self.NB1, self.m, self.functors1, self.nats1)
        self.d2 = functor_diagram(self.NA2, self.NB2, self.m, self.functors2, self.nats2)
        self._check_square()
        self.R1 = rins_pullback(self.d1, k)
        self.R2 = rins_pullback(self.d2, k)
        self.rmap = rins_map(self.R1, self.R2, self.A_map, self.B_map)

    def _check_square(self):
        P1, P2 = self.d1.Dbar.source, self.d2.Dbar.source
        for z in P1.all_cells():
            x, y = P1.split(P1.ident(z))
            lhs = self.B_map(self.d1.Dbar.assign[z])
            rhs = self.d2.Dbar(P2.pair(self.A_map(x), y))
            if lhs != rhs:
                raise ValueError(f"B D1 != D2 (A x 1) at {name(z)}")

    @property
    def p1(self) -> SMap:
        return self.R1.p.underlying

    @property
    def p2(self) -> SMap:
        return self.R2.p.underlying


@dataclass
class RinsLift:
    lift: Optional[SMap]
    witness: object = None
    h: Dict = field(default_factory=dict)


def _transpose_value(R: RiggedInserter, y: Simplex, v: Simplex) -> Simplex:
    """The transpose of phi at (x, v) where y is the image of x in R and v is a simplex of Delta^m."""
    s, sigma = R.payload[y.base]
    e = s.dim
    return sigma(sigma.source.pair(Simplex(tuple(range(e + 1)), y.surj), v))


def solve_rins_lift(sq: RinsSquare, g: SMap, d: SMap, a1: SMap) -> RinsLift:
    """A lift l: Delta^n -> R1 with l|bd = g, rins(D) l = d and p1 l = a1.

    h is first defined on bd(Delta^n x Delta^m) from D1 a1 and phi1 g, then
    extended over the complement cells in dimension order; every such cell
    has terminal vertex (n, m), sent to a1([n]) pushed along the m-th leg, so
    its filler is a lifting problem at that vertex.  The cells found are the
    least fillers in identifier order.
    """
    n, m = d.source.top_dim, sq.m
    R1, R2 = sq.R1, sq.R2
    B1 = sq.NB1
    Q = product(std_simplex(n), std_simplex(m))
    P1 = sq.d1.Dbar.source
    h: Dict = {}
    target: Dict = {}
    for z in Q.all_cells():
        a, b, al, be = z
        x = Simplex(a, al)
        v = Simplex(b, be)
        target[z] = _transpose_value(R2, d(x), v)
        vals = []
        if len(b) < m + 1:
            vals.append(sq.d1.Dbar(P1.pair(a1(x), v)))
        if len(a) < n + 1:
            vals.append(_transpose_value(R1, g(x), v))
        if len(vals) == 2 and vals[0] != vals[1]:
            raise ValueError(f"the two transposes disagree at {name(z)}")
        if vals:
            h[z] = vals[0]
            if sq.B_map(vals[0]) != target[z]:
                raise ValueError(f"boundary square does not commute at {name(z)}")
    for z in prism_complement_cells(n, m):
        j = len(z[2]) - 1
        faces = [Q.faces[z][i] for i in range(j + 1)] if j else []
        want = [B1.realize(h[f.base].base, tuple(h[f.base].surj[t] for t in f.surj)) for f in faces]
        vt = tuple(w.base for w in _vertices_of(B1, want, j)) if j else None
        cands = B1.by_vertices(j).get(vt, ()) if j else [Simplex(v, (0,)) for v in B1.vertices]
        fill = None
        for y in sort_ids(cands):
            if all(B1.face(y, i) == want[i] for i in range(j + 1)) and sq.B_map(y) == target[z]:
                fill = y
                break
        if fill is None:
            return RinsLift(None, z, h)
        h[z] = fill
    fbar = SMap(Q, B1, h)
    out = {}
    A1 = sq.NA1
    for c in std_simplex(n).all_cells():
        e = len(c) - 1
        s_u = a1(Simplex(c, tuple(range(e + 1))))
        Qe = product(std_simplex(e), std_simplex(m))
        sig = {}
        for w in Qe.all_cells():
            a2, b2, al2, be2 = w
            sig[w] = fbar(Q.pair(Simplex(tuple(c[i] for i in a2), al2), Simplex(b2, be2)))
        sigma = SMap(Qe, B1, sig)
        out[c] = R1.cell_of(s_u, sigma)
    l = SMap(std_simplex(n), R1.loose, out)
    bd_n, _ = boundary(n)
    for c in bd_n.all_cells():
        if l.assign[c] != g.assign[c]:
            raise AssertionError(f"lift does not restrict to g at {name(c)}")
    if l.then(sq.rmap).key != d.key:
        raise AssertionError("lift does not cover d")
    return RinsLift(l, None, h)


def _vertices_of(T: SSet, faces: List[Simplex], j: int) -> List[Simplex]:
    """Vertex list of a would-be j-simplex from its faces (j >= 1)."""
    if j == 1:
        return [faces[1], faces[0]]
    vs = [Simplex(v, (0,)) for v in T.vertex_tuple(faces[j])]
    vs.append(Simplex(T.vertex_tuple(faces[0])[-1], (0,)))
    return vs


# -- rins is a lali --------------------------------------------------------------

def _point_map(X: SSet, v) -> SMap:
    return SMap(std_simplex(0), X, {(0,): Simplex(v, (0,))})


def certify_universal(sq: RinsSquare, y, n_cert: int) -> Tuple[Optional[object], int, Optional[object]]:
    """(universal vertex l over y, number of lifting problems solved, failure) following the proof.

    l itself is the n = 0 lift at the least A-universal element over p2(y).
    Each lifting problem at l is first pushed to A1, lifted there by
    universality of that element, and then solved by :func:`solve_rins_lift`.
    """
    a = sq.p2.on_vertex(y)
    UA = [x for x in universal_elements(sq.A, max(2, n_cert)) if sq.A.obj[x] == a]
    if not UA:
        return None, 0, ("no A-universal element over", a)
    u = sort_ids(UA)[0]
    empty = SMap(boundary(0)[0], sq.R1.loose, {})
    res = solve_rins_lift(sq, empty, _point_map(sq.R2.loose, y), _point_map(sq.NA1, u))
    if res.lift is None:
        return None, 0, res.witness
    l = res.lift.on_vertex((0,))
    solved = 0
    for n in range(1, n_cert + 1):
        for prob in boundary_problems(sq.rmap, l, n):
            base = LiftProblem(sq.A_map, prob.g.then(sq.p1), prob.d.then(sq.p2), u)
            kappa = solve_lift(base)
            if kappa is None:
                return None, solved, ("A-lift missing", n)
            r = solve_rins_lift(sq, prob.g, prob.d, kappa)
            if r.lift is None:
                return None, solved, r.witness
            solved += 1
    return l, solved, None


@dataclass
class RinsLaliReport:
    k: int
    m: int
    counts: Tuple
    certified: Dict = field(default_factory=dict)
    problems_solved: int = 0
    failure: object = None
    universal: List = field(default_factory=list)
    lali_universal: bool = False
    lali_oracle: bool = False
    isofibration: bool = False
    projection_universal: bool = False
    projection_oracle: bool = False
    reflection_probes: int = 0
    reflection_ok: bool = True

    @property
    def certified_lali(self) -> bool:
        return self.failure is None and all(v is not None for v in self.certified.values())

    @property
    def ok(self) -> bool:
        return (self.certified_lali and self.lali_universal and self.lali_oracle and self.isofibration
                and self.projection_universal and self.projection_oracle and self.reflection_ok
                and set(self.certified.values()) <= set(self.universal))


def default_probes() -> List[CFunctor]:
    """Lalis used as sources of probe squares."""
    from .catkit.category import identity_functor, linear_order, to_terminal
    return [identity_functor(linear_order(0)), to_terminal(linear_order(1)), identity_functor(linear_order(1))]


def rins_lali_instance_check(sq: RinsSquare, n_cert: Optional[int] = None, probes: Optional[List[CFunctor]] = None,
                             max_probes: int = 40) -> RinsLaliReport:
    """rins(D) is a lali, and p = (p1, p2) is a morphism of lalis reflecting them.

    The universal vertices are certified through the proof's lift solver; the
    same statements are then checked against exhaustive lift search on the
    pullbacks and against adjoint search on their homotopy categories.
    """
    from .catkit.pullback_la import probe_squares
    n_cert = sq.k if n_cert is None else min(n_cert, sq.k)
    rep = RinsLaliReport(sq.k, sq.m, (sq.R1.counts(), sq.R2.counts()))
    for y in sq.R2.loose.vertices:
        l, solved, fail = certify_universal(sq, y, n_cert)
        rep.certified[y] = l
        rep.problems_solved += solved
        if fail is not None and rep.failure is None:
            rep.failure = (y, fail)
    rm = sq.rmap
    rep.universal = [x for x in sq.R1.loose.vertices if lifting_witness(rm, x, n_cert) is None]
    rep.lali_universal = all(any(rm.on_vertex(x) == y for x in rep.universal) for y in sq.R2.loose.vertices)
    UA = set(universal_elements(sq.A, max(2, n_cert)))
    rep.projection_universal = all(sq.p1.on_vertex(x) in UA for x in rep.universal)

    hR1, hR2 = homotopy_cat(sq.R1.loose), homotopy_cat(sq.R2.loose)
    hA1, hA2 = homotopy_cat(sq.NA1), homotopy_cat(sq.NA2)
    hr = homotopy_functor(rm, hR1, hR2)
    hA = homotopy_functor(sq.A_map, hA1, hA2)
    rep.isofibration = is_isofibration(hr)
    if not rep.isofibration:
        return rep
    rep.lali_oracle = is_lali(hr) is not None
    if not rep.lali_oracle:
        return rep
    psq = CSquare(homotopy_functor(sq.p1, hR1, hA1), homotopy_functor(sq.p2, hR2, hA2), hr, hA)
    rep.projection_oracle = is_lali_morphism(psq)[0]
    for X in (default_probes() if probes is None else probes):
        UX = set(universal_elements(X, 2))
        for q in probe_squares(X, hr, limit=max_probes):
            rep.reflection_probes += 1
            catkit = jointly_reflect_lali_check([psq], q)
            q_univ = all(q.top.obj[x] in rep.universal for x in UX)
            pq_univ = all(sq.p1.on_vertex(q.top.obj[x]) in UA for x in UX)
            if not catkit.agree or q_univ != pq_univ or q_univ != catkit.q_lali_morphism:
                rep.reflection_ok = False
    return rep
