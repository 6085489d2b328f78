"""Adjunctions, lalis, mates and the comma-category characterizations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..sset import name, sort_ids
from .category import (
    CFunctor,
    CNat,
    CommaCat,
    FinCat,
    PullbackCat,
    comma,
    fcompose,
    identity_functor,
    identity_nat,
    product_cat,
    projections,
    pullback_cat,
)


class NotIsofibration(ValueError):
    """Raised by is_lali / is_rali on functors that are not isofibrations."""


class Adjunction:
    """left: A -> B, right: B -> A, unit: 1 => right.left, counit: left.right => 1."""

    def __init__(self, left: CFunctor, right: CFunctor, unit: Dict, counit: Dict, check: bool = True):
        self.left = left
        self.right = right
        self.unit = unit
        self.counit = counit
        if check:
            self.check()

    def check(self) -> None:
        F, U = self.left, self.right
        A, B = F.source, F.target
        for a in A.objects:
            if A.mor[self.unit[a]] != (a, U.obj[F.obj[a]]):
                raise ValueError(f"unit at {name(a)} has the wrong type")
        for b in B.objects:
            if B.mor[self.counit[b]] != (F.obj[U.obj[b]], b):
                raise ValueError(f"counit at {name(b)} has the wrong type")
        for f in A.morphisms:
            a, a2 = A.mor[f]
            if A.comp(self.unit[a2], f) != A.comp(U.morph[F.morph[f]], self.unit[a]):
                raise ValueError("unit is not natural")
        for g in B.morphisms:
            b, b2 = B.mor[g]
            if B.comp(g, self.counit[b]) != B.comp(self.counit[b2], F.morph[U.morph[g]]):
                raise ValueError("counit is not natural")
        for a in A.objects:
            if B.comp(self.counit[F.obj[a]], F.morph[self.unit[a]]) != B.ident(F.obj[a]):
                raise ValueError(f"triangle identity fails at {name(a)}")
        for b in B.objects:
            if A.comp(U.morph[self.counit[b]], self.unit[U.obj[b]]) != A.ident(U.obj[b]):
                raise ValueError(f"triangle identity fails at {name(b)}")

    def triangles_hold(self) -> bool:
        try:
            self.check()
        except (ValueError, KeyError):
            return False
        return True

    @property
    def counit_is_identity(self) -> bool:
        B = self.left.target
        return all(B.is_identity(m) for m in self.counit.values())

    @property
    def unit_is_identity(self) -> bool:
        A = self.left.source
        return all(A.is_identity(m) for m in self.unit.values())

    def unit_nat(self) -> CNat:
        return CNat(identity_functor(self.left.source), self.left.then(self.right), dict(self.unit))

    def counit_nat(self) -> CNat:
        return CNat(self.right.then(self.left), identity_functor(self.left.target), dict(self.counit))


# -- adjoint search ---------------------------------------------------------------

def _unique_factor(A: FinCat, B: FinCat, F: CFunctor, a, a0, e0, phi):
    """The unique g: a -> a0 with e0 . F g = phi, else None."""
    hits = [g for g in A.hom(a, a0) if B.comp(e0, F.morph[g]) == phi]
    return hits[0] if len(hits) == 1 else None


def terminal_in_comma(F: CFunctor, b) -> Optional[Tuple]:
    """Least terminal object (a0, e0: F a0 -> b) of F | b, if any."""
    A, B = F.source, F.target
    cands = []
    for a0 in A.objects:
        for e0 in B.hom(F.obj[a0], b):
            cands.append((a0, e0))
    cands.sort(key=name)
    for a0, e0 in cands:
        ok = True
        for a in A.objects:
            homs = A.hom(a, a0)
            target = B.hom(F.obj[a], b)
            if len(homs) != len(target):
                ok = False
                break
            imgs = {B.comp(e0, F.morph[g]) for g in homs}
            if len(imgs) != len(target):
                ok = False
                break
        if ok:
            return a0, e0
    return None


def initial_in_comma(U: CFunctor, a) -> Optional[Tuple]:
    """Least initial object (b0, h0: a -> U b0) of a | U, if any."""
    B, A = U.source, U.target
    cands = []
    for b0 in B.objects:
        for h0 in A.hom(a, U.obj[b0]):
            cands.append((b0, h0))
    cands.sort(key=name)
    for b0, h0 in cands:
        ok = True
        for b in B.objects:
            homs = B.hom(b0, b)
            target = A.hom(a, U.obj[b])
            if len(homs) != len(target):
                ok = False
                break
            imgs = {A.comp(U.morph[g], h0) for g in homs}
            if len(imgs) != len(target):
                ok = False
                break
        if ok:
            return b0, h0
    return None


def search_right_adjoint(F: CFunctor) -> Optional[Adjunction]:
    """Right adjoint from terminal objects of the comma categories F | b."""
    A, B = F.source, F.target
    U_obj, eps = {}, {}
    for b in B.objects:
        t = terminal_in_comma(F, b)
        if t is None:
            return None
        U_obj[b], eps[b] = t
    U_mor = {}
    for g in B.morphisms:
        b, b2 = B.mor[g]
        U_mor[g] = _unique_factor(A, B, F, U_obj[b], U_obj[b2], eps[b2], B.comp(g, eps[b]))
    U = CFunctor(B, A, U_obj, U_mor, label="R")
    eta = {a: _unique_factor(A, B, F, a, U_obj[F.obj[a]], eps[F.obj[a]], B.ident(F.obj[a])) for a in A.objects}
    return Adjunction(F, U, eta, eps)


def search_left_adjoint(U: CFunctor) -> Optional[Adjunction]:
    """Left adjoint of U: B -> A from initial objects of a | U."""
    B, A = U.source, U.target
    L_obj, eta = {}, {}
    for a in A.objects:
        t = initial_in_comma(U, a)
        if t is None:
            return None
        L_obj[a], eta[a] = t

    def factor(b0, h0, b, phi):
        hits = [g for g in B.hom(b0, b) if A.comp(U.morph[g], h0) == phi]
        return hits[0] if len(hits) == 1 else None

    L_mor = {}
    for f in A.morphisms:
        a, a2 = A.mor[f]
        L_mor[f] = factor(L_obj[a], eta[a], L_obj[a2], A.comp(eta[a2], f))
    L = CFunctor(A, B, L_obj, L_mor, label="L")
    eps = {b: factor(L_obj[U.obj[b]], eta[U.obj[b]], b, A.ident(U.obj[b])) for b in B.objects}
    return Adjunction(L, U, eta, eps)


# -- isofibrations and lalis ----------------------------------------------------------

def iso_lifts(p: CFunctor, e, beta) -> List:
    """Isomorphisms psi out of e with p(psi) = beta, least identifier first."""
    E = p.source
    return sort_ids(f for f in E.isos_from(e) if p.morph[f] == beta)


def isofibration_witness(p: CFunctor) -> Optional[Tuple]:
    E, B = p.source, p.target
    for e in E.objects:
        for beta in B.isos_from(p.obj[e]):
            if not iso_lifts(p, e, beta):
                return (e, beta)
    return None


def is_isofibration(p: CFunctor) -> bool:
    return isofibration_witness(p) is None


def _lift(p: CFunctor, e, beta):
    E = p.source
    if p.target.is_identity(beta):
        return E.ident(e)
    return iso_lifts(p, e, beta)[0]


def is_lali(p: CFunctor) -> Optional[Adjunction]:
    """Right adjoint with identity counit, or None.

    The counit of any right adjoint is made an identity by lifting its
    components along the isofibration (least-identifier lift, identities kept).
    """
    w = isofibration_witness(p)
    if w is not None:
        raise NotIsofibration(f"not an isofibration: iso {name(w[1])} does not lift at {name(w[0])}")
    adj = search_right_adjoint(p)
    if adj is None:
        return None
    E, B = p.source, p.target
    if not all(B.is_iso(m) for m in adj.counit.values()):
        return None
    return strictify_counit(adj)


def strictify_counit(adj: Adjunction) -> Adjunction:
    p, U = adj.left, adj.right
    E, B = p.source, p.target
    psi = {b: _lift(p, U.obj[b], adj.counit[b]) for b in B.objects}
    obj = {b: E.cod(psi[b]) for b in B.objects}
    mor = {}
    for g in B.morphisms:
        b, b2 = B.mor[g]
        mor[g] = E.comp_many(psi[b2], U.morph[g], E.inverse(psi[b]))
    R = CFunctor(B, E, obj, mor, label="r")
    unit = {e: E.comp(psi[p.obj[e]], adj.unit[e]) for e in E.objects}
    counit = {b: B.ident(b) for b in B.objects}
    return Adjunction(p, R, unit, counit)


def is_rali(p: CFunctor) -> Optional[Adjunction]:
    """Left adjoint with identity unit, or None."""
    w = isofibration_witness(p)
    if w is not None:
        raise NotIsofibration(f"not an isofibration: iso {name(w[1])} does not lift at {name(w[0])}")
    adj = search_left_adjoint(p)
    if adj is None:
        return None
    E, B = p.source, p.target
    if not all(B.is_iso(m) for m in adj.unit.values()):
        return None
    L = adj.left
    psi = {b: _lift(p, L.obj[b], B.inverse(adj.unit[b])) for b in B.objects}
    obj = {b: E.cod(psi[b]) for b in B.objects}
    mor = {}
    for g in B.morphisms:
        b, b2 = B.mor[g]
        mor[g] = E.comp_many(psi[b2], L.morph[g], E.inverse(psi[b]))
    L2 = CFunctor(B, E, obj, mor, label="l")
    counit = {e: E.comp(adj.counit[e], E.inverse(psi[p.obj[e]])) for e in E.objects}
    unit = {b: B.ident(b) for b in B.objects}
    return Adjunction(L2, p, unit, counit)


# -- squares and mates --------------------------------------------------------

class CSquare:
    """A commutative square  top: E1 -> E2 over bottom: B1 -> B2, legs left: E1 -> B1, right: E2 -> B2."""

    def __init__(self, top: CFunctor, bottom: CFunctor, left: CFunctor, right: CFunctor, check: bool = True):
        self.top, self.bottom, self.left, self.right = top, bottom, left, right
        if check:
            self.check()

    def check(self) -> None:
        if self.top.then(self.right) != self.left.then(self.bottom):
            raise ValueError("square does not commute")

    def then(self, other: "CSquare") -> "CSquare":
        """Horizontal pasting: other after self."""
        return CSquare(self.top.then(other.top), self.bottom.then(other.bottom), self.left, other.right)


def identity_square(p: CFunctor) -> CSquare:
    return CSquare(identity_functor(p.source), identity_functor(p.target), p, p)


def mate_of_square(sq: CSquare, adj1: Adjunction, adj2: Adjunction) -> CNat:
    """e r1 => r2 b with component r2 b(eps1 y) . eta2(e r1 y)."""
    if adj1.left != sq.left or adj2.left != sq.right:
        raise ValueError("adjunction data does not match the legs of the square")
    e, b = sq.top, sq.bottom
    r1, r2 = adj1.right, adj2.right
    E2 = e.target
    comp = {}
    for y in sq.left.target.objects:
        x = e.obj[r1.obj[y]]
        comp[y] = E2.comp(r2.morph[b.morph[adj1.counit[y]]], adj2.unit[x])
    return CNat(r1.then(e), b.then(r2), comp)


def is_lali_morphism(sq: CSquare, adj1: Optional[Adjunction] = None,
                     adj2: Optional[Adjunction] = None) -> Tuple[bool, Optional[object]]:
    """(mate is iso, first non-iso component)."""
    adj1 = adj1 or is_lali(sq.left)
    adj2 = adj2 or is_lali(sq.right)
    if adj1 is None or adj2 is None:
        raise ValueError("legs of the square must be lalis")
    mate = mate_of_square(sq, adj1, adj2)
    bad = mate.non_iso_components()
    return (not bad, bad[0] if bad else None)


def paste_mates(m1: CNat, m2: CNat, sq1: CSquare, sq2: CSquare) -> CNat:
    """Mate of the pasted square sq2 . sq1 computed from the two mates.

    m1: e1 r1 => r2 b1, m2: e2 r2 => r3 b2; result e2 e1 r1 => r3 b2 b1.
    """
    e2, b1 = sq2.top, sq1.bottom
    E3 = e2.target
    comp = {}
    for y in sq1.left.target.objects:
        comp[y] = E3.comp(m2.comp[b1.obj[y]], e2.morph[m1.comp[y]])
    return CNat(m1.source.then(e2), b1.then(m2.target), comp)


# -- comma characterizations -------------------------------------------------

@dataclass
class LaLaliReport:
    left_adjoint: bool
    projection_lali: bool
    forward_ok: Optional[bool] = None
    converse_ok: Optional[bool] = None

    @property
    def agree(self) -> bool:
        return self.left_adjoint == self.projection_lali

    @property
    def ok(self) -> bool:
        return self.agree and self.forward_ok is not False and self.converse_ok is not False


def comma_over_codomain(F: CFunctor) -> CommaCat:
    """F | B for F: A -> B."""
    return comma(F, identity_functor(F.target))


def forward_construction(F: CFunctor, adj: Adjunction, K: CommaCat) -> Adjunction:
    """From F -| U build p_B -| u with u(b) = (U b, b, eps_b) and identity counit."""
    A, B = F.source, F.target
    U = adj.right
    u_obj = {b: (U.obj[b], b, adj.counit[b]) for b in B.objects}
    u_mor = {}
    for g in B.morphisms:
        b, b2 = B.mor[g]
        u_mor[g] = (u_obj[b], u_obj[b2], U.morph[g], g)
    u = CFunctor(B, K, u_obj, u_mor, label="u")
    unit = {}
    for x in K.objects:
        a, b, phi = x
        sharp = A.comp(U.morph[phi], adj.unit[a])
        unit[x] = (x, u_obj[b], sharp, B.ident(b))
    counit = {b: B.ident(b) for b in B.objects}
    return Adjunction(K.p_B, u, unit, counit)


def converse_construction(F: CFunctor, padj: Adjunction, K: CommaCat) -> Adjunction:
    """From p_B -| u (identity counit) build F -| U with U = p_A u, unit H, counit E."""
    A, B = F.source, F.target
    u = padj.right
    U = u.then(K.p_A)
    H = {}
    for a in A.objects:
        v = (a, F.obj[a], B.ident(F.obj[a]))
        H[a] = K.p_A.morph[padj.unit[v]]
    E = {b: u.obj[b][2] for b in B.objects}
    return Adjunction(F, U, H, E)


def la_iff_lali_check(F: CFunctor) -> LaLaliReport:
    adj = search_right_adjoint(F)
    K = comma_over_codomain(F)
    padj = is_lali(K.p_B)
    rep = LaLaliReport(adj is not None, padj is not None)
    if adj is not None:
        try:
            fw = forward_construction(F, adj, K)
            rep.forward_ok = fw.counit_is_identity and fw.triangles_hold()
        except (ValueError, KeyError):
            rep.forward_ok = False
    if padj is not None:
        try:
            rep.converse_ok = converse_construction(F, padj, K).triangles_hold()
        except (ValueError, KeyError):
            rep.converse_ok = False
    return rep


def mate_of_left_adjoints(gamma: CFunctor, beta: CFunctor, adj1: Adjunction, adj2: Adjunction) -> CNat:
    """theta: gamma U1 => U2 beta, theta_b = U2 beta(E1 b) . H2(gamma U1 b)."""
    U1, U2 = adj1.right, adj2.right
    A2 = gamma.target
    comp = {}
    for b in adj1.left.target.objects:
        x = gamma.obj[U1.obj[b]]
        comp[b] = A2.comp(U2.morph[beta.morph[adj1.counit[b]]], adj2.unit[x])
    return CNat(U1.then(gamma), beta.then(U2), comp)


def comma_transfer(gamma: CFunctor, beta: CFunctor, K1: CommaCat, K2: CommaCat) -> CFunctor:
    """beta-bar(a, b, phi) = (gamma a, beta b, beta phi)."""
    obj = {x: (gamma.obj[x[0]], beta.obj[x[1]], beta.morph[x[2]]) for x in K1.objects}
    mor = {m: (obj[m[0]], obj[m[1]], gamma.morph[m[2]], beta.morph[m[3]]) for m in K1.morphisms}
    return CFunctor(K1, K2, obj, mor)


@dataclass
class MateTransferReport:
    left_adjoint_morphism: bool
    lali_morphism: bool
    left_witness: Optional[object] = None
    lali_witness: Optional[object] = None

    @property
    def agree(self) -> bool:
        return self.left_adjoint_morphism == self.lali_morphism

    @property
    def witnesses_match(self) -> bool:
        return self.left_witness == self.lali_witness


def mate_transfer_check(gamma: CFunctor, beta: CFunctor, adj1: Adjunction, adj2: Adjunction) -> MateTransferReport:
    F1, F2 = adj1.left, adj2.left
    if gamma.then(F2) != F1.then(beta):
        raise ValueError("(gamma, beta) is not a square between the left adjoints")
    theta = mate_of_left_adjoints(gamma, beta, adj1, adj2)
    bad = theta.non_iso_components()
    K1, K2 = comma_over_codomain(F1), comma_over_codomain(F2)
    bb = comma_transfer(gamma, beta, K1, K2)
    sq = CSquare(bb, beta, K1.p_B, K2.p_B)
    ok, wit = is_lali_morphism(sq)
    return MateTransferReport(not bad, ok, bad[0] if bad else None, wit)


# -- limits of isofibrations ----------------------------------------------------

def product_isofibration(p1: CFunctor, p2: CFunctor) -> Tuple[CFunctor, List[CSquare]]:
    E = product_cat(p1.source, p2.source)
    B = product_cat(p1.target, p2.target)
    p = CFunctor(E, B, {(a, b): (p1.obj[a], p2.obj[b]) for a, b in E.objects},
                 {(f, g): (p1.morph[f], p2.morph[g]) for f, g in E.morphisms})
    e1, e2 = projections(E, p1.source, p2.source)
    b1, b2 = projections(B, p1.target, p2.target)
    return p, [CSquare(e1, b1, p, p1), CSquare(e2, b2, p, p2)]


def pullback_of_squares(F: CSquare, G: CSquare) -> Tuple[CFunctor, CSquare, CSquare]:
    """Levelwise pullback of squares F: A -> C and G: B -> C of isofibrations."""
    P1 = pullback_cat(F.top, G.top)
    P2 = pullback_cat(F.bottom, G.bottom)
    A, B = F.left, G.left
    obj = {(a, b): (A.obj[a], B.obj[b]) for a, b in P1.objects}
    mor = {(f, g): (A.morph[f], B.morph[g]) for f, g in P1.morphisms}
    P = CFunctor(P1, P2, obj, mor, label="P")
    sqA = CSquare(P1.p1, P2.p1, P, A)
    sqB = CSquare(P1.p2, P2.p2, P, B)
    return P, sqA, sqB


@dataclass
class ReflectionReport:
    q_lali_morphism: bool
    components: List[bool] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.q_lali_morphism == all(self.components)


def jointly_reflect_lali_check(cone: Sequence[CSquare], q: CSquare) -> ReflectionReport:
    """q is a morphism of lalis iff every cone leg composed with q is."""
    ok, _ = is_lali_morphism(q)
    comps = [is_lali_morphism(q.then(leg))[0] for leg in cone]
    return ReflectionReport(ok, comps)
