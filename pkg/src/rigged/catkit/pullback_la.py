"""Right adjoint of a pullback of a square along a cartesian morphism of left adjoints.

Everything lives in the arrow category of finite categories: an object is an
isofibration ``A: a1 -> a2`` that is a left adjoint, a morphism is a
commutative square.  Given ``F: A -> C`` and ``G: B -> C`` with ``G`` a
morphism of left adjoints whose components are Grothendieck fibrations, the
levelwise pullback ``P: p1 -> p2`` gets an explicit right adjoint ``r``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..sset import name
from .adjunction import (
    Adjunction,
    CSquare,
    is_isofibration,
    mate_of_square,
    pullback_of_squares,
    search_right_adjoint,
)
from .category import CFunctor, CNat, FinCat, find_functors
from .fibration import cartesian_lift, is_grothendieck_fibration


class PreconditionError(ValueError):
    pass


def _factor_through_cartesian(p: CFunctor, chi, g, h):
    """The unique k with chi . k = g and p k = h (chi cartesian)."""
    E = p.source
    ks = [k for k in E.hom(E.dom(g), E.dom(chi)) if E.comp(chi, k) == g and p.morph[k] == h]
    if len(ks) != 1:
        raise ValueError("cartesian factorization is not unique")
    return ks[0]


@dataclass
class PullbackLaReport:
    triangles: bool = False
    oracle_exists: bool = False
    oracle_iso: bool = False
    projection_mate_iso: bool = False
    reflection_probes: int = 0
    reflection_ok: bool = True
    equations: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.triangles and self.oracle_exists and self.oracle_iso and self.projection_mate_iso
                and self.reflection_ok and all(self.equations.values()))


def check_preconditions(F: CSquare, G: CSquare) -> Dict[str, Adjunction]:
    if F.right is not G.right and F.right != G.right:
        raise PreconditionError("F and G must share the codomain isofibration C")
    adjs = {}
    for nm, p in (("A", F.left), ("B", G.left), ("C", F.right)):
        if not is_isofibration(p):
            raise PreconditionError(f"{nm} is not an isofibration")
        adj = search_right_adjoint(p)
        if adj is None:
            raise PreconditionError(f"{nm} is not a left adjoint")
        adjs[nm] = adj
    lam_G = mate_of_square(G, adjs["B"], adjs["C"])
    if not lam_G.is_iso():
        raise PreconditionError("G is not a morphism of left adjoints (mate not invertible)")
    if not is_grothendieck_fibration(G.top):
        raise PreconditionError("G1 is not a Grothendieck fibration")
    if not is_grothendieck_fibration(G.bottom):
        raise PreconditionError("G2 is not a Grothendieck fibration")
    return adjs


class PullbackLa:
    """The construction of the right adjoint r of P with unit and counit."""

    def __init__(self, F: CSquare, G: CSquare, adjs: Optional[Dict[str, Adjunction]] = None):
        self.F, self.G = F, G
        self.adjs = adjs or check_preconditions(F, G)
        A, B, C = F.left, G.left, F.right
        aA, aB, aC = self.adjs["A"], self.adjs["B"], self.adjs["C"]
        rA, rB = aA.right, aB.right
        F1, G1 = F.top, G.top
        self.P, self.sqA, self.sqB = pullback_of_squares(F, G)
        P = self.P
        p1, p2 = P.source, P.target
        c1 = F1.target
        b1 = G1.source
        self.lam_F = mate_of_square(F, aA, aC)
        self.lam_G = mate_of_square(G, aB, aC)
        # chi: x => r_B p_B2, a G1-cartesian lift of lam_G^{-1} . lam_F
        self.kappa = {}
        self.chi = {}
        xobj = {}
        for y in p2.objects:
            al, be = y
            kappa = c1.comp(c1.inverse(self.lam_G[be]), self.lam_F[al])
            self.kappa[y] = kappa
            chi = cartesian_lift(G1, kappa, rB.obj[be])
            self.chi[y] = chi
            xobj[y] = b1.dom(chi)
        robj = {y: (rA.obj[y[0]], xobj[y]) for y in p2.objects}
        rmor = {}
        for m in p2.morphisms:
            u, v = m
            y, y2 = p2.mor[m]
            k = _factor_through_cartesian(G1, self.chi[y2], b1.comp(rB.morph[v], self.chi[y]), F1.morph[rA.morph[u]])
            rmor[m] = (rA.morph[u], k)
        self.r = CFunctor(p2, p1, robj, rmor, label="r")
        self.r.check()
        unit = {}
        for z in p1.objects:
            al1, be1 = z
            y = P.obj[z]
            k = _factor_through_cartesian(G1, self.chi[y], aB.unit[be1], F1.morph[aA.unit[al1]])
            unit[z] = (aA.unit[al1], k)
        counit = {}
        for y in p2.objects:
            al, be = y
            counit[y] = (aA.counit[al], b1_comp(B.target, aB.counit[be], B.morph[self.chi[y]]))
        for z, m in unit.items():
            if m not in p1.mor:
                raise ValueError(f"unit component at {name(z)} is not a morphism of the pullback")
        for y, m in counit.items():
            if m not in p2.mor:
                raise ValueError(f"counit component at {name(y)} is not a morphism of the pullback")
        self.adjunction = Adjunction(P, self.r, unit, counit, check=False)

    def report(self, probes: Optional[List[CFunctor]] = None, max_probes: int = 50) -> PullbackLaReport:
        rep = PullbackLaReport()
        rep.triangles = self.adjunction.triangles_hold()
        P = self.P
        p1, p2 = P.source, P.target
        c1 = self.F.top.target
        b1 = self.G.top.source
        rB = self.adjs["B"].right
        # displayed equations of the proof, evaluated componentwise
        rep.equations["chi_over_composite"] = all(
            self.G.top.morph[self.chi[y]] == self.kappa[y] for y in p2.objects)
        rep.equations["r_over_rA"] = all(self.r.obj[y][0] == self.adjs["A"].right.obj[y[0]] for y in p2.objects)
        rep.equations["chi_natural"] = all(
            b1.comp(self.chi[p2.cod(m)], self.r.morph[m][1]) == b1.comp(rB.morph[m[1]], self.chi[p2.dom(m)])
            for m in p2.morphisms)
        oracle = search_right_adjoint(P)
        rep.oracle_exists = oracle is not None
        if oracle is not None:
            rep.oracle_iso = comparison_is_iso(self.adjunction, oracle)
        if rep.triangles:
            lam = mate_of_square(self.sqA, self.adjunction, self.adjs["A"])
            rep.projection_mate_iso = lam.is_iso()
            if probes is None:
                probes = []
            n = 0
            for X, adjX in probes:
                for q in probe_squares(X, P, limit=max_probes):
                    n += 1
                    a = mate_of_square(q, adjX, self.adjunction).is_iso()
                    b = mate_of_square(q.then(self.sqA), adjX, self.adjs["A"]).is_iso()
                    if a != b:
                        rep.reflection_ok = False
            rep.reflection_probes = n
        return rep


def b1_comp(C: FinCat, g, f):
    return C.comp(g, f)


def comparison_is_iso(adj: Adjunction, oracle: Adjunction) -> bool:
    """The canonical comparison r(y) -> r'(y) (induced by universality) is an iso."""
    P = adj.left
    p1, p2 = P.source, P.target
    for y in p2.objects:
        a, b = adj.right.obj[y], oracle.right.obj[y]
        ks = [k for k in p1.hom(a, b) if p2.comp(oracle.counit[y], P.morph[k]) == adj.counit[y]]
        if len(ks) != 1 or not p1.is_iso(ks[0]):
            return False
    return True


def probe_squares(X: CFunctor, P: CFunctor, limit: int = 50):
    """Commutative squares X -> P (pairs of functors), at most ``limit``."""
    count = 0
    for q2 in find_functors(X.target, P.target):
        for q1 in find_functors(X.source, P.source):
            if q1.then(P) == X.then(q2):
                yield CSquare(q1, q2, X, P, check=False)
                count += 1
                if count >= limit:
                    return


def pullback_la(F: CSquare, G: CSquare, probes=None, max_probes: int = 50):
    """(P, constructed adjunction, report)."""
    con = PullbackLa(F, G)
    return con.P, con.adjunction, con.report(probes=probes, max_probes=max_probes)
