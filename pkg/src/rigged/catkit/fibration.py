"""Grothendieck fibrations, J-shaped limits and the Leibniz comparison."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..sset import SSet, join_cone, name, sort_ids
from .adjunction import Adjunction, CSquare, NotIsofibration, is_isofibration, is_lali, is_lali_morphism
from .category import (
    DEFAULT_BUDGET,
    CFunctor,
    CommaCat,
    FinCat,
    FunctorCat,
    arrow_cat,
    comma,
    find_nats,
    identity_functor,
    postcompose_functor,
    precompose_functor,
)
from .nerve import homotopy_cat, homotopy_functor


def is_cartesian(p: CFunctor, f) -> bool:
    """f: e' -> e is p-cartesian."""
    E, B = p.source, p.target
    e1, e = E.mor[f]
    pf = p.morph[f]
    for g in E.into(e):
        e2 = E.dom(g)
        pg = p.morph[g]
        for h in B.hom(p.obj[e2], p.obj[e1]):
            if B.comp(pf, h) != pg:
                continue
            ks = [k for k in E.hom(e2, e1) if E.comp(f, k) == g and p.morph[k] == h]
            if len(ks) != 1:
                return False
    return True


def cartesian_lifts(p: CFunctor, beta, e) -> List:
    """All cartesian f with p f = beta and cod f = e, least identifier first."""
    E = p.source
    return sort_ids(f for f in E.into(e) if p.morph[f] == beta and is_cartesian(p, f))


def cartesian_lift(p: CFunctor, beta, e):
    lifts = cartesian_lifts(p, beta, e)
    if not lifts:
        raise ValueError(f"no cartesian lift of {name(beta)} at {name(e)}")
    return lifts[0]


def fibration_witness(p: CFunctor) -> Optional[Tuple]:
    E, B = p.source, p.target
    for e in E.objects:
        for beta in B.into(p.obj[e]):
            if not cartesian_lifts(p, beta, e):
                return (beta, e)
    return None


def is_grothendieck_fibration(p: CFunctor) -> bool:
    return fibration_witness(p) is None


def preserves_cartesian(sq: CSquare) -> Tuple[bool, Optional[object]]:
    """Top of the square sends p1-cartesian morphisms to p2-cartesian ones."""
    p1, p2, e = sq.left, sq.right, sq.top
    for f in p1.source.morphisms:
        if is_cartesian(p1, f) and not is_cartesian(p2, e.morph[f]):
            return False, f
    return True, None


# -- Leibniz comparison ---------------------------------------------------------

def leibniz_target(p: CFunctor) -> Tuple[CFunctor, CommaCat, CommaCat]:
    """E^[1] -> B | p sending f: e1 -> e2 to (p e1, e2, p f)."""
    E, B = p.source, p.target
    Ear = arrow_cat(E)
    Bp = comma(identity_functor(B), p)
    obj = {x: (p.obj[x[0]], x[1], p.morph[x[2]]) for x in Ear.objects}
    mor = {m: (obj[m[0]], obj[m[1]], p.morph[m[2]], m[3]) for m in Ear.morphisms}
    return CFunctor(Ear, Bp, obj, mor, label="leibniz"), Ear, Bp


def leibniz_square(sq: CSquare, L1: Tuple, L2: Tuple) -> CSquare:
    """The square between Leibniz comparisons induced by (e, b): p1 -> p2."""
    e, b = sq.top, sq.bottom
    l1, A1, C1 = L1
    l2, A2, C2 = L2
    top = CFunctor(A1, A2, {x: (e.obj[x[0]], e.obj[x[1]], e.morph[x[2]]) for x in A1.objects},
                   {m: ((e.obj[m[0][0]], e.obj[m[0][1]], e.morph[m[0][2]]),
                        (e.obj[m[1][0]], e.obj[m[1][1]], e.morph[m[1][2]]), e.morph[m[2]], e.morph[m[3]])
                    for m in A1.morphisms})
    bobj = {x: (b.obj[x[0]], e.obj[x[1]], b.morph[x[2]]) for x in C1.objects}
    bottom = CFunctor(C1, C2, bobj, {m: (bobj[m[0]], bobj[m[1]], b.morph[m[2]], e.morph[m[3]]) for m in C1.morphisms})
    return CSquare(top, bottom, l1, l2)


@dataclass
class CartReport:
    fibration: bool
    leibniz_lali: bool
    witness: Optional[object] = None

    @property
    def agree(self) -> bool:
        return self.fibration == self.leibniz_lali


def cart_check(p: CFunctor) -> CartReport:
    if not is_isofibration(p):
        raise NotIsofibration("cart_check needs an isofibration")
    l, _, _ = leibniz_target(p)
    adj = is_lali(l)
    return CartReport(is_grothendieck_fibration(p), adj is not None, fibration_witness(p))


def cart_square_check(sq: CSquare) -> Tuple[bool, bool]:
    """(top preserves cartesian morphisms, Leibniz square is a morphism of lalis); both legs fibrations."""
    L1 = leibniz_target(sq.left)
    L2 = leibniz_target(sq.right)
    lsq = leibniz_square(sq, L1, L2)
    return preserves_cartesian(sq)[0], is_lali_morphism(lsq)[0]


# -- limits -------------------------------------------------------------------

def cones(A: FinCat, D: CFunctor) -> List[Tuple[object, Dict]]:
    """Cones over D: J -> A as (apex, components)."""
    J = D.source
    out = []
    import itertools
    for c in A.objects:
        choices = [A.hom(c, D.obj[j]) for j in J.objects]
        for combo in itertools.product(*choices):
            comp = dict(zip(J.objects, combo))
            if all(A.comp(D.morph[f], comp[J.dom(f)]) == comp[J.cod(f)] for f in J.morphisms):
                out.append((c, comp))
    return out


def is_limit_cone(A: FinCat, D: CFunctor, apex, comp: Dict, all_cones: Optional[List] = None) -> bool:
    J = D.source
    for c, k in (all_cones if all_cones is not None else cones(A, D)):
        fs = [f for f in A.hom(c, apex) if all(A.comp(comp[j], f) == k[j] for j in J.objects)]
        if len(fs) != 1:
            return False
    return True


def limit_cone(A: FinCat, D: CFunctor) -> Optional[Tuple[object, Dict]]:
    cs = cones(A, D)
    for c, k in sorted(cs, key=lambda t: name((t[0], tuple(t[1][j] for j in D.source.objects)))):
        if is_limit_cone(A, D, c, k, cs):
            return c, k
    return None


def has_limits(A: FinCat, J: FinCat) -> Tuple[bool, Optional[CFunctor]]:
    from .category import find_functors
    for D in find_functors(J, A):
        if limit_cone(A, D) is None:
            return False, D
    return True, None


def preserves_limits(f: CFunctor, J: FinCat) -> Tuple[bool, Optional[CFunctor]]:
    from .category import find_functors
    A, B = f.source, f.target
    for D in find_functors(J, A):
        lc = limit_cone(A, D)
        if lc is None:
            continue
        apex, comp = lc
        fD = D.then(f)
        if not is_limit_cone(B, fD, f.obj[apex], {j: f.morph[m] for j, m in comp.items()}):
            return False, D
    return True, None


class Restriction:
    """res: A^{h(J<)} -> A^{hJ} with the shape categories."""

    def __init__(self, A: FinCat, J: SSet, budget: int = DEFAULT_BUDGET):
        K, inc = join_cone(J)
        self.J_cat = homotopy_cat(J)
        self.K_cat = homotopy_cat(K)
        self.inclusion = homotopy_functor(inc, self.J_cat, self.K_cat)
        self.A = A
        self.FK = FunctorCat(self.K_cat, A, budget=budget)
        self.FJ = FunctorCat(self.J_cat, A, budget=budget)
        self.functor = precompose_functor(self.inclusion, self.FK, self.FJ)


def res_restriction(A: FinCat, J: SSet, budget: int = DEFAULT_BUDGET) -> CFunctor:
    return Restriction(A, J, budget).functor


@dataclass
class JLimReport:
    has_limits: bool
    res_lali: bool
    witness: Optional[object] = None
    preservation: Optional[List[Tuple[bool, bool]]] = None

    @property
    def agree(self) -> bool:
        ok = self.has_limits == self.res_lali
        if self.preservation:
            ok = ok and all(a == b for a, b in self.preservation)
        return ok


def jlim_check(A: FinCat, J: SSet, functors: Optional[List[Tuple[CFunctor, "Restriction"]]] = None,
               budget: int = DEFAULT_BUDGET) -> JLimReport:
    """res is a lali iff A has hJ-limits; for f: A -> B with both lalis, the
    square (f^{J<}, f^J) is a morphism of lalis iff f preserves those limits."""
    R = Restriction(A, J, budget)
    adj = is_lali(R.functor)
    has, wit = has_limits(A, R.J_cat)
    rep = JLimReport(has, adj is not None, wit)
    if functors:
        rep.preservation = []
        for f, RB in functors:
            top = postcompose_functor(f, R.FK, RB.FK)
            bottom = postcompose_functor(f, R.FJ, RB.FJ)
            sq = CSquare(top, bottom, R.functor, RB.functor)
            pres, _ = preserves_limits(f, R.J_cat)
            rep.preservation.append((pres, is_lali_morphism(sq)[0]))
    return rep
