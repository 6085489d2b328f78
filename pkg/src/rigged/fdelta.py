"""Enhanced simplicial sets: a simplicial set plus a set of tight vertices.

The tight part of an enhanced simplicial set is the full subcomplex spanned by
its tight vertices, so it is never stored separately.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .sset import (
    HomSSet,
    Product,
    Pullback,
    Simplex,
    SMap,
    SSet,
    enumerate_maps,
    full_subcomplex,
    identity_map,
    opposite,
    opposite_map,
    product,
    pullback,
    std_simplex,
    truncated_hom,
    vertex_map_of_hom,
)


class ESSet:
    def __init__(self, loose: SSet, tight: Iterable = ()):
        self.loose = loose
        self.tight = frozenset(tight)
        bad = [v for v in self.tight if loose.dim_of.get(v) != 0]
        if bad:
            raise ValueError(f"tight vertices must be vertices: {bad[:3]}")

    def is_tight_vertex(self, v) -> bool:
        return v in self.tight

    def is_tight_simplex(self, x: Simplex) -> bool:
        return all(v in self.tight for v in self.loose.vertex_tuple(x))

    def tight_part(self) -> Tuple[SSet, SMap]:
        return full_subcomplex(self.loose, self.tight, label=f"{self.loose.label}_t")

    @property
    def label(self) -> str:
        return self.loose.label

    def counts(self):
        return self.loose.counts()

    def __repr__(self) -> str:
        return f"<ESSet {self.loose.label} counts={self.loose.counts()} tight={len(self.tight)}>"


class EMap:
    """A simplicial map between enhanced simplicial sets; tightness is derived."""

    def __init__(self, source: ESSet, target: ESSet, underlying: SMap):
        self.source = source
        self.target = target
        self.underlying = underlying

    @property
    def tight(self) -> bool:
        return is_tight_map(self.underlying, self.source, self.target)

    def __eq__(self, other):
        return isinstance(other, EMap) and self.underlying == other.underlying

    def __hash__(self):
        return hash(self.underlying)


def is_tight_map(f: SMap, source: ESSet, target: ESSet) -> bool:
    return all(f.on_vertex(v) in target.tight for v in source.tight)


def chordate(S: SSet) -> ESSet:
    return ESSet(S, S.vertices)


def inchordate(S: SSet) -> ESSet:
    return ESSet(S, ())


def tight_simplex(n: int, positions: Sequence[int]) -> ESSet:
    """Delta^n with the given vertices tight, e.g. [n] for the terminal one."""
    return ESSet(std_simplex(n), [(j,) for j in positions])


# -- factorization system ----------------------------------------------------

def is_ffiov(f: SMap) -> bool:
    """Fully faithful and injective on vertices."""
    S, T = f.source, f.target
    vimg = [f.on_vertex(v) for v in S.vertices]
    if len(set(vimg)) != len(vimg):
        return False
    image = set(vimg)
    hit = set()
    for c, y in f.assign.items():
        if not y.nondegenerate or y.base in hit:
            return False
        hit.add(y.base)
    for c in T.all_cells():
        if c not in hit and all(v in image for v in T.vert[c]):
            return False
    return True


def is_surjective_on_vertices(f: SMap) -> bool:
    return f.vertex_image() == set(f.target.vertices)


def factorize(f: SMap) -> Tuple[SMap, SMap]:
    """f = r . l with l surjective on vertices and r the full-span inclusion."""
    T = f.target
    Im, r = full_subcomplex(T, f.vertex_image(), label=f"im")
    l = SMap(f.source, Im, dict(f.assign))
    return l, r


def diagonal(l: SMap, r: SMap, u: SMap, v: SMap) -> Optional[SMap]:
    """The filler h: X -> Y of the square r . u = v . l built as in the proof.

    l: A -> X surjective on vertices, r: Y -> B ffiov, u: A -> Y, v: X -> B.
    """
    X, Y = l.target, r.source
    pre = {y.base: c for c, y in r.assign.items()}
    out = {}
    for c in X.all_cells():
        w = v.assign[c]
        y = pre.get(w.base)
        if y is None:
            return None
        out[c] = Simplex(y, w.surj)
    h = SMap(X, Y, out)
    if not h.is_valid():
        return None
    if h.then(r) != v or l.then(h) != u:
        return None
    return h


def diagonal_fillers(l: SMap, r: SMap, u: SMap, v: SMap) -> List[SMap]:
    """All fillers, by exhaustive enumeration."""
    return [h for h in enumerate_maps(l.target, r.source) if l.then(h) == u and h.then(r) == v]


# -- homs --------------------------------------------------------------------

def hom_map(H_src: HomSSet, H_dst: HomSSet, pre: Optional[SMap] = None, post: Optional[SMap] = None) -> SMap:
    """[S, T] -> [S', T'] given by precomposing with pre: S' -> S and postcomposing with post: T -> T'."""
    out = {}
    S2 = H_dst.src
    for cid, g in H_src.payload.items():
        P = g.source
        n = P.left.top_dim
        P2 = product(std_simplex(n), S2)
        assign = {}
        for c in P2.all_cells():
            a, b, al, be = c
            s = Simplex(b, be)
            if pre is not None:
                s = pre(s)
            z = g(P.pair(Simplex(a, al), s))
            assign[c] = post(z) if post is not None else z
        out[cid] = H_dst.table[n][SMap(P2, H_dst.tgt, assign)]
    return SMap(H_src, H_dst, out)


class EHom(ESSet):
    def __init__(self, hom: HomSSet, tight):
        super().__init__(hom, tight)
        self.hom = hom

    def map_of_vertex(self, v) -> SMap:
        return vertex_map_of_hom(self.hom, v)


def ehom(S: ESSet, T: ESSet, k: int, verify: bool = False, budget: Optional[int] = None) -> EHom:
    """Truncated enhanced internal hom.

    A vertex is tight iff the corresponding map S -> T is tight.  With
    ``verify`` the tight part is recomputed from the pullback formula
    [S,T]_loose x_{[S_t, T]} [S_t, T_t] and compared.
    """
    H = truncated_hom(S.loose, T.loose, k, budget=budget)
    tight = [v for v in H.vertices if is_tight_map(vertex_map_of_hom(H, v), S, T)]
    E = EHom(H, tight)
    if verify:
        check_ehom_pullback(S, T, E, k)
    return E


def check_ehom_pullback(S: ESSet, T: ESSet, E: EHom, k: int) -> None:
    St, jS = S.tight_part()
    Tt, jT = T.tight_part()
    H = E.hom
    H1 = truncated_hom(St, T.loose, k)
    H2 = truncated_hom(St, Tt, k)
    restrict = hom_map(H, H1, pre=jS)
    include = hom_map(H2, H1, post=jT)
    P = pullback(restrict, include)
    proj = P.projections[0]
    if not is_ffiov(proj):
        raise AssertionError("pullback projection is not fully faithful and injective on vertices")
    if proj.vertex_image() != set(E.tight):
        raise AssertionError("pullback formula and direct definition disagree on tight vertices")


def power_chordate_tight(H: HomSSet, T: ESSet) -> List:
    """Vertices of [J, T] whose every evaluation is tight."""
    out = []
    for v in H.vertices:
        f = vertex_map_of_hom(H, v)
        if all(f.on_vertex(j) in T.tight for j in H.src.vertices):
            out.append(v)
    return out


def curry(f: SMap, H: HomSSet) -> SMap:
    """Transpose f: R x S -> T to R -> [S, T] (needs dim R <= k)."""
    P = f.source
    R, S = P.left, P.right
    out = {}
    for r in R.all_cells():
        n = R.dim_of[r]
        Q = product(std_simplex(n), S)
        rs = R.ident(r)
        assign = {}
        for c in Q.all_cells():
            a, b, al, be = c
            t = R.apply(rs, tuple(a[i] for i in al))
            assign[c] = f(P.pair(t, Simplex(b, be)))
        out[r] = H.table[n][SMap(Q, H.tgt, assign)]
    return SMap(R, H, out)


# -- limits ----------------------------------------------------------------

class EProduct(ESSet):
    def __init__(self, P: Product, tight, left: ESSet, right: ESSet):
        super().__init__(P, tight)
        self.left = left
        self.right = right

    @property
    def projections(self) -> Tuple[EMap, EMap]:
        p1, p2 = self.loose.projections
        return EMap(self, self.left, p1), EMap(self, self.right, p2)


def eproduct(S: ESSet, T: ESSet) -> EProduct:
    P = product(S.loose, T.loose)
    tight = [v for v in P.vertices if v[0] in S.tight and v[1] in T.tight]
    return EProduct(P, tight, S, T)


def epullback(f: EMap, g: EMap) -> EProduct:
    P = pullback(f.underlying, g.underlying)
    tight = [v for v in P.vertices if v[0] in f.source.tight and v[1] in g.source.tight]
    return EProduct(P, tight, f.source, g.source)


def eopposite(S: ESSet) -> ESSet:
    return ESSet(opposite(S.loose), S.tight)


def eopposite_map(f: EMap, source_op: ESSet, target_op: ESSet) -> EMap:
    return EMap(source_op, target_op, opposite_map(f.underlying, source_op.loose, target_op.loose))


def jointly_reflects(limit: ESSet, projections: Sequence[EMap], probe_source: ESSet,
                     max_probes: Optional[int] = None) -> Tuple[bool, int]:
    """Check: a probe q into the limit is tight iff every p . q is tight.

    Returns (ok, number of probes examined).
    """
    count = 0
    for q in enumerate_maps(probe_source.loose, limit.loose, limit=max_probes):
        count += 1
        t = is_tight_map(q, probe_source, limit)
        ts = all(is_tight_map(q.then(p.underlying), probe_source, p.target) for p in projections)
        if t != ts:
            return False, count
    return True, count


def find_eisomorphism(S: ESSet, T: ESSet):
    from .sset import find_isomorphism
    return find_isomorphism(S.loose, T.loose, set(S.tight), set(T.tight))
