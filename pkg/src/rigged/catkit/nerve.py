"""Nerves of finite categories and homotopy categories of simplicial sets."""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from ..sset import BudgetExceeded, Simplex, SMap, SSet, name, sort_ids
from .category import CFunctor, FinCat


class Nerve(SSet):
    """N(C) truncated at dimension k.

    Vertices are the objects of C; an n-cell is ``("ch", f1, ..., fn)`` for a
    composable chain of non-identity morphisms.
    """

    def __init__(self, C: FinCat, k: int, budget: Optional[int] = None):
        self.cat = C
        self.k = k
        cells: Dict[int, list] = {0: list(C.objects)}
        faces = {}
        chains = [(f,) for f in C.morphisms if not C.is_identity(f)]
        n = 1
        total = len(C.objects)
        while chains and n <= k:
            cells[n] = [("ch",) + ch for ch in chains]
            total += len(chains)
            if budget is not None and total > budget:
                raise BudgetExceeded(f"nerve exceeds budget {budget}")
            for ch in chains:
                faces[("ch",) + ch] = [self._face_simplex(C, ch, i) for i in range(n + 1)]
            nxt = []
            for ch in chains:
                for g in C.out_of(C.cod(ch[-1])):
                    if not C.is_identity(g):
                        nxt.append(ch + (g,))
            chains = nxt
            n += 1
        super().__init__(cells, faces, label=f"N({C.label})")

    @staticmethod
    def _face_simplex(C: FinCat, ch: Tuple, i: int) -> Simplex:
        n = len(ch)
        start = C.dom(ch[0])
        if i == 0:
            start = C.cod(ch[0])
            rest = list(ch[1:])
        elif i == n:
            rest = list(ch[:-1])
        else:
            rest = list(ch[:i - 1]) + [C.comp(ch[i], ch[i - 1])] + list(ch[i + 1:])
        return chain_simplex(C, start, rest)

    def chain_of(self, x: Simplex) -> Tuple[object, Tuple]:
        """(first object, tuple of morphisms possibly identities) of a simplex."""
        C = self.cat
        b = x.base
        if self.dim_of[b] == 0:
            return b, tuple(C.ident(b) for _ in range(len(x.surj) - 1))
        g = b[1:]
        objs = [C.dom(g[0])] + [C.cod(h) for h in g]
        out = []
        s = x.surj
        for t in range(1, len(s)):
            if s[t] == s[t - 1]:
                out.append(C.ident(objs[s[t]]))
            else:
                out.append(g[s[t] - 1])
        return objs[s[0]], tuple(out)

    def simplex_of_chain(self, start, morphs: Sequence) -> Simplex:
        return chain_simplex(self.cat, start, list(morphs))

    def edge(self, f) -> Simplex:
        C = self.cat
        return chain_simplex(C, C.dom(f), [f])

    def morphism_of_edge(self, x: Simplex):
        start, ms = self.chain_of(x)
        return ms[0]


def chain_simplex(C: FinCat, start, morphs: List) -> Simplex:
    nonid = [f for f in morphs if not C.is_identity(f)]
    surj = [0]
    for f in morphs:
        surj.append(surj[-1] + (0 if C.is_identity(f) else 1))
    if not nonid:
        return Simplex(start, tuple(surj))
    return Simplex(("ch",) + tuple(nonid), tuple(surj))


def nerve(C: FinCat, k: int, budget: Optional[int] = None) -> Nerve:
    return Nerve(C, k, budget=budget)


def nerve_map(F: CFunctor, N1: Nerve, N2: Nerve) -> SMap:
    out = {}
    for c in N1.all_cells():
        if N1.dim_of[c] == 0:
            out[c] = Simplex(F.obj[c], (0,))
        else:
            ch = c[1:]
            out[c] = N2.simplex_of_chain(F.obj[F.source.dom(ch[0])], [F.morph[f] for f in ch])
    return SMap(N1, N2, out)


def functor_of_nerve_map(f: SMap, N1: Nerve, N2: Nerve) -> CFunctor:
    A, B = N1.cat, N2.cat
    obj = {a: f.assign[a].base for a in A.objects}
    mor = {}
    for g in A.morphisms:
        if A.is_identity(g):
            mor[g] = B.ident(obj[A.dom(g)])
        else:
            mor[g] = N2.morphism_of_edge(f.assign[("ch", g)])
    return CFunctor(A, B, obj, mor)


# -- homotopy category ---------------------------------------------------------

class HomotopyCat(FinCat):
    """h(S): free category on the edges modulo the 2-cells.

    Morphisms are named by a shortest representing path ``(start, edges)``.
    """

    def __init__(self, S: SSet, max_length: int = 16, budget: int = 200_000):
        self.sset = S
        V = list(S.vertices)
        edges = list(S.nondeg(1))
        src = {e: S.vert[e][0] for e in edges}
        tgt = {e: S.vert[e][1] for e in edges}
        out_edges: Dict = {}
        for e in edges:
            out_edges.setdefault(src[e], []).append(e)

        def epath(x: Simplex) -> Tuple:
            return () if not x.nondegenerate else (x.base,)

        relations = []
        for c in S.nondeg(2):
            d0, d1, d2 = S.faces[c]
            relations.append((S.vert[c][0], epath(d2) + epath(d0), epath(d1)))

        L = 2
        while True:
            result = self._attempt(V, edges, src, tgt, out_edges, relations, L, budget)
            if result is not None:
                break
            L *= 2
            if L > max_length:
                raise BudgetExceeded("homotopy category did not stabilise (infinite or too large)")
        classes, rep = result
        self._rep = rep
        objs = V
        mor = {}
        ident = {}
        for cls, (start, p) in rep.items():
            end = start if not p else tgt[p[-1]]
            mor[(start, p)] = (start, end)
        for v in V:
            ident[v] = (v, ())
        self._class_of = classes
        table = {}
        by_dom: Dict = {}
        for m, (a, b) in mor.items():
            by_dom.setdefault(a, []).append(m)
        for f, (a, b) in mor.items():
            for g in by_dom.get(b, ()):
                table[(g, f)] = self._canon(f[0], f[1] + g[1])
        self._tgt = tgt
        super().__init__(objs, mor, ident, table, label=f"h({S.label})")

    def _attempt(self, V, edges, src, tgt, out_edges, relations, L, budget):
        paths: Dict[Tuple, int] = {}
        by_len: List[List] = [[(v, ()) for v in V]]
        allp = list(by_len[0])
        for n in range(1, L + 1):
            nxt = []
            for (s, p) in by_len[-1]:
                end = s if not p else tgt[p[-1]]
                for e in out_edges.get(end, ()):
                    nxt.append((s, p + (e,)))
            by_len.append(nxt)
            allp.extend(nxt)
            if len(allp) > budget:
                raise BudgetExceeded("homotopy category path enumeration exceeds budget")
        for i, p in enumerate(allp):
            paths[p] = i
        parent = list(range(len(allp)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)

        ends = {}
        for (s, p) in allp:
            ends[(s, p)] = s if not p else tgt[p[-1]]
        into: Dict = {}
        for (s, p) in allp:
            into.setdefault(ends[(s, p)], []).append((s, p))
        outof: Dict = {}
        for (s, p) in allp:
            outof.setdefault(s, []).append((s, p))
        for (start, lhs, rhs) in relations:
            end = start if not lhs else tgt[lhs[-1]]
            m = max(len(lhs), len(rhs))
            for (s, u) in into.get(start, ()):
                if len(u) + m > L:
                    continue
                for (_, w) in outof.get(end, ()):
                    if len(u) + m + len(w) > L:
                        continue
                    union(paths[(s, u + lhs + w)], paths[(s, u + rhs + w)])
        M = L // 2
        classes: Dict = {}
        rep: Dict = {}
        for p in allp:
            r = find(paths[p])
            if r not in rep or (len(p[1]), name(p)) < (len(rep[r][1]), name(rep[r])):
                rep[r] = p
        for r, p in rep.items():
            if len(p[1]) > M:
                return None
        for p in allp:
            classes[p] = rep[find(paths[p])]
        return classes, {r: p for r, p in rep.items()}

    def _canon(self, start, p):
        key = (start, p)
        if key in self._class_of:
            return self._class_of[key]
        raise BudgetExceeded("composite outside the enumerated path range")

    def class_of_path(self, start, p: Tuple):
        return self._canon(start, tuple(p))

    def class_of_edge(self, x: Simplex):
        S = self.sset
        if not x.nondegenerate:
            v = S.vertex(x, 0)
            return (v, ())
        return self._canon(S.vert[x.base][0], (x.base,))


def homotopy_cat(S: SSet) -> HomotopyCat:
    return HomotopyCat(S)


def homotopy_functor(f: SMap, hS: HomotopyCat, hT: HomotopyCat) -> CFunctor:
    S, T = f.source, f.target
    obj = {v: f.on_vertex(v) for v in hS.objects}
    mor = {}
    for m in hS.morphisms:
        start, p = m
        img = []
        for e in p:
            y = f.assign[e]
            if y.nondegenerate:
                img.append(y.base)
        mor[m] = hT.class_of_path(obj[start], tuple(img))
    return CFunctor(hS, hT, obj, mor)
