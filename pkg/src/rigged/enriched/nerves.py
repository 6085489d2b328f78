"""Enhanced simplicial categories whose homs are nerves of functor categories.

hom(i, j) = N(Fun(C_i, C_j)) truncated at k, with the tight vertices picked by
a predicate on functors.  Composition of n-cells is horizontal composition of
chains of natural transformations.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, Optional, Sequence

from ..catkit.category import CFunctor, FinCat, FunctorCat
from ..catkit.nerve import Nerve
from ..fdelta import ESSet
from ..sset import Simplex
from .ecat import DEFAULT_K, ECat

TightSel = Callable[[int, int, CFunctor], bool]


def preserves_marking(marks: Sequence) -> TightSel:
    """Tight functors send marked objects to marked objects."""
    sets = [set(m) for m in marks]

    def sel(i, j, F):
        return all(F.obj[a] in sets[j] for a in sets[i])

    return sel


def horizontal(FC_ab: FunctorCat, FC_bc: FunctorCat, g_mor, f_mor):
    """beta * alpha as a morphism of Fun(A, C), for alpha in Fun(A, B), beta in Fun(B, C)."""
    A, C = FC_ab.A, FC_bc.B
    F = FC_ab.functor[FC_ab.dom(f_mor)]
    F2 = FC_ab.functor[FC_ab.cod(f_mor)]
    G = FC_bc.functor[FC_bc.dom(g_mor)]
    G2 = FC_bc.functor[FC_bc.cod(g_mor)]
    comps = []
    for i, x in enumerate(A.objects):
        a_x = f_mor[2][i]
        b_y = g_mor[2][FC_bc.A.objects.index(F2.obj[x])]
        comps.append(C.comp(b_y, G.morph[a_x]))
    return (F.then(G).key, F2.then(G2).key, tuple(comps))


class NerveECat(ECat):
    def __init__(self, cats: Sequence[FinCat], tight_sel: Optional[TightSel], k: int, budget: Optional[int]):
        self.cats = list(cats)
        idx = list(range(len(cats)))
        self.funcats: Dict = {}
        self.nerves: Dict = {}
        hom = {}
        for i, j in itertools.product(idx, repeat=2):
            FC = FunctorCat(cats[i], cats[j]) if budget is None else FunctorCat(cats[i], cats[j], budget)
            N = Nerve(FC, k, budget=budget)
            self.funcats[(i, j)] = FC
            self.nerves[(i, j)] = N
            tight = [key for key in FC.objects if tight_sel is None or tight_sel(i, j, FC.functor[key])]
            hom[(i, j)] = ESSet(N, tight)
        ident = {}
        for i in idx:
            FC = self.funcats[(i, i)]
            ident[i] = tuple(o for o in FC.objects
                             if all(FC.functor[o].obj[a] == a for a in cats[i].objects)
                             and all(FC.functor[o].morph[f] == f for f in cats[i].morphisms))[0]
        super().__init__(idx, hom, self._compose_cells, ident, k, label="N[" + ",".join(c.label for c in cats) + "]")

    def _compose_cells(self, a, b, c, g: Simplex, f: Simplex) -> Simplex:
        Nab, Nbc, Nac = self.nerves[(a, b)], self.nerves[(b, c)], self.nerves[(a, c)]
        FCab, FCbc = self.funcats[(a, b)], self.funcats[(b, c)]
        sf, mf = Nab.chain_of(f)
        sg, mg = Nbc.chain_of(g)
        start = FCab.functor[sf].then(FCbc.functor[sg]).key
        morphs = [horizontal(FCab, FCbc, gm, fm) for gm, fm in zip(mg, mf)]
        return Nac.simplex_of_chain(start, morphs)

    def functor_cell(self, i, j, F: CFunctor) -> Simplex:
        return Simplex(F.key, (0,))


def nerve_ecat(cats: Sequence[FinCat], tight_sel: Optional[TightSel] = None, k: int = DEFAULT_K,
               budget: Optional[int] = None) -> NerveECat:
    """Objects are the categories; hom(i, j) = N(Fun(C_i, C_j)) with tight vertices chosen by ``tight_sel``."""
    return NerveECat(cats, tight_sel, k, budget)
