"""The shape D^n with one tight boundary vertex and the weight Psi on it.

D^n has two objects x, y with hom(x, y) the boundary of Delta^n, where only the
terminal vertex [n] is tight.  Psi sends x to a chordate point and y to Delta^n
with [n] tight; a cell c of the boundary acts by the inclusion of c.
"""

from __future__ import annotations

from typing import Dict, Optional

from ..fdelta import ESSet, chordate, tight_simplex
from ..sset import Simplex, SMap, SSet, boundary, identity_map, product, seq_simplex, std_simplex
from .ecat import DEFAULT_K, ECat, FdFunctor, constant_action

X, Y = "x", "y"
ID = (0,)


def _point() -> ESSet:
    return chordate(std_simplex(0))


def dcat_rigged(n: int, k: int = DEFAULT_K, tight_vertex: Optional[int] = None) -> ECat:
    """D^n with the vertex [n] (or ``tight_vertex``) of hom(x, y) tight."""
    if n < 0:
        raise ValueError("n must be >= 0")
    tv = n if tight_vertex is None else tight_vertex
    bd, _ = boundary(n)
    empty = SSet({}, {}, label="empty")
    hom = {
        (X, X): _point(),
        (Y, Y): _point(),
        (X, Y): ESSet(bd, [(tv,)] if n > 0 else []),
        (Y, X): ESSet(empty, []),
    }

    def compose(a, b, c, g, f):
        if a == b:
            return g
        if b == c:
            return f
        raise ValueError("no composable non-identity pair in D^n")

    E = ECat([X, Y], hom, compose, {X: ID, Y: ID}, k, label=f"D{n}")
    E.n = n
    return E


def _identity_actions(S: ESSet) -> Dict:
    return {ID: constant_action(0, S.loose, S.loose, identity_map(S.loose))}


def boundary_action(c: tuple, n: int) -> SMap:
    """Delta^m x Delta^0 -> Delta^n given by the cell c of the boundary."""
    m = len(c) - 1
    P = product(std_simplex(m), std_simplex(0))
    out = {}
    for cell in P.all_cells():
        a, _, al, _ = cell
        out[cell] = seq_simplex([c[a[t]] for t in al])
    return SMap(P, std_simplex(n), out)


def weight_terminal_rigged(n: int, k: int = DEFAULT_K, E: Optional[ECat] = None) -> FdFunctor:
    E = E or dcat_rigged(n, k)
    tv = E.hom[(X, Y)].tight
    pos = [v[0] for v in tv] if n > 0 else [n]
    values = {X: _point(), Y: tight_simplex(n, pos)}
    bd = E.hom[(X, Y)].loose
    action = {
        (X, X): _identity_actions(values[X]),
        (Y, Y): _identity_actions(values[Y]),
        (X, Y): {c: boundary_action(c, n) for c in bd.all_cells()},
        (Y, X): {},
    }
    return FdFunctor(E, values, action, label=f"Psi{n}")


def diagram_functor(E: ECat, S: ESSet, T: ESSet, Dbar: SMap) -> FdFunctor:
    """x -> S, y -> T; the cell c of the boundary acts by (u, s) -> Dbar(s, c . u)."""
    bd = E.hom[(X, Y)].loose
    Q = Dbar.source
    acts = {}
    for c in bd.all_cells():
        m = bd.dim_of[c]
        P = product(std_simplex(m), S.loose)
        cs = bd.ident(c)
        out = {}
        for cell in P.all_cells():
            u, s = P.split(P.ident(cell))
            cu = bd.apply(cs, tuple(u.base[t] for t in u.surj))
            out[cell] = Dbar(Q.pair(s, cu))
        acts[c] = SMap(P, T.loose, out)
    action = {
        (X, X): _identity_actions(S),
        (Y, Y): _identity_actions(T),
        (X, Y): acts,
        (Y, X): {},
    }
    return FdFunctor(E, {X: S, Y: T}, action, label="F_D")
