"""The smallest instance where the pullback projection fails to reflect morphisms of left adjoints.

A = C = the terminal category with F the identity square, B = ([1] -> [0])
with G its square to C.  The pullback P is B itself.  For the probe X = the
identity of [0], every square q: X -> P has p_A q a morphism of left adjoints
(its mate lives in the terminal category), but the square picking 0 in [1]
has mate component 0 -> 1, which is not invertible.  The B-component of the
mate lies over an isomorphism under G1, and G1 = [1] -> [0] is not conservative.
"""

from rigged.catkit.adjunction import CSquare, is_lali, mate_of_square
from rigged.catkit.category import identity_functor, linear_order, terminal_cat, to_terminal
from rigged.catkit.pullback_la import PullbackLa, probe_squares
from rigged.sset import name


def main():
    T = terminal_cat()
    idT = identity_functor(T)
    F = CSquare(idT, idT, idT, idT)
    b = to_terminal(linear_order(1))
    G = CSquare(b, idT, b, idT)
    con = PullbackLa(F, G)
    adjX = is_lali(idT)
    rep = con.report(probes=[(idT, adjX)])
    print("triangles:", rep.triangles, " oracle agrees:", rep.oracle_iso,
          " projection mate iso:", rep.projection_mate_iso, " equations:", all(rep.equations.values()))
    for q in probe_squares(idT, con.P):
        full = mate_of_square(q, adjX, con.adjunction)
        down = mate_of_square(q.then(con.sqA), adjX, con.adjs["A"])
        picks = [name(v) for v in q.top.obj.values()]
        comps = {name(k): name(v) for k, v in full.comp.items()}
        print(f"q picks {picks}: mate {comps} iso={full.is_iso()}; after p_A iso={down.is_iso()}")
    print("reflection holds:", rep.reflection_ok)


if __name__ == "__main__":
    main()
