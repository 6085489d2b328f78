import pytest

from rigged.catkit.adjunction import CSquare
from rigged.catkit.category import CFunctor, identity_functor, linear_order, terminal_cat, to_terminal
from rigged.catkit.nerve import nerve, nerve_map
from rigged.generators import kronecker, rins_squares, small_categories
from rigged.lifting import (attachment_chain, is_universal_element, lali_morphism_via_universal,
                            lali_via_universal, lifting_witness, prism_complement_cells, rins_lali_instance_check,
                            solve_lift, terminal_vertex, universal_elements, universal_iso_closure)

ARROW = linear_order(1)


def test_arrow_to_point_has_universal_top():
    assert universal_elements(to_terminal(ARROW)) == [1]


def test_identity_makes_everything_universal():
    for C in small_categories()[:8]:
        assert set(universal_elements(identity_functor(C))) == set(C.objects)


def test_kronecker_witnesses():
    K = kronecker()
    p = nerve_map(to_terminal(K), nerve(K, 3), nerve(terminal_cat(), 3))
    # nothing maps from b to a
    wa = lifting_witness(p, "a")
    assert wa is not None and wa.n == 1
    # two parallel arrows: the horn (id_a, s, t) has no filler
    wb = lifting_witness(p, "b")
    assert wb is not None and wb.n == 2
    assert solve_lift(wb) is None
    assert not is_universal_element(to_terminal(K), "b")


def test_lali_via_universal_agrees_with_adjoint_search():
    for C in small_categories():
        rep = lali_via_universal(to_terminal(C))
        assert rep.agree
        assert universal_iso_closure(to_terminal(C))


def test_lali_morphism_via_universal():
    p = to_terminal(ARROW)
    T = p.target
    idT = identity_functor(T)
    good = CSquare(identity_functor(ARROW), idT, p, p)
    assert lali_morphism_via_universal(good).morphism
    bad_top = CFunctor(T, ARROW, {x: 0 for x in T.objects}, {m: ARROW.ident(0) for m in T.morphisms})
    assert not lali_morphism_via_universal(CSquare(bad_top, idT, idT, p)).morphism


@pytest.mark.parametrize("n,m,cells", [(0, 1, 1), (1, 1, 3), (1, 2, 5), (2, 2, 13)])
def test_prism_complement_counts(n, m, cells):
    cs = prism_complement_cells(n, m)
    assert len(cs) == cells
    assert all(terminal_vertex(c) == (n, m) for c in cs)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_attachment_rebuilds_prism(n, m):
    rep = attachment_chain(n, m)
    assert rep.ok
    assert sum(c for _, c in rep.layers) == rep.cells


def test_rins_lali_on_squares():
    for sq in rins_squares(seed=2, count=3):
        rep = rins_lali_instance_check(sq)
        assert rep.ok and rep.problems_solved > 0
