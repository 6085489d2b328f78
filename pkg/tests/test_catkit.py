import pytest

from rigged.catkit.adjunction import (CSquare, NotIsofibration, is_isofibration, is_lali, is_lali_morphism,
                                      is_rali, la_iff_lali_check, mate_of_square, search_right_adjoint)
from rigged.catkit.category import (CFunctor, arrow_cat, comma, discrete, find_cat_isomorphism, find_functors,
                                    identity_functor, linear_order, product_cat, terminal_cat, to_terminal)
from rigged.catkit.fibration import cart_check, is_grothendieck_fibration, jlim_check
from rigged.catkit.nerve import homotopy_cat, nerve
from rigged.catkit.pullback_la import PreconditionError, pullback_la
from rigged.generators import small_categories
from rigged.sset import boundary, empty_sset, find_isomorphism, product, std_simplex

ARROW = linear_order(1)


def _cats(*labels):
    by = {c.label: c for c in small_categories()}
    return [by[x] for x in labels]


def test_small_categories_are_categories():
    for C in small_categories():
        C.check()


def test_nerve_of_arrow_is_simplex():
    N = nerve(ARROW, 3)
    assert find_isomorphism(N, std_simplex(1)) is not None


def test_homotopy_cat_of_square():
    D1 = std_simplex(1)
    h = homotopy_cat(product(D1, D1))
    assert find_cat_isomorphism(h, product_cat(ARROW, ARROW)) is not None


def test_homotopy_cat_of_nerve_recovers_category():
    for C in _cats("V", "Z2", "Split"):
        assert find_cat_isomorphism(homotopy_cat(nerve(C, 3)), C) is not None


def test_functor_counts():
    assert len(list(find_functors(ARROW, ARROW))) == 3
    assert len(list(find_functors(linear_order(2), ARROW))) == 4


def test_arrow_to_point_is_lali_and_rali():
    p = to_terminal(ARROW)
    adj = is_lali(p)
    assert adj is not None and adj.triangles_hold()
    assert list(adj.right.obj.values()) == [1]
    assert is_rali(p) is not None


def test_right_adjoint_search():
    p = to_terminal(ARROW)
    adj = search_right_adjoint(p)
    assert adj is not None
    (b,) = terminal_cat().objects
    assert adj.right.obj[b] == 1
    # discrete two objects has no terminal object
    assert search_right_adjoint(to_terminal(discrete([0, 1]))) is None


def test_lali_needs_isofibration():
    (I2,) = _cats("I2")
    T = terminal_cat()
    pick = CFunctor(T, I2, {x: 0 for x in T.objects}, {m: I2.ident(0) for m in T.morphisms})
    assert not is_isofibration(pick)
    with pytest.raises(NotIsofibration):
        is_lali(pick)


def test_comma_of_identity_over_arrow():
    K = comma(identity_functor(ARROW), identity_functor(ARROW))
    assert len(K.objects) == 3
    assert K.size() == arrow_cat(ARROW).size()


def test_la_iff_lali_examples():
    for C in _cats("[1]", "V", "2", "Z2"):
        rep = la_iff_lali_check(to_terminal(C))
        assert rep.ok
        assert rep.left_adjoint == (search_right_adjoint(to_terminal(C)) is not None)


def test_identity_square_is_lali_morphism():
    p = to_terminal(ARROW)
    I = identity_functor
    sq = CSquare(I(ARROW), I(p.target), p, p)
    ok, wit = is_lali_morphism(sq)
    assert ok and wit is None


def test_mate_of_non_lali_morphism():
    # picking the initial endpoint gives a mate component 0 -> 1
    p = to_terminal(ARROW)
    T = p.target
    idT = identity_functor(T)
    top = CFunctor(T, ARROW, {x: 0 for x in T.objects}, {m: ARROW.ident(0) for m in T.morphisms})
    sq = CSquare(top, idT, idT, p)
    ok, wit = is_lali_morphism(sq)
    assert not ok and wit is not None
    mate = mate_of_square(sq, is_lali(idT), is_lali(p))
    assert mate.non_iso_components()


def test_domain_projection_is_fibration():
    for C in _cats("[1]", "V", "Z2"):
        A = arrow_cat(C)
        assert is_grothendieck_fibration(A.p_A)
        assert cart_check(A.p_A).agree


def test_cart_check_on_family():
    for C in _cats("[1]", "2", "V", "L"):
        rep = cart_check(to_terminal(C))
        assert rep.fibration and rep.agree


def test_jlim_empty_shape_is_terminal():
    for C in _cats("[1]", "2", "V", "L"):
        rep = jlim_check(C, empty_sset())
        has_terminal = search_right_adjoint(to_terminal(C)) is not None
        assert rep.has_limits == has_terminal
        assert rep.agree


def test_jlim_products_and_shapes():
    bd, _ = boundary(1)
    (arrow,) = _cats("[1]")
    (two,) = _cats("2")
    assert jlim_check(arrow, bd).res_lali
    assert not jlim_check(two, bd).res_lali
    assert jlim_check(two, bd).agree


def _minimal_counterexample():
    T = terminal_cat()
    idT = identity_functor(T)
    F = CSquare(idT, idT, idT, idT)
    b = to_terminal(ARROW)
    G = CSquare(b, idT, b, idT)
    return F, G


def test_pullback_la_identity_case():
    T = terminal_cat()
    idT = identity_functor(T)
    F = CSquare(idT, idT, idT, idT)
    P, adj, rep = pullback_la(F, F, probes=[(idT, is_lali(idT))])
    assert rep.triangles and rep.oracle_iso and rep.projection_mate_iso and rep.reflection_ok
    assert rep.ok


def test_pullback_la_reflection_counterexample():
    # p_A q is a morphism of lalis for every probe but q itself is not
    F, G = _minimal_counterexample()
    T = terminal_cat()
    idT = identity_functor(T)
    P, adj, rep = pullback_la(F, G, probes=[(idT, is_lali(idT))])
    assert rep.triangles and rep.oracle_exists and rep.oracle_iso
    assert rep.projection_mate_iso and all(rep.equations.values())
    assert rep.reflection_probes >= 2
    assert rep.reflection_ok is False


def test_pullback_la_rejects_non_left_adjoint():
    T = terminal_cat()
    idT = identity_functor(T)
    F = CSquare(idT, idT, idT, idT)
    b = to_terminal(discrete([0, 1]))
    G = CSquare(b, idT, b, idT)
    with pytest.raises(PreconditionError):
        pullback_la(F, G)
