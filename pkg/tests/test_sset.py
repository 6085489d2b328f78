import itertools

import pytest
from hypothesis import given, strategies as st

from rigged.catkit.category import FunctorCat, linear_order
from rigged.catkit.nerve import Nerve
from rigged.sset import (SMap, boundary, count_maps, disjoint_union, empty_sset, enumerate_maps, find_isomorphism,
                         horn, identity_map, is_isomorphism, join_cone, join_cocone, monotone_maps, opposite,
                         product, pullback, pushout_mono, simplex_map, std_simplex, subcomplex, truncated_hom)


@pytest.mark.parametrize("n,counts", [(0, (1,)), (2, (3, 3, 1)), (3, (4, 6, 4, 1))])
def test_std_simplex_counts(n, counts):
    assert std_simplex(n).counts() == counts


@pytest.mark.parametrize("n,counts", [(1, (2,)), (2, (3, 3)), (3, (4, 6, 4))])
def test_boundary_counts(n, counts):
    bd, inc = boundary(n)
    assert bd.counts() == counts
    inc.check()


def test_horn_misses_one_face():
    L, _ = horn(2, 1)
    assert L.counts() == (3, 2)
    assert (0, 2) not in L.dim_of


def test_product_square_and_prism():
    D1, D2 = std_simplex(1), std_simplex(2)
    assert product(D1, D1).counts() == (4, 5, 2)
    assert product(D2, D1).counts()[3] == 3
    S = horn(2, 0)[0]
    p1, _ = product(S, std_simplex(0)).projections
    assert is_isomorphism(p1)


def test_product_projections_are_maps():
    P = product(boundary(2)[0], std_simplex(1))
    for p in P.projections:
        p.check()


def test_join_cone():
    assert find_isomorphism(join_cone(empty_sset())[0], std_simplex(0)) is not None
    K, _ = join_cone(boundary(1)[0])
    assert K.counts() == (3, 2)
    assert find_isomorphism(join_cone(std_simplex(1))[0], std_simplex(2)) is not None
    assert find_isomorphism(join_cocone(std_simplex(1))[0], std_simplex(2)) is not None


def test_opposite_is_an_involution():
    S = product(std_simplex(1), horn(2, 1)[0])
    Soo = opposite(opposite(S))
    assert Soo.counts() == S.counts()
    assert Soo.faces == S.faces
    N = Nerve(linear_order(1), 2)
    No = opposite(N)
    e = N.cells[1][0]
    assert No.vert[e] == tuple(reversed(N.vert[e]))


def test_pullbacks():
    D1 = std_simplex(1)
    idm = identity_map(D1)
    P = pullback(idm, idm)
    assert P.counts() == D1.counts()
    v0, v1 = simplex_map((0,), 1), simplex_map((1,), 1)
    assert pullback(v0, v1).size() == 0


def test_pushout_of_square_boundary():
    D1 = std_simplex(1)
    bd1, i = boundary(1)
    A = product(D1, bd1)
    B = product(bd1, D1)
    Z = product(bd1, bd1)
    fa = SMap(Z, A, {z: A.ident(z) for z in Z.all_cells()})
    fb = SMap(Z, B, {z: B.ident(z) for z in Z.all_cells()})
    P = pushout_mono(fa, fb)
    assert P.counts() == (4, 4)
    assert disjoint_union(D1, D1).counts() == (4, 2)


def test_attach_triangle_along_boundary():
    bd, inc = boundary(2)
    P = pushout_mono(identity_map(bd), inc)
    assert find_isomorphism(P, std_simplex(2)) is not None


def test_enumerate_maps_small_counts():
    T = horn(2, 1)[0]
    assert len(list(enumerate_maps(std_simplex(0), T))) == len(T.vertices)
    assert len(list(enumerate_maps(std_simplex(1), std_simplex(1)))) == 3
    # maps bd(Delta^2) -> Delta^1 are the monotone vertex assignments that extend on edges
    brute = [v for v in itertools.product(range(2), repeat=3) if v[0] <= v[1] <= v[2]]
    assert count_maps(boundary(2)[0], std_simplex(1)) == len(brute)


def test_truncated_hom():
    T = horn(2, 1)[0]
    H = truncated_hom(std_simplex(0), T, 1)
    assert H.counts() == T.counts()
    assert truncated_hom(std_simplex(1), std_simplex(1), 0).counts() == (3,)


def test_truncated_hom_into_nerve_matches_functor_category():
    P = linear_order(1)
    H = truncated_hom(std_simplex(1), Nerve(P, 2), 2)
    FC = FunctorCat(linear_order(1), P)
    assert find_isomorphism(H, Nerve(FC, 2)) is not None


@given(st.integers(0, 3), st.integers(0, 3))
def test_monotone_map_counts(m, n):
    from math import comb
    assert len(monotone_maps(m, n)) == comb(m + n + 1, m + 1)


@given(st.integers(0, 2), st.integers(0, 2))
def test_simplex_maps_compose(m, n):
    for theta in monotone_maps(m, n):
        f = simplex_map(theta, n)
        f.check()
        assert f.then(identity_map(std_simplex(n))) == f


def test_subcomplex_keeps_faces():
    D = std_simplex(2)
    S, inc = subcomplex(D, [(0,), (1,), (0, 1)])
    assert S.counts() == (2, 1)
    inc.check()
