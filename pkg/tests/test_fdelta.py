import random

import pytest
from hypothesis import given, strategies as st

from rigged.fdelta import (EMap, ESSet, chordate, diagonal, diagonal_fillers, ehom, eopposite, epullback, eproduct,
                           factorize, find_eisomorphism, inchordate, is_ffiov, is_surjective_on_vertices,
                           jointly_reflects, tight_simplex)
from rigged.generators import random_map, random_tight, small_targets
from rigged.sset import (SMap, Simplex, boundary, disjoint_union, enumerate_maps, full_subcomplex, identity_map,
                         is_isomorphism, simplex_map, std_simplex)


def test_tight_part_is_full_span():
    E = tight_simplex(2, [0, 2])
    St, inc = E.tight_part()
    assert St.counts() == (2, 1)
    assert is_ffiov(inc)
    assert chordate(std_simplex(1)).tight == frozenset({(0,), (1,)})
    assert inchordate(std_simplex(1)).tight == frozenset()


def test_ffiov_examples():
    D2 = std_simplex(2)
    _, inc = full_subcomplex(D2, [(0,), (1,)])
    assert is_ffiov(inc)
    bd, i = boundary(2)
    assert not is_ffiov(i)
    U = disjoint_union(std_simplex(0), std_simplex(0))
    fold = SMap(U, std_simplex(0), {c: Simplex((0,), (0,)) for c in U.all_cells()})
    assert not is_ffiov(fold)


def test_factorize_examples():
    D1 = std_simplex(1)
    l, r = factorize(identity_map(D1))
    assert is_isomorphism(l)
    const = simplex_map((0, 0), 1)
    l, r = factorize(const)
    assert l.target.counts() == (1,)
    U = disjoint_union(std_simplex(0), std_simplex(0))
    f = SMap(U, D1, {c: Simplex((i,), (0,)) for i, c in enumerate(sorted(U.all_cells(), key=str))})
    l, r = factorize(f)
    assert l.target.counts() == (2, 1)
    assert is_surjective_on_vertices(l) and not set(l.assign.values()) >= set(l.target.simplices(1))


@given(st.integers(0, 10 ** 6))
def test_factorization_and_unique_fillers(seed):
    rng = random.Random(seed)
    targets = small_targets()
    A, B = rng.choice([std_simplex(1), boundary(2)[0], std_simplex(2)]), rng.choice(targets)
    f = random_map(A, B, rng)
    if f is None:
        return
    l, r = factorize(f)
    assert is_surjective_on_vertices(l) and is_ffiov(r) and l.then(r) == f
    fills = diagonal_fillers(l, r, l, r)
    assert len(fills) == 1 and diagonal(l, r, l, r) == fills[0]


def test_ehom_examples():
    T = tight_simplex(1, [1])
    E = ehom(chordate(std_simplex(0)), T, 1, verify=True)
    assert find_eisomorphism(E, T) is not None
    D1 = std_simplex(1)
    E = ehom(inchordate(D1), chordate(D1), 0, verify=True)
    assert len(E.loose.vertices) == 3 and len(E.tight) == 3
    E = ehom(chordate(D1), chordate(D1), 0, verify=True)
    assert len(E.loose.vertices) == 3 and len(E.tight) == 3


def test_ehom_pullback_formula_on_random_pairs():
    rng = random.Random(3)
    for _ in range(10):
        S = random_tight(rng.choice([std_simplex(1), boundary(2)[0]]), rng)
        T = random_tight(rng.choice(small_targets()[:6]), rng)
        ehom(S, T, 1, verify=True)


def test_products_and_pullbacks_tightness():
    D1 = std_simplex(1)
    P = eproduct(chordate(D1), chordate(D1))
    assert P.tight == frozenset(P.loose.vertices)
    P = eproduct(inchordate(D1), chordate(D1))
    assert not P.tight
    pt = chordate(std_simplex(0))
    f = EMap(pt, pt, identity_map(pt.loose))
    Q = epullback(f, f)
    assert len(Q.loose.vertices) == 1 and len(Q.tight) == 1


def test_eopposite():
    E = tight_simplex(2, [2])
    O = eopposite(E)
    assert eopposite(O).tight == E.tight
    e = next(c for c in O.loose.cells[1] if set(c) == {0, 2})
    assert O.loose.vert[e][0] == (2,)
    bd = ESSet(boundary(1)[0], [(1,)])
    Ob = eopposite(bd)
    assert Ob.tight == frozenset({(1,)}) and len(Ob.loose.vertices) == 2


def test_product_projections_jointly_reflect_tightness():
    rng = random.Random(0)
    probes = [tight_simplex(0, []), tight_simplex(0, [0]), tight_simplex(1, [1]), chordate(std_simplex(1))]
    for _ in range(5):
        S = random_tight(rng.choice(small_targets()), rng)
        T = random_tight(rng.choice(small_targets()), rng)
        E = eproduct(S, T)
        for X in probes:
            ok, n = jointly_reflects(E, list(E.projections), X)
            assert ok and n == len(list(enumerate_maps(X.loose, E.loose)))
