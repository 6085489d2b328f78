from dataclasses import replace

import pytest

from rigged.catkit.category import linear_order
from rigged.enriched.ecat import (constant_weight, duality_limit_check, ecat_co, limit_reflects_tightness,
                                  nat_object, terminal_ecat)
from rigged.enriched.monads import (MonadLawError, em_algebras, em_universal_property_check, em_weight,
                                    identity_monad, mnd_ecat)
from rigged.enriched.rigged_weight import dcat_rigged
from rigged.fdelta import chordate, inchordate, tight_simplex
from rigged.generators import closure_monads, group_monads
from rigged.sset import boundary, std_simplex


@pytest.mark.parametrize("n", [0, 1, 2])
def test_dcat_rigged_homs(n):
    D = dcat_rigged(n)
    D.check()
    x, y = D.objects
    H = D.hom[(x, y)]
    assert H.loose.counts() == boundary(n)[0].counts()
    assert len(H.tight) == (1 if n > 0 else 0)
    assert D.hom[(y, x)].loose.counts() == ()


def test_mnd_hom_is_truncated_ordinal_nerve():
    M = mnd_ecat(k=2, bound=4)
    M.check()
    (H,) = M.hom.values()
    assert H.loose.counts()[0] == 5
    assert H.tight == frozenset({0})


def test_em_weight_action():
    W = em_weight(k=2, bound=4)
    assert W.value.counts()[0] == 4
    assert W.value.tight == frozenset({1})
    assert W.check() > 0
    H, N = W.hom, W.value.loose
    # on vertices the action is [m] + [q] = [m + q]
    for x in H.simplices(0):
        for w in N.simplices(0):
            (m,), (q,) = H.vertex_tuple(x), N.vertex_tuple(w)
            if m + q <= W.bound:
                assert N.vertex_tuple(W.act(x, w)) == (m + q,)


@pytest.mark.parametrize("J,T,counts,tight", [
    (chordate(std_simplex(0)), chordate(std_simplex(1)), (2, 1), 2),
    (chordate(boundary(1)[0]), chordate(std_simplex(1)), (4, 5, 2), 4),
    (inchordate(boundary(1)[0]), tight_simplex(1, [0]), (4, 5, 2), 4),
    (chordate(std_simplex(1)), tight_simplex(1, [0]), (3, 3, 1), 1),
])
def test_powers(J, T, counts, tight):
    E = terminal_ecat(2)
    L = nat_object(constant_weight(E, J), constant_weight(E, T), 2)
    assert L.counts() == counts
    assert len(L.tight) == tight


def test_power_duality_and_reflection():
    E = terminal_ecat(2)
    J, T = chordate(boundary(1)[0]), tight_simplex(2, [0, 2])
    W, F = constant_weight(E, J), constant_weight(E, T)
    assert duality_limit_check(W, F, 2).isomorphic
    L = nat_object(W, F, 2)
    ok, n = limit_reflects_tightness(L, [tight_simplex(1, [0]), chordate(std_simplex(1))], max_probes=30)
    assert ok and n > 0


def test_co_is_an_involution_on_homs():
    D = dcat_rigged(2)
    C2 = ecat_co(ecat_co(D))
    C2.check()
    for ab, H in D.hom.items():
        assert C2.hom[ab].loose.counts() == H.loose.counts()
        assert len(C2.hom[ab].tight) == len(H.tight)


def test_identity_monad_algebras():
    M = identity_monad(linear_order(1))
    assert len(em_algebras(M).cat.objects) == 2
    assert em_universal_property_check(M).ok


def test_idempotent_monad_has_one_algebra():
    (_, top) = closure_monads(linear_order(1))
    assert top.T.obj == {0: 1, 1: 1}
    em = em_algebras(top)
    assert len(em.cat.objects) == 1
    rep = em_universal_property_check(top)
    assert rep.ok and rep.algebras == 1


def test_group_monad_algebras():
    for M in group_monads():
        M.check()
        assert len(em_algebras(M).cat.objects) == 1
        assert em_universal_property_check(M).ok


def test_monad_law_violation_is_rejected():
    # on Z3 the multiplication must be g^-1, so g itself breaks the unit law
    M = group_monads()[1]
    bad = replace(M, mu=M.eta, _powers={}, _nu={}, _act={})
    with pytest.raises(MonadLawError):
        bad.check()
