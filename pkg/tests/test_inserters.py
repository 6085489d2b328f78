import pytest

from rigged.catkit.category import linear_order
from rigged.enriched.monads import identity_monad
from rigged.fdelta import chordate, tight_simplex
from rigged.generators import closure_monads, monad_instances, random_rigged_diagrams
from rigged.inserters import (InvalidDiagram, constant_prism, diagram_from_cells, em_chain_demo, evaluation,
                              power_inchordate, rins_agreement, rins_duality, rins_initial_check, rins_pullback,
                              rins_reflects_tightness, specialize)
from rigged.sset import boundary, product, simplex_map, std_simplex

PT = chordate(std_simplex(0))
ARROW = chordate(std_simplex(1))


def point(v):
    return simplex_map([v], 1)


def test_zero_inserter_is_product():
    sp = specialize("product", S=ARROW, T=tight_simplex(1, [1]))
    assert sp.R.counts() == (4, 5, 2)
    # tight pairs: both vertices of S against the one tight vertex of T
    assert len(sp.R.tight) == 2


@pytest.mark.parametrize("f,g,vertices", [(0, 1, 1), (1, 1, 1), (0, 0, 1), (1, 0, 0)])
def test_inserter_of_points(f, g, vertices):
    sp = specialize("inserter", S=PT, T=ARROW, f=point(f), g=point(g))
    assert sp.R.counts()[:1] == ((vertices,) if vertices else ())


def test_comma_of_identities_is_arrow_category():
    ident = simplex_map([0, 1], 1)
    sp = specialize("comma", A=ARROW, B=ARROW, C=ARROW, f=ident, g=ident)
    assert sp.R.counts() == (3, 3, 1)
    assert set(sp.projections) == {"p1", "p2", "phi"}
    for h in sp.projections.values():
        h.check()


def test_equifier_of_equal_edges():
    f, g = point(0), point(1)
    edge = product(PT.loose, std_simplex(1)).projections[1]
    sp = specialize("equifier", S=PT, T=ARROW, f=f, g=g, alpha=edge, beta=edge)
    assert sp.R.counts()[0] == 1


def test_non_tight_leg_is_rejected():
    T = tight_simplex(1, [0])
    with pytest.raises(InvalidDiagram):
        diagram_from_cells(PT, T, 1, {(0,): constant_prism(point(0), 0), (1,): constant_prism(point(1), 0)})


def test_power_inchordate_of_boundary():
    bd, _ = boundary(1)
    P = power_inchordate(ARROW, bd)
    assert P.hom.counts() == (4, 5, 2)
    assert len(P.tight) == 4
    ev = evaluation(P, ARROW, (0,))
    ev.underlying.check()


@pytest.mark.parametrize("n", [0, 1, 2])
def test_agreement_on_random_diagrams(n):
    for d in random_rigged_diagrams(n, 6, seed=3):
        assert rins_agreement(d).ok


@pytest.mark.parametrize("n", [1, 2])
def test_duality_on_random_diagrams(n):
    for d in random_rigged_diagrams(n, 4, seed=5):
        R = rins_pullback(d)
        assert rins_duality(d, H_full=R.H_full).isomorphic
    for d in random_rigged_diagrams(n, 4, seed=5, terminal=False):
        rep = rins_initial_check(d)
        assert rep.isomorphic and rep.double_dual_identity


def test_rins_reflects_tightness():
    for d in random_rigged_diagrams(1, 3, seed=7):
        ok, n = rins_reflects_tightness(rins_pullback(d), [PT, ARROW, tight_simplex(1, [0])], max_probes=20)
        assert ok


def test_em_chain_identity_monad():
    rep = em_chain_demo(identity_monad(linear_order(1)))
    assert rep.ok and rep.algebras == 2
    assert [s.name for s in rep.stages] and all(s.rins_matches for s in rep.stages)


def test_em_chain_idempotent_monad():
    (_, top) = closure_monads(linear_order(1))
    rep = em_chain_demo(top)
    assert rep.ok and rep.algebras == 1
    assert rep.stages[-1].objects == 1


def test_em_chain_on_instances():
    for M in monad_instances(seed=1, max_objects=2)[:6]:
        assert em_chain_demo(M, nerve_check=False).ok
