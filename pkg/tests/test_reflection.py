import numpy as np
import pytest

from simal.algebra import Homomorphism
from simal import congruences as cg
from simal.corpus import (
    cyclic_group,
    discrete_groupoid,
    loops_graph,
    one_object_groupoid,
    pair_groupoid,
    sk1_two_truncation,
    translation_graph,
    zk_module,
)
from simal.errors import PreconditionUnmet, PropertyViolation
from simal.groupoid import groupoid_isomorphism, validate_groupoid
from simal.reflection import (
    commutator_chain_check,
    face_kernels,
    graph_reflection,
    homotopy_congruence,
    homotopy_congruence_level1,
    is_internal_groupoid,
    is_two_coskeletal_at_top,
    pi1,
    spine_maps,
    universal_property_check,
)
from simal.simplicial import (
    SimplicialMorphism,
    coskeleton,
    nerve,
)

C2 = cyclic_group(2)
C3 = cyclic_group(3)
C4 = cyclic_group(4)


def sk1_loops():
    return sk1_two_truncation(loops_graph(zk_module(2), zk_module(2)))


def cosk_loops():
    return coskeleton(loops_graph(C2, C2), 3)


def test_spine_maps_recover_carrier_columns():
    X = nerve(pair_groupoid(C3), 3)
    for n in (2, 3):
        cols = np.stack(spine_maps(X, n), axis=1)
        assert np.array_equal(cols, X.levels[n].carrier.rows)


def test_face_kernels_count():
    X = nerve(pair_groupoid(C3), 2)
    assert len(face_kernels(X, 2)) == 3


def test_homotopy_congruence_level1_formula():
    # h1 = d1(D0 /\ D2) computed from level-2 data
    X = cosk_loops()
    D = face_kernels(X, 2)
    direct = cg.image(X.faces[2][1], cg.meet(D[0], D[2]))
    assert homotopy_congruence_level1(X) == direct


def test_homotopy_congruence_is_join_of_meets():
    X = cosk_loops()
    for n in (2, 3):
        D = face_kernels(X, n)
        meets = [
            cg.meet(D[i], D[j])
            for i in range(n + 1) for j in range(i + 1, n + 1)
        ]
        assert homotopy_congruence(X, n) == cg.join_all(meets)


def test_reflection_of_groupoid_nerve_is_isomorphic():
    for G in (pair_groupoid(C4), one_object_groupoid(C4),
              discrete_groupoid(C3)):
        X = nerve(G, 3)
        R = pi1(X)
        validate_groupoid(R.groupoid)
        assert groupoid_isomorphism(G, R.groupoid) is not None
        for comp in R.unit.components:
            assert comp.is_surjective()
            assert len(set(comp.map.tolist())) == len(comp.map)


def test_reflection_collapses_parallel_loops():
    R = pi1(cosk_loops())
    assert R.groupoid.objects.size == 2
    assert R.groupoid.arrows.size == 2
    assert [t.class_count() for t in R.h] == [2, 2, 2, 2]
    assert R.unit.is_levelwise_surjective()


def test_reflection_of_skeletal_object_keeps_arrows():
    R = pi1(sk1_loops())
    assert R.groupoid.arrows.size == 4
    assert [t.class_count() for t in R.h] == [2, 4, 8]


def test_reflection_is_idempotent():
    for X in (cosk_loops(), sk1_loops(),
              nerve(one_object_groupoid(C4), 3)):
        R = pi1(X)
        R2 = pi1(R.nerve)
        assert groupoid_isomorphism(R.groupoid, R2.groupoid) is not None
        for comp in R2.unit.components:
            assert len(set(comp.map.tolist())) == len(comp.map)


def test_unit_kernel_is_homotopy_congruence():
    for X in (cosk_loops(), sk1_loops()):
        R = pi1(X)
        for n in range(1, X.truncation + 1):
            assert cg.kernel_pair(R.unit.components[n]) == R.h[n]


def test_reflection_requires_two_levels():
    X = nerve(pair_groupoid(C2), 1)
    with pytest.raises(PreconditionUnmet):
        pi1(X)


def test_universal_property_factors_through_unit():
    X = cosk_loops()
    R = pi1(X)
    # the unit itself must factor, with the identity as mediator
    g = universal_property_check(R, R.unit)
    for n in range(X.truncation + 1):
        assert np.array_equal(
            g.components[n].map, np.arange(R.nerve.levels[n].size)
        )


def test_universal_property_rejects_morphism_missing_kernel():
    # no checked simplicial morphism into a groupoid nerve can separate
    # homotopic arrows, so exercise the guard with a raw component
    # bundle that does
    from types import SimpleNamespace

    X = cosk_loops()
    R = pi1(X)
    Y = nerve(one_object_groupoid(C2), 3)
    f0 = np.zeros(X.levels[0].size, dtype=np.int64)
    f1 = np.ones(X.levels[1].size, dtype=np.int64)
    f1[X.degeneracies[0][0].map] = 0
    comps = [
        Homomorphism(X.levels[0], Y.levels[0], f0, check=False),
        Homomorphism(X.levels[1], Y.levels[1], f1, check=False),
    ]
    fake = SimpleNamespace(dom=X, cod=Y, components=comps)
    with pytest.raises(PropertyViolation):
        universal_property_check(R, fake)


def test_naturality_of_the_unit():
    from simal.galois import induced_groupoid_nerve_map
    from simal.corpus import default_corpus

    corpus = default_corpus("desk")
    checked = 0
    for name, F in corpus["extensions"][:6]:
        RX, RY = pi1(F.dom), pi1(F.cod)
        nf = induced_groupoid_nerve_map(RX, RY, F)
        for n in range(F.dom.truncation + 1):
            lhs = nf.components[n].map[RX.unit.components[n].map]
            rhs = RY.unit.components[n].map[F.components[n].map]
            assert np.array_equal(lhs, rhs), (name, n)
        checked += 1
    assert checked == 6


def test_internal_groupoid_detection():
    assert is_internal_groupoid(nerve(pair_groupoid(C4), 3))
    assert is_internal_groupoid(nerve(one_object_groupoid(C4), 3))
    # fiberwise addition of loops is a groupoid structure, and the
    # skeletal two-truncation carries exactly its composable pairs
    assert is_internal_groupoid(sk1_loops())
    ok, entries = is_internal_groupoid(cosk_loops(), with_report=True)
    assert not ok
    assert any(not e["bijective"] for e in entries)


def test_two_coskeletal_detection():
    assert is_two_coskeletal_at_top(nerve(one_object_groupoid(C4), 3))
    assert is_two_coskeletal_at_top(cosk_loops())
    assert not is_two_coskeletal_at_top(sk1_loops())


def test_commutator_chain_patterns():
    # upper end strict for abelian loops, lower end strict for the
    # coskeleton, both ends tight for a pair groupoid nerve
    rep = commutator_chain_check(sk1_loops())
    assert rep["commutator_equal"] and not rep["meet_equal"]
    rep = commutator_chain_check(cosk_loops())
    assert rep["meet_equal"] and not rep["commutator_equal"]
    rep = commutator_chain_check(nerve(pair_groupoid(C2), 2))
    assert rep["meet_equal"] and rep["commutator_equal"]


def test_graph_reflection_of_groupoid_nerve():
    G = pair_groupoid(C2)
    H, proj = graph_reflection(nerve(G, 2))
    validate_groupoid(H)
    assert groupoid_isomorphism(G, H) is not None
    assert proj.is_surjective()


def test_graph_reflection_differs_from_simplicial_reflection():
    # the graph route quotients by the commutator, the simplicial route
    # by the homotopy congruence; the coskeleton separates them
    X = cosk_loops()
    H, _ = graph_reflection(X)
    R = pi1(X)
    assert H.arrows.size == 4
    assert R.groupoid.arrows.size == 2


def test_graph_reflection_composition_is_maltsev():
    X = sk1_two_truncation(translation_graph(zk_module(4), zk_module(2), [0, 2]))
    H, proj = graph_reflection(X)
    validate_groupoid(H)
    assert H.arrows.size == 8
