import numpy as np
import pytest

from simal import congruences as cg
from simal.corpus import (
    cyclic_group,
    default_corpus,
    loops_graph,
    one_object_groupoid,
    pair_groupoid,
)
from simal.errors import (
    NotLevelwiseSurjective,
    PreconditionUnmet,
)
from simal.galois import (
    classify_extension,
    em_factorization,
    exactness_lemma_check,
    fiber_connectivity_relation,
    homotopy_relation,
    is_trivial_extension,
    ml_factorization,
    relative_homotopy_relation,
    stabilizing_probe,
)
from simal.reflection import homotopy_congruence_level1
from simal.simplicial import (
    coskeleton,
    nerve,
    simplicial_congruence_generated,
    simplicial_pullback,
    quotient_simplicial,
)

CORPUS = default_corpus("desk")
EXTS = dict(CORPUS["extensions"])

EXPECTED = {
    "pairC4-pairC2": (True, True, True),
    "deloop-C4-C2": (True, True, True),
    "product-proj-left": (True, True, True),
    "product-proj-right": (True, True, True),
    "dec-counit-pairC4": (True, True, True),
    "augment-cosk-loops": (False, False, False),
    "unit-cosk-loops": (False, False, False),
    "quotient-cosk-fibers": (False, True, True),
    "quotient-sk1-transl": (True, True, True),
}


def test_classification_frozen_outcomes():
    for name, want in EXPECTED.items():
        rep = classify_extension(EXTS[name])
        assert (rep.trivial, rep.central, rep.normal) == want, name


def test_all_three_outcome_patterns_occur():
    seen = set()
    for name, F in CORPUS["extensions"]:
        rep = classify_extension(F)
        seen.add((rep.trivial, rep.central, rep.normal))
    assert (True, True, True) in seen
    assert (False, True, True) in seen
    assert (False, False, False) in seen


def test_implication_chain_on_every_extension():
    for name, F in CORPUS["extensions"]:
        rep = classify_extension(F)
        if rep.trivial:
            assert rep.central, name
        if rep.central:
            assert rep.normal, name


def test_report_serializes():
    rep = classify_extension(EXTS["quotient-cosk-fibers"])
    data = rep.to_json()
    assert data["trivial"] is False
    assert data["central"] is True
    assert all(e["bijective"] for e in data["fibration"])


def test_classification_rejects_non_surjections():
    from simal.algebra import Homomorphism
    from simal.simplicial import SimplicialMorphism

    Y = coskeleton(loops_graph(cyclic_group(2), cyclic_group(2)), 2)
    X = nerve(one_object_groupoid(cyclic_group(2)), 2)
    # no need for a meaningful map; surjectivity is checked first
    with pytest.raises(NotLevelwiseSurjective):
        f0 = np.zeros(1, dtype=np.int64)
        f1 = Y.degeneracies[0][0].map[f0]
        f2 = Y.degeneracies[1][0].map[f1]
        F = SimplicialMorphism(X, Y, [
            Homomorphism(X.levels[0], Y.levels[0], f0, check=False),
            Homomorphism(X.levels[1], Y.levels[1], np.repeat(f1, 2),
                         check=False),
            Homomorphism(X.levels[2], Y.levels[2], np.repeat(f2, 4),
                         check=False),
        ], check=False)
        classify_extension(F)


def test_central_extension_trivializes_along_itself():
    q = EXTS["quotient-cosk-fibers"]
    assert not is_trivial_extension(q)
    P, p1, p2 = simplicial_pullback(q, q)
    assert is_trivial_extension(p1)
    assert is_trivial_extension(p2)


def test_non_central_extension_survives_its_self_pullback():
    F = EXTS["augment-cosk-loops"]
    P, p1, _ = simplicial_pullback(F, F)
    assert not is_trivial_extension(p1)


def test_trivial_covering_is_pullback_stable():
    F = EXTS["product-proj-left"]
    assert is_trivial_extension(F)
    P, p1, p2 = simplicial_pullback(F, F)
    assert is_trivial_extension(p1)


def test_em_factorization_composes_to_original():
    for name in ("pairC4-pairC2", "unit-cosk-loops", "quotient-cosk-fibers"):
        F = EXTS[name]
        Z, e, m = em_factorization(F)
        for n in range(F.dom.truncation + 1):
            assert np.array_equal(
                m.components[n].map[e.components[n].map],
                F.components[n].map,
            ), (name, n)
        assert is_trivial_extension(m), name


def test_em_first_part_is_iso_exactly_for_trivial_coverings():
    def bijective(G):
        return all(
            c.is_surjective() and len(set(c.map.tolist())) == len(c.map)
            for c in G.components
        )

    Z, e, _ = em_factorization(EXTS["pairC4-pairC2"])
    assert bijective(e)
    assert [lvl.size for lvl in Z.levels] == [4, 16, 64]
    Z, e, _ = em_factorization(EXTS["unit-cosk-loops"])
    assert not bijective(e)
    assert [lvl.size for lvl in Z.levels] == [2, 2, 2]
    Z, e, _ = em_factorization(EXTS["quotient-cosk-fibers"])
    assert not bijective(e)


def test_ml_factorization_of_central_extension_is_lazy():
    # an already-central extension needs no quotient at all
    F = EXTS["quotient-cosk-fibers"]
    Z, e, m = ml_factorization(F)
    assert [lvl.size for lvl in Z.levels] == [2, 4, 16, 128]
    rep = classify_extension(m)
    assert rep.central


def test_ml_factorization_makes_the_second_part_central():
    for name in ("pairC4-pairC2", "unit-cosk-loops"):
        F = EXTS[name]
        Z, e, m = ml_factorization(F)
        assert e.is_levelwise_surjective(), name
        assert m.is_levelwise_surjective(), name
        for n in range(F.dom.truncation + 1):
            assert np.array_equal(
                m.components[n].map[e.components[n].map],
                F.components[n].map,
            ), (name, n)
        assert classify_extension(m).central, name


def test_homotopy_relation_matches_level1_congruence():
    for X in (coskeleton(loops_graph(cyclic_group(2), cyclic_group(2)), 3),
              nerve(pair_groupoid(cyclic_group(3)), 2)):
        assert homotopy_relation(X) == homotopy_congruence_level1(X)


def test_relative_relation_bounded_by_absolute():
    for name in ("pairC4-pairC2", "augment-cosk-loops",
                 "quotient-cosk-fibers"):
        F = EXTS[name]
        rel = relative_homotopy_relation(F)
        assert cg.leq(rel, homotopy_congruence_level1(F.dom)), name


def test_fiber_connectivity_of_augmentation_joins_fibers():
    F = EXTS["augment-cosk-loops"]
    rel = fiber_connectivity_relation(F)
    # the augmentation collapses levels over each base point, and every
    # base point carries a loop, so each point is connected to itself
    # only (loops do not move the base)
    assert rel == cg.diagonal(F.dom.levels[0])


def test_fiber_connectivity_sees_collapsed_objects():
    X = nerve(pair_groupoid(cyclic_group(4)), 2)
    carrier = X.levels[1].carrier
    identity = int(carrier.index_of(np.array([[0, 0]]))[0])
    jump = int(carrier.index_of(np.array([[0, 2]]))[0])
    parts = simplicial_congruence_generated(X, {1: [(identity, jump)]})
    Q, q = quotient_simplicial(X, parts)
    rel = fiber_connectivity_relation(q)
    # an arrow from 0 to 2 becomes an identity downstairs, so the
    # kernel-arrow relation connects those two objects
    assert rel.part[0] == rel.part[2]
    assert rel.class_count() == 2


def test_exactness_lemma_on_qualifying_pairs():
    for name in ("deloop-C4-C2", "augment-cosk-loops", "unit-pair-C2"):
        ok, details = exactness_lemma_check(EXTS[name])
        assert ok, name
        assert details["lhs_classes"] == details["rhs_classes"]


def test_exactness_lemma_requires_an_exact_base():
    with pytest.raises(PreconditionUnmet):
        exactness_lemma_check(EXTS["pairC4-pairC2"])


def test_stabilizing_probe_runs_over_probe_kit():
    from simal.algebra import Homomorphism
    from simal.corpus import probe_kit

    c2, c4 = cyclic_group(2), cyclic_group(4)
    incl = Homomorphism(c2, c4, [0, 2])
    probed, extensions = probe_kit(c4, incl, c2)
    report = stabilizing_probe(probed, extensions)
    assert len(report) == 2
    assert all(entry["ok"] for entry in report)
