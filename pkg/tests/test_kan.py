"""Horn filling: every object over a Mal'tsev signature fills all horns,
and every levelwise surjection lifts horns against its codomain."""

import numpy as np
import pytest

from simal.corpus import default_corpus
from simal.errors import BudgetError, PreconditionUnmet
from simal.simplicial import (
    horn,
    kan_check,
    kan_fibration_check,
    nerve,
    truncate,
)
from simal.corpus import cyclic_group, one_object_groupoid, pair_groupoid

CORPUS = default_corpus("desk")


def test_every_corpus_object_fills_every_horn():
    for name, X in CORPUS["objects"]:
        report = kan_check(X)
        assert report.all_pass, name
        expected = sum(n + 1 for n in range(2, X.truncation + 1))
        assert len(report.entries) == expected, name


def test_horn_sizes_for_one_object_nerve():
    X = nerve(one_object_groupoid(cyclic_group(4)), 2)
    for k in range(3):
        H, lam = horn(X, 2, k)
        # two free arrows over a single object
        assert H.size == 16
        assert len(np.unique(lam.map)) == 16


def test_horn_rejects_bad_levels():
    from simal.errors import InvalidParameters

    X = nerve(pair_groupoid(cyclic_group(2)), 2)
    with pytest.raises(PreconditionUnmet):
        horn(X, 0, 0)
    with pytest.raises(PreconditionUnmet):
        horn(X, 4, 0)
    with pytest.raises(InvalidParameters):
        horn(X, 2, 3)


def test_horn_respects_budget():
    X = nerve(pair_groupoid(cyclic_group(4)), 3)
    with pytest.raises(BudgetError):
        kan_check(X, budget=3)


def test_every_corpus_extension_is_a_fibration():
    for name, F in CORPUS["extensions"]:
        report = kan_fibration_check(F)
        assert all(e["surjective"] for e in report.entries), name


def test_fibration_entries_record_sizes():
    name, F = CORPUS["extensions"][0]
    report = kan_fibration_check(F)
    for e in report.entries:
        assert e["image_size"] <= e["pullback_size"]
        assert e["image_size"] <= e["level_size"]
        assert e["surjective"] == (e["image_size"] == e["pullback_size"])
        assert e["bijective"] == (
            e["surjective"] and e["image_size"] == e["level_size"]
        )


def test_trivial_covering_comparison_is_bijective():
    # a unit of the reflection over a groupoid nerve changes nothing,
    # so the horn comparison map is a bijection at every horn
    from simal.reflection import pi1

    X = nerve(pair_groupoid(cyclic_group(3)), 2)
    F = pi1(X).unit
    report = kan_fibration_check(F)
    assert all(e["bijective"] for e in report.entries)


def test_non_surjective_morphism_reported_not_lifting():
    # include the discrete nerve into a coskeleton with extra loops: a
    # downstairs filler with a non-degenerate middle face has no
    # preimage, so the horn comparison is not surjective
    from simal.corpus import discrete_groupoid, loops_graph
    from simal.simplicial import SimplicialMorphism, coskeleton
    from simal.algebra import Homomorphism

    c2 = cyclic_group(2)
    X = nerve(discrete_groupoid(c2), 2)
    Y = coskeleton(loops_graph(c2, c2), 2)
    f0 = np.arange(2)
    f1 = Y.degeneracies[0][0].map[f0]
    f2 = Y.degeneracies[1][0].map[f1]
    incl = SimplicialMorphism(X, Y, [
        Homomorphism(X.levels[0], Y.levels[0], f0, check=False),
        Homomorphism(X.levels[1], Y.levels[1], f1, check=False),
        Homomorphism(X.levels[2], Y.levels[2], f2, check=False),
    ], check=True)
    assert not incl.is_levelwise_surjective()
    report = kan_fibration_check(incl)
    assert not all(e["surjective"] for e in report.entries)


def test_truncated_corpus_objects_still_fill():
    for name, X in CORPUS["objects"][:4]:
        if X.truncation >= 3:
            assert kan_check(truncate(X, 2)).all_pass, name
