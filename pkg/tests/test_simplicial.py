import numpy as np
import pytest

from simal.algebra import Homomorphism, identity_hom
from simal import congruences as cg
from simal.corpus import (
    bundle_groupoid,
    congruence_groupoid,
    cyclic_group,
    discrete_groupoid,
    inner_coset_groupoid,
    alternating_indices,
    loops_graph,
    one_object_groupoid,
    pair_groupoid,
    sk1_two_truncation,
    symmetric_group,
    zk_module,
)
from simal.errors import (
    BudgetError,
    IdentityViolated,
    InvalidParameters,
    PreconditionUnmet,
)
from simal.groupoid import (
    InternalGroupoid,
    composable_pairs_algebra,
    groupoid_isomorphism,
    validate_groupoid,
)
from simal.simplicial import (
    SimplicialMorphism,
    TruncatedSimplicialAlgebra,
    constant_simplicial,
    coskeleton,
    decalage,
    exactness_check,
    nerve,
    quotient_simplicial,
    simplicial_congruence_generated,
    simplicial_identity,
    simplicial_kernel,
    simplicial_product,
    simplicial_pullback,
    truncate,
    validate_simplicial,
)

C2 = cyclic_group(2)
C3 = cyclic_group(3)
C4 = cyclic_group(4)
S3 = symmetric_group(3)


def groupoid_zoo():
    return [
        pair_groupoid(C4),
        discrete_groupoid(C4),
        one_object_groupoid(C4),
        bundle_groupoid(C2, C3),
        inner_coset_groupoid(S3, alternating_indices(S3)),
    ]


def test_groupoids_validate():
    for G in groupoid_zoo():
        validate_groupoid(G)


def test_groupoid_composition_tables_are_total_on_composables():
    for G in groupoid_zoo():
        need = G.d1.map[:, None] == G.d0.map[None, :]
        assert ((G.comp >= 0) == need).all()


def test_composable_pairs_algebra_size():
    G = pair_groupoid(C3)
    P, _ = composable_pairs_algebra(G)
    assert P.size == 27


def test_broken_unit_rejected():
    G = pair_groupoid(C2)
    bad = Homomorphism(G.objects, G.arrows,
                       [int(G.s0.map[0])] * G.objects.size, check=False)
    H = InternalGroupoid(G.objects, G.arrows, G.d0, G.d1, bad, G.comp)
    with pytest.raises(IdentityViolated):
        validate_groupoid(H)


def test_groupoid_isomorphism_finds_relabelling():
    G = pair_groupoid(C2)
    H = pair_groupoid(cyclic_group(2))
    iso = groupoid_isomorphism(G, H)
    assert iso is not None
    f0, f1 = iso
    assert sorted(f0.map.tolist()) == [0, 1]
    assert np.array_equal(H.d0.map[f1.map], f0.map[G.d0.map])
    assert np.array_equal(H.d1.map[f1.map], f0.map[G.d1.map])


def test_groupoid_isomorphism_rejects_different_shapes():
    from simal.corpus import product_group

    assert groupoid_isomorphism(pair_groupoid(C2), discrete_groupoid(C4)) is None
    assert groupoid_isomorphism(
        one_object_groupoid(C4), one_object_groupoid(product_group(C2, C2))
    ) is None


def test_nerve_levels_and_identities():
    for G in groupoid_zoo():
        X = nerve(G, 3)
        assert X.truncation == 3
        assert X.levels[0] is G.objects
        assert X.levels[1] is G.arrows
        composable = int((G.comp >= 0).sum())
        assert X.levels[2].size == composable
        validate_simplicial(X, check_homs=True)
        assert simplicial_identity(X).is_levelwise_surjective()


def test_nerve_middle_face_is_composition():
    G = one_object_groupoid(C4)
    X = nerve(G, 2)
    rows = X.levels[2].carrier.rows
    mid = X.faces[2][1].map
    for idx in range(X.levels[2].size):
        r0, r1 = (int(v) for v in rows[idx])
        assert G.comp[r1, r0] == mid[idx]


def test_constant_simplicial_and_truncate():
    X = constant_simplicial(C3, 3)
    validate_simplicial(X, check_homs=True)
    assert [lvl.size for lvl in X.levels] == [3, 3, 3, 3]
    Y = truncate(X, 1)
    assert Y.truncation == 1
    assert [lvl.size for lvl in Y.levels] == [3, 3]


def test_constructor_rejects_missing_rows():
    X = nerve(pair_groupoid(C2), 2)
    with pytest.raises(InvalidParameters):
        TruncatedSimplicialAlgebra(X.levels, X.faces[:-1], X.degeneracies)


def test_validation_detects_broken_face():
    X = nerve(pair_groupoid(C2), 2)
    faces = [list(row) for row in X.faces]
    perm = np.roll(np.arange(X.levels[1].size), 1)
    broken = Homomorphism(X.levels[1], X.levels[0],
                          X.faces[1][0].map[perm], check=False)
    faces[1] = [broken, X.faces[1][1]]
    Y = TruncatedSimplicialAlgebra(X.levels, faces, X.degeneracies)
    with pytest.raises(IdentityViolated):
        validate_simplicial(Y)


def test_simplicial_kernel_sizes_for_one_object_nerve():
    X = nerve(one_object_groupoid(C4), 3)
    K2, _, kappa2 = simplicial_kernel(X, 2)
    assert K2.size == 64
    assert len(np.unique(kappa2.map)) == 16
    K4, _, kappa4 = simplicial_kernel(X, 4)
    assert K4.size == 256
    assert kappa4 is None


def test_simplicial_kernel_bounds():
    X = nerve(pair_groupoid(C2), 2)
    with pytest.raises(PreconditionUnmet):
        simplicial_kernel(X, 0)
    with pytest.raises(PreconditionUnmet):
        simplicial_kernel(X, 4)
    with pytest.raises(BudgetError):
        simplicial_kernel(X, 3, budget=2)


def test_exactness_for_nerves():
    X = nerve(pair_groupoid(C3), 3)
    ok1, _ = exactness_check(X, 1)
    ok2, _ = exactness_check(X, 2)
    assert ok1 and ok2
    Y = nerve(one_object_groupoid(C4), 3)
    ok, sizes = exactness_check(Y, 1)
    assert not ok
    assert sizes == {"kernel_size": 64, "image_size": 16}


def test_sk1_is_not_exact_above_one():
    X = sk1_two_truncation(loops_graph(zk_module(2), zk_module(2)))
    ok, _ = exactness_check(X, 1)
    assert not ok


def test_coskeleton_extends_and_is_coskeletal():
    X = coskeleton(loops_graph(C2, C2), 3)
    assert [lvl.size for lvl in X.levels] == [2, 4, 16, 128]
    validate_simplicial(X, check_homs=True)
    for level in (1, 2):
        ok, _ = exactness_check(X, level)
        assert ok


def test_decalage_shifts_levels():
    X = nerve(pair_groupoid(C3), 3)
    D, counit = decalage(X)
    assert [lvl.size for lvl in D.levels] == [
        X.levels[1].size, X.levels[2].size, X.levels[3].size
    ]
    validate_simplicial(D, check_homs=True)
    assert counit.dom is D
    assert counit.cod.truncation == D.truncation
    assert counit.is_levelwise_surjective()


def test_decalage_requires_a_level_to_drop():
    X = truncate(nerve(pair_groupoid(C2), 1), 0)
    with pytest.raises(PreconditionUnmet):
        decalage(X)


def test_morphism_checks_commuting_squares():
    X = nerve(pair_groupoid(C2), 2)
    comps = [identity_hom(lvl) for lvl in X.levels]
    F = SimplicialMorphism(X, X, comps, check=True)
    assert F.is_levelwise_surjective()
    perm = np.roll(np.arange(X.levels[1].size), 1)
    bad = [
        comps[0],
        Homomorphism(X.levels[1], X.levels[1], perm, check=False),
        comps[2],
    ]
    with pytest.raises(IdentityViolated):
        SimplicialMorphism(X, X, bad, check=True)


def test_product_has_componentwise_structure():
    X = nerve(pair_groupoid(C2), 2)
    Y = nerve(one_object_groupoid(C3), 2)
    P, p1, p2 = simplicial_product(X, Y)
    assert [lvl.size for lvl in P.levels] == [
        x.size * y.size for x, y in zip(X.levels, Y.levels)
    ]
    validate_simplicial(P, check_homs=True)
    assert p1.is_levelwise_surjective()
    assert p2.is_levelwise_surjective()


def test_pullback_of_morphisms():
    X = nerve(pair_groupoid(C4), 2)
    parts = simplicial_congruence_generated(X, {0: [(0, 2)]})
    Q, q = quotient_simplicial(X, parts)
    P, pr1, pr2 = simplicial_pullback(q, q)
    for n in range(3):
        fm = q.components[n].map
        counts = np.bincount(fm, minlength=Q.levels[n].size)
        assert P.levels[n].size == int((counts * counts).sum())
    validate_simplicial(P, check_homs=True)
    assert pr1.is_levelwise_surjective()


def test_simplicial_congruence_closure_is_stable():
    def factors_through(labels, down):
        # related elements upstairs stay related downstairs
        return np.array_equal(down, down[labels])

    X = nerve(pair_groupoid(C4), 2)
    parts = simplicial_congruence_generated(X, {1: [(0, 1)]})
    assert parts[1].part[0] == parts[1].part[1]
    for n in range(1, 3):
        for d in X.faces[n]:
            assert factors_through(parts[n].part, parts[n - 1].part[d.map])
    for n in range(2):
        for s in X.degeneracies[n]:
            assert factors_through(parts[n].part, parts[n + 1].part[s.map])


def test_quotient_by_simplicial_congruence():
    X = nerve(pair_groupoid(C4), 2)
    parts = simplicial_congruence_generated(X, {0: [(0, 1)]})
    Q, proj = quotient_simplicial(X, parts)
    validate_simplicial(Q, check_homs=True)
    assert proj.is_levelwise_surjective()
    assert Q.levels[0].size == parts[0].class_count()


def test_congruence_groupoid_matches_blocks():
    theta = cg.principal_congruence(cyclic_group(6), 0, 3)
    G = congruence_groupoid(cyclic_group(6), theta)
    validate_groupoid(G)
    assert G.arrows.size == 12
