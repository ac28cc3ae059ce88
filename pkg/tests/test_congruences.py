import numpy as np
import pytest

import oracles
from simal.algebra import Homomorphism, all_homomorphisms
from simal import congruences as cg
from simal.errors import BudgetExceeded, InvalidParameters, NotSurjective
from simal.corpus import (
    cyclic_group,
    dihedral_group,
    heyting_from_poset,
    product_group,
    symmetric_group,
    zk_module,
)

SMALL = [
    cyclic_group(4),
    cyclic_group(6),
    cyclic_group(12),
    zk_module(2, 2),
    symmetric_group(3),
    dihedral_group(4),
    heyting_from_poset({"kind": "chain", "n": 3}),
    heyting_from_poset({"kind": "grid", "rows": 2, "cols": 2}),
]

EXPECTED_COUNTS = {
    "C4": 3,
    "C6": 4,
    "C12": 6,
    "Z2^2": 5,
    "S3": 3,
    "D4": 6,
    "H-chain3": 3,
    "H-grid2x2": 4,
}


def test_congruence_counts_frozen():
    for alg in SMALL:
        got = len(cg.enumerate_congruences(alg))
        assert got == EXPECTED_COUNTS[alg.name], alg.name


def test_enumeration_matches_brute_force_on_tiny_algebras():
    for alg in [cyclic_group(4), heyting_from_poset({"kind": "chain", "n": 3}),
                zk_module(2, 2)]:
        brute = oracles.brute_force_congruences(alg)
        ours = {tuple(int(v) for v in c.part)
                for c in cg.enumerate_congruences(alg)}
        assert ours == brute


def test_enumeration_size_guard():
    with pytest.raises(BudgetExceeded):
        cg.enumerate_congruences(product_group(cyclic_group(6), cyclic_group(3)))


def test_join_is_closure_and_composite_everywhere():
    """Join against the set-based closure oracle, all congruence pairs."""
    for alg in SMALL:
        congs = cg.enumerate_congruences(alg)
        for a in congs:
            for b in congs:
                j = cg.join(a, b)
                want = oracles.join_by_closure(a.part, b.part)
                assert oracles.pairs_of_partition(j.part) == want
                # single composite both ways round
                ra = oracles.pairs_of_partition(a.part)
                rb = oracles.pairs_of_partition(b.part)
                assert oracles.compose_relations(ra, rb) == want
                assert oracles.compose_relations(rb, ra) == want


def test_lattice_unit_laws():
    for alg in SMALL[:4]:
        delta, top = cg.diagonal(alg), cg.full(alg)
        for theta in cg.enumerate_congruences(alg):
            assert cg.meet(theta, delta) == delta
            assert cg.join(theta, delta) == theta
            assert cg.meet(theta, top) == theta
            assert cg.join(theta, top) == top


def test_modular_law_all_triples():
    for alg in SMALL:
        congs = cg.enumerate_congruences(alg)
        for r in congs:
            for s in congs:
                for t in congs:
                    if not cg.leq(r, t):
                        continue
                    lhs = cg.join(r, cg.meet(s, t))
                    rhs = cg.meet(cg.join(r, s), t)
                    assert lhs == rhs


def test_principal_congruence_on_z6():
    z6 = cyclic_group(6)
    c = cg.principal_congruence(z6, 0, 2)
    assert sorted(tuple(sorted(int(x) for x in b)) for b in c.blocks()) == [
        (0, 2, 4), (1, 3, 5)
    ]
    assert cg.principal_congruence(z6, 0, 3).class_count() == 3
    mod2 = cg.principal_congruence(z6, 0, 2)
    mod3 = cg.principal_congruence(z6, 0, 3)
    assert cg.join(mod2, mod3).is_full()
    assert cg.meet(mod2, mod3).is_diagonal()


def test_kernel_pair_of_sign():
    s3, c2 = symmetric_group(3), cyclic_group(2)
    sign = [h for h in all_homomorphisms(s3, c2) if h.is_surjective()][0]
    k = cg.kernel_pair(sign)
    assert k.class_count() == 2
    assert sorted(len(b) for b in k.blocks()) == [3, 3]


def test_image_preimage_adjunction():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    f = Homomorphism(z4, z2, [0, 1, 0, 1])
    for theta in cg.enumerate_congruences(z2):
        assert cg.image(f, cg.preimage(f, theta)) == theta
    for theta in cg.enumerate_congruences(z4):
        back = cg.preimage(f, cg.image(f, theta))
        assert cg.leq(theta, back)


def test_image_requires_surjectivity():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    triv = Homomorphism(z4, z2, [0, 0, 0, 0])
    with pytest.raises(NotSurjective):
        cg.image(triv, cg.diagonal(z4))


def test_quotient_round_trip():
    z4 = cyclic_group(4)
    theta = cg.principal_congruence(z4, 0, 2)
    q, proj = cg.quotient(z4, theta)
    assert q.size == 2
    assert cg.kernel_pair(proj) == theta
    assert proj.is_surjective()
    # quotient of Z4 by the 2-element-block congruence is Z2
    assert int(q.table("mul")[1, 1]) == 0


def test_congruence_generated_matches_pure_closure():
    for alg in [cyclic_group(6), symmetric_group(3), dihedral_group(4)]:
        for a in range(0, alg.size, 2):
            for b in range(1, alg.size, 3):
                ours = cg.congruence_generated(alg, [(a, b)]).part
                pure = oracles.cg_closure_pure(alg, [(a, b)])
                assert list(ours) == pure


def test_compatibility_check_rejects_bad_partition():
    s3 = symmetric_group(3)
    # identity together with one transposition is not a congruence class
    with pytest.raises(InvalidParameters):
        cg.from_blocks(s3, [[0, 1], [2], [3], [4], [5]])


def test_canonical_partition_least_member():
    labels = np.asarray([7, 3, 7, 3, 9])
    part = cg.canonical_partition(labels)
    assert list(part) == [0, 1, 0, 1, 4]
