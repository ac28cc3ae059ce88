"""Internal groupoids: a parallel pair of carrier algebras with a
partial composition that is itself a homomorphism.

Conventions, used consistently everywhere: d0 is the target map, d1 the
source map, s0 picks identity arrows.  comp[g, f] is the composite
"g after f", defined exactly when d1(g) = d0(f); undefined entries hold
-1.
"""

import numpy as np

from .errors import IdentityViolated, InvalidParameters
from .algebra import check_homomorphism, Homomorphism, same_signature
from .limits import subproduct_algebra, compatible_tuples


class InternalGroupoid:
    def __init__(self, objects, arrows, d0, d1, s0, comp):
        self.objects = objects
        self.arrows = arrows
        self.d0 = d0
        self.d1 = d1
        self.s0 = s0
        self.comp = np.asarray(comp, dtype=np.int64)
        if self.comp.shape != (arrows.size, arrows.size):
            raise InvalidParameters("composition table has wrong shape")

    def compose(self, g, f):
        out = int(self.comp[g, f])
        if out < 0:
            raise InvalidParameters(f"arrows {g}, {f} are not composable")
        return out

    def inverse_map(self):
        """Solve for inverses exhaustively; raises if any arrow lacks one."""
        n1 = self.arrows.size
        d0m, d1m, s0m = self.d0.map, self.d1.map, self.s0.map
        inv = np.full(n1, -1, dtype=np.int64)
        for f in range(n1):
            src, tgt = int(d1m[f]), int(d0m[f])
            found = [
                g for g in range(n1)
                if d0m[g] == src and d1m[g] == tgt
                and self.comp[f, g] == s0m[tgt] and self.comp[g, f] == s0m[src]
            ]
            if len(found) != 1:
                raise IdentityViolated(
                    f"arrow {f} has {len(found)} inverses, expected exactly 1"
                )
            inv[f] = found[0]
        return inv

    def __repr__(self):
        return (
            f"InternalGroupoid(objects={self.objects.name}, "
            f"arrows={self.arrows.name})"
        )


def composable_pairs_algebra(G):
    """The algebra of composable pairs (g, f) with d1(g) = d0(f)."""
    rows = compatible_tuples(
        [G.arrows, G.arrows], [(0, G.d1.map, 1, G.d0.map)]
    )
    return subproduct_algebra(f"comp({G.arrows.name})", [G.arrows, G.arrows], rows)


def validate_groupoid(G, check_homs=True):
    """Exhaustive check of all groupoid axioms, including that the
    composition is a homomorphism on the composable-pair algebra."""
    same_signature(G.objects, G.arrows)
    if G.d0.dom is not G.arrows or G.d0.cod is not G.objects:
        raise InvalidParameters("d0 endpoints wrong")
    if G.d1.dom is not G.arrows or G.d1.cod is not G.objects:
        raise InvalidParameters("d1 endpoints wrong")
    if G.s0.dom is not G.objects or G.s0.cod is not G.arrows:
        raise InvalidParameters("s0 endpoints wrong")
    if check_homs:
        for h in (G.d0, G.d1, G.s0):
            check_homomorphism(h)
    d0m, d1m, s0m = G.d0.map, G.d1.map, G.s0.map
    n0, n1 = G.objects.size, G.arrows.size
    if not np.array_equal(d0m[s0m], np.arange(n0)):
        raise IdentityViolated("d0 s0 is not the identity")
    if not np.array_equal(d1m[s0m], np.arange(n0)):
        raise IdentityViolated("d1 s0 is not the identity")
    composable = d1m[:, None] == d0m[None, :]
    defined = G.comp >= 0
    if not np.array_equal(composable, defined):
        raise IdentityViolated(
            "composition defined somewhere other than exactly the composable pairs"
        )
    gs, fs = np.nonzero(defined)
    cs = G.comp[gs, fs]
    if not np.array_equal(d0m[cs], d0m[gs]):
        raise IdentityViolated("target of a composite is wrong")
    if not np.array_equal(d1m[cs], d1m[fs]):
        raise IdentityViolated("source of a composite is wrong")
    f_all = np.arange(n1)
    if not np.array_equal(G.comp[s0m[d0m[f_all]], f_all], f_all):
        raise IdentityViolated("left unit law fails")
    if not np.array_equal(G.comp[f_all, s0m[d1m[f_all]]], f_all):
        raise IdentityViolated("right unit law fails")
    # associativity over all composable triples
    for g in range(n1):
        fs_for_g = np.nonzero(d0m == d1m[g])[0]
        for f in fs_for_g:
            gf = G.comp[g, f]
            es = np.nonzero(d0m == d1m[f])[0]
            if len(es) and not np.array_equal(
                G.comp[gf, es], G.comp[g, G.comp[f, es]]
            ):
                raise IdentityViolated("associativity fails")
    pair_alg, _ = composable_pairs_algebra(G)
    mmap = G.comp[pair_alg.carrier.rows[:, 0], pair_alg.carrier.rows[:, 1]]
    check_homomorphism(Homomorphism(pair_alg, G.arrows, mmap, check=False))
    G.inverse_map()
    return G


def groupoid_isomorphism(G, H):
    """Find a structure-preserving pair of carrier isomorphisms, or None."""
    from .algebra import all_isomorphisms

    if G.objects.size != H.objects.size or G.arrows.size != H.arrows.size:
        return None
    for phi0 in all_isomorphisms(G.objects, H.objects):
        for phi1 in all_isomorphisms(G.arrows, H.arrows):
            if not np.array_equal(phi0.map[G.d0.map], H.d0.map[phi1.map]):
                continue
            if not np.array_equal(phi0.map[G.d1.map], H.d1.map[phi1.map]):
                continue
            if not np.array_equal(phi1.map[G.s0.map], H.s0.map[phi0.map]):
                continue
            ok = True
            gs, fs = np.nonzero(G.comp >= 0)
            lhs = phi1.map[G.comp[gs, fs]]
            rhs = H.comp[phi1.map[gs], phi1.map[fs]]
            if not np.array_equal(lhs, rhs):
                ok = False
            if ok:
                return phi0, phi1
    return None
