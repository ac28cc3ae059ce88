"""Groupoid reflection of truncated simplicial objects.

Two independent routes live here.  The simplicial route quotients level
one by the homotopy congruence read off from level two and solves the
composition on representatives; the graph route quotients by the
commutator of the two face kernels and composes through the Mal'tsev
term.  The lattice formulas for the homotopy congruences at every level
are computed separately from the unit map so the two can be compared.
"""

import numpy as np

from .errors import (
    CompositionIllDefined,
    PreconditionUnmet,
    PropertyViolation,
    TripleEqualityViolated,
)
from .algebra import Homomorphism, identity_hom
from . import congruences as cg
from .commutator import tc_commutator
from .groupoid import InternalGroupoid, validate_groupoid
from .simplicial import nerve, SimplicialMorphism, simplicial_kernel


def face_kernels(X, n):
    return [cg.kernel_pair(d) for d in X.faces[n]]


def spine_maps(X, n):
    """Index arrays for the n spine edges of every n-simplex."""
    maps = []
    for i in range(1, n + 1):
        m = np.arange(X.levels[n].size)
        level = n
        for j in range(n, i, -1):
            m = X.faces[level][j].map[m]
            level -= 1
        for _ in range(i - 1):
            m = X.faces[level][0].map[m]
            level -= 1
        assert level == 1
        maps.append(m)
    return maps


def homotopy_congruence_level1(X):
    """The relation identifying arrows joined by a thin 2-simplex,
    computed as the image of a face-kernel meet."""
    if X.truncation < 2:
        raise PreconditionUnmet("level-1 homotopy needs two levels of faces")
    D = face_kernels(X, 2)
    h1 = cg.image(X.faces[2][1], cg.meet(D[0], D[2]))
    if X.truncation >= 3:
        alt0 = cg.image(X.faces[2][0], cg.meet(D[1], D[2]))
        alt2 = cg.image(X.faces[2][2], cg.meet(D[0], D[1]))
        if alt0 != h1 or alt2 != h1:
            raise TripleEqualityViolated(
                "face images of the kernel meets at level 2 disagree"
            )
    return h1


def homotopy_congruence(X, n):
    """Join of all pairwise face-kernel meets at a level n >= 2."""
    if n < 2 or n > X.truncation:
        raise PreconditionUnmet("join formula applies to levels >= 2")
    D = face_kernels(X, n)
    meets = [
        cg.meet(D[i], D[j])
        for j in range(1, n + 1)
        for i in range(j)
    ]
    return cg.join_all(meets)


class ReflectionResult:
    def __init__(self, groupoid, nerve_obj, unit, h):
        self.groupoid = groupoid
        self.nerve = nerve_obj
        self.unit = unit
        self.h = h

    @property
    def eta1(self):
        return self.unit.components[1]


def pi1(X, budget=None):
    """Reflect into internal groupoids; the unit is built from spines."""
    N = X.truncation
    if N < 2:
        raise PreconditionUnmet("reflection needs truncation >= 2")
    X0, X1 = X.levels[0], X.levels[1]
    d0m = X.faces[1][0].map
    d1m = X.faces[1][1].map
    h1 = homotopy_congruence_level1(X)
    if not np.array_equal(d0m, d0m[h1.part]) or not np.array_equal(
        d1m, d1m[h1.part]
    ):
        raise PropertyViolation("homotopic arrows must share both faces")
    Q, eta1 = cg.quotient(X1, h1)
    reps = np.unique(h1.part)
    d0b = Homomorphism(Q, X0, d0m[reps], check=True)
    d1b = Homomorphism(Q, X0, d1m[reps], check=True)
    s0b = Homomorphism(
        X0, Q, eta1.map[X.degeneracies[0][0].map], check=True
    )

    spins = spine_maps(X, 2)
    qa = eta1.map[spins[0]]
    qb = eta1.map[spins[1]]
    qm = eta1.map[X.faces[2][1].map]
    comp = -np.ones((Q.size, Q.size), dtype=np.int64)
    comp[qb, qa] = qm
    bad = comp[qb, qa] != qm
    if bad.any():
        s = int(np.nonzero(bad)[0][0])
        raise CompositionIllDefined(
            f"simplices give conflicting composites for classes "
            f"({int(qb[s])},{int(qa[s])})"
        )
    need = d1b.map[:, None] == d0b.map[None, :]
    missing = (comp == -1) & need
    if missing.any():
        g, f = map(int, np.argwhere(missing)[0])
        raise CompositionIllDefined(
            f"no simplex composes the class pair ({g},{f})"
        )

    G = InternalGroupoid(X0, Q, d0b, d1b, s0b, comp)
    validate_groupoid(G)
    NG = nerve(G, N, name=f"N(Pi1 {X.name})")

    comps = [identity_hom(X0), Homomorphism(X1, Q, eta1.map, check=False)]
    for n in range(2, N + 1):
        cols = np.stack(
            [eta1.map[m] for m in spine_maps(X, n)], axis=1
        )
        comps.append(
            Homomorphism(
                X.levels[n], NG.levels[n],
                NG.levels[n].carrier.index_of(cols), check=False,
            )
        )
    unit = SimplicialMorphism(X, NG, comps, check=True)

    h = [cg.diagonal(X0), h1]
    for n in range(2, N + 1):
        h.append(homotopy_congruence(X, n))
    return ReflectionResult(G, NG, unit, h)


def universal_property_check(R, F):
    """Factor a morphism into a groupoid nerve uniquely through the unit.

    R is a reflection of F's domain.  The factorization exists exactly
    when every level's homotopy congruence is below the kernel of F;
    that containment is the property under test.
    """
    X = F.dom
    if R.unit.dom is not X:
        raise PreconditionUnmet("reflection belongs to a different object")
    for n in range(X.truncation + 1):
        if not cg.leq(R.h[n], cg.kernel_pair(F.components[n])):
            raise PropertyViolation(
                f"morphism does not kill the homotopy congruence at level {n}"
            )
    comps = []
    for n in range(X.truncation + 1):
        eta_n = R.unit.components[n].map
        section = np.zeros(R.nerve.levels[n].size, dtype=np.int64)
        seen = np.zeros(R.nerve.levels[n].size, dtype=bool)
        order = np.arange(len(eta_n) - 1, -1, -1)
        section[eta_n[order]] = order
        seen[eta_n] = True
        if not seen.all():
            raise PropertyViolation(f"unit is not surjective at level {n}")
        comps.append(
            Homomorphism(
                R.nerve.levels[n], F.cod.levels[n],
                F.components[n].map[section], check=False,
            )
        )
    g = SimplicialMorphism(R.nerve, F.cod, comps, check=True)
    for n in range(X.truncation + 1):
        if not np.array_equal(
            g.components[n].map[R.unit.components[n].map],
            F.components[n].map,
        ):
            raise PropertyViolation(
                f"factorization misses the original morphism at level {n}"
            )
    return g


def is_internal_groupoid(X, with_report=False):
    """Whether every level is the composable-path pullback of the one
    below, witnessed by the outer-face comparison being bijective."""
    N = X.truncation
    entries = []
    ok = True
    for n in range(2, N + 1):
        a = X.faces[n][0].map
        b = X.faces[n][n].map
        lower = X.levels[n - 2].size
        fa = np.bincount(X.faces[n - 1][n - 1].map, minlength=lower)
        fb = np.bincount(X.faces[n - 1][0].map, minlength=lower)
        pb_size = int((fa * fb).sum())
        codes = a.astype(np.int64) * X.levels[n - 1].size + b
        image = len(np.unique(codes))
        bij = image == pb_size and image == X.levels[n].size
        entries.append(
            {
                "n": n,
                "pullback_size": pb_size,
                "image_size": image,
                "level_size": X.levels[n].size,
                "bijective": bool(bij),
            }
        )
        ok = ok and bij
    if with_report:
        return ok, entries
    return ok


def groupoid_injectivity_conditions(X, n):
    """Three meet conditions on the face kernels at one level."""
    D = face_kernels(X, n)
    pairs = [(i, j) for j in range(1, n + 1) for i in range(j)]
    all_trivial = all(cg.meet(D[i], D[j]).is_diagonal() for i, j in pairs)
    outer_trivial = cg.meet(D[0], D[n]).is_diagonal()
    some_trivial = any(cg.meet(D[i], D[j]).is_diagonal() for i, j in pairs)
    return all_trivial, outer_trivial, some_trivial


def graph_reflection(X):
    """Reflection computed from levels 0 and 1 only.

    The quotient is by the commutator of the two face kernels, and
    composition of classes g after f is the class of p(g, s0 d1 g, f).
    The construction is checked to be independent of representatives
    and to satisfy every groupoid axiom.
    """
    if X.truncation < 1:
        raise PreconditionUnmet("graph reflection needs a level of arrows")
    X0, X1 = X.levels[0], X.levels[1]
    d0, d1 = X.faces[1]
    s0 = X.degeneracies[0][0]
    theta = tc_commutator(cg.kernel_pair(d0), cg.kernel_pair(d1))
    Q, proj = cg.quotient(X1, theta)
    reps = np.unique(theta.part)
    d0b = Homomorphism(Q, X0, d0.map[reps], check=True)
    d1b = Homomorphism(Q, X0, d1.map[reps], check=True)
    s0b = Homomorphism(X0, Q, proj.map[s0.map], check=True)

    gs, fs = np.nonzero(d1.map[:, None] == d0.map[None, :])
    mids = s0.map[d1.map[gs]]
    vals = proj.map[X1.p(gs, mids, fs)]
    comp = -np.ones((Q.size, Q.size), dtype=np.int64)
    qg, qf = proj.map[gs], proj.map[fs]
    comp[qg, qf] = vals
    if not np.array_equal(comp[qg, qf], vals):
        raise CompositionIllDefined(
            "Mal'tsev composite depends on the representatives"
        )
    G = InternalGroupoid(X0, Q, d0b, d1b, s0b, comp)
    validate_groupoid(G)
    return G, proj


def is_two_coskeletal_at_top(X):
    """Whether the comparison into the simplicial kernel at the top
    level is bijective."""
    N = X.truncation
    if N < 2:
        raise PreconditionUnmet("needs at least two levels")
    K, _, kappa = simplicial_kernel(X, N)
    image = len(np.unique(kappa.map))
    return image == K.size and image == X.levels[N].size


def commutator_chain_check(X):
    """Sandwich the level-1 homotopy congruence between the commutator
    of the face kernels and their meet."""
    d0, d1 = X.faces[1]
    E0, E1 = cg.kernel_pair(d0), cg.kernel_pair(d1)
    low = tc_commutator(E0, E1)
    high = cg.meet(E0, E1)
    h1 = homotopy_congruence_level1(X)
    report = {
        "commutator_below": cg.leq(low, h1),
        "meet_above": cg.leq(h1, high),
        "meet_equal": h1 == high,
        "commutator_equal": h1 == low,
    }
    if not (report["commutator_below"] and report["meet_above"]):
        raise PropertyViolation("homotopy congruence escapes its sandwich")
    return report
