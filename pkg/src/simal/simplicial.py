"""Truncated simplicial objects over a fixed Mal'tsev signature.

A truncation-N object stores levels X_0..X_N, face maps d_i at each
level 1..N and degeneracies s_i at each level 0..N-1.  All five
simplicial identities are checked by composing the underlying index
arrays; higher constructions (kernels, horns, coskeleta, nerves,
decalage) produce tuple-algebra levels through the fiber-join engine.

Face conventions: d1 is the source and d0 the target of a 1-simplex,
matching the nerve of a groupoid where composition g after f requires
d1(g) = d0(f).
"""

import numpy as np

from .config import resolve_budget
from .errors import (
    IdentityViolated,
    InvalidParameters,
    PreconditionUnmet,
)
from .algebra import (
    Homomorphism,
    check_homomorphism,
    same_signature,
)
from . import congruences as cg
from .limits import compatible_tuples, subproduct_algebra
from .groupoid import InternalGroupoid


class TruncatedSimplicialAlgebra:
    def __init__(self, levels, faces, degeneracies, name="X"):
        self.levels = list(levels)
        self.faces = [list(fs) for fs in faces]
        self.degeneracies = [list(ds) for ds in degeneracies]
        self.name = name
        n = self.truncation
        if len(self.faces) != n + 1 or len(self.degeneracies) != n + 1:
            raise InvalidParameters(
                "faces and degeneracies must be indexed by every level"
            )

    @property
    def truncation(self):
        return len(self.levels) - 1

    def level(self, n):
        return self.levels[n]

    def face(self, n, i):
        return self.faces[n][i]

    def degeneracy(self, n, i):
        return self.degeneracies[n][i]

    def __repr__(self):
        sizes = ", ".join(str(l.size) for l in self.levels)
        return f"TruncatedSimplicialAlgebra({self.name}, sizes=[{sizes}])"


def validate_simplicial(X, check_homs=False):
    """Check endpoints, arities and all five simplicial identities."""
    N = X.truncation
    if N < 1:
        return X
    sig = X.levels[0].signature
    for lvl in X.levels:
        if lvl.signature != sig:
            raise InvalidParameters("levels have mixed signatures")
    for n in range(1, N + 1):
        if len(X.faces[n]) != n + 1:
            raise InvalidParameters(f"level {n} needs {n + 1} faces")
        for i, d in enumerate(X.faces[n]):
            if d.dom is not X.levels[n] or d.cod is not X.levels[n - 1]:
                raise InvalidParameters(f"face d{i} at level {n} has wrong endpoints")
    if X.faces[0]:
        raise InvalidParameters("level 0 admits no faces")
    for n in range(N):
        if len(X.degeneracies[n]) != n + 1:
            raise InvalidParameters(f"level {n} needs {n + 1} degeneracies")
        for i, s in enumerate(X.degeneracies[n]):
            if s.dom is not X.levels[n] or s.cod is not X.levels[n + 1]:
                raise InvalidParameters(
                    f"degeneracy s{i} at level {n} has wrong endpoints"
                )
    if X.degeneracies[N]:
        raise InvalidParameters("top level admits no degeneracies")
    if check_homs:
        for n in range(1, N + 1):
            for d in X.faces[n]:
                check_homomorphism(d)
        for n in range(N):
            for s in X.degeneracies[n]:
                check_homomorphism(s)

    def fmap(n, i):
        return X.faces[n][i].map

    def smap(n, i):
        return X.degeneracies[n][i].map

    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                lhs = fmap(n - 1, i)[fmap(n, j)]
                rhs = fmap(n - 1, j - 1)[fmap(n, i)]
                _expect(lhs, rhs, f"d{i} d{j} = d{j - 1} d{i} at level {n}")
    for n in range(N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                lhs = smap(n + 1, i)[smap(n, j)]
                rhs = smap(n + 1, j + 1)[smap(n, i)]
                _expect(lhs, rhs, f"s{i} s{j} = s{j + 1} s{i} at level {n}")
    for n in range(N):
        ident = np.arange(X.levels[n].size)
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = fmap(n + 1, i)[smap(n, j)]
                if i == j or i == j + 1:
                    _expect(lhs, ident, f"d{i} s{j} = 1 at level {n}")
                elif i < j:
                    rhs = smap(n - 1, j - 1)[fmap(n, i)]
                    _expect(lhs, rhs, f"d{i} s{j} = s{j - 1} d{i} at level {n}")
                else:
                    rhs = smap(n - 1, j)[fmap(n, i - 1)]
                    _expect(lhs, rhs, f"d{i} s{j} = s{j} d{i - 1} at level {n}")
    return X


def _expect(lhs, rhs, what):
    if not np.array_equal(lhs, rhs):
        k = int(np.nonzero(lhs != rhs)[0][0])
        raise IdentityViolated(f"{what} fails at element {k}")


class SimplicialMorphism:
    def __init__(self, dom, cod, components, check=True):
        self.dom = dom
        self.cod = cod
        self.components = list(components)
        if len(self.components) != dom.truncation + 1:
            raise InvalidParameters("one component per level required")
        if dom.truncation != cod.truncation:
            raise InvalidParameters("truncations differ")
        for n, f in enumerate(self.components):
            if f.dom is not dom.levels[n] or f.cod is not cod.levels[n]:
                raise InvalidParameters(f"component {n} has wrong endpoints")
        if check:
            check_simplicial_morphism(self)

    def component(self, n):
        return self.components[n]

    def is_levelwise_surjective(self):
        return all(f.is_surjective() for f in self.components)

    def compose(self, other):
        """self after other."""
        if other.cod is not self.dom:
            raise InvalidParameters("composition endpoints disagree")
        comps = [
            Homomorphism(
                other.dom.levels[n], self.cod.levels[n],
                self.components[n].map[other.components[n].map], check=False,
            )
            for n in range(other.dom.truncation + 1)
        ]
        return SimplicialMorphism(other.dom, self.cod, comps, check=False)

    def __repr__(self):
        return f"SimplicialMorphism({self.dom.name} -> {self.cod.name})"


def check_simplicial_morphism(F):
    X, Y = F.dom, F.cod
    for n in range(1, X.truncation + 1):
        for i in range(n + 1):
            lhs = F.components[n - 1].map[X.faces[n][i].map]
            rhs = Y.faces[n][i].map[F.components[n].map]
            _expect(lhs, rhs, f"morphism must commute with d{i} at level {n}")
    for n in range(X.truncation):
        for i in range(n + 1):
            lhs = F.components[n + 1].map[X.degeneracies[n][i].map]
            rhs = Y.degeneracies[n][i].map[F.components[n].map]
            _expect(lhs, rhs, f"morphism must commute with s{i} at level {n}")
    return F


def simplicial_identity(X):
    from .algebra import identity_hom

    return SimplicialMorphism(
        X, X, [identity_hom(l) for l in X.levels], check=False
    )


def truncate(X, M):
    if M > X.truncation or M < 0:
        raise InvalidParameters("truncation level out of range")
    return TruncatedSimplicialAlgebra(
        X.levels[: M + 1],
        X.faces[: M + 1],
        [X.degeneracies[n] if n < M else [] for n in range(M + 1)],
        name=f"tr{M}({X.name})",
    )


def constant_simplicial(alg, N, name=None):
    from .algebra import identity_hom

    levels = [alg] * (N + 1)
    faces = [[]] + [[identity_hom(alg) for _ in range(n + 1)] for n in range(1, N + 1)]
    degeneracies = [
        [identity_hom(alg) for _ in range(n + 1)] for n in range(N)
    ] + [[]]
    return TruncatedSimplicialAlgebra(
        levels, faces, degeneracies, name=name or f"const({alg.name})"
    )


# -- kernels and horns -----------------------------------------------------

def simplicial_kernel(X, n, budget=None):
    """Tuples (x_0..x_n) over X_{n-1} with d_i x_j = d_{j-1} x_i for i < j.

    Valid for 2 <= n <= truncation + 1; the comparison map kappa is
    returned when X_n exists, else None.
    """
    if n < 1 or n > X.truncation + 1:
        raise PreconditionUnmet(f"simplicial kernel undefined at {n}")
    lower = X.levels[n - 1]
    cons = []
    if n >= 2:
        for j in range(1, n + 1):
            for i in range(j):
                cons.append(
                    (i, X.faces[n - 1][j - 1].map, j, X.faces[n - 1][i].map)
                )
    rows = compatible_tuples([lower] * (n + 1), cons, budget=budget)
    alg, projections = subproduct_algebra(
        f"K{n}({X.name})", [lower] * (n + 1), rows
    )
    kappa = None
    if n <= X.truncation:
        cols = np.stack([X.faces[n][i].map for i in range(n + 1)], axis=1)
        kappa = Homomorphism(
            X.levels[n], alg, alg.carrier.index_of(cols), check=False
        )
    return alg, projections, kappa


def horn(X, n, k, budget=None):
    """Tuples (x_i)_{i != k} with the kernel constraints away from slot k."""
    if n < 1 or n > X.truncation + 1:
        raise PreconditionUnmet(f"horn undefined at {n}")
    if not 0 <= k <= n:
        raise InvalidParameters("horn index out of range")
    slots = [i for i in range(n + 1) if i != k]
    pos = {i: t for t, i in enumerate(slots)}
    lower = X.levels[n - 1]
    cons = []
    for j in slots:
        for i in slots:
            if i < j:
                cons.append(
                    (pos[i], X.faces[n - 1][j - 1].map, pos[j], X.faces[n - 1][i].map)
                )
    rows = compatible_tuples([lower] * n, cons, budget=budget)
    alg, projections = subproduct_algebra(
        f"L{n}_{k}({X.name})", [lower] * n, rows
    )
    lam = None
    if n <= X.truncation:
        cols = np.stack([X.faces[n][i].map for i in slots], axis=1)
        lam = Homomorphism(
            X.levels[n], alg, alg.carrier.index_of(cols), check=False
        )
    return alg, lam


def exactness_check(X, at_level, budget=None):
    """Whether the comparison into the simplicial kernel one step above
    the given level is surjective."""
    n = at_level + 1
    if n > X.truncation:
        raise PreconditionUnmet(
            f"exactness at level {at_level} needs level {n} data"
        )
    alg, _, kappa = simplicial_kernel(X, n, budget=budget)
    hit = len(np.unique(kappa.map))
    return hit == alg.size, {"kernel_size": alg.size, "image_size": hit}


class KanReport:
    def __init__(self, entries):
        self.entries = entries

    @property
    def all_pass(self):
        return all(e["surjective"] for e in self.entries)

    def to_json(self):
        return {"entries": self.entries, "all_pass": self.all_pass}


def kan_check(X, budget=None):
    """Horn-filling at every level and index."""
    entries = []
    for n in range(2, X.truncation + 1):
        for k in range(n + 1):
            alg, lam = horn(X, n, k, budget=budget)
            image = len(np.unique(lam.map))
            entries.append(
                {
                    "n": n,
                    "k": k,
                    "horn_size": alg.size,
                    "image_size": image,
                    "surjective": bool(image == alg.size),
                }
            )
    return KanReport(entries)


def kan_fibration_check(F, budget=None):
    """For each horn, compare X_n against the horn-and-simplex pullback.

    Entry (n, k) records the size of Horn_k^n(X) x_{Horn_k^n(Y)} Y_n, the
    size of the image of the comparison, and the resulting flags.
    """
    X, Y = F.dom, F.cod
    entries = []
    for n in range(2, X.truncation + 1):
        for k in range(n + 1):
            hx, lamx = horn(X, n, k, budget=budget)
            hy, lamy = horn(Y, n, k, budget=budget)
            fcols = F.components[n - 1].map[hx.carrier.rows]
            horn_f = hy.carrier.index_of(fcols)
            a = np.bincount(horn_f, minlength=hy.size)
            b = np.bincount(lamy.map, minlength=hy.size)
            pb_size = int((a * b).sum())
            codes = lamx.map.astype(np.int64) * Y.levels[n].size \
                + F.components[n].map
            image = len(np.unique(codes))
            entries.append(
                {
                    "n": n,
                    "k": k,
                    "pullback_size": pb_size,
                    "image_size": image,
                    "level_size": X.levels[n].size,
                    "surjective": bool(image == pb_size),
                    "injective": bool(image == X.levels[n].size),
                    "bijective": bool(
                        image == pb_size and image == X.levels[n].size
                    ),
                }
            )
    return KanReport(entries)


# -- decalage and coskeleton ----------------------------------------------

def decalage(X):
    """Shift away level 0; the counit collects the dropped last faces."""
    N = X.truncation
    if N < 1:
        raise PreconditionUnmet("decalage needs truncation >= 1")
    levels = X.levels[1:]
    faces = [[]]
    degeneracies = []
    for n in range(1, N):
        faces.append(X.faces[n + 1][: n + 1])
        degeneracies.append(X.degeneracies[n][: n])
    degeneracies.append([])
    dec = TruncatedSimplicialAlgebra(
        levels, faces, degeneracies, name=f"Dec({X.name})"
    )
    validate_simplicial(dec)
    target = truncate(X, N - 1)
    eps = SimplicialMorphism(
        dec, target, [X.faces[n + 1][n + 1] for n in range(N)], check=True
    )
    return dec, eps


def coskeleton(X, M, budget=None):
    """Extend by simplicial kernels up to truncation M."""
    if X.truncation < 1:
        raise PreconditionUnmet("coskeleton extension needs truncation >= 1")
    levels = list(X.levels)
    faces = [list(fs) for fs in X.faces]
    degeneracies = [list(ds) for ds in X.degeneracies]
    current = TruncatedSimplicialAlgebra(levels, faces, degeneracies, name=X.name)
    for n in range(X.truncation + 1, M + 1):
        alg, projections, _ = simplicial_kernel(current, n, budget=budget)
        lower = current.levels[n - 1]
        new_degs = []
        for i in range(n):
            cols = []
            for j in range(n + 1):
                if j < i:
                    cols.append(
                        current.degeneracies[n - 2][i - 1].map[
                            current.faces[n - 1][j].map
                        ]
                    )
                elif j in (i, i + 1):
                    cols.append(np.arange(lower.size))
                else:
                    cols.append(
                        current.degeneracies[n - 2][i].map[
                            current.faces[n - 1][j - 1].map
                        ]
                    )
            rows = np.stack(cols, axis=1)
            new_degs.append(
                Homomorphism(lower, alg, alg.carrier.index_of(rows), check=False)
            )
        levels = current.levels + [alg]
        faces = [list(fs) for fs in current.faces] + [projections]
        degeneracies = [list(ds) for ds in current.degeneracies]
        degeneracies[-1] = new_degs
        degeneracies.append([])
        current = TruncatedSimplicialAlgebra(
            levels, faces, degeneracies, name=f"cosk{n}({X.name})"
        )
        validate_simplicial(current)
    current.name = f"cosk({X.name},{M})"
    return current


# -- nerves ----------------------------------------------------------------

def nerve(G, M, budget=None, name=None):
    """Nerve of an internal groupoid, truncated at M >= 1."""
    if M < 1:
        raise InvalidParameters("nerve truncation must be at least 1")
    d0m, d1m, s0m = G.d0.map, G.d1.map, G.s0.map
    comp = G.comp
    levels = [G.objects, G.arrows]
    carriers = {1: None}
    faces = [[], [G.d0, G.d1]]
    degeneracies = [[G.s0]]
    for n in range(2, M + 1):
        cons = [(t - 1, d0m, t, d1m) for t in range(1, n)]
        rows = compatible_tuples([G.arrows] * n, cons, budget=budget)
        alg, _ = subproduct_algebra(f"N{n}({G.arrows.name})", [G.arrows] * n, rows)
        carriers[n] = alg.carrier
        rows = alg.carrier.rows
        prev = levels[n - 1]
        fs = []
        for i in range(n + 1):
            if i == 0:
                new = rows[:, 1:]
            elif i == n:
                new = rows[:, :-1]
            else:
                new = np.hstack(
                    [
                        rows[:, : i - 1],
                        comp[rows[:, i], rows[:, i - 1]][:, None],
                        rows[:, i + 1:],
                    ]
                )
            if n - 1 == 1:
                fmap = new[:, 0]
            else:
                fmap = carriers[n - 1].index_of(new)
            fs.append(Homomorphism(alg, prev, fmap, check=False))
        faces.append(fs)
        ds = []
        prev_rows = (
            np.arange(prev.size)[:, None] if n - 1 == 1 else carriers[n - 1].rows
        )
        for i in range(n):
            if i == 0:
                ins = s0m[d1m[prev_rows[:, 0]]]
            else:
                ins = s0m[d0m[prev_rows[:, i - 1]]]
            new = np.hstack(
                [prev_rows[:, :i], ins[:, None], prev_rows[:, i:]]
            )
            ds.append(
                Homomorphism(prev, alg, alg.carrier.index_of(new), check=False)
            )
        degeneracies.append(ds)
        levels.append(alg)
    degeneracies = degeneracies[: M] + [[]]
    out = TruncatedSimplicialAlgebra(
        levels, faces, degeneracies, name=name or f"nerve({G.arrows.name})"
    )
    validate_simplicial(out)
    return out


# -- products, pullbacks, quotients ---------------------------------------

def _paired_levels(levelsA, levelsB, row_sets, name):
    out_levels = []
    for n, rows in enumerate(row_sets):
        alg, _ = subproduct_algebra(
            f"{name}_{n}", [levelsA[n], levelsB[n]], rows
        )
        out_levels.append(alg)
    return out_levels


def _componentwise_map(level_dom, level_cod, mapA, mapB):
    rows = level_dom.carrier.rows
    new = np.stack([mapA[rows[:, 0]], mapB[rows[:, 1]]], axis=1)
    return Homomorphism(
        level_dom, level_cod, level_cod.carrier.index_of(new), check=False
    )


def simplicial_product(X, Y, budget=None, name=None):
    if X.truncation != Y.truncation:
        raise InvalidParameters("product needs equal truncations")
    name = name or f"({X.name}x{Y.name})"
    N = X.truncation
    row_sets = [
        compatible_tuples([X.levels[n], Y.levels[n]], [], budget=budget)
        for n in range(N + 1)
    ]
    levels = _paired_levels(X.levels, Y.levels, row_sets, name)
    faces = [[]]
    degeneracies = []
    for n in range(1, N + 1):
        faces.append(
            [
                _componentwise_map(
                    levels[n], levels[n - 1],
                    X.faces[n][i].map, Y.faces[n][i].map,
                )
                for i in range(n + 1)
            ]
        )
    for n in range(N):
        degeneracies.append(
            [
                _componentwise_map(
                    levels[n], levels[n + 1],
                    X.degeneracies[n][i].map, Y.degeneracies[n][i].map,
                )
                for i in range(n + 1)
            ]
        )
    degeneracies.append([])
    P = TruncatedSimplicialAlgebra(levels, faces, degeneracies, name=name)
    validate_simplicial(P)
    proj1 = SimplicialMorphism(
        P, X,
        [Homomorphism(levels[n], X.levels[n],
                      levels[n].carrier.rows[:, 0].copy(), check=False)
         for n in range(N + 1)],
        check=False,
    )
    proj2 = SimplicialMorphism(
        P, Y,
        [Homomorphism(levels[n], Y.levels[n],
                      levels[n].carrier.rows[:, 1].copy(), check=False)
         for n in range(N + 1)],
        check=False,
    )
    return P, proj1, proj2


def simplicial_pullback(F, G, budget=None, name=None):
    """Levelwise pullback of F: X -> Z and G: Y -> Z, with projections."""
    X, Y = F.dom, G.dom
    if F.cod is not G.cod:
        raise InvalidParameters("pullback needs a shared codomain")
    N = X.truncation
    name = name or f"pb({X.name},{Y.name})"
    row_sets = [
        compatible_tuples(
            [X.levels[n], Y.levels[n]],
            [(0, F.components[n].map, 1, G.components[n].map)],
            budget=budget,
        )
        for n in range(N + 1)
    ]
    levels = _paired_levels(X.levels, Y.levels, row_sets, name)
    faces = [[]]
    degeneracies = []
    for n in range(1, N + 1):
        faces.append(
            [
                _componentwise_map(
                    levels[n], levels[n - 1],
                    X.faces[n][i].map, Y.faces[n][i].map,
                )
                for i in range(n + 1)
            ]
        )
    for n in range(N):
        degeneracies.append(
            [
                _componentwise_map(
                    levels[n], levels[n + 1],
                    X.degeneracies[n][i].map, Y.degeneracies[n][i].map,
                )
                for i in range(n + 1)
            ]
        )
    degeneracies.append([])
    P = TruncatedSimplicialAlgebra(levels, faces, degeneracies, name=name)
    validate_simplicial(P)
    proj1 = SimplicialMorphism(
        P, X,
        [Homomorphism(levels[n], X.levels[n],
                      levels[n].carrier.rows[:, 0].copy(), check=False)
         for n in range(N + 1)],
        check=True,
    )
    proj2 = SimplicialMorphism(
        P, Y,
        [Homomorphism(levels[n], Y.levels[n],
                      levels[n].carrier.rows[:, 1].copy(), check=False)
         for n in range(N + 1)],
        check=True,
    )
    return P, proj1, proj2


def levelwise_kernel_pairs(F):
    return [cg.kernel_pair(F.components[n]) for n in range(F.dom.truncation + 1)]


def simplicial_congruence_generated(X, seeds):
    """Smallest levelwise family of congruences containing the seeds and
    closed under faces and degeneracies (seeds: level -> pair list)."""
    N = X.truncation
    parts = [cg.congruence_generated(X.levels[n], seeds.get(n, []))
             for n in range(N + 1)]
    while True:
        changed = False
        for n in range(1, N + 1):
            for d in X.faces[n]:
                pushed = _push_pairs(parts[n], d.map)
                merged = cg.congruence_generated(
                    X.levels[n - 1], pushed, initial=parts[n - 1]
                )
                if merged != parts[n - 1]:
                    parts[n - 1] = merged
                    changed = True
        for n in range(N):
            for s in X.degeneracies[n]:
                pushed = _push_pairs(parts[n], s.map)
                merged = cg.congruence_generated(
                    X.levels[n + 1], pushed, initial=parts[n + 1]
                )
                if merged != parts[n + 1]:
                    parts[n + 1] = merged
                    changed = True
        if not changed:
            return parts


def _push_pairs(cong, fmap):
    src = np.arange(len(cong.part))
    a, b = fmap[src], fmap[cong.part]
    mask = a != b
    return list(zip(a[mask].tolist(), b[mask].tolist()))


def is_simplicial_congruence(X, parts):
    """Faces and degeneracies must send each level's relation into the next."""
    N = X.truncation
    for n in range(1, N + 1):
        for d in X.faces[n]:
            if _push_violation(parts[n], parts[n - 1], d.map):
                return False
    for n in range(N):
        for s in X.degeneracies[n]:
            if _push_violation(parts[n], parts[n + 1], s.map):
                return False
    return True


def _push_violation(cong_dom, cong_cod, fmap):
    lhs = cong_cod.part[fmap]
    rhs = cong_cod.part[fmap[cong_dom.part]]
    return not np.array_equal(lhs, rhs)


def quotient_simplicial(X, parts, name=None):
    """Quotient by a simplicial congruence; returns (object, projection)."""
    N = X.truncation
    if not is_simplicial_congruence(X, parts):
        raise InvalidParameters("family is not closed under the structure maps")
    new_levels = []
    projs = []
    reps_list = []
    for n in range(N + 1):
        q, proj = cg.quotient(X.levels[n], parts[n])
        new_levels.append(q)
        projs.append(proj)
        reps_list.append(np.unique(parts[n].part))
    faces = [[]]
    degeneracies = []
    for n in range(1, N + 1):
        faces.append(
            [
                Homomorphism(
                    new_levels[n], new_levels[n - 1],
                    projs[n - 1].map[X.faces[n][i].map[reps_list[n]]],
                    check=False,
                )
                for i in range(n + 1)
            ]
        )
    for n in range(N):
        degeneracies.append(
            [
                Homomorphism(
                    new_levels[n], new_levels[n + 1],
                    projs[n + 1].map[X.degeneracies[n][i].map[reps_list[n]]],
                    check=False,
                )
                for i in range(n + 1)
            ]
        )
    degeneracies.append([])
    Y = TruncatedSimplicialAlgebra(
        new_levels, faces, degeneracies, name=name or f"{X.name}/~"
    )
    validate_simplicial(Y)
    proj = SimplicialMorphism(X, Y, projs, check=True)
    return Y, proj
