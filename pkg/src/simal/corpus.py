"""Deterministic corpus generators.

Every generator is a pure function of its parameters and seed; the seed
feeds a splitmix64 stream, so regeneration is reproducible across runs
and platforms.  Generated objects are validated before being returned.
"""

import itertools

import numpy as np

from .errors import InvalidParameters, UnsupportedVariety
from .terms import parse_term
from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    Signature,
    check_maltsev,
    check_tables,
    make_algebra,
)
from . import congruences as cg
from . import limits

GROUP_SIG = Signature([("mul", 2), ("inv", 1), ("e", 0)])
MODULE_SIG = Signature([("add", 2), ("neg", 1), ("zero", 0)])
HEYTING_SIG = Signature(
    [("meet", 2), ("join", 2), ("imp", 2), ("bot", 0), ("top", 0)]
)

GROUP_TERM = "mul(mul(x, inv(y)), z)"
MODULE_TERM = "add(add(x, neg(y)), z)"
HEYTING_TERM = "meet(join(x, z), imp(y, meet(x, z)))"

_MASK = (1 << 64) - 1


class SplitMix:
    """splitmix64 stream; stable across platforms and Python versions."""

    def __init__(self, seed):
        self.state = seed & _MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n):
        if n <= 0:
            raise InvalidParameters("randrange over empty range")
        return self.next_u64() % n

    def choice(self, seq):
        return seq[self.randrange(len(seq))]


# -- group-like algebras ---------------------------------------------------

def _group_from_elements(name, elements, compose, invert, identity):
    order = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    mul = np.zeros((n, n), dtype=np.int64)
    for i, gi in enumerate(elements):
        for j, gj in enumerate(elements):
            mul[i, j] = order[compose(gi, gj)]
    inv = np.asarray([order[invert(g)] for g in elements])
    e = np.asarray([order[identity]])
    alg = make_algebra(
        name, GROUP_SIG, {"mul": mul, "inv": inv, "e": e}, GROUP_TERM
    )
    alg.elements = list(elements)
    return alg


def _perm_compose(g, h):
    return tuple(g[h[i]] for i in range(len(g)))


def _perm_invert(g):
    out = [0] * len(g)
    for i, v in enumerate(g):
        out[v] = i
    return tuple(out)


def cyclic_group(n):
    """Z_n in multiplicative signature."""
    if n < 1:
        raise InvalidParameters("cyclic group needs n >= 1")
    a = np.arange(n)
    return make_algebra(
        f"C{n}",
        GROUP_SIG,
        {
            "mul": (a[:, None] + a[None, :]) % n,
            "inv": (-a) % n,
            "e": np.asarray([0]),
        },
        GROUP_TERM,
    )


def dihedral_group(n):
    """Symmetries of the n-gon, order 2n, as permutations of vertices."""
    if n < 2:
        raise InvalidParameters("dihedral group needs n >= 2")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    elements = set()
    frontier = [tuple(range(n))]
    while frontier:
        g = frontier.pop()
        if g in elements:
            continue
        elements.add(g)
        frontier.append(_perm_compose(rot, g))
        frontier.append(_perm_compose(ref, g))
    elements = sorted(elements)
    return _group_from_elements(
        f"D{n}", elements, _perm_compose, _perm_invert, tuple(range(n))
    )


def symmetric_group(n):
    if not 1 <= n <= 4:
        raise InvalidParameters("symmetric group supported for n <= 4")
    elements = sorted(itertools.permutations(range(n)))
    return _group_from_elements(
        f"S{n}", elements, _perm_compose, _perm_invert, tuple(range(n))
    )


def zk_module(k, copies=1):
    """(Z_k)^copies in additive signature."""
    if k < 1 or copies < 0:
        raise InvalidParameters("zk_module needs k >= 1, copies >= 0")
    n = k ** copies
    idx = np.arange(n)
    digits = []
    rest = idx.copy()
    for _ in range(copies):
        digits.append(rest % k)
        rest = rest // k
    add = np.zeros((n, n), dtype=np.int64)
    neg = np.zeros(n, dtype=np.int64)
    weight = 1
    for d in digits:
        add += ((d[:, None] + d[None, :]) % k) * weight
        neg += ((-d) % k) * weight
        weight *= k
    name = f"Z{k}" if copies == 1 else f"Z{k}^{copies}"
    return make_algebra(
        name, MODULE_SIG,
        {"add": add, "neg": neg, "zero": np.asarray([0])},
        MODULE_TERM,
    )


def product_group(a, b):
    alg, _ = limits.product(f"{a.name}x{b.name}", [a, b])
    alg.tables  # materialize and implicitly sanity-check closure
    check_tables(alg)
    check_maltsev(alg)
    return alg


def terminal_algebra(signature, term):
    """One-element algebra of the signature."""
    tables = {}
    for opname, arity in signature.ops:
        shape = (1,) * max(arity, 1)
        tables[opname] = np.zeros(shape, dtype=np.int64)
    alg = FiniteAlgebra("terminal", 1, signature, tables, term)
    check_tables(alg)
    check_maltsev(alg)
    return alg


# -- Heyting algebras from posets ------------------------------------------

def _poset_chain(n):
    less = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            less[i, j] = i <= j
    return less


def _poset_grid(rows, cols):
    n = rows * cols
    less = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            less[i, j] = (i // cols <= j // cols) and (i % cols <= j % cols)
    return less


def heyting_from_poset(poset):
    """Heyting algebra on a finite lattice given by its order relation.

    poset: {"kind": "chain", "n": k} or {"kind": "grid", "rows": a,
    "cols": b}, or an explicit boolean order matrix.
    """
    if isinstance(poset, dict):
        if poset.get("kind") == "chain":
            leq_mat = _poset_chain(int(poset["n"]))
            name = f"H-chain{poset['n']}"
        elif poset.get("kind") == "grid":
            leq_mat = _poset_grid(int(poset["rows"]), int(poset["cols"]))
            name = f"H-grid{poset['rows']}x{poset['cols']}"
        else:
            raise InvalidParameters(f"unknown poset kind {poset.get('kind')!r}")
    else:
        leq_mat = np.asarray(poset, dtype=bool)
        name = f"H-poset{leq_mat.shape[0]}"
    n = leq_mat.shape[0]
    if n == 0 or leq_mat.shape != (n, n):
        raise InvalidParameters("order matrix must be square and non-empty")

    def glb(i, j):
        lower = [z for z in range(n) if leq_mat[z, i] and leq_mat[z, j]]
        tops = [z for z in lower if all(leq_mat[w, z] for w in lower)]
        if len(tops) != 1:
            raise UnsupportedVariety("poset is not a lattice (meet missing)")
        return tops[0]

    def lub(i, j):
        upper = [z for z in range(n) if leq_mat[i, z] and leq_mat[j, z]]
        bots = [z for z in upper if all(leq_mat[z, w] for w in upper)]
        if len(bots) != 1:
            raise UnsupportedVariety("poset is not a lattice (join missing)")
        return bots[0]

    meet_t = np.zeros((n, n), dtype=np.int64)
    join_t = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            meet_t[i, j] = glb(i, j)
            join_t[i, j] = lub(i, j)
    bots = [z for z in range(n) if all(leq_mat[z, w] for w in range(n))]
    tops = [z for z in range(n) if all(leq_mat[w, z] for w in range(n))]
    if len(bots) != 1 or len(tops) != 1:
        raise UnsupportedVariety("poset lacks bottom or top")
    imp_t = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            cands = [z for z in range(n) if leq_mat[meet_t[i, z], j]]
            # the set of candidates needs a greatest element, else not Heyting
            best = [z for z in cands if all(leq_mat[w, z] for w in cands)]
            if len(best) != 1:
                raise UnsupportedVariety("poset has no relative pseudocomplement")
            imp_t[i, j] = best[0]
    return make_algebra(
        name,
        HEYTING_SIG,
        {
            "meet": meet_t,
            "join": join_t,
            "imp": imp_t,
            "bot": np.asarray(bots),
            "top": np.asarray(tops),
        },
        HEYTING_TERM,
    )


# -- internal groupoids ----------------------------------------------------

def congruence_groupoid(alg, theta, name=None):
    """Groupoid whose arrows are the related pairs of a congruence.

    An arrow (a, b) runs from a to b, so d1 picks the first component
    and d0 the second; composition pastes (a, b) then (b, c) to (a, c).
    """
    rows = theta.pairs()
    arrows, projections = limits.subproduct_algebra(
        name or f"{alg.name}-cong-arrows", [alg, alg], rows
    )
    d1, d0 = projections[0], projections[1]
    diag = np.stack([np.arange(alg.size)] * 2, axis=1)
    s0 = Homomorphism(alg, arrows, arrows.carrier.index_of(diag), check=False)
    R = arrows.carrier.rows
    comp = -np.ones((arrows.size, arrows.size), dtype=np.int64)
    gg, ff = np.nonzero(R[:, 0][:, None] == R[:, 1][None, :])
    codes = R[ff, 0].astype(np.int64) * alg.size + R[gg, 1]
    comp[gg, ff] = arrows.carrier.index_of_codes(codes)
    from .groupoid import InternalGroupoid

    return InternalGroupoid(alg, arrows, d0, d1, s0, comp)


def pair_groupoid(alg):
    return congruence_groupoid(alg, cg.full(alg), name=f"{alg.name}-pairs")


def discrete_groupoid(alg):
    return congruence_groupoid(alg, cg.diagonal(alg), name=f"{alg.name}-disc")


def is_abelian_group(grp):
    mul = grp.table("mul")
    return bool(np.array_equal(mul, mul.T))


def one_object_groupoid(grp):
    """A group as a groupoid over a one-point object algebra.

    Composition is group multiplication, which is only a homomorphism
    on composable pairs when the group is abelian.
    """
    if not is_abelian_group(grp):
        raise UnsupportedVariety(
            f"{grp.name} is not abelian; its delooping is not internal"
        )
    obj = terminal_algebra(grp.signature, GROUP_TERM)
    bang = Homomorphism(grp, obj, np.zeros(grp.size, dtype=np.int64), check=False)
    e_idx = int(grp.table("e")[0])
    s0 = Homomorphism(obj, grp, np.array([e_idx]), check=False)
    comp = grp.table("mul").astype(np.int64)
    from .groupoid import InternalGroupoid

    return InternalGroupoid(obj, grp, bang, bang, s0, comp)


def bundle_groupoid(fiber, base):
    """Disjoint bundle of abelian isotropy groups over a discrete base.

    Arrows are pairs (t, g) looping at the object g; composition adds
    the fiber components.
    """
    if not is_abelian_group(fiber):
        raise UnsupportedVariety("bundle isotropy must be abelian")
    arrows, projections = limits.product(
        f"({fiber.name}|{base.name})", [fiber, base]
    )
    pi_base = projections[1]
    e_f = int(fiber.table("e")[0])
    R = arrows.carrier.rows
    sec = np.stack([np.full(base.size, e_f), np.arange(base.size)], axis=1)
    s0 = Homomorphism(base, arrows, arrows.carrier.index_of(sec), check=False)
    mul_f = fiber.table("mul")
    comp = -np.ones((arrows.size, arrows.size), dtype=np.int64)
    gg, ff = np.nonzero(R[:, 1][:, None] == R[:, 1][None, :])
    codes = mul_f[R[gg, 0], R[ff, 0]].astype(np.int64) * base.size + R[gg, 1]
    comp[gg, ff] = arrows.carrier.index_of_codes(codes)
    from .groupoid import InternalGroupoid

    return InternalGroupoid(base, arrows, pi_base, pi_base, s0, comp)


def inner_coset_groupoid(grp, subgroup):
    """Groupoid of a normal subgroup acting on the whole group.

    Arrows are pairs (t, g) with t in the subgroup, running from g to
    t*g; they form the semidirect product under conjugation.
    """
    sub = sorted(int(t) for t in subgroup)
    mul = grp.table("mul")
    inv = grp.table("inv")
    e_idx = int(grp.table("e")[0])
    pos = {t: i for i, t in enumerate(sub)}
    if e_idx not in pos:
        raise InvalidParameters("subgroup must contain the identity")
    for t in sub:
        if inv[t] not in pos:
            raise InvalidParameters("subgroup not closed under inverse")
        for u in sub:
            if mul[t, u] not in pos:
                raise InvalidParameters("subgroup not closed under product")
    for g in range(grp.size):
        for t in sub:
            if mul[mul[g, t], inv[g]] not in pos:
                raise InvalidParameters("subgroup is not normal")
    m = len(sub)
    n1 = m * grp.size

    def enc(tpos, g):
        return tpos * grp.size + g

    mul_t = np.zeros((n1, n1), dtype=np.int64)
    inv_t = np.zeros(n1, dtype=np.int64)
    for a in range(n1):
        ta, ga = sub[a // grp.size], a % grp.size
        inv_t[a] = enc(pos[int(mul[mul[inv[ga], inv[ta]], ga])], int(inv[ga]))
        for b in range(n1):
            tb, gb = sub[b // grp.size], b % grp.size
            conj = mul[mul[ga, tb], inv[ga]]
            mul_t[a, b] = enc(pos[int(mul[ta, conj])], int(mul[ga, gb]))
    arrows = make_algebra(
        f"{grp.name}-coset-arrows",
        GROUP_SIG,
        {"mul": mul_t, "inv": inv_t, "e": np.array([enc(pos[e_idx], e_idx)])},
        GROUP_TERM,
    )
    tg = np.array([(sub[a // grp.size], a % grp.size) for a in range(n1)])
    d0 = Homomorphism(arrows, grp, mul[tg[:, 0], tg[:, 1]], check=True)
    d1 = Homomorphism(arrows, grp, tg[:, 1].copy(), check=True)
    s0 = Homomorphism(
        grp, arrows,
        np.array([enc(pos[e_idx], g) for g in range(grp.size)]),
        check=True,
    )
    comp = -np.ones((n1, n1), dtype=np.int64)
    for a in range(n1):
        for b in range(n1):
            if d1.map[a] == d0.map[b]:
                comp[a, b] = enc(pos[int(mul[tg[a, 0], tg[b, 0]])], int(tg[b, 1]))
    from .groupoid import InternalGroupoid

    return InternalGroupoid(grp, arrows, d0, d1, s0, comp)


# -- reflexive graphs and their simplicial objects -------------------------

def graph_object(X0, X1, d0, d1, s0, name="graph"):
    """A reflexive graph packaged as a truncation-1 simplicial object."""
    from .simplicial import TruncatedSimplicialAlgebra, validate_simplicial

    obj = TruncatedSimplicialAlgebra(
        [X0, X1], [[], [d0, d1]], [[s0], []], name=name
    )
    return validate_simplicial(obj)


def loops_graph(base, fiber):
    """Every edge is a loop: X1 = base x fiber with both faces the base
    projection."""
    e_f = _neutral_index(fiber)
    X1, projections = limits.product(
        f"{base.name}*{fiber.name}", [base, fiber]
    )
    pi = projections[0]
    sec = np.stack(
        [np.arange(base.size), np.full(base.size, e_f)], axis=1
    )
    s0 = Homomorphism(base, X1, X1.carrier.index_of(sec), check=False)
    return graph_object(
        base, X1, pi, pi, s0, name=f"loops({base.name},{fiber.name})"
    )


def translation_graph(base, fiber, delta):
    """Edges (a, b) from a to a + delta(b) over a commutative base."""
    if len(delta) != fiber.size:
        raise InvalidParameters(
            "delta must list one base step per fiber element"
        )
    ops = dict(base.signature.ops)
    plus = "add" if "add" in ops else "mul"
    e_f = _neutral_index(fiber)
    X1, projections = limits.product(
        f"{base.name}*{fiber.name}", [base, fiber]
    )
    pi = projections[0]
    R = X1.carrier.rows
    d1_map = base.table(plus)[R[:, 0], np.asarray(delta)[R[:, 1]]]
    d1 = Homomorphism(X1, base, d1_map, check=True)
    sec = np.stack([np.arange(base.size), np.full(base.size, e_f)], axis=1)
    s0 = Homomorphism(base, X1, X1.carrier.index_of(sec), check=False)
    return graph_object(
        base, X1, pi, d1, s0,
        name=f"transl({base.name},{fiber.name})",
    )


def _neutral_index(alg):
    ops = dict(alg.signature.ops)
    for cname in ("e", "zero"):
        if cname in ops and ops[cname] == 0:
            return int(alg.table(cname)[0])
    raise UnsupportedVariety("no neutral constant in signature")


def sk1_two_truncation(graph, name=None):
    """Degenerate 2-simplices freely added to a reflexive module graph.

    Level 2 is (X1 + X1) / (s0 a, -s0 a); the two degeneracies are the
    coprojections.  Only available over the module signature, where sums
    of levels exist.
    """
    X0, X1 = graph.levels[0], graph.levels[1]
    names = [op for op, _ in X1.signature.ops]
    if sorted(names) != ["add", "neg", "zero"]:
        raise UnsupportedVariety("level sums need the module signature")
    from .simplicial import TruncatedSimplicialAlgebra, validate_simplicial

    d0m = graph.faces[1][0].map
    d1m = graph.faces[1][1].map
    s0m = graph.degeneracies[0][0].map
    add_t = X1.table("add")
    neg_t = X1.table("neg")
    zero = int(X1.table("zero")[0])
    P, _ = limits.product(f"{X1.name}+{X1.name}", [X1, X1])

    def idx(u, v):
        return int(P.carrier.index_of_codes(
            np.array([u * X1.size + v], dtype=np.int64)
        )[0])

    gens = [
        (idx(int(s0m[a]), int(neg_t[s0m[a]])), idx(zero, zero))
        for a in range(X0.size)
    ]
    theta = cg.congruence_generated(P, gens)
    X2, proj2 = cg.quotient(P, theta)
    reps = np.unique(theta.part)
    R = P.carrier.rows[reps]
    u, v = R[:, 0], R[:, 1]
    faces2 = [
        Homomorphism(X2, X1, add_t[u, s0m[d0m[v]]], check=False),
        Homomorphism(X2, X1, add_t[u, v], check=False),
        Homomorphism(X2, X1, add_t[s0m[d1m[u]], v], check=False),
    ]
    all_u = np.arange(X1.size, dtype=np.int64)
    s0_2 = Homomorphism(
        X1, X2, proj2.map[P.carrier.index_of_codes(all_u * X1.size + zero)],
        check=False,
    )
    s1_2 = Homomorphism(
        X1, X2, proj2.map[P.carrier.index_of_codes(zero * X1.size + all_u)],
        check=False,
    )
    obj = TruncatedSimplicialAlgebra(
        [X0, X1, X2],
        [[], list(graph.faces[1]), faces2],
        [[graph.degeneracies[0][0]], [s0_2, s1_2], []],
        name=name or f"sk1({graph.name})",
    )
    return validate_simplicial(obj, check_homs=True)


# -- nerves and extensions -------------------------------------------------

def congruence_nerve(alg, theta, M):
    from .simplicial import nerve

    return nerve(
        congruence_groupoid(alg, theta), M,
        name=f"N({alg.name},{theta.class_count()}cl)",
    )


def groupoid_functor_nerve_map(GX, GY, f0, f1, M, name=None, target=None):
    """Nerve of a functor given by its object and arrow components.

    A prebuilt nerve of the codomain groupoid may be passed as target so
    several morphisms can share one codomain instance.
    """
    from .simplicial import nerve, SimplicialMorphism

    X = nerve(GX, M)
    Y = target if target is not None else nerve(GY, M)
    comps = [f0, f1]
    for n in range(2, M + 1):
        cols = f1.map[X.levels[n].carrier.rows]
        comps.append(
            Homomorphism(
                X.levels[n], Y.levels[n],
                Y.levels[n].carrier.index_of(cols), check=False,
            )
        )
    out = SimplicialMorphism(X, Y, comps, check=True)
    out.name = name or f"{X.name}->{Y.name}"
    return out


def congruence_nerve_extension(alg, theta, psi, M, name=None):
    """Collapse a congruence nerve along a second congruence."""
    B, q = cg.quotient(alg, psi)
    phi = cg.image(q, cg.join(theta, psi))
    GX = congruence_groupoid(alg, theta)
    GY = congruence_groupoid(B, phi)
    R = GX.arrows.carrier.rows
    pairs = np.stack([q.map[R[:, 0]], q.map[R[:, 1]]], axis=1)
    f1 = Homomorphism(
        GX.arrows, GY.arrows, GY.arrows.carrier.index_of(pairs), check=False
    )
    return groupoid_functor_nerve_map(GX, GY, q, f1, M, name=name)


def delooping_extension(hom, M, name=None):
    """Nerve of a surjective homomorphism between abelian groups."""
    GX = one_object_groupoid(hom.dom)
    GY = one_object_groupoid(hom.cod)
    f0 = Homomorphism(GX.objects, GY.objects, np.zeros(1, dtype=np.int64),
                      check=False)
    return groupoid_functor_nerve_map(GX, GY, f0, hom, M, name=name)


def bundle_collapse_extension(fiber, base, M, name=None):
    """Forget the isotropy of a bundle groupoid onto the discrete base."""
    GX = bundle_groupoid(fiber, base)
    GY = discrete_groupoid(base)
    R = GX.arrows.carrier.rows
    diag = np.stack([R[:, 1], R[:, 1]], axis=1)
    f1 = Homomorphism(
        GX.arrows, GY.arrows, GY.arrows.carrier.index_of(diag), check=False
    )
    f0 = Homomorphism(base, base, np.arange(base.size), check=False)
    return groupoid_functor_nerve_map(GX, GY, f0, f1, M, name=name)


def augmentation_extension(X, q, name=None):
    """Map a simplicial object onto a constant one along an augmentation
    q: X_0 -> A with q d0 = q d1."""
    from .simplicial import constant_simplicial, SimplicialMorphism

    N = X.truncation
    C = constant_simplicial(q.cod, N)
    comps = [q]
    for n in range(1, N + 1):
        comps.append(
            Homomorphism(
                X.levels[n], q.cod,
                comps[0].map[_iterated_last_face(X, n)], check=False,
            )
        )
    out = SimplicialMorphism(X, C, comps, check=True)
    out.name = name or f"{X.name}->const"
    return out


def _iterated_last_face(X, n):
    vertex = np.arange(X.levels[n].size)
    for m in range(n, 0, -1):
        vertex = X.faces[m][m].map[vertex]
    return vertex


# -- named lookup and generation specs -------------------------------------

def _perm_parity(perm):
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return inv % 2


def alternating_indices(sym):
    """Indices of even permutations in a symmetric group generator."""
    return [i for i, p in enumerate(sym.elements) if _perm_parity(p) == 0]


def sign_homomorphism(sym):
    c2 = cyclic_group(2)
    parity = np.array([_perm_parity(p) for p in sym.elements], dtype=np.int64)
    return Homomorphism(sym, c2, parity, check=True)


def named_algebra(name):
    import re

    if m := re.fullmatch(r"C(\d+)", name):
        return cyclic_group(int(m.group(1)))
    if m := re.fullmatch(r"D(\d+)", name):
        return dihedral_group(int(m.group(1)))
    if m := re.fullmatch(r"S(\d+)", name):
        return symmetric_group(int(m.group(1)))
    if m := re.fullmatch(r"Z(\d+)\^(\d+)", name):
        return zk_module(int(m.group(1)), int(m.group(2)))
    if m := re.fullmatch(r"Z(\d+)", name):
        return zk_module(int(m.group(1)))
    if m := re.fullmatch(r"chain(\d+)", name):
        return heyting_from_poset({"kind": "chain", "n": int(m.group(1))})
    if m := re.fullmatch(r"grid(\d+)x(\d+)", name):
        return heyting_from_poset(
            {"kind": "grid", "rows": int(m.group(1)), "cols": int(m.group(2))}
        )
    raise InvalidParameters(f"unknown algebra name {name!r}")


def generate(spec):
    """Build an artifact from a JSON-style description.

    Returns an algebra, a simplicial object, or a simplicial morphism
    depending on the kind. Identical spec and seed give identical output.
    """
    from .simplicial import (
        nerve,
        coskeleton,
        decalage,
        simplicial_product,
        simplicial_congruence_generated,
        quotient_simplicial,
    )

    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidParameters("generator spec needs a 'kind' field")
    kind = spec["kind"]
    M = int(spec.get("truncation", 2))

    if kind == "cyclic_group":
        return cyclic_group(int(spec["n"]))
    if kind == "dihedral_group":
        return dihedral_group(int(spec["n"]))
    if kind == "symmetric_group_3":
        return symmetric_group(3)
    if kind == "zk_module":
        return zk_module(int(spec["k"]), int(spec.get("copies", 1)))
    if kind == "heyting_from_poset":
        return heyting_from_poset(spec["poset"])

    if kind in ("pair", "pair_groupoid"):
        return nerve(pair_groupoid(named_algebra(spec["algebra"])), M)
    if kind in ("discrete", "discrete_groupoid"):
        return nerve(discrete_groupoid(named_algebra(spec["algebra"])), M)
    if kind == "delooping":
        return nerve(one_object_groupoid(named_algebra(spec["algebra"])), M)
    if kind == "bundle":
        return nerve(
            bundle_groupoid(
                named_algebra(spec["fiber"]), named_algebra(spec["base"])
            ),
            M,
        )
    if kind in ("congruence", "congruence_nerve"):
        alg = named_algebra(spec["algebra"])
        pairs = [(int(a), int(b)) for a, b in spec["generators"]]
        theta = cg.congruence_generated(alg, pairs)
        return congruence_nerve(alg, theta, M)
    if kind == "random_congruence":
        alg = named_algebra(spec["algebra"])
        rng = SplitMix(int(spec.get("seed", 0)))
        a = rng.randrange(alg.size)
        b = rng.randrange(alg.size)
        theta = cg.congruence_generated(alg, [(a, b)])
        return congruence_nerve(alg, theta, M)
    if kind in ("coset", "crossed_module_groupoid"):
        grp = named_algebra(spec["group"])
        sub = spec.get("subgroup")
        if sub is None:
            sub = alternating_indices(grp)
        return nerve(inner_coset_groupoid(grp, sub), M)
    if kind == "sk1_loops":
        return sk1_two_truncation(
            loops_graph(
                named_algebra(spec["base"]), named_algebra(spec["fiber"])
            )
        )
    if kind == "sk1_translation":
        return sk1_two_truncation(
            translation_graph(
                named_algebra(spec["base"]),
                named_algebra(spec["fiber"]),
                [int(x) for x in spec["delta"]],
            )
        )
    if kind in ("cosk_loops", "coskeleton_of_graph"):
        return coskeleton(
            loops_graph(
                named_algebra(spec["base"]), named_algebra(spec["fiber"])
            ),
            M,
        )

    if kind == "decalage_of":
        return decalage(generate(spec["of"]))[0]
    if kind == "quotient_extension":
        X = generate(spec["of"])
        seeds = {
            int(level): [(int(a), int(b)) for a, b in pairs]
            for level, pairs in spec["pairs"].items()
        }
        parts = simplicial_congruence_generated(X, seeds)
        return quotient_simplicial(X, parts)[1]
    if kind == "product_projection":
        X = generate(spec["left"])
        Y = generate(spec["right"])
        return simplicial_product(X, Y)[1]
    raise InvalidParameters(f"unknown generator kind {kind!r}")


# -- the default corpus ----------------------------------------------------

def default_corpus(profile="desk"):
    """Deterministic collection of simplicial objects and extensions.

    The desk profile stays small enough for an interactive run; deep
    adds larger instances of the same families.
    """
    if profile not in ("desk", "deep"):
        raise InvalidParameters("profile must be desk or deep")
    deep = profile == "deep"
    from .simplicial import (
        nerve, decalage, coskeleton, simplicial_product,
        simplicial_congruence_generated, quotient_simplicial,
    )
    from .reflection import pi1
    from .algebra import identity_hom

    c2, c3, c4, c6 = (cyclic_group(k) for k in (2, 3, 4, 6))
    z2m, z4m, z22 = zk_module(2), zk_module(4), zk_module(2, 2)
    s3 = symmetric_group(3)
    d4 = dihedral_group(4)
    chain3 = heyting_from_poset({"kind": "chain", "n": 3})
    v4 = product_group(c2, c2)
    algebras = {
        a.name: a for a in (c2, c3, c4, c6, z2m, z4m, z22, s3, d4, chain3, v4)
    }

    objects = []

    def add_obj(name, X):
        X.name = name
        objects.append((name, X))
        return X

    pair_c2_t3 = add_obj("pair-C2-t3", nerve(pair_groupoid(c2), 3))
    pair_c4_t3 = add_obj("pair-C4-t3", nerve(pair_groupoid(c4), 3))
    add_obj("disc-C4-t3", nerve(discrete_groupoid(c4), 3))
    b_c4_t3 = add_obj("B-C4-t3", nerve(one_object_groupoid(c4), 3))
    add_obj("B-V4-t3", nerve(one_object_groupoid(v4), 3))
    add_obj("bundle-C2-C3-t3", nerve(bundle_groupoid(c2, c3), 3))
    add_obj(
        "cong-Z6-t3",
        congruence_nerve(c6, cg.principal_congruence(c6, 0, 3), 3),
    )
    coset_s3_t2 = add_obj(
        "coset-S3-t2", nerve(inner_coset_groupoid(s3, alternating_indices(s3)), 2)
    )
    sk_loops = add_obj(
        "sk1-loops-Z2", sk1_two_truncation(loops_graph(z2m, z2m))
    )
    sk_transl = add_obj(
        "sk1-transl-Z4",
        sk1_two_truncation(translation_graph(z4m, z2m, [0, 2])),
    )
    cosk_loops = add_obj(
        "cosk-loops-C2-t3", coskeleton(loops_graph(c2, c2), 3)
    )
    if deep:
        add_obj("pair-S3-t3", nerve(pair_groupoid(s3), 3))
        add_obj("pair-D4-t2", nerve(pair_groupoid(d4), 2))
        add_obj("B-C6-t3", nerve(one_object_groupoid(c6), 3))
        add_obj("bundle-V4-C4-t2", nerve(bundle_groupoid(v4, c4), 2))
        add_obj(
            "cosk-loops-C4-t3", coskeleton(loops_graph(c4, c2), 3)
        )
        add_obj(
            "sk1-loops-Z3", sk1_two_truncation(loops_graph(zk_module(3), zk_module(3)))
        )

    groupoids = [
        ("pairs(C4)", pair_groupoid(c4)),
        ("disc(C4)", discrete_groupoid(c4)),
        ("B(C4)", one_object_groupoid(c4)),
        ("bundle(C2,C3)", bundle_groupoid(c2, c3)),
        ("coset(S3,A3)", inner_coset_groupoid(s3, alternating_indices(s3))),
    ]

    extensions = []

    def add_ext(name, F):
        F.name = name
        if not F.is_levelwise_surjective():
            raise InvalidParameters(f"corpus extension {name} is not surjective")
        extensions.append((name, F))
        return F

    mod2_c4 = cg.principal_congruence(c4, 0, 2)
    add_ext("pairC4-pairC2", congruence_nerve_extension(c4, cg.full(c4), mod2_c4, 2))
    add_ext("congC4-discC2", congruence_nerve_extension(c4, mod2_c4, mod2_c4, 2))
    add_ext(
        "discC4-discC2",
        congruence_nerve_extension(c4, cg.diagonal(c4), mod2_c4, 2),
    )
    add_ext(
        "congZ6-mix",
        congruence_nerve_extension(
            c6, cg.principal_congruence(c6, 0, 3),
            cg.principal_congruence(c6, 0, 2), 2,
        ),
    )
    add_ext(
        "pairZ6-pairC3",
        congruence_nerve_extension(
            c6, cg.full(c6), cg.principal_congruence(c6, 0, 3), 2
        ),
    )
    a3_cong = cg.congruence_generated(
        s3, [(0, t) for t in alternating_indices(s3)]
    )
    add_ext("pairS3-pairC2", congruence_nerve_extension(s3, cg.full(s3), a3_cong, 2))
    add_ext("congS3-discC2", congruence_nerve_extension(s3, a3_cong, a3_cong, 2))
    add_ext(
        "pairZ22-pairZ2",
        congruence_nerve_extension(
            z22, cg.full(z22), cg.principal_congruence(z22, 0, 1), 2
        ),
    )
    center_d4 = [
        th for th in cg.enumerate_congruences(d4) if th.class_count() == 4
    ][0]
    add_ext(
        "pairD4-center",
        congruence_nerve_extension(d4, cg.full(d4), center_d4, 2),
    )
    add_ext(
        "heyting-chain3",
        congruence_nerve_extension(
            chain3, cg.full(chain3), cg.principal_congruence(chain3, 0, 1), 2
        ),
    )

    add_ext(
        "deloop-C4-C2",
        delooping_extension(Homomorphism(c4, c2, [0, 1, 0, 1]), 3),
    )
    add_ext(
        "deloop-V4-C2",
        delooping_extension(Homomorphism(v4, c2, [0, 0, 1, 1]), 3),
    )
    add_ext(
        "deloop-C6-C3",
        delooping_extension(Homomorphism(c6, c3, [0, 1, 2, 0, 1, 2]), 3),
    )
    add_ext(
        "deloop-C6-C2",
        delooping_extension(Homomorphism(c6, c2, [0, 1, 0, 1, 0, 1]), 3),
    )
    add_ext("deloop-C4-id", delooping_extension(identity_hom(c4), 3))

    add_ext("bundle-C2-C3-collapse", bundle_collapse_extension(c2, c3, 3))
    add_ext("bundle-C2-S3-collapse", bundle_collapse_extension(c2, s3, 2))
    add_ext("bundle-V4-C2-collapse", bundle_collapse_extension(v4, c2, 3))

    pair_c2_t2 = nerve(pair_groupoid(c2), 2)
    b_c4_t2 = nerve(one_object_groupoid(c4), 2)
    _, prj1, prj2 = simplicial_product(pair_c2_t2, b_c4_t2)
    add_ext("product-proj-left", prj1)
    add_ext("product-proj-right", prj2)

    add_ext("dec-counit-pairC4", decalage(pair_c4_t3)[1])
    add_ext("dec-counit-B-C4", decalage(b_c4_t3)[1])

    add_ext(
        "augment-cosk-loops", augmentation_extension(cosk_loops, identity_hom(c2))
    )
    add_ext(
        "augment-sk1-loops", augmentation_extension(sk_loops, identity_hom(z2m))
    )

    parts = simplicial_congruence_generated(sk_transl, {1: [(0, 4)]})
    add_ext("quotient-sk1-transl", quotient_simplicial(sk_transl, parts)[1])

    # Glue the two loops at a single base point; the kernel then sits inside
    # the loop congruence, so the projection is central without being trivial.
    fiber_parts = simplicial_congruence_generated(cosk_loops, {1: [(0, 1)]})
    add_ext(
        "quotient-cosk-fibers", quotient_simplicial(cosk_loops, fiber_parts)[1]
    )

    coset_g = inner_coset_groupoid(s3, alternating_indices(s3))
    sign = sign_homomorphism(s3)
    disc_c2 = discrete_groupoid(sign.cod)
    f1 = Homomorphism(
        coset_g.arrows, disc_c2.arrows, sign.map[coset_g.d1.map], check=False
    )
    add_ext(
        "coset-disc-C2",
        groupoid_functor_nerve_map(coset_g, disc_c2, sign, f1, 2),
    )

    for label, source in (
        ("unit-pair-C2", pair_c2_t3),
        ("unit-bundle-C2-C3", nerve(bundle_groupoid(c2, c3), 2)),
        ("unit-sk1-loops", sk_loops),
        ("unit-cosk-loops", coskeleton(loops_graph(c2, c2), 2)),
        ("unit-coset-S3", coset_s3_t2),
    ):
        add_ext(label, pi1(source).unit)

    if deep:
        add_ext(
            "pairC6-pairC2",
            congruence_nerve_extension(
                c6, cg.full(c6), cg.principal_congruence(c6, 0, 2), 2
            ),
        )
        add_ext(
            "pairC6-pairC3-t3",
            congruence_nerve_extension(
                c6, cg.full(c6), cg.principal_congruence(c6, 0, 3), 3
            ),
        )
        add_ext(
            "pairC4-pairC2-t3",
            congruence_nerve_extension(c4, cg.full(c4), mod2_c4, 3),
        )
        add_ext(
            "deloop-C8-C4",
            delooping_extension(
                Homomorphism(cyclic_group(8), c4, [x % 4 for x in range(8)]), 3
            ),
        )
        grid = heyting_from_poset({"kind": "grid", "rows": 2, "cols": 2})
        add_ext(
            "heyting-grid-ext",
            congruence_nerve_extension(
                grid, cg.full(grid), cg.principal_congruence(grid, 0, 1), 2
            ),
        )
        add_ext("bundle-C3-C4-collapse", bundle_collapse_extension(c3, c4, 2))
        add_ext("unit-pair-C4", pi1(nerve(pair_groupoid(c4), 2)).unit)
        add_ext("unit-bundle-V4-C4", pi1(nerve(bundle_groupoid(v4, c4), 2)).unit)

    return {
        "profile": profile,
        "algebras": algebras,
        "objects": objects,
        "groupoids": groupoids,
        "extensions": extensions,
    }


def probe_kit(alg, inclusion, companion, M=2):
    """A morphism and extensions sharing one pair-groupoid nerve target.

    inclusion: a homomorphism into alg inducing the probed morphism;
    companion: an algebra whose product with alg supplies a collapsing
    extension over the target.
    """
    from .simplicial import nerve, simplicial_product

    G = pair_groupoid(alg)
    target = nerve(G, M)

    GW = pair_groupoid(inclusion.dom)
    rw = GW.arrows.carrier.rows
    cols = np.stack([inclusion.map[rw[:, 0]], inclusion.map[rw[:, 1]]], axis=1)
    f1 = Homomorphism(
        GW.arrows, G.arrows, G.arrows.carrier.index_of(cols), check=False
    )
    probed = groupoid_functor_nerve_map(
        GW, G, inclusion, f1, M, name="probed", target=target
    )

    prod = product_group(alg, companion) if _is_group(alg) and _is_group(
        companion
    ) else None
    if prod is None:
        raise UnsupportedVariety("probe kit needs group-signature inputs")
    GZ = pair_groupoid(prod)
    pi0 = Homomorphism(
        prod, alg, prod.carrier.rows[:, 0].copy(), check=True
    )
    rz = GZ.arrows.carrier.rows
    zcols = np.stack([pi0.map[rz[:, 0]], pi0.map[rz[:, 1]]], axis=1)
    g1 = Homomorphism(
        GZ.arrows, G.arrows, G.arrows.carrier.index_of(zcols), check=False
    )
    collapse = groupoid_functor_nerve_map(
        GZ, G, pi0, g1, M, name="collapse", target=target
    )

    other = nerve(pair_groupoid(companion), M)
    _, _, proj = simplicial_product(other, target)
    proj.name = "projection"
    return probed, [("collapse", collapse), ("projection", proj)]


def _is_group(alg):
    return [op for op, _ in alg.signature.ops] == ["mul", "inv", "e"]
