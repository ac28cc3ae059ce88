"""Congruences on finite Mal'tsev algebras.

A congruence is stored as a partition array: part[i] is the least
element of the block containing i.  Meets, joins, images, preimages and
quotients all work on these label arrays.

The join of two congruences is computed as the transitive closure of
their union and then certified: in a Mal'tsev algebra the closure must
already equal the single relational composite, and the composite must
commute.  A failed certificate raises JoinNotComposite rather than
silently returning the closure.
"""

import numpy as np

from .errors import (
    BudgetExceeded,
    InvalidParameters,
    JoinNotComposite,
    NotSurjective,
    NotTransitive,
)
from .algebra import FiniteAlgebra, Homomorphism, same_signature


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def labels(self):
        return np.asarray([self.find(i) for i in range(len(self.parent))],
                          dtype=np.int64)


def canonical_partition(labels):
    """Relabel an arbitrary label array so each class is named by its least member."""
    labels = np.asarray(labels)
    n = labels.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, inverse = np.unique(labels, return_inverse=True)
    firsts = np.full(inverse.max() + 1, n, dtype=np.int64)
    np.minimum.at(firsts, inverse, np.arange(n))
    return firsts[inverse]


class Congruence:
    def __init__(self, on, part, check=True):
        self.on = on
        part = np.asarray(part, dtype=np.int64)
        if part.shape != (on.size,):
            raise InvalidParameters("partition array has wrong length")
        self.part = canonical_partition(part)
        if check:
            check_compatibility(self)

    # -- queries ----------------------------------------------------------

    def related(self, a, b):
        return bool(self.part[a] == self.part[b])

    def is_diagonal(self):
        return bool(np.array_equal(self.part, np.arange(self.on.size)))

    def is_full(self):
        return self.on.size <= 1 or bool((self.part == 0).all())

    def class_count(self):
        return len(np.unique(self.part)) if self.on.size else 0

    def block_sizes(self):
        _, counts = np.unique(self.part, return_counts=True)
        return counts

    def pair_count(self):
        """Number of ordered related pairs."""
        return int((self.block_sizes() ** 2).sum())

    def blocks(self):
        order = np.argsort(self.part, kind="stable")
        reps, starts = np.unique(self.part[order], return_index=True)
        out = []
        for k in range(len(reps)):
            end = starts[k + 1] if k + 1 < len(reps) else len(order)
            out.append(order[starts[k]:end])
        return out

    def pairs(self):
        """All ordered related pairs as a (k, 2) array."""
        out = []
        for blk in self.blocks():
            grid = np.array(np.meshgrid(blk, blk)).T.reshape(-1, 2)
            out.append(grid)
        return np.concatenate(out) if out else np.empty((0, 2), dtype=np.int64)

    def key(self):
        return self.part.tobytes()

    def __eq__(self, other):
        return (
            isinstance(other, Congruence)
            and self.on is other.on
            and np.array_equal(self.part, other.part)
        )

    def __hash__(self):
        return hash((id(self.on), self.key()))

    def __repr__(self):
        return f"Congruence(on={self.on.name}, classes={self.class_count()})"


def diagonal(alg):
    return Congruence(alg, np.arange(alg.size), check=False)


def full(alg):
    return Congruence(alg, np.zeros(alg.size, dtype=np.int64), check=False)


def from_blocks(alg, blocks):
    part = np.full(alg.size, -1, dtype=np.int64)
    for blk in blocks:
        for x in blk:
            part[x] = min(blk)
    if (part < 0).any():
        raise InvalidParameters("blocks do not cover the carrier")
    return Congruence(alg, part)


def check_compatibility(cong):
    """Exhaustively verify the partition respects every operation."""
    alg, part = cong.on, cong.part
    for opname, arity in alg.signature.ops:
        if arity == 0:
            continue
        t = alg.table(opname)
        result_class = part[t]
        grids = np.ix_(*([part] * arity)) if arity > 1 else (part,)
        on_reps = result_class[grids]
        if not np.array_equal(result_class, on_reps):
            where = np.argwhere(result_class != on_reps)[0]
            raise InvalidParameters(
                f"partition not compatible with {opname!r} at {tuple(where)}"
            )


def leq(theta, psi):
    """theta <= psi as relations."""
    _same_carrier(theta, psi)
    return bool(np.array_equal(psi.part[theta.part], psi.part))


def meet(theta, psi):
    _same_carrier(theta, psi)
    n = theta.on.size
    labels = theta.part * (n + 1) + psi.part
    return Congruence(theta.on, canonical_partition(labels), check=False)


def meet_all(congs):
    if not congs:
        raise InvalidParameters("meet of empty list")
    out = congs[0]
    for c in congs[1:]:
        out = meet(out, c)
    return out


def _composite_pair_count(theta, psi):
    """Number of pairs in the relational composite theta o psi."""
    n = theta.on.size
    if n == 0:
        return 0
    _, tid = np.unique(theta.part, return_inverse=True)
    _, pid = np.unique(psi.part, return_inverse=True)
    tsizes = np.bincount(tid)
    psizes = np.bincount(pid)
    codes = tid.astype(np.int64) * len(psizes) + pid
    uniq = np.unique(codes)
    ut, up = uniq // len(psizes), uniq % len(psizes)
    reach = np.zeros(len(tsizes), dtype=np.int64)
    np.add.at(reach, ut, psizes[up])
    return int((tsizes * reach).sum())


def join(theta, psi):
    """Join; certified equal to the one-step relational composite."""
    _same_carrier(theta, psi)
    n = theta.on.size
    uf = UnionFind(n)
    for i in range(n):
        uf.union(i, int(theta.part[i]))
        uf.union(i, int(psi.part[i]))
    result = Congruence(theta.on, uf.labels(), check=False)
    if _composite_pair_count(theta, psi) != result.pair_count():
        a, c = _composite_gap_witness(theta, psi, result)
        raise JoinNotComposite(
            f"on {theta.on.name}: ({a},{c}) in the join but not in the "
            f"one-step composite"
        )
    return result


def _composite_gap_witness(theta, psi, joined):
    n = theta.on.size
    for blk in joined.blocks():
        for a in blk:
            reach = set()
            tb = theta.part[a]
            members = np.nonzero(theta.part == tb)[0]
            for b in members:
                reach.update(np.nonzero(psi.part == psi.part[b])[0].tolist())
            for c in blk:
                if int(c) not in reach:
                    return int(a), int(c)
    raise AssertionError("no witness found for composite gap")


def join_all(congs):
    if not congs:
        raise InvalidParameters("join of empty list")
    out = congs[0]
    for c in congs[1:]:
        out = join(out, c)
    return out


def kernel_pair(f):
    """Congruence on the domain identifying elements with equal image."""
    return Congruence(f.dom, canonical_partition(f.map), check=False)


def preimage(f, theta):
    if theta.on is not f.cod:
        raise InvalidParameters("preimage congruence lives on the wrong algebra")
    return Congruence(f.dom, canonical_partition(theta.part[f.map]), check=False)


def image(f, theta):
    """Direct image congruence under a surjection; transitivity is certified."""
    if theta.on is not f.dom:
        raise InvalidParameters("image congruence lives on the wrong algebra")
    if not f.is_surjective():
        raise NotSurjective(f"{f!r} is not surjective")
    m = f.cod.size
    uf = UnionFind(m)
    for i in range(f.dom.size):
        uf.union(int(f.map[i]), int(f.map[theta.part[i]]))
    closure = Congruence(f.cod, uf.labels(), check=False)
    codes = []
    for blk in theta.blocks():
        imgs = np.unique(f.map[blk])
        grid = imgs[:, None] * m + imgs[None, :]
        codes.append(grid.ravel())
    distinct = len(np.unique(np.concatenate(codes))) if codes else 0
    if distinct != closure.pair_count():
        a, b = _image_gap_witness(f, theta, closure)
        raise NotTransitive(
            f"image of congruence under {f!r} is not transitive; "
            f"pair ({a},{b}) is in the closure only"
        )
    return closure


def _image_gap_witness(f, theta, closure):
    pair_set = set()
    for blk in theta.blocks():
        imgs = np.unique(f.map[blk])
        for a in imgs:
            for b in imgs:
                pair_set.add((int(a), int(b)))
    for blk in closure.blocks():
        for a in blk:
            for b in blk:
                if (int(a), int(b)) not in pair_set:
                    return int(a), int(b)
    raise AssertionError("no witness found for transitivity gap")


def quotient(alg, theta):
    """Quotient algebra and its projection."""
    if theta.on is not alg:
        raise InvalidParameters("congruence lives on a different algebra")
    reps = np.unique(theta.part)
    to_block = np.searchsorted(reps, theta.part)

    def build():
        tables = {}
        for opname, arity in alg.signature.ops:
            t = alg.table(opname)
            if arity == 0:
                tables[opname] = np.asarray([to_block[t[0]]])
            else:
                grids = np.ix_(*([reps] * arity)) if arity > 1 else (reps,)
                tables[opname] = to_block[t[grids]]
        return tables

    q = FiniteAlgebra(
        f"{alg.name}/cong{len(reps)}", len(reps), alg.signature,
        None, alg.maltsev_term, table_builder=build,
    )
    proj = Homomorphism(alg, q, to_block, check=False)
    return q, proj


def congruence_generated(alg, pairs, initial=None):
    """Smallest congruence containing the given pairs.

    Fixpoint of: close under the equivalence operations, then merge any
    two operation results whose argument classes agree.
    """
    n = alg.size
    uf = UnionFind(n)
    if initial is not None:
        for i in range(n):
            uf.union(i, int(initial.part[i]))
    for a, b in pairs:
        uf.union(int(a), int(b))
    if n == 0:
        return Congruence(alg, np.zeros(0, dtype=np.int64), check=False)
    labels = canonical_partition(uf.labels())
    while True:
        changed = False
        for opname, arity in alg.signature.ops:
            if arity == 0:
                continue
            t = alg.table(opname)
            grids = np.ix_(*([labels] * arity)) if arity > 1 else (labels,)
            keys = np.zeros((n,) * arity, dtype=np.int64)
            base = np.int64(n + 1)
            for g in np.broadcast_arrays(*grids):
                keys = keys * base + g
            keys = keys.ravel()
            vals = labels[t].ravel()
            order = np.argsort(keys, kind="stable")
            ks, vs = keys[order], vals[order]
            newrun = np.empty(len(ks), dtype=bool)
            if len(ks):
                newrun[0] = True
                newrun[1:] = ks[1:] != ks[:-1]
            run_start = np.maximum.accumulate(
                np.where(newrun, np.arange(len(ks)), 0)
            )
            leaders = vs[run_start]
            mism = vs != leaders
            if mism.any():
                to_merge = np.unique(
                    vs[mism].astype(np.int64) * (n + 1) + leaders[mism]
                )
                for code in to_merge:
                    va, vb = int(code // (n + 1)), int(code % (n + 1))
                    uf.union(va, vb)
                changed = True
        if not changed:
            return Congruence(alg, labels, check=False)
        labels = canonical_partition(uf.labels())


def principal_congruence(alg, a, b):
    return congruence_generated(alg, [(a, b)])


def enumerate_congruences(alg, max_size=16):
    """Every congruence, as the join closure of the principal ones."""
    if alg.size > max_size:
        raise BudgetExceeded(
            f"congruence enumeration limited to size {max_size}, "
            f"{alg.name} has {alg.size}"
        )
    found = {}
    delta = diagonal(alg)
    found[delta.key()] = delta
    principals = []
    for a in range(alg.size):
        for b in range(a + 1, alg.size):
            c = principal_congruence(alg, a, b)
            if c.key() not in found:
                found[c.key()] = c
                principals.append(c)
    frontier = list(found.values())
    while frontier:
        nxt = []
        for c in frontier:
            for p in principals:
                j = join(c, p)
                if j.key() not in found:
                    found[j.key()] = j
                    nxt.append(j)
        frontier = nxt
    out = list(found.values())
    out.sort(key=lambda c: (c.class_count(), c.key()))
    return out


def _same_carrier(theta, psi):
    if theta.on is not psi.on:
        raise InvalidParameters("congruences live on different algebras")
