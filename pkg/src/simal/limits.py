"""Finite limits as tuple algebras.

A limit carrier is a set of tuples over factor algebras, stored as an
(m, k) row array.  Rows are ordered by their mixed-radix code, so every
such algebra has a canonical element order and lookups are binary
searches.  Operation tables are built lazily and in row chunks to bound
peak memory.

Enumeration is an incremental fiber join: slots are filled left to
right, and each new slot only ranges over the fibers selected by the
constraints against already-filled slots.  The full product is never
enumerated unless it is the requested object.
"""

import numpy as np

from .config import resolve_budget
from .errors import (
    InvalidParameters,
    LevelTooLarge,
    NotCommuting,
    NotRegularEpi,
    CrossRouteMismatch,
)
from .algebra import FiniteAlgebra, Homomorphism, same_signature
from . import congruences as cg


def _weights(sizes):
    w = [1] * len(sizes)
    for i in range(len(sizes) - 2, -1, -1):
        w[i] = w[i + 1] * max(sizes[i + 1], 1)
    total = w[0] * max(sizes[0], 1) if sizes else 1
    if total >= 2 ** 62:
        raise LevelTooLarge("tuple code space exceeds 62 bits")
    return np.asarray(w, dtype=np.int64)


class TupleCarrier:
    """Bookkeeping for a subalgebra of a finite product."""

    def __init__(self, factors, rows):
        self.factors = factors
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, len(factors))
        self.weights = _weights([f.size for f in factors])
        codes = rows @ self.weights
        order = np.argsort(codes)
        self.rows = rows[order]
        self.codes = codes[order]
        if len(self.codes) and (np.diff(self.codes) == 0).any():
            raise InvalidParameters("duplicate tuple rows")

    def index_of(self, rows):
        rows = np.asarray(rows, dtype=np.int64)
        codes = rows @ self.weights
        return self.index_of_codes(codes)

    def index_of_codes(self, codes):
        pos = np.searchsorted(self.codes, codes)
        pos_clipped = np.minimum(pos, max(len(self.codes) - 1, 0))
        if len(self.codes) == 0 or not np.array_equal(
            self.codes[pos_clipped], codes
        ):
            raise InvalidParameters("tuple outside the carrier")
        return pos_clipped


def subproduct_algebra(name, factors, rows, check_closed=True):
    """Algebra on a set of tuples, with componentwise operations.

    Returns (algebra, projections).  The carrier attribute .carrier on
    the algebra gives row access.
    """
    if not factors:
        raise InvalidParameters("subproduct needs at least one factor")
    sig = factors[0].signature
    for f in factors[1:]:
        same_signature(factors[0], f)
    carrier = TupleCarrier(factors, rows)
    m = len(carrier.rows)
    k = len(factors)

    def build():
        tables = {}
        for opname, arity in sig.ops:
            if arity == 0:
                row = np.asarray(
                    [int(f.table(opname)[0]) for f in factors], dtype=np.int64
                )
                tables[opname] = carrier.index_of(row[None, :]).astype(np.int64)
            elif arity == 1:
                codes = np.zeros(m, dtype=np.int64)
                for c in range(k):
                    t = factors[c].table(opname)
                    codes += t[carrier.rows[:, c]].astype(np.int64) * carrier.weights[c]
                tables[opname] = carrier.index_of_codes(codes)
            elif arity == 2:
                out = np.empty((m, m), dtype=np.int64)
                chunk = max(1, 10_000_000 // max(m, 1))
                col = carrier.rows
                for s in range(0, m, chunk):
                    e = min(s + chunk, m)
                    codes = np.zeros((e - s, m), dtype=np.int64)
                    for c in range(k):
                        t = factors[c].table(opname)
                        codes += (
                            t[col[s:e, c][:, None], col[:, c][None, :]].astype(np.int64)
                            * carrier.weights[c]
                        )
                    out[s:e] = carrier.index_of_codes(codes.ravel()).reshape(e - s, m)
                tables[opname] = out
            else:
                grids = np.meshgrid(
                    *([np.arange(m)] * arity), indexing="ij", sparse=True
                )
                codes = np.zeros((m,) * arity, dtype=np.int64)
                for c in range(k):
                    t = factors[c].table(opname)
                    colc = carrier.rows[:, c]
                    codes += t[tuple(colc[g] for g in grids)].astype(np.int64) \
                        * carrier.weights[c]
                tables[opname] = carrier.index_of_codes(codes.ravel()).reshape(
                    (m,) * arity
                )
        return tables

    term = factors[0].maltsev_term
    alg = FiniteAlgebra(name, m, sig, None, term, table_builder=build)
    alg.carrier = carrier
    projections = [
        Homomorphism(alg, factors[c], carrier.rows[:, c].copy(), check=False)
        for c in range(k)
    ]
    if check_closed and m and sig.has_constants:
        # touching the constant tables verifies the constants are present
        for opname, arity in sig.ops:
            if arity == 0:
                row = [int(f.table(opname)[0]) for f in factors]
                carrier.index_of(np.asarray(row)[None, :])
    return alg, projections


def compatible_tuples(slots, constraints, budget=None, on_overflow=None):
    """Rows (x_0..x_{k-1}) with m_i(x_i) = m_j(x_j) for each constraint.

    Constraints are (i, map_i, j, map_j) with numpy map arrays.  Filled
    left to right through precomputed fibers.
    """
    budget = resolve_budget(budget)
    k = len(slots)
    by_slot = [[] for _ in range(k)]
    for (i, mi, j, mj) in constraints:
        mi = np.asarray(mi)
        mj = np.asarray(mj)
        if i == j:
            raise InvalidParameters("constraint on a single slot")
        if i > j:
            i, j, mi, mj = j, i, mj, mi
        by_slot[j].append((i, mi, mj))

    def fibers_of(maparr, size):
        buckets = [[] for _ in range(size)]
        for idx, v in enumerate(maparr):
            buckets[int(v)].append(idx)
        return [np.asarray(b, dtype=np.int64) for b in buckets]

    rows = np.zeros((1, 0), dtype=np.int64)
    for j in range(k):
        nj = slots[j].size
        cons = by_slot[j]
        if not cons:
            if rows.shape[0] * nj > budget:
                raise LevelTooLarge(
                    f"tuple enumeration exceeds budget {budget}"
                )
            left = np.repeat(rows, nj, axis=0)
            right = np.tile(np.arange(nj, dtype=np.int64), rows.shape[0])
            rows = np.hstack([left, right[:, None]])
            continue
        fiber_tables = []
        for (i, mi, mj) in cons:
            values = int(mj.max()) + 1 if len(mj) else 1
            fiber_tables.append((i, mi, fibers_of(mj, values)))
        out_rows = []
        total = 0
        for r in rows:
            cand = None
            ok = True
            for (i, mi, fibers) in fiber_tables:
                v = int(mi[r[i]])
                fib = fibers[v] if v < len(fibers) else np.zeros(0, dtype=np.int64)
                cand = fib if cand is None else np.intersect1d(cand, fib)
                if len(cand) == 0:
                    ok = False
                    break
            if not ok:
                continue
            total += len(cand)
            if total > budget:
                raise LevelTooLarge(f"tuple enumeration exceeds budget {budget}")
            block = np.empty((len(cand), j + 1), dtype=np.int64)
            block[:, :j] = r
            block[:, j] = cand
            out_rows.append(block)
        rows = (
            np.concatenate(out_rows, axis=0)
            if out_rows
            else np.zeros((0, j + 1), dtype=np.int64)
        )
    return rows


def product(name, factors, budget=None):
    rows = compatible_tuples(factors, [], budget=budget)
    return subproduct_algebra(name, factors, rows)


def pullback(f, g, name=None, budget=None):
    """Pullback of f: A -> C and g: B -> C; rows (a, b) with f a = g b."""
    if f.cod is not g.cod:
        same_signature(f.cod, g.cod)
        if f.cod.size != g.cod.size:
            raise InvalidParameters("pullback cospan codomain mismatch")
    rows = compatible_tuples(
        [f.dom, g.dom], [(0, f.map, 1, g.map)], budget=budget
    )
    name = name or f"pb({f.dom.name},{g.dom.name})"
    return subproduct_algebra(name, [f.dom, g.dom], rows)


class FiniteDiagram:
    """Nodes are algebras, arrows are homomorphisms between them."""

    def __init__(self, nodes, arrows):
        self.nodes = list(nodes)
        self.arrows = []
        for (i, j, h) in arrows:
            if h.dom is not self.nodes[i] or h.cod is not self.nodes[j]:
                raise InvalidParameters("diagram arrow endpoints disagree")
            self.arrows.append((i, j, h))


def finite_limit(diagram, legs=None, name="limit", budget=None):
    """Limit of a finite diagram; returns (algebra, projections for legs).

    legs selects which projection legs of the cone are returned
    (default: all nodes).
    """
    k = len(diagram.nodes)
    cons = []
    for (i, j, h) in diagram.arrows:
        cons.append((i, h.map, j, np.arange(diagram.nodes[j].size)))
    rows = compatible_tuples(diagram.nodes, cons, budget=budget)
    alg, projections = subproduct_algebra(name, diagram.nodes, rows)
    if legs is None:
        legs = list(range(k))
    return alg, {leg: projections[leg] for leg in legs}


def graph_of(f, name=None):
    """The graph of f as a subalgebra of dom x cod."""
    rows = np.stack(
        [np.arange(f.dom.size, dtype=np.int64), f.map.astype(np.int64)], axis=1
    )
    return subproduct_algebra(name or f"graph({f.dom.name})", [f.dom, f.cod], rows)


def is_double_extension(f, g, h, j, require_epi=True):
    """Decide whether the commuting square with legs f, g and cospan h, j
    is a pushout of a strong kind along both routes.

    f: X -> Y, g: X -> Z, h: Y -> W, j: Z -> W, with h f = j g.
    Route one: the comparison <f, g> into the pullback of (h, j) is
    surjective.  Route two: f maps Eq[g] onto Eq[h] (and symmetrically g
    maps Eq[f] onto Eq[j]).  The routes must agree.
    """
    if not np.array_equal(h.map[f.map], j.map[g.map]):
        raise NotCommuting("square does not commute")
    if require_epi:
        for leg, tag in ((f, "f"), (g, "g"), (h, "h"), (j, "j")):
            if not leg.is_surjective():
                raise NotRegularEpi(f"square side {tag} is not surjective")
    pb, _ = pullback(h, j)
    comparison_codes = (
        f.map.astype(np.int64) * pb.carrier.weights[0]
        + g.map.astype(np.int64) * pb.carrier.weights[1]
    )
    surj = len(np.unique(comparison_codes)) == pb.size
    eqg_image = cg.image(f, cg.kernel_pair(g))
    route2a = eqg_image == cg.kernel_pair(h)
    eqf_image = cg.image(g, cg.kernel_pair(f))
    route2b = eqf_image == cg.kernel_pair(j)
    if not (surj == route2a == route2b):
        raise CrossRouteMismatch(
            f"double-extension routes disagree: comparison-surjective={surj}, "
            f"f(Eq[g])=Eq[h] is {route2a}, g(Eq[f])=Eq[j] is {route2b}"
        )
    return surj
