"""Finite algebras of a fixed signature, with a designated Mal'tsev term.

Carriers are 0..size-1.  An operation of arity k is a numpy int table of
shape (size,)*k; a nullary operation is a 1-entry table.  Every algebra
carries a ternary term p satisfying p(x,y,y) = x and p(x,x,y) = y, and
validation checks those identities on the full square of arguments.

Tables of algebras built from other algebras (products, kernels, horns)
can be expensive and are materialized on first use.  All objects are
treated as immutable once validated.
"""

import itertools

import numpy as np

from .errors import (
    InconsistentConstants,
    InvalidParameters,
    MalformedTable,
    NotMaltsev,
)
from .terms import check_term_signature, evaluate, parse_term


class Signature:
    """Ordered list of (name, arity) pairs."""

    def __init__(self, ops):
        ops = tuple((str(name), int(arity)) for name, arity in ops)
        names = [n for n, _ in ops]
        if len(set(names)) != len(names):
            raise InvalidParameters("duplicate operation name in signature")
        for _, arity in ops:
            if arity < 0:
                raise InvalidParameters("negative arity")
        self.ops = ops
        self.arities = dict(ops)

    def __eq__(self, other):
        return isinstance(other, Signature) and self.ops == other.ops

    def __hash__(self):
        return hash(self.ops)

    def __repr__(self):
        inner = ", ".join(f"{n}/{a}" for n, a in self.ops)
        return f"Signature({inner})"

    @property
    def has_constants(self):
        return any(a == 0 for _, a in self.ops)


class FiniteAlgebra:
    def __init__(self, name, size, signature, tables, maltsev_term,
                 table_builder=None):
        self.name = name
        self.size = int(size)
        self.signature = signature
        if isinstance(maltsev_term, str):
            maltsev_term = parse_term(maltsev_term)
        self.maltsev_term = maltsev_term
        self._tables = None
        self._table_builder = None
        if tables is not None:
            self._tables = {
                k: np.asarray(v, dtype=np.int32) for k, v in tables.items()
            }
        else:
            if table_builder is None:
                raise InvalidParameters("algebra needs tables or a table builder")
            self._table_builder = table_builder

    @property
    def tables(self):
        if self._tables is None:
            self._tables = {
                k: np.asarray(v, dtype=np.int32)
                for k, v in self._table_builder().items()
            }
            self._table_builder = None
        return self._tables

    def table(self, op):
        return self.tables[op]

    def elements(self):
        return range(self.size)

    def p(self, a, b, c):
        """Apply the Mal'tsev term; arguments may be ints or index arrays."""
        return evaluate(self.maltsev_term, self.tables, {"x": a, "y": b, "z": c})

    def op(self, name, *args):
        t = self.tables[name]
        if not args:
            return int(t[0])
        return t[args]

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, size={self.size})"


def _index_grids(fmap, arity):
    return np.ix_(*([fmap] * arity)) if arity > 1 else (fmap,)


def check_tables(alg):
    """Table shapes and entry ranges; the empty carrier cannot host constants."""
    n = alg.size
    if n == 0 and alg.signature.has_constants:
        raise InconsistentConstants(
            f"{alg.name}: empty carrier with constants in the signature"
        )
    for opname, arity in alg.signature.ops:
        if opname not in alg.tables:
            raise MalformedTable(f"{alg.name}: missing table for {opname!r}")
        t = alg.tables[opname]
        want = (1,) if arity == 0 else (n,) * arity
        if t.shape != want:
            raise MalformedTable(
                f"{alg.name}: table {opname!r} has shape {t.shape}, expected {want}"
            )
        if t.size and (t.min() < 0 or t.max() >= max(n, 1)):
            raise MalformedTable(f"{alg.name}: table {opname!r} entry out of range")
        if arity == 0 and n == 0:
            raise InconsistentConstants(f"{alg.name}: constant in empty algebra")
    extra = set(alg.tables) - set(alg.signature.arities)
    if extra:
        raise MalformedTable(f"{alg.name}: tables for unknown operations {extra}")


def check_maltsev(alg):
    """Check p(x,y,y) = x and p(x,x,y) = y over the full square of pairs."""
    term = alg.maltsev_term
    try:
        check_term_signature(term, alg.signature.arities)
    except InvalidParameters as exc:
        raise NotMaltsev(f"{alg.name}: {exc}") from exc
    bad = term.variables() - {"x", "y", "z"}
    if bad:
        raise NotMaltsev(f"{alg.name}: term uses unknown variables {bad}")
    n = alg.size
    if n == 0:
        return
    a = np.arange(n)
    left = evaluate(term, alg.tables, {"x": a[:, None], "y": a[None, :], "z": a[None, :]})
    if not np.array_equal(np.broadcast_to(left, (n, n)), np.broadcast_to(a[:, None], (n, n))):
        i, j = np.argwhere(np.broadcast_to(left, (n, n)) != a[:, None])[0]
        raise NotMaltsev(
            f"{alg.name}: p({i},{j},{j}) = {int(np.broadcast_to(left, (n, n))[i, j])}, expected {i}"
        )
    right = evaluate(term, alg.tables, {"x": a[:, None], "y": a[:, None], "z": a[None, :]})
    if not np.array_equal(np.broadcast_to(right, (n, n)), np.broadcast_to(a[None, :], (n, n))):
        i, j = np.argwhere(np.broadcast_to(right, (n, n)) != a[None, :])[0]
        raise NotMaltsev(
            f"{alg.name}: p({i},{i},{j}) = {int(np.broadcast_to(right, (n, n))[i, j])}, expected {j}"
        )


def validate_algebra(raw):
    """Build and fully check an algebra from its raw dict description."""
    try:
        name = raw["name"]
        size = int(raw["size"])
        ops = raw["operations"]
        term = raw["maltsev"]["term"]
    except (KeyError, TypeError) as exc:
        raise MalformedTable(f"algebra description missing field: {exc}") from exc
    sig = Signature([(o["name"], int(o["arity"])) for o in ops])
    tables = {}
    for o in ops:
        arity = int(o["arity"])
        flat = np.asarray(o["table"], dtype=np.int64)
        want = (1,) if arity == 0 else (size,) * arity
        try:
            tables[o["name"]] = flat.reshape(want)
        except ValueError as exc:
            raise MalformedTable(
                f"{name}: table {o['name']!r} cannot be shaped to {want}"
            ) from exc
    alg = FiniteAlgebra(name, size, sig, tables, term)
    check_tables(alg)
    check_maltsev(alg)
    return alg


def make_algebra(name, signature, tables, term, check=True):
    size = None
    for (opname, arity) in signature.ops:
        t = np.asarray(tables[opname])
        if arity > 0:
            size = t.shape[0]
            break
    if size is None:
        raise InvalidParameters("cannot infer size from nullary tables only")
    alg = FiniteAlgebra(name, size, signature, tables, term)
    if check:
        check_tables(alg)
        check_maltsev(alg)
    return alg


def same_signature(a, b):
    if a.signature != b.signature:
        raise InvalidParameters(
            f"signature mismatch between {a.name} and {b.name}"
        )


class Homomorphism:
    def __init__(self, dom, cod, fmap, check=True):
        self.dom = dom
        self.cod = cod
        self.map = np.asarray(fmap, dtype=np.int64)
        if self.map.shape != (dom.size,):
            raise InvalidParameters(
                f"map array has shape {self.map.shape}, expected ({dom.size},)"
            )
        if dom.size and (self.map.min() < 0 or self.map.max() >= cod.size):
            raise InvalidParameters("map entry out of codomain range")
        if check:
            check_homomorphism(self)

    def __call__(self, x):
        return self.map[x]

    def compose(self, other):
        """self after other."""
        if other.cod is not self.dom:
            same_signature(other.cod, self.dom)
            if other.cod.size != self.dom.size:
                raise InvalidParameters("composition domain mismatch")
        return Homomorphism(other.dom, self.cod, self.map[other.map], check=False)

    def is_surjective(self):
        if self.cod.size == 0:
            return True
        return len(np.unique(self.map)) == self.cod.size

    def is_injective(self):
        return len(np.unique(self.map)) == self.map.shape[0]

    def is_bijective(self):
        return self.dom.size == self.cod.size and self.is_surjective()

    def __eq__(self, other):
        return (
            isinstance(other, Homomorphism)
            and self.dom is other.dom
            and self.cod is other.cod
            and np.array_equal(self.map, other.map)
        )

    def __repr__(self):
        return f"Homomorphism({self.dom.name} -> {self.cod.name})"


def identity_hom(alg):
    return Homomorphism(alg, alg, np.arange(alg.size), check=False)


def check_homomorphism(h):
    """Exhaustive check that h commutes with every operation."""
    same_signature(h.dom, h.cod)
    fmap = h.map
    for opname, arity in h.dom.signature.ops:
        td, tc = h.dom.table(opname), h.cod.table(opname)
        if arity == 0:
            if h.dom.size and fmap[td[0]] != tc[0]:
                raise InvalidParameters(
                    f"map does not preserve constant {opname!r}"
                )
            continue
        lhs = fmap[td]
        rhs = tc[_index_grids(fmap, arity)]
        if not np.array_equal(lhs, rhs):
            where = np.argwhere(lhs != rhs)[0]
            raise InvalidParameters(
                f"map does not preserve {opname!r} at arguments {tuple(where)}"
            )


def all_homomorphisms(dom, cod, limit=None):
    """Enumerate every homomorphism dom -> cod by backtracking.

    Intended for small carriers; raises for sizes past 64.
    """
    same_signature(dom, cod)
    if dom.size > 64:
        raise InvalidParameters("homomorphism enumeration limited to size <= 64")
    n = dom.size
    if n == 0:
        return [Homomorphism(dom, cod, np.zeros(0, dtype=np.int64), check=False)]
    binary_tuples = [[] for _ in range(n)]
    ops = [(name, ar) for name, ar in dom.signature.ops if ar > 0]
    forced0 = [-1] * n
    for name, ar in dom.signature.ops:
        if ar == 0:
            ca, cb = int(dom.table(name)[0]), int(cod.table(name)[0])
            if forced0[ca] >= 0 and forced0[ca] != cb:
                return []
            forced0[ca] = cb
    results = []
    fmap = [-1] * n

    def extend(k, forced):
        if limit is not None and len(results) >= limit:
            return
        if k == n:
            results.append(Homomorphism(dom, cod, fmap, check=False))
            return
        cands = [forced[k]] if forced[k] >= 0 else range(cod.size)
        for v in cands:
            fmap[k] = v
            new = list(forced)
            ok = True
            for name, ar in ops:
                td, tc = dom.table(name), cod.table(name)
                for args in itertools.product(range(k + 1), repeat=ar):
                    if k not in args:
                        continue
                    c = int(td[args])
                    w = int(tc[tuple(fmap[a] for a in args)])
                    if c <= k:
                        if fmap[c] != w:
                            ok = False
                            break
                    elif new[c] >= 0 and new[c] != w:
                        ok = False
                        break
                    else:
                        new[c] = w
                if not ok:
                    break
            if ok:
                extend(k + 1, new)
            fmap[k] = -1

    extend(0, forced0)
    return results


def all_isomorphisms(dom, cod, limit=None):
    if dom.size != cod.size:
        return []
    return [h for h in all_homomorphisms(dom, cod, limit=None)
            if h.is_bijective()][: (limit or None)]
