"""JSON interchange for algebras, homomorphisms, simplicial objects,
simplicial morphisms, groupoids and congruences.

One stable on-disk format per object kind.  Serialization is canonical
(sorted keys, fixed separators) so identical objects produce identical
bytes, and every file can be content-hashed for reproducible reports.

Formats:

  algebra      {"name", "size", "operations": [{"name", "arity", "table"}],
                "maltsev": {"term": ...}}
               with tables as nested row-major arrays (a nullary operation
               is a one-entry array)
  hom          {"dom", "cod", "map": [...]} where dom and cod are inline
               algebra objects, names into a surrounding "algebras" table,
               or file references
  simplicial   {"truncation", "algebras": {name: algebra}, "levels":
                [names], "faces": [[hom ...] ...], "degeneracies": [...]}
  morphism     {"kind": "simplicial_morphism", "dom", "cod",
                "components": [[...] ...]}
  groupoid     {"kind": "groupoid", "algebras", "objects", "arrows",
                "d0", "d1", "s0", "comp"} with -1 for undefined composites
  congruence   {"kind": "congruence", "size", "blocks"} using the
               canonical least-member block labelling
"""

import hashlib
import json
import os

import numpy as np

from .algebra import Homomorphism, validate_algebra
from .congruences import Congruence
from .errors import InvalidParameters
from .groupoid import InternalGroupoid, validate_groupoid
from .simplicial import (
    SimplicialMorphism,
    TruncatedSimplicialAlgebra,
    validate_simplicial,
)


# -- canonical bytes and hashing -------------------------------------------

def canonical_json(data):
    """Serialize with sorted keys and fixed separators."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True)


def content_hash(data):
    """sha256 of the canonical serialization of a JSON tree."""
    return hashlib.sha256(canonical_json(data).encode("ascii")).hexdigest()


def file_hash(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def save_json(data, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(canonical_json(data))
        fh.write("\n")


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidParameters(f"cannot read JSON from {path}: {exc}") from exc


# -- algebras --------------------------------------------------------------

def algebra_to_json(alg):
    ops = []
    for opname, arity in alg.signature.ops:
        ops.append({
            "name": opname,
            "arity": arity,
            "table": alg.table(opname).tolist(),
        })
    return {
        "name": alg.name,
        "size": alg.size,
        "operations": ops,
        "maltsev": {"term": str(alg.maltsev_term)},
    }


def load_algebra(data):
    """Full validation happens on load; a bad file raises, never returns."""
    if isinstance(data, str):
        data = load_json(data)
    return validate_algebra(data)


# -- homomorphisms ---------------------------------------------------------

def hom_to_json(h, dom_ref=None, cod_ref=None):
    """dom_ref/cod_ref replace the inline algebras with name references."""
    return {
        "dom": dom_ref if dom_ref is not None else algebra_to_json(h.dom),
        "cod": cod_ref if cod_ref is not None else algebra_to_json(h.cod),
        "map": h.map.tolist(),
    }


def _resolve_algebra(ref, algebras, base_dir):
    if isinstance(ref, dict):
        return load_algebra(ref)
    if isinstance(ref, str):
        if algebras is not None and ref in algebras:
            return algebras[ref]
        path = ref if base_dir is None else os.path.join(base_dir, ref)
        return load_algebra(path)
    raise InvalidParameters(f"cannot resolve algebra reference {ref!r}")


def load_homomorphism(data, algebras=None, base_dir=None, check=True):
    if isinstance(data, str):
        path = data if base_dir is None else os.path.join(base_dir, data)
        base_dir = os.path.dirname(path)
        data = load_json(path)
    try:
        dom = _resolve_algebra(data["dom"], algebras, base_dir)
        cod = _resolve_algebra(data["cod"], algebras, base_dir)
        fmap = data["map"]
    except (KeyError, TypeError) as exc:
        raise InvalidParameters(f"homomorphism file missing field: {exc}") from exc
    return Homomorphism(dom, cod, fmap, check=check)


# -- simplicial objects ----------------------------------------------------

def _level_names(X):
    """Stable unique name per distinct level algebra instance."""
    names = {}
    taken = set()
    for level in X.levels:
        if id(level) in names:
            continue
        base = level.name or "level"
        name = base
        k = 1
        while name in taken:
            k += 1
            name = f"{base}#{k}"
        names[id(level)] = name
        taken.add(name)
    return names


def simplicial_to_json(X):
    names = _level_names(X)
    algebras = {}
    for level in X.levels:
        algebras.setdefault(names[id(level)], algebra_to_json(level))
    faces = []
    for n in range(1, X.truncation + 1):
        faces.append([
            hom_to_json(d, dom_ref=names[id(d.dom)], cod_ref=names[id(d.cod)])
            for d in X.faces[n]
        ])
    degeneracies = []
    for n in range(X.truncation):
        degeneracies.append([
            hom_to_json(s, dom_ref=names[id(s.dom)], cod_ref=names[id(s.cod)])
            for s in X.degeneracies[n]
        ])
    return {
        "kind": "simplicial",
        "name": X.name,
        "truncation": X.truncation,
        "algebras": algebras,
        "levels": [names[id(level)] for level in X.levels],
        "faces": faces,
        "degeneracies": degeneracies,
    }


def load_simplicial(data, base_dir=None, check=True):
    if isinstance(data, str):
        path = data if base_dir is None else os.path.join(base_dir, data)
        base_dir = os.path.dirname(path)
        data = load_json(path)
    try:
        trunc = int(data["truncation"])
        level_names = list(data["levels"])
        raw_faces = data["faces"]
        raw_degens = data["degeneracies"]
    except (KeyError, TypeError) as exc:
        raise InvalidParameters(f"simplicial file missing field: {exc}") from exc
    raw_algebras = data.get("algebras", {})
    algebras = {}
    for name, raw in raw_algebras.items():
        algebras[name] = _resolve_algebra(raw, None, base_dir)
    try:
        levels = [algebras[name] if name in algebras
                  else _resolve_algebra(name, None, base_dir)
                  for name in level_names]
    except KeyError as exc:
        raise InvalidParameters(f"level references unknown algebra {exc}") from exc
    faces = [[]]
    for row in raw_faces:
        faces.append([
            load_homomorphism(d, algebras=algebras, base_dir=base_dir,
                              check=False)
            for d in row
        ])
    degeneracies = []
    for row in raw_degens:
        degeneracies.append([
            load_homomorphism(s, algebras=algebras, base_dir=base_dir,
                              check=False)
            for s in row
        ])
    while len(faces) < trunc + 1:
        faces.append([])
    while len(degeneracies) < trunc + 1:
        degeneracies.append([])
    X = TruncatedSimplicialAlgebra(levels, faces, degeneracies,
                                   name=data.get("name", "simplicial"))
    if check:
        validate_simplicial(X, check_homs=True)
    return X


# -- simplicial morphisms --------------------------------------------------

def morphism_to_json(F):
    return {
        "kind": "simplicial_morphism",
        "name": getattr(F, "name", None) or "morphism",
        "dom": simplicial_to_json(F.dom),
        "cod": simplicial_to_json(F.cod),
        "components": [f.map.tolist() for f in F.components],
    }


def load_morphism(data, base_dir=None, check=True):
    if isinstance(data, str):
        path = data if base_dir is None else os.path.join(base_dir, data)
        base_dir = os.path.dirname(path)
        data = load_json(path)
    try:
        dom = load_simplicial(data["dom"], base_dir=base_dir, check=check)
        cod = load_simplicial(data["cod"], base_dir=base_dir, check=check)
        raw_comps = data["components"]
    except (KeyError, TypeError) as exc:
        raise InvalidParameters(f"morphism file missing field: {exc}") from exc
    if len(raw_comps) != dom.truncation + 1:
        raise InvalidParameters("morphism needs one component per level")
    comps = [
        Homomorphism(dom.levels[n], cod.levels[n], raw_comps[n], check=False)
        for n in range(dom.truncation + 1)
    ]
    F = SimplicialMorphism(dom, cod, comps, check=check)
    F.name = data.get("name", "morphism")
    return F


# -- groupoids and congruences ---------------------------------------------

def groupoid_to_json(G):
    names = {id(G.objects): G.objects.name or "objects"}
    if id(G.arrows) not in names:
        arrow_name = G.arrows.name or "arrows"
        if arrow_name == names[id(G.objects)]:
            arrow_name += "#2"
        names[id(G.arrows)] = arrow_name
    algebras = {names[id(G.objects)]: algebra_to_json(G.objects)}
    algebras.setdefault(names[id(G.arrows)], algebra_to_json(G.arrows))
    return {
        "kind": "groupoid",
        "algebras": algebras,
        "objects": names[id(G.objects)],
        "arrows": names[id(G.arrows)],
        "d0": G.d0.map.tolist(),
        "d1": G.d1.map.tolist(),
        "s0": G.s0.map.tolist(),
        "comp": G.comp.tolist(),
    }


def load_groupoid(data, base_dir=None, check=True):
    if isinstance(data, str):
        path = data if base_dir is None else os.path.join(base_dir, data)
        base_dir = os.path.dirname(path)
        data = load_json(path)
    try:
        algebras = {
            name: _resolve_algebra(raw, None, base_dir)
            for name, raw in data["algebras"].items()
        }
        objects = algebras[data["objects"]]
        arrows = algebras[data["arrows"]]
        d0 = Homomorphism(arrows, objects, data["d0"], check=False)
        d1 = Homomorphism(arrows, objects, data["d1"], check=False)
        s0 = Homomorphism(objects, arrows, data["s0"], check=False)
        comp = np.asarray(data["comp"], dtype=np.int64)
    except (KeyError, TypeError) as exc:
        raise InvalidParameters(f"groupoid file missing field: {exc}") from exc
    G = InternalGroupoid(objects, arrows, d0, d1, s0, comp)
    if check:
        validate_groupoid(G)
    return G


def congruence_to_json(theta):
    return {
        "kind": "congruence",
        "algebra": theta.on.name,
        "size": theta.on.size,
        "blocks": theta.part.tolist(),
    }


def load_congruence(data, on, check=True):
    if isinstance(data, str):
        data = load_json(data)
    try:
        blocks = data["blocks"]
    except (KeyError, TypeError) as exc:
        raise InvalidParameters(f"congruence file missing field: {exc}") from exc
    if int(data.get("size", on.size)) != on.size:
        raise InvalidParameters("congruence size does not match the algebra")
    return Congruence(on, blocks, check=check)


# -- kind sniffing ---------------------------------------------------------

def detect_kind(data):
    """Classify a raw JSON tree by its fields."""
    if not isinstance(data, dict):
        raise InvalidParameters("expected a JSON object at top level")
    kind = data.get("kind")
    if kind in ("simplicial", "simplicial_morphism", "groupoid", "congruence"):
        return kind
    if "operations" in data and "size" in data:
        return "algebra"
    if "components" in data and "dom" in data:
        return "simplicial_morphism"
    if "truncation" in data and "levels" in data:
        return "simplicial"
    if "comp" in data and "d0" in data:
        return "groupoid"
    if "blocks" in data:
        return "congruence"
    if "map" in data and "dom" in data:
        return "homomorphism"
    raise InvalidParameters("unrecognized JSON artifact")


def load_any(path):
    """Load a file of any supported kind, returning (kind, object)."""
    data = load_json(path)
    kind = detect_kind(data)
    base_dir = os.path.dirname(path)
    if kind == "algebra":
        return kind, load_algebra(data)
    if kind == "homomorphism":
        return kind, load_homomorphism(data, base_dir=base_dir)
    if kind == "simplicial":
        return kind, load_simplicial(data, base_dir=base_dir)
    if kind == "simplicial_morphism":
        return kind, load_morphism(data, base_dir=base_dir)
    if kind == "groupoid":
        return kind, load_groupoid(data, base_dir=base_dir)
    raise InvalidParameters(f"cannot load artifact of kind {kind!r}")
