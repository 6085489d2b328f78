"""JSON and DOT encodings.

Identifiers are written in their canonical string form (``sset.name``), so a
file read back has string identifiers and writes out to the same bytes.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional, Sequence

from .catkit.category import CFunctor, FinCat
from .fdelta import EMap, ESSet
from .sset import SMap, SSet, Simplex, name


class SchemaError(ValueError):
    """Malformed input; ``line`` points into the source text when known."""

    def __init__(self, message: str, path: Sequence = (), line: Optional[int] = None):
        self.path = tuple(path)
        self.line = line
        where = "/".join(str(p) for p in self.path) or "<root>"
        loc = f"line {line}: " if line is not None else ""
        super().__init__(f"{loc}{where}: {message}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _locate(text: str, path: Sequence) -> Optional[int]:
    """Line of the last string key of ``path`` in ``text`` (first occurrence after its parents)."""
    pos = 0
    line = None
    for p in path:
        if not isinstance(p, str):
            continue
        i = text.find(json.dumps(p), pos)
        if i < 0:
            break
        pos = i
        line = text.count("\n", 0, i) + 1
    return line


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(e.msg, line=e.lineno) from None


def with_lines(text: str, parse, *args):
    """Run ``parse(data, *args)`` and attach source lines to schema errors."""
    data = loads(text)
    try:
        return parse(data, *args)
    except SchemaError as e:
        if e.line is None:
            raise SchemaError(str(e).split(": ", 1)[-1], e.path, _locate(text, e.path)) from None
        raise


def _need(d: Any, key: str, kind, path: Sequence):
    if not isinstance(d, dict):
        raise SchemaError("expected an object", path)
    if key not in d:
        raise SchemaError(f"missing key {key!r}", path)
    v = d[key]
    if not isinstance(v, kind):
        raise SchemaError(f"{key!r} has the wrong type", list(path) + [key])
    return v


# -- simplicial sets ------------------------------------------------------------

def simplex_to_dict(x: Simplex) -> Dict:
    return {"base": name(x.base), "deg": list(x.surj)}


def sset_to_dict(S: SSet) -> Dict:
    cells = {str(n): [name(c) for c in S.cells[n]] for n in range(S.top_dim + 1)}
    faces = {name(c): [simplex_to_dict(f) for f in fs] for c, fs in S.faces.items()}
    out = {"top_dim": S.top_dim, "cells": cells, "faces": faces}
    if S.label:
        out["label"] = S.label
    return out


def sset_from_dict(d: Any, path: Sequence = ()) -> SSet:
    cells_in = _need(d, "cells", dict, path)
    faces_in = d.get("faces", {})
    if not isinstance(faces_in, dict):
        raise SchemaError("'faces' must be an object", list(path) + ["faces"])
    cells: Dict[int, List[str]] = {}
    for k, ids in cells_in.items():
        try:
            n = int(k)
        except ValueError:
            raise SchemaError(f"dimension {k!r} is not an integer", list(path) + ["cells", k]) from None
        if not isinstance(ids, list) or not all(isinstance(c, str) for c in ids):
            raise SchemaError("cell lists must be lists of strings", list(path) + ["cells", k])
        cells[n] = ids
    faces = {}
    for c, fs in faces_in.items():
        fp = list(path) + ["faces", c]
        if not isinstance(fs, list):
            raise SchemaError("faces must be a list", fp)
        out = []
        for f in fs:
            base = _need(f, "base", str, fp)
            deg = _need(f, "deg", list, fp)
            out.append((base, tuple(deg)))
        faces[c] = out
    try:
        return SSet(cells, faces, check=True, label=d.get("label", ""))
    except (ValueError, KeyError, IndexError) as e:
        raise SchemaError(f"not a simplicial set: {e}", path) from None


def smap_to_dict(f: SMap) -> Dict:
    return {"assignment": {name(c): simplex_to_dict(y) for c, y in f.assign.items()}}


def _by_name(S: SSet) -> Dict[str, Any]:
    return {name(c): c for c in S.all_cells()}


def smap_from_dict(d: Any, S: SSet, T: SSet, path: Sequence = ()) -> SMap:
    """Resolve the names in ``d`` against the cells of ``S`` and ``T``."""
    asg = _need(d, "assignment", dict, path)
    src, tgt = _by_name(S), _by_name(T)
    out = {}
    for c, y in asg.items():
        cp = list(path) + ["assignment", c]
        if c not in src:
            raise SchemaError(f"unknown source cell {c!r}", cp)
        base = _need(y, "base", str, cp)
        if base not in tgt:
            raise SchemaError(f"unknown target cell {base!r}", cp)
        out[src[c]] = Simplex(tgt[base], tuple(_need(y, "deg", list, cp)))
    missing = [name(c) for c in S.all_cells() if c not in out]
    if missing:
        raise SchemaError(f"no value for source cells {missing[:3]}", list(path) + ["assignment"])
    f = SMap(S, T, out)
    try:
        f.check()
    except (ValueError, KeyError, IndexError) as e:
        raise SchemaError(f"not a simplicial map: {e}", path) from None
    return f


def essset_to_dict(E: ESSet) -> Dict:
    d = sset_to_dict(E.loose)
    d["tight_vertices"] = sorted(name(v) for v in E.tight)
    return d


def essset_from_dict(d: Any, path: Sequence = ()) -> ESSet:
    S = sset_from_dict(d, path)
    tight = d.get("tight_vertices", [])
    names = _by_name(S)
    bad = [v for v in tight if v not in names or S.dim_of[names[v]] != 0]
    if bad:
        raise SchemaError(f"tight entries are not vertices: {bad[:3]}", list(path) + ["tight_vertices"])
    return ESSet(S, [names[v] for v in tight])


def emap_to_dict(f: EMap) -> Dict:
    d = smap_to_dict(f.underlying)
    d["tight"] = f.tight
    return d


# -- categories -------------------------------------------------------------------

def fincat_to_dict(C: FinCat) -> Dict:
    return {
        "label": C.label,
        "objects": [name(a) for a in C.objects],
        "morphisms": [{"id": name(f), "dom": name(C.dom(f)), "cod": name(C.cod(f))} for f in C.morphisms],
        "identities": {name(a): name(C.ident(a)) for a in C.objects},
        "compose": sorted([name(g), name(f), name(h)] for (g, f), h in C.table.items()),
    }


def fincat_from_dict(d: Any, path: Sequence = ()) -> FinCat:
    objects = _need(d, "objects", list, path)
    mors = {}
    for i, m in enumerate(_need(d, "morphisms", list, path)):
        mp = list(path) + ["morphisms", i]
        mors[_need(m, "id", str, mp)] = (_need(m, "dom", str, mp), _need(m, "cod", str, mp))
    ident = _need(d, "identities", dict, path)
    table = {}
    for i, row in enumerate(_need(d, "compose", list, path)):
        if not (isinstance(row, list) and len(row) == 3):
            raise SchemaError("compose rows are [g, f, g.f]", list(path) + ["compose", i])
        table[(row[0], row[1])] = row[2]
    C = FinCat(objects, mors, ident, table, label=d.get("label", ""))
    try:
        C.check()
    except (ValueError, KeyError) as e:
        raise SchemaError(f"not a category: {e}", path) from None
    return C


def functor_to_dict(F: CFunctor) -> Dict:
    return {"objects": {name(a): name(b) for a, b in F.obj.items()},
            "morphisms": {name(f): name(g) for f, g in F.morph.items()}}


# -- DOT --------------------------------------------------------------------------

def _q(x) -> str:
    return json.dumps(name(x))


def fincat_to_dot(C: FinCat) -> str:
    lines = [f"digraph {_q(C.label or 'C')} {{"]
    lines += [f"  {_q(a)};" for a in C.objects]
    ids = set(C.identities.values())
    for f in C.morphisms:
        if f not in ids:
            lines.append(f"  {_q(C.dom(f))} -> {_q(C.cod(f))} [label={_q(f)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def sset_to_dot(S: SSet) -> str:
    """The 1-skeleton: vertices and nondegenerate edges from vertex 0 to vertex 1."""
    lines = [f"digraph {_q(S.label or 'S')} {{"]
    lines += [f"  {_q(v)};" for v in S.vertices]
    for e in S.cells.get(1, ()):
        a, b = S.vert[e][0], S.vert[e][1]
        lines.append(f"  {_q(a)} -> {_q(b)} [label={_q(e)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(obj) -> str:
    if isinstance(obj, FinCat):
        return fincat_to_dot(obj)
    if isinstance(obj, ESSet):
        return sset_to_dot(obj.loose)
    if isinstance(obj, SSet):
        return sset_to_dot(obj)
    raise TypeError(f"no DOT encoding for {type(obj).__name__}")


def to_dict(obj) -> Dict:
    if isinstance(obj, ESSet):
        return essset_to_dict(obj)
    if isinstance(obj, SSet):
        return sset_to_dict(obj)
    if isinstance(obj, EMap):
        return emap_to_dict(obj)
    if isinstance(obj, SMap):
        return smap_to_dict(obj)
    if isinstance(obj, FinCat):
        return fincat_to_dict(obj)
    if isinstance(obj, CFunctor):
        return functor_to_dict(obj)
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


__all__ = [
    "SchemaError", "dumps", "loads", "with_lines", "sset_to_dict", "sset_from_dict", "smap_to_dict",
    "smap_from_dict", "essset_to_dict", "essset_from_dict", "emap_to_dict", "fincat_to_dict",
    "fincat_from_dict", "functor_to_dict", "fincat_to_dot", "sset_to_dot", "to_dot", "to_dict",
    "functor_from_dict", "monad_from_dict", "monad_to_dict",
]


def functor_from_dict(d: Any, A: FinCat, B: FinCat, path: Sequence = ()) -> CFunctor:
    objs = _need(d, "objects", dict, path)
    mors = _need(d, "morphisms", dict, path)
    ao, am = {name(a): a for a in A.objects}, {name(f): f for f in A.morphisms}
    bo, bm = {name(b): b for b in B.objects}, {name(g): g for g in B.morphisms}
    try:
        obj = {ao[a]: bo[b] for a, b in objs.items()}
        mor = {am[f]: bm[g] for f, g in mors.items()}
    except KeyError as e:
        raise SchemaError(f"unknown object or morphism {e.args[0]!r}", path) from None
    F = CFunctor(A, B, obj, mor)
    if len(obj) != len(A.objects) or len(mor) != len(A.morphisms) or not F.is_valid():
        raise SchemaError("not a functor", path)
    return F


def monad_from_dict(d: Any, path: Sequence = ()):
    """{"category", "T", "eta", "mu", "marked"}; eta and mu map objects to morphisms."""
    from .catkit.category import CNat, identity_functor
    from .enriched.monads import MonadLawError, StrictMonad
    C = fincat_from_dict(_need(d, "category", dict, path), list(path) + ["category"])
    T = functor_from_dict(_need(d, "T", dict, path), C, C, list(path) + ["T"])
    ob, mb = {name(a): a for a in C.objects}, {name(f): f for f in C.morphisms}
    comps = {}
    for key in ("eta", "mu"):
        raw = _need(d, key, dict, path)
        try:
            comps[key] = {ob[a]: mb[f] for a, f in raw.items()}
        except KeyError as e:
            raise SchemaError(f"unknown object or morphism {e.args[0]!r}", list(path) + [key]) from None
    TT = T.then(T)
    M = StrictMonad(C, T, CNat(identity_functor(C), T, comps["eta"]), CNat(TT, T, comps["mu"]),
                    marked=[ob[a] for a in d.get("marked", list(ob))], label=d.get("label", ""))
    try:
        M.check()
    except (MonadLawError, ValueError, KeyError) as e:
        raise SchemaError(f"not a strict monad: {e}", path) from None
    return M


def monad_to_dict(M) -> Dict:
    return {"label": M.label, "category": fincat_to_dict(M.C), "T": functor_to_dict(M.T),
            "eta": {name(a): name(f) for a, f in M.eta.comp.items()},
            "mu": {name(a): name(f) for a, f in M.mu.comp.items()},
            "marked": sorted(name(a) for a in M.marked)}
