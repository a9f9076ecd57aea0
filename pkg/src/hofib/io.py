"""JSON interchange: groupoid.v1, bicategory.v1, lax.v1, xmod.v1, monoidal.v1,
sset.v1 and report.v1.

Ids are JSON scalars or arrays (arrays decode to tuples).  Tables are arrays
of rows; the canonical form sorts every row array and every object key, so
save(load(x)) reproduces a canonical file byte for byte.
"""

import json

import jsonschema

from ._util import SchemaError, key, ordered, to_json, to_tuple
from .algebra import FiniteCategory, FiniteGroup, FiniteGroupoid, PGroup
from .bicategory import LAX, OPLAX, FiniteBicategory, LaxMorphism, _check_schema
from .monoidal import MonoidalCategory
from .report import ValidationReport
from .simplicial import TruncatedSimplicialSet
from .xmod import CrossedModule

SCHEMAS = ("groupoid.v1", "bicategory.v1", "lax.v1", "xmod.v1", "monoidal.v1", "sset.v1", "report.v1")

_ROWS = {"type": "array", "items": {"type": "array"}}
_IDS = {"type": "array"}
_CATEGORY = {
    "type": "object",
    "required": ["objects", "morphisms", "compose", "identity"],
    "properties": {"name": {"type": "string"}, "invertible": {"type": "boolean"}, "objects": _IDS,
                   "morphisms": _ROWS, "compose": _ROWS, "identity": _ROWS, "inverse": _ROWS},
}
_GROUP = {"type": "object", "required": ["elements", "mul", "identity"],
          "properties": {"name": {"type": "string"}, "elements": _IDS, "mul": _ROWS}}
_BICAT = {
    "type": "object",
    "required": ["objects", "cells1", "cells2", "vcomp", "hcomp1", "hcomp2", "id1", "id2",
                 "assoc", "lunit", "runit"],
    "properties": dict({"name": {"type": "string"}, "objects": _IDS},
                       **{t: _ROWS for t in ("cells1", "cells2", "vcomp", "hcomp1", "hcomp2", "id1",
                                             "id2", "assoc", "lunit", "runit")}),
}

JSON_SCHEMAS = {
    "groupoid.v1": _CATEGORY,
    "bicategory.v1": _BICAT,
    "lax.v1": {"type": "object",
               "required": ["direction", "source", "target", "map0", "map1", "map2", "comp", "unit"],
               "properties": {"direction": {"enum": [LAX, OPLAX]}, "source": _BICAT, "target": _BICAT,
                              "claims": {"type": "array", "items": {"type": "string"}},
                              "map0": _ROWS, "map1": _ROWS, "map2": _ROWS, "comp": _ROWS, "unit": _ROWS}},
    "xmod.v1": {"type": "object", "required": ["base", "fibers", "action", "boundary"],
                "properties": {"base": _CATEGORY,
                               "fibers": {"type": "array",
                                          "items": {"type": "array", "minItems": 2, "maxItems": 2,
                                                    "prefixItems": [{}, _GROUP]}},
                               "action": _ROWS, "boundary": _ROWS}},
    "monoidal.v1": {"type": "object",
                    "required": ["category", "tensor_obj", "tensor_mor", "unit", "assoc", "lunit", "runit"],
                    "properties": {"category": _CATEGORY, "tensor_obj": _ROWS, "tensor_mor": _ROWS,
                                   "assoc": _ROWS, "lunit": _ROWS, "runit": _ROWS}},
    "sset.v1": {"type": "object", "required": ["N", "cells", "faces", "degeneracies"],
                "properties": {"N": {"type": "integer", "minimum": 0},
                               "cells": {"type": "array", "items": _IDS},
                               "faces": _ROWS, "degeneracies": _ROWS}},
    "report.v1": {"type": "object", "required": ["status", "checks"],
                  "properties": {"status": {"enum": ["valid", "invalid", "resource-limited", "error"]},
                                 "suite": {"type": "string"}, "seed": {"type": "integer"},
                                 "checks": {"type": "array", "items": {
                                     "type": "object", "required": ["id", "anchor", "status", "violations"],
                                     "properties": {"id": {"type": "string"}, "anchor": {"type": "string"},
                                                    "subject": {"type": "string"},
                                                    "status": {"enum": ["valid", "invalid", "resource-limited",
                                                                        "error"]},
                                                    "violations": {"type": "array"}}}}}},
}


# ---------------------------------------------------------------- canonical text

def _rowkey(r):
    return key([x for x in r if not isinstance(x, dict)])


def _rows(pairs):
    return sorted((to_json(list(r)) for r in pairs), key=_rowkey)


def canonical(doc):
    """Deterministic text: sorted keys, two-space indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False, default=repr) + "\n"


# ---------------------------------------------------------------- encoders

def encode_category(C):
    doc = {"name": C.name, "invertible": isinstance(C, FiniteGroupoid),
           "objects": sorted(to_json(list(C.objects)), key=key),
           "morphisms": _rows((f, s, t) for f, (s, t) in C.morphisms.items()),
           "compose": _rows((g, f, h) for (g, f), h in C.compose.items()),
           "identity": _rows((x, f) for x, f in C.identity.items())}
    if isinstance(C, FiniteGroupoid):
        doc["inverse"] = _rows((f, C.inverse(f)) for f in C.morphisms)
    return doc


def encode_group(G):
    return {"name": G.name, "elements": sorted(to_json(list(G.elements)), key=key),
            "mul": _rows((a, b, c) for (a, b), c in G.mul.items()), "identity": to_json(G.e)}


def encode_bicategory(B):
    doc = {"name": B.name, "objects": sorted(to_json(list(B.objects)), key=key),
           "cells1": _rows((f, s, t) for f, (s, t) in B.cells1.items()),
           "cells2": _rows((a, s, t) for a, (s, t) in B.cells2.items())}
    for t in ("vcomp", "hcomp1", "hcomp2", "assoc"):
        doc[t] = _rows(tuple(k) + (v,) for k, v in getattr(B, t).items())
    for t in ("id1", "id2", "lunit", "runit"):
        doc[t] = _rows((k, v) for k, v in getattr(B, t).items())
    return doc


def encode_lax(F):
    S = F.source
    return {"name": F.name, "direction": F.direction, "claims": sorted(F.claims),
            "source": encode_bicategory(S), "target": encode_bicategory(F.target),
            "map0": _rows((x, F.F0(x)) for x in S.objects),
            "map1": _rows((f, F.F1(f)) for f in S.cells1),
            "map2": _rows((a, F.F2(a)) for a in S.cells2),
            "comp": _rows((g, f, F.comp(g, f)) for g, f in S.composable1()),
            "unit": _rows((x, F.unit(x)) for x in S.objects)}


def encode_xmod(X):
    return {"name": X.name, "base": encode_category(X.P),
            "fibers": _rows((a, encode_group(X.group(a))) for a in X.P.objects),
            "action": _rows((p, _rows(m.items())) for p, m in X.G.action.items()),
            "boundary": _rows((a, _rows(m.items())) for a, m in X.boundary.items())}


def encode_monoidal(M):
    return {"name": M.name, "category": encode_category(M.C),
            "tensor_obj": _rows((m, n, v) for (m, n), v in M.tensor_obj.items()),
            "tensor_mor": _rows((f, g, v) for (f, g), v in M.tensor_mor.items()),
            "unit": to_json(M.unit),
            "assoc": _rows(tuple(k) + (v,) for k, v in M.assoc.items()),
            "lunit": _rows(M.lunit.items()), "runit": _rows(M.runit.items())}


def encode_sset(S):
    return {"name": S.name, "N": S.N, "cells": [sorted(to_json(list(c)), key=key) for c in S.cells],
            "faces": _rows((n, i, _rows(m.items())) for (n, i), m in S.face.items()),
            "degeneracies": _rows((n, i, _rows(m.items())) for (n, i), m in S.degeneracy.items())}


def encode(obj):
    """(schema name, document) for a supported structure or report document."""
    if isinstance(obj, FiniteBicategory):
        return "bicategory.v1", encode_bicategory(obj)
    if isinstance(obj, LaxMorphism):
        return "lax.v1", encode_lax(obj)
    if isinstance(obj, CrossedModule):
        return "xmod.v1", encode_xmod(obj)
    if isinstance(obj, MonoidalCategory):
        return "monoidal.v1", encode_monoidal(obj)
    if isinstance(obj, TruncatedSimplicialSet):
        return "sset.v1", encode_sset(obj)
    if isinstance(obj, FiniteCategory):
        return "groupoid.v1", encode_category(obj)
    if isinstance(obj, dict) and obj.get("schema") == "report.v1":
        return "report.v1", {k: v for k, v in obj.items() if k != "schema"}
    raise TypeError(f"no schema for {type(obj).__name__}")


def dumps(obj):
    schema, doc = encode(obj)
    doc = dict(doc)
    doc["schema"] = schema
    return canonical(doc)


def save(obj, path):
    text = dumps(obj)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text


# ---------------------------------------------------------------- decoders

def _table(rows, arity, ptr):
    """Rows of length arity -> {key: value}; key is a tuple when arity > 2."""
    out = {}
    for n, r in enumerate(rows):
        if len(r) != arity:
            raise SchemaError(f"row has {len(r)} entries, expected {arity}", f"{ptr}/{n}")
        r = [to_tuple(x) for x in r]
        k = r[0] if arity == 2 else tuple(r[:-1])
        if k in out:
            raise SchemaError(f"duplicate entry for {to_json(k)!r}", f"{ptr}/{n}")
        out[k] = r[-1]
    return out


def decode_category(doc, ptr=""):
    objs = [to_tuple(x) for x in doc["objects"]]
    mors = {k[0]: (k[1], v) for k, v in _table(doc["morphisms"], 3, f"{ptr}/morphisms").items()}
    comp = _table(doc["compose"], 3, f"{ptr}/compose")
    ident = _table(doc["identity"], 2, f"{ptr}/identity")
    oset = set(objs)
    for n, (f, (s, t)) in enumerate(mors.items()):
        if s not in oset or t not in oset:
            raise SchemaError(f"endpoint of morphism {to_json(f)!r} is not an object", f"{ptr}/morphisms/{n}")
    for x in objs:
        if x not in ident:
            raise SchemaError(f"missing identity for object {to_json(x)!r}", f"{ptr}/identity")
    name = doc.get("name", "category")
    if doc.get("invertible"):
        inv = _table(doc.get("inverse", []), 2, f"{ptr}/inverse") or None
        C = FiniteGroupoid(objs, mors, comp, ident, inv, name=name)
    else:
        C = FiniteCategory(objs, mors, comp, ident, name=name)
    for g, f in C.composable_pairs():
        if (g, f) not in comp:
            raise SchemaError(f"missing compose entry for pair {to_json((g, f))!r}", f"{ptr}/compose")
    return C


def decode_group(doc, ptr=""):
    els = [to_tuple(x) for x in doc["elements"]]
    mul = _table(doc["mul"], 3, f"{ptr}/mul")
    for a in els:
        for b in els:
            if (a, b) not in mul:
                raise SchemaError(f"missing product for pair {to_json((a, b))!r}", f"{ptr}/mul")
    return FiniteGroup(els, mul, to_tuple(doc["identity"]), name=doc.get("name", "group"))


_BICAT_ARITY = {"vcomp": 3, "hcomp1": 3, "hcomp2": 3, "assoc": 4, "id1": 2, "id2": 2, "lunit": 2, "runit": 2}


def decode_bicategory(doc, ptr=""):
    objs = [to_tuple(x) for x in doc["objects"]]
    c1 = {k[0]: (k[1], v) for k, v in _table(doc["cells1"], 3, f"{ptr}/cells1").items()}
    c2 = {k[0]: (k[1], v) for k, v in _table(doc["cells2"], 3, f"{ptr}/cells2").items()}
    tabs = {t: _table(doc[t], a, f"{ptr}/{t}") for t, a in _BICAT_ARITY.items()}
    B = FiniteBicategory(objs, c1, c2, *[tabs[t] for t in FiniteBicategory.TABLES], name=doc.get("name", "B"))
    rep = ValidationReport("schema")
    _check_schema(B, rep)
    if rep.violations:
        v = rep.violations[0]
        table = v.instance[0]
        if v.axiom == "missing-entry":
            raise SchemaError(f"missing {table} entry for {to_json(v.instance[1])!r}", f"{ptr}/{table}")
        raise SchemaError(f"{v.axiom} for {to_json(v.instance[1:])!r}", f"{ptr}/{table}")
    return B


def decode_lax(doc, ptr=""):
    S = decode_bicategory(doc["source"], f"{ptr}/source")
    T = decode_bicategory(doc["target"], f"{ptr}/target")
    F = LaxMorphism(doc["direction"], S, T, _table(doc["map0"], 2, f"{ptr}/map0"),
                    _table(doc["map1"], 2, f"{ptr}/map1"), _table(doc["map2"], 2, f"{ptr}/map2"),
                    _table(doc["comp"], 3, f"{ptr}/comp"), _table(doc["unit"], 2, f"{ptr}/unit"),
                    claims=doc.get("claims", ()), name=doc.get("name", "F"))
    for t, dom in (("map0", S.objects), ("map1", S.cells1), ("map2", S.cells2),
                   ("comp_cell", list(S.composable1())), ("unit_cell", S.objects)):
        for k in dom:
            if k not in getattr(F, t):
                name = {"comp_cell": "comp", "unit_cell": "unit"}.get(t, t)
                raise SchemaError(f"missing entry for {to_json(k)!r}", f"{ptr}/{name}")
    return F


def decode_xmod(doc, ptr=""):
    P = decode_category(doc["base"], f"{ptr}/base")
    if not isinstance(P, FiniteGroupoid):
        raise SchemaError("base must be a groupoid", f"{ptr}/base/invertible")
    fibers = {}
    for n, (a, g) in enumerate(doc["fibers"]):
        fibers[to_tuple(a)] = decode_group(g, f"{ptr}/fibers/{n}/1")
    for a in P.objects:
        if a not in fibers:
            raise SchemaError(f"missing fiber for object {to_json(a)!r}", f"{ptr}/fibers")
    action = {}
    for n, (p, rows) in enumerate(doc["action"]):
        action[to_tuple(p)] = _table(rows, 2, f"{ptr}/action/{n}/1")
    for p in P.morphisms:
        if p not in action:
            raise SchemaError(f"missing action for morphism {to_json(p)!r}", f"{ptr}/action")
    bd = {}
    for n, (a, rows) in enumerate(doc["boundary"]):
        bd[to_tuple(a)] = _table(rows, 2, f"{ptr}/boundary/{n}/1")
    for a in P.objects:
        if a not in bd:
            raise SchemaError(f"missing boundary for object {to_json(a)!r}", f"{ptr}/boundary")
    return CrossedModule(PGroup(P, fibers, action, name="G"), bd, name=doc.get("name", "X"))


def decode_monoidal(doc, ptr=""):
    C = decode_category(doc["category"], f"{ptr}/category")
    to = _table(doc["tensor_obj"], 3, f"{ptr}/tensor_obj")
    tm = _table(doc["tensor_mor"], 3, f"{ptr}/tensor_mor")
    for m in C.objects:
        for n in C.objects:
            if (m, n) not in to:
                raise SchemaError(f"missing tensor for pair {to_json((m, n))!r}", f"{ptr}/tensor_obj")
    return MonoidalCategory(C, to, tm, to_tuple(doc["unit"]), _table(doc["assoc"], 4, f"{ptr}/assoc"),
                            _table(doc["lunit"], 2, f"{ptr}/lunit"), _table(doc["runit"], 2, f"{ptr}/runit"),
                            name=doc.get("name", "M"))


def decode_sset(doc, ptr=""):
    N = doc["N"]
    cells = [[to_tuple(x) for x in c] for c in doc["cells"]]
    if len(cells) != N + 1:
        raise SchemaError(f"expected {N + 1} cell lists", f"{ptr}/cells")
    face, deg = {}, {}
    for tab, out, name in ((doc["faces"], face, "faces"), (doc["degeneracies"], deg, "degeneracies")):
        for n, (d, i, rows) in enumerate(r for r in tab):
            out[(d, i)] = _table(rows, 2, f"{ptr}/{name}/{n}/2")
    for n in range(1, N + 1):
        for i in range(n + 1):
            if (n, i) not in face:
                raise SchemaError(f"missing face map ({n}, {i})", f"{ptr}/faces")
    for n in range(N):
        for i in range(n + 1):
            if (n, i) not in deg:
                raise SchemaError(f"missing degeneracy map ({n}, {i})", f"{ptr}/degeneracies")
    return TruncatedSimplicialSet(N, cells, face, deg, name=doc.get("name", "S"))


DECODERS = {"groupoid.v1": decode_category, "bicategory.v1": decode_bicategory, "lax.v1": decode_lax,
            "xmod.v1": decode_xmod, "monoidal.v1": decode_monoidal, "sset.v1": decode_sset,
            "report.v1": lambda doc, ptr="": dict(doc, schema="report.v1")}


def check_document(doc, schema=None):
    """Structural validation; returns the schema name."""
    if not isinstance(doc, dict):
        raise SchemaError("document must be an object", "/")
    name = doc.get("schema") if schema is None else schema
    if name is None:
        raise SchemaError("missing schema field", "/schema")
    if name not in JSON_SCHEMAS:
        raise SchemaError(f"unknown schema version {name!r}; supported: {', '.join(SCHEMAS)}", "/schema")
    if "schema" in doc and doc["schema"] != name:
        raise SchemaError(f"expected schema {name!r}, found {doc['schema']!r}", "/schema")
    v = jsonschema.Draft202012Validator(JSON_SCHEMAS[name])
    errors = sorted(v.iter_errors(doc), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        e = errors[0]
        raise SchemaError(e.message, "/" + "/".join(str(p) for p in e.absolute_path))
    return name


def loads(text, schema=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc.msg} at line {exc.lineno}", "/") from None
    name = check_document(doc, schema)
    try:
        return DECODERS[name](doc)
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed {name} document: {exc}", "/") from None


def load(path, schema=None):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), schema)


def schema_of(path):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return doc.get("schema") if isinstance(doc, dict) else None


def report_document(rep):
    """A single ValidationReport as a JSON-ready dict."""
    return rep.as_json()


def sorted_ids(xs):
    return [to_json(x) for x in ordered(xs)]
