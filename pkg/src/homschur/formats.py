"""JSON file formats.

Rationals are strings ``"p/q"`` (``"p"`` when q = 1); morphism keys are lists
of generator ids in composition order; every list in an emitted document is
sorted by the global key order so output is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .category import GradedCategory, build_free_category, build_table_category, parity_violations
from .errors import HomschurError, ParityViolation
from .graded import ChainComplex, GradedVector, as_rational, format_rational
from .homatrix import (
    CobordismElement,
    HomMatrix,
    IndexMap,
    ObjectModule,
    Representation,
    make_module,
    representation_from_generators,
)
from .operad import IntervalConfig, LittleInterval
from .sympower import HGAlgebra, ModuleSpace, SymElement, normalize_convention


class SchemaError(HomschurError):
    """Malformed input document."""


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def _req(doc, name, kind=None):
    if not isinstance(doc, dict) or name not in doc:
        raise SchemaError(f"missing field {name!r}")
    val = doc[name]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"field {name!r} must be {kind.__name__}")
    return val


def _q(x) -> Fraction:
    if isinstance(x, float):
        raise SchemaError(f"inexact number {x!r}; write rationals as strings 'p/q'")
    try:
        return as_rational(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SchemaError(f"not a rational: {x!r}") from None


def _int(x, name) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{name} must be an integer")
    return x


def _path(p) -> tuple:
    if not isinstance(p, list) or not all(isinstance(s, str) for s in p):
        raise SchemaError(f"path must be a list of ids, got {p!r}")
    return tuple(p)


# -- category ----------------------------------------------------------------------


def parse_category(doc, *, even_mode: bool = False) -> GradedCategory:
    kind = doc.get("kind", "free") if isinstance(doc, dict) else None
    objects = [
        (_req(o, "id", str), _int(o.get("dim", 0), "dim")) for o in _req(doc, "objects", list)
    ]
    if kind == "free":
        gens = [
            (_req(g, "id", str), _req(g, "src", str), _req(g, "dst", str), _int(g.get("degree", 0), "degree"))
            for g in _req(doc, "generators", list)
        ]
        C = build_free_category(objects, gens, _int(_req(doc, "max_path_length"), "max_path_length"))
    elif kind == "table":
        homs = {}
        for h in _req(doc, "homs", list):
            pair = (_req(h, "src", str), _req(h, "dst", str))
            homs[pair] = {_path(b["key"]): _int(b.get("degree", 0), "degree") for b in _req(h, "basis", list)}
        table = {}
        for row in doc.get("compositions", []):
            key = (
                _req(row, "src", str), _req(row, "mid", str), _req(row, "dst", str),
                _path(_req(row, "left")), _path(_req(row, "right")),
            )
            table[key] = {_path(t["path"]): _q(t["coeff"]) for t in _req(row, "result", list)}
        C = build_table_category(objects, homs, table)
    else:
        raise SchemaError(f"unknown category kind {kind!r}")
    if even_mode:
        bad = parity_violations(C)
        if bad:
            raise ParityViolation("; ".join(bad))
    return C


def dump_category(C: GradedCategory) -> dict:
    objects = [{"id": o.id, "dim": o.dim} for o in sorted(C.objects.values(), key=lambda o: o.id)]
    if C.kind == "free":
        gens = [
            {"id": g.id, "src": g.source, "dst": g.target, "degree": g.degree}
            for g in sorted(C.generators.values(), key=lambda g: g.id)
        ]
        return {"kind": "free", "objects": objects, "generators": gens, "max_path_length": C.max_path_length}
    homs = []
    for x, y in C.hom_pairs():
        b = C.hom(x, y)
        homs.append({
            "src": x, "dst": y,
            "basis": [{"key": list(k), "degree": b.degree(k)} for k in b.keys()],
        })
    comps = []
    for (x, y, z, gk, fk), out in sorted(C.table.items()):
        comps.append({
            "src": x, "mid": y, "dst": z, "left": list(gk), "right": list(fk),
            "result": _dump_terms(out),
        })
    return {"kind": "table", "objects": objects, "homs": homs, "compositions": comps}


def _dump_terms(terms) -> list:
    return [{"path": list(k), "coeff": format_rational(c)} for k, c in sorted(terms.items())]


def _parse_terms(rows) -> dict:
    if not isinstance(rows, list):
        raise SchemaError("terms must be a list")
    out: dict = {}
    for t in rows:
        k = _path(_req(t, "path"))
        out[k] = out.get(k, 0) + _q(_req(t, "coeff"))
    return out


# -- morphisms and matrices --------------------------------------------------------


def parse_morphism(doc, C: GradedCategory) -> GradedVector:
    return _build(lambda: C.morphism(_req(doc, "src", str), _req(doc, "dst", str), _parse_terms(_req(doc, "terms"))))


def dump_morphism(C: GradedCategory, v: GradedVector) -> dict:
    x, y = C.endpoints(v)
    return {"src": x, "dst": y, "terms": _dump_terms(v.terms)}


def _build(fn):
    try:
        return fn()
    except (KeyError, TypeError) as exc:
        raise SchemaError(str(exc)) from None


def parse_index(C: GradedCategory, ids) -> IndexMap:
    if not isinstance(ids, list) or not all(isinstance(x, str) for x in ids):
        raise SchemaError("an index map is a list of object ids")
    return IndexMap(C, ids)


def parse_matrix(doc, C: GradedCategory) -> HomMatrix:
    src = parse_index(C, _req(doc, "source"))
    tgt = parse_index(C, _req(doc, "target"))
    entries = {}
    for e in _req(doc, "entries", list):
        i, j = _int(_req(e, "row"), "row"), _int(_req(e, "col"), "col")
        if not (0 <= i < len(tgt) and 0 <= j < len(src)):
            raise SchemaError(f"entry ({i}, {j}) out of range")
        v = C.morphism(src[j], tgt[i], _parse_terms(_req(e, "terms")))
        entries[(i, j)] = entries[(i, j)] + v if (i, j) in entries else v
    return HomMatrix(src, tgt, entries)


def dump_matrix(A: HomMatrix) -> dict:
    return {
        "source": list(A.source),
        "target": list(A.target),
        "entries": [
            {"row": i, "col": j, "terms": _dump_terms(v.terms)} for (i, j), v in sorted(A.entries().items())
        ],
    }


# -- modules and vectors ---------------------------------------------------------


def parse_module(doc, C: GradedCategory) -> ObjectModule:
    x = _req(doc, "object", str)
    basis = {_req(b, "key", str): _int(b.get("degree", 0), "degree") for b in _req(doc, "basis", list)}
    action = {}
    for a in doc.get("action", []):
        key = (_req(a, "target", str), _path(_req(a, "path")), _req(a, "vector", str))
        action[key] = {_req(t, "key", str): _q(_req(t, "coeff")) for t in _req(a, "result", list)}
    return make_module(C, x, basis, action)


def dump_module(mod: ObjectModule) -> dict:
    b = mod.basis
    return {
        "object": mod.object,
        "basis": [{"key": k, "degree": b.intrinsic_degree(k)} for k in b.keys()],
        "action": [
            {
                "target": y, "path": list(mk), "vector": vk,
                "result": [{"key": k, "coeff": format_rational(c)} for k, c in sorted(out.items())],
            }
            for (y, mk, vk), out in sorted(mod.action.items())
            if out
        ],
    }


def parse_representation(doc, C: GradedCategory) -> Representation:
    """Either ``{"modules": [module docs]}`` or a free-category generator presentation."""
    if "generator_actions" in doc:
        bases = {}
        for m in _req(doc, "modules", list):
            bases[_req(m, "object", str)] = {
                _req(b, "key", str): _int(b.get("degree", 0), "degree") for b in _req(m, "basis", list)
            }
        acts: dict = {}
        for a in _req(doc, "generator_actions", list):
            g = _req(a, "generator", str)
            acts.setdefault(g, {})[_req(a, "vector", str)] = {
                _req(t, "key", str): _q(_req(t, "coeff")) for t in _req(a, "result", list)
            }
        return representation_from_generators(C, bases, acts)
    modules = [parse_module(m, C) for m in _req(doc, "modules", list)]
    return Representation(C, {m.object: m for m in modules})


def dump_representation(rep: Representation) -> dict:
    return {"modules": [dump_module(rep.modules[x]) for x in sorted(rep.modules)]}


def parse_vector(doc, rep: Representation) -> GradedVector:
    c = parse_index(rep.category, _req(doc, "index"))
    V = rep.direct_sum(c)
    terms: dict = {}
    for t in _req(doc, "terms", list):
        k = (_int(_req(t, "slot"), "slot"), _req(t, "key", str))
        if k not in V:
            raise SchemaError(f"vector term {k!r} is not in the module sum")
        terms[k] = terms.get(k, 0) + _q(_req(t, "coeff"))
    return GradedVector(V, terms)


def dump_vector(v: GradedVector) -> dict:
    objects = v.basis.name[1]
    return {
        "index": list(objects),
        "terms": [{"slot": i, "key": k, "coeff": format_rational(c)} for (i, k), c in v.items()],
    }


# -- cobordisms ------------------------------------------------------------------


def parse_cobordism(doc, C: GradedCategory) -> CobordismElement:
    c = parse_index(C, _req(doc, "index"))
    alpha = [_int(a, "alpha") for a in _req(doc, "alpha", list)]
    t_docs = _req(doc, "t", list)
    if len(alpha) != len(c) or len(t_docs) != len(c):
        raise SchemaError("alpha and t must have one entry per index")
    if sorted(alpha) != list(range(len(c))):
        raise SchemaError(f"alpha={alpha!r} is not a permutation")
    t = [C.morphism(c[i], c[alpha[i]], _parse_terms(_req(td, "terms"))) for i, td in enumerate(t_docs)]
    return CobordismElement(c, alpha, t)


def dump_cobordism(e: CobordismElement) -> dict:
    return {
        "index": list(e.index),
        "alpha": list(e.alpha),
        "t": [{"terms": _dump_terms(ti.terms)} for ti in e.t],
    }


# -- symmetric powers -----------------------------------------------------------------


def parse_sym(doc, C: GradedCategory, rep: Representation | None = None, convention: str | None = None) -> SymElement:
    space_kind = _req(doc, "space", str)
    c = parse_index(C, _req(doc, "index"))
    m = _int(_req(doc, "m"), "m")
    conv = normalize_convention(convention or doc.get("convention", "averaged"))
    terms: dict = {}
    if space_kind == "hg":
        space = HGAlgebra(c)
        for t in _req(doc, "terms", list):
            keys = []
            for f in _req(t, "factors", list):
                i, j = _int(_req(f, "row"), "row"), _int(_req(f, "col"), "col")
                k = _path(_req(f, "path"))
                if not (0 <= i < len(c) and 0 <= j < len(c)) or k not in C.hom(c[j], c[i]):
                    raise SchemaError(f"factor {(i, j, k)!r} is not a basis element of HG(c, c)")
                keys.append((i, j, k))
            terms[tuple(keys)] = terms.get(tuple(keys), 0) + _q(_req(t, "coeff"))
    elif space_kind == "module":
        if rep is None:
            raise SchemaError("an element of S^m V needs a representation")
        space = ModuleSpace(rep, c)
        for t in _req(doc, "terms", list):
            keys = []
            for f in _req(t, "factors", list):
                k = (_int(_req(f, "slot"), "slot"), _req(f, "key", str))
                if k not in space.basis:
                    raise SchemaError(f"factor {k!r} is not in the module sum")
                keys.append(k)
            terms[tuple(keys)] = terms.get(tuple(keys), 0) + _q(_req(t, "coeff"))
    else:
        raise SchemaError(f"unknown space {space_kind!r}")
    return SymElement(space, m, conv, terms)


def dump_sym(s: SymElement) -> dict:
    if isinstance(s.space, HGAlgebra):
        def fac(k):
            return {"row": k[0], "col": k[1], "path": list(k[2])}
        kind = "hg"
    else:
        def fac(k):
            return {"slot": k[0], "key": k[1]}
        kind = "module"
    return {
        "space": kind,
        "index": list(s.space.c),
        "m": s.m,
        "convention": s.convention,
        "terms": [{"factors": [fac(k) for k in keys], "coeff": format_rational(c)} for keys, c in s.items()],
    }


# -- operad and complexes ------------------------------------------------------------------


def parse_config(doc) -> IntervalConfig:
    rows = _req(doc, "intervals", list)
    return IntervalConfig(tuple(LittleInterval(_q(_req(r, "center")), _q(_req(r, "radius"))) for r in rows))


def dump_config(c: IntervalConfig) -> dict:
    return {
        "intervals": [
            {"center": format_rational(t.center), "radius": format_rational(t.radius)} for t in c.intervals
        ]
    }


def parse_complex(doc) -> ChainComplex:
    cells: dict = {}
    for cell in _req(doc, "cells", list):
        cells.setdefault(_int(cell.get("degree", 0), "degree"), []).append(_req(cell, "key", str))
    boundary = {}
    for row in doc.get("differential", []):
        boundary[_req(row, "cell", str)] = {
            _req(t, "key", str): _q(_req(t, "coeff")) for t in _req(row, "boundary", list)
        }
    keys = [k for ks in cells.values() for k in ks]
    if len(set(keys)) != len(keys):
        raise SchemaError("duplicate cell keys")
    for k, b in boundary.items():
        if k not in keys or any(t not in keys for t in b):
            raise SchemaError(f"differential of {k!r} names an undeclared cell")
    return ChainComplex.from_cells(cells, boundary)


def dump_complex(C: ChainComplex) -> dict:
    return {
        "cells": [{"key": k, "degree": C.basis.degree(k)} for k in C.basis.keys()],
        "differential": [
            {
                "cell": k,
                "boundary": [{"key": t, "coeff": format_rational(c)} for t, c in C.differential[k].items()],
            }
            for k in sorted(C.differential)
        ],
    }


# -- workspace ------------------------------------------------------------------------------


@dataclass
class Workspace:
    """Everything found in one session directory.

    Layout: ``category.json`` (required), optional ``representation.json``
    and subdirectories ``matrices/``, ``cobordisms/``, ``sym/``,
    ``configs/``, ``complexes/`` holding one document per file.
    """

    root: Path
    category: GradedCategory
    representation: Representation | None = None
    matrices: dict = field(default_factory=dict)
    cobordisms: dict = field(default_factory=dict)
    sym: dict = field(default_factory=dict)
    configs: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)

    @classmethod
    def load(cls, root, *, even_mode: bool = False, convention: str | None = None) -> "Workspace":
        root = Path(root)
        C = parse_category(load_json(root / "category.json"), even_mode=even_mode)
        ws = cls(root, C)
        rep_path = root / "representation.json"
        if rep_path.exists():
            ws.representation = parse_representation(load_json(rep_path), C)

        def each(sub):
            d = root / sub
            return sorted(d.glob("*.json")) if d.is_dir() else []

        for p in each("matrices"):
            ws.matrices[p.stem] = parse_matrix(load_json(p), C)
        for p in each("cobordisms"):
            ws.cobordisms[p.stem] = parse_cobordism(load_json(p), C)
        for p in each("sym"):
            ws.sym[p.stem] = parse_sym(load_json(p), C, ws.representation, convention)
        for p in each("configs"):
            ws.configs[p.stem] = parse_config(load_json(p))
        for p in each("complexes"):
            ws.complexes[p.stem] = parse_complex(load_json(p))
        return ws
