"""Canonical JSON encoding of the public object kinds.

All output is deterministic: sorted keys, compact separators, no floats;
rationals travel as strings like "3/2".  Decoding errors carry the JSON path
of the offending element.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import AModule, AModuleMorphism, BaseAlgebra, ModuleCategory
from .complexes import ChainMap, Complex
from .linalg import Field, Matrix
from .quiver import Quiver
from .reps import Representation, RepCategory, RepMorphism


class SchemaError(ValueError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"at {path}: {message}")


def canonical_dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def field_to_str(field):
    return "rat" if field.p is None else f"gf:{field.p}"


def field_from_str(s, path="base"):
    if s == "rat":
        return Field(None)
    if s.startswith("gf:"):
        try:
            return Field(int(s[3:]))
        except ValueError as e:
            raise SchemaError(path, str(e))
    raise SchemaError(path, f"unknown base field {s!r} (use gf:p or rat)")


def _entry_out(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    return x


def _entry_in(field, x, path):
    if field.p is None:
        if isinstance(x, str):
            try:
                return Fraction(x)
            except ValueError:
                raise SchemaError(path, f"bad rational literal {x!r}")
        if isinstance(x, int):
            return Fraction(x)
        raise SchemaError(path, "rational entries must be ints or strings")
    if not isinstance(x, int):
        raise SchemaError(path, "prime-field entries must be ints")
    return x


def matrix_out(m):
    return [[_entry_out(x) for x in row] for row in m.entries]


def matrix_in(field, data, rows, cols, path):
    if not isinstance(data, list):
        raise SchemaError(path, "matrix must be a list of rows")
    if rows and cols:
        if len(data) != rows or any(not isinstance(r, list) or len(r) != cols for r in data):
            raise SchemaError(path, f"matrix must be {rows}x{cols}")
        return Matrix(field, rows, cols,
                      [[_entry_in(field, x, f"{path}[{i}][{j}]") for j, x in enumerate(r)]
                       for i, r in enumerate(data)])
    return Matrix.zeros(field, rows, cols)


def module_out(m):
    return {"dim": m.dim, "op": matrix_out(m.op)}


def module_in(cat, data, path="module"):
    if not isinstance(data, dict) or "dim" not in data or "op" not in data:
        raise SchemaError(path, "module needs keys 'dim' and 'op'")
    d = data["dim"]
    if not isinstance(d, int) or d < 0:
        raise SchemaError(f"{path}.dim", "dimension must be a natural number")
    op = matrix_in(cat.field, data["op"], d, d, f"{path}.op")
    try:
        return AModule(cat.algebra, d, op)
    except ValueError as e:
        raise SchemaError(path, str(e))


def quiver_out(q):
    return {"vertices": list(q.vertices),
            "arrows": [{"id": a, "s": s, "t": t} for a, s, t in q.arrows]}


def quiver_in(data, path="quiver"):
    if not isinstance(data, dict) or "vertices" not in data or "arrows" not in data:
        raise SchemaError(path, "quiver needs keys 'vertices' and 'arrows'")
    arrows = []
    for k, rec in enumerate(data["arrows"]):
        if not isinstance(rec, dict) or not {"id", "s", "t"} <= set(rec):
            raise SchemaError(f"{path}.arrows[{k}]", "arrow needs keys 'id', 's', 't'")
        arrows.append((rec["id"], rec["s"], rec["t"]))
    try:
        return Quiver(data["vertices"], arrows)
    except ValueError as e:
        raise SchemaError(path, str(e))


def rep_out(x):
    return {"quiver": quiver_out(x.quiver),
            "modules": {v: module_out(m) for v, m in x.modules.items()},
            "arrows": {a: matrix_out(f.mat) for a, f in x.arrows.items()}}


def rep_in(base, data, path="rep"):
    if not isinstance(data, dict) or "quiver" not in data or "modules" not in data:
        raise SchemaError(path, "representation needs keys 'quiver', 'modules', 'arrows'")
    q = quiver_in(data["quiver"], f"{path}.quiver")
    cat = RepCategory(q, base)
    mods = {}
    for v in q.vertices:
        if v not in data["modules"]:
            raise SchemaError(f"{path}.modules", f"missing vertex {v!r}")
        mods[v] = module_in(base, data["modules"][v], f"{path}.modules[{v}]")
    arrows = {}
    arrow_data = data.get("arrows", {})
    for a, s, t in q.arrows:
        mat = matrix_in(base.field, arrow_data.get(a, []),
                        mods[t].dim, mods[s].dim, f"{path}.arrows[{a}]")
        try:
            arrows[a] = AModuleMorphism(mods[s], mods[t], mat)
        except ValueError as e:
            raise SchemaError(f"{path}.arrows[{a}]", str(e))
    try:
        return Representation(cat, mods, arrows)
    except ValueError as e:
        raise SchemaError(path, str(e))


def morphism_out(f):
    if isinstance(f, RepMorphism):
        return {"components": {v: matrix_out(c.mat) for v, c in f.components.items()}}
    return matrix_out(f.mat)


def complex_out(x):
    is_rep = hasattr(x.ctx, "quiver")
    terms = [rep_out(t) if is_rep else module_out(t) for t in x.terms]
    diffs = [morphism_out(d) for d in x.diffs]
    return {"lo": x.lo, "hi": x.hi, "terms": terms, "diffs": diffs}


def complex_in(base, data, path="complex"):
    if not isinstance(data, dict) or "lo" not in data or "terms" not in data:
        raise SchemaError(path, "complex needs keys 'lo', 'hi', 'terms', 'diffs'")
    lo, hi = data["lo"], data.get("hi", data["lo"] + len(data["terms"]) - 1)
    terms_data = data["terms"]
    diffs_data = data.get("diffs", [])
    if not terms_data:
        raise SchemaError(f"{path}.terms", "empty complexes are encoded as one zero term")
    if len(terms_data) != hi - lo + 1:
        raise SchemaError(f"{path}.terms", "term count must equal hi - lo + 1")
    if len(diffs_data) != max(0, hi - lo):
        raise SchemaError(f"{path}.diffs", "differential count must equal hi - lo")
    first = terms_data[0]
    if isinstance(first, dict) and "quiver" in first:
        terms = [rep_in(base, t, f"{path}.terms[{k}]") for k, t in enumerate(terms_data)]
        ctx = terms[0].cat
        for t in terms[1:]:
            if t.quiver != ctx.quiver:
                raise SchemaError(f"{path}.terms", "all terms must share one quiver")
        diffs = []
        for k, d in enumerate(diffs_data):
            if not isinstance(d, dict) or "components" not in d:
                raise SchemaError(f"{path}.diffs[{k}]", "expected {'components': {vertex: matrix}}")
            comps = {}
            for v in ctx.quiver.vertices:
                mat = matrix_in(base.field, d["components"].get(v, []),
                                terms[k + 1].modules[v].dim, terms[k].modules[v].dim,
                                f"{path}.diffs[{k}].components[{v}]")
                try:
                    comps[v] = AModuleMorphism(terms[k].modules[v], terms[k + 1].modules[v], mat)
                except ValueError as e:
                    raise SchemaError(f"{path}.diffs[{k}].components[{v}]", str(e))
            try:
                diffs.append(RepMorphism(terms[k], terms[k + 1], comps))
            except ValueError as e:
                raise SchemaError(f"{path}.diffs[{k}]", str(e))
        # terms[0].cat is a fresh category per term; rebuild with a shared one
        shared = terms[0].cat
        terms = [Representation(shared, t.modules, t.arrows) for t in terms]
        try:
            return Complex(shared, lo, hi, terms, diffs)
        except ValueError as e:
            raise SchemaError(path, str(e))
    cat = base
    terms = [module_in(cat, t, f"{path}.terms[{k}]") for k, t in enumerate(terms_data)]
    diffs = []
    for k, d in enumerate(diffs_data):
        mat = matrix_in(cat.field, d, terms[k + 1].dim, terms[k].dim, f"{path}.diffs[{k}]")
        try:
            diffs.append(AModuleMorphism(terms[k], terms[k + 1], mat))
        except ValueError as e:
            raise SchemaError(f"{path}.diffs[{k}]", str(e))
    try:
        return Complex(cat, lo, hi, terms, diffs)
    except ValueError as e:
        raise SchemaError(path, str(e))


def chain_map_out(f):
    return {"degrees": {str(i): morphism_out(c) for i, c in sorted(f.comps.items())}}


def detect_kind(data, path="input"):
    if not isinstance(data, dict):
        raise SchemaError(path, "top-level JSON must be an object")
    if "lo" in data:
        return "complex"
    if "quiver" in data:
        return "rep"
    if "dim" in data and "op" in data:
        return "module"
    raise SchemaError(path, "cannot tell whether this is a module, representation or complex")


def load_object(base, data, path="input"):
    kind = detect_kind(data, path)
    if kind == "module":
        return module_in(base, data, path)
    if kind == "rep":
        return rep_in(base, data, path)
    return complex_in(base, data, path)


def dump_object(obj):
    if isinstance(obj, AModule):
        return module_out(obj)
    if isinstance(obj, Representation):
        return rep_out(obj)
    if isinstance(obj, Complex):
        return complex_out(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
