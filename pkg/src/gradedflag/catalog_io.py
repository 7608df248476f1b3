"""Text serialization for algebras, gradings, filtrations and group words.

Documents are JSON. Every coefficient is a ``"p/q"`` string, indices and
dimensions are plain integers. Structure constants are stored sparsely as
``[i, j, [c_0, ..., c_{n-1}]]`` for ``i < j``; the opposite order is implied
by antisymmetry. Output is canonical, so ``dumps(loads(s)) == s`` for any
``s`` produced here.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Union

from .catalog import CatalogEntry, check_entry
from .elementary_group import GroupElement
from .exact_linalg import Subspace
from .filtration import Filtration, is_filtration
from .grading import Grading, validate_grading
from .lie_algebra import InvalidAlgebra, LieAlgebra
from .scalar import scalar, to_str

FORMAT = "gradedflag/1"


class FormatError(ValueError):
    """Malformed document; ``line`` and ``column`` locate JSON syntax errors."""

    def __init__(self, message, line=None, column=None, path=()):
        where = f" (line {line}, column {column})" if line is not None else ""
        loc = f" at {'/'.join(map(str, path))}" if path else ""
        super().__init__(f"{message}{loc}{where}")
        self.line = line
        self.column = column
        self.path = tuple(path)


class ValidationError(ValueError):
    """Well-formed document whose contents fail a mathematical check."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = list(report)


# encoding


def _vec(v):
    return [to_str(a) for a in v]


def _algebra_doc(L: LieAlgebra) -> Dict[str, Any]:
    n = L.dim
    triples = []
    for i in range(n):
        for j in range(i + 1, n):
            v = L.structure[i][j]
            if any(v):
                triples.append([i, j, _vec(v)])
    return {"name": L.name, "dim": n, "labels": list(L.labels), "structure": triples}


def _grading_doc(G: Grading) -> Dict[str, Any]:
    return {"k": G.k, "layers": {str(d): [_vec(v) for v in G.layers[d].vectors] for d in G.degrees}}


def _entry_doc(e: CatalogEntry) -> Dict[str, Any]:
    doc = {"kind": "algebra", **_algebra_doc(e.algebra), "notes": e.notes,
           "grading": _grading_doc(e.grading)}
    if e.grading.euler is not None:
        doc["euler"] = _vec(e.grading.euler.coords)
    if e.top_pair is not None:
        doc["top_pair"] = [_vec(v) for v in e.top_pair]
    if e.blocks is not None:
        doc["blocks"] = list(e.blocks)
    return doc


def _graded_doc(G: Grading) -> Dict[str, Any]:
    doc = {"kind": "algebra", **_algebra_doc(G.algebra), "grading": _grading_doc(G)}
    if G.euler is not None:
        doc["euler"] = _vec(G.euler.coords)
    return doc


def to_document(obj) -> Dict[str, Any]:
    if isinstance(obj, CatalogEntry):
        doc = _entry_doc(obj)
    elif isinstance(obj, LieAlgebra):
        doc = {"kind": "algebra", **_algebra_doc(obj)}
    elif isinstance(obj, Grading):
        doc = _graded_doc(obj)
    elif isinstance(obj, Filtration):
        doc = {"kind": "filtration", "algebra": _algebra_doc(obj.algebra), "k": obj.k,
               "steps": {str(n): [_vec(v) for v in obj.steps[n].vectors] for n in obj.steps}}
    elif isinstance(obj, GroupElement):
        doc = {"kind": "word", "algebra": _graded_doc(obj.grading),
               "word": [[s, _vec(v)] for s, v in obj.word]}
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {"format": FORMAT, **doc}


def _render(value, indent: int) -> str:
    # objects one key per line, arrays of scalars inline, arrays of arrays one item per line
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_render(v, indent + 2)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and value and all(isinstance(x, list) for x in value):
        items = [f"{inner}{_render(x, indent + 2)}" for x in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def dumps(obj) -> str:
    return _render(to_document(obj), 0) + "\n"


def save(obj, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


# decoding


def _fail(msg, path):
    raise FormatError(msg, path=path)


def _int(doc, key, path):
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        _fail(f"field {key!r} must be an integer", path + (key,))
    return v


def _scalar(x, path):
    if isinstance(x, bool) or isinstance(x, float):
        _fail("coefficients must be 'p/q' strings or integers", path)
    try:
        return scalar(x)
    except (ValueError, TypeError, ZeroDivisionError):
        _fail(f"bad rational {x!r}", path)


def _vector(v, n, path):
    if not isinstance(v, list) or len(v) != n:
        _fail(f"expected a vector of length {n}", path)
    return tuple(_scalar(a, path + (t,)) for t, a in enumerate(v))


def _vectors(vs, n, path):
    if not isinstance(vs, list):
        _fail("expected a list of vectors", path)
    return [_vector(v, n, path + (t,)) for t, v in enumerate(vs)]


def _parse_algebra(doc, path=()) -> LieAlgebra:
    if not isinstance(doc, dict):
        _fail("algebra must be an object", path)
    n = _int(doc, "dim", path)
    if n < 0:
        _fail("dim must be non-negative", path + ("dim",))
    labels = doc.get("labels")
    if labels is None:
        labels = [f"b{i}" for i in range(n)]
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
        _fail(f"labels must be {n} strings", path + ("labels",))
    structure = {}
    triples = doc.get("structure", [])
    if not isinstance(triples, list):
        _fail("structure must be a list of [i, j, vector]", path + ("structure",))
    for t, entry in enumerate(triples):
        p = path + ("structure", t)
        if not isinstance(entry, list) or len(entry) != 3:
            _fail("structure entries are [i, j, vector]", p)
        i, j, v = entry
        if not all(isinstance(a, int) and not isinstance(a, bool) and 0 <= a < n for a in (i, j)):
            _fail("basis index out of range", p)
        if (i, j) in structure:
            _fail(f"bracket [{i},{j}] given twice", p)
        structure[(i, j)] = _vector(v, n, p + (2,))
    for (i, j), v in list(structure.items()):
        structure.setdefault((j, i), tuple(-a for a in v))
    try:
        return LieAlgebra(structure, labels, dim=n, name=str(doc.get("name", "")))
    except InvalidAlgebra as exc:
        report = [{"check": "jacobi", "triple": list(t)} if len(t) == 3 and t[0] != "antisymmetry"
                  else {"check": "antisymmetry", "pair": list(t[1:])} for t in exc.report]
        raise ValidationError("structure constants are not a Lie algebra", report) from None


def _parse_grading(L: LieAlgebra, doc, euler, path) -> Grading:
    if not isinstance(doc, dict):
        _fail("grading must be an object", path)
    k = _int(doc, "k", path)
    layers_doc = doc.get("layers")
    if not isinstance(layers_doc, dict):
        _fail("layers must map degrees to basis lists", path + ("layers",))
    layers = {}
    for key, vs in layers_doc.items():
        try:
            d = int(key)
        except ValueError:
            _fail(f"layer key {key!r} is not an integer", path + ("layers",))
        if abs(d) > k:
            _fail(f"layer {d} outside [-{k}, {k}]", path + ("layers", key))
        layers[d] = Subspace.span(_vectors(vs, L.dim, path + ("layers", key)), L.dim)
    G = Grading(L, k, layers, euler=euler)
    report = validate_grading(L, G)
    if report:
        raise ValidationError("grading fails validation", report)
    return G


def _parse_graded(doc, path=()):
    L = _parse_algebra(doc, path)
    if "grading" not in doc:
        return L, None
    euler = _vector(doc["euler"], L.dim, path + ("euler",)) if "euler" in doc else None
    return L, _parse_grading(L, doc["grading"], euler, path + ("grading",))


def _from_document(doc):
    if not isinstance(doc, dict):
        _fail("document must be a JSON object", ())
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        _fail(f"unsupported format {fmt!r}", ("format",))
    kind = doc.get("kind", "algebra")
    if kind == "algebra":
        L, G = _parse_graded(doc)
        if G is None:
            return L
        top = doc.get("top_pair")
        blocks = doc.get("blocks")
        entry = CatalogEntry(L.name, L, G, str(doc.get("notes", "")),
                             top_pair=None if top is None else tuple(_vectors(top, L.dim, ("top_pair",))),
                             blocks=None if blocks is None else tuple(int(b) for b in blocks))
        report = check_entry(entry)
        if report:
            raise ValidationError("catalog entry fails validation", report)
        return entry
    if kind == "filtration":
        L = _parse_algebra(doc.get("algebra"), ("algebra",))
        k = _int(doc, "k", ())
        steps_doc = doc.get("steps")
        if not isinstance(steps_doc, dict):
            _fail("steps must map levels to basis lists", ("steps",))
        steps = {}
        for key, vs in steps_doc.items():
            steps[int(key)] = Subspace.span(_vectors(vs, L.dim, ("steps", key)), L.dim)
        try:
            F = Filtration(L, k, steps)
        except ValueError as exc:
            _fail(str(exc), ("steps",))
        report = is_filtration(L, F)
        if report:
            raise ValidationError("not a filtration", report)
        return F
    if kind == "word":
        L, G = _parse_graded(doc.get("algebra"), ("algebra",))
        if G is None:
            _fail("a word needs a graded algebra", ("algebra",))
        word = []
        for t, item in enumerate(doc.get("word", [])):
            if not isinstance(item, list) or len(item) != 2 or item[0] not in ("+", "-"):
                _fail("word entries are [sign, vector]", ("word", t))
            word.append((item[0], _vector(item[1], L.dim, ("word", t))))
        try:
            return GroupElement(G, word)
        except ValueError as exc:
            raise ValidationError(str(exc), [{"check": "membership", "detail": str(exc)}]) from None
    _fail(f"unknown kind {kind!r}", ("kind",))


def _schema_check(doc):
    try:
        import jsonschema
    except ImportError:  # optional: the decoder checks every field it reads
        return
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as exc:
        raise FormatError(exc.message, path=tuple(exc.absolute_path)) from None


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from None
    _schema_check(doc)
    return _from_document(doc)


def load(path: Union[str, Path]):
    return loads(Path(path).read_text(encoding="utf-8"))


def schema() -> dict:
    return json.loads(resources.files("gradedflag").joinpath("data/schema.json").read_text())


def example_path(name: str) -> Path:
    """Path of a shipped example file (``sl2`` or ``gl211``)."""
    return Path(str(resources.files("gradedflag").joinpath(f"data/{name}.json")))
