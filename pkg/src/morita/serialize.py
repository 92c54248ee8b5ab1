"""JSON documents for groupoids, bibundles, algebroids and bimodules.

Scalars are written as "p/q" strings. Algebroid and bimodule tables refer to
basis elements by index into ``labels``. A bibundle or bimodule may give its
left/right structure inline or as a path relative to the document.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebroid import BlockViolation, HopfAlgebroid, make_algebroid, require_blocks
from .bimodule import PrincipalBimodule, make_bimodule
from .exactla import SparseMatrix, fmt, frac
from .groupoid import FiniteGroupoid, PrincipalBibundle

KINDS = ("groupoid", "bibundle", "algebroid", "bimodule")


class MalformedInput(ValueError):
    pass


def _need(doc: dict, key: str, kind: type = object):
    if key not in doc:
        raise MalformedInput(f"missing field {key!r}")
    val = doc[key]
    if kind is not object and not isinstance(val, kind):
        raise MalformedInput(f"field {key!r} should be {kind.__name__}")
    return val


def _scalar(x) -> Fraction:
    try:
        return frac(x)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise MalformedInput(f"bad scalar {x!r}") from e


def _label(x, known, what: str) -> str:
    if not isinstance(x, str) or x not in known:
        raise MalformedInput(f"unknown {what} {x!r}")
    return x


def _index(i, n: int, what: str) -> int:
    if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < n:
        raise MalformedInput(f"{what} index {i!r} out of range")
    return i


def _rows(doc: dict, key: str, width: int) -> list:
    rows = _need(doc, key, list)
    for r in rows:
        if not isinstance(r, list) or len(r) != width:
            raise MalformedInput(f"rows of {key!r} need {width} entries")
    return rows


def _unique(labels, what: str) -> tuple:
    if not all(isinstance(x, str) for x in labels) or len(set(labels)) != len(labels):
        raise MalformedInput(f"{what} labels must be distinct strings")
    return tuple(labels)


# -- groupoids and bibundles ----------------------------------------------

def groupoid_to_dict(g: FiniteGroupoid) -> dict:
    return {
        "kind": "groupoid",
        "objects": sorted(g.objects),
        "arrows": [{"id": a, "src": g.src[a], "tgt": g.tgt[a]} for a in sorted(g.arrows)],
        "compose": sorted([b, a, ba] for (b, a), ba in g.compose.items()),
        "inv": sorted([a, g.inv[a]] for a in g.arrows),
        "unit": sorted([x, g.unit[x]] for x in g.objects),
    }


def groupoid_from_dict(doc: dict) -> FiniteGroupoid:
    objects = _unique(_need(doc, "objects", list), "object")
    arrows, src, tgt = [], {}, {}
    for a in _need(doc, "arrows", list):
        if not isinstance(a, dict):
            raise MalformedInput("arrows are objects with id, src, tgt")
        name = _need(a, "id", str)
        arrows.append(name)
        src[name] = _label(_need(a, "src"), objects, "object")
        tgt[name] = _label(_need(a, "tgt"), objects, "object")
    arrows = _unique(arrows, "arrow")
    compose = {}
    for b, a, ba in _rows(doc, "compose", 3):
        key = (_label(b, src, "arrow"), _label(a, src, "arrow"))
        if key in compose:
            raise MalformedInput(f"compose lists {key} twice")
        compose[key] = _label(ba, src, "arrow")
    inv = {_label(a, src, "arrow"): _label(b, src, "arrow") for a, b in _rows(doc, "inv", 2)}
    unit = {_label(x, objects, "object"): _label(a, src, "arrow") for x, a in _rows(doc, "unit", 2)}
    if set(inv) != set(arrows):
        raise MalformedInput("inv is not total")
    if set(unit) != set(objects):
        raise MalformedInput("unit is not total")
    want = {(b, a) for b in arrows for a in arrows if src[b] == tgt[a]}
    if set(compose) != want:
        extra = sorted(set(compose) ^ want)[0]
        raise MalformedInput(f"compose is not defined exactly on composable pairs, e.g. {list(extra)}")
    return FiniteGroupoid(objects, arrows, src, tgt, compose, inv, unit)


def bibundle_to_dict(p: PrincipalBibundle) -> dict:
    return {
        "kind": "bibundle",
        "left": groupoid_to_dict(p.left),
        "right": groupoid_to_dict(p.right),
        "points": [{"id": q, "pi": p.pi[q], "phi": p.phi[q]} for q in sorted(p.points)],
        "act_left": sorted([g, q, r] for (g, q), r in p.act_left.items()),
        "act_right": sorted([q, h, r] for (q, h), r in p.act_right.items()),
    }


def bibundle_from_dict(doc: dict, base: Path | None = None) -> PrincipalBibundle:
    left = _sub(doc, "left", "groupoid", base)
    right = _sub(doc, "right", "groupoid", base)
    points, pi, phi = [], {}, {}
    for q in _need(doc, "points", list):
        if not isinstance(q, dict):
            raise MalformedInput("points are objects with id, pi, phi")
        name = _need(q, "id", str)
        points.append(name)
        pi[name] = _label(_need(q, "pi"), left.objects, "left object")
        phi[name] = _label(_need(q, "phi"), right.objects, "right object")
    points = _unique(points, "point")
    act_left = {(_label(g, left.src, "left arrow"), _label(q, pi, "point")): _label(r, pi, "point")
                for g, q, r in _rows(doc, "act_left", 3)}
    act_right = {(_label(q, pi, "point"), _label(h, right.src, "right arrow")): _label(r, pi, "point")
                 for q, h, r in _rows(doc, "act_right", 3)}
    if set(act_left) != {(g, q) for g in left.arrows for q in points if left.src[g] == pi[q]}:
        raise MalformedInput("act_left is not defined exactly where src(g) = pi(p)")
    if set(act_right) != {(q, h) for q in points for h in right.arrows if phi[q] == right.tgt[h]}:
        raise MalformedInput("act_right is not defined exactly where phi(p) = tgt(h)")
    return PrincipalBibundle(left, right, points, pi, phi, act_left, act_right)


# -- algebroids and bimodules ---------------------------------------------

def _comult_to_dict(comult) -> dict:
    return {str(k): [[i, j, fmt(c)] for (i, j), c in sorted(t.items())] for k, t in enumerate(comult)}


def _counit_to_dict(counit, points) -> dict:
    return {str(k): {points[x]: fmt(c) for x, c in sorted(e.items())} for k, e in enumerate(counit)}


def algebroid_to_dict(a: HopfAlgebroid) -> dict:
    doc = {
        "kind": "algebroid",
        "base": list(a.base.points),
        "dim": a.dim,
        "labels": list(a.labels),
        "a0_embedding": {x: [fmt(a.a0_embedding[i].get(k, 0)) for k in range(a.dim)]
                         for i, x in enumerate(a.base.points)},
        "mult": [[i, j, k, fmt(c)] for (i, j), v in sorted(a.mult.items()) for k, c in sorted(v.items())],
        "comult": _comult_to_dict(a.coalgebra.comult),
        "counit": _counit_to_dict(a.coalgebra.counit, a.base.points),
    }
    if a.antipode is not None:
        doc["antipode"] = [[i, j, fmt(c)] for (i, j), c in sorted(a.antipode.entries.items())]
    return doc


def _structure(doc: dict, n: int, points: tuple):
    comult_doc = _need(doc, "comult", dict)
    counit_doc = _need(doc, "counit", dict)
    comult, counit = [], []
    for k in range(n):
        t = {}
        for row in comult_doc.get(str(k), []):
            if not isinstance(row, list) or len(row) != 3:
                raise MalformedInput("comult rows are [i, j, c]")
            i, j, c = row
            t[(_index(i, n, "comult"), _index(j, n, "comult"))] = _scalar(c)
        comult.append({key: c for key, c in t.items() if c})
        e = counit_doc.get(str(k), {})
        if not isinstance(e, dict):
            raise MalformedInput("counit entries map base points to scalars")
        idx = {x: i for i, x in enumerate(points)}
        counit.append({idx[_label(x, idx, "base point")]: _scalar(c) for x, c in e.items() if _scalar(c)})
    extra = (set(comult_doc) | set(counit_doc)) - {str(k) for k in range(n)}
    if extra:
        raise MalformedInput(f"comult/counit name unknown elements {sorted(extra)}")
    return comult, counit


def _triples(doc: dict, key: str, dims: tuple) -> dict:
    table: dict = {}
    for row in _rows(doc, key, 4):
        i, j, k, c = row
        pair = (_index(i, dims[0], key), _index(j, dims[1], key))
        k = _index(k, dims[2], key)
        slot = table.setdefault(pair, {})
        slot[k] = slot.get(k, 0) + _scalar(c)
    return {pair: {k: c for k, c in v.items() if c} for pair, v in table.items() if any(v.values())}


def _labels_of(doc: dict, n: int, prefix: str) -> tuple:
    labels = doc.get("labels", [f"{prefix}{i}" for i in range(n)])
    if not isinstance(labels, list) or len(labels) != n:
        raise MalformedInput("labels must list one name per basis element")
    return _unique(labels, "basis")


def algebroid_from_dict(doc: dict) -> HopfAlgebroid:
    points = _unique(_need(doc, "base", list), "base point")
    n = _need(doc, "dim", int)
    labels = _labels_of(doc, n, "b")
    a0_doc = _need(doc, "a0_embedding", dict)
    if set(a0_doc) != set(points):
        raise MalformedInput("a0_embedding must give every base point")
    a0 = []
    for x in points:
        coeffs = a0_doc[x]
        if not isinstance(coeffs, list) or len(coeffs) != n:
            raise MalformedInput(f"a0_embedding of {x!r} needs {n} coefficients")
        a0.append({k: _scalar(c) for k, c in enumerate(coeffs) if _scalar(c)})
    mult = _triples(doc, "mult", (n, n, n))
    comult, counit = _structure(doc, n, points)
    antipode = None
    if "antipode" in doc:
        entries = {}
        for row in _rows(doc, "antipode", 3):
            i, j, c = row
            if _scalar(c):
                entries[(_index(i, n, "antipode"), _index(j, n, "antipode"))] = _scalar(c)
        antipode = SparseMatrix(n, n, entries)
    a = make_algebroid(points, labels, mult, a0, comult, counit, antipode)
    _blocks(a.coalgebra)
    return a


def _blocks(c) -> None:
    try:
        require_blocks(c)
    except BlockViolation as e:
        raise MalformedInput(str(e)) from e


def bimodule_to_dict(m: PrincipalBimodule) -> dict:
    return {
        "kind": "bimodule",
        "left": algebroid_to_dict(m.left_alg),
        "right": algebroid_to_dict(m.right_alg),
        "dim": m.dim,
        "labels": list(m.labels),
        "act_left": [[a, k, r, fmt(c)] for (a, k), v in sorted(m.act_left.items()) for r, c in sorted(v.items())],
        "act_right": [[k, b, r, fmt(c)] for (k, b), v in sorted(m.act_right.items()) for r, c in sorted(v.items())],
        "comult": _comult_to_dict(m.coalgebra.comult),
        "counit": _counit_to_dict(m.coalgebra.counit, m.left_alg.base.points),
    }


def bimodule_from_dict(doc: dict, base: Path | None = None) -> PrincipalBimodule:
    left = _sub(doc, "left", "algebroid", base)
    right = _sub(doc, "right", "algebroid", base)
    n = _need(doc, "dim", int)
    labels = _labels_of(doc, n, "m")
    act_left = _triples(doc, "act_left", (left.dim, n, n))
    act_right = _triples(doc, "act_right", (n, right.dim, n))
    comult, counit = _structure(doc, n, left.base.points)
    m = make_bimodule(left, right, labels, act_left, act_right, comult, counit)
    _blocks(m.coalgebra)
    return m


# -- documents -------------------------------------------------------------

def _sub(doc: dict, key: str, kind: str, base: Path | None):
    val = _need(doc, key)
    if isinstance(val, str):
        path = Path(val) if base is None else base / val
        val = _read_json(path)
    if not isinstance(val, dict) or val.get("kind", kind) != kind:
        raise MalformedInput(f"field {key!r} must be a {kind} document or a path to one")
    return from_dict(dict(val, kind=kind), base)


def to_dict(obj) -> dict:
    if isinstance(obj, FiniteGroupoid):
        return groupoid_to_dict(obj)
    if isinstance(obj, PrincipalBibundle):
        return bibundle_to_dict(obj)
    if isinstance(obj, HopfAlgebroid):
        return algebroid_to_dict(obj)
    if isinstance(obj, PrincipalBimodule):
        return bimodule_to_dict(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_dict(doc: Any, base: Path | None = None):
    if not isinstance(doc, dict):
        raise MalformedInput("document must be a JSON object")
    kind = doc.get("kind")
    try:
        if kind == "groupoid":
            return groupoid_from_dict(doc)
        if kind == "bibundle":
            return bibundle_from_dict(doc, base)
        if kind == "algebroid":
            return algebroid_from_dict(doc)
        if kind == "bimodule":
            return bimodule_from_dict(doc, base)
    except (TypeError, ValueError, KeyError) as e:
        if isinstance(e, MalformedInput):
            raise
        raise MalformedInput(f"{type(e).__name__}: {e}") from e
    raise MalformedInput(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def dumps(obj) -> str:
    return json.dumps(to_dict(obj), indent=2, sort_keys=True) + "\n"


def loads(text: str, base: Path | None = None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e}") from e
    return from_dict(doc, base)


def _read_json(path: Path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON in {path}: {e}") from e


def load(path) -> Any:
    path = Path(path)
    return from_dict(_read_json(path), path.parent)


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj))
