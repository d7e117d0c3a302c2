"""JSON file formats: SSX (simplicial sets and maps), PRX (pro-objects and pro-maps),
BSX (bisimplicial sets and maps) and FTP (fibration-test presentations).

Serialization is canonical: keys sorted, no insignificant whitespace, cells of
every degree listed in lexicographic order of their identifiers. Parsing
validates every invariant and raises :class:`FormatError` with the JSON path of
the offending entry.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .hom import hom_degree
from .lifting import Generator
from .pro import IndexError_, IndexPoset, ProMap, ProObject
from .segal import BisimplicialMap, BisimplicialSet
from .sset import COSKELETAL, EXTENSIONS, CapError, Level, SimplicialIdentityError, SimplicialMap, SimplicialSet, compose
from .verifier import FLAVORS, FibTestPresentation, default_generators, inherited_presentation


class FormatError(ValueError):
    """Malformed input; ``path`` locates the problem inside the document."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", f"line {e.lineno} column {e.colno}") from None


# -- schema helpers ------------------------------------------------------------------------------

def _field(obj: Any, key: str, kind: type | tuple, path: str) -> Any:
    if not isinstance(obj, dict):
        raise FormatError("expected an object", path)
    if key not in obj:
        raise FormatError(f"missing field {key!r}", path)
    val = obj[key]
    if not isinstance(val, kind) or (kind is int and isinstance(val, bool)):
        raise FormatError(f"field {key!r} has the wrong type", f"{path}.{key}")
    return val


def _list(val: Any, length: int | None, path: str) -> list:
    if not isinstance(val, list):
        raise FormatError("expected a list", path)
    if length is not None and len(val) != length:
        raise FormatError(f"expected {length} entries, found {len(val)}", path)
    return val


def _lookup(index: dict[str, int], ident: Any, path: str) -> int:
    if not isinstance(ident, str) or ident not in index:
        raise FormatError(f"unknown cell {ident!r}", path)
    return index[ident]


def _order(X: SimplicialSet, m: int) -> list[int]:
    return sorted(range(X.size(m)), key=lambda x: X.id(m, x))


def _hom_degree(S: SimplicialSet, T: SimplicialSet) -> int:
    try:
        return hom_degree(S, T)
    except CapError:
        return max(S.cap, T.cap)


def _det(f: SimplicialMap) -> int:
    return _hom_degree(f.source, f.target)


# -- SSX -----------------------------------------------------------------------------------------

def ssx_object(X: SimplicialSet) -> dict:
    top = X.cap
    orders = [_order(X, m) for m in range(top + 1)]
    obj = {
        "cap": X.cap,
        "extension": X.extension,
        "cells": [[X.id(m, x) for x in orders[m]] for m in range(top + 1)],
        "faces": [[[X.id(m - 1, X.d(m, i, x)) for x in orders[m]] for i in range(m + 1)] if m else [] for m in range(top + 1)],
        "degeneracies": [
            [[X.id(m + 1, X.s(m, j, x)) for x in orders[m]] for j in range(m + 1)] if m < top else [] for m in range(top + 1)
        ],
    }
    if X.name:
        obj["name"] = X.name
    return obj


def ssx_from(obj: Any, path: str = "$") -> SimplicialSet:
    cap = _field(obj, "cap", int, path)
    if cap < 0:
        raise FormatError("cap must be non-negative", f"{path}.cap")
    ext = _field(obj, "extension", str, path)
    if ext not in EXTENSIONS:
        raise FormatError(f"unknown extension {ext!r}", f"{path}.extension")
    cells = _list(_field(obj, "cells", list, path), None, f"{path}.cells")
    if len(cells) < cap + 1:
        raise FormatError(f"cells stop at degree {len(cells) - 1} but the cap is {cap}", f"{path}.cells")
    top = len(cells) - 1
    faces = _list(_field(obj, "faces", list, path), top + 1, f"{path}.faces")
    degens = _list(_field(obj, "degeneracies", list, path), top + 1, f"{path}.degeneracies")
    index: list[dict[str, int]] = []
    for m, ids in enumerate(cells):
        p = f"{path}.cells[{m}]"
        _list(ids, None, p)
        seen: dict[str, int] = {}
        for k, c in enumerate(ids):
            if not isinstance(c, str):
                raise FormatError("identifiers must be strings", f"{p}[{k}]")
            if c in seen:
                raise FormatError(f"duplicate identifier {c!r}", f"{p}[{k}]")
            seen[c] = k
        index.append(seen)
    levels = []
    for m in range(top + 1):
        n = len(cells[m])
        fm = []
        if m:
            _list(faces[m], m + 1, f"{path}.faces[{m}]")
            for i in range(m + 1):
                p = f"{path}.faces[{m}][{i}]"
                fm.append([_lookup(index[m - 1], c, f"{p}[{x}]") for x, c in enumerate(_list(faces[m][i], n, p))])
        elif faces[0]:
            raise FormatError("vertices have no faces", f"{path}.faces[0]")
        dm = []
        if m:
            prev = len(cells[m - 1])
            _list(degens[m - 1], m, f"{path}.degeneracies[{m - 1}]")
            for j in range(m):
                p = f"{path}.degeneracies[{m - 1}][{j}]"
                dm.append([_lookup(index[m], c, f"{p}[{x}]") for x, c in enumerate(_list(degens[m - 1][j], prev, p))])
        levels.append(Level(list(cells[m]), fm, dm))
    if degens[top]:
        raise FormatError("degeneracies out of the top stored degree are not stored", f"{path}.degeneracies[{top}]")
    name = obj.get("name")
    X = SimplicialSet(cap, ext, levels=levels, name=name if isinstance(name, str) else None)
    bad = X.identity_violations(top)
    if bad:
        raise SimplicialIdentityError(f"{path}: " + "; ".join(bad[:5]))
    if top > cap:
        ref = SimplicialSet(cap, ext, levels=levels[: cap + 1])
        for m in range(cap + 1, top + 1):
            if ref.size(m) != X.size(m):
                raise CapError(
                    f"{path}: degree {m} stores {X.size(m)} cells but the {ext} extension from degree {cap} gives {ref.size(m)}",
                    required_cap=m,
                )
    return X


def _components(f: SimplicialMap, top: int) -> list[list[str]]:
    S, T = f.source, f.target
    return [[T.id(m, f(m, x)) for x in _order(S, m)] for m in range(top + 1)]


def _map_from(S: SimplicialSet, T: SimplicialSet, comps: Any, path: str) -> SimplicialMap:
    comps = _list(comps, None, path)
    need = _hom_degree(S, T)
    if len(comps) < need + 1:
        raise CapError(f"{path}: components stop at degree {len(comps) - 1}; the map is determined only at degree {need}", need)
    data = []
    for m, row in enumerate(comps):
        p = f"{path}[{m}]"
        _list(row, S.size(m), p)
        index = T.level(m).index
        data.append([_lookup(index, c, f"{p}[{x}]") for x, c in enumerate(row)])
    f = SimplicialMap(S, T, data)
    bad = f.violations(len(comps) - 1)
    if bad:
        raise FormatError("not a simplicial map: " + "; ".join(bad[:5]), path)
    return f


def ssx_map_object(f: SimplicialMap) -> dict:
    return {"source": ssx_object(f.source), "target": ssx_object(f.target), "components": _components(f, _det(f))}


def ssx_map_from(obj: Any, path: str = "$", source: SimplicialSet | None = None, target: SimplicialSet | None = None) -> SimplicialMap:
    """Parse a map; when ``source``/``target`` are given the embedded ends must match them and are replaced by them."""
    S = ssx_from(_field(obj, "source", dict, path), f"{path}.source")
    T = ssx_from(_field(obj, "target", dict, path), f"{path}.target")
    if source is not None:
        if ssx_object(S) != ssx_object(source):
            raise FormatError("embedded source differs from the declared one", f"{path}.source")
        S = source
    if target is not None:
        if ssx_object(T) != ssx_object(target):
            raise FormatError("embedded target differs from the declared one", f"{path}.target")
        T = target
    return _map_from(S, T, _field(obj, "components", list, path), f"{path}.components")


def is_map_document(obj: Any) -> bool:
    return isinstance(obj, dict) and "components" in obj


def serialize_ssx(X: SimplicialSet | SimplicialMap) -> str:
    return dumps(ssx_map_object(X) if isinstance(X, SimplicialMap) else ssx_object(X))


def parse_ssx(text: str) -> SimplicialSet | SimplicialMap:
    obj = loads(text)
    return ssx_map_from(obj) if is_map_document(obj) else ssx_from(obj)


# -- PRX -----------------------------------------------------------------------------------------

def prx_object(C: ProObject) -> dict:
    P = C.index
    return {
        "index": {"elements": list(P.elements), "order": [[a, b] for a, b in P.pairs()], "flavor": P.flavor},
        "levels": {e: ssx_object(C.levels[e]) for e in P.elements},
        "bonds": {f"{a}<={b}": ssx_map_object(C.bond(a, b)) for a, b in P.pairs()},
    }


def prx_from(obj: Any, path: str = "$") -> ProObject:
    idx = _field(obj, "index", dict, path)
    els = _list(_field(idx, "elements", list, f"{path}.index"), None, f"{path}.index.elements")
    if any(not isinstance(e, str) for e in els) or len(set(els)) != len(els):
        raise FormatError("elements must be distinct strings", f"{path}.index.elements")
    order = _list(_field(idx, "order", list, f"{path}.index"), None, f"{path}.index.order")
    rel = []
    for k, pr in enumerate(order):
        if not (isinstance(pr, list) and len(pr) == 2 and all(isinstance(e, str) for e in pr)):
            raise FormatError("expected a pair [a, b] meaning a <= b", f"{path}.index.order[{k}]")
        rel.append((pr[0], pr[1]))
    flavor = idx.get("flavor", "finitePoset")
    try:
        P = IndexPoset.build(els, rel, flavor)
    except IndexError_ as e:
        raise FormatError(f"{e} (witness {list(e.witness)})", f"{path}.index") from None
    lv = _field(obj, "levels", dict, path)
    if set(lv) != set(els):
        raise FormatError(f"levels must be given exactly for {sorted(els)}", f"{path}.levels")
    levels = {e: ssx_from(lv[e], f"{path}.levels.{e}") for e in els}
    bd = _field(obj, "bonds", dict, path)
    wanted = {f"{a}<={b}": (a, b) for a, b in P.pairs()}
    if set(bd) != set(wanted):
        extra = sorted(set(bd) ^ set(wanted))
        raise FormatError(f"bonds must be given for every strict relation; mismatch on {extra}", f"{path}.bonds")
    bonds = {
        (a, b): ssx_map_from(bd[key], f"{path}.bonds.{key}", levels[a], levels[b]) for key, (a, b) in wanted.items()
    }
    C = ProObject(P, levels, bonds)
    bad = C.violations()
    if bad:
        raise FormatError("; ".join(bad[:5]), f"{path}.bonds")
    return C


def pro_map_object(f: ProMap) -> dict:
    return {
        "source": prx_object(f.source),
        "target": prx_object(f.target),
        "germs": {j: _components(g, _det(g)) for j, g in sorted(f.germs.items())},
    }


def pro_map_from(obj: Any, path: str = "$") -> ProMap:
    C = prx_from(_field(obj, "source", dict, path), f"{path}.source")
    D = prx_from(_field(obj, "target", dict, path), f"{path}.target")
    gm = _field(obj, "germs", dict, path)
    if set(gm) != set(D.index.elements):
        raise FormatError(f"germs must be given exactly for {sorted(D.index.elements)}", f"{path}.germs")
    S = C.levels[C.least]
    germs = {j: _map_from(S, D.levels[j], gm[j], f"{path}.germs.{j}") for j in D.index.elements}
    for a, b in D.index.pairs():
        via = compose(D.bond(a, b), germs[a])
        if not via.equals(germs[b], max(_det(via), _det(germs[b]))):
            raise FormatError(f"germs are not compatible along the bond {a}<={b}", f"{path}.germs")
    return ProMap(C, D, germs)


def serialize_prx(x: ProObject | ProMap) -> str:
    return dumps(pro_map_object(x) if isinstance(x, ProMap) else prx_object(x))


def parse_prx(text: str) -> ProObject | ProMap:
    obj = loads(text)
    return pro_map_from(obj) if isinstance(obj, dict) and "germs" in obj else prx_from(obj)


# -- BSX -----------------------------------------------------------------------------------------

def bsx_object(B: BisimplicialSet) -> dict:
    T, N = B.caps
    R = [B.row(t) for t in range(T + 1)]
    orders = [[_order(R[t], n) for n in range(N + 1)] for t in range(T + 1)]

    def grid(entry):
        return [[entry(t, n, orders[t][n]) for n in range(N + 1)] for t in range(T + 1)]

    obj = {
        "caps": [T, N],
        "cells": grid(lambda t, n, o: [R[t].id(n, x) for x in o]),
        "innerFaces": grid(
            lambda t, n, o: [[R[t].id(n - 1, R[t].d(n, i, x)) for x in o] for i in range(n + 1)] if n else []
        ),
        "innerDegeneracies": grid(
            lambda t, n, o: [[R[t].id(n + 1, R[t].s(n, j, x)) for x in o] for j in range(n + 1)] if n < N else []
        ),
        "outerFaces": grid(
            lambda t, n, o: [[R[t - 1].id(n, B.outer_face(t, i)(n, x)) for x in o] for i in range(t + 1)] if t else []
        ),
        "outerDegeneracies": grid(
            lambda t, n, o: [[R[t + 1].id(n, B.outer_degen(t, j)(n, x)) for x in o] for j in range(t + 1)] if t < T else []
        ),
    }
    if B.name:
        obj["name"] = B.name
    return obj


def _grid(obj: Any, key: str, T: int, N: int, path: str) -> list:
    g = _list(_field(obj, key, list, path), T + 1, f"{path}.{key}")
    for t in range(T + 1):
        _list(g[t], N + 1, f"{path}.{key}[{t}]")
    return g


def bsx_from(obj: Any, path: str = "$") -> BisimplicialSet:
    caps = _list(_field(obj, "caps", list, path), 2, f"{path}.caps")
    if not all(isinstance(c, int) and not isinstance(c, bool) and c >= 0 for c in caps):
        raise FormatError("caps must be non-negative integers", f"{path}.caps")
    T, N = caps
    cells = _grid(obj, "cells", T, N, path)
    grids = {k: _grid(obj, k, T, N, path) for k in ("innerFaces", "innerDegeneracies", "outerFaces", "outerDegeneracies")}
    index = [[{} for _ in range(N + 1)] for _ in range(T + 1)]
    for t in range(T + 1):
        for n in range(N + 1):
            p = f"{path}.cells[{t}][{n}]"
            for k, c in enumerate(_list(cells[t][n], None, p)):
                if not isinstance(c, str) or c in index[t][n]:
                    raise FormatError(f"bad or duplicate identifier {c!r}", f"{p}[{k}]")
                index[t][n][c] = k

    def table(key: str, t: int, n: int, count: int, to: tuple[int, int], src: tuple[int, int]) -> list[list[int]]:
        p = f"{path}.{key}[{t}][{n}]"
        rows = _list(grids[key][t][n], count, p)
        size = len(cells[src[0]][src[1]])
        return [
            [_lookup(index[to[0]][to[1]], c, f"{p}[{i}][{x}]") for x, c in enumerate(_list(rows[i], size, f"{p}[{i}]"))]
            for i in range(count)
        ]

    # columns n <= N from the data, extended coskeletally in the outer direction
    cols = []
    for n in range(N + 1):
        levels = []
        for t in range(T + 1):
            fs = table("outerFaces", t, n, t + 1, (t - 1, n), (t, n)) if t else []
            ds = table("outerDegeneracies", t - 1, n, t, (t, n), (t - 1, n)) if t else []
            levels.append(Level(list(cells[t][n]), fs, ds))
        if grids["outerDegeneracies"][T][n]:
            raise FormatError("degeneracies out of the top outer degree are not stored", f"{path}.outerDegeneracies[{T}][{n}]")
        cols.append(SimplicialSet(T, COSKELETAL, levels=levels, name=f"column {n}"))
    inner_f = {
        (n, i): SimplicialMap(cols[n], cols[n - 1], [table("innerFaces", t, n, n + 1, (t, n - 1), (t, n))[i] for t in range(T + 1)])
        for n in range(1, N + 1)
        for i in range(n + 1)
    }
    inner_s = {
        (n, j): SimplicialMap(cols[n], cols[n + 1], [table("innerDegeneracies", t, n, n + 1, (t, n + 1), (t, n))[j] for t in range(T + 1)])
        for n in range(N)
        for j in range(n + 1)
    }
    for t in range(T + 1):
        if grids["innerDegeneracies"][t][N]:
            raise FormatError("degeneracies out of the top inner degree are not stored", f"{path}.innerDegeneracies[{t}][{N}]")
    for (n, i), g in list(inner_f.items()) + list(inner_s.items()):
        bad = g.violations(T + 1)
        if bad:
            raise FormatError(f"inner operator at degree {n} does not commute with the outer ones: {bad[0]}", path)

    def row(t: int) -> SimplicialSet:
        levels = []
        for n in range(N + 1):
            fs = [inner_f[(n, i)].comp(t) for i in range(n + 1)] if n else []
            ds = [inner_s[(n - 1, j)].comp(t) for j in range(n)] if n else []
            levels.append(Level(list(cols[n].ids(t)), [list(f) for f in fs], [list(d) for d in ds]))
        return SimplicialSet(N, COSKELETAL, levels=levels, name=f"row {t}")

    def face(t: int, i: int) -> SimplicialMap:
        return SimplicialMap(B.row(t), B.row(t - 1), [[cols[n].d(t, i, x) for x in range(cols[n].size(t))] for n in range(N + 1)])

    def degen(t: int, j: int) -> SimplicialMap:
        return SimplicialMap(B.row(t), B.row(t + 1), [[cols[n].s(t, j, x) for x in range(cols[n].size(t))] for n in range(N + 1)])

    name = obj.get("name")
    B = BisimplicialSet((T, N), row, face, degen, name=name if isinstance(name, str) else None)
    bad = B.violations(T, N)
    if bad:
        raise SimplicialIdentityError(f"{path}: " + "; ".join(bad[:5]))
    return B


def bsx_map_object(f: BisimplicialMap) -> dict:
    X, Y = f.source, f.target
    T, N = max(X.caps[0], Y.caps[0]), max(X.caps[1], Y.caps[1])
    comps = [
        [[Y.row(t).id(n, f.row(t)(n, x)) for x in _order(X.row(t), n)] for n in range(N + 1)] for t in range(T + 1)
    ]
    return {"source": bsx_object(X), "target": bsx_object(Y), "components": comps}


def bsx_map_from(obj: Any, path: str = "$") -> BisimplicialMap:
    X = bsx_from(_field(obj, "source", dict, path), f"{path}.source")
    Y = bsx_from(_field(obj, "target", dict, path), f"{path}.target")
    T, N = max(X.caps[0], Y.caps[0]), max(X.caps[1], Y.caps[1])
    comps = _grid(obj, "components", T, N, path)
    data = [[[] for _ in range(N + 1)] for _ in range(T + 1)]
    for t in range(T + 1):
        for n in range(N + 1):
            p = f"{path}.components[{t}][{n}]"
            index = Y.row(t).level(n).index
            data[t][n] = [_lookup(index, c, f"{p}[{x}]") for x, c in enumerate(_list(comps[t][n], X.size(t, n), p))]
    cols = {n: SimplicialMap(X.column(n), Y.column(n), [data[t][n] for t in range(T + 1)]) for n in range(N + 1)}
    f = BisimplicialMap(
        X, Y, lambda t: SimplicialMap(X.row(t), Y.row(t), [cols[n].comp(t) for n in range(N + 1)])
    )
    bad = f.violations(T, N)
    if bad:
        raise FormatError("not a bisimplicial map: " + "; ".join(bad[:5]), f"{path}.components")
    return f


def serialize_bsx(x: BisimplicialSet | BisimplicialMap) -> str:
    return dumps(bsx_map_object(x) if isinstance(x, BisimplicialMap) else bsx_object(x))


def parse_bsx(text: str) -> BisimplicialSet | BisimplicialMap:
    obj = loads(text)
    return bsx_map_from(obj) if is_map_document(obj) else bsx_from(obj)


# -- FTP -----------------------------------------------------------------------------------------

def _names(objs: list[SimplicialSet]) -> dict[int, str]:
    out: dict[int, str] = {}
    used: set[str] = set()
    for k, X in enumerate(objs):
        base = X.name or f"object{k}"
        name, n = base, 1
        while name in used:
            n += 1
            name = f"{base}#{n}"
        used.add(name)
        out[id(X)] = name
    return out


def ftp_object(P: FibTestPresentation, cap: int | None = None) -> dict:
    names = _names(P.ambient + [t for t in P.tests if all(t is not a for a in P.ambient)])
    objs = P.ambient + [t for t in P.tests if id(t) not in {id(a) for a in P.ambient}]
    dims = [int(g.name[len("dDelta"):]) for g in P.generators if g.name.startswith("dDelta")]
    gen_cap = cap if cap is not None else max(dims, default=0)

    def arrow(f: SimplicialMap) -> dict:
        return {"source": names[id(f.source)], "target": names[id(f.target)], "components": _components(f, _det(f))}

    obj = {
        "flavor": P.flavor,
        "inherited": P.inherited,
        "generatorCap": gen_cap,
        "objects": {names[id(X)]: ssx_object(X) for X in objs},
        "tests": [names[id(t)] for t in P.tests],
        "ambient": [names[id(a)] for a in P.ambient],
    }
    obj["fibrations"] = [arrow(f) for f in P.fibrations]
    obj["trivialFibrations"] = [arrow(f) for f in P.trivial_fibrations]
    return obj


def ftp_from(obj: Any, path: str = "$", base: Path | None = None) -> FibTestPresentation:
    flavor = _field(obj, "flavor", str, path)
    if flavor not in FLAVORS:
        raise FormatError(f"unknown flavor {flavor!r}", f"{path}.flavor")
    cap = obj.get("generatorCap", 3)
    if not isinstance(cap, int) or cap < 0:
        raise FormatError("generatorCap must be a non-negative integer", f"{path}.generatorCap")
    raw = _field(obj, "objects", dict, path)
    objects: dict[str, SimplicialSet] = {}
    for name, val in raw.items():
        p = f"{path}.objects.{name}"
        if isinstance(val, str):
            ref = (base or Path.cwd()) / val
            try:
                text = ref.read_text(encoding="utf-8")
            except OSError as e:
                raise FormatError(f"cannot read {val!r}: {e.strerror}", p) from None
            val = loads(text)
        X = ssx_from(val, p)
        X.name = X.name or name
        objects[name] = X

    def pick(key: str) -> list[SimplicialSet]:
        out = []
        for k, n in enumerate(_list(_field(obj, key, list, path), None, f"{path}.{key}")):
            if n not in objects:
                raise FormatError(f"unknown object {n!r}", f"{path}.{key}[{k}]")
            out.append(objects[n])
        return out

    tests = pick("tests")
    ambient = pick("ambient") if "ambient" in obj else list(tests)
    inherited = obj.get("inherited", False)
    if not isinstance(inherited, bool):
        raise FormatError("inherited must be a boolean", f"{path}.inherited")
    # an inherited presentation without listed arrows is derived from the model structure
    if inherited and "fibrations" not in obj:
        return inherited_presentation(tests, ambient, flavor, cap)

    def arrows(key: str) -> list[SimplicialMap]:
        out = []
        for k, a in enumerate(_list(obj.get(key, []), None, f"{path}.{key}")):
            p = f"{path}.{key}[{k}]"
            s, t = _field(a, "source", str, p), _field(a, "target", str, p)
            if s not in objects or t not in objects:
                raise FormatError("arrow names an unknown object", p)
            out.append(_map_from(objects[s], objects[t], _field(a, "components", list, p), f"{p}.components"))
        return out

    fibs = arrows("fibrations")
    trivs = arrows("trivialFibrations")
    gens: list[Generator] = default_generators(flavor, cap)
    P = FibTestPresentation(ambient, tests, fibs, trivs, gens, flavor, inherited)
    bad = P.violations()
    if bad:
        raise FormatError("; ".join(bad[:5]), path)
    return P


def serialize_ftp(P: FibTestPresentation, cap: int | None = None) -> str:
    return dumps(ftp_object(P, cap))


def parse_ftp(text: str, base: Path | None = None) -> FibTestPresentation:
    return ftp_from(loads(text), base=base)


def read_any(path: str | Path) -> Any:
    """Parse a file by extension (.ssx, .prx, .bsx, .ftp)."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read file: {e.strerror}", str(p)) from None
    except UnicodeDecodeError:
        raise FormatError("file is not UTF-8", str(p)) from None
    ext = p.suffix.lower()
    if ext == ".prx":
        return parse_prx(text)
    if ext == ".bsx":
        return parse_bsx(text)
    if ext == ".ftp":
        return parse_ftp(text, base=p.parent)
    return parse_ssx(text)


def serialize(x: Any) -> str:
    if isinstance(x, (SimplicialSet, SimplicialMap)):
        return serialize_ssx(x)
    if isinstance(x, (ProObject, ProMap)):
        return serialize_prx(x)
    if isinstance(x, (BisimplicialSet, BisimplicialMap)):
        return serialize_bsx(x)
    if isinstance(x, FibTestPresentation):
        return serialize_ftp(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")
