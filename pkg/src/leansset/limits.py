"""Finite limits and colimits, sub-objects, skeleta, coskeleta and classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .sset import (
    COSKELETAL,
    SKELETAL,
    CapError,
    Level,
    SimplicialMap,
    SimplicialSet,
    data_set,
)


# -- coskeletality ----------------------------------------------------------

def matching_count(X: SimplicialSet, k: int) -> int:
    """Number of compatible boundary tuples in degree k (the matching object)."""
    return sum(1 for _ in X.compatible_tuples(k))


def matching_bijective(X: SimplicialSet, k: int) -> bool:
    """Whether X_k -> (cosk_{k-1} X)_k is a bijection."""
    if len(X.face_index(k)) != X.size(k):
        return False
    return matching_count(X, k) == X.size(k)


def _least_degree(X: SimplicialSet, candidates: range, top: Callable[[int], int]) -> int | None:
    seen: dict[int, bool] = {}

    def ok(k: int) -> bool:
        if k not in seen:
            seen[k] = matching_bijective(X, k)
        return seen[k]

    for n in candidates:
        if all(ok(k) for k in range(n + 1, top(n) + 1)):
            return n
    return None


def coskeletal_degree(X: SimplicialSet) -> int | None:
    """Least n with X isomorphic to cosk_n X, or None.

    Coskeletal objects are searched below their cap, which is exact. Finite
    objects of dimension d are tested at degrees up to max(n, d) + 2.
    """
    memo = X._memo
    if "coskeletal_degree" in memo:
        return memo["coskeletal_degree"]
    if X.extension == COSKELETAL:
        c = X.cap
        hint = memo.get("coskeletal_hint")
        lo = range(0, c + 1) if hint is None else range(0, min(hint, c) + 1)
        res = _least_degree(X, lo, lambda n: c)
        if res is None:
            res = c
    else:
        d = max(X.skeletal_dim() or 0, 0)
        res = _least_degree(X, range(0, d + 2), lambda n: max(n, d) + 2)
    memo["coskeletal_degree"] = res
    return res


def finite_dimension(X: SimplicialSet) -> int | None:
    """Dimension when X has finitely many nondegenerate simplices (checked two degrees past the cap)."""
    d = X.skeletal_dim()
    if d is not None:
        return d
    if any(X.nondegenerate(m) for m in (X.cap + 1, X.cap + 2)):
        return None
    top = -1
    for m in range(X.cap + 1):
        if X.nondegenerate(m):
            top = m
    return top


@dataclass
class Classification:
    is_finite_complex: bool
    is_lean: bool
    coskeletal_degree: int | None
    nondegenerate_counts: list[int]
    cap: int
    extension: str

    def as_dict(self) -> dict:
        return {
            "isFiniteComplex": self.is_finite_complex,
            "isLean": self.is_lean,
            "coskeletalDegree": self.coskeletal_degree,
            "nondegenerateCounts": self.nondegenerate_counts,
            "cap": self.cap,
            "extension": self.extension,
        }


def classify(X: SimplicialSet) -> Classification:
    c = coskeletal_degree(X)
    return Classification(
        is_finite_complex=finite_dimension(X) is not None,
        is_lean=c is not None,
        coskeletal_degree=c,
        nondegenerate_counts=X.nondegenerate_counts(),
        cap=X.cap,
        extension=X.extension,
    )


# -- helpers ---------------------------------------------------------------

def _keyed_level(
    X: SimplicialSet,
    m: int,
    keys: list[Hashable],
    ident: Callable[[Hashable], str],
    face: Callable[[int, Hashable], Hashable],
    degen: Callable[[int, Hashable], Hashable],
) -> Level:
    lookup = {k: i for i, k in enumerate(keys)}
    faces: list[list[int]] = []
    degens: list[list[int]] = []
    if m > 0:
        prev = X.level(m - 1)
        pk = prev.key_index
        faces = [[pk[face(i, k)] for k in keys] for i in range(m + 1)]
        degens = [[lookup[degen(j, k)] for k in prev.keys] for j in range(m)]
    return Level([ident(k) for k in keys], faces, degens, keys=keys)


def _finite_policy(objs: Sequence[SimplicialSet]) -> int | None:
    """Sum of dimensions if every object is skeletal, else None."""
    if all(o.extension == SKELETAL for o in objs):
        return max(sum(max(o.skeletal_dim(), 0) for o in objs), 0)
    return None


def _coskeletal_cap(objs: Sequence[SimplicialSet], what: str) -> int:
    bounds = []
    for o in objs:
        b = o.coskeletal_bound()
        if b is None:
            raise CapError(f"{what}: an input is neither finite-with-finite-partner nor coskeletal")
        bounds.append(b)
    return max(bounds)


def _cached(X: SimplicialSet, tag: str, others: tuple, build: Callable[[], SimplicialSet]) -> SimplicialSet:
    table = X._memo.setdefault(tag, {})
    k = tuple(id(o) for o in others)
    hit = table.get(k)
    if hit is not None:
        return hit[1]
    out = build()
    table[k] = (others, out)
    return out


# -- products and pullbacks ---------------------------------------------------

def product(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    """Degreewise product; ``.legs`` holds the two projections."""
    return _cached(X, "product", (Y,), lambda: _product(X, Y))


def _product(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    dim = _finite_policy([X, Y])
    if dim is not None:
        ext, cap = SKELETAL, dim
    elif X.extension == COSKELETAL and Y.extension == COSKELETAL:
        ext, cap = COSKELETAL, max(X.cap, Y.cap)
    else:
        ext, cap = COSKELETAL, _coskeletal_cap([X, Y], "product")

    def build(m: int, P: SimplicialSet) -> Level:
        nx, ny = X.size(m), Y.size(m)
        keys = [(a, b) for a in range(nx) for b in range(ny)]
        xi, yi = X.ids(m), Y.ids(m)
        return _keyed_level(
            P,
            m,
            keys,
            lambda k: f"({xi[k[0]]},{yi[k[1]]})",
            lambda i, k: (X.d(m, i, k[0]), Y.d(m, i, k[1])),
            lambda j, k: (X.s(m - 1, j, k[0]), Y.s(m - 1, j, k[1])),
        )

    P = SimplicialSet(cap, ext, model=build, name=f"{X.name}x{Y.name}")
    P._memo["category_builder"] = lambda: _pair_category(P, X, Y)
    dx, dy = X.skeletal_dim(), Y.skeletal_dim()
    if dx is not None and dy is not None:
        P.hint(skeletal_dim=max(dx + dy, -1) if min(dx, dy) >= 0 else -1)
    P.legs = (
        SimplicialMap(P, X, model=lambda m: [k[0] for k in P.level(m).keys]),
        SimplicialMap(P, Y, model=lambda m: [k[1] for k in P.level(m).keys]),
    )
    return P


def _pair_category(P: SimplicialSet, X: SimplicialSet, Y: SimplicialSet):
    """Category structure on a product or fiber product of two nerves."""
    from .nerves import category_of, pullback_category

    CX, CY = category_of(X), category_of(Y)
    if CX is None or CY is None:
        return None
    lv0, lv1 = P.level(0), P.level(1)
    return pullback_category(list(lv0.keys), list(lv1.keys), CX, CY, (list(lv0.ids), list(lv1.ids)))


def product_map(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    S = product(f.source, g.source)
    T = product(f.target, g.target)
    return SimplicialMap(
        S, T, model=lambda m: [T.key_lookup(m, (f(m, a), g(m, b))) for a, b in S.level(m).keys]
    )


def pair(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """(f, g): Z -> X x Y."""
    T = product(f.target, g.target)
    return SimplicialMap(
        f.source, T, model=lambda m: [T.key_lookup(m, (a, b)) for a, b in zip(f.comp(m), g.comp(m))]
    )


def pullback(f: SimplicialMap, g: SimplicialMap) -> SimplicialSet:
    """Fiber product of f: B -> D and g: C -> D; ``.legs`` are the projections to B and C."""
    return _cached(f.source, "pullback", (f, g), lambda: _pullback(f, g))


def _pullback(f: SimplicialMap, g: SimplicialMap) -> SimplicialSet:
    B, C, D = f.source, g.source, f.target
    if g.target is not D:
        raise ValueError("pullback: maps have different targets")
    dim = _finite_policy([B, C])
    if dim is not None:
        ext, cap = SKELETAL, dim
    else:
        ext, cap = COSKELETAL, _coskeletal_cap([B, C, D], "pullback")

    def build(m: int, P: SimplicialSet) -> Level:
        by_val: dict[int, list[int]] = {}
        for c, v in enumerate(g.comp(m)):
            by_val.setdefault(v, []).append(c)
        keys = [(b, c) for b, v in enumerate(f.comp(m)) for c in by_val.get(v, ())]
        bi, ci = B.ids(m), C.ids(m)
        return _keyed_level(
            P,
            m,
            keys,
            lambda k: f"({bi[k[0]]},{ci[k[1]]})",
            lambda i, k: (B.d(m, i, k[0]), C.d(m, i, k[1])),
            lambda j, k: (B.s(m - 1, j, k[0]), C.s(m - 1, j, k[1])),
        )

    P = SimplicialSet(cap, ext, model=build, name="pullback")
    P._memo["category_builder"] = lambda: _pair_category(P, B, C)
    P.legs = (
        SimplicialMap(P, B, model=lambda m: [k[0] for k in P.level(m).keys]),
        SimplicialMap(P, C, model=lambda m: [k[1] for k in P.level(m).keys]),
    )
    return P


def pullback_pair(P: SimplicialSet, u: SimplicialMap, v: SimplicialMap) -> SimplicialMap:
    """The map Z -> P induced by legs u: Z -> B and v: Z -> C."""
    return SimplicialMap(u.source, P, model=lambda m: [P.key_lookup(m, (a, b)) for a, b in zip(u.comp(m), v.comp(m))])


# -- coproducts and pushouts ----------------------------------------------------

def coproduct(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    """Disjoint union with ids tagged ``a.``/``b.``; ``.legs`` are the inclusions."""
    return _cached(X, "coproduct", (Y,), lambda: _coproduct(X, Y))


def _coproduct(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    if X.extension == SKELETAL and Y.extension == SKELETAL:
        ext, cap = SKELETAL, max(X.cap, Y.cap)
    else:
        ext, cap = COSKELETAL, max(_coskeletal_cap([X, Y], "coproduct"), 1)
    parts = (X, Y)
    tags = ("a.", "b.")

    def build(m: int, P: SimplicialSet) -> Level:
        keys = [(s, a) for s in (0, 1) for a in range(parts[s].size(m))]
        return _keyed_level(
            P,
            m,
            keys,
            lambda k: tags[k[0]] + parts[k[0]].id(m, k[1]),
            lambda i, k: (k[0], parts[k[0]].d(m, i, k[1])),
            lambda j, k: (k[0], parts[k[0]].s(m - 1, j, k[1])),
        )

    P = SimplicialSet(cap, ext, model=build, name=f"{X.name}+{Y.name}")
    dx, dy = X.skeletal_dim(), Y.skeletal_dim()
    if dx is not None and dy is not None:
        P.hint(skeletal_dim=max(dx, dy))
    P.legs = (
        SimplicialMap(X, P, model=lambda m: [P.key_lookup(m, (0, a)) for a in range(X.size(m))]),
        SimplicialMap(Y, P, model=lambda m: [P.key_lookup(m, (1, a)) for a in range(Y.size(m))]),
    )
    return P


def copair(P: SimplicialSet, u: SimplicialMap, v: SimplicialMap) -> SimplicialMap:
    """[u, v]: X + Y -> Z for P = coproduct(X, Y)."""
    return SimplicialMap(P, u.target, model=lambda m: [(u if s == 0 else v)(m, a) for s, a in P.level(m).keys])


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def pushout(f: SimplicialMap, g: SimplicialMap) -> SimplicialSet:
    """Pushout of B <- A -> C, computed degreewise by union-find.

    Each class is named by its least tagged identifier (``l:`` for B, ``r:``
    for C). ``.legs`` are the cocone maps from B and C.
    """
    return _cached(f.source, "pushout", (f, g), lambda: _pushout(f, g))


def _pushout(f: SimplicialMap, g: SimplicialMap) -> SimplicialSet:
    A, B, C = f.source, f.target, g.target
    if g.source is not A:
        raise ValueError("pushout: maps have different sources")
    classes: dict[int, tuple[list[int], list[tuple[int, int]]]] = {}

    def classes_at(m: int) -> tuple[list[int], list[tuple[int, int]]]:
        if m not in classes:
            nb, nc = B.size(m), C.size(m)
            uf = _UnionFind(nb + nc)
            for a, (x, y) in enumerate(zip(f.comp(m), g.comp(m))):
                uf.union(x, nb + y)
            tagged = [f"l:{i}" for i in B.ids(m)] + [f"r:{i}" for i in C.ids(m)]
            best: dict[int, int] = {}
            for e in range(nb + nc):
                r = uf.find(e)
                if r not in best or tagged[e] < tagged[best[r]]:
                    best[r] = e
            reps = sorted(set(best.values()), key=lambda e: tagged[e])
            rep_pos = {e: k for k, e in enumerate(reps)}
            cls = [rep_pos[best[uf.find(e)]] for e in range(nb + nc)]
            keyed = [(0, e) if e < nb else (1, e - nb) for e in reps]
            classes[m] = (cls, keyed)
        return classes[m]

    def build(m: int, P: SimplicialSet) -> Level:
        cls, keyed = classes_at(m)
        nb = B.size(m)
        ids = [("l:" + B.id(m, a)) if s == 0 else ("r:" + C.id(m, a)) for s, a in keyed]
        faces, degens = [], []
        if m > 0:
            below, _ = classes_at(m - 1)
            nb1 = B.size(m - 1)
            for i in range(m + 1):
                faces.append([
                    below[B.d(m, i, a)] if s == 0 else below[nb1 + C.d(m, i, a)] for s, a in keyed
                ])
            _, kbelow = classes_at(m - 1)
            for j in range(m):
                degens.append([
                    cls[B.s(m - 1, j, a)] if s == 0 else cls[nb + C.s(m - 1, j, a)] for s, a in kbelow
                ])
        return Level(ids, faces, degens, keys=list(keyed))

    if B.extension == SKELETAL and C.extension == SKELETAL:
        dims = [B.skeletal_dim(), C.skeletal_dim()]
        P = SimplicialSet(max(max(dims), 0), SKELETAL, model=build, name="pushout")
    else:
        top = max(_coskeletal_cap([B, C], "pushout"), A.coskeletal_bound() or 0)
        P = SimplicialSet(top, COSKELETAL, model=build, name="pushout")
        # gluing can raise the coskeletal degree by one
        c = _least_degree(P, range(0, top + 2), lambda n: max(n, top) + 2)
        if c is None:
            raise CapError("pushout is not coskeletal within one degree of the input caps", required_cap=top + 3)
        P.cap = c
    P.legs = (
        SimplicialMap(B, P, model=lambda m: classes_at(m)[0][: B.size(m)]),
        SimplicialMap(C, P, model=lambda m: classes_at(m)[0][B.size(m):]),
    )
    return P


def pushout_map(P: SimplicialSet, u: SimplicialMap, v: SimplicialMap) -> SimplicialMap:
    """The map P -> Z induced by a cocone u: B -> Z, v: C -> Z."""
    def comp(m: int) -> list[int]:
        out = []
        for s, a in P.level(m).keys:
            out.append(u(m, a) if s == 0 else v(m, a))
        return out

    return SimplicialMap(P, u.target, model=comp)


# -- sub-objects ---------------------------------------------------------------

def subobject(
    Y: SimplicialSet,
    member: Callable[[int], Sequence[int]],
    extension: str,
    cap: int,
    name: str | None = None,
) -> SimplicialSet:
    """The sub-simplicial set with cells ``member(m)`` (ids inherited); ``.legs`` = (inclusion,)."""

    def build(m: int, S: SimplicialSet) -> Level:
        keys = sorted(member(m))
        return _keyed_level(
            S,
            m,
            keys,
            lambda y: Y.id(m, y),
            lambda i, y: Y.d(m, i, y),
            lambda j, y: Y.s(m - 1, j, y),
        )

    S = SimplicialSet(cap, extension, model=build, name=name)
    S.legs = (SimplicialMap(S, Y, model=lambda m: list(S.level(m).keys)),)
    return S


def image(f: SimplicialMap) -> SimplicialSet:
    """Image of f as a sub-object of its target."""
    X = f.source
    d = X.skeletal_dim()
    member = lambda m: set(f.comp(m))
    if X.extension == SKELETAL and d is not None:
        return subobject(f.target, member, SKELETAL, max(d, 0), name="image")
    top = _coskeletal_cap([X, f.target], "image")
    S = subobject(f.target, member, COSKELETAL, top, name="image")
    c = _least_degree(S, range(0, top + 1), lambda n: top + 2)
    if c is None:
        raise CapError("image is not coskeletal within two degrees of the input caps", required_cap=top + 2)
    S.cap = c
    return S


def corestrict(f: SimplicialMap, S: SimplicialSet) -> SimplicialMap:
    """f viewed as a map into the sub-object S of its target."""
    return SimplicialMap(f.source, S, model=lambda m: [S.key_lookup(m, v) for v in f.comp(m)])


# -- skeleta, coskeleta, truncation -------------------------------------------------

def skeleton(X: SimplicialSet, n: int) -> SimplicialSet:
    """Sub-object generated by simplices of degree <= n; ``.legs`` = (inclusion,)."""
    S = data_set(n, SKELETAL, X, name=f"sk{n}")
    S.legs = (SimplicialMap(S, X, [list(range(X.size(m))) for m in range(n + 1)]),)
    return S


def coskeleton(X: SimplicialSet, n: int) -> SimplicialSet:
    """cosk_n X; ``.legs`` = (unit X -> cosk_n X,)."""
    K = data_set(n, COSKELETAL, X, name=f"cosk{n}")
    K.legs = (SimplicialMap(X, K, [list(range(X.size(m))) for m in range(n + 1)]),)
    return K


def truncate(X: SimplicialSet, n: int) -> SimplicialSet:
    """Degrees <= n of X, extended by X's own policy."""
    return data_set(n, X.extension, X, name=f"tr{n}")


def is_terminal(X: SimplicialSet) -> bool:
    top = X.coskeletal_bound()
    if top is None:
        return False
    return all(X.size(m) == 1 for m in range(top + 1))


def terminal_map(X: SimplicialSet, point: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, point, model=lambda m: [0] * X.size(m))
