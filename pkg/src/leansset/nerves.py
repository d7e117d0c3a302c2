"""Recognising nerves of finite categories and reading functors off simplicial maps.

When a simplicial set is (isomorphic to) the nerve of a finite category,
several questions reduce to finite category theory: mapping spaces become
nerves of functor categories, and fibration or equivalence tests become
statements about functors. Objects are indexed by vertex indices and arrows
by edge indices of the simplicial set.
"""

from __future__ import annotations

from .category import FiniteCategory, Functor
from .sset import SimplicialMap, SimplicialSet

MAX_DERIVED_EDGES = 4000


def category_of(X: SimplicialSet) -> FiniteCategory | None:
    """The category whose nerve X is, or None if X is not recognised as a nerve."""
    if X.category is not None:
        return X.category
    memo = X._memo
    if "category" in memo:
        return memo["category"]
    build = memo.get("category_builder")
    cat = build() if build is not None else _derive(X)
    memo["category"] = cat
    return cat


def _derive(X: SimplicialSet) -> FiniteCategory | None:
    if X.size(1) > MAX_DERIVED_EDGES:
        return None
    c = X.coskeletal_bound()
    if c is None or c > 2:
        return None
    src = [X.d(1, 1, e) for e in range(X.size(1))]
    tgt = [X.d(1, 0, e) for e in range(X.size(1))]
    ident = [X.s(0, 0, v) for v in range(X.size(0))]
    comp: dict[tuple[int, int], int] = {}
    for z in range(X.size(2)):
        f, g, h = X.d(2, 2, z), X.d(2, 0, z), X.d(2, 1, z)
        if (g, f) in comp:
            return None
        comp[(g, f)] = h
    cat = FiniteCategory(list(X.ids(0)), list(X.ids(1)), src, tgt, ident, comp, name=X.name or "")
    if cat.violations():
        return None
    return cat


def functor_of(f: SimplicialMap) -> Functor | None:
    C, D = category_of(f.source), category_of(f.target)
    if C is None or D is None:
        return None
    return Functor(C, D, tuple(f.comp(0)), tuple(f.comp(1)))


def is_groupoid_nerve(X: SimplicialSet) -> bool:
    C = category_of(X)
    return C is not None and _groupoid(X, C)


def _groupoid(X: SimplicialSet, C: FiniteCategory) -> bool:
    if "groupoid" not in X._memo:
        X._memo["groupoid"] = C.is_groupoid()
    return X._memo["groupoid"]


def is_isofibration(F: Functor) -> bool:
    """Every isomorphism out of F(x) lifts to an isomorphism out of x."""
    C, D = F.source, F.target
    for x in range(C.n_objects):
        lifted = {F.on_arrows[a] for a in C.out_arrows(x) if C.inverse(a) is not None}
        for b in D.out_arrows(F.on_objects[x]):
            if b not in lifted and D.inverse(b) is not None:
                return False
    return True


def is_surjective_on_objects(F: Functor) -> bool:
    return set(F.on_objects) == set(range(F.target.n_objects))


def pullback_category(
    P_objects: list[tuple[int, int]],
    P_arrows: list[tuple[int, int]],
    B: FiniteCategory,
    C: FiniteCategory,
    names: tuple[list[str], list[str]],
) -> FiniteCategory:
    """Category on given pairs of objects/arrows, composed componentwise."""
    oidx = {o: k for k, o in enumerate(P_objects)}
    aidx = {a: k for k, a in enumerate(P_arrows)}
    src = [oidx[(B.src[a], C.src[b])] for a, b in P_arrows]
    tgt = [oidx[(B.tgt[a], C.tgt[b])] for a, b in P_arrows]
    ident = [aidx[(B.ident[x], C.ident[y])] for x, y in P_objects]
    out: list[list[int]] = [[] for _ in P_objects]
    for k, s in enumerate(src):
        out[s].append(k)
    comp = {}
    for k1, (a1, b1) in enumerate(P_arrows):
        for k2 in out[tgt[k1]]:
            a2, b2 = P_arrows[k2]
            comp[(k2, k1)] = aidx[(B.comp[(a2, a1)], C.comp[(b2, b1)])]
    return FiniteCategory(names[0], names[1], src, tgt, ident, comp)
