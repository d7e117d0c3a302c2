"""Mapping spaces, pushout-products, pullback-powers and the lifting solver.

Mapping spaces Map(X, Y) have n-simplices the maps Delta^n x X -> Y. When Y
is recognised as the nerve of a finite category D, Map(X, Y) is built as the
nerve of the functor category Fun(tau X, D) from its objects (maps X -> Y)
and arrows (maps Delta^1 x X -> Y); this is the same simplicial set, and it
only needs the first two degrees to be enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from . import simplex as sx
from .builders import boundary, delta, horn, point, rkan_two, simplex_map, walking_h, inclusion
from .category import FiniteCategory
from .hom import Budget, enumerate_maps, hom_degree, hom_set
from .limits import product, product_map, pullback, pullback_pair, pushout, pushout_map, terminal_map
from .nerves import category_of, functor_of, is_isofibration, is_surjective_on_objects, _groupoid
from .sset import (
    COSKELETAL,
    CapError,
    Level,
    SimplicialMap,
    SimplicialSet,
    compose,
    identity_map,
)


class PreconditionError(ValueError):
    """An operation was called on inputs outside its domain."""


class EngineDefect(RuntimeError):
    """Two independent decision procedures disagreed."""


# -- mapping spaces -------------------------------------------------------------

@dataclass
class MappingData:
    exponent: SimplicialSet
    base: SimplicialSet
    cells: dict[int, list[SimplicialMap]]
    keydeg: dict[int, int]
    index: dict[int, dict[tuple, int]]
    fast: bool

    @property
    def top(self) -> int:
        return max(self.cells)


def _key(h: SimplicialMap, K: int) -> tuple:
    return tuple(tuple(h.comp(m)) for m in range(K + 1))


def _pulled_key(h: SimplicialMap, w: SimplicialMap, K: int) -> tuple:
    """Key of h o w, read through degree K."""
    return tuple(tuple(h.comp(m)[v] for v in w.comp(m)) for m in range(K + 1))


def _pushed_key(p: SimplicialMap, h: SimplicialMap, K: int) -> tuple:
    """Key of p o h, read through degree K."""
    return tuple(tuple(p.comp(m)[v] for v in h.comp(m)) for m in range(K + 1))


def _cell_id(P: SimplicialSet, Y: SimplicialSet, h: SimplicialMap, K: int) -> str:
    parts = []
    for m in range(K + 1):
        comp = h.comp(m)
        parts.extend(Y.id(m, comp[x]) for x in P.nondegenerate(m))
    return "<" + ",".join(parts) + ">"


def _theta_map(theta: tuple[int, ...], n: int, X: SimplicialSet) -> SimplicialMap:
    """theta x id: Delta^k x X -> Delta^n x X for theta: [k] -> [n]."""
    k = len(theta) - 1
    return product_map(simplex_map(theta, delta(k), delta(n)), identity_map(X))


def mapping_space(X: SimplicialSet, Y: SimplicialSet, budget: Budget | None = None, generic: bool = False) -> SimplicialSet:
    """Map(X, Y), coskeletal; ``.mapping`` carries the cells as maps Delta^n x X -> Y."""
    table = X._memo.setdefault("mapping_space", {})
    k = (id(Y), generic)
    if k in table:
        return table[k][1]
    if not generic and category_of(Y) is not None:
        M = _nerve_mapping_space(X, Y, budget)
    else:
        M = _generic_mapping_space(X, Y, budget)
    table[k] = (Y, M)
    return M


def _generic_mapping_space(X: SimplicialSet, Y: SimplicialSet, budget: Budget | None) -> SimplicialSet:
    c = Y.coskeletal_bound()
    if c is None:
        raise CapError("mapping space needs a coskeletal target")
    cells, keydeg, index, levels = {}, {}, {}, []
    for n in range(c + 1):
        P = product(delta(n), X)
        K = hom_degree(P, Y)
        maps = hom_set(P, Y, budget=budget)
        keys = [_key(h, K) for h in maps]
        cells[n], keydeg[n] = maps, K
        index[n] = {kk: i for i, kk in enumerate(keys)}
        faces, degens = [], []
        if n > 0:
            Kp = keydeg[n - 1]
            for i in range(n + 1):
                w = _theta_map(sx.coface(n, i), n, X)
                faces.append([index[n - 1][_pulled_key(h, w, Kp)] for h in maps])
            for j in range(n):
                w = _theta_map(sx.codegeneracy(n - 1, j), n - 1, X)
                degens.append([index[n][_pulled_key(h, w, K)] for h in cells[n - 1]])
        ids = [_cell_id(P, Y, h, K) for h in maps]
        levels.append(Level(ids, faces, degens, keys=keys))
    M = SimplicialSet(c, COSKELETAL, levels=levels, name=f"Map({X.name},{Y.name})")
    M.mapping = MappingData(X, Y, cells, keydeg, index, fast=False)
    return M


def _nerve_mapping_space(X: SimplicialSet, Y: SimplicialSet, budget: Budget | None) -> SimplicialSet:
    from .builders import nerve

    D = category_of(Y)
    P0, P1 = product(delta(0), X), product(delta(1), X)
    K0, K1 = hom_degree(P0, Y), hom_degree(P1, Y)
    objs = hom_set(P0, Y, budget=budget)
    arrs = hom_set(P1, Y, budget=budget)
    oindex = {_key(h, K0): i for i, h in enumerate(objs)}
    ends = [_theta_map(sx.coface(1, 1), 1, X), _theta_map(sx.coface(1, 0), 1, X)]
    nv = X.size(0)
    e01 = delta(1).key_lookup(1, (0, 1))
    spots = [P1.key_lookup(1, (e01, X.s(0, 0, v))) for v in range(nv)] if nv else []
    at0 = [P0.key_lookup(0, (0, v)) for v in range(nv)]
    src, tgt, comps = [], [], []
    for a in arrs:
        src.append(oindex[_pulled_key(a, ends[0], K0)])
        tgt.append(oindex[_pulled_key(a, ends[1], K0)])
        c1 = a.comp(1)
        comps.append(tuple(c1[s] for s in spots))
    aindex = {(s, t, cs): k for k, (s, t, cs) in enumerate(zip(src, tgt, comps))}
    ident = []
    for F in objs:
        f0 = F.comp(0)
        i = oindex[_key(F, K0)]
        ident.append(aindex[(i, i, tuple(D.ident[f0[p]] for p in at0))])
    out: list[list[int]] = [[] for _ in objs]
    for k, s in enumerate(src):
        out[s].append(k)
    comp = {}
    for k1 in range(len(arrs)):
        c1 = comps[k1]
        for k2 in out[tgt[k1]]:
            c2 = comps[k2]
            cs = tuple(D.comp[(b, a)] for a, b in zip(c1, c2))
            comp[(k2, k1)] = aindex[(src[k1], tgt[k2], cs)]
    obj_names = [_cell_id(P0, Y, h, K0) for h in objs]
    arr_names = [_cell_id(P1, Y, h, K1) for h in arrs]
    Fun = FiniteCategory(obj_names, arr_names, src, tgt, ident, comp, name=f"Fun({X.name},{D.name})")
    M = nerve(Fun)
    M.name = f"Map({X.name},{Y.name})"
    M.mapping = MappingData(
        X,
        Y,
        {0: objs, 1: arrs},
        {0: K0, 1: K1},
        {0: oindex, 1: {_key(a, K1): k for k, a in enumerate(arrs)}},
        fast=True,
    )
    return M


def precompose(M: SimplicialSet, u: SimplicialMap, M2: SimplicialSet) -> SimplicialMap:
    """u^*: Map(X, Y) -> Map(X', Y) for u: X' -> X."""
    md, md2 = M.mapping, M2.mapping
    comps = []
    for n in range(min(md.top, md2.top) + 1):
        w = product_map(identity_map(delta(n)), u)
        K = md2.keydeg[n]
        comps.append([md2.index[n][_pulled_key(h, w, K)] for h in md.cells[n]])
    return SimplicialMap(M, M2, comps)


def postcompose(M: SimplicialSet, p: SimplicialMap, M2: SimplicialSet) -> SimplicialMap:
    """p_*: Map(X, Y) -> Map(X, Y') for p: Y -> Y'."""
    md, md2 = M.mapping, M2.mapping
    comps = []
    for n in range(min(md.top, md2.top) + 1):
        K = md2.keydeg[n]
        comps.append([md2.index[n][_pushed_key(p, h, K)] for h in md.cells[n]])
    return SimplicialMap(M, M2, comps)


def vertex_of_map(M: SimplicialSet, f: SimplicialMap) -> int:
    """The vertex of Map(X, Y) corresponding to f: X -> Y."""
    md = M.mapping
    pr = product(delta(0), md.exponent).legs[1]
    return md.index[0][_pulled_key(f, pr, md.keydeg[0])]


def map_of_vertex(M: SimplicialSet, v: int) -> SimplicialMap:
    """The map X -> Y at vertex v of Map(X, Y)."""
    md = M.mapping
    X = md.exponent
    P0 = product(delta(0), X)
    h = md.cells[0][v]
    return SimplicialMap(X, md.base, model=lambda m: [h(m, P0.key_lookup(m, (0, x))) for x in range(X.size(m))])


def evaluation_at(M: SimplicialSet, x: int) -> SimplicialMap:
    """Evaluation Map(X, Y) -> Y at a vertex x of X."""
    md = M.mapping
    X, Y = md.exponent, md.base
    ev = SimplicialMap(delta(0), X, model=lambda m: [X.apply((0,) * (m + 1), 0, x)])
    E = mapping_space(delta(0), Y, generic=not md.fast)
    back = precompose(M, ev, E)
    iso = SimplicialMap(
        E, Y, model=lambda m: [h(m, product(delta(m), delta(0)).key_lookup(m, (_top(m), 0))) for h in _cells_at(E, m)]
    )
    return compose(iso, back)


def _top(m: int) -> int:
    return delta(m).key_lookup(m, tuple(range(m + 1)))


def _cells_at(E: SimplicialSet, m: int) -> list[SimplicialMap]:
    cells = E.mapping.cells
    if m not in cells:
        raise CapError("evaluation needs cells above the stored degrees", required_cap=m)
    return cells[m]


# -- corner maps ------------------------------------------------------------------

def pushout_product(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """B x U  u_{A x U}  A x V -> B x V for f: A -> B and g: U -> V."""
    A, B, U, V = f.source, f.target, g.source, g.target
    P = pushout(product_map(f, identity_map(U)), product_map(identity_map(A), g))
    return pushout_map(P, product_map(identity_map(B), g), product_map(f, identity_map(V)))


def pullback_power(g: SimplicialMap, p: SimplicialMap, budget: Budget | None = None) -> SimplicialMap:
    """X^V -> X^U x_{Y^U} Y^V for g: U -> V and p: X -> Y."""
    U, V, X, Y = g.source, g.target, p.source, p.target
    XV, XU = mapping_space(V, X, budget), mapping_space(U, X, budget)
    YU, YV = mapping_space(U, Y, budget), mapping_space(V, Y, budget)
    r1, q1 = precompose(XV, g, XU), postcompose(XU, p, YU)
    r2, q2 = precompose(YV, g, YU), postcompose(XV, p, YV)
    P = pullback(q1, r2)
    return pullback_pair(P, r1, q2)


map_pullback_power = pullback_power


# -- lifting ----------------------------------------------------------------------

@dataclass
class LiftingSquare:
    left: SimplicialMap
    right: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap
    label: str = ""

    def degree(self) -> int:
        A, B = self.left.source, self.left.target
        X, Y = self.right.source, self.right.target
        return max(hom_degree(B, X), hom_degree(A, X), hom_degree(B, Y), hom_degree(A, Y))

    def commutes(self) -> bool:
        top = hom_degree(self.left.source, self.right.target)
        p, t, b, i = self.right, self.top, self.bottom, self.left
        return all(
            [p(m, v) for v in t.comp(m)] == [b(m, v) for v in i.comp(m)] for m in range(top + 1)
        )


def solve_lifting(sq: LiftingSquare, limit: int | None = None, budget: Budget | None = None) -> list[SimplicialMap]:
    """All diagonal fillers B -> X of the square, in search order."""
    if not sq.commutes():
        raise PreconditionError("lifting square does not commute")
    return list(_fillers(sq, limit, budget))


def _fillers(sq: LiftingSquare, limit: int | None, budget: Budget | None) -> Iterator[SimplicialMap]:
    i, p, top, bottom = sq.left, sq.right, sq.top, sq.bottom
    A, B, X = i.source, i.target, p.source
    N = sq.degree()
    fixed: dict[tuple[int, int], int] = {}
    for m in range(N + 1):
        ic, tc = i.comp(m), top.comp(m)
        for a in range(A.size(m)):
            key = (m, ic[a])
            if fixed.setdefault(key, tc[a]) != tc[a]:
                return
    bc = [bottom.comp(m) for m in range(N + 1)]
    pc = [p.comp(m) for m in range(N + 1)]
    allowed = lambda m, b, y: pc[m][y] == bc[m][b]
    found = 0
    for comps in enumerate_maps(B, X, degree=N, fixed=fixed, allowed=allowed, budget=budget):
        yield SimplicialMap(B, X, comps)
        found += 1
        if limit is not None and found >= limit:
            return


def has_filler(sq: LiftingSquare, budget: Budget | None = None) -> bool:
    return bool(solve_lifting(sq, limit=1, budget=budget))


# -- generating sets ------------------------------------------------------------------

GENERATING_SETS = ("kanHorns", "boundaries", "innerHorns", "joyalM", "rKanTwoFamily", "twoToPoint")


@dataclass
class Generator:
    name: str
    map: SimplicialMap


def horn_inclusion(n: int, k: int) -> SimplicialMap:
    return inclusion(horn(n, k), delta(n))


def boundary_inclusion(n: int) -> SimplicialMap:
    return inclusion(boundary(n), delta(n))


def h_inclusion() -> SimplicialMap:
    """{0} -> H at the source vertex of the glued edge."""
    H = walking_h()
    v = H.idx(0, "0")
    return SimplicialMap(point(), H, model=lambda m: [H.apply((0,) * (m + 1), 0, v)])


def generating_set(name: str, cap: int) -> list[Generator]:
    if name == "kanHorns":
        return [Generator(f"Lambda{n}_{k}", horn_inclusion(n, k)) for n in range(1, cap + 1) for k in range(n + 1)]
    if name == "innerHorns":
        return [Generator(f"Lambda{n}_{k}", horn_inclusion(n, k)) for n in range(2, cap + 1) for k in range(1, n)]
    if name == "boundaries":
        return [Generator(f"dDelta{n}", boundary_inclusion(n)) for n in range(0, cap + 1)]
    if name == "joyalM":
        return generating_set("innerHorns", cap) + [Generator("{0}->H", h_inclusion())]
    if name == "rKanTwoFamily":
        return [Generator(f"R{n}2->*", terminal_map(rkan_two(n), point())) for n in range(0, cap + 1)]
    if name == "twoToPoint":
        from .builders import vertex_set

        return [Generator("2->*", terminal_map(vertex_set(2), point()))]
    raise ValueError(f"unknown generating set {name!r}")


@dataclass
class RLPResult:
    holds: bool
    witness: LiftingSquare | None = None
    checked: list[str] = field(default_factory=list)
    method: str = "search"


def sweep_cap(p: SimplicialMap) -> int:
    """Horn/boundary dimensions up to c+2 for c the larger coskeletal degree."""
    cs = [p.source.coskeletal_bound(), p.target.coskeletal_bound()]
    if any(c is None for c in cs):
        raise CapError("classification needs coskeletal source and target")
    return max(cs) + 2


def squares(i: SimplicialMap, p: SimplicialMap, budget: Budget | None = None) -> Iterator[LiftingSquare]:
    """Every commuting square with i on the left and p on the right."""
    A, B = i.source, i.target
    X, Y = p.source, p.target
    NB = hom_degree(B, Y)
    for bc in enumerate_maps(B, Y, degree=NB, budget=budget):
        bottom = SimplicialMap(B, Y, bc)
        NA = max(hom_degree(A, X), hom_degree(A, Y))
        want = [[bottom(m, v) for v in i.comp(m)] for m in range(NA + 1)]
        pc = [p.comp(m) for m in range(NA + 1)]
        allowed = lambda m, a, y, want=want, pc=pc: pc[m][y] == want[m][a]
        for tc in enumerate_maps(A, X, degree=NA, allowed=allowed, budget=budget):
            yield LiftingSquare(i, p, SimplicialMap(A, X, tc), bottom)


def has_rlp(p: SimplicialMap, gens: list[Generator] | str, cap: int | None = None, budget: Budget | None = None) -> RLPResult:
    """Whether p has the right lifting property against every generator."""
    if isinstance(gens, str):
        gens = generating_set(gens, sweep_cap(p) if cap is None else cap)
    res = RLPResult(True)
    for g in gens:
        res.checked.append(g.name)
        for sq in squares(g.map, p, budget):
            if not has_filler(sq, budget):
                sq.label = g.name
                return RLPResult(False, sq, res.checked)
    return res


def has_llp(i: SimplicialMap, gens: list[Generator], budget: Budget | None = None) -> RLPResult:
    """Whether i has the left lifting property against every generator."""
    res = RLPResult(True)
    for g in gens:
        res.checked.append(g.name)
        for sq in squares(i, g.map, budget):
            if not has_filler(sq, budget):
                sq.label = g.name
                return RLPResult(False, sq, res.checked)
    return res


# -- monomorphisms via R_n 2 ---------------------------------------------------------

FULL_FAMILY_LIMIT = 4096
RKAN_MAX = 2


def rkan_classifier(A: SimplicialSet, n: int, phi: list[int]) -> SimplicialMap:
    """The map A -> R_n 2 classifying phi: A_n -> {0, 1}."""
    R = rkan_two(n)

    def comp(m: int) -> list[int]:
        thetas = sx.monotone_maps(n, m)
        return [R.key_lookup(m, tuple(phi[A.apply(th, m, a)] for th in thetas)) for a in range(A.size(m))]

    return SimplicialMap(A, R, model=comp)


def _phi_family(size: int) -> Iterator[list[int]]:
    if 2**size <= FULL_FAMILY_LIMIT:
        for bits in range(2**size):
            yield [(bits >> k) & 1 for k in range(size)]
        return
    yield [0] * size
    yield [1] * size
    for k in range(size):
        yield [int(a == k) for a in range(size)]


def mono_by_lifting(p: SimplicialMap, budget: Budget | None = None) -> RLPResult:
    """Left lifting property of p against R_n 2 -> * for n up to the injectivity degree."""
    A, B = p.source, p.target
    T = p.mono_degree()
    if T > RKAN_MAX:
        raise CapError(f"lifting-based monomorphism test supports degrees <= {RKAN_MAX}", required_cap=T)
    res = RLPResult(True, method="rkan")
    star = point()
    for n in range(T + 1):
        res.checked.append(f"R{n}2->*")
        R = rkan_two(n)
        right = terminal_map(R, star)
        bottom = terminal_map(B, star)
        for phi in _phi_family(A.size(n)):
            sq = LiftingSquare(p, right, rkan_classifier(A, n, phi), bottom, label=f"R{n}2->*")
            if not has_filler(sq, budget):
                return RLPResult(False, sq, res.checked, method="rkan")
    return res


# -- classification -------------------------------------------------------------------

MAP_KINDS = ("kanFibration", "trivialFibration", "innerFibration", "categoricalFibration", "monomorphism")


def is_quasi_category(X: SimplicialSet, budget: Budget | None = None) -> bool:
    if category_of(X) is not None:
        return True
    return has_rlp(terminal_map(X, point()), "innerHorns", budget=budget).holds


def is_kan_complex(X: SimplicialSet, budget: Budget | None = None) -> bool:
    return classify_map(terminal_map(X, point()), "kanFibration", budget=budget).holds


def classify_map(p: SimplicialMap, kind: str, budget: Budget | None = None, use_nerves: bool = True) -> RLPResult:
    """Decide a lifting class for p; see ``MAP_KINDS``."""
    if kind not in MAP_KINDS:
        raise ValueError(f"unknown map kind {kind!r}")
    if kind == "monomorphism":
        direct = p.is_injective()
        lifted = mono_by_lifting(p, budget)
        if direct != lifted.holds:
            raise EngineDefect("degreewise injectivity and the R_n 2 lifting test disagree")
        return lifted
    F = functor_of(p) if use_nerves else None
    if F is not None:
        return _classify_functor(p, F, kind, budget)
    if kind == "categoricalFibration":
        for side in (p.source, p.target):
            if not is_quasi_category(side, budget):
                raise PreconditionError("categorical fibrations are only classified between quasi-categories")
        return has_rlp(p, "joyalM", budget=budget)
    gens = {"kanFibration": "kanHorns", "trivialFibration": "boundaries", "innerFibration": "innerHorns"}[kind]
    return has_rlp(p, gens, budget=budget)


def _classify_functor(p: SimplicialMap, F, kind: str, budget: Budget | None) -> RLPResult:
    if kind == "innerFibration":
        return RLPResult(True, method="nerve")
    if kind == "trivialFibration":
        return RLPResult(is_surjective_on_objects(F) and F.is_fully_faithful(), method="nerve")
    if kind == "categoricalFibration":
        return RLPResult(is_isofibration(F), method="nerve")
    if _groupoid(p.source, F.source) and _groupoid(p.target, F.target):
        return RLPResult(is_isofibration(F), method="nerve")
    return classify_map(p, kind, budget, use_nerves=False)
