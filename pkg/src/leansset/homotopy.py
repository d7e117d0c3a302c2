"""Homotopy invariants computed by exhaustive search."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .builders import boundary, delta, horn, inclusion, jnerve, point, walking_h
from .hom import Budget, enumerate_maps, hom_degree
from .lifting import (
    LiftingSquare,
    PreconditionError,
    boundary_inclusion,
    has_filler,
    is_kan_complex,
    is_quasi_category,
    mapping_space,
    postcompose,
    precompose,
    vertex_of_map,
    classify_map,
)
from .limits import _UnionFind, classify, product, pullback, pullback_pair, terminal_map
from .nerves import category_of, functor_of, _groupoid
from .sset import SimplicialMap, SimplicialSet, compose


def simplex_map_of(X: SimplicialSet, n: int, x: int) -> SimplicialMap:
    """The map Delta^n -> X picking out the n-simplex x."""
    D = delta(n)
    return SimplicialMap(D, X, model=lambda m: [X.apply(k, n, x) for k in D.level(m).keys])


def base_cell(X: SimplicialSet, m: int, v: int) -> int:
    """The totally degenerate m-simplex on the vertex v."""
    return X.apply((0,) * (m + 1), 0, v)


def pi0(X: SimplicialSet) -> list[list[str]]:
    """Connected components as sorted lists of vertex ids, in order of their least id."""
    uf = _UnionFind(X.size(0))
    for e in range(X.size(1)):
        uf.union(X.d(1, 0, e), X.d(1, 1, e))
    groups: dict[int, list[str]] = {}
    for v in range(X.size(0)):
        groups.setdefault(uf.find(v), []).append(X.id(0, v))
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def component_index(X: SimplicialSet) -> list[int]:
    comps = pi0(X)
    where = {vid: k for k, g in enumerate(comps) for vid in g}
    return [where[X.id(0, v)] for v in range(X.size(0))]


# -- homotopies of maps ----------------------------------------------------------------

def cylinder(flavor: str) -> SimplicialSet:
    if flavor == "kq":
        return delta(1)
    if flavor == "joyal":
        return walking_h()
    raise ValueError(f"unknown flavor {flavor!r}")


def _end_vertices(cyl: SimplicialSet) -> tuple[int, int]:
    return cyl.idx(0, "0"), cyl.idx(0, "1")


def find_homotopy(
    f: SimplicialMap,
    g: SimplicialMap,
    flavor: str = "kq",
    rel: SimplicialMap | None = None,
    budget: Budget | None = None,
    check: bool = True,
) -> SimplicialMap | None:
    """A map source x cyl -> target restricting to f and g on the two ends, or None.

    ``rel`` is an inclusion into the source on which the homotopy must be constant.
    """
    X, Y = f.source, f.target
    if g.source is not X or g.target is not Y:
        raise ValueError("homotopy needs parallel maps")
    if check:
        ok = is_kan_complex(Y, budget) if flavor == "kq" else is_quasi_category(Y, budget)
        if not ok:
            raise PreconditionError(f"target is not fibrant for the {flavor} flavor")
    cyl = cylinder(flavor)
    P = product(X, cyl)
    N = hom_degree(P, Y)
    e0, e1 = _end_vertices(cyl)
    ends = [base_cell_ids(cyl, N, e0), base_cell_ids(cyl, N, e1)]
    fixed: dict[tuple[int, int], int] = {}
    inrel = [set(rel.comp(m)) if rel is not None else set() for m in range(N + 1)]
    for m in range(N + 1):
        fc, gc = f.comp(m), g.comp(m)
        for (a, c), idx in P.level(m).key_index.items():
            want = None
            if c == ends[0][m]:
                want = fc[a]
            elif c == ends[1][m]:
                want = gc[a]
            if a in inrel[m]:
                if want is not None and want != fc[a]:
                    return None
                want = fc[a]
            if want is not None:
                fixed[(m, idx)] = want
    for comps in enumerate_maps(P, Y, degree=N, fixed=fixed, budget=budget):
        return SimplicialMap(P, Y, comps)
    return None


def base_cell_ids(X: SimplicialSet, top: int, v: int) -> list[int]:
    return [base_cell(X, m, v) for m in range(top + 1)]


def homotopic(
    f: SimplicialMap,
    g: SimplicialMap,
    flavor: str = "kq",
    rel: SimplicialMap | None = None,
    budget: Budget | None = None,
    check: bool = True,
) -> bool:
    return find_homotopy(f, g, flavor, rel, budget, check) is not None


# -- homotopy groups -----------------------------------------------------------------------

@dataclass
class HomotopyClassTable:
    degree: int
    base: str
    representatives: list[str]
    classes: list[list[str]]
    table: list[list[int]] = field(default_factory=list)
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.classes)

    def group_violations(self) -> list[str]:
        n = self.order
        t = self.table
        bad = []
        for a in range(n):
            if t[self.identity][a] != a or t[a][self.identity] != a:
                bad.append(f"class {a} breaks the unit law")
            if not any(t[a][b] == self.identity for b in range(n)):
                bad.append(f"class {a} has no inverse")
        for a, b, c in iproduct(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                bad.append("multiplication is not associative")
                break
        return bad

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "base": self.base,
            "order": self.order,
            "classes": self.classes,
            "identity": self.identity,
            "table": self.table,
        }


def _spheres(X: SimplicialSet, n: int, v: int) -> list[int]:
    star = base_cell(X, n - 1, v)
    return [x for x in range(X.size(n)) if all(X.d(n, i, x) == star for i in range(n + 1))]


def pi_n(X: SimplicialSet, base: int, n: int, check: bool = True, budget: Budget | None = None) -> HomotopyClassTable:
    """pi_n(X, base) of a Kan complex with its multiplication table."""
    if n < 1:
        raise ValueError("homotopy groups start at n = 1")
    if check and not is_kan_complex(X, budget):
        raise PreconditionError("homotopy groups need a Kan complex")
    reps = _spheres(X, n, base)
    pos = {x: k for k, x in enumerate(reps)}
    star_n = base_cell(X, n, base)
    uf = _UnionFind(len(reps))
    faces_of = [X.faces_of(n + 1, z) for z in range(X.size(n + 1))]
    for fs in faces_of:
        if all(fs[i] == star_n for i in range(n)) and fs[n] in pos and fs[n + 1] in pos:
            uf.union(pos[fs[n]], pos[fs[n + 1]])
    groups: dict[int, list[int]] = {}
    for k in range(len(reps)):
        groups.setdefault(uf.find(k), []).append(k)
    ordered = sorted(groups.values(), key=lambda g: min(X.id(n, reps[k]) for k in g))
    cls_of = {}
    for c, g in enumerate(ordered):
        for k in g:
            cls_of[reps[k]] = c
    classes = [sorted(X.id(n, reps[k]) for k in g) for g in ordered]
    identity = cls_of[star_n]
    m = len(ordered)
    table = [[-1] * m for _ in range(m)]
    for fs in faces_of:
        if not all(fs[i] == star_n for i in range(n - 1)):
            continue
        x, prod_, y = fs[n - 1], fs[n], fs[n + 1]
        if x in cls_of and y in cls_of and prod_ in cls_of:
            a, b, c = cls_of[x], cls_of[y], cls_of[prod_]
            if table[a][b] == -1:
                table[a][b] = c
            elif table[a][b] != c:
                raise RuntimeError("horn fillers disagree on a product class")
    if any(v == -1 for row in table for v in row):
        raise PreconditionError("some product has no horn filler: the space is not Kan")
    return HomotopyClassTable(n, X.id(0, base), [X.id(n, r) for r in reps], classes, table, identity)


def induced_on_pi(f: SimplicialMap, base: int, n: int, src: HomotopyClassTable, tgt: HomotopyClassTable) -> list[int]:
    X, Y = f.source, f.target
    where = {cid: k for k, cls in enumerate(tgt.classes) for cid in cls}
    out = []
    for cls in src.classes:
        x = X.idx(n, cls[0])
        out.append(where[Y.id(n, f(n, x))])
    return out


def is_weak_equivalence_kan(f: SimplicialMap, check: bool = True, budget: Budget | None = None, use_nerves: bool = True) -> bool:
    """pi_0 bijection and pi_n isomorphisms up to the coskeletal degree at every vertex."""
    X, Y = f.source, f.target
    if use_nerves:
        F = functor_of(f)
        if F is not None and _groupoid(X, F.source) and _groupoid(Y, F.target):
            return F.is_equivalence()
    if check:
        for Z in (X, Y):
            if not is_kan_complex(Z, budget):
                raise PreconditionError("weak equivalence test needs Kan complexes")
    cx, cy = component_index(X), component_index(Y)
    image = {}
    for v in range(X.size(0)):
        w = cy[f(0, v)]
        if image.setdefault(cx[v], w) != w:
            return False
    if len(set(image.values())) != len(image) or len(image) != len(set(cy)):
        return False
    top = max(X.coskeletal_bound() or 0, Y.coskeletal_bound() or 0)
    for n in range(1, top + 1):
        for v in range(X.size(0)):
            a = pi_n(X, v, n, check=False)
            b = pi_n(Y, f(0, v), n, check=False)
            if a.order != b.order:
                return False
            phi = induced_on_pi(f, v, n, a, b)
            if len(set(phi)) != len(phi):
                return False
            for i in range(a.order):
                for j in range(a.order):
                    if phi[a.table[i][j]] != b.table[phi[i]][phi[j]]:
                        return False
    return True


# -- quasi-categories ---------------------------------------------------------------------------

def _pair_map(X: SimplicialSet, x: int, y: int) -> SimplicialMap:
    B = boundary(1)
    return SimplicialMap(B, X, model=lambda m: [base_cell(X, m, x if k[0] == 0 else y) for k in B.level(m).keys])


def _constant_at(target: SimplicialSet, v: int) -> SimplicialMap:
    P = point()
    return SimplicialMap(P, target, model=lambda m: [base_cell(target, m, v)])


def qcat_map_space(X: SimplicialSet, x: int, y: int, check: bool = True, budget: Budget | None = None) -> SimplicialSet:
    """Fiber of Map(Delta^1, X) -> X x X over (x, y); ``.legs`` as for pullbacks."""
    if check and not is_quasi_category(X, budget):
        raise PreconditionError("mapping spaces are only defined for quasi-categories")
    M = mapping_space(delta(1), X, budget)
    Mb = mapping_space(boundary(1), X, budget)
    ev = precompose(M, boundary_inclusion(1), Mb)
    v = vertex_of_map(Mb, _pair_map(X, x, y))
    return pullback(ev, _constant_at(Mb, v))


def qcat_map_space_map(f: SimplicialMap, x: int, y: int, budget: Budget | None = None) -> SimplicialMap:
    """map_X(x, y) -> map_Y(fx, fy) induced by f."""
    X, Y = f.source, f.target
    S = qcat_map_space(X, x, y, check=False, budget=budget)
    T = qcat_map_space(Y, f(0, x), f(0, y), check=False, budget=budget)
    MX, MY = mapping_space(delta(1), X, budget), mapping_space(delta(1), Y, budget)
    push = postcompose(MX, f, MY)
    leg = compose(push, S.legs[0])
    to_pt = terminal_map(S, point())
    return pullback_pair(T, leg, to_pt)


def is_equivalence_edge(X: SimplicialSet, alpha: int, budget: Budget | None = None) -> bool:
    """Whether the edge alpha extends along Delta^1 -> J^1."""
    J = jnerve(1)
    left = inclusion(delta(1), J)
    top = simplex_map_of(X, 1, alpha)
    sq = LiftingSquare(left, terminal_map(X, point()), top, terminal_map(J, point()))
    return has_filler(sq, budget)


@dataclass
class DKReport:
    essentially_surjective: bool
    fully_faithful: bool

    @property
    def verdict(self) -> bool:
        return self.essentially_surjective and self.fully_faithful

    def as_dict(self) -> dict:
        return {
            "essentiallySurjective": self.essentially_surjective,
            "fullyFaithful": self.fully_faithful,
            "verdict": self.verdict,
        }


def is_dk_equivalence_qcat(f: SimplicialMap, check: bool = True, budget: Budget | None = None, use_nerves: bool = True) -> DKReport:
    X, Y = f.source, f.target
    if use_nerves:
        F = functor_of(f)
        if F is not None:
            return DKReport(F.is_essentially_surjective(), F.is_fully_faithful())
    if check:
        for Z in (X, Y):
            if not is_quasi_category(Z, budget):
                raise PreconditionError("DK equivalence test needs quasi-categories")
    hit = {f(0, v) for v in range(X.size(0))}
    eq_edges = [e for e in range(Y.size(1)) if is_equivalence_edge(Y, e, budget)]
    reach = set(hit)
    for e in eq_edges:
        if Y.d(1, 1, e) in hit:
            reach.add(Y.d(1, 0, e))
    ess = len(reach) == Y.size(0)
    ff = True
    for x in range(X.size(0)):
        for y in range(X.size(0)):
            g = qcat_map_space_map(f, x, y, budget)
            S, T = g.source, g.target
            if S.is_empty() and T.is_empty():
                continue
            if S.is_empty() != T.is_empty() or not is_weak_equivalence_kan(g, check=False, budget=budget):
                ff = False
                break
        if not ff:
            break
    return DKReport(ess, ff)


def count_fillers(X: SimplicialSet, D: SimplicialMap) -> int:
    """Number of n-simplices of X whose boundary is the sphere D: boundary(n) -> X."""
    B = D.source
    n = B.vertices_n
    if n == 0:
        return X.size(0)
    want = tuple(D(n - 1, B.key_lookup(n - 1, tuple(a for a in range(n + 1) if a != i))) for i in range(n + 1))
    return len(X.face_index(n).get(want, []))


def count_horn_fillers(X: SimplicialSet, h: SimplicialMap, k: int) -> int:
    """Number of n-simplices of X extending the horn h: Lambda^n_k -> X."""
    L = h.source
    n = L.vertices_n
    want = {
        i: h(n - 1, L.key_lookup(n - 1, tuple(a for a in range(n + 1) if a != i))) for i in range(n + 1) if i != k
    }
    return sum(all(X.d(n, i, x) == v for i, v in want.items()) for x in range(X.size(n)))


def horn_filler_counts(X: SimplicialSet, n: int, k: int, budget: Budget | None = None) -> list[int]:
    """Filler count for every horn Lambda^n_k -> X, in enumeration order."""
    from .hom import hom_set

    return [count_horn_fillers(X, h, k) for h in hom_set(horn(n, k), X, budget=budget)]


def is_minimal(X: SimplicialSet, budget: Budget | None = None) -> bool:
    """Distinct simplices with equal boundary are never homotopic relative to the boundary."""
    top = X.coskeletal_bound()
    if top is None:
        top = X.cap
    for n in range(1, top + 1):
        rel = boundary_inclusion(n)
        for cells in X.face_index(n).values():
            if len(cells) < 2:
                continue
            for a in range(len(cells)):
                for b in range(a + 1, len(cells)):
                    fa, fb = simplex_map_of(X, n, cells[a]), simplex_map_of(X, n, cells[b])
                    if find_homotopy(fa, fb, "kq", rel=rel, budget=budget, check=False) is not None:
                        return False
    return True


def fiber(f: SimplicialMap, v: int) -> SimplicialSet:
    return pullback(f, _constant_at(f.target, v))


def is_lean_stratified_kan(f: SimplicialMap, budget: Budget | None = None) -> bool:
    """Inner fibration from a lean object to a poset nerve with Kan fibers."""
    if category_of(f.target) is None:
        raise PreconditionError("stratification target must be the nerve of a finite poset")
    if not classify_map(f, "innerFibration", budget).holds:
        return False
    if not classify(f.source).is_lean:
        return False
    return all(is_kan_complex(fiber(f, v), budget) for v in range(f.target.size(0)))
