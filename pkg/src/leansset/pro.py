"""Pro-objects of simplicial sets over finite codirected posets.

An index poset is read as a category with an arrow k -> i whenever k <= i;
a pro-object sends it to bonds X_k -> X_i. Morphisms are computed with the
lim-colim formula: a map C -> D is a compatible family, over the elements j
of D's index, of germs in colim_i Hom(C_i, D_j). Every germ is stored by its
representative on the least element of C's index, which makes equality of
pro-maps a plain comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .hom import Budget, hom_degree, hom_set
from .lifting import LiftingSquare, has_filler, mapping_space, precompose
from .limits import _UnionFind, coskeleton, corestrict, image, terminal_map
from .sset import (
    COSKELETAL,
    SKELETAL,
    BudgetExceeded,
    CapError,
    Level,
    SimplicialMap,
    SimplicialSet,
    compose,
    identity_map,
)


class IndexError_(ValueError):
    """Invalid index poset; ``witness`` names the offending elements."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


@dataclass
class IndexPoset:
    elements: list[str]
    leq: frozenset[tuple[str, str]]
    flavor: str = "finitePoset"

    @staticmethod
    def build(elements: list[str], relations: list[tuple[str, str]], flavor: str = "finitePoset") -> "IndexPoset":
        """Reflexive-transitive closure of ``relations`` (pairs a <= b), validated."""
        els = list(elements)
        known = set(els)
        for a, b in relations:
            if a not in known or b not in known:
                raise IndexError_(f"relation {a}<={b} mentions an unknown element", (a, b))
        rel = {(a, a) for a in els} | set(relations)
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        P = IndexPoset(els, frozenset(rel), flavor)
        P.validate()
        return P

    @staticmethod
    def point() -> "IndexPoset":
        return IndexPoset(["0"], frozenset({("0", "0")}))

    @staticmethod
    def tower(top: int) -> "IndexPoset":
        """Elements 0..top with n <= m iff n >= m numerically (so ``top`` is least)."""
        els = [str(n) for n in range(top + 1)]
        return IndexPoset.build(els, [(str(n + 1), str(n)) for n in range(top)], flavor=f"towerTruncatedAt({top})")

    @staticmethod
    def chain(length: int) -> "IndexPoset":
        return IndexPoset.tower(length - 1)

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.leq

    def validate(self) -> None:
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                raise IndexError_(f"order is not antisymmetric on {a}, {b}", (a, b))
        for a in self.elements:
            for b in self.elements:
                if not any(self.le(c, a) and self.le(c, b) for c in self.elements):
                    raise IndexError_(f"index is not codirected: {a} and {b} have no common lower bound", (a, b))

    def minimum(self) -> str:
        for c in self.elements:
            if all(self.le(c, a) for a in self.elements):
                return c
        raise IndexError_("finite codirected poset without least element")

    def pairs(self) -> list[tuple[str, str]]:
        """Strict relations k < i in a deterministic order."""
        return sorted((a, b) for a, b in self.leq if a != b)


@dataclass
class ProObject:
    index: IndexPoset
    levels: dict[str, SimplicialSet]
    bonds: dict[tuple[str, str], SimplicialMap]

    def bond(self, k: str, i: str) -> SimplicialMap:
        if k == i:
            return identity_map(self.levels[k])
        if (k, i) in self.bonds:
            return self.bonds[(k, i)]
        raise KeyError(f"no bond {k}<={i}")

    def violations(self, upto: int | None = None) -> list[str]:
        bad = []
        P = self.index
        for k, i in P.pairs():
            b = self.bond(k, i)
            if b.source is not self.levels[k] or b.target is not self.levels[i]:
                bad.append(f"bond {k}<={i} has wrong ends")
                continue
            top = upto if upto is not None else b.determining_degree()
            for msg in b.violations(top):
                bad.append(f"bond {k}<={i}: {msg}")
        for k, i in P.pairs():
            for i2, j in P.pairs():
                if i2 != i:
                    continue
                direct = self.bond(k, j)
                via = compose(self.bond(i, j), self.bond(k, i))
                if not direct.equals(via, upto):
                    bad.append(f"bonds are not functorial on {k}<={i}<={j}")
        return bad

    @property
    def least(self) -> str:
        return self.index.minimum()


def const(X: SimplicialSet) -> ProObject:
    return ProObject(IndexPoset.point(), {"0": X}, {})


@dataclass
class ProMap:
    """A pro-map as its germ family; ``germs[j]`` is a map C_least -> D_j."""

    source: ProObject
    target: ProObject
    germs: dict[str, SimplicialMap]

    def key(self) -> tuple:
        return tuple((j, _map_key(self.germs[j])) for j in sorted(self.germs))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProMap) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass
class LevelMap:
    """A strict natural transformation between pro-objects over one index."""

    source: ProObject
    target: ProObject
    components: dict[str, SimplicialMap]
    reindexing: dict[str, tuple[str, str]] = field(default_factory=dict)

    def violations(self) -> list[str]:
        bad = []
        if self.source.index.leq != self.target.index.leq:
            return ["source and target are indexed differently"]
        for k, i in self.source.index.pairs():
            a = compose(self.target.bond(k, i), self.components[k])
            b = compose(self.components[i], self.source.bond(k, i))
            if not a.equals(b, _det(a)):
                bad.append(f"components do not commute with the bond {k}<={i}")
        return bad

    def as_pro_map(self) -> ProMap:
        S = self.source
        m = S.least
        return ProMap(S, self.target, {j: compose(c, S.bond(m, j)) for j, c in self.components.items()})


def _pair_degree(S: SimplicialSet, T: SimplicialSet) -> int:
    try:
        return hom_degree(S, T)
    except CapError:
        return max(S.cap, T.cap)


def _det(f: SimplicialMap) -> int:
    return _pair_degree(f.source, f.target)


def _map_key(f: SimplicialMap) -> tuple:
    return f.key(_det(f))


# -- Hom sets ----------------------------------------------------------------------

def _germ_classes(C: ProObject, Dj: SimplicialSet, budget: Budget | None) -> list[SimplicialMap]:
    """colim_i Hom(C_i, Dj): the quotient of the disjoint union, one map on C_least per class."""
    m = C.least
    reps: list[tuple[str, SimplicialMap]] = []
    for i in C.index.elements:
        reps.extend((i, f) for f in hom_set(C.levels[i], Dj, budget=budget))
    pulled = {}
    for n, (i, f) in enumerate(reps):
        pulled[n] = _map_key(compose(f, C.bond(m, i)))
    uf = _UnionFind(len(reps))
    pos = {(i, _map_key(f)): n for n, (i, f) in enumerate(reps)}
    for k, i in C.index.pairs():
        b = C.bond(k, i)
        for n, (src, f) in enumerate(reps):
            if src != i:
                continue
            uf.union(n, pos[(k, _map_key(compose(f, b)))])
    out: dict[int, SimplicialMap] = {}
    for n, (i, f) in enumerate(reps):
        if i == m:
            r = uf.find(n)
            if r in out:
                raise RuntimeError("two least-level maps fell into one germ class")
            out[r] = f
    for n in range(len(reps)):
        if uf.find(n) not in out:
            raise RuntimeError("germ class without a least-level representative")
    return sorted(out.values(), key=_map_key)


def pro_hom(C: ProObject, D: ProObject, budget: Budget | None = None) -> list[ProMap]:
    """All pro-maps C -> D, as compatible germ families.

    A family is determined by its germ at the least element of D; the other
    germs are obtained by pushing it along the bonds.
    """
    low = D.least
    return [
        ProMap(C, D, {j: g if j == low else compose(D.bond(low, j), g) for j in D.index.elements})
        for g in _germ_classes(C, D.levels[low], budget)
    ]


def compose_pro(g: ProMap, f: ProMap) -> ProMap:
    """g o f for f: C -> D and g: D -> E."""
    mD = f.target.least
    return ProMap(f.source, g.target, {k: compose(gk, f.germs[mD]) for k, gk in g.germs.items()})


def identity_pro(C: ProObject) -> ProMap:
    m = C.least
    return ProMap(C, C, {j: C.bond(m, j) for j in C.index.elements})


# -- level representations -----------------------------------------------------------

def _factor(b: SimplicialMap, g: SimplicialMap, budget: Budget | None) -> SimplicialMap | None:
    """The first h with h o b = g, in search order, or None."""
    S, T = b.target, g.target
    N = _pair_degree(S, T)
    fixed: dict[tuple[int, int], int] = {}
    for m in range(N + 1):
        bc, gc = b.comp(m), g.comp(m)
        for x in range(b.source.size(m)):
            if fixed.setdefault((m, bc[x]), gc[x]) != gc[x]:
                return None
    found = hom_set(S, T, degree=N, fixed=fixed, budget=budget, limit=1)
    return found[0] if found else None


def level_representation(f: ProMap, budget: Budget | None = None) -> LevelMap:
    """A level map over the pairs (i, j) through which the germ at j factors.

    Each pair carries one canonical factorization C_i -> D_j; the pair of least
    elements lies below every other pair, so the index is codirected.
    """
    C, D = f.source, f.target
    m = C.least
    elements: list[tuple[str, str, SimplicialMap]] = []
    for i in C.index.elements:
        for j in D.index.elements:
            h = f.germs[j] if i == m else _factor(C.bond(m, i), f.germs[j], budget)
            if h is not None:
                elements.append((i, j, h))
    names = [f"{i}|{j}" for i, j, _ in elements]
    rel = []
    for a, (i, j, h) in enumerate(elements):
        for b, (i2, j2, h2) in enumerate(elements):
            if a == b or not (C.index.le(i, i2) and D.index.le(j, j2)):
                continue
            lhs = compose(D.bond(j, j2), h)
            rhs = compose(h2, C.bond(i, i2))
            if lhs.equals(rhs, _det(lhs)):
                rel.append((names[a], names[b]))
    K = IndexPoset.build(names, rel)
    Cp = ProObject(K, {n: C.levels[e[0]] for n, e in zip(names, elements)}, {})
    Dp = ProObject(K, {n: D.levels[e[1]] for n, e in zip(names, elements)}, {})
    idx = dict(zip(names, elements))
    for a, b in K.pairs():
        Cp.bonds[(a, b)] = C.bond(idx[a][0], idx[b][0])
        Dp.bonds[(a, b)] = D.bond(idx[a][1], idx[b][1])
    comps = {n: e[2] for n, e in zip(names, elements)}
    return LevelMap(Cp, Dp, comps, {n: (e[0], e[1]) for n, e in zip(names, elements)})


def reproduces(L: LevelMap, f: ProMap) -> bool:
    """Whether the level map, read back through its reindexing, has the germs of f."""
    C = f.source
    m = C.least
    for n, (i, j) in L.reindexing.items():
        g = compose(L.components[n], C.bond(m, i))
        if _map_key(g) != _map_key(f.germs[j]):
            return False
    return set(j for _, j in L.reindexing.values()) == set(f.target.index.elements)


def level_to_pro(L: LevelMap) -> ProMap:
    return L.as_pro_map()


# -- monomorphisms ---------------------------------------------------------------------

def underlying(C: ProObject) -> SimplicialSet:
    """Degreewise limit over the index; cells are compatible tuples ordered like the index."""
    els = C.index.elements
    m = C.least
    low = C.levels[m]
    legs = {i: C.bond(m, i) for i in els}

    def cells(n: int) -> list[tuple[int, ...]]:
        out = []
        comps = {i: legs[i].comp(n) for i in els}
        for x in range(low.size(n)):
            out.append(tuple(comps[i][x] for i in els))
        return sorted(set(out))

    levels_ = [C.levels[i] for i in els]

    def build(n: int, U: SimplicialSet) -> Level:
        keys = cells(n)
        lookup = {k: a for a, k in enumerate(keys)}
        ids = ["(" + ",".join(L.id(n, v) for L, v in zip(levels_, k)) + ")" if len(els) > 1 else levels_[0].id(n, k[0]) for k in keys]
        faces, degens = [], []
        if n > 0:
            prev = U.level(n - 1).key_index
            faces = [[prev[tuple(L.d(n, i, v) for L, v in zip(levels_, k))] for k in keys] for i in range(n + 1)]
            pk = U.level(n - 1).keys
            degens = [[lookup[tuple(L.s(n - 1, j, v) for L, v in zip(levels_, k))] for k in pk] for j in range(n)]
        return Level(ids, faces, degens, keys=keys)

    if all(L.extension == COSKELETAL for L in levels_):
        ext, cap = COSKELETAL, max(L.cap for L in levels_)
    elif low.extension == SKELETAL:
        ext, cap = SKELETAL, max(low.skeletal_dim(), 0)
    else:
        ext, cap = COSKELETAL, max(L.coskeletal_bound() or L.cap for L in levels_)
    U = SimplicialSet(cap, ext, model=build, name="underlying")
    U.legs = tuple(SimplicialMap(U, C.levels[i], model=lambda n, a=a: [k[a] for k in U.level(n).keys]) for a, i in enumerate(els))
    return U


def underlying_map(f: ProMap) -> SimplicialMap:
    """lim C -> lim D induced by f."""
    C, D = f.source, f.target
    US, UT = underlying(C), underlying(D)
    m = C.least
    els = D.index.elements
    at_least = US.legs[C.index.elements.index(m)]

    def comp(n: int) -> list[int]:
        low = at_least.comp(n)
        cols = [f.germs[j].comp(n) for j in els]
        return [UT.key_lookup(n, tuple(c[x] for c in cols)) for x in low]

    return SimplicialMap(US, UT, model=comp)


@dataclass
class MonoResult:
    holds: bool
    mode: str
    witness: object = None


def is_pro_mono(f: ProMap, mode: str = "direct", budget: Budget | None = None) -> MonoResult:
    if mode == "direct":
        g = underlying_map(f)
        return MonoResult(g.is_injective(), mode)
    if mode != "lifting":
        raise ValueError(f"unknown mode {mode!r}")
    return _mono_by_pro_lifting(f, budget)


def _discrete(X: SimplicialSet) -> bool:
    return X.skeletal_dim() is not None and X.skeletal_dim() <= 0 if X.extension == SKELETAL else False


def _mono_by_pro_lifting(f: ProMap, budget: Budget | None) -> MonoResult:
    """LLP against 2 -> * (discrete levels) or R_n 2 -> *, deciding each square through some level."""
    from .builders import point
    from .lifting import RKAN_MAX, _phi_family, rkan_classifier

    C, D = f.source, f.target
    S = C.levels[C.least]
    if all(_discrete(L) for L in list(C.levels.values()) + list(D.levels.values())):
        from .builders import vertex_set

        R = vertex_set(2)
        tops = [_to_two(S, R, phi) for phi in _phi_family(S.size(0))]
        targets = [(R, tops, "2->*")]
    else:
        T = f.germs[D.least].mono_degree()
        if T > RKAN_MAX:
            raise CapError(f"lifting-based monomorphism test supports degrees <= {RKAN_MAX}", required_cap=T)
        targets = []
        for n in range(T + 1):
            targets.append((None, [rkan_classifier(S, n, phi) for phi in _phi_family(S.size(n))], f"R{n}2->*"))
    star = point()
    for R, tops, label in targets:
        for top in tops:
            Rt = top.target
            right = terminal_map(Rt, star)
            found = False
            for j in D.index.elements:
                Tj = D.levels[j]
                sq = LiftingSquare(f.germs[j], right, top, terminal_map(Tj, star), label=label)
                if has_filler(sq, budget):
                    found = True
                    break
            if not found:
                return MonoResult(False, "lifting", (label, top))
    return MonoResult(True, "lifting")


def _to_two(S: SimplicialSet, R: SimplicialSet, phi: list[int]) -> SimplicialMap:
    """The map from a discrete S to the discrete two-point set given by phi on vertices."""

    def comp(n: int) -> list[int]:
        const = (0,) * (n + 1)
        return [R.apply(const, 0, phi[S.apply((0,), n, x)]) for x in range(S.size(n))]

    return SimplicialMap(S, R, model=comp)


@dataclass
class MonoRepair:
    source: ProObject
    level_map: LevelMap
    comparison: ProMap


def mono_level_representation(f: ProMap, budget: Budget | None = None) -> MonoRepair:
    """Replace source levels by images so every component is injective."""
    res = is_pro_mono(f, "direct")
    if not res.holds:
        raise ValueError("pro-map is not a monomorphism")
    L = level_representation(f, budget)
    K = L.source.index
    C = f.source
    m = C.least
    into: dict[str, SimplicialMap] = {}
    images: dict[str, SimplicialSet] = {}
    for n, (i, j) in L.reindexing.items():
        g = compose(L.components[n], C.bond(m, i))
        into[n] = g
        images[n] = image(g)
    Sp = ProObject(K, images, {})
    for a, b in K.pairs():
        tb = L.target.bond(a, b)
        Ia, Ib = images[a], images[b]
        Sp.bonds[(a, b)] = SimplicialMap(Ia, Ib, model=lambda n, tb=tb, Ia=Ia, Ib=Ib: [Ib.key_lookup(n, tb(n, y)) for y in Ia.level(n).keys])
    comps = {n: images[n].legs[0] for n in K.elements}
    lm = LevelMap(Sp, L.target, comps, dict(L.reindexing))
    comparison = ProMap(C, Sp, {n: corestrict(into[n], images[n]) for n in K.elements})
    return MonoRepair(Sp, lm, comparison)


# -- completion, mapping spaces, weak equivalences ---------------------------------------

def pro_complete_lean(X: SimplicialSet, bound: int = 4) -> ProObject:
    """The tower {cosk_n X} for n <= bound; ``units[n]`` is X -> cosk_n X."""
    levels = [coskeleton(X, n) for n in range(bound + 1)]
    steps = [
        SimplicialMap(levels[n], levels[n - 1], [list(range(levels[n].size(k))) for k in range(n)])
        for n in range(1, bound + 1)
    ]
    C = tower(levels, steps)
    C.units = {str(n): levels[n].legs[0] for n in range(bound + 1)}
    return C


def tower(levels: list[SimplicialSet], steps: list[SimplicialMap]) -> ProObject:
    """The tower levels[0] <- levels[1] <- ... with ``steps[n]: levels[n+1] -> levels[n]``."""
    top = len(levels) - 1
    if len(steps) != top:
        raise ValueError("a tower of k levels needs k - 1 bonds")
    P = IndexPoset.tower(top)
    bonds = {(str(n + 1), str(n)): b for n, b in enumerate(steps)}
    for a, b in P.pairs():
        if (a, b) not in bonds:
            chain = identity_map(levels[int(a)])
            for k in range(int(a), int(b), -1):
                chain = compose(bonds[(str(k), str(k - 1))], chain)
            bonds[(a, b)] = chain
    return ProObject(P, {str(n): L for n, L in enumerate(levels)}, bonds)


def completion_bijection(X: SimplicialSet, K: SimplicialSet, C: ProObject, budget: Budget | None = None) -> dict:
    """Send each f: X -> K to the pro-map C -> const K through the least tower level."""
    top = C.least
    L = C.levels[top]
    n = int(top)
    c = K.coskeletal_bound()
    if c is None or c > n:
        raise CapError("tower too short for the coskeletal degree of the target", required_cap=c)
    D = const(K)
    out = {}
    for f in hom_set(X, K, budget=budget):
        g = SimplicialMap(L, K, [list(f.comp(k)) for k in range(n + 1)])
        out[_map_key(f)] = ProMap(C, D, {"0": g})
    return out


def pro_map_space(C: ProObject, t: SimplicialSet, budget: Budget | None = None) -> SimplicialSet:
    """colim_i Map(C_i, t); each class has one cell at the least level, which names it."""
    m = C.least
    spaces = {i: mapping_space(C.levels[i], t, budget) for i in C.index.elements}
    base = spaces[m]
    top = base.mapping.top
    for n in range(top + 1):
        cells = [(i, x) for i in C.index.elements for x in range(spaces[i].size(n))]
        pos = {c: a for a, c in enumerate(cells)}
        uf = _UnionFind(len(cells))
        for k, i in C.index.pairs():
            r = precompose(spaces[i], C.bond(k, i), spaces[k])
            rc = r.comp(n)
            for x in range(spaces[i].size(n)):
                uf.union(pos[(i, x)], pos[(k, rc[x])])
        seen: dict[int, int] = {}
        for x in range(base.size(n)):
            r = uf.find(pos[(m, x)])
            if r in seen:
                raise RuntimeError("colimit identifies two least-level cells")
            seen[r] = x
        if any(uf.find(a) not in seen for a in range(len(cells))):
            raise RuntimeError("colimit class without a least-level cell")
    return base


def pro_map_space_map(f: ProMap, t: SimplicialSet, budget: Budget | None = None) -> SimplicialMap:
    """Map(D, t) -> Map(C, t) induced by f."""
    C, D = f.source, f.target
    MD = pro_map_space(D, t, budget)
    MC = pro_map_space(C, t, budget)
    return precompose(MD, f.germs[D.least], MC)


def is_pro_weak_equivalence(f: ProMap, tests: list[SimplicialSet], flavor: str = "kq", budget: Budget | None = None) -> str:
    """'yes', 'no' or 'unknown' (search budget exhausted)."""
    from .homotopy import is_dk_equivalence_qcat, is_weak_equivalence_kan
    from .lifting import PreconditionError, is_kan_complex, is_quasi_category
    from .limits import classify

    try:
        for t in tests:
            if not classify(t).is_lean:
                raise PreconditionError("test objects must be lean")
            fibrant = is_kan_complex(t, budget) if flavor == "kq" else is_quasi_category(t, budget)
            if not fibrant:
                raise PreconditionError(f"test object is not fibrant for the {flavor} flavor")
        for t in tests:
            g = pro_map_space_map(f, t, budget)
            if flavor == "kq":
                ok = is_weak_equivalence_kan(g, check=False, budget=budget)
            else:
                ok = is_dk_equivalence_qcat(g, check=False, budget=budget).verdict
            if not ok:
                return "no"
        return "yes"
    except BudgetExceeded:
        return "unknown"
