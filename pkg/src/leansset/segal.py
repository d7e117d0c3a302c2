"""Bisimplicial sets at desk scale: Segal and completeness checks, Sing and ev0.

A bisimplicial set is stored by its rows: for each outer degree t a simplicial
set ``row(t)`` in the inner direction, together with outer face and degeneracy
maps between consecutive rows. Columns are assembled on demand, and
``transpose`` swaps the two directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import simplex as sx
from .builders import delta, jnerve, nerve, nerve_map, point, simplex_map
from .category import FiniteCategory, Functor
from .hom import Budget, hom_degree, hom_set
from .homotopy import DKReport, _constant_at, component_index, is_weak_equivalence_kan, simplex_map_of
from .lifting import PreconditionError, classify_map, mapping_space, precompose
from .limits import matching_bijective, pair, product, pullback, pullback_pair, subobject, terminal_map
from .sset import COSKELETAL, SKELETAL, Level, SimplicialMap, SimplicialSet, compose, model_set

RowFn = Callable[[int], SimplicialSet]
OuterFn = Callable[[int, int], SimplicialMap]


class BisimplicialSet:
    """Rows ``row(t)`` with outer faces ``row(t) -> row(t-1)`` and degeneracies ``row(t) -> row(t+1)``.

    ``caps`` is (outer, inner): the degrees through which each direction is
    determined under coskeletal extension.
    """

    def __init__(self, caps: tuple[int, int], rows: RowFn, outer_face: OuterFn, outer_degen: OuterFn, name: str | None = None):
        self.caps = caps
        self._rows_fn = rows
        self._face_fn = outer_face
        self._degen_fn = outer_degen
        self.name = name
        self._rows: dict[int, SimplicialSet] = {}
        self._faces: dict[tuple[int, int], SimplicialMap] = {}
        self._degens: dict[tuple[int, int], SimplicialMap] = {}
        self._cols: dict[int, SimplicialSet] = {}
        self._origin: BisimplicialSet | None = None

    def row(self, t: int) -> SimplicialSet:
        if t not in self._rows:
            self._rows[t] = self._rows_fn(t)
        return self._rows[t]

    def outer_face(self, t: int, i: int) -> SimplicialMap:
        if (t, i) not in self._faces:
            self._faces[(t, i)] = self._face_fn(t, i)
        return self._faces[(t, i)]

    def outer_degen(self, t: int, j: int) -> SimplicialMap:
        if (t, j) not in self._degens:
            self._degens[(t, j)] = self._degen_fn(t, j)
        return self._degens[(t, j)]

    def size(self, t: int, n: int) -> int:
        return self.row(t).size(n)

    def sizes(self, top_t: int, top_n: int) -> list[list[int]]:
        return [[self.size(t, n) for n in range(top_n + 1)] for t in range(top_t + 1)]

    def outer_apply(self, theta: tuple[int, ...], t: int, n: int, x: int) -> int:
        """theta^* on X_{t,n} for an injective theta: [k] -> [t]."""
        missing = sorted(set(range(t + 1)) - set(theta), reverse=True)
        if len(missing) + len(theta) != t + 1:
            raise ValueError("outer_apply takes injective maps")
        cur = t
        for i in missing:
            x = self.outer_face(cur, i)(n, x)
            cur -= 1
        return x

    def column(self, n: int) -> SimplicialSet:
        """The simplicial set t -> X_{t,n} in the outer direction."""
        if n in self._cols:
            return self._cols[n]
        if self._origin is not None:
            self._cols[n] = self._origin.row(n)
            return self._cols[n]

        def build(t: int, C: SimplicialSet) -> Level:
            R = self.row(t)
            faces = [self.outer_face(t, i).comp(n) for i in range(t + 1)] if t > 0 else []
            degens = [self.outer_degen(t - 1, j).comp(n) for j in range(t)] if t > 0 else []
            return Level(list(R.ids(n)), [list(f) for f in faces], [list(d) for d in degens], keys=list(range(R.size(n))))

        C = SimplicialSet(self.caps[0], COSKELETAL, model=build, name=f"{self.name}[:,{n}]")
        self._cols[n] = C
        return C

    def inner_face(self, n: int, i: int) -> SimplicialMap:
        """d_i on columns: column(n) -> column(n-1)."""
        if self._origin is not None:
            return self._origin.outer_face(n, i)
        return SimplicialMap(self.column(n), self.column(n - 1), model=lambda t: [self.row(t).d(n, i, x) for x in range(self.size(t, n))])

    def inner_degen(self, n: int, j: int) -> SimplicialMap:
        if self._origin is not None:
            return self._origin.outer_degen(n, j)
        return SimplicialMap(self.column(n), self.column(n + 1), model=lambda t: [self.row(t).s(n, j, x) for x in range(self.size(t, n))])

    def transpose(self) -> "BisimplicialSet":
        T = BisimplicialSet(
            (self.caps[1], self.caps[0]),
            self.column,
            self.inner_face,
            self.inner_degen,
            name=f"{self.name}^T",
        )
        T._origin = self
        return T

    def violations(self, top_t: int | None = None, top_n: int | None = None) -> list[str]:
        """Bisimplicial identities through the given bidegree (default: caps + 1)."""
        T = self.caps[0] + 1 if top_t is None else top_t
        N = self.caps[1] + 1 if top_n is None else top_n
        bad = []
        for t in range(T + 1):
            bad.extend(f"row {t}: {msg}" for msg in self.row(t).identity_violations(N))
        for n in range(N + 1):
            bad.extend(f"column {n}: {msg}" for msg in self.column(n).identity_violations(T))
        for t in range(1, T + 1):
            for i in range(t + 1):
                bad.extend(f"outer d{i} at {t}: {msg}" for msg in self.outer_face(t, i).violations(N))
            for j in range(t):
                bad.extend(f"outer s{j} at {t - 1}: {msg}" for msg in self.outer_degen(t - 1, j).violations(N))
        return bad


@dataclass
class BisimplicialMap:
    source: BisimplicialSet
    target: BisimplicialSet
    rows: Callable[[int], SimplicialMap]
    _cache: dict = field(default_factory=dict, repr=False)

    def row(self, t: int) -> SimplicialMap:
        if t not in self._cache:
            self._cache[t] = self.rows(t)
        return self._cache[t]

    def violations(self, top_t: int | None = None, top_n: int | None = None) -> list[str]:
        X, Y = self.source, self.target
        T = X.caps[0] + 1 if top_t is None else top_t
        N = X.caps[1] + 1 if top_n is None else top_n
        bad = []
        for t in range(T + 1):
            bad.extend(f"row {t}: {msg}" for msg in self.row(t).violations(N))
        for t in range(1, T + 1):
            for i in range(t + 1):
                a = compose(Y.outer_face(t, i), self.row(t))
                b = compose(self.row(t - 1), X.outer_face(t, i))
                if not a.equals(b, N):
                    bad.append(f"does not commute with outer d{i} at {t}")
        return bad


def _bound(X: SimplicialSet) -> int:
    c = X.coskeletal_bound()
    return X.cap if c is None else c


# -- constructions -------------------------------------------------------------------

def external_product(X: SimplicialSet, Y: SimplicialSet) -> BisimplicialSet:
    """(X box Y)_{t,n} = X_t x Y_n."""
    dy = Y.skeletal_dim() if Y.extension == SKELETAL else None

    def row(t: int) -> SimplicialSet:
        R = model_set(
            Y.cap,
            Y.extension,
            lambda m: [(x, y) for x in range(X.size(t)) for y in range(Y.size(m))],
            lambda m, i, k: (k[0], Y.d(m, i, k[1])),
            lambda m, j, k: (k[0], Y.s(m, j, k[1])),
            lambda m, k: f"{X.id(t, k[0])}|{Y.id(m, k[1])}",
            name=f"{X.name}_{t}x{Y.name}",
        )
        if dy is not None:
            R.hint(skeletal_dim=dy if X.size(t) else -1)
        return R

    B: BisimplicialSet

    def face(t: int, i: int) -> SimplicialMap:
        S, T = B.row(t), B.row(t - 1)
        return SimplicialMap(S, T, model=lambda m: [T.key_lookup(m, (X.d(t, i, x), y)) for x, y in S.level(m).keys])

    def degen(t: int, j: int) -> SimplicialMap:
        S, T = B.row(t), B.row(t + 1)
        return SimplicialMap(S, T, model=lambda m: [T.key_lookup(m, (X.s(t, j, x), y)) for x, y in S.level(m).keys])

    # a coproduct of c-coskeletal sets is only max(c, 1)-coskeletal
    B = BisimplicialSet((max(_bound(X), 1), max(_bound(Y), 1)), row, face, degen, name=f"{X.name}[x]{Y.name}")
    B.factors = (X, Y)
    return B


def discrete_nerve(C: FiniteCategory) -> BisimplicialSet:
    """The nerve of C placed in the outer direction, constant in the inner one."""
    N = nerve(C)
    B = external_product(N, point())
    B.name = f"disc N({C.name})"
    B.category = C
    return B


def discrete_nerve_map(F: Functor, X: BisimplicialSet, Y: BisimplicialSet) -> BisimplicialMap:
    """The map of discrete nerves induced by a functor (X, Y from ``discrete_nerve``)."""
    NX, NY = X.factors[0], Y.factors[0]
    f = nerve_map(F, NX, NY)

    def row(t: int) -> SimplicialMap:
        S, T = X.row(t), Y.row(t)
        ft = f.comp(t)
        return SimplicialMap(S, T, model=lambda m: [T.key_lookup(m, (ft[x], y)) for x, y in S.level(m).keys])

    return BisimplicialMap(X, Y, row)


def sub_bisimplicial(B: BisimplicialSet, member: Callable[[int, int, object], bool], name: str | None = None) -> BisimplicialSet:
    """Cells of B whose row key satisfies ``member(t, n, key)``; ``.inclusion`` is the map into B."""

    def row(t: int) -> SimplicialSet:
        R = B.row(t)
        keep = lambda m: [x for x, k in enumerate(R.level(m).keys) if member(t, m, k)]
        return subobject(R, keep, R.extension, R.cap, name=f"{name}_{t}")

    S: BisimplicialSet

    def face(t: int, i: int) -> SimplicialMap:
        A, Z, d = S.row(t), S.row(t - 1), B.outer_face(t, i)
        return SimplicialMap(A, Z, model=lambda m: [Z.key_lookup(m, d(m, y)) for y in A.level(m).keys])

    def degen(t: int, j: int) -> SimplicialMap:
        A, Z, s = S.row(t), S.row(t + 1), B.outer_degen(t, j)
        return SimplicialMap(A, Z, model=lambda m: [Z.key_lookup(m, s(m, y)) for y in A.level(m).keys])

    S = BisimplicialSet(B.caps, row, face, degen, name=name)
    S.inclusion = BisimplicialMap(S, B, lambda t: S.row(t).legs[0])
    return S


@dataclass
class LocalizationMap:
    """An inclusion of a union of two sub-objects, with the pieces kept for the pushout check."""

    kind: str
    inclusion: BisimplicialMap
    pieces: tuple[Callable[[int, int, object], bool], Callable[[int, int, object], bool]]

    @property
    def domain(self) -> BisimplicialSet:
        return self.inclusion.source

    @property
    def codomain(self) -> BisimplicialSet:
        return self.inclusion.target

    def pushout_violations(self, top_t: int, top_n: int) -> list[str]:
        """The union has |A| + |B| - |A cap B| cells in every bidegree, as a pushout over the intersection must."""
        a, b = self.pieces
        bad = []
        for t in range(top_t + 1):
            for n in range(top_n + 1):
                keys = self.codomain.row(t).level(n).keys
                na = sum(1 for k in keys if a(t, n, k))
                nb = sum(1 for k in keys if b(t, n, k))
                nab = sum(1 for k in keys if a(t, n, k) and b(t, n, k))
                if self.domain.size(t, n) != na + nb - nab:
                    bad.append(f"bidegree ({t},{n}) is not the pushout of its pieces")
        return bad


def localization_map(kind: str, t: int = 2, n: int = 0) -> LocalizationMap:
    """``segal``: Sp Delta^t box Delta^n cup Delta^t box dDelta^n -> Delta^t box Delta^n.
    ``completeness``: {0} box Delta^n cup J box dDelta^n -> J box Delta^n.
    """
    if kind == "segal":
        if t < 2:
            raise ValueError("segal localization maps need t >= 2")
        outer, Dn = delta(t), delta(n)
        steps = {(a, a + 1) for a in range(t)}

        def in_spine(seq: tuple) -> bool:
            vs = tuple(sorted(set(seq)))
            return len(vs) == 1 or vs in steps

        first = lambda s, m, k: in_spine(outer.key(s, k[0]))
        label = f"segal({t},{n})"
    elif kind == "completeness":
        outer, Dn = jnerve(1), delta(n)
        first = lambda s, m, k: set(outer.key(s, k[0])) == {0}
        label = f"completeness({n})"
    else:
        raise ValueError(f"unknown localization kind {kind!r}")
    B = external_product(outer, Dn)
    second = lambda s, m, k: len(set(Dn.key(m, k[1]))) < n + 1
    dom = sub_bisimplicial(B, lambda s, m, k: first(s, m, k) or second(s, m, k), name=f"dom {label}")
    return LocalizationMap(label, dom.inclusion, (first, second))


# -- rows, columns and matching objects -------------------------------------------------

def row(X: BisimplicialSet, t: int) -> SimplicialSet:
    return X.row(t)


def ev0(X: BisimplicialSet) -> SimplicialSet:
    """(ev0 X)_t = X_{t,0}."""
    return X.column(0)


def matching_object(X: BisimplicialSet, t: int) -> tuple[SimplicialSet, SimplicialMap]:
    """M_t X (limit over the outer boundary of Delta^t) and the map row(t) -> M_t."""
    if t == 0:
        P = point()
        return P, terminal_map(X.row(0), P)
    prev = X.row(t - 1)

    def outer_faces(m: int, y: int) -> tuple[int, ...]:
        if t < 2:
            return ()
        return tuple(X.outer_face(t - 1, i)(m, y) for i in range(t))

    def cells(m: int) -> list[tuple[int, ...]]:
        fs = [outer_faces(m, y) for y in range(prev.size(m))]
        by_prefix: dict[tuple, list[int]] = {}
        for y, f in enumerate(fs):
            for j in range(t + 1):
                by_prefix.setdefault((j, f[:j] if t >= 2 else ()), []).append(y)
        out: list[tuple[int, ...]] = []

        def extend(acc: list[int]) -> None:
            j = len(acc)
            if j == t + 1:
                out.append(tuple(acc))
                return
            want = tuple(fs[acc[i]][j - 1] for i in range(j)) if t >= 2 else ()
            for y in by_prefix.get((j, want), []):
                extend(acc + [y])

        extend([])
        return out

    M = model_set(
        prev.cap,
        COSKELETAL,
        cells,
        lambda m, i, k: tuple(prev.d(m, i, y) for y in k),
        lambda m, j, k: tuple(prev.s(m, j, y) for y in k),
        lambda m, k: "(" + ",".join(prev.id(m, y) for y in k) + ")",
        name=f"M{t}",
    )
    R = X.row(t)
    legs = [X.outer_face(t, i) for i in range(t + 1)]
    to_m = SimplicialMap(R, M, model=lambda m: [M.key_lookup(m, tuple(g(m, x) for g in legs)) for x in range(R.size(m))])
    return M, to_m


# -- classifiers ---------------------------------------------------------------------------

@dataclass
class LeanReport:
    doubly_lean: bool
    rows: dict[int, bool]
    columns: dict[int, bool]

    def as_dict(self) -> dict:
        return {"doublyLean": self.doubly_lean, "rows": self.rows, "columns": self.columns}


def doubly_lean(X: BisimplicialSet) -> LeanReport:
    """Matching maps are bijective one degree past the cap, on rows through outer cap + 1 and columns through inner cap + 1."""
    T, N = X.caps
    rows = {t: matching_bijective(X.row(t), N + 1) for t in range(T + 2)}
    cols = {n: matching_bijective(X.column(n), T + 1) for n in range(N + 2)}
    return LeanReport(all(rows.values()) and all(cols.values()), rows, cols)


def is_reedy_fibrant_desk(X: BisimplicialSet, budget: Budget | None = None) -> bool:
    """Every matching map row(t) -> M_t through the outer cap + 1 is a Kan fibration."""
    for t in range(X.caps[0] + 2):
        _, g = matching_object(X, t)
        if not classify_map(g, "kanFibration", budget).holds:
            return False
    return True


def _require_reedy(X: BisimplicialSet, budget: Budget | None) -> None:
    if not is_reedy_fibrant_desk(X, budget):
        raise PreconditionError(f"{X.name} is not Reedy fibrant (matching maps are not Kan fibrations)")


def segal_object(X: BisimplicialSet, t: int) -> tuple[SimplicialSet, SimplicialMap]:
    """row(1) x_row(0) ... x_row(0) row(1) (t factors) and the Segal map from row(t)."""
    E = X.row(1)
    src = X.outer_face(1, 1)
    tgt = X.outer_face(1, 0)

    def cells(m: int) -> list[tuple[int, ...]]:
        s, d = src.comp(m), tgt.comp(m)
        by_src: dict[int, list[int]] = {}
        for e in range(E.size(m)):
            by_src.setdefault(s[e], []).append(e)
        chains = [(e,) for e in range(E.size(m))]
        for _ in range(t - 1):
            chains = [ch + (e,) for ch in chains for e in by_src.get(d[ch[-1]], [])]
        return chains

    S = model_set(
        E.cap,
        COSKELETAL,
        cells,
        lambda m, i, k: tuple(E.d(m, i, e) for e in k),
        lambda m, j, k: tuple(E.s(m, j, e) for e in k),
        lambda m, k: "|".join(E.id(m, e) for e in k),
        name=f"Segal{t}",
    )
    R = X.row(t)
    edges = [(a, a + 1) for a in range(t)]
    to_s = SimplicialMap(R, S, model=lambda m: [S.key_lookup(m, tuple(X.outer_apply(e, t, m, x) for e in edges)) for x in range(R.size(m))])
    return S, to_s


def check_segal(X: BisimplicialSet, budget: Budget | None = None, check: bool = True) -> bool:
    """Segal maps for 2 <= t <= outer cap + 1 are weak equivalences of Kan complexes."""
    if check:
        _require_reedy(X, budget)
    for t in range(2, X.caps[0] + 2):
        _, g = segal_object(X, t)
        if not is_weak_equivalence_kan(g, check=check, budget=budget):
            return False
    return True


def completeness_object(X: BisimplicialSet, budget: Budget | None = None) -> tuple[SimplicialSet, SimplicialMap]:
    """The inner simplicial set n -> Hom(J, column(n)) and the constant-map comparison from row(0)."""
    J = jnerve(1)
    homs: dict[int, tuple[int, dict]] = {}

    def maps(n: int) -> tuple[int, list[SimplicialMap], dict]:
        if n not in homs:
            C = X.column(n)
            K = hom_degree(J, C)
            hs = hom_set(J, C, budget=budget)
            homs[n] = (K, hs, {h.key(K): a for a, h in enumerate(hs)})
        return homs[n]

    def cells(n: int) -> list[int]:
        return list(range(len(maps(n)[1])))

    def act(n: int, n2: int, g: SimplicialMap, a: int) -> int:
        K2, _, idx2 = maps(n2)
        h = maps(n)[1][a]
        return idx2[tuple(tuple(g(m, v) for v in h.comp(m)) for m in range(K2 + 1))]

    W = model_set(
        X.caps[1],
        COSKELETAL,
        cells,
        lambda n, i, a: act(n, n - 1, X.inner_face(n, i), a),
        lambda n, j, a: act(n, n + 1, X.inner_degen(n, j), a),
        lambda n, a: "<" + ",".join(X.row(m).id(n, v) for m in range(2) for v in maps(n)[1][a].comp(m)) + ">",
        name=f"J-points({X.name})",
    )
    R = X.row(0)

    def comp(n: int) -> list[int]:
        K, _, idx = maps(n)
        C = X.column(n)
        out = []
        for x in range(R.size(n)):
            key = tuple(tuple(C.apply((0,) * (m + 1), 0, x) for _ in range(J.size(m))) for m in range(K + 1))
            out.append(idx[key])
        return out

    return W, SimplicialMap(R, W, model=comp)


def check_complete(X: BisimplicialSet, budget: Budget | None = None, check: bool = True) -> bool:
    """row(0) -> Hom(J, X) along the outer direction is a weak equivalence."""
    if check:
        _require_reedy(X, budget)
    _, g = completeness_object(X, budget)
    return is_weak_equivalence_kan(g, check=check, budget=budget)


# -- mapping spaces and DK equivalences ----------------------------------------------------

def css_map_space(X: BisimplicialSet, x: int, y: int) -> SimplicialSet:
    """Fiber of row(1) -> row(0) x row(0) (source, target) over the vertex pair (x, y)."""
    ends = pair(X.outer_face(1, 1), X.outer_face(1, 0))
    P = ends.target
    v = P.key_lookup(0, (x, y))
    return pullback(ends, _constant_at(P, v))


def css_map_space_map(f: BisimplicialMap, x: int, y: int) -> SimplicialMap:
    X, Y = f.source, f.target
    fx, fy = f.row(0)(0, x), f.row(0)(0, y)
    S, T = css_map_space(X, x, y), css_map_space(Y, fx, fy)
    leg = compose(f.row(1), S.legs[0])
    return pullback_pair(T, leg, terminal_map(S, point()))


def _require_css(X: BisimplicialSet, side: str, budget: Budget | None) -> None:
    if not is_reedy_fibrant_desk(X, budget):
        raise PreconditionError(f"{side} fails isReedyFibrantDesk")
    if not check_segal(X, budget, check=False):
        raise PreconditionError(f"{side} fails checkSegal")
    if not check_complete(X, budget, check=False):
        raise PreconditionError(f"{side} fails checkComplete")


def is_dk_equivalence_css(f: BisimplicialMap, check_preconditions: bool = True, budget: Budget | None = None) -> DKReport:
    """Fully faithful on all mapping spaces and surjective on pi_0 of row(0)."""
    X, Y = f.source, f.target
    if check_preconditions:
        _require_css(X, "source", budget)
        _require_css(Y, "target", budget)
    f0 = f.row(0)
    cy = component_index(Y.row(0))
    hit = {cy[f0(0, v)] for v in range(X.row(0).size(0))}
    ess = hit == set(cy)
    ff = True
    nx = X.row(0).size(0)
    for x in range(nx):
        for y in range(nx):
            g = css_map_space_map(f, x, y)
            if g.source.is_empty() and g.target.is_empty():
                continue
            if g.source.is_empty() != g.target.is_empty() or not is_weak_equivalence_kan(g, check=False, budget=budget):
                ff = False
                break
        if not ff:
            break
    return DKReport(ess, ff)


def is_rowwise_weak_equivalence(f: BisimplicialMap, budget: Budget | None = None) -> bool:
    """Every row map through the outer cap + 1 is a weak equivalence of Kan complexes."""
    top = max(f.source.caps[0], f.target.caps[0]) + 1
    return all(is_weak_equivalence_kan(f.row(t), budget=budget) for t in range(top + 1))


# -- Sing and boundaries of J ---------------------------------------------------------------

def boundary_j(k: int) -> SimplicialSet:
    """dJ^{k+1}: the union of the k+2 faces J^k inside J^{k+1}; ``.legs[0]`` is the inclusion."""
    if k < 0:
        raise ValueError("negative dimension")
    J = jnerve(k + 1)
    full = set(range(k + 2))
    member = lambda m: [x for x, s in enumerate(J.level(m).keys) if set(s) != full]
    return subobject(J, member, COSKELETAL, max(J.cap, k + 1), name=f"dJ{k + 1}")


def sing_j(X: SimplicialSet, budget: Budget | None = None) -> BisimplicialSet:
    """Sing(X)_{t,n} = Hom(Delta^t x J^n, X); column n is Map(J^n, X)."""
    c = X.coskeletal_bound()
    if c is None:
        raise PreconditionError("Sing needs a lean input")
    cols = lambda n: mapping_space(jnerve(n), X, budget)

    def face(n: int, i: int) -> SimplicialMap:
        u = simplex_map(sx.coface(n, i), jnerve(n - 1), jnerve(n))
        return precompose(cols(n), u, cols(n - 1))

    def degen(n: int, j: int) -> SimplicialMap:
        u = simplex_map(sx.codegeneracy(n, j), jnerve(n + 1), jnerve(n))
        return precompose(cols(n), u, cols(n + 1))

    Q = BisimplicialSet((c, c), cols, face, degen, name=f"Sing({X.name})^T")
    S = Q.transpose()
    S.name = f"Sing({X.name})"
    S.caps = (c, c)
    S.base = X
    return S


def ev0_sing_comparison(X: SimplicialSet, budget: Budget | None = None) -> SimplicialMap:
    """The isomorphism X -> ev0 Sing(X) sending an m-simplex to Delta^m x J^0 -> Delta^m -> X."""
    M = mapping_space(jnerve(0), X, budget)
    md = M.mapping
    J0 = jnerve(0)
    comps = []
    for m in range(md.top + 1):
        proj = product(delta(m), J0).legs[0]
        K = md.keydeg[m]
        comps.append([md.index[m][compose(simplex_map_of(X, m, x), proj).key(K)] for x in range(X.size(m))])
    return SimplicialMap(X, M, comps)


def ev0_sing_is_identity(X: SimplicialSet, upto: int | None = None, budget: Budget | None = None) -> bool:
    """ev0 Sing(X) is X: the comparison is a simplicial bijection through the given degree."""
    S = sing_j(X, budget)
    E = ev0(S)
    g = ev0_sing_comparison(X, budget)
    top = (X.coskeletal_bound() or X.cap) + 2 if upto is None else upto
    if g.target is not E:
        raise RuntimeError("Sing column 0 is not the cached mapping space")
    if g.violations(top):
        return False
    return all(sorted(g.comp(m)) == list(range(E.size(m))) for m in range(top + 1))
