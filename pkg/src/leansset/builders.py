"""Standard complexes: simplices, boundaries, horns, spines, J^t, H, R_n 2 and nerves."""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Sequence

from . import simplex as sx
from .category import FiniteCategory, codiscrete
from .sset import COSKELETAL, SKELETAL, SimplicialMap, SimplicialSet, identity_map, model_set, seq_id


def _drop(seq: tuple, i: int) -> tuple:
    return seq[:i] + seq[i + 1:]


def _double(seq: tuple, j: int) -> tuple:
    return seq[: j + 1] + seq[j:]


def simplicial_complex(n: int, facets: Iterable[Sequence[int]], name: str | None = None) -> SimplicialSet:
    """Sub-simplicial set of the n-simplex generated by the given vertex sets."""
    if n < 0:
        raise ValueError("negative dimension")
    fs = [frozenset(f) for f in facets]
    dim = max((len(f) - 1 for f in fs), default=-1)

    def cells(m: int) -> list[tuple[int, ...]]:
        return [s for s in sx.monotone_maps(m, n) if any(set(s) <= f for f in fs)]

    X = model_set(
        max(dim, 0),
        SKELETAL,
        cells,
        lambda m, i, k: _drop(k, i),
        lambda m, j, k: _double(k, j),
        lambda m, k: seq_id(k),
        name=name,
    )
    X.hint(skeletal_dim=dim)
    X.vertices_n = n
    return X


@lru_cache(maxsize=None)
def delta(n: int) -> SimplicialSet:
    return simplicial_complex(n, [range(n + 1)], name=f"Delta{n}")


@lru_cache(maxsize=None)
def boundary(n: int) -> SimplicialSet:
    if n < 0:
        raise ValueError("negative dimension")
    facets = [[a for a in range(n + 1) if a != i] for i in range(n + 1)] if n > 0 else []
    return simplicial_complex(n, facets, name=f"dDelta{n}")


@lru_cache(maxsize=None)
def horn(n: int, k: int) -> SimplicialSet:
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"horn index {k} out of range for dimension {n}")
    facets = [[a for a in range(n + 1) if a != i] for i in range(n + 1) if i != k]
    return simplicial_complex(n, facets, name=f"Lambda{n}_{k}")


@lru_cache(maxsize=None)
def spine(t: int) -> SimplicialSet:
    if t < 0:
        raise ValueError("negative dimension")
    facets = [[a, a + 1] for a in range(t)] if t > 0 else [[0]]
    return simplicial_complex(t, facets, name=f"Sp{t}")


@lru_cache(maxsize=None)
def point() -> SimplicialSet:
    return delta(0)


@lru_cache(maxsize=None)
def empty() -> SimplicialSet:
    return simplicial_complex(0, [], name="empty")


@lru_cache(maxsize=None)
def vertex_set(k: int) -> SimplicialSet:
    """The discrete simplicial set on k points."""
    return simplicial_complex(max(k - 1, 0), [[a] for a in range(k)], name=f"disc{k}")


def inclusion(A: SimplicialSet, B: SimplicialSet) -> SimplicialMap:
    """Inclusion between two sub-complexes of a common simplex (matched by vertex sequences)."""
    return SimplicialMap(A, B, model=lambda m: [B.key_lookup(m, k) for k in A.level(m).keys])


def simplex_map(theta: Sequence[int], A: SimplicialSet, B: SimplicialSet) -> SimplicialMap:
    """Map between sub-complexes of simplices induced by a vertex map theta."""
    th = tuple(theta)
    return SimplicialMap(A, B, model=lambda m: [B.key_lookup(m, tuple(th[v] for v in k)) for k in A.level(m).keys])


@lru_cache(maxsize=None)
def jnerve(t: int) -> SimplicialSet:
    """Nerve of the codiscrete groupoid on t+1 objects (the 0-coskeleton of t+1 points)."""
    if t < 0:
        raise ValueError("negative dimension")
    X = model_set(
        1,
        COSKELETAL,
        lambda m: list(iproduct(range(t + 1), repeat=m + 1)),
        lambda m, i, k: _drop(k, i),
        lambda m, j, k: _double(k, j),
        lambda m, k: seq_id(k),
        name=f"J{t}",
    )
    X.hint(coskeletal=0)
    X._memo["nerve_of"] = codiscrete(t + 1)
    X._memo["nerve_keys"] = "sequence"
    return X


@lru_cache(maxsize=None)
def rkan_two(n: int) -> SimplicialSet:
    """R_n 2: m-simplices are functions from monotone maps [n] -> [m] to {0, 1}."""
    if n < 0:
        raise ValueError("negative dimension")

    def cells(m: int) -> list[tuple[int, ...]]:
        k = len(sx.monotone_maps(n, m))
        return list(iproduct((0, 1), repeat=k))

    def act(m_from: int, m_to: int, theta: tuple[int, ...], key: tuple[int, ...]) -> tuple[int, ...]:
        # (theta^* f)(phi) = f(theta o phi) for theta: [m_to] -> [m_from]
        src = {p: a for a, p in enumerate(sx.monotone_maps(n, m_from))}
        return tuple(key[src[sx.compose(theta, phi)]] for phi in sx.monotone_maps(n, m_to))

    X = model_set(
        n,
        COSKELETAL,
        cells,
        lambda m, i, k: act(m, m - 1, sx.coface(m, i), k),
        lambda m, j, k: act(m, m + 1, sx.codegeneracy(m, j), k),
        lambda m, k: "".join(map(str, k)),
        name=f"R{n}2",
    )
    return X


def nerve(C: FiniteCategory) -> SimplicialSet:
    """Nerve of a finite category: m-simplices are composable chains of m arrows."""

    def cells(m: int) -> list[tuple[int, ...]]:
        if m == 0:
            return [(x,) for x in range(C.n_objects)]
        chains: list[tuple[int, ...]] = [(f,) for f in range(C.n_arrows)]
        for _ in range(m - 1):
            chains = [ch + (g,) for ch in chains for g in C.out_arrows(C.tgt[ch[-1]])]
        return chains

    def face(m: int, i: int, k: tuple[int, ...]) -> tuple[int, ...]:
        if m == 1:
            return (C.tgt[k[0]],) if i == 0 else (C.src[k[0]],)
        if i == 0:
            return k[1:]
        if i == m:
            return k[:-1]
        return k[: i - 1] + (C.comp[(k[i], k[i - 1])],) + k[i + 1:]

    def degen(m: int, j: int, k: tuple[int, ...]) -> tuple[int, ...]:
        if m == 0:
            return (C.ident[k[0]],)
        obj = C.src[k[0]] if j == 0 else C.tgt[k[j - 1]]
        return k[:j] + (C.ident[obj],) + k[j:]

    def ident(m: int, k: tuple[int, ...]) -> str:
        if m == 0:
            return C.objects[k[0]]
        return "|".join(C.arrows[a] for a in k)

    X = model_set(2, COSKELETAL, cells, face, degen, ident, name=f"N({C.name})")
    X.category = C
    X._memo["nerve_of"] = C
    X._memo["nerve_keys"] = "chain"
    return X


@lru_cache(maxsize=None)
def walking_h() -> SimplicialSet:
    """Two 2-simplices sigma, tau glued along d0(sigma) = d2(tau) = f, with both d1 edges collapsed.

    Vertex ``0`` is the source of f and ``1`` its target; g = d2(sigma) and
    h = d0(tau) both run from 1 to 0.
    """
    from .limits import copair, coproduct, pushout

    d1, d2 = delta(1), delta(2)
    two = coproduct(d2, d2)
    sig, tau = two.legs
    edges = coproduct(d1, d1)
    fold = copair(edges, identity_map(d1), identity_map(d1))
    glue = pushout(copair(edges, _edge_into(d1, d2, (1, 2), sig), _edge_into(d1, d2, (0, 1), tau)), fold)
    q = glue.legs[0]
    to_glue = copair(
        edges,
        compose_maps(q, _edge_into(d1, d2, (0, 2), sig)),
        compose_maps(q, _edge_into(d1, d2, (0, 2), tau)),
    )
    pts = coproduct(point(), point())
    collapse = copair(edges, _const(d1, pts, 0), _const(d1, pts, 1))
    H = pushout(to_glue, collapse)
    into = H.legs[0]
    cell = lambda m, leg, k: into(m, q(m, leg(m, d2.key_lookup(m, k))))
    names = {
        (0, cell(0, sig, (1,))): "0",
        (0, cell(0, sig, (0,))): "1",
        (1, cell(1, sig, (1, 2))): "f",
        (1, cell(1, sig, (0, 1))): "g",
        (1, cell(1, tau, (1, 2))): "h",
        (2, cell(2, sig, (0, 1, 2))): "sigma",
        (2, cell(2, tau, (0, 1, 2))): "tau",
    }
    return _relabel(H, names, "H")


def _edge_into(d1: SimplicialSet, d2: SimplicialSet, verts: tuple[int, int], leg: SimplicialMap) -> SimplicialMap:
    return compose_maps(leg, simplex_map(verts, d1, d2))


def _const(X: SimplicialSet, Y: SimplicialSet, side: int) -> SimplicialMap:
    cell = lambda m: Y.key_lookup(m, (side, 0))
    return SimplicialMap(X, Y, model=lambda m: [cell(m)] * X.size(m))


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    return SimplicialMap(f.source, g.target, model=lambda m: [g(m, v) for v in f.comp(m)])


def _relabel(X: SimplicialSet, names: dict[tuple[int, int], str], name: str) -> SimplicialSet:
    """Copy a finite complex into stored data, naming nondegenerate cells from ``names``."""
    from .sset import Level

    top = max(X.skeletal_dim(), 0)
    levels: list[Level] = []
    for m in range(top + 1):
        lvl = X.level(m)
        ids = []
        for x, (sig, d, y) in enumerate(X.ez(m)):
            base = names[(d, y)]
            ids.append(base if d == m else f"s{seq_id(sig)}({base})")
        levels.append(Level(ids, lvl.faces, lvl.degens))
    return SimplicialSet(top, SKELETAL, levels=levels, name=name)


def nerve_map(F, X: SimplicialSet | None = None, Y: SimplicialSet | None = None) -> SimplicialMap:
    """N(F): N(C) -> N(D) for a functor F, acting on chains."""
    X = nerve(F.source) if X is None else X
    Y = nerve(F.target) if Y is None else Y

    def comp(m: int) -> list[int]:
        if m == 0:
            return [Y.key_lookup(0, (F.on_objects[k[0]],)) for k in X.level(0).keys]
        return [Y.key_lookup(m, tuple(F.on_arrows[a] for a in k)) for k in X.level(m).keys]

    return SimplicialMap(X, Y, model=comp)
