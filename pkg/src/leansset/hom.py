"""Backtracking enumeration of simplicial maps.

A map X -> Y is determined by its values on the nondegenerate simplices of X
in degrees <= N, where N is the dimension of X (if X is finite) or a
coskeletal degree of Y. Candidates for a simplex are looked up by the tuple of
images of its faces, so the search only ever proposes face-compatible values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .sset import BudgetExceeded, CapError, SimplicialMap, SimplicialSet

DEFAULT_BUDGET = 10**7


@dataclass
class Budget:
    """Node counter shared by one logical computation."""

    limit: int = DEFAULT_BUDGET
    used: int = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"search budget of {self.limit} nodes exhausted")


_default_limit = DEFAULT_BUDGET


def default_budget() -> Budget:
    """A fresh counter for a search started without an explicit budget."""
    return Budget(_default_limit)


def set_default_budget(limit: int) -> None:
    global _default_limit
    _default_limit = limit


def hom_degree(X: SimplicialSet, Y: SimplicialSet) -> int:
    """Degree through which maps X -> Y are determined."""
    options = []
    d = X.skeletal_dim()
    if d is not None:
        options.append(max(d, 0))
    c = Y.coskeletal_bound()
    if c is not None:
        options.append(c)
    if not options:
        raise CapError("maps are not determined by a finite truncation: source is not finite and target is not coskeletal")
    return min(options)


def search_order(X: SimplicialSet, N: int) -> list[tuple[int, int]]:
    """Nondegenerate cells of degrees <= N, each placed right after the last of its faces.

    Edges are taken in order of their larger vertex so that higher simplices
    close (and prune the search) as early as possible.
    """
    ez = [X.ez(m) for m in range(N + 1)]
    roots: dict[tuple[int, int], set[tuple[int, int]]] = {}
    waiting: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for m in range(1, N + 1):
        for x in X.nondegenerate(m):
            r = set()
            for i in range(m + 1):
                _, d, y = ez[m - 1][X.d(m, i, x)]
                r.add((d, y))
            roots[(m, x)] = r
            for c in r:
                waiting.setdefault(c, []).append((m, x))
    placed: set[tuple[int, int]] = set()
    order: list[tuple[int, int]] = []

    def place(c: tuple[int, int]) -> None:
        stack = [c]
        while stack:
            cell = stack.pop()
            if cell in placed:
                continue
            placed.add(cell)
            order.append(cell)
            ready = [w for w in waiting.get(cell, ()) if w not in placed and roots[w] <= placed]
            for w in sorted(ready, reverse=True):
                stack.append(w)

    if N >= 1:
        edges = sorted(X.nondegenerate(1), key=lambda e: (max(X.d(1, 0, e), X.d(1, 1, e)), min(X.d(1, 0, e), X.d(1, 1, e)), e))
        for e in edges:
            for v in sorted({X.d(1, 1, e), X.d(1, 0, e)}):
                place((0, v))
            place((1, e))
    for m in range(N + 1):
        for x in X.nondegenerate(m):
            if (m, x) not in placed:
                for c in sorted(roots.get((m, x), ())):
                    place(c)
                place((m, x))
    return order


def enumerate_maps(
    X: SimplicialSet,
    Y: SimplicialSet,
    degree: int | None = None,
    fixed: dict[tuple[int, int], int] | None = None,
    allowed: Callable[[int, int, int], bool] | None = None,
    budget: Budget | None = None,
    injective: bool = False,
) -> Iterator[list[list[int]]]:
    """Yield component tables (degrees 0..N) of all maps X -> Y.

    ``fixed`` pins cells ``(degree, cell) -> target cell``; ``allowed(m, x, y)``
    filters candidate values for nondegenerate cells. With ``injective`` the
    search only keeps maps injective on nondegenerate cells.
    """
    N = hom_degree(X, Y) if degree is None else degree
    budget = budget or default_budget()
    fixed = fixed or {}
    comps = [[-1] * X.size(m) for m in range(N + 1)]
    order = search_order(X, N)
    witness = [X.degenerate_witness(m) for m in range(N + 1)]
    findex = [Y.face_index(m) if m > 0 else None for m in range(N + 1)]
    ysize0 = Y.size(0)
    used: list[set[int]] = [set() for _ in range(N + 1)]

    def value(m: int, x: int) -> int:
        w = witness[m][x]
        if w is None:
            return comps[m][x]
        j, z = w
        return Y.s(m - 1, j, value(m - 1, z))

    def candidates(m: int, x: int) -> list[int]:
        if m == 0:
            base: range | list[int] = range(ysize0)
        else:
            want = tuple(value(m - 1, X.d(m, i, x)) for i in range(m + 1))
            base = findex[m].get(want, [])
        pin = fixed.get((m, x))
        if pin is not None:
            return [pin] if pin in base else []
        if allowed is None and not injective:
            return list(base)
        out = []
        for y in base:
            if allowed is not None and not allowed(m, x, y):
                continue
            if injective and y in used[m]:
                continue
            out.append(y)
        return out

    def finish() -> bool:
        for m in range(1, N + 1):
            row = comps[m]
            for x, w in enumerate(witness[m]):
                if w is None:
                    continue
                j, z = w
                v = Y.s(m - 1, j, comps[m - 1][z])
                row[x] = v
                pin = fixed.get((m, x))
                if pin is not None and pin != v:
                    return False
        return True

    total = len(order)
    if total == 0:
        if finish():
            yield [list(r) for r in comps]
        return

    frames: list[tuple[list[int], int] | None] = [None] * total
    pos = 0
    while pos >= 0:
        if pos == total:
            if finish():
                yield [list(r) for r in comps]
            pos -= 1
            continue
        m, x = order[pos]
        frame = frames[pos]
        if frame is None:
            frame = (candidates(m, x), 0)
        cands, i = frame
        if injective and i > 0:
            used[m].discard(comps[m][x])
        if i >= len(cands):
            frames[pos] = None
            pos -= 1
            continue
        budget.tick()
        y = cands[i]
        comps[m][x] = y
        if injective:
            used[m].add(y)
        frames[pos] = (cands, i + 1)
        pos += 1


def hom_set(
    X: SimplicialSet,
    Y: SimplicialSet,
    degree: int | None = None,
    fixed: dict[tuple[int, int], int] | None = None,
    allowed: Callable[[int, int, int], bool] | None = None,
    budget: Budget | None = None,
    limit: int | None = None,
) -> list[SimplicialMap]:
    """All simplicial maps X -> Y in deterministic order."""
    out = []
    for comps in enumerate_maps(X, Y, degree, fixed, allowed, budget):
        out.append(SimplicialMap(X, Y, comps))
        if limit is not None and len(out) >= limit:
            break
    return out


def count_maps(X: SimplicialSet, Y: SimplicialSet, budget: Budget | None = None) -> int:
    return sum(1 for _ in enumerate_maps(X, Y, budget=budget))


def find_isomorphism(
    X: SimplicialSet, Y: SimplicialSet, budget: Budget | None = None
) -> SimplicialMap | None:
    """An isomorphism X -> Y, found by exhaustive bijection search, or None."""
    degs = []
    for Z in (X, Y):
        d = Z.skeletal_dim()
        degs.append(d if d is not None else Z.cap)
    N = max(max(degs), 0)
    if any(X.size(m) != Y.size(m) for m in range(N + 1)):
        return None
    if any(len(X.nondegenerate(m)) != len(Y.nondegenerate(m)) for m in range(N + 1)):
        return None
    for comps in enumerate_maps(X, Y, degree=N, budget=budget, injective=True):
        if all(len(set(c)) == len(c) for c in comps):
            return SimplicialMap(X, Y, comps)
    return None


def is_isomorphic(X: SimplicialSet, Y: SimplicialSet, budget: Budget | None = None) -> bool:
    return find_isomorphism(X, Y, budget) is not None
