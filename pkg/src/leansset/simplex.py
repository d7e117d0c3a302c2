"""Monotone maps between finite ordinals [n] = {0, ..., n}.

A monotone map theta: [n] -> [m] is stored as the tuple of its values
``(theta(0), ..., theta(n))``. Composition, coface/codegeneracy generators and
epi-mono factorizations are provided here so that every other module can act
on simplices through arbitrary simplicial operators.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement

Mono = tuple[int, ...]


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def coface(m: int, i: int) -> tuple[int, ...]:
    """delta_i : [m-1] -> [m], skipping i."""
    return tuple(a if a < i else a + 1 for a in range(m))


def codegeneracy(m: int, j: int) -> tuple[int, ...]:
    """sigma_j : [m+1] -> [m], hitting j twice."""
    return tuple(a if a <= j else a - 1 for a in range(m + 2))


def compose(theta: tuple[int, ...], phi: tuple[int, ...]) -> tuple[int, ...]:
    """theta after phi."""
    return tuple(theta[a] for a in phi)


def is_monotone(theta: tuple[int, ...]) -> bool:
    return all(theta[a] <= theta[a + 1] for a in range(len(theta) - 1))


def factor(theta: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split theta = mono o epi; returns (epi, mono)."""
    image = sorted(set(theta))
    pos = {v: k for k, v in enumerate(image)}
    return tuple(pos[v] for v in theta), tuple(image)


def missing(mono: tuple[int, ...], m: int) -> list[int]:
    """Values of [m] not hit by an injective map."""
    hit = set(mono)
    return [a for a in range(m + 1) if a not in hit]


def repeats(epi: tuple[int, ...]) -> list[int]:
    """Positions j with epi(j) == epi(j+1); applying s_j in increasing order rebuilds epi."""
    return [j for j in range(len(epi) - 1) if epi[j] == epi[j + 1]]


@lru_cache(maxsize=None)
def monotone_maps(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """All monotone maps [n] -> [m] in lexicographic order."""
    if m < 0:
        return ()
    return tuple(combinations_with_replacement(range(m + 1), n + 1))


@lru_cache(maxsize=None)
def surjections(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Monotone surjections [m] -> [k] in lexicographic order."""
    out = []
    for cuts in combinations(range(1, m + 1), k):
        seq, level, cut = [], 0, set(cuts)
        for a in range(m + 1):
            if a in cut:
                level += 1
            seq.append(level)
        out.append(tuple(seq))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def injections(k: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing maps [k] -> [m] in lexicographic order."""
    return tuple(combinations(range(m + 1), k + 1))
