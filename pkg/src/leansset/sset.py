"""Degreewise-finite simplicial sets stored up to a cap with an extension policy.

Every degree is materialised lazily. Degrees are produced either by a model
(a function computing the cells of degree m directly, used by builders and
finite limits) or, above the cap of a data-only object, by the extension
policy:

* ``skeletal``: every simplex above the cap is degenerate, realised through
  Eilenberg-Zilber pairs (surjection, nondegenerate simplex);
* ``coskeletal``: a simplex above the cap is a compatible tuple of faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from . import simplex as sx

SKELETAL = "skeletal"
COSKELETAL = "coskeletal"
EXTENSIONS = (SKELETAL, COSKELETAL)


class CapError(ValueError):
    """Raised when extension policies cannot be reconciled."""

    def __init__(self, message: str, required_cap: int | None = None):
        super().__init__(message)
        self.required_cap = required_cap


class BudgetExceeded(RuntimeError):
    """A search ran out of its node budget; the answer is unknown."""


class SimplicialIdentityError(ValueError):
    pass


@dataclass
class Level:
    """Cells of one degree together with the faces out of it and degeneracies into it."""

    ids: list[str]
    faces: list[list[int]]
    degens: list[list[int]]
    keys: list[Hashable] | None = None
    index: dict[str, int] = field(init=False, repr=False)
    key_index: dict[Hashable, int] | None = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.index = {c: k for k, c in enumerate(self.ids)}
        if len(self.index) != len(self.ids):
            raise ValueError("duplicate simplex identifiers in one degree")
        self.key_index = None if self.keys is None else {k: i for i, k in enumerate(self.keys)}

    def __len__(self) -> int:
        return len(self.ids)


def seq_id(seq: Sequence[int]) -> str:
    if all(0 <= v < 10 for v in seq):
        return "".join(map(str, seq))
    return ".".join(map(str, seq))


class SimplicialSet:
    """A simplicial set; see the module docstring for the storage model.

    Parameters
    ----------
    cap:
        Highest degree whose data defines the object under the policy.
    extension:
        ``"skeletal"`` or ``"coskeletal"``.
    levels:
        Explicit levels for degrees ``0..len(levels)-1``.
    model:
        Optional callable ``model(m, X) -> Level``; when given it supplies every
        degree that is not in ``levels`` (including degrees above the cap).
    """

    def __init__(
        self,
        cap: int,
        extension: str,
        levels: Sequence[Level] | None = None,
        model: Callable[[int, "SimplicialSet"], Level] | None = None,
        name: str | None = None,
    ):
        if cap < 0:
            raise ValueError("cap must be non-negative")
        if extension not in EXTENSIONS:
            raise ValueError(f"unknown extension policy {extension!r}")
        if model is None and (levels is None or len(levels) < cap + 1):
            raise ValueError("data-only simplicial sets need levels up to the cap")
        self.cap = cap
        self.extension = extension
        self._levels: list[Level] = list(levels or [])
        self._model = model
        self.name = name
        self.category = None  # FiniteCategory when the object is known to be a nerve
        self._memo: dict = {}

    # -- materialisation -------------------------------------------------
    def level(self, m: int) -> Level:
        levels = self._levels
        while len(levels) <= m:
            k = len(levels)
            if self._model is not None:
                lvl = self._model(k, self)
            elif self.extension == SKELETAL:
                lvl = self._skeletal_level(k)
            else:
                lvl = self._coskeletal_level(k)
            levels.append(lvl)
        return levels[m]

    def size(self, m: int) -> int:
        return len(self.level(m))

    def sizes(self, upto: int | None = None) -> list[int]:
        top = self.cap if upto is None else upto
        return [self.size(m) for m in range(top + 1)]

    def ids(self, m: int) -> list[str]:
        return self.level(m).ids

    def id(self, m: int, x: int) -> str:
        return self.level(m).ids[x]

    def idx(self, m: int, ident: str) -> int:
        try:
            return self.level(m).index[ident]
        except KeyError:
            raise KeyError(f"no simplex {ident!r} in degree {m}") from None

    def key_lookup(self, m: int, key: Hashable) -> int:
        lvl = self.level(m)
        if lvl.key_index is None:
            raise KeyError("object has no model keys")
        return lvl.key_index[key]

    def key(self, m: int, x: int) -> Hashable:
        lvl = self.level(m)
        return None if lvl.keys is None else lvl.keys[x]

    def d(self, m: int, i: int, x: int) -> int:
        return self.level(m).faces[i][x]

    def s(self, m: int, j: int, x: int) -> int:
        """Degeneracy s_j of the degree-m simplex x."""
        return self.level(m + 1).degens[j][x]

    def faces_of(self, m: int, x: int) -> tuple[int, ...]:
        faces = self.level(m).faces
        return tuple(f[x] for f in faces)

    def vertices_of(self, m: int, x: int) -> tuple[int, ...]:
        return tuple(self.apply((a,), m, x) for a in range(m + 1))

    def apply(self, theta: Sequence[int], m: int, x: int) -> int:
        """theta^* x for a monotone theta: [n] -> [m]."""
        epi, mono = sx.factor(tuple(theta))
        k = len(mono) - 1
        cur = x
        deg = m
        for a in reversed(sx.missing(mono, m)):
            cur = self.d(deg, a, cur)
            deg -= 1
        for j in sx.repeats(epi):
            cur = self.s(deg, j, cur)
            deg += 1
        assert deg == len(epi) - 1 and k <= deg
        return cur

    # -- indices ---------------------------------------------------------
    def face_index(self, m: int) -> dict[tuple[int, ...], list[int]]:
        memo = self._memo.setdefault("face_index", {})
        if m not in memo:
            table: dict[tuple[int, ...], list[int]] = {}
            faces = self.level(m).faces
            for x in range(self.size(m)):
                table.setdefault(tuple(f[x] for f in faces), []).append(x)
            memo[m] = table
        return memo[m]

    def prefix_index(self, m: int, j: int) -> dict[tuple[int, ...], list[int]]:
        """Cells of degree m grouped by their first j faces."""
        memo = self._memo.setdefault("prefix_index", {})
        if (m, j) not in memo:
            table: dict[tuple[int, ...], list[int]] = {}
            faces = self.level(m).faces[:j]
            for x in range(self.size(m)):
                table.setdefault(tuple(f[x] for f in faces), []).append(x)
            memo[(m, j)] = table
        return memo[(m, j)]

    # -- degeneracy structure -------------------------------------------
    def degenerate_witness(self, m: int) -> list[tuple[int, int] | None]:
        """For each x in degree m, a pair (j, z) with x = s_j z, or None."""
        memo = self._memo.setdefault("witness", {})
        if m not in memo:
            out: list[tuple[int, int] | None] = [None] * self.size(m)
            if m > 0:
                lvl = self.level(m)
                for j in range(m):
                    dj = lvl.faces[j]
                    sj = lvl.degens[j]
                    for x in range(len(lvl)):
                        if out[x] is None and sj[dj[x]] == x:
                            out[x] = (j, dj[x])
            memo[m] = out
        return memo[m]

    def ez(self, m: int) -> list[tuple[tuple[int, ...], int, int]]:
        """Eilenberg-Zilber decomposition (surjection, degree, nondegenerate cell) per cell."""
        memo = self._memo.setdefault("ez", {})
        if m not in memo:
            wit = self.degenerate_witness(m)
            out = []
            below = self.ez(m - 1) if m > 0 else []
            for x, w in enumerate(wit):
                if w is None:
                    out.append((sx.identity(m), m, x))
                else:
                    j, z = w
                    tau, k, y = below[z]
                    out.append((sx.compose(tau, sx.codegeneracy(m - 1, j)), k, y))
            memo[m] = out
        return memo[m]

    def ez_lookup(self, m: int) -> dict[tuple[tuple[int, ...], int, int], int]:
        memo = self._memo.setdefault("ez_lookup", {})
        if m not in memo:
            memo[m] = {e: x for x, e in enumerate(self.ez(m))}
        return memo[m]

    def nondegenerate(self, m: int) -> list[int]:
        return [x for x, w in enumerate(self.degenerate_witness(m)) if w is None]

    def is_degenerate(self, m: int, x: int) -> bool:
        return self.degenerate_witness(m)[x] is not None

    def nondegenerate_counts(self, upto: int | None = None) -> list[int]:
        top = self.cap if upto is None else upto
        return [len(self.nondegenerate(m)) for m in range(top + 1)]

    def skeletal_dim(self) -> int | None:
        """Dimension of the object if it is known to be finite, else None."""
        if "skeletal_dim" not in self._memo:
            if self.extension == SKELETAL:
                dim = -1
                for m in range(self.cap + 1):
                    if self.nondegenerate(m):
                        dim = m
                self._memo["skeletal_dim"] = dim
            else:
                self._memo["skeletal_dim"] = self._memo.get("skeletal_hint")
        return self._memo["skeletal_dim"]

    def coskeletal_bound(self) -> int | None:
        """A degree c with the object c-coskeletal, if known or decidable."""
        if self.extension == COSKELETAL:
            return self.cap
        if "coskeletal_bound" not in self._memo:
            hint = self._memo.get("coskeletal_hint")
            if hint is None:
                from .limits import coskeletal_degree

                hint = coskeletal_degree(self)
            self._memo["coskeletal_bound"] = hint
        return self._memo["coskeletal_bound"]

    def hint(self, skeletal_dim: int | None = None, coskeletal: int | None = None) -> "SimplicialSet":
        """Record structural facts known from the construction."""
        if skeletal_dim is not None:
            self._memo["skeletal_hint"] = skeletal_dim
            if self.extension == COSKELETAL:
                self._memo["skeletal_dim"] = skeletal_dim
        if coskeletal is not None:
            self._memo["coskeletal_hint"] = coskeletal
        return self

    def is_empty(self) -> bool:
        return self.size(0) == 0

    # -- policy extension ------------------------------------------------
    def _skeletal_level(self, k: int) -> Level:
        dim = min(self.cap, k - 1)
        keys: list[tuple[tuple[int, ...], int, int]] = []
        ids: list[str] = []
        for d in range(dim + 1):
            for y in self.nondegenerate(d):
                yid = self.id(d, y)
                for sig in sx.surjections(k, d):
                    keys.append((sig, d, y))
                    ids.append(f"s{seq_id(sig)}({yid})")
        lookup = {e: x for x, e in enumerate(keys)}
        prev = self.ez_lookup(k - 1)
        faces = []
        for i in range(k + 1):
            col = []
            cof = sx.coface(k, i)
            for sig, d, y in keys:
                epi, mono = sx.factor(sx.compose(sig, cof))
                z = self.apply(mono, d, y)
                tau, e, w = self.ez(len(mono) - 1)[z]
                col.append(prev[(sx.compose(tau, epi), e, w)])
            faces.append(col)
        degens = []
        below = self.ez(k - 1)
        for j in range(k):
            cod = sx.codegeneracy(k - 1, j)
            degens.append([lookup[(sx.compose(sig, cod), d, y)] for sig, d, y in below])
        lvl = Level(ids, faces, degens)
        self._memo.setdefault("ez", {})[k] = keys
        return lvl

    def compatible_tuples(self, k: int) -> Iterator[tuple[int, ...]]:
        """Maps from the boundary of the k-simplex, as compatible face tuples in degree k-1."""
        prev_size = self.size(k - 1)
        if k == 1:
            for a in range(prev_size):
                for b in range(prev_size):
                    yield (a, b)
            return
        if prev_size == 0:
            return
        faces = self.level(k - 1).faces
        indexes = [self.prefix_index(k - 1, j) for j in range(k + 1)]
        chosen: list[int] = []

        def extend(j: int) -> Iterator[tuple[int, ...]]:
            if j == k + 1:
                yield tuple(chosen)
                return
            if j == 0:
                cands: Iterable[int] = range(prev_size)
            else:
                want = tuple(faces[j - 1][chosen[i]] for i in range(j))
                cands = indexes[j].get(want, ())
            for c in cands:
                chosen.append(c)
                yield from extend(j + 1)
                chosen.pop()

        yield from extend(0)

    def _coskeletal_level(self, k: int) -> Level:
        c = self.cap
        tuples = list(self.compatible_tuples(k))
        lookup = {t: x for x, t in enumerate(tuples)}
        faces = [[t[i] for t in tuples] for i in range(k + 1)]
        memo = self._memo.setdefault("capfaces", {})
        if k - 1 == c:
            prev_cap = [(x,) for x in range(self.size(c))]
        else:
            prev_cap = memo[k - 1]
        subsets_prev = {S: r for r, S in enumerate(combinations(range(k), c + 1))}
        plan = []
        for S in combinations(range(k + 1), c + 1):
            i = next(a for a in range(k + 1) if a not in S)
            shifted = tuple(a if a < i else a - 1 for a in S)
            plan.append((i, subsets_prev[shifted]))
        capfaces = [tuple(prev_cap[t[i]][r] for i, r in plan) for t in tuples]
        memo[k] = capfaces
        cap_ids = self.ids(c)
        ids = ["<" + ",".join(cap_ids[v] for v in cf) + ">" for cf in capfaces]
        degens = []
        n_prev = self.size(k - 1)
        for j in range(k):
            col = []
            for x in range(n_prev):
                if k == 1:
                    tup = (x, x)
                else:
                    tup = []
                    for i in range(k + 1):
                        if i < j:
                            tup.append(self.s(k - 2, j - 1, self.d(k - 1, i, x)))
                        elif i in (j, j + 1):
                            tup.append(x)
                        else:
                            tup.append(self.s(k - 2, j, self.d(k - 1, i - 1, x)))
                    tup = tuple(tup)
                col.append(lookup[tup])
            degens.append(col)
        return Level(ids, faces, degens)

    # -- validation ------------------------------------------------------
    def identity_violations(self, upto: int | None = None, limit: int = 20) -> list[str]:
        """Check all simplicial identities on degrees <= upto."""
        top = self.cap if upto is None else upto
        bad: list[str] = []
        for m in range(top + 1):
            n = self.size(m)
            for x in range(n):
                if m >= 2:
                    for j in range(m + 1):
                        for i in range(j):
                            a = self.d(m - 1, i, self.d(m, j, x))
                            b = self.d(m - 1, j - 1, self.d(m, i, x))
                            if a != b:
                                bad.append(f"d{i}d{j} != d{j - 1}d{i} on {self.id(m, x)!r} (degree {m})")
                if m + 1 <= top:
                    for j in range(m + 1):
                        y = self.s(m, j, x)
                        for i in range(m + 2):
                            got = self.d(m + 1, i, y)
                            if i < j:
                                want = self.s(m - 1, j - 1, self.d(m, i, x))
                            elif i in (j, j + 1):
                                want = x
                            else:
                                want = self.s(m - 1, j, self.d(m, i - 1, x)) if m >= 1 else x
                            if got != want:
                                bad.append(f"d{i}s{j} relation fails on {self.id(m, x)!r} (degree {m})")
                if m + 2 <= top:
                    for j in range(m + 1):
                        for i in range(j + 1):
                            a = self.s(m + 1, i, self.s(m, j, x))
                            b = self.s(m + 1, j + 1, self.s(m, i, x))
                            if a != b:
                                bad.append(f"s{i}s{j} != s{j + 1}s{i} on {self.id(m, x)!r} (degree {m})")
                if len(bad) >= limit:
                    return bad
        return bad

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<SimplicialSet{label} cap={self.cap} {self.extension} sizes={self.sizes()}>"


def level_from_model(
    keys: list[Hashable],
    ident: Callable[[Hashable], str],
    face: Callable[[int, Hashable], Hashable],
    degen: Callable[[int, Hashable], Hashable],
    m: int,
    X: SimplicialSet,
    prev_keys: list[Hashable] | None,
) -> Level:
    """Assemble a level from hashable keys and key-level face/degeneracy functions."""
    lookup = {k: i for i, k in enumerate(keys)}
    faces: list[list[int]] = []
    degens: list[list[int]] = []
    if m > 0:
        prev = X.level(m - 1)
        pk = prev.key_index
        assert pk is not None
        faces = [[pk[face(i, k)] for k in keys] for i in range(m + 1)]
        assert prev_keys is not None
        degens = [[lookup[degen(j, k)] for k in prev_keys] for j in range(m)]
    return Level([ident(k) for k in keys], faces, degens, keys=list(keys))


def model_set(
    cap: int,
    extension: str,
    cells: Callable[[int], list[Hashable]],
    face: Callable[[int, int, Hashable], Hashable],
    degen: Callable[[int, int, Hashable], Hashable],
    ident: Callable[[int, Hashable], str],
    name: str | None = None,
) -> SimplicialSet:
    """A simplicial set whose every degree is computed from a combinatorial model.

    ``face(m, i, key)`` acts on a degree-m key; ``degen(m, j, key)`` sends a
    degree-m key to degree m+1.
    """

    def build(m: int, X: SimplicialSet) -> Level:
        keys = cells(m)
        prev_keys = X.level(m - 1).keys if m > 0 else None
        return level_from_model(
            keys,
            lambda k: ident(m, k),
            lambda i, k: face(m, i, k),
            lambda j, k: degen(m - 1, j, k),
            m,
            X,
            prev_keys,
        )

    return SimplicialSet(cap, extension, model=build, name=name)


def data_set(
    cap: int,
    extension: str,
    source: SimplicialSet,
    upto: int | None = None,
    name: str | None = None,
) -> SimplicialSet:
    """Reuse the stored degrees 0..upto of ``source`` under a (possibly new) policy."""
    top = cap if upto is None else upto
    levels = [source.level(m) for m in range(top + 1)]
    plain = [Level(l.ids, l.faces, l.degens) for l in levels]
    return SimplicialSet(cap, extension, levels=plain, name=name)


class SimplicialMap:
    """A simplicial map, stored on low degrees and extended on demand.

    Components above the stored degrees are recovered cellwise: degenerate
    cells through their Eilenberg-Zilber decomposition, nondegenerate ones
    through their faces (valid when the target is coskeletal there).
    """

    def __init__(
        self,
        source: SimplicialSet,
        target: SimplicialSet,
        components: Sequence[Sequence[int]] | None = None,
        model: Callable[[int], list[int]] | None = None,
    ):
        self.source = source
        self.target = target
        self._comps: list[list[int]] = [list(c) for c in (components or [])]
        self._stored = len(self._comps)
        self._model = model
        if model is None and not self._comps:
            raise ValueError("a map needs components or a model")

    @property
    def stored_degree(self) -> int:
        return self._stored - 1

    def comp(self, m: int) -> list[int]:
        comps = self._comps
        while len(comps) <= m:
            k = len(comps)
            if self._model is not None:
                comps.append(self._model(k))
            else:
                comps.append(self._extend(k))
        return comps[m]

    def __call__(self, m: int, x: int) -> int:
        return self.comp(m)[x]

    def _extend(self, k: int) -> list[int]:
        src, tgt = self.source, self.target
        below = self.comp(k - 1)
        ez = src.ez(k)
        out = []
        findex = None
        for x in range(src.size(k)):
            sig, d, y = ez[x]
            if d < k:
                out.append(tgt.apply(sig, d, self.comp(d)[y]))
                continue
            if findex is None:
                findex = tgt.face_index(k)
            want = tuple(below[src.d(k, i, x)] for i in range(k + 1))
            hits = findex.get(want, [])
            if len(hits) != 1:
                raise CapError(
                    f"map is not determined in degree {k}: the target is not coskeletal there",
                    required_cap=k,
                )
            out.append(hits[0])
        return out

    def components(self, upto: int) -> list[list[int]]:
        return [list(self.comp(m)) for m in range(upto + 1)]

    def determining_degree(self) -> int:
        if self._model is not None:
            from .hom import hom_degree

            try:
                return hom_degree(self.source, self.target)
            except CapError:
                return max(self.source.cap, self.target.cap)
        return self.stored_degree

    def equals(self, other: "SimplicialMap", upto: int | None = None) -> bool:
        top = upto
        if top is None:
            top = max(self.determining_degree(), other.determining_degree())
        return all(self.comp(m) == other.comp(m) for m in range(top + 1))

    def violations(self, upto: int | None = None, limit: int = 10) -> list[str]:
        top = self.determining_degree() if upto is None else upto
        src, tgt = self.source, self.target
        bad = []
        for m in range(top + 1):
            c = self.comp(m)
            if len(c) != src.size(m):
                bad.append(f"degree {m}: wrong number of components")
                continue
            if any(not 0 <= v < tgt.size(m) for v in c):
                bad.append(f"degree {m}: component out of range")
                continue
            if m >= 1:
                below = self.comp(m - 1)
                for i in range(m + 1):
                    for x in range(src.size(m)):
                        if below[src.d(m, i, x)] != tgt.d(m, i, c[x]):
                            bad.append(f"face d{i} not preserved at {src.id(m, x)!r}")
                            break
                for j in range(m):
                    for z in range(src.size(m - 1)):
                        if c[src.s(m - 1, j, z)] != tgt.s(m - 1, j, below[z]):
                            bad.append(f"degeneracy s{j} not preserved at {src.id(m - 1, z)!r}")
                            break
            if len(bad) >= limit:
                break
        return bad

    def is_injective(self, upto: int | None = None) -> bool:
        top = self.mono_degree() if upto is None else upto
        return all(len(set(self.comp(m))) == len(self.comp(m)) for m in range(top + 1))

    def mono_degree(self) -> int:
        """Degree through which injectivity has to be checked."""
        d = self.source.skeletal_dim()
        if d is not None:
            return max(d, 0)
        c = self.source.coskeletal_bound()
        if c is None:
            raise CapError("cannot bound the degrees relevant for injectivity")
        return c

    def key(self, upto: int) -> tuple:
        return tuple(tuple(self.comp(m)) for m in range(upto + 1))

    def __repr__(self) -> str:
        return f"<SimplicialMap {self.source!r} -> {self.target!r}>"


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, model=lambda m: list(range(X.size(m))))


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """g after f."""
    return SimplicialMap(f.source, g.target, model=lambda m: [g(m, v) for v in f.comp(m)])


def map_from_function(
    source: SimplicialSet, target: SimplicialSet, fn: Callable[[int, int], int]
) -> SimplicialMap:
    return SimplicialMap(source, target, model=lambda m: [fn(m, x) for x in range(source.size(m))])
