"""Finite categories given by explicit composition tables, and a small zoo."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Hashable, Iterable, Sequence


@dataclass
class FiniteCategory:
    """Objects and arrows are indexed from 0; ``comp[(g, f)]`` is g after f."""

    objects: list[str]
    arrows: list[str]
    src: list[int]
    tgt: list[int]
    ident: list[int]
    comp: dict[tuple[int, int], int]
    name: str = ""
    _out: list[list[int]] = field(init=False, repr=False)
    _in: list[list[int]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._out = [[] for _ in self.objects]
        self._in = [[] for _ in self.objects]
        for a, (s, t) in enumerate(zip(self.src, self.tgt)):
            self._out[s].append(a)
            self._in[t].append(a)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def out_arrows(self, x: int) -> list[int]:
        return self._out[x]

    def in_arrows(self, x: int) -> list[int]:
        return self._in[x]

    def hom(self, x: int, y: int) -> list[int]:
        return [a for a in self._out[x] if self.tgt[a] == y]

    def then(self, f: int, g: int) -> int:
        """g after f."""
        return self.comp[(g, f)]

    def violations(self) -> list[str]:
        bad = []
        for x, i in enumerate(self.ident):
            if self.src[i] != x or self.tgt[i] != x:
                bad.append(f"identity of {self.objects[x]} has wrong ends")
        for f in range(self.n_arrows):
            for g in self._out[self.tgt[f]]:
                h = self.comp.get((g, f))
                if h is None:
                    bad.append(f"missing composite {self.arrows[g]} o {self.arrows[f]}")
                elif self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                    bad.append(f"composite {self.arrows[g]} o {self.arrows[f]} has wrong ends")
        if bad:
            return bad
        for f in range(self.n_arrows):
            if self.comp[(f, self.ident[self.src[f]])] != f or self.comp[(self.ident[self.tgt[f]], f)] != f:
                bad.append(f"unit law fails for {self.arrows[f]}")
        for f in range(self.n_arrows):
            for g in self._out[self.tgt[f]]:
                gf = self.comp[(g, f)]
                for h in self._out[self.tgt[g]]:
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        bad.append(f"associativity fails on {self.arrows[h]},{self.arrows[g]},{self.arrows[f]}")
                        return bad
        return bad

    def validate(self) -> "FiniteCategory":
        bad = self.violations()
        if bad:
            raise ValueError("invalid category: " + "; ".join(bad[:5]))
        return self

    def inverse(self, f: int) -> int | None:
        s, t = self.src[f], self.tgt[f]
        for g in self.hom(t, s):
            if self.comp[(g, f)] == self.ident[s] and self.comp[(f, g)] == self.ident[t]:
                return g
        return None

    def is_groupoid(self) -> bool:
        return all(self.inverse(f) is not None for f in range(self.n_arrows))

    def isomorphisms(self) -> list[int]:
        return [f for f in range(self.n_arrows) if self.inverse(f) is not None]

    def has_only_identity_isos(self) -> bool:
        idents = set(self.ident)
        return all(f in idents for f in self.isomorphisms())


@dataclass(frozen=True)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    on_objects: tuple[int, ...]
    on_arrows: tuple[int, ...]

    def violations(self) -> list[str]:
        C, D = self.source, self.target
        bad = []
        for f in range(C.n_arrows):
            a = self.on_arrows[f]
            if D.src[a] != self.on_objects[C.src[f]] or D.tgt[a] != self.on_objects[C.tgt[f]]:
                bad.append(f"arrow {C.arrows[f]} sent to an arrow with wrong ends")
        for x, i in enumerate(C.ident):
            if self.on_arrows[i] != D.ident[self.on_objects[x]]:
                bad.append(f"identity of {C.objects[x]} not preserved")
        for (g, f), h in C.comp.items():
            if D.comp[(self.on_arrows[g], self.on_arrows[f])] != self.on_arrows[h]:
                bad.append("composition not preserved")
                break
        return bad

    def is_fully_faithful(self) -> bool:
        C, D = self.source, self.target
        for x in range(C.n_objects):
            for y in range(C.n_objects):
                img = sorted(self.on_arrows[a] for a in C.hom(x, y))
                if img != sorted(D.hom(self.on_objects[x], self.on_objects[y])):
                    return False
        return True

    def is_essentially_surjective(self) -> bool:
        D = self.target
        hit = set(self.on_objects)
        for y in range(D.n_objects):
            if y in hit:
                continue
            if not any(D.inverse(f) is not None and D.src[f] == y and D.tgt[f] in hit for f in D.out_arrows(y)):
                return False
        return True

    def is_equivalence(self) -> bool:
        return self.is_fully_faithful() and self.is_essentially_surjective()

    def is_isomorphism(self) -> bool:
        return (
            len(set(self.on_objects)) == len(self.on_objects) == self.target.n_objects
            and len(set(self.on_arrows)) == len(self.on_arrows) == self.target.n_arrows
        )


def build_category(
    objects: Sequence[str],
    arrows: Sequence[tuple[str, str, str]],
    composite,
    name: str = "",
) -> FiniteCategory:
    """Assemble a category from named arrows ``(name, src, tgt)``.

    Identities are added automatically as ``id_<obj>``; ``composite(g, f)``
    returns the name of g after f for non-identity names.
    """
    obj_index = {o: k for k, o in enumerate(objects)}
    names = [f"id_{o}" for o in objects] + [a[0] for a in arrows]
    src = list(range(len(objects))) + [obj_index[a[1]] for a in arrows]
    tgt = list(range(len(objects))) + [obj_index[a[2]] for a in arrows]
    ident = list(range(len(objects)))
    idx = {n: k for k, n in enumerate(names)}
    comp = {}
    for f in range(len(names)):
        for g in range(len(names)):
            if tgt[f] != src[g]:
                continue
            if f < len(objects):
                comp[(g, f)] = g
            elif g < len(objects):
                comp[(g, f)] = f
            else:
                comp[(g, f)] = idx[composite(names[g], names[f])]
    return FiniteCategory(list(objects), names, src, tgt, ident, comp, name).validate()


def group(elements: Sequence[Hashable], mult, unit: Hashable, name: str = "") -> FiniteCategory:
    """One-object category of a finite group (or monoid); ``mult(a, b)`` is a after b."""
    labels = [str(e) for e in elements]
    index = {e: k for k, e in enumerate(elements)}
    comp = {(index[a], index[b]): index[mult(a, b)] for a in elements for b in elements}
    ident = [index[unit]]
    return FiniteCategory(["*"], labels, [0] * len(elements), [0] * len(elements), ident, comp, name).validate()


def cyclic_group(n: int) -> FiniteCategory:
    return group(list(range(n)), lambda a, b: (a + b) % n, 0, name=f"Z/{n}")


def klein_four() -> FiniteCategory:
    els = [(a, b) for a in range(2) for b in range(2)]
    return group(els, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2), (0, 0), name="Z/2xZ/2")


def trivial_group() -> FiniteCategory:
    return group([0], lambda a, b: 0, 0, name="1")


def poset(elements: Sequence[str], leq: Iterable[tuple[str, str]], name: str = "") -> FiniteCategory:
    """Category of a finite poset from generating relations (closed reflexively-transitively)."""
    els = list(elements)
    rel = {(a, a) for a in els} | set(leq)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise ValueError("relation is not antisymmetric")
    pairs = sorted((a, b) for a, b in rel if a != b)
    arrows = [(f"{a}<{b}", a, b) for a, b in pairs]
    return build_category(els, arrows, lambda g, f: _poset_comp(g, f), name=name)


def _poset_comp(g: str, f: str) -> str:
    a = f.split("<")[0]
    c = g.split("<")[1]
    return f"{a}<{c}" if a != c else f"id_{a}"


def ordinal(n: int) -> FiniteCategory:
    """The poset [n] = {0 < 1 < ... < n}."""
    els = [str(i) for i in range(n + 1)]
    return poset(els, [(els[i], els[i + 1]) for i in range(n)], name=f"[{n}]")


def discrete(k: int) -> FiniteCategory:
    return poset([str(i) for i in range(k)], [], name=f"disc{k}")


def codiscrete(k: int) -> FiniteCategory:
    """The groupoid with k objects and exactly one arrow between any two."""
    objs = [str(i) for i in range(k)]
    arrows = [(f"{a}>{b}", a, b) for a in objs for b in objs if a != b]

    def comp(g: str, f: str) -> str:
        a = f.split(">")[0]
        c = g.split(">")[1]
        return f"{a}>{c}" if a != c else f"id_{a}"

    return build_category(objs, arrows, comp, name=f"codisc{k}")


def product_category(C: FiniteCategory, D: FiniteCategory) -> FiniteCategory:
    objs = [(x, y) for x in range(C.n_objects) for y in range(D.n_objects)]
    oidx = {o: k for k, o in enumerate(objs)}
    arrs = [(f, g) for f in range(C.n_arrows) for g in range(D.n_arrows)]
    aidx = {a: k for k, a in enumerate(arrs)}
    src = [oidx[(C.src[f], D.src[g])] for f, g in arrs]
    tgt = [oidx[(C.tgt[f], D.tgt[g])] for f, g in arrs]
    ident = [aidx[(C.ident[x], D.ident[y])] for x, y in objs]
    comp = {}
    for (f2, g2) in arrs:
        for (f1, g1) in arrs:
            if C.tgt[f1] == C.src[f2] and D.tgt[g1] == D.src[g2]:
                comp[(aidx[(f2, g2)], aidx[(f1, g1)])] = aidx[(C.comp[(f2, f1)], D.comp[(g2, g1)])]
    return FiniteCategory(
        [f"({C.objects[x]},{D.objects[y]})" for x, y in objs],
        [f"({C.arrows[f]},{D.arrows[g]})" for f, g in arrs],
        src,
        tgt,
        ident,
        comp,
        name=f"{C.name}x{D.name}",
    )


def disjoint_union(C: FiniteCategory, D: FiniteCategory) -> FiniteCategory:
    no, na = C.n_objects, C.n_arrows
    comp = dict(C.comp)
    for (g, f), h in D.comp.items():
        comp[(g + na, f + na)] = h + na
    return FiniteCategory(
        [f"a.{o}" for o in C.objects] + [f"b.{o}" for o in D.objects],
        [f"a.{a}" for a in C.arrows] + [f"b.{a}" for a in D.arrows],
        C.src + [s + no for s in D.src],
        C.tgt + [t + no for t in D.tgt],
        C.ident + [i + na for i in D.ident],
        comp,
        name=f"{C.name}+{D.name}",
    )


def monoid(table: dict[tuple[str, str], str], elements: Sequence[str], unit: str, name: str = "") -> FiniteCategory:
    return group(list(elements), lambda a, b: table[(a, b)] if a != unit and b != unit else (b if a == unit else a), unit, name)


def kronecker() -> FiniteCategory:
    """Two objects with two parallel arrows."""
    return build_category(["0", "1"], [("u", "0", "1"), ("v", "0", "1")], lambda g, f: None, name="kronecker")


def idempotent_monoid() -> FiniteCategory:
    return monoid({("e", "e"): "e"}, ["1", "e"], "1", name="idem")


def zero_monoid() -> FiniteCategory:
    """{1, a, b} with every product of non-units equal to its left factor's partner-free zero."""
    table = {(x, y): x for x in ("a", "b") for y in ("a", "b")}
    return monoid(table, ["1", "a", "b"], "1", name="leftzero")


def all_functors(C: FiniteCategory, D: FiniteCategory, limit: int | None = None) -> list[Functor]:
    """Every functor C -> D, by brute force over object assignments and arrow choices."""
    out: list[Functor] = []
    for objs in iproduct(range(D.n_objects), repeat=C.n_objects):
        choices = []
        for f in range(C.n_arrows):
            if f in C.ident:
                choices.append([D.ident[objs[C.src[f]]]])
            else:
                choices.append(D.hom(objs[C.src[f]], objs[C.tgt[f]]))
        for arrs in iproduct(*choices):
            F = Functor(C, D, tuple(objs), tuple(arrs))
            if not F.violations():
                out.append(F)
                if limit is not None and len(out) >= limit:
                    return out
    return out


def zoo() -> dict[str, FiniteCategory]:
    """The shipped finite categories and groupoids."""
    cats = [
        ordinal(0),
        ordinal(1),
        ordinal(2),
        discrete(2),
        discrete(3),
        poset(["a", "b", "c"], [("a", "b"), ("a", "c")], name="V"),
        poset(["a", "b", "c"], [("a", "c"), ("b", "c")], name="Lambda"),
        poset(["a", "b", "c"], [("a", "b")], name="[1]+pt"),
        kronecker(),
        idempotent_monoid(),
        zero_monoid(),
        trivial_group(),
        cyclic_group(2),
        cyclic_group(3),
        klein_four(),
        codiscrete(2),
        codiscrete(3),
    ]
    return {c.name: c for c in cats}
