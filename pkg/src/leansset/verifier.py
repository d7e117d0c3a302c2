"""Checking the fibration-test-category axioms on finite presentations.

A presentation lists test objects, marked fibrations and trivial fibrations,
a sample of ambient objects and a finite list of generating cofibrations.
When ``inherited`` names a flavor, maps and objects that are not listed (for
instance pullback-powers built during the check) are classified with the
lifting and homotopy engines of that flavor; otherwise membership is decided
up to isomorphism against the listed maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator

from .builders import delta, empty, point, walking_h
from .category import cyclic_group
from .hom import Budget, enumerate_maps, hom_degree, hom_set
from .homotopy import is_dk_equivalence_qcat, is_weak_equivalence_kan
from .lifting import (
    Generator,
    LiftingSquare,
    PreconditionError,
    classify_map,
    generating_set,
    has_filler,
    is_kan_complex,
    is_quasi_category,
    mapping_space,
    precompose,
    pullback_power,
)
from .limits import classify, copair, coproduct, is_terminal, product, product_map, pullback, pushout, pushout_map, terminal_map
from .nerves import category_of
from .sset import BudgetExceeded, SimplicialMap, SimplicialSet, compose, identity_map

FLAVORS = ("kq", "joyal")


def _det(f: SimplicialMap) -> int:
    return f.determining_degree()


def map_key(f: SimplicialMap) -> tuple:
    return (id(f.source), id(f.target), f.key(_det(f)))


def _empty_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(empty(), X, model=lambda m: [])


def default_generators(flavor: str, cap: int) -> list[Generator]:
    """Boundaries and horns through dimension ``cap``, with the trivial ones flagged by name."""
    horns = "kanHorns" if flavor == "kq" else "innerHorns"
    gens = generating_set("boundaries", cap) + generating_set(horns, cap)
    if flavor == "joyal":
        gens += [g for g in generating_set("joyalM", cap) if g.name == "{0}->H"]
    return gens


def is_trivial_cofibration(g: Generator, flavor: str) -> bool:
    if g.name.startswith("Lambda"):
        n, k = map(int, g.name[len("Lambda"):].split("_"))
        return flavor == "kq" or 0 < k < n
    return flavor == "joyal" and g.name == "{0}->H"


# -- presentations -------------------------------------------------------------------------

@dataclass
class FibTestPresentation:
    ambient: list[SimplicialSet]
    tests: list[SimplicialSet]
    fibrations: list[SimplicialMap]
    trivial_fibrations: list[SimplicialMap]
    generators: list[Generator]
    flavor: str = "kq"
    inherited: bool = False

    def violations(self) -> list[str]:
        bad = []
        if self.flavor not in FLAVORS:
            bad.append(f"unknown flavor {self.flavor!r}")
        tests = {id(t) for t in self.tests}
        fib = {map_key(f) for f in self.fibrations}
        for f in self.fibrations + self.trivial_fibrations:
            if id(f.source) not in tests or id(f.target) not in tests:
                bad.append("a marked map has an end outside the test objects")
                break
        if any(map_key(f) not in fib for f in self.trivial_fibrations):
            bad.append("a trivial fibration is not marked as a fibration")
        triv = {map_key(f) for f in self.trivial_fibrations}
        for t in self.tests:
            k = map_key(identity_map(t))
            if k not in fib or k not in triv:
                bad.append(f"identity of {t.name} is not marked")
        return bad

    def listed(self, kind: str) -> list[SimplicialMap]:
        return self.trivial_fibrations if kind == "trivial" else self.fibrations


def _isomorphisms(X: SimplicialSet, Y: SimplicialSet, budget: Budget | None = None) -> Iterator[SimplicialMap]:
    if X.sizes(2) != Y.sizes(2):
        return
    N = max(hom_degree(X, Y), hom_degree(Y, X))
    for comps in enumerate_maps(X, Y, degree=N, budget=budget, injective=True):
        f = SimplicialMap(X, Y, comps)
        if all(len(set(f.comp(m))) == Y.size(m) for m in range(N + 1)):
            yield f


def close_under_isomorphisms(P: FibTestPresentation, budget: Budget | None = None) -> FibTestPresentation:
    """Add the isomorphisms between test objects and every marked map composed with them."""
    isos: dict[tuple[int, int], list[SimplicialMap]] = {}
    for a in P.tests:
        for b in P.tests:
            isos[(id(a), id(b))] = list(_isomorphisms(a, b, budget))
    iso_maps = [f for fs in isos.values() for f in fs]

    def closure(maps: list[SimplicialMap]) -> list[SimplicialMap]:
        out: dict[tuple, SimplicialMap] = {}
        for f in maps + iso_maps:
            for a in P.tests:
                for alpha in isos[(id(a), id(f.source))]:
                    for b in P.tests:
                        for beta in isos[(id(f.target), id(b))]:
                            g = compose(beta, compose(f, alpha))
                            g = SimplicialMap(a, b, [list(g.comp(m)) for m in range(_det(g) + 1)])
                            out.setdefault(map_key(g), g)
        return list(out.values())

    return replace(P, fibrations=closure(P.fibrations), trivial_fibrations=closure(P.trivial_fibrations))


def inherited_presentation(
    tests: list[SimplicialSet],
    ambient: list[SimplicialSet] | None = None,
    flavor: str = "kq",
    cap: int = 3,
    budget: Budget | None = None,
) -> FibTestPresentation:
    """Every map between test objects, marked by the model structure of the flavor."""
    fibs, trivs = [], []
    kind = "kanFibration" if flavor == "kq" else "categoricalFibration"
    for s in tests:
        for t in tests:
            for f in hom_set(s, t, budget=budget):
                if classify_map(f, kind, budget).holds:
                    fibs.append(f)
                    if classify_map(f, "trivialFibration", budget).holds:
                        trivs.append(f)
    amb = list(tests) + [a for a in (ambient or []) if all(a is not t for t in tests)]
    return FibTestPresentation(amb, list(tests), fibs, trivs, default_generators(flavor, cap), flavor, inherited=True)


def mislabeled(P: FibTestPresentation) -> tuple[FibTestPresentation, SimplicialMap]:
    """Demote one trivial fibration that is not an isomorphism to a plain fibration."""
    for f in P.trivial_fibrations:
        if f.source.sizes(1) != f.target.sizes(1):
            keep = [g for g in P.trivial_fibrations if g is not f]
            return replace(P, trivial_fibrations=keep), f
    raise ValueError("every trivial fibration is an isomorphism; nothing to mislabel")


# -- membership -------------------------------------------------------------------------------

def is_test_object(P: FibTestPresentation, X: SimplicialSet, budget: Budget | None = None) -> bool | None:
    if any(X is t for t in P.tests):
        return True
    if P.inherited:
        C = category_of(X)
        if C is not None:
            return C.is_groupoid() if P.flavor == "kq" else True
        if not classify(X).is_lean:
            return False
        return is_kan_complex(X, budget) if P.flavor == "kq" else is_quasi_category(X, budget)
    try:
        return any(next(_isomorphisms(X, t, budget), None) is not None for t in P.tests)
    except BudgetExceeded:
        return None


def is_marked(P: FibTestPresentation, f: SimplicialMap, kind: str, budget: Budget | None = None) -> bool | None:
    """Membership of f in the marked class ``kind`` (``fibration`` or ``trivial``); None if undecided."""
    # keys are only comparable between maps with the same ends; skip the key for new objects
    if any(g.source is f.source and g.target is f.target for g in P.fibrations):
        k = map_key(f)
        if any(map_key(g) == k for g in P.fibrations):
            return any(map_key(g) == k for g in P.listed(kind))
    if P.inherited:
        if kind == "trivial":
            return classify_map(f, "trivialFibration", budget).holds
        return classify_map(f, "kanFibration" if P.flavor == "kq" else "categoricalFibration", budget).holds
    try:
        for g in P.listed(kind):
            for alpha in _isomorphisms(f.source, g.source, budget):
                for beta in _isomorphisms(f.target, g.target, budget):
                    if compose(beta, f).equals(compose(g, alpha)):
                        return True
    except BudgetExceeded:
        return None
    return False


def map_space_equivalence(f: SimplicialMap, t: SimplicialSet, flavor: str, budget: Budget | None = None) -> bool:
    """Whether Map(d, t) -> Map(c, t) is a weak equivalence for f: c -> d."""
    Md, Mc = mapping_space(f.target, t, budget), mapping_space(f.source, t, budget)
    g = precompose(Md, f, Mc)
    if flavor == "kq":
        return is_weak_equivalence_kan(g, check=False, budget=budget)
    return is_dk_equivalence_qcat(g, check=False, budget=budget).verdict


# -- the five axioms ---------------------------------------------------------------------------

@dataclass
class AxiomReport:
    axiom: int
    status: str
    checked: int = 0
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"axiom": self.axiom, "status": self.status, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        out.update(self.details)
        return out


@dataclass
class VerificationReport:
    axioms: list[AxiomReport]

    @property
    def passed(self) -> bool:
        return all(a.status == "pass" for a in self.axioms)

    def axiom(self, k: int) -> AxiomReport:
        return self.axioms[k - 1]

    def as_dict(self) -> dict:
        return {"passed": self.passed, "axioms": [a.as_dict() for a in self.axioms]}


def _name(f: SimplicialMap) -> str:
    return f"{f.source.name}->{f.target.name} {[list(f.comp(m)) for m in range(min(_det(f), 1) + 1)]}"


def _verdict(fail: str | None, undecided: bool, n: int, axiom: int, **details) -> AxiomReport:
    if fail is not None:
        return AxiomReport(axiom, "fail", n, fail, details)
    return AxiomReport(axiom, "undetermined" if undecided else "pass", n, None, details)


def axiom_terminal(P: FibTestPresentation, budget: Budget | None = None) -> AxiomReport:
    stars = [t for t in P.tests if is_terminal(t)]
    if not stars:
        return AxiomReport(1, "fail", 0, "no terminal test object")
    star = stars[0]
    undecided, n = False, 0
    for t in P.tests:
        n += 1
        ok = is_marked(P, terminal_map(t, star), "fibration", budget)
        if ok is False:
            return AxiomReport(1, "fail", n, f"{t.name} -> * is not a fibration")
        undecided |= ok is None
    return _verdict(None, undecided, n, 1)


def axiom_pullback_powers(P: FibTestPresentation, budget: Budget | None = None) -> AxiomReport:
    undecided, n = False, 0
    for p in P.fibrations:
        p_triv = is_marked(P, p, "trivial", budget)
        for g in P.generators:
            n += 1
            q = pullback_power(g.map, p, budget)
            where = f"pullback-power of {_name(p)} against {g.name}"
            for end, X in (("source", q.source), ("target", q.target)):
                ok = is_test_object(P, X, budget)
                if ok is False:
                    return _verdict(f"{where}: {end} is not a test object", False, n, 2)
                undecided |= ok is None
            ok = is_marked(P, q, "fibration", budget)
            if ok is False:
                return _verdict(f"{where} is not a fibration", False, n, 2)
            undecided |= ok is None
            if p_triv or is_trivial_cofibration(g, P.flavor):
                ok = is_marked(P, q, "trivial", budget)
                if ok is False:
                    return _verdict(f"{where} is not a trivial fibration", False, n, 2)
                undecided |= ok is None
    return _verdict(None, undecided, n, 2, generators=[g.name for g in P.generators])


def axiom_detection(P: FibTestPresentation, budget: Budget | None = None) -> AxiomReport:
    n = 0
    for f in P.fibrations:
        n += 1
        marked = is_marked(P, f, "trivial", budget)
        bad_t = next((t for t in P.tests if not map_space_equivalence(f, t, P.flavor, budget)), None)
        if marked and bad_t is not None:
            return _verdict(f"trivial fibration {_name(f)} but Map(-, {bad_t.name}) is not a weak equivalence", False, n, 3)
        if not marked and bad_t is None:
            return _verdict(f"fibration {_name(f)} induces weak equivalences on every Map(-, t) but is not marked trivial", False, n, 3)
    return _verdict(None, False, n, 3)


def axiom_pullback_stability(P: FibTestPresentation, budget: Budget | None = None, per_pair: int = 4) -> AxiomReport:
    n = 0
    for p in P.trivial_fibrations:
        for a in P.ambient:
            for g in hom_set(a, p.target, budget=budget, limit=per_pair):
                Q = pullback(p, g)
                leg = Q.legs[1]
                for t in P.tests:
                    n += 1
                    if not map_space_equivalence(leg, t, P.flavor, budget):
                        return _verdict(f"pullback of {_name(p)} along a map from {a.name} fails on Map(-, {t.name})", False, n, 4)
    return _verdict(None, False, n, 4)


def axiom_cofibrant(P: FibTestPresentation, budget: Budget | None = None) -> AxiomReport:
    n = 0
    for c in P.ambient:
        left = _empty_map(c)
        for p in P.trivial_fibrations:
            top = _empty_map(p.source)
            for b in hom_set(c, p.target, budget=budget):
                n += 1
                sq = LiftingSquare(left, p, top, b)
                if not has_filler(sq, budget):
                    return _verdict(f"{c.name} does not lift against {_name(p)}", False, n, 5)
    return _verdict(None, False, n, 5)


def verify_axioms(P: FibTestPresentation, budget: Budget | None = None) -> VerificationReport:
    bad = P.violations()
    if bad:
        raise PreconditionError("invalid presentation: " + "; ".join(bad))
    checks = (axiom_terminal, axiom_pullback_powers, axiom_detection, axiom_pullback_stability, axiom_cofibrant)
    out = []
    for k, check in enumerate(checks, start=1):
        try:
            out.append(check(P, budget))
        except BudgetExceeded:
            out.append(AxiomReport(k, "undetermined", 0, None, {"reason": "search budget exhausted"}))
    return VerificationReport(out)


def generating_sets(P: FibTestPresentation, report: VerificationReport) -> dict[str, list]:
    """The marked maps as maps of constant pro-objects: P from fibrations, Q from trivial ones."""
    from .pro import ProMap, const

    if not report.passed:
        raise PreconditionError("generating sets need a verified presentation")
    consts = {id(t): const(t) for t in P.tests}
    as_pro = lambda f: ProMap(consts[id(f.source)], consts[id(f.target)], {"0": f})
    return {"P": [as_pro(f) for f in P.fibrations], "Q": [as_pro(f) for f in P.trivial_fibrations]}


# -- closure under pullback-powers -----------------------------------------------------------

@dataclass
class ClosureResult:
    objects: list[SimplicialSet]
    fixpoint: bool
    rounds: int
    added: list[list[str]]

    def as_dict(self) -> dict:
        return {
            "objects": [o.name for o in self.objects],
            "sizes": [o.sizes(2) for o in self.objects],
            "fixpoint": self.fixpoint,
            "rounds": self.rounds,
            "added": self.added,
        }


def _iso_known(X: SimplicialSet, known: list[SimplicialSet], budget: Budget | None) -> bool:
    sig = X.sizes(2)
    return any(K.sizes(2) == sig and next(_isomorphisms(X, K, budget), None) is not None for K in known)


def close_under_pullback_powers(
    tests: list[SimplicialSet], generators: list[Generator], cap: int, budget: Budget | None = None
) -> ClosureResult:
    """Add the objects of t^V -> t^U x_{*^U} *^V for every test t and generator U -> V until nothing new appears."""
    objs = list(tests)
    star = point()
    added: list[list[str]] = []
    for r in range(cap):
        new: list[SimplicialSet] = []
        for t in list(objs):
            for g in generators:
                q = pullback_power(g.map, terminal_map(t, star), budget)
                for X, label in ((q.source, f"{t.name}^{g.name}"), (q.target, f"{t.name}^{g.name}:match")):
                    if not _iso_known(X, objs + new, budget):
                        X.name = label
                        new.append(X)
        added.append([X.name for X in new])
        if not new:
            return ClosureResult(objs, True, r + 1, added)
        objs.extend(new)
    return ClosureResult(objs, False, cap, added)


# -- mapping cylinders -------------------------------------------------------------------------

@dataclass
class PushoutWitness:
    """A square B <- A -> C with the pushout it defines; ``left`` is the cofibration."""

    left: SimplicialMap
    right: SimplicialMap
    pushout: SimplicialSet

    def violations(self, targets: list[SimplicialSet] | None = None, budget: Budget | None = None) -> list[str]:
        """Universal property sampled on small targets: maps out of the pushout match compatible cocones."""
        bad = []
        if not self.left.is_injective():
            bad.append("the pushed-out map is not a monomorphism")
        P = self.pushout
        u, v = P.legs
        a = compose(u, self.left)
        b = compose(v, self.right)
        if not a.equals(b, max(_det(a), _det(b))):
            bad.append("the square does not commute")
        for T in targets or [delta(1), _n2()]:
            direct = len(hom_set(P, T, budget=budget))
            cocones = 0
            for x in hom_set(self.left.target, T, budget=budget):
                for y in hom_set(self.right.target, T, budget=budget):
                    l, r = compose(x, self.left), compose(y, self.right)
                    if l.equals(r, max(_det(l), _det(r))):
                        cocones += 1
            if direct != cocones:
                bad.append(f"{direct} maps to {T.name} but {cocones} compatible cocones")
        return bad


def _n2() -> SimplicialSet:
    from .builders import nerve

    if not hasattr(_n2, "cached"):
        _n2.cached = nerve(cyclic_group(2))
    return _n2.cached


@dataclass
class CylinderFactorization:
    f: SimplicialMap
    flavor: str
    cylinder: SimplicialSet
    j: SimplicialMap
    r: SimplicialMap
    section: SimplicialMap
    homotopy: SimplicialMap | None
    witnesses: tuple[PushoutWitness, PushoutWitness]
    coproduct_iso: SimplicialMap
    section_witness: PushoutWitness
    section_iso: SimplicialMap

    def violations(self, budget: Budget | None = None, targets: list[SimplicialSet] | None = None) -> list[str]:
        bad = []
        f, j, r, s, H = self.f, self.j, self.r, self.section, self.homotopy
        rj = compose(r, j)
        if not rj.equals(f, max(_det(rj), _det(f))):
            bad.append("r o j differs from f")
        if not classify_map(j, "monomorphism", budget).holds:
            bad.append("j is not a monomorphism")
        rs = compose(r, s)
        if not rs.equals(identity_map(f.target), _det(rs)):
            bad.append("r o section is not the identity")
        w1, w2 = self.witnesses
        iso = self.coproduct_iso
        if not _bijective(iso):
            bad.append("the first pushout is not the coproduct A + B")
        via = compose(w2.pushout.legs[1], compose(iso, w1.pushout.legs[1]))
        if not via.equals(j, max(_det(via), _det(j))):
            bad.append("j is not the composite of the two pushouts")
        for k, w in enumerate(self.witnesses, start=1):
            bad.extend(f"pushout {k}: {msg}" for msg in w.violations(targets, budget))
        w3, iso3 = self.section_witness, self.section_iso
        bad.extend(f"section pushout: {msg}" for msg in w3.violations(targets, budget))
        if not _bijective(iso3):
            bad.append("the section pushout is not the mapping cylinder")
        via = compose(iso3, w3.pushout.legs[1])
        if not via.equals(s, max(_det(via), _det(s))):
            bad.append("the section is not the pushout of the cylinder end")
        if H is not None:
            bad.extend(f"homotopy: {msg}" for msg in _homotopy_violations(self))
        return bad


def _bijective(f: SimplicialMap) -> bool:
    top = max(_det(f), f.target.coskeletal_bound() or 0)
    return all(sorted(f.comp(m)) == list(range(f.target.size(m))) for m in range(top + 1))


def _homotopy_violations(F: CylinderFactorization) -> list[str]:
    H = F.homotopy
    cyl = F.cylinder
    PM = H.source
    top = max(_det(H), 1)
    bad = list(H.violations(top))
    sr = compose(F.section, F.r)
    e0, e1 = cyl.idx(0, "0"), cyl.idx(0, "1")
    for m in range(top + 1):
        hc = H.comp(m)
        c0 = cyl.apply((0,) * (m + 1), 0, e0)
        c1 = cyl.apply((0,) * (m + 1), 0, e1)
        src = sr.comp(m)
        bset = set(F.section.comp(m))
        for idx, (x, c) in enumerate(PM.level(m).keys):
            if c == c0 and hc[idx] != x:
                bad.append("homotopy does not start at the identity")
                return bad
            if c == c1 and hc[idx] != src[x]:
                bad.append("homotopy does not end at section o r")
                return bad
            if x in bset and hc[idx] != x:
                bad.append("homotopy moves the target copy")
                return bad
    return bad


def _cylinder(flavor: str) -> SimplicialSet:
    if flavor == "kq":
        return delta(1)
    if flavor == "joyal":
        return walking_h()
    raise ValueError(f"unknown flavor {flavor!r}")


def mapping_cylinder_factor(f: SimplicialMap, flavor: str = "kq", budget: Budget | None = None) -> CylinderFactorization:
    """f = r o j through M = A x cyl u_{A x {1}} B, with j the end-0 inclusion.

    r is a weak equivalence with section s = the inclusion of B: s is a pushout
    of A x {1} -> A x cyl and r o s = id. For the interval cylinder an explicit
    homotopy id ~ s o r relative to B is attached as well.
    """
    A, B = f.source, f.target
    cyl = _cylinder(flavor)
    ends = coproduct(point(), point())
    e0, e1 = cyl.idx(0, "0"), cyl.idx(0, "1")
    vert = lambda m, v: cyl.apply((0,) * (m + 1), 0, v)
    end_inc = SimplicialMap(ends, cyl, model=lambda m: [vert(m, e0 if s == 0 else e1) for s, _ in ends.level(m).keys])
    # A x {0,1} -> A x cyl, and A x {0,1} -> A + B (identity on the 0 end, f on the 1 end)
    Aends = product(A, ends)
    AB = coproduct(A, B)
    inl, inr = AB.legs
    glue = SimplicialMap(
        Aends, AB, model=lambda m: [(inl if ends.key(m, e)[0] == 0 else compose(inr, f))(m, a) for a, e in Aends.level(m).keys]
    )
    left2 = product_map(identity_map(A), end_inc)
    M = pushout(left2, glue)
    leg_cyl, leg_ab = M.legs
    j = compose(leg_ab, inl)
    r = pushout_map(M, compose(f, product(A, cyl).legs[0]), copair(AB, f, identity_map(B)))
    s = compose(leg_ab, inr)
    # A -> A + B is the pushout of the empty map into B along the empty map into A
    E = empty()
    w1_left = SimplicialMap(E, B, model=lambda m: [])
    w1_right = SimplicialMap(E, A, model=lambda m: [])
    P1 = pushout(w1_left, w1_right)
    w1 = PushoutWitness(w1_left, w1_right, P1)
    iso = pushout_map(P1, inr, inl)
    w2 = PushoutWitness(left2, glue, M)
    # the section B -> M is the pushout of the trivial cofibration A x {1} -> A x cyl along f
    P0 = product(A, point())
    at1 = product_map(identity_map(A), SimplicialMap(point(), cyl, model=lambda m: [vert(m, e1)]))
    w3 = PushoutWitness(at1, compose(f, P0.legs[0]), pushout(at1, compose(f, P0.legs[0])))
    iso3 = pushout_map(w3.pushout, leg_cyl, s)
    # a strict homotopy exists for the interval; with H there is none in general, and the
    # section witness above carries the weak equivalence (r o s = id, s trivial cofibration)
    H = _linear_homotopy(M, A, B, AB, cyl) if flavor == "kq" else None
    return CylinderFactorization(f, flavor, cyl, j, r, s, H, (w1, w2), iso, w3, iso3)


def _linear_homotopy(M: SimplicialSet, A: SimplicialSet, B: SimplicialSet, AB: SimplicialSet, cyl: SimplicialSet) -> SimplicialMap:
    """(a, u) at time w goes to (a, max(u, w)); the copy of B stays put."""
    P = product(M, cyl)
    Acyl = product(A, cyl)
    leg_cyl, leg_ab = M.legs

    def comp(m: int) -> list[int]:
        out = []
        for x, w in P.level(m).keys:
            side, c = M.key(m, x)
            wseq = cyl.key(m, w)
            if side == 0:
                a, u = Acyl.key(m, c)
                useq = cyl.key(m, u)
            else:
                part, a = AB.key(m, c)
                if part == 1:
                    out.append(x)
                    continue
                useq = (0,) * (m + 1)
            top = tuple(max(p, q) for p, q in zip(useq, wseq))
            out.append(leg_cyl(m, Acyl.key_lookup(m, (a, cyl.key_lookup(m, top)))))
        return out

    return SimplicialMap(P, M, model=comp)
