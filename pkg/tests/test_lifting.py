import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import ZOO, complexes
from leansset import identity_map
from leansset.builders import (
    boundary,
    delta,
    empty,
    horn,
    inclusion,
    jnerve,
    nerve,
    point,
    rkan_two,
    simplex_map,
    vertex_set,
)
from leansset.category import cyclic_group, ordinal
from leansset.hom import count_maps, hom_set, is_isomorphic
from leansset.lifting import (
    LiftingSquare,
    PreconditionError,
    boundary_inclusion,
    classify_map,
    generating_set,
    has_rlp,
    horn_inclusion,
    mapping_space,
    mono_by_lifting,
    pullback_power,
    pushout_product,
    solve_lifting,
    squares,
)
from leansset.limits import classify, coproduct, product, terminal_map

Z2, Z3 = cyclic_group(2), cyclic_group(3)


def to_point(X):
    return terminal_map(X, point())


class TestHomSet:
    def test_edge_to_edge(self):
        assert len(hom_set(delta(1), delta(1))) == 3

    def test_boundary_into_z2(self):
        expected = oracles.hom_count(boundary(2), nerve(Z2), 2)
        assert expected == 8
        assert len(hom_set(boundary(2), nerve(Z2))) == expected

    @pytest.mark.parametrize("X", [delta(2), nerve(Z3), jnerve(2)], ids=["D2", "NZ3", "J2"])
    def test_vertices(self, X):
        assert count_maps(delta(0), X) == X.size(0)

    @pytest.mark.parametrize(
        "X,Y",
        [(horn(2, 0), delta(2)), (boundary(2), jnerve(1)), (delta(1), nerve(ordinal(2))), (horn(3, 1), nerve(Z2))],
        ids=["h20-d2", "b2-j1", "d1-n2", "h31-nz2"],
    )
    def test_against_oracle(self, X, Y):
        assert count_maps(X, Y) == oracles.hom_count(X, Y, max(X.cap, Y.cap, 2))

    def test_enumeration_is_deterministic(self):
        a = [f.key(2) for f in hom_set(boundary(2), jnerve(1))]
        b = [f.key(2) for f in hom_set(boundary(2), jnerve(1))]
        assert a == b and len(set(a)) == len(a)


class TestMappingSpace:
    @pytest.mark.parametrize("Y", [nerve(Z2), jnerve(1), delta(1)], ids=["NZ2", "J1", "D1"])
    def test_point_exponent(self, Y):
        assert is_isomorphic(mapping_space(delta(0), Y), Y)

    def test_jnerve_into_z2_vertices(self):
        n = oracles.hom_count(jnerve(1), nerve(Z2), 2)
        M = mapping_space(jnerve(1), nerve(Z2))
        assert M.size(0) == n == 2

    def test_lean_closure(self):
        assert classify(mapping_space(boundary(2), nerve(Z3))).is_lean

    @pytest.mark.parametrize(
        "Z,X,Y",
        [
            (delta(1), vertex_set(2), nerve(Z2)),
            (boundary(2), delta(1), jnerve(1)),
            (delta(1), delta(1), nerve(ordinal(1))),
            (horn(2, 1), delta(1), nerve(Z2)),
        ],
        ids=["d1-2pts-nz2", "b2-d1-j1", "d1-d1-n1", "h21-d1-nz2"],
    )
    def test_exponential_law(self, Z, X, Y):
        assert count_maps(product(Z, X), Y) == count_maps(Z, mapping_space(X, Y))

    def test_generic_matches_nerve_shortcut(self):
        a = mapping_space(delta(1), nerve(Z2))
        b = mapping_space(delta(1), nerve(Z2), generic=True)
        assert a.sizes(2) == b.sizes(2)
        assert is_isomorphic(a, b)


class TestCornerMaps:
    def test_square_boundary(self):
        i = boundary_inclusion(1)
        q = pushout_product(i, i)
        assert q.is_injective()
        assert q.source.nondegenerate_counts(2)[:2] == [4, 4]
        assert is_isomorphic(q.target, product(delta(1), delta(1)))

    @pytest.mark.parametrize("g", [boundary_inclusion(1), horn_inclusion(2, 1)], ids=["b1", "h21"])
    def test_unit(self, g):
        u = inclusion(empty(), point())
        q = pushout_product(u, g)
        assert is_isomorphic(q.source, g.source)
        assert is_isomorphic(q.target, g.target)
        assert q.source.nondegenerate_counts(2) == g.source.nondegenerate_counts(2)

    def test_pullback_power_unit(self):
        u = inclusion(empty(), point())
        p = to_point(nerve(Z2))
        q = pullback_power(u, p)
        assert is_isomorphic(q.source, nerve(Z2))
        assert q.target.sizes(2) == [1, 1, 1]

    def test_pullback_power_against_edge(self):
        # Map(D1, X) -> X x X restricted to endpoints
        i = boundary_inclusion(1)
        q = pullback_power(i, to_point(nerve(Z2)))
        assert q.source.size(0) == 2
        assert q.target.size(0) == 1


class TestLiftingSolver:
    def test_identity_left(self):
        X = nerve(Z2)
        i = identity_map(delta(1))
        for top in hom_set(delta(1), X):
            sq = LiftingSquare(i, to_point(X), top, to_point(delta(1)))
            fillers = solve_lifting(sq)
            assert len(fillers) == 1 and fillers[0].equals(top, 2)

    def test_inner_horn_in_poset_nerve(self):
        i, p = horn_inclusion(2, 1), to_point(nerve(ordinal(2)))
        counts = [len(solve_lifting(sq)) for sq in squares(i, p)]
        assert counts and set(counts) == {1}

    def test_outer_horn_backwards_edge(self):
        # 01 -> 01 and 02 -> 00 would force 12 -> 10
        A, D = horn(2, 0), delta(1)
        top = None
        for t in hom_set(A, D):
            vs = t.comp(0)
            if [vs[A.idx(0, v)] for v in "012"] == [0, 1, 0]:
                top = t
        assert top is not None
        sq = LiftingSquare(horn_inclusion(2, 0), to_point(D), top, to_point(delta(2)))
        assert solve_lifting(sq) == []

    def test_non_commuting_square_rejected(self):
        X = delta(1)
        maps = hom_set(delta(0), X)
        sq = LiftingSquare(identity_map(delta(0)), identity_map(X), maps[0], maps[1])
        with pytest.raises(PreconditionError):
            solve_lifting(sq)

    @pytest.mark.parametrize("X", [nerve(Z2), jnerve(1)], ids=["NZ2", "J1"])
    @pytest.mark.parametrize("k", [0, 2, 4])
    def test_high_horns_fill_uniquely(self, X, k):
        i, p = horn_inclusion(4, k), to_point(X)
        counts = [len(solve_lifting(sq, limit=2)) for sq in squares(i, p)]
        assert counts and set(counts) == {1}


class TestRLP:
    def test_groupoid_nerve_is_kan(self):
        r = has_rlp(to_point(nerve(Z2)), "kanHorns", cap=4)
        assert r.holds

    def test_edge_is_not_kan(self):
        r = has_rlp(to_point(delta(1)), "kanHorns")
        assert not r.holds
        assert r.witness.label in ("Lambda2_0", "Lambda2_2")
        assert r.witness.commutes()
        assert solve_lifting(r.witness) == []

    def test_edge_fails_at_left_horn_first(self):
        gens = [g for g in generating_set("kanHorns", 2) if g.name != "Lambda2_2"]
        r = has_rlp(to_point(delta(1)), gens)
        assert not r.holds and r.witness.label == "Lambda2_0"

    @pytest.mark.parametrize("name", sorted(ZOO))
    def test_category_nerves_are_joyal_fibrant(self, name):
        assert has_rlp(to_point(nerve(ZOO[name])), "joyalM").holds

    def test_generating_set_shapes(self):
        assert [g.name for g in generating_set("innerHorns", 3)] == ["Lambda2_1", "Lambda3_1", "Lambda3_2"]
        assert len(generating_set("joyalM", 3)) == 4
        assert [g.name for g in generating_set("boundaries", 2)] == ["dDelta0", "dDelta1", "dDelta2"]
        assert len(generating_set("rKanTwoFamily", 2)) == 3
        with pytest.raises(ValueError):
            generating_set("bogus", 2)


class TestClassifyMap:
    def test_z3_kan(self):
        assert classify_map(to_point(nerve(Z3)), "kanFibration").holds

    def test_fold_not_mono(self):
        P = point()
        S = coproduct(P, P)
        r = classify_map(terminal_map(S, P), "monomorphism")
        assert not r.holds and r.witness.label.startswith("R")

    def test_boundary_inclusion_mono(self):
        assert classify_map(boundary_inclusion(2), "monomorphism").holds

    def test_categorical_needs_quasi_categories(self):
        with pytest.raises(PreconditionError):
            classify_map(to_point(boundary(2)), "categoricalFibration")

    def test_trivial_fibration_of_contractible_groupoid(self):
        assert classify_map(to_point(jnerve(1)), "trivialFibration").holds
        assert not classify_map(to_point(nerve(Z2)), "trivialFibration").holds

    def test_search_agrees_with_nerve_shortcut(self):
        for kind in ("kanFibration", "innerFibration"):
            for X in (nerve(Z2), nerve(ordinal(1))):
                p = to_point(X)
                assert classify_map(p, kind).holds == classify_map(p, kind, use_nerves=False).holds

    def test_inner_fibration_not_kan(self):
        p = to_point(nerve(ordinal(1)))
        assert classify_map(p, "innerFibration").holds
        assert not classify_map(p, "kanFibration").holds

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            classify_map(to_point(delta(0)), "bogus")


class TestRKan:
    @pytest.mark.parametrize("n", range(3))
    @pytest.mark.parametrize("X", [delta(1), boundary(2), horn(2, 0), vertex_set(2)], ids=["D1", "B2", "H20", "V2"])
    def test_universal_property(self, n, X):
        assert count_maps(X, rkan_two(n)) == 2 ** X.size(n)


@st.composite
def simplicial_maps(draw):
    X = draw(complexes(2))
    Y = draw(complexes(2))
    maps = hom_set(X, Y)
    return maps[draw(st.integers(0, len(maps) - 1))]


class TestMonoEquivalence:
    @given(simplicial_maps())
    def test_lifting_matches_injectivity(self, f):
        assert mono_by_lifting(f).holds == f.is_injective()

    @given(complexes(2))
    def test_faces_of_simplex_are_monos(self, X):
        n = X.skeletal_dim()
        top = delta(max(n, 0) + 1)
        for f in hom_set(X, top)[:3]:
            assert mono_by_lifting(f).holds == f.is_injective()

    def test_degenerate_map_not_mono(self):
        f = simplex_map((0, 0), delta(1), delta(0))
        assert not mono_by_lifting(f).holds
