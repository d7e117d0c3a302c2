import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import ZOO, categories, complexes, lean_objects, standard_finite, standard_lean
from leansset import COSKELETAL, SKELETAL, CapError, SimplicialMap, compose, identity_map
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
    spine,
    vertex_set,
    walking_h,
)
from leansset.category import cyclic_group, discrete, ordinal
from leansset.hom import count_maps, hom_set, is_isomorphic
from leansset.limits import (
    classify,
    coproduct,
    coskeleton,
    product,
    pullback,
    pushout,
    skeleton,
    terminal_map,
    truncate,
)


class TestBuilders:
    def test_delta_one_sizes(self):
        assert delta(1).sizes(1) == [2, 3]

    def test_delta_ids(self):
        assert delta(1).ids(1) == ["00", "01", "11"]

    @pytest.mark.parametrize("n", range(4))
    def test_delta_nondegenerate(self, n):
        from math import comb

        assert delta(n).nondegenerate_counts(n + 1) == [comb(n + 1, m + 1) for m in range(n + 2)]

    def test_boundary_and_horn_counts(self):
        assert boundary(2).nondegenerate_counts(2) == [3, 3, 0]
        assert horn(2, 1).nondegenerate_counts(2) == [3, 2, 0]
        assert horn(3, 0).nondegenerate_counts(3) == [4, 6, 3, 0]
        assert spine(3).nondegenerate_counts(2) == [4, 3, 0]

    def test_horn_index_checked(self):
        with pytest.raises(ValueError):
            horn(2, 3)
        with pytest.raises(ValueError):
            delta(-1)

    def test_walking_h_counts(self):
        assert walking_h().nondegenerate_counts(3) == [2, 3, 2, 0]
        assert walking_h().extension == SKELETAL

    @pytest.mark.parametrize("m", range(4))
    def test_rkan_zero(self, m):
        assert rkan_two(0).size(m) == 2 ** (m + 1)

    def test_rkan_one(self):
        # functions from the monotone maps [1] -> [m] to a 2-element set
        assert rkan_two(1).sizes(2) == [2 ** 1, 2 ** 3, 2 ** 6]

    @pytest.mark.parametrize("m", range(4))
    def test_jnerve_one(self, m):
        J = jnerve(1)
        assert J.size(m) == 2 ** (m + 1)
        assert len(J.nondegenerate(m)) == 2

    @pytest.mark.parametrize("t", range(3))
    def test_jnerve_is_coskeleton_of_points(self, t):
        K = coskeleton(vertex_set(t + 1), 0)
        assert [K.size(m) for m in range(4)] == [jnerve(t).size(m) for m in range(4)]
        assert is_isomorphic(K, jnerve(t))

    def test_point_and_empty(self):
        assert point().sizes(3) == [1, 1, 1, 1]
        assert empty().sizes(2) == [0, 0, 0]


class TestNerves:
    @pytest.mark.parametrize("name", sorted(ZOO))
    def test_chain_counts(self, name):
        C = ZOO[name]
        N = nerve(C)
        assert N.sizes(3) == [oracles.chains(C, m) for m in range(4)]

    def test_nerve_z2(self):
        assert nerve(cyclic_group(2)).sizes(2) == [1, 2, 4]

    def test_discrete_nerve_is_constant(self):
        N = nerve(discrete(3))
        assert N.sizes(3) == [3, 3, 3, 3]
        assert N.nondegenerate_counts(3) == [3, 0, 0, 0]

    def test_nerve_of_one_is_delta_one(self):
        assert is_isomorphic(nerve(ordinal(1)), delta(1))

    @pytest.mark.parametrize("name", sorted(ZOO))
    def test_nerve_is_two_coskeletal(self, name):
        N = nerve(ZOO[name])
        assert N.extension == COSKELETAL and N.cap == 2
        c = classify(N).coskeletal_degree
        assert c is not None and c <= 2


class TestIdentities:
    @pytest.mark.parametrize("k", range(9))
    def test_standard_finite(self, k):
        X = standard_finite()[k]
        assert X.identity_violations(4) == []
        assert oracles.identity_violations(X, 4) == []

    @pytest.mark.parametrize("k", range(8))
    def test_standard_lean(self, k):
        X = standard_lean()[k]
        assert oracles.identity_violations(X, 4) == []

    def test_walking_h_and_rkan(self):
        assert oracles.identity_violations(walking_h(), 4) == []
        assert oracles.identity_violations(rkan_two(1), 3) == []

    def test_corrupted_data_is_caught(self):
        from leansset.sset import Level, SimplicialSet

        D = delta(1)
        lv = [D.level(0), D.level(1)]
        # swap d0 and d1 on the edge 01 so that d0 = 0 and d1 = 1 stays consistent, then break s0
        bad1 = Level(lv[1].ids, [list(f) for f in lv[1].faces], [[1, 0]])
        X = SimplicialSet(1, SKELETAL, levels=[lv[0], bad1])
        assert X.identity_violations(1)

    @given(complexes())
    def test_random_complexes(self, X):
        assert oracles.identity_violations(X, 3) == []

    @given(complexes(2), complexes(2))
    def test_random_products(self, X, Y):
        P = product(X, Y)
        assert oracles.identity_violations(P, 3) == []
        assert P.sizes(3) == [X.size(m) * Y.size(m) for m in range(4)]

    @given(complexes(), complexes())
    def test_random_coproducts(self, X, Y):
        S = coproduct(X, Y)
        assert oracles.identity_violations(S, 3) == []
        assert S.sizes(3) == [X.size(m) + Y.size(m) for m in range(4)]

    @given(lean_objects, lean_objects)
    def test_lean_products(self, X, Y):
        P = product(X, Y)
        assert oracles.identity_violations(P, 3) == []
        assert classify(P).is_lean


class TestLimits:
    def test_square_has_two_nondegenerate_triangles(self):
        P = product(delta(1), delta(1))
        assert P.size(1) == 9
        assert P.nondegenerate_counts(3) == [4, 5, 2, 0]

    def test_circle_pushout(self):
        # collapse both ends of an edge to one vertex
        B = boundary(1)
        S = pushout(inclusion(B, delta(1)), terminal_map(B, point()))
        assert S.nondegenerate_counts(2) == [1, 1, 0]

    def test_pushout_cocone_commutes(self):
        B = boundary(1)
        f, g = inclusion(B, delta(1)), inclusion(B, delta(1))
        S = pushout(f, g)
        u, v = S.legs
        assert compose(u, f).equals(compose(v, g), 2)
        assert S.nondegenerate_counts(2) == [2, 2, 0]

    @pytest.mark.parametrize("T", [delta(1), nerve(cyclic_group(2)), jnerve(1)], ids=["D1", "NZ2", "J1"])
    def test_pushout_is_initial_among_cocones(self, T):
        A = vertex_set(1)
        f = inclusion(A, delta(1))
        g = SimplicialMap(A, horn(2, 1), [[0]])
        S = pushout(f, g)
        u, v = S.legs
        cocones = sum(
            compose(x, f).equals(compose(y, g), 3)
            for x in hom_set(delta(1), T)
            for y in hom_set(horn(2, 1), T)
        )
        assert count_maps(S, T) == cocones

    @given(complexes(2), complexes(2))
    def test_pullback_over_point_is_product(self, X, Y):
        P = pullback(terminal_map(X, point()), terminal_map(Y, point()))
        assert P.sizes(3) == product(X, Y).sizes(3)

    def test_mixed_policies_reconcile_or_report(self):
        P = product(delta(1), jnerve(1))
        assert P.sizes(2) == [4, 12, 32]
        with pytest.raises(CapError):
            B = boundary(3)
            product(nerve(cyclic_group(2)), pushout(inclusion(B, delta(3)), terminal_map(B, point())))

    def test_circle_is_lean(self):
        B = boundary(1)
        S = pushout(inclusion(B, delta(1)), terminal_map(B, point()))
        assert classify(S).coskeletal_degree == 2

    def test_coproduct_keys(self):
        S = coproduct(delta(0), delta(1))
        assert S.size(0) == 3


class TestSkeleta:
    def test_coskeleton_of_two_points(self):
        K = coskeleton(coproduct(delta(0), delta(0)), 0)
        assert all(K.size(m) == jnerve(1).size(m) for m in range(4))
        assert is_isomorphic(K, jnerve(1))

    def test_one_skeleton_of_triangle(self):
        S = skeleton(delta(2), 1)
        assert S.nondegenerate_counts(3) == [3, 3, 0, 0]
        assert is_isomorphic(S, boundary(2))

    @pytest.mark.parametrize("k", range(8))
    def test_coskeleton_idempotent(self, k):
        X = standard_lean()[k]
        c = classify(X).coskeletal_degree
        assert is_isomorphic(coskeleton(X, c), X)

    def test_truncate_keeps_low_degrees(self):
        T = truncate(delta(2), 1)
        assert T.sizes(1) == [3, 6]


class TestClassify:
    def test_jnerve_two(self):
        r = classify(jnerve(2))
        assert r.is_lean and r.coskeletal_degree == 0

    def test_delta_two(self):
        r = classify(delta(2))
        assert r.is_finite_complex
        # nerves of posets are already 1-coskeletal
        assert r.coskeletal_degree == 1

    def test_nerve_z2(self):
        r = classify(nerve(cyclic_group(2)))
        assert r.is_lean and r.coskeletal_degree == 2

    def test_boundary_is_lean(self):
        r = classify(boundary(2))
        assert r.is_lean and r.is_finite_complex
        assert r.nondegenerate_counts == [3, 3]

    def test_three_sphere_not_lean(self):
        B = boundary(3)
        r = classify(pushout(inclusion(B, delta(3)), terminal_map(B, point())))
        assert not r.is_lean and r.coskeletal_degree is None
        assert r.nondegenerate_counts == [1, 0, 0, 1]


class TestYoneda:
    @pytest.mark.parametrize("n", range(3))
    @pytest.mark.parametrize("k", range(8))
    def test_lean(self, n, k):
        X = standard_lean()[k]
        assert count_maps(delta(n), X) == X.size(n)

    @pytest.mark.parametrize("n", range(3))
    def test_finite_against_oracle(self, n):
        for X in (boundary(2), horn(2, 0), walking_h()):
            assert count_maps(delta(n), X) == X.size(n) == oracles.hom_count(delta(n), X, n)


class TestAdjunction:
    @pytest.mark.parametrize("n", [0, 1])
    @pytest.mark.parametrize(
        "pair",
        [("d1", "nz2"), ("b2", "j1"), ("h21", "d1"), ("d2", "j1"), ("b1", "nz2")],
    )
    def test_truncation_coskeleton(self, n, pair):
        objs = {
            "d1": delta(1),
            "d2": delta(2),
            "b1": boundary(1),
            "b2": boundary(2),
            "h21": horn(2, 1),
            "nz2": nerve(cyclic_group(2)),
            "j1": jnerve(1),
        }
        X, Y = objs[pair[0]], objs[pair[1]]
        truncated = oracles.hom_count(X, Y, n)
        assert count_maps(X, coskeleton(Y, n)) == truncated


class TestMaps:
    @given(lean_objects)
    def test_identity_and_composition(self, X):
        i = identity_map(X)
        assert i.violations(3) == []
        assert compose(i, i).equals(i, 3)

    @given(categories)
    def test_nerve_maps_are_simplicial(self, name):
        from leansset.builders import nerve_map
        from leansset.category import all_functors

        C = ZOO[name]
        for F in all_functors(C, C, limit=5):
            assert nerve_map(F, nerve(C), nerve(C)).violations(3) == []

    @given(st.data())
    def test_random_maps_commute(self, data):
        X = data.draw(complexes(2))
        Y = data.draw(lean_objects)
        maps = hom_set(X, Y)
        f = maps[data.draw(st.integers(0, len(maps) - 1))]
        assert f.violations(3) == []
