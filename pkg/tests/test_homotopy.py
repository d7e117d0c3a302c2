import pytest
from hypothesis import given

import oracles
from conftest import GROUPS, ZOO, categories
from leansset import identity_map
from leansset.builders import boundary, delta, horn, inclusion, jnerve, nerve, nerve_map, point
from leansset.category import all_functors, codiscrete, cyclic_group, ordinal, product_category, trivial_group
from leansset.hom import hom_set
from leansset.homotopy import (
    count_fillers,
    find_homotopy,
    homotopic,
    horn_filler_counts,
    is_dk_equivalence_qcat,
    is_equivalence_edge,
    is_lean_stratified_kan,
    is_minimal,
    is_weak_equivalence_kan,
    pi0,
    pi_n,
    qcat_map_space,
    simplex_map_of,
)
from leansset.lifting import PreconditionError, is_kan_complex, is_quasi_category
from leansset.limits import coproduct, terminal_map

Z2, Z3 = cyclic_group(2), cyclic_group(3)


def vertex_map(X, v):
    return simplex_map_of(X, 0, v)


class TestPi0:
    def test_two_points(self):
        assert len(pi0(boundary(1))) == 2

    def test_codiscrete(self):
        assert len(pi0(jnerve(1))) == 1

    def test_disjoint_nerves(self):
        assert len(pi0(coproduct(nerve(Z2), nerve(Z3)))) == 2

    @pytest.mark.parametrize("name", sorted(ZOO))
    def test_matches_category_components(self, name):
        C = ZOO[name]
        parent = list(range(C.n_objects))

        def find(a):
            while parent[a] != a:
                a = parent[a]
            return a

        for f in range(C.n_arrows):
            parent[find(C.src[f])] = find(C.tgt[f])
        assert len(pi0(nerve(C))) == len({find(x) for x in range(C.n_objects)})


class TestHomotopic:
    def test_reflexive(self):
        f = vertex_map(nerve(Z2), 0)
        assert homotopic(f, f)

    def test_codiscrete_vertices(self):
        J = jnerve(1)
        assert homotopic(vertex_map(J, 0), vertex_map(J, 1))

    def test_non_kan_target(self):
        D = delta(1)
        with pytest.raises(PreconditionError):
            homotopic(vertex_map(D, 0), vertex_map(D, 1))

    def test_discrete_target_is_kan(self):
        B = boundary(1)
        assert is_kan_complex(B)
        assert not homotopic(vertex_map(B, 0), vertex_map(B, 1))

    def test_components_separate(self):
        X = coproduct(nerve(Z2), nerve(Z2))
        assert not homotopic(vertex_map(X, 0), vertex_map(X, 1))

    def test_joyal_flavor(self):
        X = nerve(ordinal(1))
        f, g = vertex_map(X, 0), vertex_map(X, 1)
        assert not homotopic(f, g, flavor="joyal")
        J = jnerve(1)
        assert homotopic(vertex_map(J, 0), vertex_map(J, 1), flavor="joyal")

    def test_equivalence_relation_on_edges(self):
        X = nerve(Z2)
        maps = hom_set(delta(1), X)
        rel = [[homotopic(f, g, check=False) for g in maps] for f in maps]
        n = len(maps)
        for a in range(n):
            assert rel[a][a]
            for b in range(n):
                assert rel[a][b] == rel[b][a]
                for c in range(n):
                    if rel[a][b] and rel[b][c]:
                        assert rel[a][c]

    def test_relative_homotopy_fixes_boundary(self):
        X = nerve(Z2)
        e = [simplex_map_of(X, 1, x) for x in range(X.size(1))]
        rel = inclusion(boundary(1), delta(1))
        assert find_homotopy(e[0], e[1], rel=rel, check=False) is None
        assert find_homotopy(e[0], e[0], rel=rel, check=False) is not None


class TestPiN:
    @pytest.mark.parametrize("name", GROUPS)
    def test_pi1_matches_group(self, name):
        G = ZOO[name]
        X = nerve(G)
        t = pi_n(X, 0, 1)
        assert t.group_violations() == []
        oracle = oracles.edge_path_group(X, 0)
        assert oracles.isomorphic_tables(t.table, oracle)
        assert oracles.isomorphic_tables(t.table, oracles.group_table(G))

    @pytest.mark.parametrize("name", GROUPS)
    @pytest.mark.parametrize("n", [2, 3])
    def test_higher_groups_vanish(self, name, n):
        assert pi_n(nerve(ZOO[name]), 0, n).order == 1

    def test_codiscrete_simply_connected(self):
        J = jnerve(2)
        assert pi_n(J, 0, 1).order == 1

    def test_z2_order(self):
        t = pi_n(nerve(Z2), 0, 1)
        assert t.order == 2 and t.identity == 0

    def test_non_kan_rejected(self):
        with pytest.raises(PreconditionError):
            pi_n(nerve(ordinal(1)), 0, 1)
        with pytest.raises(ValueError):
            pi_n(nerve(Z2), 0, 0)

    def test_product_group(self):
        X = nerve(product_category(Z2, Z3))
        t = pi_n(X, 0, 1, check=False)
        assert t.order == 6 and t.group_violations() == []


class TestWeakEquivalence:
    def test_identity(self):
        assert is_weak_equivalence_kan(identity_map(nerve(Z2)))

    def test_groupoid_equivalence(self):
        G = product_category(codiscrete(2), Z2)
        eqs = [F for F in all_functors(Z2, G) if F.is_equivalence()]
        assert eqs
        f = nerve_map(eqs[0])
        assert is_weak_equivalence_kan(f)
        assert is_weak_equivalence_kan(f, use_nerves=False)

    def test_collapse(self):
        F = all_functors(Z2, trivial_group())[0]
        f = nerve_map(F)
        assert not is_weak_equivalence_kan(f)
        assert not is_weak_equivalence_kan(f, use_nerves=False)

    def test_contractible(self):
        f = terminal_map(jnerve(2), point())
        assert is_weak_equivalence_kan(f, use_nerves=False)


class TestQuasiCategories:
    def test_map_space_of_arrow(self):
        X = nerve(ordinal(1))
        M = qcat_map_space(X, 0, 1)
        assert M.size(0) == 1 and len(pi0(M)) == 1

    def test_map_space_backwards(self):
        assert qcat_map_space(nerve(ordinal(1)), 1, 0).is_empty()

    def test_map_space_group(self):
        M = qcat_map_space(nerve(Z2), 0, 0)
        assert M.size(0) == 2

    @pytest.mark.parametrize("name", ["[1]", "V", "Z/2", "kronecker", "idem"])
    def test_map_spaces_are_kan(self, name):
        X = nerve(ZOO[name])
        assert is_quasi_category(X)
        for x in range(X.size(0)):
            for y in range(X.size(0)):
                assert is_kan_complex(qcat_map_space(X, x, y))

    def test_equivalence_edges(self):
        X = nerve(Z2)
        assert all(is_equivalence_edge(X, e) for e in range(X.size(1)))
        Y = nerve(ordinal(1))
        arrow = [e for e in range(Y.size(1)) if Y.d(1, 0, e) != Y.d(1, 1, e)]
        assert len(arrow) == 1
        assert not is_equivalence_edge(Y, arrow[0])
        assert is_equivalence_edge(Y, Y.apply((0, 0), 0, 0))

    @given(categories)
    def test_dk_identity(self, name):
        r = is_dk_equivalence_qcat(identity_map(nerve(ZOO[name])))
        assert r.verdict and r.essentially_surjective and r.fully_faithful

    def test_dk_skeleton_inclusion(self):
        F = [F for F in all_functors(ZOO["[0]"], codiscrete(2))][0]
        r = is_dk_equivalence_qcat(nerve_map(F))
        assert r.verdict
        assert is_dk_equivalence_qcat(nerve_map(F), use_nerves=False).verdict

    def test_dk_collapse_not_fully_faithful(self):
        F = all_functors(ordinal(1), ordinal(0))[0]
        r = is_dk_equivalence_qcat(nerve_map(F))
        assert not r.fully_faithful and r.essentially_surjective
        assert is_dk_equivalence_qcat(nerve_map(F), use_nerves=False).as_dict() == r.as_dict()


class TestFillers:
    @pytest.mark.parametrize("name", ["[2]", "Z/3", "kronecker", "V"])
    def test_sphere_fillers(self, name):
        C = ZOO[name]
        X = nerve(C)
        for D in hom_set(boundary(2), X):
            B = D.source
            e = {f: X.level(1).keys[D(1, B.key_lookup(1, f))][0] for f in ((0, 1), (1, 2), (0, 2))}
            commutes = C.comp[(e[(1, 2)], e[(0, 1)])] == e[(0, 2)]
            assert count_fillers(X, D) == int(commutes)

    def test_degenerate_sphere(self):
        X = nerve(Z3)
        B = boundary(2)
        D = [D for D in hom_set(B, X) if all(X.level(1).keys[D(1, e)][0] == Z3.ident[0] for e in range(B.size(1)))]
        assert len(D) == 1 and count_fillers(X, D[0]) == 1

    def test_inner_horns_fill_once(self):
        assert horn_filler_counts(nerve(Z3), 2, 1) == [1] * 9

    def test_outer_horns_in_poset(self):
        counts = horn_filler_counts(nerve(ordinal(1)), 2, 0)
        assert sorted(counts) == [0, 1, 1, 1, 1]

    def test_three_dimensional_inner_horns(self):
        assert set(horn_filler_counts(nerve(ordinal(2)), 3, 1)) == {1}

    def test_filler_count_matches_lifting(self):
        from leansset.lifting import LiftingSquare, horn_inclusion, solve_lifting

        X = nerve(ordinal(1))
        i = horn_inclusion(2, 0)
        for h in hom_set(horn(2, 0), X):
            sq = LiftingSquare(i, terminal_map(X, point()), h, terminal_map(delta(2), point()))
            from leansset.homotopy import count_horn_fillers

            assert count_horn_fillers(X, h, 0) == len(solve_lifting(sq))


class TestMinimalAndStratified:
    @pytest.mark.parametrize("name", ["[1]", "Z/2", "V"])
    def test_nerves_minimal(self, name):
        assert is_minimal(nerve(ZOO[name]))

    def test_codiscrete_minimal(self):
        assert is_minimal(jnerve(1))

    def test_single_stratum(self):
        f = terminal_map(nerve(Z2), nerve(ordinal(0)))
        assert is_lean_stratified_kan(f)

    def test_identity_strata(self):
        assert is_lean_stratified_kan(identity_map(nerve(ordinal(1))))

    def test_non_kan_fiber(self):
        f = terminal_map(nerve(ordinal(1)), nerve(ordinal(0)))
        assert not is_lean_stratified_kan(f)

    def test_target_must_be_nerve(self):
        with pytest.raises(PreconditionError):
            is_lean_stratified_kan(terminal_map(nerve(Z2), boundary(2)))
