import json
import random

import pytest
from hypothesis import given, settings

from conftest import ZOO, complexes
from generators import random_pro_map
from leansset import identity_map, io
from leansset.builders import boundary, delta, horn, inclusion, jnerve, nerve, point, walking_h
from leansset.category import all_functors, cyclic_group, ordinal
from leansset.hom import is_isomorphic
from leansset.pro import const, pro_complete_lean
from leansset.segal import discrete_nerve, discrete_nerve_map, external_product
from leansset.sset import CapError, SimplicialIdentityError
from leansset.verifier import inherited_presentation

Z2 = cyclic_group(2)


def roundtrip(x):
    text = io.serialize(x)
    again = io.serialize(_parse(text, x))
    assert again == text
    return text


def _parse(text, x):
    from leansset.pro import ProMap, ProObject
    from leansset.segal import BisimplicialMap, BisimplicialSet
    from leansset.verifier import FibTestPresentation

    if isinstance(x, (ProObject, ProMap)):
        return io.parse_prx(text)
    if isinstance(x, (BisimplicialSet, BisimplicialMap)):
        return io.parse_bsx(text)
    if isinstance(x, FibTestPresentation):
        return io.parse_ftp(text)
    return io.parse_ssx(text)


class TestSSX:
    def test_canonical_delta1(self):
        text = io.serialize(delta(1))
        assert text == (
            '{"cap":1,"cells":[["0","1"],["00","01","11"]],"degeneracies":[[["00","11"]],[]],'
            '"extension":"skeletal","faces":[[],[["0","1","1"],["0","0","1"]]],"name":"Delta1"}\n'
        )
        assert roundtrip(delta(1)) == text

    @pytest.mark.parametrize(
        "X", [point(), boundary(2), horn(3, 1), jnerve(2), walking_h(), nerve(Z2), nerve(ZOO["V"])],
        ids=["pt", "b2", "h31", "J2", "H", "NZ2", "NV"],
    )
    def test_roundtrip_objects(self, X):
        roundtrip(X)
        Y = io.parse_ssx(io.serialize(X))
        assert Y.sizes(2) == X.sizes(2) and Y.cap == X.cap

    @settings(max_examples=30)
    @given(complexes(3))
    def test_roundtrip_complexes(self, X):
        roundtrip(X)

    def test_roundtrip_map(self):
        f = inclusion(horn(2, 1), delta(2))
        text = roundtrip(f)
        g = io.parse_ssx(text)
        assert g.is_injective() and g.source.sizes(2) == f.source.sizes(2)

    def test_corrupted_face(self):
        doc = json.loads(io.serialize(delta(2)))
        # swap the two faces of the first edge: 01 now has d0 = 0 and d1 = 1
        edge = doc["faces"][1]
        edge[0][1], edge[1][1] = edge[1][1], edge[0][1]
        with pytest.raises(SimplicialIdentityError) as e:
            io.parse_ssx(json.dumps(doc))
        assert "d" in str(e.value)

    def test_unknown_cell(self):
        doc = json.loads(io.serialize(delta(1)))
        doc["faces"][1][0][0] = "nope"
        with pytest.raises(io.FormatError) as e:
            io.parse_ssx(json.dumps(doc))
        assert e.value.path == "$.faces[1][0][0]"

    def test_missing_field(self):
        doc = json.loads(io.serialize(delta(1)))
        del doc["cap"]
        with pytest.raises(io.FormatError, match="missing field 'cap'"):
            io.parse_ssx(json.dumps(doc))

    def test_duplicate_identifier(self):
        doc = json.loads(io.serialize(delta(1)))
        doc["cells"][0] = ["0", "0"]
        with pytest.raises(io.FormatError, match="duplicate"):
            io.parse_ssx(json.dumps(doc))

    def test_bad_json_position(self):
        with pytest.raises(io.FormatError) as e:
            io.parse_ssx('{"cap": 1,\n  "cells": [}')
        assert e.value.path.startswith("line 2 column")

    def test_stored_levels_disagree_with_cap(self):
        # stored edges that the vertices alone do not generate
        doc = json.loads(io.serialize(boundary(2)))
        doc["cap"] = 0
        with pytest.raises(CapError):
            io.parse_ssx(json.dumps(doc))


class TestPRX:
    def test_roundtrip_completion(self):
        C = pro_complete_lean(boundary(2), 2)
        roundtrip(C)

    def test_roundtrip_constant(self):
        roundtrip(const(nerve(Z2)))

    @pytest.mark.parametrize("seed", range(5))
    def test_roundtrip_random_pro_maps(self, seed):
        f, _ = random_pro_map(random.Random(seed))
        roundtrip(f)

    def test_non_codirected_index(self):
        doc = json.loads(io.serialize(const(point())))
        doc["index"]["elements"] = ["a", "b"]
        doc["index"]["order"] = []
        doc["levels"] = {"a": doc["levels"]["0"], "b": doc["levels"]["0"]}
        with pytest.raises(io.FormatError) as e:
            io.parse_prx(json.dumps(doc))
        assert "['a', 'b']" in str(e.value) or "['b', 'a']" in str(e.value)
        assert e.value.path == "$.index"

    def test_missing_level(self):
        doc = json.loads(io.serialize(const(point())))
        doc["levels"] = {}
        with pytest.raises(io.FormatError, match="levels must be given"):
            io.parse_prx(json.dumps(doc))


class TestBSX:
    def test_roundtrip_external(self):
        roundtrip(external_product(delta(1), boundary(1)))

    def test_roundtrip_discrete_nerve(self):
        roundtrip(discrete_nerve(ordinal(1)))

    def test_roundtrip_map(self):
        C = ordinal(1)
        X = discrete_nerve(C)
        F = [F for F in all_functors(C, C) if F.is_isomorphism()][0]
        roundtrip(discrete_nerve_map(F, X, X))


class TestFTP:
    def test_roundtrip(self):
        P = inherited_presentation([point(), jnerve(1)], cap=2)
        text = io.serialize_ftp(P, 2)
        Q = io.parse_ftp(text)
        assert io.serialize_ftp(Q, 2) == text
        assert len(Q.fibrations) == len(P.fibrations)
        assert [g.name for g in Q.generators] == [g.name for g in P.generators]

    def test_inherited_without_arrows(self):
        doc = json.loads(io.serialize_ftp(inherited_presentation([point(), nerve(Z2)], cap=1), 1))
        del doc["fibrations"], doc["trivialFibrations"]
        P = io.parse_ftp(json.dumps(doc))
        assert P.inherited and len(P.fibrations) > 0

    def test_object_by_reference(self, tmp_path):
        (tmp_path / "pt.ssx").write_text(io.serialize(point()))
        doc = {"flavor": "kq", "objects": {"pt": "pt.ssx"}, "tests": ["pt"], "inherited": True}
        (tmp_path / "p.ftp").write_text(json.dumps(doc))
        P = io.read_any(tmp_path / "p.ftp")
        assert len(P.tests) == 1 and is_isomorphic(P.tests[0], point())

    def test_unknown_object(self):
        doc = {"flavor": "kq", "objects": {}, "tests": ["ghost"]}
        with pytest.raises(io.FormatError) as e:
            io.parse_ftp(json.dumps(doc))
        assert e.value.path == "$.tests[0]"

    def test_missing_identity(self):
        pt = json.loads(io.serialize(point()))
        doc = {"flavor": "kq", "objects": {"pt": pt}, "tests": ["pt"], "fibrations": [], "trivialFibrations": []}
        with pytest.raises(io.FormatError, match="identity"):
            io.parse_ftp(json.dumps(doc))


class TestReadAny:
    def test_dispatch_by_suffix(self, tmp_path):
        (tmp_path / "a.ssx").write_text(io.serialize(identity_map(delta(1))))
        (tmp_path / "b.prx").write_text(io.serialize(const(delta(0))))
        assert io.read_any(tmp_path / "a.ssx").is_injective()
        assert io.read_any(tmp_path / "b.prx").least == "0"

    def test_missing_file(self, tmp_path):
        with pytest.raises(io.FormatError, match="cannot read"):
            io.read_any(tmp_path / "nope.ssx")

    def test_serialize_rejects_other(self):
        with pytest.raises(TypeError):
            io.serialize(3)
