import json
from fractions import Fraction

import pytest

from dycoh.bk import bk, named_module
from dycoh.double import coreg_coefficient, trivial_coefficient
from dycoh.dycomplex import cohomology_dims, dual_hochschild
from dycoh.exactlin import Mat
from dycoh.hopf import check_hopf_axioms, cyclic_group_algebra
from dycoh.rep import coadjoint_module
from dycoh.serialize import (
    SchemaError,
    coefficient_from_json,
    dec_mat,
    dmodule_to_json,
    dumps,
    enc_mat,
    hopf_from_json,
    hopf_to_json,
    loads,
    rep_from_json,
    rep_to_json,
    table_to_json,
    zcoef_to_json,
)


def reload(doc):
    return json.loads(dumps(doc))


@pytest.mark.parametrize("H", [bk(1), bk(2), cyclic_group_algebra(3)], ids=["B1", "B2", "Z3"])
def test_hopf_round_trip(H):
    H2 = hopf_from_json(reload(hopf_to_json(H)))
    assert H2.mult == H.mult and H2.comult == H.comult
    assert H2.antipode == H.antipode and H2.counit == H.counit
    assert H2.labels == H.labels
    assert check_hopf_axioms(H2).passed


def test_matrix_round_trip_with_fractions():
    M = Mat(2, 3, {(0, 1): Fraction(-3, 7), (1, 2): 5})
    assert dec_mat(reload(enc_mat(M)), "$") == M


def test_module_round_trip():
    H = bk(1)
    V = coadjoint_module(H)
    V2 = rep_from_json(reload(rep_to_json(V)), H)
    assert V2.actions == V.actions


def test_coefficient_round_trips():
    H = bk(1)
    Z = coreg_coefficient(H)
    Z2 = coefficient_from_json(reload(zcoef_to_json(Z)), H)
    assert Z2.beta == Z.beta
    A = named_module(1, "Aminus")
    Z3 = coefficient_from_json(reload(dmodule_to_json(A)), H)
    assert Z3.beta == A.beta()


def test_dumps_is_canonical():
    H = bk(1)
    assert dumps(hopf_to_json(H)) == dumps(hopf_to_json(bk(1)))
    assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')


def test_table_json_drops_timings_by_default():
    t = cohomology_dims(dual_hochschild(bk(1), 2))
    assert "timings" not in table_to_json(t)
    assert "timings" in table_to_json(t, timings=True)
    assert table_to_json(t)["dims"] == [1, 0, 1]


@pytest.mark.parametrize("text,where", [
    ("", "<input>:1:1"),
    ("{\n  \"dim\": }", "<input>:2:"),
])
def test_loads_errors(text, where):
    with pytest.raises(SchemaError) as e:
        loads(text)
    assert e.value.where.startswith(where)


@pytest.mark.parametrize("mutate,where", [
    (lambda d: d.pop("mult"), "$.mult"),
    (lambda d: d.__setitem__("dim", 0), "$.dim"),
    (lambda d: d["mult"].append(d["mult"][0]), "$.mult"),
    (lambda d: d["unit"].__setitem__(0, [0, "1/0"]), "$.unit"),
    (lambda d: d["counit"].__setitem__(0, [9, "1"]), "$.counit"),
    (lambda d: d.__setitem__("basis", ["a"]), "$.basis"),
])
def test_schema_errors(mutate, where):
    doc = reload(hopf_to_json(bk(1)))
    mutate(doc)
    with pytest.raises(SchemaError) as e:
        hopf_from_json(doc)
    assert e.value.where.startswith(where)


def test_wrong_coefficient_type():
    with pytest.raises(SchemaError):
        coefficient_from_json({"type": "banana"}, bk(1))
