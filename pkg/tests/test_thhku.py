import pytest

from gradss import algebra as alg
from gradss.dga import homology
from gradss.thhku import (
    PipelineError,
    abutment_relations,
    basis_formula_count,
    full_basis_count,
    input_facts,
    reproduce_thh_ku,
    step1_tor,
    step2_v0,
    step3_v1,
    weight_table,
)

from helpers import intro_dga


def test_step1_exterior_class_p5():
    pres, report = step1_tor(5)
    (g,) = pres.generators
    assert g.kind == "exterior" and g.total_degree == 3
    assert report.certificates[0]["table"] == {"0,0": 1, "1,2": 1}


def test_step1_is_p_independent():
    pres5, _ = step1_tor(5)
    pres7, _ = step1_tor(7)
    assert [g.total_degree for g in pres5.generators] == [
        g.total_degree for g in pres7.generators
    ]


def test_step1_rejects_composite():
    with pytest.raises(PipelineError):
        step1_tor(4)


def test_step2_result_degrees():
    for p in (5, 7):
        result, report = step2_v0(p, 60)
        assert [g.total_degree for g in result.generators] == [3, 2 * p - 1, 2 * p]
        kinds = [g.kind for g in result.generators]
        assert kinds == ["exterior", "exterior", "polynomial"]
        assert all(c["ok"] for c in report.certificates)


def test_step2_collapse_witness_degree():
    # the page is empty in total degree 2p - 2
    from gradss.thhku import relative_e2

    for p in (5, 7):
        pres = relative_e2(p, 60)
        assert alg.dimension_series(pres, 2 * p - 2)[2 * p - 2] == 0


def test_step3_generator_degrees_p5():
    result, report = step3_v1(5, 70)
    by_name = {g.name: g.total_degree for g in result.generators}
    assert by_name["u"] == 2
    assert by_name["mu2"] == 50
    assert [by_name[f"a{i}"] for i in range(5)] == [3, 13, 23, 33, 43]
    assert [by_name[f"b{i}"] for i in range(1, 5)] == [12, 22, 32, 42]
    assert by_name["l1"] == 9
    assert all(c["ok"] for c in report.certificates)


def test_step3_dimension_at_degree_twelve():
    # exactly b1 and l1 a0
    _, report = step3_v1(5, 70)
    pres, d = intro_dga(5, 70)
    H = homology(pres, d, 70)
    assert H.dim_total(12) == 2
    assert full_basis_count(5, 12) == 2


def test_step3_weight_obstruction_listing():
    _, report = step3_v1(5, 70)
    abutment = [c for c in report.certificates if c["kind"] == "abutment"][0]
    rel8 = [r for r in abutment["relations"] if r["label"] == "rel8[1,2]"]
    assert rel8 and rel8[0]["kind"] == "weight-obstruction"
    # obstruction classes u^2 b_{i+j} and l1 u^2 a_{i+j-1} both carry weight 3
    assert "weight 3" in rel8[0]["details"]


def test_step3_justification_kinds():
    _, report = step3_v1(5, 90)
    abutment = [c for c in report.certificates if c["kind"] == "abutment"][0]
    kinds = {r["label"]: r["kind"] for r in abutment["relations"]}
    assert kinds["rel1"] == "strict-lift"
    for label, kind in kinds.items():
        family = label.split("[")[0]
        if family in ("rel1", "rel2", "rel3", "rel4", "rel6"):
            assert kind == "strict-lift", label
        else:
            assert kind == "weight-obstruction", label


def test_weight_table():
    table = weight_table(5)
    assert table["u"] == 1 and table["l1"] == 0 and table["mu2"] == 0
    assert table["a2"] == 1 and table["b3"] == 1
    # weight of a2 b3 is 2, weight of l1 u^2 b2 is 3
    assert (table["a2"] + table["b3"]) % 4 == 2
    assert (table["l1"] + 2 * table["u"] + table["b2"]) % 4 == 3


def test_basis_formula_small_degrees():
    # degrees 0..12 for p = 5: 1, u, u^2, u^3, su, u su, u^2 su, b1, a1-free...
    expected = {0: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 1, 7: 1, 8: 0, 9: 0, 10: 0, 11: 0, 12: 1}
    for d, v in expected.items():
        assert basis_formula_count(5, d) == v, d


def test_input_facts_cover_pipeline():
    facts = input_facts(5)
    _, r3 = step3_v1(5, 70)
    for fid in r3.consumed_facts:
        assert fid in facts


def test_abutment_relation_count():
    rels = abutment_relations(5)
    labels = [r.label for r in rels]
    assert len(labels) == len(set(labels))
    families = {}
    for lbl in labels:
        families[lbl.split("[")[0]] = families.get(lbl.split("[")[0], 0) + 1
    assert families["rel1"] == 1
    assert families["rel2"] == 4   # i = 0..p-2
    assert families["rel3"] == 4
    assert families["rel4"] + families["rel6"] == 10  # pairs 1 <= i <= j <= 4
    assert families["rel5"] + families["rel7"] == 20  # i in 0..4, j in 1..4
    assert families["rel8"] == 15  # pairs 0 <= i <= j <= 4


def test_reproduce_pipeline_json_roundtrip():
    report = reproduce_thh_ku(5, 60)
    assert report.ok
    text = report.to_json()
    import json

    data = json.loads(text)
    assert data["prime"] == 5
    assert [s["name"] for s in data["steps"]] == [
        "tor-of-smash",
        "relative-run",
        "absolute-run",
    ]
