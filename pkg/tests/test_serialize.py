from __future__ import annotations

import json

import pytest

from geodisjoint.generators import convex_cycle, extremal_gnk
from geodisjoint.graph import aggregates, build_graph
from geodisjoint.serialize import (
    GraphFormatError,
    analysis_document,
    claim_report_to_dict,
    dumps,
    exact,
    graph_from_dict,
    graph_to_dict,
    loads_document,
)
from geodisjoint.verifier import ClaimId, check_claim


def test_graph_round_trip(g11_2):
    doc = graph_to_dict(g11_2)
    assert doc["name"] == "G_11,2" and len(doc["points"]) == 11 and len(doc["edges"]) == 22
    again = graph_from_dict(loads_document(dumps(doc)))
    assert again == g11_2 and again.name == g11_2.name


def test_name_is_optional():
    g = graph_from_dict({"points": [[0, 0], [3, 1]], "edges": [[0, 1]]})
    assert g.name is None and "name" not in graph_to_dict(g)


@pytest.mark.parametrize(
    "text, match",
    [
        ('{"points": [[0, 0.5]], "edges": []}', "floating-point"),
        ('{"points": [[0, 1e3]], "edges": []}', "floating-point"),
        ('{"points": [[0, NaN]], "edges": []}', "non-finite"),
        ('{"points": [[0, 0]], "edges": [', "malformed JSON"),
        ("[1, 2]", "must be an object"),
        ('{"points": [[0, 0]]}', "needs"),
        ('{"points": [[0, 0, 1]], "edges": []}', "expected a pair"),
        ('{"points": [[0, 0]], "edges": [], "name": 3}', "name"),
    ],
)
def test_malformed_documents(text, match):
    with pytest.raises(GraphFormatError, match=match):
        graph_from_dict(loads_document(text))


def test_validation_errors_pass_through():
    with pytest.raises(Exception) as info:
        graph_from_dict(loads_document('{"points": [[0, 0], [1, 1], [2, 2]], "edges": []}'))
    assert info.value.rule == "general-position"


def test_analysis_g12_3(g12_3):
    doc = analysis_document(g12_3, aggregates(g12_3))
    agg = doc["aggregates"]
    assert (agg["dj_total"], agg["m_max"], agg["avg_degree"]) == (60, 6, "5")
    assert 2 * agg["dj_total"] == sum(row[2] for row in agg["dj_per_edge"])
    assert len(doc["vertices"]) == 12


def test_analysis_pentagon():
    g = convex_cycle(5)
    agg = analysis_document(g, aggregates(g))["aggregates"]
    assert (agg["n_l"], agg["t_l"], agg["dj_total"], agg["potential"]) == (0, 0, 5, "0")


def test_analysis_edgeless():
    g = build_graph([(0, 0), (4, 1), (1, 5)], [])
    doc = analysis_document(g, aggregates(g))
    agg = doc["aggregates"]
    assert agg["dj_total"] == 0
    for key in ("n_l", "n_r", "t_l", "t_r", "n_ell_pairs"):
        assert agg[key] == "not_applicable"
    assert all(v["local"] == "not_applicable" for v in doc["vertices"])
    assert agg["potential"] == "0"  # C(0, 3) = 0

def test_rationals_are_strings():
    g = extremal_gnk(13, 4)
    r = claim_report_to_dict(check_claim(g, ClaimId.theorem_1))
    assert r["lhs"] == "39" and r["rhs"] == "42"
    r = claim_report_to_dict(check_claim(extremal_gnk(12, 3), ClaimId.conjecture_1_threshold))
    assert r["details"]["threshold"] == "36/5"  # sqrt(49) folds to 7
    json.dumps(r)  # fully serialisable


def test_exact_rejects_unknown_types():
    with pytest.raises(TypeError):
        exact(1.5)


def test_surd_rendering_in_reports(c5):
    r = claim_report_to_dict(check_claim(c5, ClaimId.conjecture_1))
    assert (r["lhs"], r["rhs"], r["relation"]) == ("5", "15/4+5/4*sqrt(17)", "<=")
