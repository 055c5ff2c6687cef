"""JSON documents: the graph interchange format and the report bodies.

Exact values never pass through floats: rationals are written as ``"p/q"``
strings (``str(Fraction)``), surds as ``"a+b*sqrt(r)"``, and any float
found in an input document is rejected.
"""

from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction
from pathlib import Path

from .exact import Surd
from .graph import (
    GeometricGraph,
    GraphAggregates,
    GraphValidationError,
    NotApplicableError,
    VertexLocalData,
    build_graph,
    is_locally_convex,
    vertex_local_data,
)
from .verifier import ClaimReport

ANALYSIS_FORMAT = "geodisjoint/analysis-v1"
SEARCH_FORMAT = "geodisjoint/search-v1"
NA = "not_applicable"


class GraphFormatError(GraphValidationError):
    rule = "interchange-format"


def _reject_float(text: str):
    raise GraphFormatError(f"floating-point literal {text} is not allowed; coordinates must be integers")


def _reject_constant(text: str):
    raise GraphFormatError(f"non-finite literal {text} is not allowed")


def loads_document(text: str) -> dict:
    try:
        doc = json.loads(text, parse_float=_reject_float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise GraphFormatError("top-level JSON value must be an object")
    return doc


def graph_from_dict(doc: dict) -> GeometricGraph:
    points, edges = doc.get("points"), doc.get("edges")
    if not isinstance(points, list) or not isinstance(edges, list):
        raise GraphFormatError('graph object needs "points" and "edges" arrays')
    for item in points + edges:
        if not (isinstance(item, list) and len(item) == 2):
            raise GraphFormatError(f"expected a pair, got {item!r}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise GraphFormatError('"name" must be a string')
    return build_graph(points, edges, name=name)


def graph_to_dict(g: GeometricGraph) -> dict:
    doc: dict = {}
    if g.name is not None:
        doc["name"] = g.name
    doc["points"] = [[p.x, p.y] for p in g.points]
    doc["edges"] = [[u, v] for u, v in g.edges]
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def read_graph(path: str | Path) -> GeometricGraph:
    return graph_from_dict(loads_document(Path(path).read_text(encoding="utf-8")))


def write_text(path: str | Path | None, text: str) -> None:
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text, encoding="utf-8")


def exact(value):
    """JSON-ready rendering of exact values, containers and enums."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, Surd)):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(exact(k)) if not isinstance(k, str) else k: exact(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return [exact(x) for x in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [exact(x) for x in value]
    raise TypeError(f"cannot serialise {type(value).__name__}")


def claim_report_to_dict(report: ClaimReport) -> dict:
    return {
        "claim": report.claim.value,
        "verdict": report.verdict,
        "lhs": None if report.lhs is None else str(report.lhs),
        "rhs": None if report.rhs is None else str(report.rhs),
        "relation": report.relation,
        "witness": exact(report.witness),
        "context": exact(report.context),
        "details": exact(report.details),
    }


def aggregates_to_dict(agg: GraphAggregates) -> dict:
    def opt(x):
        return NA if x is None else x

    return {
        "n": agg.n,
        "e": agg.e,
        "dj_total": agg.dj_total,
        "m_max": agg.m_max,
        "avg_degree": str(agg.avg_degree),
        "potential": str(agg.potential),
        "n_l": opt(agg.n_l),
        "n_r": opt(agg.n_r),
        "t_l": opt(agg.t_l),
        "t_r": opt(agg.t_r),
        "n_ell_pairs": opt(agg.n_ell_pairs),
        "dj_per_edge": [[u, v, c] for (u, v), c in agg.dj_per_edge.items()],
    }


def local_data_to_dict(data: VertexLocalData) -> dict:
    out = {}
    for key in VertexLocalData.__dataclass_fields__:
        if key in ("vertex", "degree", "is_convex"):
            continue
        out[key] = exact(getattr(data, key))
    return out


def vertex_entries(g: GeometricGraph) -> list[dict]:
    local_ok = is_locally_convex(g)
    entries = []
    for v in range(g.n):
        entry = {"vertex": v, "degree": g.degrees[v], "is_convex": g.convex_flags[v]}
        if local_ok and g.degrees[v] >= 1:
            entry["local"] = local_data_to_dict(vertex_local_data(g, v))
        else:
            entry["local"] = NA
        entries.append(entry)
    return entries


def analysis_document(g: GeometricGraph, agg: GraphAggregates) -> dict:
    return {
        "format": ANALYSIS_FORMAT,
        "graph": graph_to_dict(g),
        "aggregates": aggregates_to_dict(agg),
        "vertices": vertex_entries(g),
    }


__all__ = [
    "ANALYSIS_FORMAT",
    "SEARCH_FORMAT",
    "GraphFormatError",
    "NotApplicableError",
    "aggregates_to_dict",
    "analysis_document",
    "claim_report_to_dict",
    "dumps",
    "exact",
    "graph_from_dict",
    "graph_to_dict",
    "loads_document",
    "read_graph",
    "write_text",
]
