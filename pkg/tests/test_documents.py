"""Document parsing, serialization, and the text -> graph pipeline."""

from __future__ import annotations

import json

import numpy as np
import pytest

from forestprox import (
    DocumentRecord,
    GraphDocument,
    ParseError,
    ValidationError,
    parse_any,
    parse_document,
    parse_edge_list,
    serialize_document,
    serialize_edge_list,
    to_graph,
)

PLAIN = """\
# three vertices in a row
n=3 directed=0
0 1 1.0
1 2 1.0   # trailing comment
"""


def test_parse_plain_fixture():
    doc = parse_edge_list(PLAIN)
    assert doc.n == 3
    assert not doc.directed
    assert doc.records == (
        DocumentRecord(0, 1, 1.0),
        DocumentRecord(1, 2, 1.0),
    )
    assert doc.labels is None
    g = to_graph(doc)
    assert g.n == 3 and not g.directed and g.edge_count == 2


def test_parse_plain_directed_and_parallel():
    doc = parse_edge_list("n=2 directed=1\n0 1 0.5\n0 1 0.25\n")
    assert doc.directed
    assert len(doc.records) == 2
    g = to_graph(doc)
    assert g.directed
    assert g.aggregated_weights()[0, 1] == 0.75


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_edge_list("n=3 directed=0\n0 x 1.0\n")
    assert "line 2, column 3" in str(err.value)
    assert "'x' is not an integer" in str(err.value)

    with pytest.raises(ParseError) as err:
        parse_edge_list("n=3 directed=0\n0 1 heavy\n")
    assert "line 2, column 5" in str(err.value)

    with pytest.raises(ParseError) as err:
        parse_edge_list("n=3 directed=0\n  0 7 1.0\n")
    assert "vertex 7 outside 0..2" in str(err.value)
    assert "line 2, column 5" in str(err.value)

    with pytest.raises(ParseError) as err:
        parse_edge_list("n=3 directed=0\n0 1 -2.0\n")
    assert "weight must be positive" in str(err.value)

    with pytest.raises(ParseError) as err:
        parse_edge_list("n=3 directed=0\n0 1\n")
    assert "got 2 fields" in str(err.value)

    with pytest.raises(ParseError) as err:
        parse_edge_list("vertices: 3\n")
    assert "line 1" in str(err.value)

    with pytest.raises(ParseError) as err:
        parse_edge_list("# nothing but comments\n")
    assert "missing header" in str(err.value)

    with pytest.raises(ParseError):
        parse_edge_list("n=0 directed=0\n")


def test_serialize_plain_round_trip():
    doc = parse_edge_list(PLAIN)
    again = parse_edge_list(serialize_edge_list(doc))
    assert again == doc


def test_serialize_plain_rejects_rich_documents():
    labeled = GraphDocument(
        2, False, (DocumentRecord(0, 1, 1.0),), labels=("a", "b")
    )
    with pytest.raises(ValidationError):
        serialize_edge_list(labeled)
    multi = GraphDocument(2, False, (DocumentRecord(0, 1, 1.0, 3),))
    with pytest.raises(ValidationError):
        serialize_edge_list(multi)
    named = GraphDocument(2, False, (DocumentRecord("a", "b", 1.0),))
    with pytest.raises(ValidationError):
        serialize_edge_list(named)


JSON_DOC = """\
{
  "version": 1,
  "directed": true,
  "labels": ["ann", "bo", "cy"],
  "edges": [
    {"u": "ann", "v": "bo", "weight": 1.0},
    {"u": "bo", "v": "cy", "weight": 0.5, "multiplicity": 2},
    {"u": 2, "v": 0, "weight": 0.25}
  ]
}
"""


def test_parse_json_fixture():
    doc = parse_document(JSON_DOC)
    assert doc.n == 3
    assert doc.directed
    assert doc.labels == ("ann", "bo", "cy")
    assert doc.records[1] == DocumentRecord("bo", "cy", 0.5, 2)
    g = to_graph(doc)
    assert g.labels == ("ann", "bo", "cy")
    # the multiplicity-2 record expands into two parallel arcs
    assert g.edge_count == 4
    assert g.pair_multiplicities()[1, 2] == 2
    assert g.aggregated_weights()[1, 2] == 1.0
    assert g.label_of(2) == "cy"


def test_parse_any_dispatches_on_shape():
    assert parse_any(PLAIN).n == 3
    assert parse_any(JSON_DOC).labels == ("ann", "bo", "cy")
    assert parse_any("  \n" + JSON_DOC).directed


def test_json_parse_errors():
    with pytest.raises(ParseError) as err:
        parse_document("{ not json")
    assert "invalid JSON" in str(err.value)
    with pytest.raises(ParseError):
        parse_document("[1, 2]")
    with pytest.raises(ParseError):
        parse_document('{"directed": false}')
    with pytest.raises(ParseError):
        parse_document('{"n": 2}')
    with pytest.raises(ParseError):
        parse_document('{"n": 2, "directed": "no", "edges": []}')
    with pytest.raises(ParseError):
        parse_document('{"n": 2, "directed": false, "version": 7, "edges": []}')
    with pytest.raises(ParseError):
        parse_document(
            '{"n": 2, "directed": false, "edges": [{"u": 0, "v": 1}]}'
        )
    with pytest.raises(ParseError):
        parse_document(
            '{"n": 2, "directed": false,'
            ' "edges": [{"u": 0, "v": 1, "weight": true}]}'
        )
    with pytest.raises(ParseError):
        parse_document(
            '{"n": 2, "directed": false,'
            ' "edges": [{"u": 0, "v": 1, "weight": 1.0, "multiplicity": 0}]}'
        )
    with pytest.raises(ParseError):
        parse_document('{"n": 1, "labels": ["a", "b"], "directed": false}')


def test_unknown_label_is_rejected():
    doc = GraphDocument(
        2, False, (DocumentRecord("a", "zz", 1.0),), labels=("a", "b")
    )
    with pytest.raises(ParseError) as err:
        to_graph(doc)
    assert "unknown label 'zz'" in str(err.value)


def test_first_appearance_labeling():
    doc = parse_document(
        '{"n": 3, "directed": false, "edges":'
        ' [{"u": "west", "v": "east", "weight": 1.0}]}'
    )
    g = to_graph(doc)
    assert g.labels == ("west", "east", "2")
    assert g.aggregated_weights()[0, 1] == 1.0


def test_first_appearance_overflow():
    doc = GraphDocument(
        1, False, (DocumentRecord("a", "b", 1.0),), labels=None
    )
    with pytest.raises(ParseError) as err:
        to_graph(doc)
    assert "needs vertex 1, but n=1" in str(err.value)


def test_json_round_trip_is_lossless():
    doc = parse_document(JSON_DOC)
    assert parse_document(serialize_document(doc)) == doc
    data = json.loads(serialize_document(doc))
    assert data["version"] == 1
    assert data["labels"] == ["ann", "bo", "cy"]


def random_document(rng, plain: bool) -> GraphDocument:
    n = int(rng.integers(1, 7))
    directed = bool(rng.integers(2))
    m = int(rng.integers(0, 9))
    records = []
    for _ in range(m):
        if n < 2:
            break
        u = int(rng.integers(n))
        v = int(rng.integers(n - 1))
        if v >= u:
            v += 1
        weight = float(rng.uniform(1e-6, 50.0))
        if plain:
            records.append(DocumentRecord(u, v, weight))
        else:
            mult = int(rng.integers(1, 4)) if rng.integers(2) else None
            records.append(DocumentRecord(u, v, weight, mult))
    labels = None
    if not plain and rng.integers(2):
        labels = tuple(f"v{i}" for i in range(n))
    return GraphDocument(n, directed, tuple(records), labels)


def test_random_round_trips():
    rng = np.random.default_rng(151)
    for _ in range(200):
        plain = bool(rng.integers(2))
        doc = random_document(rng, plain)
        if plain:
            assert parse_edge_list(serialize_edge_list(doc)) == doc
        assert parse_document(serialize_document(doc)) == doc
        # parse_any must agree with the format-specific parser
        assert parse_any(serialize_document(doc)) == doc
        to_graph(doc)


def test_weights_round_trip_bitwise():
    rng = np.random.default_rng(157)
    weights = rng.uniform(1e-9, 1e9, size=64)
    doc = GraphDocument(
        2, False, tuple(DocumentRecord(0, 1, float(w)) for w in weights)
    )
    for parsed, original in zip(
        parse_edge_list(serialize_edge_list(doc)).records, doc.records
    ):
        assert parsed.weight == original.weight
