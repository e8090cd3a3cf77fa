"""Reading and writing graph documents.

Two formats.  The plain edge list is line-oriented:

    # any comment
    n=3 directed=0
    0 1 1.0
    1 2 1.0

with integer endpoints and one record per line; repeated pairs are
parallel edges.  The structured document is JSON and additionally
carries vertex labels and per-record multiplicities.  Both round-trip
losslessly, floats included.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import NonPositiveWeightError, ParseError, ValidationError
from .graph import WeightedMultigraph, build_graph


class DocumentRecord(NamedTuple):
    """One edge line: endpoints by index or label, weight, multiplicity."""

    u: int | str
    v: int | str
    weight: float
    multiplicity: int | None = None


@dataclass(frozen=True)
class GraphDocument:
    """Parsed graph file, structurally faithful to the input."""

    n: int
    directed: bool
    records: tuple[DocumentRecord, ...]
    labels: tuple[str, ...] | None = None
    version: int = 1


_HEADER = re.compile(r"^n=(\d+)\s+directed=([01])$")


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def parse_edge_list(text: str) -> GraphDocument:
    """Parse the plain edge-list format, with positions in error messages."""
    header: tuple[int, bool] | None = None
    records: list[DocumentRecord] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if header is None:
            match = _HEADER.match(line)
            if match is None:
                raise ParseError(
                    "expected header 'n=<count> directed=<0|1>'", lineno, 1
                )
            header = (int(match.group(1)), match.group(2) == "1")
            if header[0] < 1:
                raise ParseError("vertex count must be at least 1", lineno, 1)
            continue
        tokens = list(re.finditer(r"\S+", _strip_comment(raw)))
        if len(tokens) != 3:
            raise ParseError(
                f"expected '<u> <v> <weight>', got {len(tokens)} fields",
                lineno,
                tokens[0].start() + 1 if tokens else 1,
            )
        parts = []
        for pos, tok in zip(range(2), tokens):
            try:
                parts.append(int(tok.group()))
            except ValueError:
                raise ParseError(
                    f"endpoint {tok.group()!r} is not an integer",
                    lineno,
                    tok.start() + 1,
                ) from None
        try:
            weight = float(tokens[2].group())
        except ValueError:
            raise ParseError(
                f"weight {tokens[2].group()!r} is not a number",
                lineno,
                tokens[2].start() + 1,
            ) from None
        n = header[0]
        for value, tok in zip(parts, tokens):
            if not (0 <= value < n):
                raise ParseError(
                    f"vertex {value} outside 0..{n - 1}", lineno, tok.start() + 1
                )
        if not weight > 0.0:
            raise ParseError(
                f"weight must be positive, got {weight}",
                lineno,
                tokens[2].start() + 1,
            )
        records.append(DocumentRecord(parts[0], parts[1], weight))
    if header is None:
        raise ParseError("empty input: missing header line")
    return GraphDocument(header[0], header[1], tuple(records))


def serialize_edge_list(doc: GraphDocument) -> str:
    """Write the plain format.  Labels and multiplicities do not fit it."""
    if doc.labels is not None:
        raise ValidationError("plain edge lists cannot carry labels; use JSON")
    lines = [f"n={doc.n} directed={1 if doc.directed else 0}"]
    for rec in doc.records:
        if rec.multiplicity is not None:
            raise ValidationError(
                "plain edge lists cannot carry multiplicities; use JSON"
            )
        if not isinstance(rec.u, int) or not isinstance(rec.v, int):
            raise ValidationError("plain edge lists need integer endpoints")
        lines.append(f"{rec.u} {rec.v} {rec.weight:.17g}")
    return "\n".join(lines) + "\n"


def parse_document(text: str) -> GraphDocument:
    """Parse the structured JSON format."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(data, dict):
        raise ParseError("document root must be an object")
    version = data.get("version", 1)
    if version != 1:
        raise ParseError(f"unsupported document version {version!r}")
    if "directed" not in data or not isinstance(data["directed"], bool):
        raise ParseError("document needs a boolean 'directed' field")
    labels = None
    if "labels" in data:
        raw_labels = data["labels"]
        if not isinstance(raw_labels, list) or not all(
            isinstance(x, str) for x in raw_labels
        ):
            raise ParseError("'labels' must be a list of strings")
        labels = tuple(raw_labels)
    if "n" in data:
        n = data["n"]
        if not isinstance(n, int) or n < 1:
            raise ParseError(f"'n' must be a positive integer, got {n!r}")
        if labels is not None and len(labels) != n:
            raise ParseError(f"{len(labels)} labels for n={n}")
    elif labels is not None:
        n = len(labels)
    else:
        raise ParseError("document needs 'n' or 'labels'")
    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise ParseError("'edges' must be a list")
    records = []
    for pos, entry in enumerate(raw_edges):
        if not isinstance(entry, dict):
            raise ParseError(f"edge {pos}: each edge must be an object")
        try:
            u, v, weight = entry["u"], entry["v"], entry["weight"]
        except KeyError as exc:
            raise ParseError(f"edge {pos}: missing field {exc}") from None
        for end in (u, v):
            if not isinstance(end, (int, str)) or isinstance(end, bool):
                raise ParseError(f"edge {pos}: endpoints must be ints or labels")
        if isinstance(weight, bool) or not isinstance(weight, (int, float)):
            raise ParseError(f"edge {pos}: weight must be a number")
        weight = float(weight)
        if not weight > 0.0:
            raise ParseError(f"edge {pos}: weight must be positive, got {weight}")
        multiplicity = entry.get("multiplicity")
        if multiplicity is not None and (
            isinstance(multiplicity, bool)
            or not isinstance(multiplicity, int)
            or multiplicity < 1
        ):
            raise ParseError(f"edge {pos}: multiplicity must be a positive integer")
        records.append(DocumentRecord(u, v, weight, multiplicity))
    return GraphDocument(n, data["directed"], tuple(records), labels, version)


def serialize_document(doc: GraphDocument) -> str:
    """Write the structured JSON format."""
    edges = []
    for rec in doc.records:
        entry: dict = {"u": rec.u, "v": rec.v, "weight": rec.weight}
        if rec.multiplicity is not None:
            entry["multiplicity"] = rec.multiplicity
        edges.append(entry)
    data: dict = {"version": doc.version, "directed": doc.directed, "n": doc.n}
    if doc.labels is not None:
        data["labels"] = list(doc.labels)
    data["edges"] = edges
    return json.dumps(data, indent=2) + "\n"


def parse_any(text: str) -> GraphDocument:
    """Dispatch on content: JSON documents start with '{'."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_document(text)
    return parse_edge_list(text)


def to_graph(doc: GraphDocument) -> WeightedMultigraph:
    """Build the validated multigraph a document describes.

    String endpoints resolve against the label table when one is given;
    otherwise labels are assigned in first-appearance order.  Integer
    endpoints are taken as vertex indices directly.  Multiplicities
    expand into parallel records.
    """
    if doc.labels is not None:
        table = {name: i for i, name in enumerate(doc.labels)}
        labels: tuple[str, ...] | None = doc.labels
    else:
        table = {}
        labels = None

    def resolve(end: int | str, pos: int) -> int:
        if isinstance(end, int):
            return end
        if end in table:
            return table[end]
        if doc.labels is not None:
            raise ParseError(f"edge {pos}: unknown label {end!r}")
        index = len(table)
        if index >= doc.n:
            raise ParseError(
                f"edge {pos}: label {end!r} needs vertex {index}, but n={doc.n}"
            )
        table[end] = index
        return index

    triples: list[tuple[int, int, float]] = []
    for pos, rec in enumerate(doc.records):
        u = resolve(rec.u, pos)
        v = resolve(rec.v, pos)
        if not rec.weight > 0.0:
            raise NonPositiveWeightError(
                f"edge {pos}: weight must be positive, got {rec.weight}"
            )
        triples.extend((u, v, rec.weight) for _ in range(rec.multiplicity or 1))
    if labels is None and table:
        by_index = sorted(table.items(), key=lambda kv: kv[1])
        named = [name for name, _ in by_index]
        named += [str(i) for i in range(len(named), doc.n)]
        labels = tuple(named)
    return build_graph(doc.n, triples, doc.directed, labels)
