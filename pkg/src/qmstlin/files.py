"""Instance and cost-vector files.

One JSON schema (version 1) covers all three cost kinds: dense matrices,
factored rank-2 costs, and product-objective (mmstp) instances. Numbers are
JSON integers or exact "p/q" strings; canonical writes sort keys and reduce
every rational to lowest terms, so identical objects produce identical
bytes and files round-trip exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import DimensionMismatch, ParseError
from .factored import FactoredCost, factored_cost
from .graphs import build_graph
from .linearize import Instance
from .matrices import CostMatrix, cost_matrix
from .oracle import MmstpInstance
from .rationals import Rat, rat_to_json, to_rat

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Loaded:
    """A parsed instance file: the instance plus its raw metadata block."""

    instance: Instance | MmstpInstance
    metadata: dict = field(default_factory=dict)

    @property
    def claimed_c(self) -> tuple[Rat, ...] | None:
        raw = self.metadata.get("claimed_c")
        if raw is None:
            return None
        return tuple(to_rat(x) for x in raw)


def _jsonify(value):
    if isinstance(value, Fraction):
        return rat_to_json(value)
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    return value


def canonical_dumps(doc: dict) -> str:
    return json.dumps(_jsonify(doc), sort_keys=True, indent=2) + "\n"


def _rat_field(raw, path: str) -> Rat:
    try:
        return to_rat(raw)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}", path=path) from exc


def _rat_vector(raw, path: str, expected: int) -> tuple[Rat, ...]:
    if not isinstance(raw, list):
        raise ParseError(f"{path}: expected a list", path=path)
    if len(raw) != expected:
        raise DimensionMismatch(
            f"{path}: expected {expected} entries, got {len(raw)}", path=path
        )
    return tuple(_rat_field(x, f"{path}[{i}]") for i, x in enumerate(raw))


def parse_instance_doc(doc, *, source: str = "<doc>") -> Loaded:
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    version = doc.get("version")
    if version != SCHEMA_VERSION:
        raise ParseError(
            f"version: unsupported value {version!r} (expected {SCHEMA_VERSION})",
            path="version",
        )
    n = doc.get("n")
    if not isinstance(n, int):
        raise ParseError("n: expected an integer vertex count", path="n")
    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise ParseError("edges: expected a list of [u,v] pairs", path="edges")
    edges = []
    for i, pair in enumerate(raw_edges):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, int) for x in pair)
        ):
            raise ParseError(
                f"edges[{i}]: expected a pair of integers", path=f"edges[{i}]"
            )
        edges.append((pair[0], pair[1]))
    graph = build_graph(n, edges)
    m = graph.edge_count

    cost_doc = doc.get("cost")
    if not isinstance(cost_doc, dict):
        raise ParseError("cost: expected an object with a 'kind'", path="cost")
    kind = cost_doc.get("kind")
    name = doc.get("name")
    metadata = doc.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise ParseError("metadata: expected an object", path="metadata")

    if kind == "dense":
        raw_q = cost_doc.get("q")
        if not isinstance(raw_q, list):
            raise ParseError("cost.q: expected a list of rows", path="cost.q")
        if len(raw_q) != m:
            raise DimensionMismatch(
                f"cost.q: expected {m} rows, got {len(raw_q)}", path="cost.q"
            )
        rows = [
            _rat_vector(row, f"cost.q[{i}]", m) for i, row in enumerate(raw_q)
        ]
        instance: Instance | MmstpInstance = Instance(
            graph, cost_matrix(rows), name
        )
    elif kind == "factored":
        vectors = {
            key: _rat_vector(cost_doc.get(key), f"cost.{key}", m)
            for key in ("a", "b", "c", "d", "diag")
        }
        instance = Instance(graph, FactoredCost(**vectors), name)
    elif kind == "mmstp":
        d1 = _rat_vector(cost_doc.get("d1"), "cost.d1", m)
        d2 = _rat_vector(cost_doc.get("d2"), "cost.d2", m)
        delta1 = _rat_field(cost_doc.get("delta1"), "cost.delta1")
        delta2 = _rat_field(cost_doc.get("delta2"), "cost.delta2")
        instance = MmstpInstance(graph, d1, d2, delta1, delta2)
    else:
        raise ParseError(
            f"cost.kind: expected dense, factored or mmstp, got {kind!r}",
            path="cost.kind",
        )
    return Loaded(instance, metadata)


def parse_instance(path: str | Path) -> Loaded:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return parse_instance_doc(doc, source=str(path))


def instance_doc(
    instance: Instance | MmstpInstance, metadata: dict | None = None
) -> dict:
    graph = instance.graph
    doc: dict = {
        "version": SCHEMA_VERSION,
        "n": graph.vertex_count,
        "edges": [[u, v] for u, v in graph.edges],
    }
    if isinstance(instance, MmstpInstance):
        doc["cost"] = {
            "kind": "mmstp",
            "d1": list(instance.d1),
            "d2": list(instance.d2),
            "delta1": instance.delta1,
            "delta2": instance.delta2,
        }
    elif isinstance(instance.cost, CostMatrix):
        doc["cost"] = {"kind": "dense", "q": [list(r) for r in instance.cost.rows]}
        if instance.name is not None:
            doc["name"] = instance.name
    elif isinstance(instance.cost, FactoredCost):
        fc = instance.cost
        doc["cost"] = {
            "kind": "factored",
            "a": list(fc.a),
            "b": list(fc.b),
            "c": list(fc.c),
            "d": list(fc.d),
            "diag": list(fc.diag),
        }
        if instance.name is not None:
            doc["name"] = instance.name
    else:
        raise ParseError(f"cannot serialize cost of type {type(instance.cost)!r}")
    if metadata:
        doc["metadata"] = metadata
    return doc


def write_instance(
    instance: Instance | MmstpInstance,
    path: str | Path,
    metadata: dict | None = None,
) -> None:
    Path(path).write_text(canonical_dumps(instance_doc(instance, metadata)))


def parse_cost_vector(path: str | Path) -> tuple[Rat, ...]:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or doc.get("version") != SCHEMA_VERSION:
        raise ParseError(f"{path}: expected a version-{SCHEMA_VERSION} cost vector file")
    raw = doc.get("c")
    if not isinstance(raw, list):
        raise ParseError("c: expected a list of rationals", path="c")
    return tuple(_rat_field(x, f"c[{i}]") for i, x in enumerate(raw))


def write_cost_vector(c, path: str | Path) -> None:
    doc = {"version": SCHEMA_VERSION, "c": [Fraction(x) for x in c]}
    Path(path).write_text(canonical_dumps(doc))
