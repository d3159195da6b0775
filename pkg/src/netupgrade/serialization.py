"""Canonical JSON on-disk format for problem instances.

Layout (keys in this order, compact separators, UTF-8):

    {"kind":"imst"|"wildag","n":int,"budget":int,
     "edges":[{"id":int,"u":int,"v":int,"ladder":[[len,cost],...]},...],
     "source":int,"sink":int,"directed":bool}

"source"/"sink" appear only for "wildag"; its ladders have exactly two
entries [[l,0],[h,q]].  Edges are sorted by id and ladders by level, so
serialize(parse(serialize(x))) is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ._util import fnv1a64
from .instances import (
    DagEdge,
    DagInstance,
    ImprovementLevel,
    UpgradableEdge,
    UpgradableGraph,
    validate,
)


class FormatError(ValueError):
    """Malformed document, schema violation or invariant violation."""

    def __init__(self, message: str, location: str = "$"):
        self.location = location
        super().__init__(f"{location}: {message}")


@dataclass(frozen=True)
class Problem:
    kind: str  # "imst" | "wildag"
    budget: int
    graph: UpgradableGraph | None = None
    dag: DagInstance | None = None

    @property
    def instance(self):
        return self.graph if self.kind == "imst" else self.dag


def _want(doc: dict, key: str, kind, location: str):
    if key not in doc:
        raise FormatError(f"missing required field {key!r}", location)
    value = doc[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise FormatError(f"field {key!r} must be {kind.__name__}", f"{location}.{key}")
    return value


def parse(data: bytes | str) -> Problem:
    """Parse and validate an instance document."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("top-level value must be an object")
    kind = _want(doc, "kind", str, "$")
    if kind not in ("imst", "wildag"):
        raise FormatError(f"unknown kind {kind!r}", "$.kind")
    n = _want(doc, "n", int, "$")
    budget = _want(doc, "budget", int, "$")
    if budget < 0:
        raise FormatError("budget must be nonnegative", "$.budget")
    raw_edges = _want(doc, "edges", list, "$")
    edges = []
    for i, entry in enumerate(raw_edges):
        loc = f"$.edges[{i}]"
        if not isinstance(entry, dict):
            raise FormatError("edge must be an object", loc)
        eid = _want(entry, "id", int, loc)
        u = _want(entry, "u", int, loc)
        v = _want(entry, "v", int, loc)
        ladder = _want(entry, "ladder", list, loc)
        steps = []
        for j, step in enumerate(ladder):
            if (not isinstance(step, list) or len(step) != 2
                    or any(isinstance(x, bool) or not isinstance(x, int) for x in step)):
                raise FormatError("ladder entry must be [length, cost]",
                                  f"{loc}.ladder[{j}]")
            steps.append((step[0], step[1]))
        edges.append((eid, u, v, steps))
    if kind == "imst":
        if _want(doc, "directed", bool, "$"):
            raise FormatError('"imst" instances must have "directed": false', "$.directed")
        graph = UpgradableGraph(n, tuple(
            UpgradableEdge(eid, u, v, tuple(ImprovementLevel(l, c) for l, c in steps))
            for eid, u, v, steps in edges))
        _require_valid(graph, "$")
        return Problem("imst", budget, graph=graph)
    source = _want(doc, "source", int, "$")
    sink = _want(doc, "sink", int, "$")
    if not _want(doc, "directed", bool, "$"):
        raise FormatError('"wildag" instances must have "directed": true', "$.directed")
    dag_edges = []
    for eid, u, v, steps in edges:
        if len(steps) != 2:
            raise FormatError("wildag ladders must have exactly two levels",
                              f"$.edges[{eid}].ladder")
        (l, c0), (h, q) = steps
        if c0 != 0:
            raise FormatError("level 0 must cost 0", f"$.edges[{eid}].ladder")
        dag_edges.append(DagEdge(eid, u, v, l, h, q))
    dag = DagInstance(n, tuple(dag_edges), source, sink)
    _require_valid(dag, "$")
    return Problem("wildag", budget, dag=dag)


def _require_valid(instance, location: str) -> None:
    violations = validate(instance)
    if isinstance(instance, DagInstance) and violations:
        # shortest-path instances store decreasing ladders in the same format
        if not validate(instance, improvement="decrease"):
            violations = []
    if violations:
        raise FormatError("invalid instance: " + "; ".join(violations), location)


def serialize(problem: Problem) -> bytes:
    """Canonical bytes for a problem; inverse of parse on valid data."""
    if problem.kind == "imst":
        graph = problem.graph
        doc = {
            "kind": "imst",
            "n": graph.n,
            "budget": problem.budget,
            "edges": [
                {"id": e.id, "u": e.u, "v": e.v,
                 "ladder": [[lvl.length, lvl.cost] for lvl in e.ladder]}
                for e in sorted(graph.edges, key=lambda e: e.id)
            ],
            "directed": False,
        }
    elif problem.kind == "wildag":
        dag = problem.dag
        doc = {
            "kind": "wildag",
            "n": dag.n,
            "budget": problem.budget,
            "edges": [
                {"id": e.id, "u": e.tail, "v": e.head,
                 "ladder": [[e.base, 0], [e.improved, e.cost]]}
                for e in sorted(dag.edges, key=lambda e: e.id)
            ],
            "source": dag.source,
            "sink": dag.sink,
            "directed": True,
        }
    else:
        raise ValueError(f"unknown kind {problem.kind!r}")
    return json.dumps(doc, separators=(",", ":")).encode("utf-8")


def instance_hash(problem: Problem) -> str:
    """64-bit FNV-1a over the canonical serialization, as zero-padded hex."""
    return f"{fnv1a64(serialize(problem)):016x}"
