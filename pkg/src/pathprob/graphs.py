"""Finite directed multigraphs and admissible path arithmetic.

A path is either the trivial path at a vertex (the unit of the free
semigroupoid at that vertex) or a nonempty sequence of edges composing
head-to-tail. Loops carry a primitive-root decomposition which drives the
diagram-distinctness predicate used by the freeness classifier.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import GraphFormatError, UsageError


class Graph:
    """Finite directed multigraph with string vertex and edge identifiers.

    Vertex/edge identifier sets must be disjoint and nonempty on the vertex
    side; both are kept in declaration order, which fixes every deterministic
    enumeration downstream.
    """

    def __init__(self, vertices, edges):
        vs = list(vertices)
        if not vs:
            raise GraphFormatError("graph must declare at least one vertex")
        seen = set()
        for v in vs:
            if v in seen:
                raise GraphFormatError(f"duplicate vertex id {v!r}")
            seen.add(v)
        self.vertices: tuple[str, ...] = tuple(vs)
        self._vset = frozenset(vs)
        edge_map: dict[str, tuple[str, str]] = {}
        for eid, src, dst in edges:
            if eid in edge_map:
                raise GraphFormatError(f"duplicate edge id {eid!r}")
            if eid in self._vset:
                raise GraphFormatError(f"edge id {eid!r} collides with a vertex id")
            if src not in self._vset:
                raise GraphFormatError(f"edge {eid!r} has unknown source vertex {src!r}")
            if dst not in self._vset:
                raise GraphFormatError(f"edge {eid!r} has unknown target vertex {dst!r}")
            edge_map[eid] = (src, dst)
        self._edges = edge_map
        self.edge_ids: tuple[str, ...] = tuple(edge_map)

    def source(self, edge_id: str) -> str:
        return self._edges[edge_id][0]

    def target(self, edge_id: str) -> str:
        return self._edges[edge_id][1]

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edges

    def has_vertex(self, v: str) -> bool:
        return v in self._vset

    def vertex_path(self, v: str) -> "Path":
        if v not in self._vset:
            raise UsageError(f"unknown vertex {v!r}")
        return Path(self, (), v)

    def path(self, *edge_ids: str) -> "Path":
        """Build the path along the given edges; raises if inadmissible."""
        if not edge_ids:
            raise UsageError("path() needs at least one edge; use vertex_path for units")
        for eid in edge_ids:
            if eid not in self._edges:
                raise UsageError(f"unknown edge {eid!r}")
        for a, b in zip(edge_ids, edge_ids[1:]):
            if self.target(a) != self.source(b):
                raise UsageError(f"edges {a!r} and {b!r} do not compose")
        return Path(self, tuple(edge_ids), None)

    def __repr__(self):
        return f"Graph(vertices={list(self.vertices)}, edges={len(self._edges)})"


@dataclass(frozen=True)
class Path:
    """Trivial path at a vertex, or an admissible nonempty edge sequence."""

    graph: Graph = field(compare=False)
    edges: tuple[str, ...]
    base: str | None = None  # vertex of the trivial path; None for edge paths

    def __post_init__(self):
        if self.edges:
            if self.base is not None:
                raise UsageError("edge path must not carry a base vertex")
        elif self.base is None:
            raise UsageError("trivial path needs a base vertex")

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def source(self) -> str:
        if self.is_trivial:
            return self.base
        return self.graph.source(self.edges[0])

    @property
    def target(self) -> str:
        if self.is_trivial:
            return self.base
        return self.graph.target(self.edges[-1])

    @property
    def is_loop(self) -> bool:
        return bool(self.edges) and self.source == self.target

    def __pow__(self, k: int) -> "Path":
        if k < 1:
            raise UsageError("path powers need k >= 1")
        out = self
        for _ in range(k - 1):
            nxt = concat(out, self)
            if nxt is None:
                raise UsageError(f"{self.label()}^{k} is not admissible")
            out = nxt
        return out

    def label(self) -> str:
        return self.base if self.is_trivial else ".".join(self.edges)

    def sort_key(self):
        return (len(self.edges), self.edges if self.edges else (self.base,))

    def __repr__(self):
        return f"Path({self.label()})"


def concat(p: Path, q: Path) -> Path | None:
    """Concatenate two paths of one graph; None when not admissible."""
    if p.graph is not q.graph:
        raise UsageError("cannot concatenate paths of different graphs")
    if p.target != q.source:
        return None
    if p.is_trivial:
        return q
    if q.is_trivial:
        return p
    return Path(p.graph, p.edges + q.edges, None)


def primitive_root(l: Path) -> tuple[Path, int]:
    """Shortest loop w and k >= 1 with l = w^k; l is basic iff k = 1.

    Scans divisors of |l| in increasing order and accepts the first prefix
    whose repetition reproduces l.
    """
    if not l.is_loop:
        raise UsageError(f"primitive_root needs a loop, got {l.label()!r}")
    n = len(l.edges)
    for d in range(1, n + 1):
        if n % d:
            continue
        if l.edges[:d] * (n // d) == l.edges:
            return Path(l.graph, l.edges[:d], None), n // d
    raise AssertionError("unreachable: every loop is its own power")


def diagram_distinct(w1: Path, w2: Path) -> bool:
    """Whether two finite paths trace different diagrams in the graph.

    Loops compare by primitive root, non-loops by equality, and a loop is
    always distinct from a non-loop. Trivial paths are outside the domain.
    """
    if w1.is_trivial or w2.is_trivial:
        raise UsageError("diagram distinctness is defined for finite paths only")
    if w1.graph is not w2.graph:
        raise UsageError("paths belong to different graphs")
    l1, l2 = w1.is_loop, w2.is_loop
    if l1 and l2:
        return primitive_root(w1)[0] != primitive_root(w2)[0]
    if not l1 and not l2:
        return w1 != w2
    return True


def graph_from_dict(data) -> Graph:
    """Validate the CLI graph schema: {"vertices": [...], "edges": [{...}]}."""
    if not isinstance(data, dict):
        raise GraphFormatError("graph file must contain a JSON object")
    vertices = data.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphFormatError('"vertices" must be a list of strings')
    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphFormatError('"edges" must be a list')
    edges = []
    for i, e in enumerate(raw_edges):
        if not isinstance(e, dict):
            raise GraphFormatError(f"edge #{i} must be an object")
        try:
            row = (e["id"], e["src"], e["dst"])
        except KeyError as exc:
            raise GraphFormatError(f"edge #{i} is missing field {exc.args[0]!r}") from None
        if not all(isinstance(x, str) for x in row):
            raise GraphFormatError(f"edge #{i} fields must be strings")
        edges.append(row)
    return Graph(vertices, edges)


def graph_from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed JSON: {exc}") from None
    return graph_from_dict(data)
