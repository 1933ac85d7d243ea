"""Directed acyclic multigraphs with designated sources and terminals.

Every edge carries one alphabet symbol per use; larger capacities are
expressed as parallel edges.  Networks are immutable; the surgery functions
return new networks.

Network interchange document (JSON, UTF-8)::

    {
      "name": "s3",
      "nodes": ["s1", "s2", ...],
      "edges": [{"id": "s1-u1", "tail": "s1", "head": "u1"}, ...],
      "sources": ["s1", "s2", "s3"],
      "terminals": ["t1", "t2", "t3"]
    }

Keys appear in exactly this order, indented by two spaces, with a trailing
newline.  Parsing and re-emitting such a file reproduces it byte for byte.
"""

from __future__ import annotations

import heapq
import json
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations


class NetworkError(ValueError):
    """Raised for malformed networks or invalid graph operations."""


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


def _natural_key(s: str):
    return tuple((0, int(t)) if t.isdigit() else (1, t) for t in re.findall(r"\d+|\D+", s))


@dataclass(frozen=True, eq=False)
class SumNetwork:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    sources: tuple[str, ...]
    terminals: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "nodes", tuple(self.nodes))
        set_(
            self,
            "edges",
            tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges),
        )
        set_(self, "sources", tuple(self.sources))
        set_(self, "terminals", tuple(self.terminals))

    def __eq__(self, other):
        return isinstance(other, SumNetwork) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.name, self.nodes, self.edges, self.sources, self.terminals)

    @property
    def m(self) -> int:
        return len(self.sources)

    @property
    def n(self) -> int:
        return len(self.terminals)

    @cached_property
    def edge(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _in(self) -> dict[str, tuple[str, ...]]:
        out = {v: [] for v in self.nodes}
        for e in self.edges:
            out.setdefault(e.head, []).append(e.id)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        out = {v: [] for v in self.nodes}
        for e in self.edges:
            out.setdefault(e.tail, []).append(e.id)
        return {v: tuple(es) for v, es in out.items()}

    def in_edges(self, v: str) -> tuple[str, ...]:
        """Ids of edges entering ``v``, in edge-list order."""
        return self._in.get(v, ())

    def out_edges(self, v: str) -> tuple[str, ...]:
        return self._out.get(v, ())

    def is_source(self, v: str) -> bool:
        return v in self._source_set

    @cached_property
    def node_set(self) -> frozenset[str]:
        return frozenset(self.nodes)

    @cached_property
    def _source_set(self) -> frozenset[str]:
        return frozenset(self.sources)

    @cached_property
    def topo(self) -> tuple[str, ...]:
        return tuple(topo_order(self))

    def upstream(self, edge_ids) -> set[str]:
        """Edges from which some edge in ``edge_ids`` is reachable (inclusive)."""
        seen = set()
        stack = list(edge_ids)
        while stack:
            e = stack.pop()
            if e in seen:
                continue
            seen.add(e)
            stack.extend(self.in_edges(self.edge[e].tail))
        return seen

    def reaches(self, s: str, t: str) -> bool:
        return min_cut(self, s, t) > 0


def validate(net: SumNetwork) -> list[str]:
    """All invariant violations of ``net``; an empty list means it is well formed."""
    problems = []
    nodes = set(net.nodes)
    if len(nodes) != len(net.nodes):
        problems.append("duplicate node id")
    seen = set()
    for e in net.edges:
        if e.id in seen:
            problems.append(f"duplicate edge id {e.id}")
        seen.add(e.id)
        for end in (e.tail, e.head):
            if end not in nodes:
                problems.append(f"edge {e.id} has dangling endpoint {end}")
    for v in net.sources + net.terminals:
        if v not in nodes:
            problems.append(f"unknown node {v}")
    if set(net.sources) & set(net.terminals):
        problems.append("sources and terminals overlap")
    if len(set(net.sources)) != len(net.sources):
        problems.append("duplicate source")
    if len(set(net.terminals)) != len(net.terminals):
        problems.append("duplicate terminal")
    for s in net.sources:
        if net.in_edges(s):
            problems.append(f"source {s} has an in-edge")
    for t in net.terminals:
        if net.out_edges(t):
            problems.append(f"terminal {t} has an out-edge")
    if _has_cycle(net):
        problems.append("cycle")
    return problems


def check(net: SumNetwork) -> SumNetwork:
    problems = validate(net)
    if problems:
        raise NetworkError(f"invalid network {net.name!r}: " + "; ".join(problems))
    return net


def _has_cycle(net: SumNetwork) -> bool:
    indeg = {v: 0 for v in net.nodes}
    succ = {v: [] for v in net.nodes}
    for e in net.edges:
        if e.tail in succ and e.head in indeg:
            succ[e.tail].append(e.head)
            indeg[e.head] += 1
    queue = deque(v for v, d in indeg.items() if d == 0)
    done = 0
    while queue:
        v = queue.popleft()
        done += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return done != len(indeg)


def topo_order(net: SumNetwork) -> list[str]:
    """Edge ids such that each edge follows every edge into its tail.

    Among ready edges the one with the smallest edge id (natural order,
    so ``e2`` precedes ``e10``) is taken first.
    """
    if _has_cycle(net):
        raise NetworkError("network has a cycle")
    waiting = {v: len(net.in_edges(v)) for v in net.nodes}
    heap = []
    for v in net.nodes:
        if waiting[v] == 0:
            for e in net.out_edges(v):
                heapq.heappush(heap, (_natural_key(e), e))
    order = []
    while heap:
        _, e = heapq.heappop(heap)
        order.append(e)
        h = net.edge[e].head
        waiting[h] -= 1
        if waiting[h] == 0:
            for f in net.out_edges(h):
                heapq.heappush(heap, (_natural_key(f), f))
    return order


def min_cut(net: SumNetwork, s: str, t: str) -> int:
    """Maximum number of edge-disjoint s-t paths (unit capacities).

    Breadth-first augmenting paths; residual arcs are scanned in edge-list
    order, forward arcs before backward ones.
    """
    for v in (s, t):
        if v not in net.node_set:
            raise NetworkError(f"unknown node {v}")
    if s == t:
        raise NetworkError("min-cut needs two distinct nodes")
    flow = {e.id: 0 for e in net.edges}
    value = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            v = queue.popleft()
            for e in net.out_edges(v):
                w = net.edge[e].head
                if not flow[e] and w not in parent:
                    parent[w] = (e, 1)
                    queue.append(w)
            for e in net.in_edges(v):
                w = net.edge[e].tail
                if flow[e] and w not in parent:
                    parent[w] = (e, -1)
                    queue.append(w)
        if t not in parent:
            return value
        v = t
        while parent[v] is not None:
            e, d = parent[v]
            flow[e] += d
            v = net.edge[e].tail if d == 1 else net.edge[e].head
        value += 1


def min_cut_bound(net: SumNetwork) -> int:
    """Minimum over all source-terminal pairs of the pairwise min-cut."""
    check(net)
    if not net.sources or not net.terminals:
        return 0
    return min(min_cut(net, s, t) for s in net.sources for t in net.terminals)


def min_cut_table(net: SumNetwork) -> dict[tuple[str, str], int]:
    return {(s, t): min_cut(net, s, t) for s in net.sources for t in net.terminals}


def brute_force_min_cut(net: SumNetwork, s: str, t: str, max_size: int | None = None) -> int | None:
    """Smallest number of edges whose removal disconnects t from s.

    Enumerates edge subsets by increasing size; returns None if no subset
    of at most ``max_size`` edges separates the pair.
    """
    ids = [e.id for e in net.edges]
    limit = len(ids) if max_size is None else min(max_size, len(ids))
    for size in range(limit + 1):
        for removed in combinations(ids, size):
            gone = set(removed)
            seen = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for e in net.out_edges(v):
                    if e not in gone and net.edge[e].head not in seen:
                        seen.add(net.edge[e].head)
                        stack.append(net.edge[e].head)
            if t not in seen:
                return size
    return None


def reverse_network(net: SumNetwork) -> SumNetwork:
    """Reverse every edge (ids kept) and swap the roles of sources and terminals."""
    check(net)
    name = net.name[len("reverse-"):] if net.name.startswith("reverse-") else (
        f"reverse-{net.name}" if net.name else ""
    )
    return SumNetwork(
        nodes=net.nodes,
        edges=tuple(Edge(e.id, e.head, e.tail) for e in net.edges),
        sources=net.terminals,
        terminals=net.sources,
        name=name,
    )


def _fresh_edge_id(net: SumNetwork, tail: str, head: str, taken=()) -> str:
    used = set(net.edge) | set(taken)
    base = f"{tail}-{head}"
    if base not in used:
        return base
    i = 2
    while f"{base}#{i}" in used:
        i += 1
    return f"{base}#{i}"


def add_edge(net: SumNetwork, tail: str, head: str, edge_id: str | None = None,
             name: str | None = None) -> SumNetwork:
    """Append an edge ``tail -> head``; the result must still validate."""
    for v in (tail, head):
        if v not in net.node_set:
            raise NetworkError(f"unknown node {v}")
    eid = edge_id or _fresh_edge_id(net, tail, head)
    if eid in net.edge:
        raise NetworkError(f"edge id {eid} already used")
    out = SumNetwork(net.nodes, net.edges + (Edge(eid, tail, head),),
                     net.sources, net.terminals, net.name if name is None else name)
    return check(out)


def subdivide_edge(net: SumNetwork, edge_id: str, new_node: str,
                   name: str | None = None) -> SumNetwork:
    """Replace ``a -> b`` by ``a -> new_node -> b`` at the same list position."""
    if edge_id not in net.edge:
        raise NetworkError(f"unknown edge {edge_id}")
    if new_node in net.node_set:
        raise NetworkError(f"node {new_node} already exists")
    old = net.edge[edge_id]
    rest = SumNetwork(net.nodes, tuple(e for e in net.edges if e.id != edge_id),
                      net.sources, net.terminals)
    first = _fresh_edge_id(rest, old.tail, new_node)
    second = _fresh_edge_id(rest, new_node, old.head, taken=[first])
    edges = []
    for e in net.edges:
        if e.id == edge_id:
            edges += [Edge(first, old.tail, new_node), Edge(second, new_node, old.head)]
        else:
            edges.append(e)
    out = SumNetwork(net.nodes + (new_node,), tuple(edges), net.sources,
                     net.terminals, net.name if name is None else name)
    return check(out)


def relabel_edges(net: SumNetwork, mapping: dict[str, str]) -> SumNetwork:
    return SumNetwork(
        net.nodes,
        tuple(Edge(mapping.get(e.id, e.id), e.tail, e.head) for e in net.edges),
        net.sources,
        net.terminals,
        net.name,
    )


# --- interchange format ---------------------------------------------------

def network_to_dict(net: SumNetwork) -> dict:
    return {
        "name": net.name,
        "nodes": list(net.nodes),
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in net.edges],
        "sources": list(net.sources),
        "terminals": list(net.terminals),
    }


def network_from_dict(doc: dict) -> SumNetwork:
    try:
        net = SumNetwork(
            nodes=tuple(str(v) for v in doc["nodes"]),
            edges=tuple(Edge(str(e["id"]), str(e["tail"]), str(e["head"])) for e in doc["edges"]),
            sources=tuple(str(v) for v in doc["sources"]),
            terminals=tuple(str(v) for v in doc["terminals"]),
            name=str(doc.get("name", "")),
        )
    except (KeyError, TypeError) as exc:
        raise NetworkError(f"malformed network document: {exc!r}") from exc
    return check(net)


def dumps_network(net: SumNetwork) -> str:
    return json.dumps(network_to_dict(net), indent=2) + "\n"


def loads_network(text: str) -> SumNetwork:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkError(f"not a JSON document: {exc}") from exc
    return network_from_dict(doc)
