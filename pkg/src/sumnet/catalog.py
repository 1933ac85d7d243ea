"""Built-in sum-networks and parametric generators.

``s3`` and ``s3_prime`` are rebuilt from the edges named in the capacity
argument for these networks; no edge is added beyond those.  The remaining
entries are fixtures for tests and demos.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .netgraph import (
    Edge,
    SumNetwork,
    add_edge,
    check,
    min_cut,
    reverse_network,
    subdivide_edge,
)


def _net(name, sources, terminals, middle, pairs) -> SumNetwork:
    nodes = tuple(sources) + tuple(middle) + tuple(terminals)
    edges = []
    counts = {}
    for a, b in pairs:
        base = f"{a}-{b}"
        counts[base] = counts.get(base, 0) + 1
        eid = base if counts[base] == 1 else f"{base}#{counts[base]}"
        edges.append(Edge(eid, a, b))
    return check(SumNetwork(nodes, tuple(edges), tuple(sources), tuple(terminals), name))


def s3() -> SumNetwork:
    """Three sources, three terminals, every pair connected by a single path."""
    return _net(
        "s3",
        ["s1", "s2", "s3"],
        ["t1", "t2", "t3"],
        ["u1", "u2", "v1", "v2"],
        [
            ("s1", "u1"), ("s1", "t2"),
            ("s2", "u2"), ("s2", "t1"),
            ("s3", "u1"), ("s3", "u2"),
            ("u1", "v1"), ("u2", "v2"),
            ("v1", "t1"), ("v1", "t3"),
            ("v2", "t2"), ("v2", "t3"),
        ],
    )


def s3_prime() -> SumNetwork:
    """``s3`` with ``s2 -> t1`` subdivided at u3, plus ``s1 -> u3`` and ``s1 -> t1``."""
    net = subdivide_edge(s3(), "s2-t1", "u3")
    net = add_edge(net, "s1", "u3")
    return add_edge(net, "s1", "t1", name="s3-prime")


def butterfly() -> SumNetwork:
    """The classic single-source, two-terminal butterfly (min-cut 2)."""
    return _net(
        "butterfly",
        ["s"],
        ["t1", "t2"],
        ["a", "b", "c", "d"],
        [
            ("s", "a"), ("s", "b"),
            ("a", "c"), ("b", "c"),
            ("c", "d"),
            ("a", "t1"), ("d", "t1"),
            ("b", "t2"), ("d", "t2"),
        ],
    )


def reverse_butterfly() -> SumNetwork:
    return reverse_network(butterfly())


def chain() -> SumNetwork:
    return _net("chain", ["s"], ["t"], ["a"], [("s", "a"), ("a", "t")])


def one_edge() -> SumNetwork:
    return _net("one-edge", ["s"], ["t"], [], [("s", "t")])


def diamond() -> SumNetwork:
    """Two sources merged at one relay that feeds two terminals (min-cut 1)."""
    return _net(
        "diamond",
        ["s1", "s2"],
        ["t1", "t2"],
        ["u"],
        [("s1", "u"), ("s2", "u"), ("u", "t1"), ("u", "t2")],
    )


def doubled_diamond() -> SumNetwork:
    """Two sources, two relays, two terminals; every source-terminal min-cut is 2."""
    return _net(
        "doubled-diamond",
        ["s1", "s2"],
        ["t1", "t2"],
        ["a", "b"],
        [
            ("s1", "a"), ("s1", "b"),
            ("s2", "a"), ("s2", "b"),
            ("a", "t1"), ("a", "t2"),
            ("b", "t1"), ("b", "t2"),
        ],
    )


def bipartite(m: int = 3, n: int = 3) -> SumNetwork:
    """Direct edge from every source to every terminal."""
    src = [f"s{i}" for i in range(1, m + 1)]
    dst = [f"t{j}" for j in range(1, n + 1)]
    return _net(f"bipartite-{m}x{n}", src, dst, [], [(s, t) for s in src for t in dst])


def random_connected(m: int, n: int, seed: int, relays: int | None = None,
                     density: float = 0.3) -> SumNetwork:
    """Random DAG in which every source reaches every terminal.

    Relays are placed in a fixed linear order and only forward edges are
    drawn, so the result is acyclic.  Any source-terminal pair left
    disconnected gets a direct edge.  Deterministic for a given seed.
    """
    rng = random.Random(seed)
    h = relays if relays is not None else max(2, (m + n) // 2)
    src = [f"s{i}" for i in range(1, m + 1)]
    mid = [f"r{i}" for i in range(1, h + 1)]
    dst = [f"t{j}" for j in range(1, n + 1)]
    pairs = []
    for s in src:
        for r in rng.sample(mid, k=min(len(mid), rng.randint(1, 2))):
            pairs.append((s, r))
    for i, a in enumerate(mid):
        for b in mid[i + 1:]:
            if rng.random() < density:
                pairs.append((a, b))
    for t in dst:
        for r in rng.sample(mid, k=min(len(mid), rng.randint(1, 2))):
            pairs.append((r, t))
    net = _net(f"random-{m}x{n}-{seed}", src, dst, mid, pairs)
    for s in src:
        for t in dst:
            if min_cut(net, s, t) == 0:
                net = add_edge(net, s, t)
    return net


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    network: SumNetwork
    facts: dict = field(default_factory=dict)
    confidence: str = "derived"


def _entries() -> dict[str, CatalogEntry]:
    exact = "exact capacity 2/3 (cut-counting converse plus three-slot scheme)"
    return {
        e.name: e
        for e in [
            CatalogEntry(
                "s3", s3(),
                {
                    "capacity": (Fraction(2, 3), exact),
                    "solvable": (False, "no rate-1 code over any finite alphabet"),
                },
                "textual",
            ),
            CatalogEntry(
                "s3-prime", s3_prime(),
                {
                    "capacity": (Fraction(2, 3), exact),
                    "solvable": (False, "capacity 2/3 < 1"),
                },
                "textual",
            ),
            CatalogEntry(
                "butterfly", butterfly(),
                {"capacity": (Fraction(2), "single source: capacity equals min-cut")},
            ),
            CatalogEntry(
                "reverse-butterfly", reverse_butterfly(),
                {"capacity": (Fraction(2), "single terminal: capacity equals min-cut")},
            ),
            CatalogEntry("chain", chain(), {"capacity": (Fraction(1), "single source")}),
            CatalogEntry("one-edge", one_edge(), {"capacity": (Fraction(1), "single source")}),
            CatalogEntry(
                "diamond", diamond(),
                {"capacity": (Fraction(1), "two sources, min-cut 1: rate 1 achievable")},
            ),
            CatalogEntry(
                "doubled-diamond", doubled_diamond(),
                {"lower_bound": (Fraction(1), "half of min-cut 2 by time-sharing")},
            ),
            CatalogEntry(
                "bipartite-3x3", bipartite(3, 3),
                {"solvable": (True, "each terminal adds its direct inputs")},
            ),
            CatalogEntry(
                "random-4x4-1", random_connected(4, 4, seed=1),
                {"lower_bound": (Fraction(1, 2), "pairing scheme, rate 2/min(m,n)")},
            ),
            CatalogEntry(
                "random-5x4-2", random_connected(5, 4, seed=2),
                {"lower_bound": (Fraction(1, 2), "pairing scheme, rate 2/min(m,n)")},
            ),
        ]
    }


_CACHE: dict[str, CatalogEntry] = {}


def entries() -> dict[str, CatalogEntry]:
    if not _CACHE:
        _CACHE.update(_entries())
    return dict(_CACHE)


def names() -> list[str]:
    return list(entries())


def get(name: str) -> SumNetwork:
    try:
        return entries()[name].network
    except KeyError:
        raise KeyError(f"no catalog network named {name!r}") from None
