"""Capacity bounds for sum-networks.

The upper bound is the smallest source-terminal min-cut.  Lower bounds are
dispatched on min(m, n) and the min-cut, and exact values are filled in
where the two meet or where a catalog network with a known converse is
recognised up to relabelling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import networkx as nx

from .netgraph import SumNetwork, check, min_cut_bound

ONE = "one-source-or-terminal"
MIN2 = "min2"
M3N3 = "m=n=3"
MIN3 = "min3"
GENERAL = "general"

CONJECTURE = (
    "conjecture (unproved): the capacity of a network with three sources "
    "and three terminals is 0, 2/3, or at least 1"
)
OPEN_LIMIT = "open: whether the min-cut bound is approachable in the limit is unknown"


def upper_bound(net: SumNetwork) -> Fraction:
    return Fraction(min_cut_bound(check(net)))


def case_tag(net: SumNetwork) -> str:
    lo = min(net.m, net.n)
    if lo == 1:
        return ONE
    if lo == 2:
        return MIN2
    if net.m == net.n == 3:
        return M3N3
    if lo == 3:
        return MIN3
    return GENERAL


def lower_bound(net: SumNetwork) -> tuple[Fraction, str]:
    """Best time-sharing lower bound and the case it came from."""
    eta = min_cut_bound(check(net))
    tag = case_tag(net)
    lo = min(net.m, net.n)
    if eta == 0:
        return Fraction(0), tag
    if tag == ONE:
        return Fraction(eta), tag
    if tag == MIN2:
        return max(Fraction(min(1, eta)), Fraction(eta, 2)), tag
    if tag == M3N3 and eta >= 2:
        return max(Fraction(1), Fraction(eta, 3)), tag
    return max(Fraction(2, lo), Fraction(eta, lo)), tag


def cut_counting_bound(cut_size: int, sources: int) -> Fraction:
    """k/l <= c/m when a terminal must rebuild m source blocks through c edges."""
    if cut_size < 1 or sources < 1:
        raise ValueError("cut size and number of sources must be positive")
    return Fraction(cut_size, sources)


def _graph(net: SumNetwork) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    for v in net.nodes:
        role = "source" if v in net.sources else "terminal" if v in net.terminals else "relay"
        g.add_node(v, role=role)
    g.add_edges_from((e.tail, e.head) for e in net.edges)
    return g


@lru_cache(maxsize=None)
def _known_graphs():
    from .catalog import s3, s3_prime
    three_slot = "time-sharing three-slot scheme meets the cut-counting converse"
    return [
        (_graph(s3()), "s3", cut_counting_bound(2, 3), three_slot),
        (_graph(s3_prime()), "s3-prime", cut_counting_bound(2, 3), three_slot),
    ]


def match_known(net: SumNetwork):
    """(catalog name, exact capacity, provenance) if ``net`` is isomorphic to one."""
    g = _graph(net)
    same_role = lambda a, b: a["role"] == b["role"]
    for h, name, value, why in _known_graphs():
        if (g.number_of_nodes() == h.number_of_nodes()
                and g.number_of_edges() == h.number_of_edges()
                and nx.is_isomorphic(g, h, node_match=same_role)):
            return name, value, why
    return None


@dataclass
class CapacityReport:
    network: str
    m: int
    n: int
    min_cut: int
    upper: Fraction
    lower: Fraction
    case: str
    exact: Fraction | None
    notes: list = field(default_factory=list)
    conjecture: str | None = None

    @property
    def exactness(self) -> str:
        return "exact" if self.exact is not None else "bounds-only"

    def to_dict(self) -> dict:
        return {
            "network": self.network,
            "m": self.m,
            "n": self.n,
            "min_cut": self.min_cut,
            "upper": str(self.upper),
            "lower": str(self.lower),
            "case": self.case,
            "exactness": self.exactness,
            "exact": None if self.exact is None else str(self.exact),
            "notes": list(self.notes),
            "conjecture": self.conjecture,
        }


def report(net: SumNetwork) -> CapacityReport:
    eta = min_cut_bound(check(net))
    upper = Fraction(eta)
    lower, tag = lower_bound(net)
    notes = [f"upper bound: minimum source-terminal min-cut = {eta}"]
    exact = None
    if eta == 0:
        exact = Fraction(0)
        notes.append("some source-terminal pair is disconnected")
    elif tag == ONE:
        exact = upper
        notes.append("one source or one terminal: capacity equals the min-cut")
    elif tag == MIN2 and eta == 1:
        exact = Fraction(1)
        notes.append("two sources or terminals with min-cut 1: rate 1 achievable")
    elif tag == MIN2:
        notes.append("two sources or terminals: half the min-cut by time-sharing")
    elif tag == M3N3 and eta >= 2:
        notes.append("three sources and terminals with min-cut >= 2: rate 1 achievable")
    elif tag in (M3N3, MIN3):
        notes.append("three-slot time-sharing gives 2/3")
    else:
        notes.append(f"pairing terminals gives 2/min(m, n) = {Fraction(2, min(net.m, net.n))}")
    if eta >= 2 and tag != ONE:
        notes.append(f"time-sharing one source per slot gives min-cut/min(m, n) = "
                     f"{Fraction(eta, min(net.m, net.n))}")
    known = match_known(net)
    if known:
        name, value, why = known
        exact = value
        notes.append(f"isomorphic to catalog {name}: exact capacity {value} ({why})")
    if exact is None:
        notes.append(OPEN_LIMIT)
    rep = CapacityReport(
        net.name, net.m, net.n, eta, upper, lower, tag, exact, notes,
        CONJECTURE if net.m == net.n == 3 else None,
    )
    assert rep.lower <= rep.upper
    return rep


def format_table(reports) -> str:
    """Aligned text table, one row per report."""
    rows = [("network", "m", "n", "min-cut", "case", "lower", "upper", "capacity")]
    for r in reports:
        rows.append((
            r.network, str(r.m), str(r.n), str(r.min_cut), r.case,
            f">= {r.lower}", f"<= {r.upper}",
            f"= {r.exact}" if r.exact is not None else "?",
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"
