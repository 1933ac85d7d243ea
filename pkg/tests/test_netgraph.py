import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_cut, random_dag
from sumnet import catalog
from sumnet.netgraph import (
    Edge,
    NetworkError,
    SumNetwork,
    add_edge,
    brute_force_min_cut,
    check,
    dumps_network,
    loads_network,
    min_cut,
    min_cut_bound,
    relabel_edges,
    reverse_network,
    subdivide_edge,
    topo_order,
    validate,
)


def net_of(pairs, sources, terminals, name="t"):
    nodes = list(dict.fromkeys(sources + [v for p in pairs for v in p] + terminals))
    edges = [Edge(f"e{i}", a, b) for i, (a, b) in enumerate(pairs)]
    return SumNetwork(tuple(nodes), tuple(edges), tuple(sources), tuple(terminals), name)


def assert_topological(net, order):
    pos = {e: i for i, e in enumerate(order)}
    assert sorted(order) == sorted(e.id for e in net.edges)
    for e in net.edges:
        for f in net.in_edges(e.tail):
            assert pos[f] < pos[e.id]


def test_catalog_networks_validate():
    for entry in catalog.entries().values():
        assert validate(entry.network) == []


def test_reversed_roles_reported():
    net = net_of([("t", "s")], ["s"], ["t"])
    problems = validate(net)
    assert any("source s has an in-edge" in p for p in problems)
    assert any("terminal t has an out-edge" in p for p in problems)


def test_cycle_reported():
    net = SumNetwork(("a", "b"), (Edge("x", "a", "b"), Edge("y", "b", "a")), (), (), "loop")
    assert "cycle" in validate(net)
    with pytest.raises(NetworkError):
        check(net)
    with pytest.raises(NetworkError):
        topo_order(net)


def test_dangling_and_duplicate_ids():
    net = SumNetwork(("s", "t"), (Edge("e", "s", "t"), Edge("e", "s", "x")), ("s",), ("t",))
    problems = validate(net)
    assert any("duplicate edge id" in p for p in problems)
    assert any("dangling endpoint x" in p for p in problems)


def test_chain_order():
    assert topo_order(catalog.chain()) == ["s-a", "a-t"]


def test_s3_order_respects_merges():
    net = catalog.s3()
    order = topo_order(net)
    assert order.index("u1-v1") > order.index("s1-u1")
    assert order.index("u1-v1") > order.index("s3-u1")
    assert_topological(net, order)


def test_parallel_edges_break_ties_by_id():
    net = SumNetwork(("s", "t"), (Edge("b", "s", "t"), Edge("a", "s", "t")), ("s",), ("t",))
    assert topo_order(net) == ["a", "b"]
    net = SumNetwork(("s", "t"), (Edge("e10", "s", "t"), Edge("e2", "s", "t")), ("s",), ("t",))
    assert topo_order(net) == ["e2", "e10"]


def test_s3_min_cuts():
    net = catalog.s3()
    assert min_cut(net, "s1", "t1") == 1
    # s3 reaches t3 through both u1 and u2
    assert min_cut(net, "s3", "t3") == 2
    for s, t in itertools.product(net.sources, net.terminals):
        assert min_cut(net, s, t) == brute_cut(net, s, t)
    assert min_cut_bound(net) == 1


def test_s3_prime_min_cuts():
    net = catalog.s3_prime()
    assert min_cut(net, "s1", "t1") == 3
    assert brute_force_min_cut(net, "s1", "t1", max_size=3) == 3
    assert min_cut_bound(net) == 1


def test_butterfly_min_cut_two():
    assert min_cut_bound(catalog.butterfly()) == 2


def test_disconnected_pair_is_zero():
    net = net_of([("s1", "t1"), ("s2", "t2")], ["s1", "s2"], ["t1", "t2"])
    assert min_cut(net, "s1", "t2") == 0
    assert min_cut_bound(net) == 0


def test_unknown_node_rejected():
    with pytest.raises(NetworkError):
        min_cut(catalog.chain(), "s", "nowhere")


def test_reverse_is_involution():
    for entry in catalog.entries().values():
        net = entry.network
        rev = reverse_network(net)
        assert validate(rev) == []
        assert rev.sources == net.terminals and rev.terminals == net.sources
        assert {e.id for e in rev.edges} == {e.id for e in net.edges}
        assert reverse_network(rev) == net
        assert min_cut_bound(rev) == min_cut_bound(net)


def test_reverse_of_one_terminal_has_one_source():
    assert reverse_network(catalog.reverse_butterfly()).m == 1


def test_s3_prime_by_surgery():
    net = subdivide_edge(catalog.s3(), "s2-t1", "u3")
    ids = {e.id for e in net.edges}
    assert "s2-t1" not in ids and {"s2-u3", "u3-t1"} <= ids
    net = add_edge(add_edge(net, "s1", "u3"), "s1", "t1")
    assert set(net.in_edges("t1")) == {"s1-t1", "u3-t1", "v1-t1"}
    assert sorted(e.id for e in net.edges) == sorted(e.id for e in catalog.s3_prime().edges)


def test_surgery_errors():
    net = catalog.chain()
    with pytest.raises(NetworkError):
        add_edge(net, "a", "s")   # into a source
    with pytest.raises(NetworkError):
        add_edge(net, "t", "a")   # out of a terminal
    with pytest.raises(NetworkError):
        add_edge(net, "s", "zz")
    with pytest.raises(NetworkError):
        subdivide_edge(net, "nope", "b")
    with pytest.raises(NetworkError):
        subdivide_edge(net, "s-a", "a")
    net = SumNetwork(("s", "a", "b", "t"), (Edge("1", "s", "a"), Edge("2", "a", "b"),
                                           Edge("3", "b", "t")), ("s",), ("t",))
    with pytest.raises(NetworkError):
        add_edge(net, "b", "a")


def test_parallel_edge_ids_are_fresh():
    net = add_edge(catalog.one_edge(), "s", "t")
    assert [e.id for e in net.edges] == ["s-t", "s-t#2"]
    assert min_cut(net, "s", "t") == 2


def test_file_round_trip_byte_stable():
    for entry in catalog.entries().values():
        text = dumps_network(entry.network)
        back = loads_network(text)
        assert back == entry.network
        assert dumps_network(back) == text


@pytest.mark.parametrize("text", [
    "not json",
    '{"nodes": ["a"]}',
    '{"name": "x", "nodes": ["s", "t"], "edges": [{"id": "e", "tail": "t", "head": "s"}],'
    ' "sources": ["s"], "terminals": ["t"]}',
])
def test_malformed_files_rejected(text):
    with pytest.raises(NetworkError):
        loads_network(text)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(4, 12), st.integers(3, 10))
def test_min_cut_matches_brute_force(seed, n_nodes, n_edges):
    net = random_dag(seed, n_nodes=n_nodes, n_edges=n_edges)
    for s, t in itertools.product(net.sources, net.terminals):
        expected = brute_cut(net, s, t, max_size=len(net.edges))
        assert min_cut(net, s, t) == expected
        assert brute_force_min_cut(net, s, t) == expected


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(4, 12), st.integers(3, 16))
def test_min_cut_direction_symmetric(seed, n_nodes, n_edges):
    net = random_dag(seed, n_nodes=n_nodes, n_edges=n_edges, m=2, n=3)
    rev = reverse_network(net)
    for s, t in itertools.product(net.sources, net.terminals):
        assert min_cut(net, s, t) == min_cut(rev, t, s)
    assert min_cut_bound(net) == min_cut_bound(rev)
    assert_topological(net, topo_order(net))


def test_topo_order_ignores_edge_list_order():
    net = catalog.s3()
    shuffled = SumNetwork(net.nodes, tuple(reversed(net.edges)), net.sources, net.terminals)
    assert topo_order(shuffled) == topo_order(net)


def test_relabel_keeps_structure():
    net = catalog.butterfly()
    rel = relabel_edges(net, {e.id: f"x{i}" for i, e in enumerate(net.edges)})
    assert validate(rel) == []
    assert min_cut_bound(rel) == 2
