"""A shared pool of verified linear codes drawn from every constructor.

Built once per test session; each entry is ``(label, network, code)`` and
every code solves the full sum demand on its network.
"""

from functools import lru_cache

from oracles import butterfly_code, random_dag
from sumnet import catalog
from sumnet.codec import verify_linear
from sumnet.schemes import (
    scheme_one_terminal,
    scheme_pairing,
    scheme_three_terminal,
    scheme_two_source_halfmincut,
)
from sumnet.search import FOUND, search_linear, search_random_linear


@lru_cache(maxsize=None)
def verified_codes():
    out = [("butterfly-textbook", catalog.butterfly(), butterfly_code())]

    for field in ("gf2", "gf3"):
        for net in (catalog.s3(), catalog.s3_prime(), catalog.bipartite(3, 3)):
            code = scheme_three_terminal(net, field)
            out.append((f"three-terminal/{net.name}/{field}", net, code))
    for net in (catalog.reverse_butterfly(), catalog.chain(), catalog.one_edge()):
        out.append((f"one-terminal/{net.name}", net, scheme_one_terminal(net)))
    for net in (catalog.doubled_diamond(), catalog.diamond()):
        out.append((f"half-mincut/{net.name}", net, scheme_two_source_halfmincut(net)))
    for name in ("diamond", "doubled-diamond", "random-4x4-1", "random-5x4-2"):
        net = catalog.get(name)
        out.append((f"pairing/{name}", net, scheme_pairing(net)))

    for m, n in ((2, 2), (2, 3), (3, 2), (3, 3), (3, 4), (4, 3), (4, 4)):
        for seed in range(10):
            net = catalog.random_connected(m, n, seed)
            out.append((f"pairing/{net.name}", net, scheme_pairing(net)))
    for n in (2, 3):
        for seed in range(5):
            net = catalog.random_connected(2, n, seed)
            out.append((f"half-mincut/{net.name}", net, scheme_two_source_halfmincut(net)))

    for net, field, k, l in ((catalog.s3(), "gf2", 2, 3), (catalog.bipartite(3, 3), "gf2", 1, 1),
                             (catalog.diamond(), "gf3", 1, 1), (catalog.butterfly(), "gf2", 2, 1)):
        res = search_linear(net, field, k, l)
        out.append((f"search/{net.name}/{field}/{k}x{l}", net, res.witness))
    for seed in range(150):
        net = random_dag(seed, n_nodes=6, n_edges=8, m=2, n=2)
        res = search_random_linear(net, "gf3", 1, 1, trials=200, seed=seed)
        if res.status == FOUND:
            out.append((f"random/{net.name}", net, res.witness))

    for label, net, code in out:
        assert code is not None and verify_linear(net, code), label
    return tuple(out)
