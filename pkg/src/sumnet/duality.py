"""Dual codes on reverse sum-networks.

Reversing every edge and swapping sources with terminals turns a linear
(k, l) solution into one for the reverse network by transposing each local
matrix: a transition ``(f, e)`` becomes ``(e, f)`` transposed, decoders of
the old terminals become injections of the new sources, and injections of
the old sources become decoders of the new terminals.  Every path product
is transposed, so each identity ``sum A[i, e] D[t, e] = I`` is preserved.
Each dual is re-verified before it is returned.
"""

from __future__ import annotations

from .codec import LinearCode, verify_linear
from .netgraph import SumNetwork, reverse_network


class DualityError(ValueError):
    pass


def dual_code(net: SumNetwork, code: LinearCode) -> LinearCode:
    """The dual of a verified code, as a code on ``reverse_network(net)``."""
    if not verify_linear(net, code):
        raise DualityError("the input code does not solve the network")
    rev = reverse_network(net)
    dual = LinearCode(
        code.k,
        code.l,
        code.field,
        injection={(t, e): D.T for (t, e), D in code.decoding.items()},
        transition={(e, f): T.T for (f, e), T in code.transition.items()},
        decoding={(s, e): M.T for (s, e), M in code.injection.items()},
    )
    if not verify_linear(rev, dual):
        raise AssertionError("dual code failed verification on the reverse network")
    return dual


def linear_capacity_transfer_check(net: SumNetwork, codes) -> list[dict]:
    """For each verified code on ``net``, confirm its rate on the reverse network."""
    rev = reverse_network(net)
    report = []
    for code in codes:
        dual = dual_code(net, code)
        report.append({
            "network": net.name,
            "reverse": rev.name,
            "k": code.k,
            "l": code.l,
            "rate": str(code.rate),
            "confirmed": dual.rate == code.rate and verify_linear(rev, dual),
        })
    return report
