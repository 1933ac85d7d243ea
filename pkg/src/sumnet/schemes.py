"""Time-sharing constructions of fractional linear codes.

Scalar building blocks (a rate-1 code delivering the sum to two terminals,
and a rate-eta multicast of one source) are found by seeded random linear
coding over the normalised coefficient space, falling back to exhaustive
linear search when sampling fails.  Block codes are then assembled slot by
slot: slot j runs its own scalar code and carries a fixed combination of
the k block sums, and each terminal recombines the slots it receives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Alphabet, FMatrix, alphabet_make, mat_solve_right, rank
from .codec import LinearCode, verify_linear
from .duality import dual_code
from .netgraph import SumNetwork, check, min_cut, min_cut_bound, reverse_network
from .search import FOUND, search_linear, search_random_linear

RANDOM_TRIALS = 200
FALLBACK_BUDGET = 10 ** 6


class SchemeError(ValueError):
    """A construction's precondition fails or no slot code could be found."""


class SlotSearchFailed(SchemeError):
    """Sampling and bounded exhaustive search both failed to find a slot code."""


def escalation(field) -> list[Alphabet]:
    """The requested field followed by its extensions up to order 256."""
    F = alphabet_make(field)
    out = []
    r = F.r
    while F.p ** r <= 256:
        out.append(Alphabet.field(F.p, r))
        r += 1
    return out


def _with_fields(build, field, escalate):
    fields = escalation(field) if escalate else [alphabet_make(field)]
    last = None
    for F in fields:
        try:
            return build(F)
        except SchemeError as exc:
            last = exc
    raise last


def _slot_code(net, F, k, l, sources, terminals, seed):
    out = search_random_linear(net, F, k, l, RANDOM_TRIALS, seed, sources, terminals)
    if out.status != FOUND:
        out = search_linear(net, F, k, l, FALLBACK_BUDGET, sources, terminals)
    if out.status != FOUND:
        raise SlotSearchFailed(
            f"no ({k},{l}) code over {F.name} for sources {sources} / terminals {terminals}"
        )
    return out.witness


def _require_connected(net, terminals):
    for s in net.sources:
        for t in terminals:
            if min_cut(net, s, t) < 1:
                raise SchemeError(f"source {s} does not reach terminal {t}")


def scheme_two_terminal(net: SumNetwork, t_a: str, t_b: str, field="gf2",
                        seed: int = 0, escalate: bool = False) -> LinearCode:
    """A scalar linear code delivering the sum of all sources to t_a and t_b."""
    check(net)
    _require_connected(net, (t_a, t_b))
    return _with_fields(
        lambda F: _slot_code(net, F, 1, 1, None, (t_a, t_b), seed), field, escalate
    )


def scheme_multicast(net: SumNetwork, source: str, rate: int, field="gf2",
                     seed: int = 0, escalate: bool = False) -> LinearCode:
    """A (rate, 1) code multicasting ``source`` to every terminal; other sources silent."""
    check(net)
    if rate < 1:
        raise SchemeError("multicast rate must be at least 1")
    cut = min(min_cut(net, source, t) for t in net.terminals)
    if cut < rate:
        raise SchemeError(f"min-cut from {source} is {cut} < {rate}")
    return _with_fields(
        lambda F: _slot_code(net, F, rate, 1, (source,), None, seed), field, escalate
    )


@dataclass(frozen=True)
class Slot:
    target: tuple[int, ...]
    recipients: tuple[str, ...]
    code: LinearCode


@dataclass
class SlotPlan:
    """Slot schedule of a time-shared block code.

    Slot j carries ``sum_r target[r] * Sum_r`` to its recipients using its
    scalar code.  ``post[t]`` (l x k) maps the slot values received by t to
    the k block sums.
    """

    k: int
    field: Alphabet
    slots: list = field(default_factory=list)
    post: dict = field(default_factory=dict)

    @property
    def l(self) -> int:
        return len(self.slots)

    def received(self, t) -> np.ndarray:
        """k x l matrix whose column j is slot j's target if t receives it."""
        C = np.zeros((self.k, self.l), dtype=np.int64)
        for j, slot in enumerate(self.slots):
            if t in slot.recipients:
                C[:, j] = slot.target
        return C

    def reconstructs(self, t) -> bool:
        return rank(self.field, self.received(t)) == self.k

    def summary(self) -> str:
        names = [f"Sum_{r + 1}" for r in range(self.k)]
        rows = [("slot", "carries", "recipients")]
        for j, slot in enumerate(self.slots):
            terms = []
            for c, name in zip(slot.target, names):
                if c == 1:
                    terms.append(name)
                elif c:
                    terms.append(f"{c}*{name}")
            rows.append((str(j + 1), " + ".join(terms), ", ".join(slot.recipients)))
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        return "\n".join(lines) + "\n"


def plan_post(plan: SlotPlan, terminals) -> None:
    F = plan.field
    eye = FMatrix.identity(F, plan.k)
    for t in terminals:
        P = mat_solve_right(FMatrix(F, plan.received(t)), eye)
        if P is None:
            raise SchemeError(f"terminal {t} cannot reconstruct the block sums")
        plan.post[t] = P


def assemble(net: SumNetwork, plan: SlotPlan) -> LinearCode:
    """Block code running every slot of ``plan`` side by side."""
    F, k, l = plan.field, plan.k, plan.l
    injection, transition, decoding = {}, {}, {}
    for j, slot in enumerate(plan.slots):
        c = np.array(slot.target, dtype=np.int64)
        for key, M in slot.code.injection.items():
            mat = injection.setdefault(key, np.zeros((k, l), dtype=np.int64))
            mat[:, j] = F.mul(c, M.data[0, 0])
        for key, M in slot.code.transition.items():
            mat = transition.setdefault(key, np.zeros((l, l), dtype=np.int64))
            mat[j, j] = M.data[0, 0]
        for (t, e), M in slot.code.decoding.items():
            if t not in plan.post:
                continue
            mat = decoding.setdefault((t, e), np.zeros((l, k), dtype=np.int64))
            mat[j] = F.mul(M.data[0, 0], plan.post[t].data[j])
    code = LinearCode(k, l, F, injection, transition, decoding)
    if not verify_linear(net, code):
        raise AssertionError("assembled block code does not verify")
    return code


def _pair_slots(net, F, pairs, triple, seed):
    """Slots sending Sum_1 and Sum_2 to every pair, then the three-slot triple."""
    slots = []
    for i, (a, b) in enumerate(pairs):
        code = _slot_code(net, F, 1, 1, None, (a, b), seed + i)
        slots += [Slot((1, 0), (a, b), code), Slot((0, 1), (a, b), code)]
    if triple:
        t1, t2, t3 = triple
        base = seed + len(pairs)
        for j, (target, pair) in enumerate([((1, 0), (t1, t2)),
                                            ((0, 1), (t2, t3)),
                                            ((1, 1), (t1, t3))]):
            code = _slot_code(net, F, 1, 1, None, pair, base + j)
            slots.append(Slot(target, pair, code))
    return slots


def pairing_plan(net: SumNetwork, field, seed: int = 0) -> SlotPlan:
    """Slot plan grouping the terminals of ``net`` into pairs (and one triple)."""
    F = alphabet_make(field)
    ts = list(net.terminals)
    n = len(ts)
    if n < 2:
        raise SchemeError("pairing needs at least two terminals")
    npairs = n // 2 if n % 2 == 0 else (n - 3) // 2
    pairs = [(ts[2 * i], ts[2 * i + 1]) for i in range(npairs)]
    triple = tuple(ts[2 * npairs:]) if n % 2 else ()
    plan = SlotPlan(2, F, _pair_slots(net, F, pairs, triple, seed))
    plan_post(plan, ts)
    return plan


def _via_reverse(net, build):
    rev = reverse_network(net)
    code = dual_code(rev, build(rev))
    if not verify_linear(net, code):
        raise AssertionError("dual of the reverse-network code does not verify")
    return code


def scheme_pairing(net: SumNetwork, field="gf2", seed: int = 0,
                   escalate: bool = False) -> LinearCode:
    """A (2, min(m, n)) code: pairs of terminals share slots, one triple if odd.

    When there are fewer sources than terminals the plan is built on the
    reverse network and mapped back by the dual code.
    """
    check(net)
    if min(net.m, net.n) < 2:
        raise SchemeError("pairing needs min(m, n) >= 2")
    if min_cut_bound(net) < 1:
        raise SchemeError("some source-terminal pair is disconnected")

    def build(F):
        def direct(target):
            return assemble(target, pairing_plan(target, F, seed))
        return direct(net) if net.n <= net.m else _via_reverse(net, direct)

    return _with_fields(build, field, escalate)


def scheme_three_terminal(net: SumNetwork, field="gf2", seed: int = 0,
                          escalate: bool = False) -> LinearCode:
    """The (2, 3) code: Sum_1 to (t1, t2), Sum_2 to (t2, t3), Sum_1 + Sum_2 to (t1, t3)."""
    check(net)
    if net.n != 3 and not (net.m == 3 and net.n > 3):
        raise SchemeError("three-terminal scheme needs n = 3, or m = 3 with n > 3")
    if min_cut_bound(net) < 1:
        raise SchemeError("some source-terminal pair is disconnected")

    def build(F):
        def direct(target):
            return assemble(target, pairing_plan(target, F, seed))
        return direct(net) if net.n == 3 else _via_reverse(net, direct)

    return _with_fields(build, field, escalate)


def scheme_two_source_halfmincut(net: SumNetwork, field="gf2", seed: int = 0,
                                 escalate: bool = False) -> LinearCode:
    """An (eta, 2) code: each source multicasts at rate eta in its own slot.

    Terminals add the two received blocks.  With two terminals and more
    sources the construction runs on the reverse network.
    """
    check(net)
    if net.m != 2 and net.n != 2:
        raise SchemeError("half-min-cut scheme needs exactly two sources (or two terminals)")
    eta = min_cut_bound(net)
    if eta < 1:
        raise SchemeError("some source-terminal pair is disconnected")

    def direct(target, F):
        s1, s2 = target.sources
        c1 = _slot_code(target, F, eta, 1, (s1,), None, seed)
        c2 = _slot_code(target, F, eta, 1, (s2,), None, seed + 1)
        injection, transition, decoding = {}, {}, {}
        for j, c in enumerate((c1, c2)):
            for key, M in c.injection.items():
                injection.setdefault(key, np.zeros((eta, 2), dtype=np.int64))[:, j] = M.data[:, 0]
            for key, M in c.transition.items():
                transition.setdefault(key, np.zeros((2, 2), dtype=np.int64))[j, j] = M.data[0, 0]
            for key, M in c.decoding.items():
                decoding.setdefault(key, np.zeros((2, eta), dtype=np.int64))[j] = M.data[0]
        code = LinearCode(eta, 2, F, injection, transition, decoding)
        if not verify_linear(target, code):
            raise AssertionError("half-min-cut code does not verify")
        return code

    def build(F):
        if net.m == 2:
            return direct(net, F)
        return _via_reverse(net, lambda rev: direct(rev, F))

    return _with_fields(build, field, escalate)


def scheme_one_terminal(net: SumNetwork, field="gf2", seed: int = 0,
                        escalate: bool = False) -> LinearCode:
    """An (eta, 1) code for a single terminal: dual of a multicast on the reverse network."""
    check(net)
    if net.n != 1:
        raise SchemeError("one-terminal scheme needs exactly one terminal")
    eta = min_cut_bound(net)
    if eta < 1:
        raise SchemeError("some source is disconnected from the terminal")

    def build(F):
        return _via_reverse(
            net, lambda rev: scheme_multicast(rev, rev.sources[0], eta, F, seed)
        )

    return _with_fields(build, field, escalate)


SCHEMES = {
    "three-terminal": scheme_three_terminal,
    "pairing": scheme_pairing,
    "half-mincut": scheme_two_source_halfmincut,
    "one-terminal": scheme_one_terminal,
}
