"""Existence search for (k, l) codes on sum-networks.

Three searches share one depth-first engine.  The free parts of a code
("slots": coefficient matrices for linear codes, function tables for table
codes) are ordered along the topological edge order, and candidates are
indexed by a mixed-radix counter whose most significant digit is the first
slot.  A terminal is checked as soon as every slot upstream of it has a
value; a failing check discards the whole subtree.  Results of terminal
checks are memoised on the values of that terminal's upstream slots.

Only the following reductions shrink the space; each keeps at least one
witness whenever any code exists.

Forwarding normalisation.
    A source edge (when k <= l) carries the raw message, zero-padded to
    length l, and an internal node with a single live in-edge forwards it
    unchanged.  The head of such an edge can recompute any function of the
    single input it would otherwise have received, so carrying the input
    itself loses nothing.  For linear codes the replaced matrix is absorbed
    into the next free matrix (or decoder) downstream; rows of a transition
    that multiply padding are fixed to zero for the same reason.

Dead and silent edges.
    Edges from which no demanding terminal can be reached, and edges that
    only ever carry zero (fed exclusively by inactive sources), are fixed to
    zero.  They cannot influence any decoded value.

Decodability prefilter (table search, k = l).
    Let a free edge function f read raw messages of the sources A, and let
    terminal t see only f and raw messages of the sources B.  Unless every
    active source lies in A | B the terminal cannot decode at all.
    Otherwise two inputs x, x' of f that agree on A & B but have different
    sums over A - B must get different values of f, or t would confuse two
    tuples with different totals.  Candidates for f are enumerated directly
    as the assignments respecting these inequalities.

Output relabelling (table search).
    Every reader of a free edge function (a downstream table or a terminal
    decoder) is itself an arbitrary function, so composing f with a
    permutation of its output symbols and the reader with the inverse gives
    an equivalent code.  Only tables whose values first appear in the order
    0, 1, 2, ... are enumerated.

Surviving combinations are checked exactly: by linear algebra for linear
codes (decoders come from solving the terminal equations) and by running
the code on every tuple of source messages for table codes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import alphabet_make, solve_right
from .codec import (
    BudgetExceeded,
    LinearCode,
    TableCode,
    TABLE_BUDGET,
    code_to_dict,
    source_tuples,
    vec_add,
    vec_digits,
    verify_linear,
    verify_table,
)
from .netgraph import SumNetwork, check

LINEAR_BUDGET = 10 ** 9
TABLE_SEARCH_BUDGET = 10 ** 7

FOUND = "found"
EXHAUSTED = "exhausted-none"
EXCEEDED = "budget-exceeded"


@dataclass
class SearchOutcome:
    status: str
    witness: object = None
    candidates_examined: int = 0
    budget: int = 0
    seed: Optional[int] = None
    method: str = ""
    space_size: int = 0
    k: int = 0
    l: int = 0
    alphabet: str = ""
    network: str = ""

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "method": self.method,
            "network": self.network,
            "alphabet": self.alphabet,
            "k": self.k,
            "l": self.l,
            "candidates_examined": self.candidates_examined,
            "space_size": self.space_size,
            "budget": self.budget,
            "seed": self.seed,
            "code": None if self.witness is None else code_to_dict(self.witness),
        }


# --- shared analysis ------------------------------------------------------

def _analyse(net: SumNetwork, sources, terminals):
    """Silent edges, relevant edges and live in-edges of every node."""
    srcs = tuple(net.sources if sources is None else sources)
    tgts = tuple(net.terminals if terminals is None else terminals)
    for s in srcs:
        if s not in net.sources:
            raise ValueError(f"{s} is not a source")
    for t in tgts:
        if t not in net.terminals:
            raise ValueError(f"{t} is not a terminal")
    silent = set()
    for e in net.topo:
        tail = net.edge[e].tail
        if net.is_source(tail):
            if tail not in srcs:
                silent.add(e)
        elif all(f in silent for f in net.in_edges(tail)):
            silent.add(e)
    relevant = net.upstream([e for t in tgts for e in net.in_edges(t)])
    live_in = {
        v: tuple(f for f in net.in_edges(v) if f not in silent) for v in net.nodes
    }
    return srcs, tgts, silent, relevant, live_in


def _dfs(sizes, checks, check, lo, hi, budget):
    """Depth-first search over the mixed-radix candidate space.

    ``checks[d]`` lists the terminals to test once depth d is assigned.
    Returns ``(status, assignment, nodes)`` where nodes counts every slot
    value tried.  Depth 0 is restricted to values in ``[lo, hi)``.
    """
    depth = len(sizes)
    assignment = [0] * depth
    nodes = 0

    def rec(d):
        nonlocal nodes
        if d == depth:
            return True
        start, stop = (lo, hi) if d == 0 else (0, sizes[d])
        for v in range(start, stop):
            if nodes >= budget:
                raise BudgetExceeded
            nodes += 1
            assignment[d] = v
            if all(check(t, assignment) for t in checks[d]) and rec(d + 1):
                return True
        return False

    try:
        ok = rec(0) if depth else True
    except BudgetExceeded:
        return EXCEEDED, None, nodes
    return (FOUND, list(assignment), nodes) if ok else (EXHAUSTED, None, nodes)


def _schedule(n_slots, deps):
    """Depth after which each terminal becomes checkable (-1 = before any slot)."""
    checks = {d: [] for d in range(-1, n_slots)}
    for t, slots in deps.items():
        checks[max(slots, default=-1)].append(t)
    return checks


def _run(problem_cls, args, budget, jobs):
    problem = problem_cls(*args)
    for t in problem.checks[-1]:
        if not problem.check(t, []):
            return EXHAUSTED, None, 0, problem
    sizes = problem.sizes
    checks = [problem.checks[d] for d in range(len(sizes))]
    if not sizes:
        return FOUND, [], 0, problem
    first = sizes[0]
    jobs = max(1, min(jobs, first))
    if jobs == 1:
        status, assignment, nodes = _dfs(sizes, checks, problem.check, 0, first, budget)
        return status, assignment, nodes, problem
    bounds = [first * j // jobs for j in range(jobs + 1)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_range_worker, problem_cls, args, lo, hi, budget)
            for lo, hi in zip(bounds, bounds[1:])
        ]
        results = [f.result() for f in futures]
    total = 0
    for status, assignment, nodes in results:
        if status == EXCEEDED or total + nodes > budget:
            return EXCEEDED, None, budget, problem
        total += nodes
        if status == FOUND:
            return FOUND, assignment, total, problem
    return EXHAUSTED, None, total, problem


def _range_worker(problem_cls, args, lo, hi, budget):
    problem = problem_cls(*args)
    sizes = problem.sizes
    checks = [problem.checks[d] for d in range(len(sizes))]
    return _dfs(sizes, checks, problem.check, lo, hi, budget)


# --- linear search ------------------------------------------------------------

class _LinearProblem:
    """Normalised slot structure of the (k, l) linear codes on a network."""

    def __init__(self, net, field, k, l, sources, terminals):
        self.net, self.F, self.k, self.l = net, field, k, l
        srcs, tgts, silent, relevant, live_in = _analyse(net, sources, terminals)
        self.srcs, self.tgts = srcs, tgts
        self.slots = []           # (kind, key, free_rows)
        self.fixed_inj = {}
        self.forward = {}         # edge -> the single live in-edge it copies
        padded = set()
        active = [e for e in net.topo if e in relevant and e not in silent]
        self.active = active
        for e in active:
            tail = net.edge[e].tail
            if net.is_source(tail):
                if k <= l:
                    inj = np.zeros((k, l), dtype=np.int64)
                    inj[:, :k] = np.eye(k, dtype=np.int64)
                    self.fixed_inj[tail, e] = inj
                    if k < l:
                        padded.add(e)
                else:
                    self.slots.append(("inj", (tail, e), k))
                continue
            ins = live_in[tail]
            if len(ins) == 1:
                self.forward[e] = ins[0]
                if ins[0] in padded:
                    padded.add(e)
                continue
            for f in ins:
                self.slots.append(("tr", (f, e), k if f in padded else l))
        self.index = {key: i for i, (_, key, _) in enumerate(self.slots)}
        q = field.order
        self.sizes = [q ** (rows * l) for _, _, rows in self.slots]
        self.space_size = int(np.prod([float(s) for s in self.sizes])) if self.sizes else 1
        self.deps = {}
        self.upstream = {}
        for t in tgts:
            up = net.upstream(net.in_edges(t))
            self.upstream[t] = [e for e in active if e in up]
            self.deps[t] = [i for i, (_, key, _) in enumerate(self.slots) if key[1] in up]
        self.checks = _schedule(len(self.slots), self.deps)
        self._memo = {}
        self._solutions = {}

    def matrix(self, i, value):
        kind, _, rows = self.slots[i]
        q, l = self.F.order, self.l
        shape_rows = self.k if kind == "inj" else l
        out = np.zeros((shape_rows, l), dtype=np.int64)
        out[:rows] = vec_digits(np.int64(value), q, rows * l).reshape(rows, l)
        return out

    def _transfer(self, edges, assignment):
        F, k, l = self.F, self.k, self.l
        mk = len(self.srcs) * k
        pos = {s: i for i, s in enumerate(self.srcs)}
        A = {}
        for e in edges:
            tail = self.net.edge[e].tail
            if e in self.forward:
                A[e] = A[self.forward[e]]
            elif self.net.is_source(tail):
                blk = np.zeros((mk, l), dtype=np.int64)
                inj = self.fixed_inj.get((tail, e))
                if inj is None:
                    inj = self.matrix(self.index[tail, e], assignment[self.index[tail, e]])
                blk[pos[tail] * k:(pos[tail] + 1) * k] = inj
                A[e] = blk
            else:
                acc = np.zeros((mk, l), dtype=np.int64)
                for f in self.net.in_edges(tail):
                    i = self.index.get((f, e))
                    if i is None or f not in A or not A[f].any():
                        continue
                    acc = F.add(acc, F.matmul(A[f], self.matrix(i, assignment[i])))
                A[e] = acc
        return A

    def solve(self, t, assignment):
        A = self._transfer(self.upstream[t], assignment)
        k, l = self.k, self.l
        mk = len(self.srcs) * k
        ins = self.net.in_edges(t)
        zero = np.zeros((mk, l), dtype=np.int64)
        if ins:
            M = np.concatenate([A.get(e, zero) for e in ins], axis=1)
        else:
            M = np.zeros((mk, 0), dtype=np.int64)
        rhs = np.tile(np.eye(k, dtype=np.int64), (len(self.srcs), 1))
        return solve_right(self.F, M, rhs)

    def check(self, t, assignment):
        key = (t,) + tuple(assignment[i] for i in self.deps[t])
        hit = self._memo.get(key)
        if hit is None:
            hit = self.solve(t, assignment) is not None
            self._memo[key] = hit
        return hit

    def build(self, assignment) -> LinearCode:
        F, k, l = self.F, self.k, self.l
        injection = dict(self.fixed_inj)
        transition = {}
        for e, f in self.forward.items():
            transition[f, e] = np.eye(l, dtype=np.int64)
        for i, (kind, key, _) in enumerate(self.slots):
            mat = self.matrix(i, assignment[i])
            if not mat.any():
                continue
            (injection if kind == "inj" else transition)[key] = mat
        decoding = {}
        for t in self.tgts:
            X = self.solve(t, assignment)
            assert X is not None
            for j, e in enumerate(self.net.in_edges(t)):
                D = X[j * l:(j + 1) * l]
                if D.any():
                    decoding[t, e] = D
        return LinearCode(k, l, F, injection, transition, decoding)


def _outcome(status, witness, nodes, budget, method, net, alphabet, k, l, space, seed=None):
    return SearchOutcome(status, witness, nodes, budget, seed, method, space, k, l,
                         alphabet.name, net.name)


def search_linear(net: SumNetwork, field, k: int, l: int, budget: int = LINEAR_BUDGET,
                  sources=None, terminals=None, jobs: int = 1) -> SearchOutcome:
    """Exhaustive search for a (k, l) linear code over ``field``.

    ``exhausted-none`` means no (k, l) linear solution exists over this
    field.  Decoders are never enumerated; they are solved for.
    """
    check(net)
    F = alphabet_make(field)
    if not F.is_field:
        raise ValueError("linear search needs a field")
    args = (net, F, k, l, sources, terminals)
    status, assignment, nodes, problem = _run(_LinearProblem, args, budget, jobs)
    witness = None
    if status == FOUND:
        witness = problem.build(assignment)
        if not verify_linear(net, witness, problem.srcs, problem.tgts):
            raise AssertionError("search produced a code that does not verify")
    return _outcome(status, witness, nodes, budget, "linear", net, F, k, l, problem.space_size)


def search_random_linear(net: SumNetwork, field, k: int, l: int, trials: int = 1000,
                         seed: int = 0, sources=None, terminals=None) -> SearchOutcome:
    """Sample normalised linear codes uniformly; return the first that verifies.

    Never claims non-existence: the status is ``found`` or ``budget-exceeded``.
    """
    check(net)
    F = alphabet_make(field)
    problem = _LinearProblem(net, F, k, l, sources, terminals)
    rng = np.random.default_rng(seed)
    order = [t for d in sorted(problem.checks) for t in problem.checks[d]]
    for trial in range(1, trials + 1):
        assignment = [int(rng.integers(0, size)) for size in problem.sizes]
        if all(problem.check(t, assignment) for t in order):
            code = problem.build(assignment)
            if not verify_linear(net, code, problem.srcs, problem.tgts):
                raise AssertionError("random search produced a code that does not verify")
            return _outcome(FOUND, code, trial, trials, "random-linear", net, F, k, l,
                            problem.space_size, seed)
    return _outcome(EXCEEDED, None, trials, trials, "random-linear", net, F, k, l,
                    problem.space_size, seed)


# --- table search -----------------------------------------------------------------

def _colorings(n_points, n_colors, conflict, partitions, budget):
    """All maps point -> colour with conflicting points coloured differently.

    Colours are canonical: point x may use at most one colour beyond those
    already used on points before it.  ``partitions`` lists, per terminal
    constraint, ``(slice_of, class_of)`` arrays; within one slice distinct classes need disjoint colour sets, so
    a partial map is abandoned once some slice has more uncoloured classes
    than unused colours.  Enumeration is lexicographic, point 0 first.
    """
    colour = [-1] * n_points
    out = []
    neighbours = [np.flatnonzero(conflict[x]) for x in range(n_points)]

    def feasible(x):
        for slice_of, class_of in partitions:
            s = slice_of[x]
            members = np.flatnonzero(slice_of == s)
            used = {colour[y] for y in members if colour[y] >= 0}
            started = {class_of[y] for y in members if colour[y] >= 0}
            classes = set(class_of[members].tolist())
            if len(classes - started) > n_colors - len(used):
                return False
        return True

    def rec(x, top):
        if x == n_points:
            if len(out) >= budget:
                raise BudgetExceeded
            out.append(np.array(colour, dtype=np.int64))
            return
        banned = {colour[y] for y in neighbours[x] if y < x}
        for c in range(min(n_colors, top + 2)):
            if c in banned:
                continue
            colour[x] = c
            if feasible(x):
                rec(x + 1, max(top, c))
        colour[x] = -1

    rec(0, -1)
    return out


class _TableProblem:
    """Normalised structure of (k, l) table codes on a network."""

    def __init__(self, net, alphabet, k, l, sources, terminals, budget=TABLE_SEARCH_BUDGET):
        self.net, self.G, self.k, self.l = net, alphabet, k, l
        srcs, tgts, silent, relevant, live_in = _analyse(net, sources, terminals)
        self.srcs, self.tgts = srcs, tgts
        q = alphabet.order
        self.K, self.Q = q ** k, q ** l
        self.live_in = live_in
        self.desc = {}
        self.free = []
        self.active = [e for e in net.topo if e in relevant and e not in silent]
        for e in net.topo:
            if e in silent or e not in relevant:
                self.desc[e] = ("zero",)
                continue
            tail = net.edge[e].tail
            if net.is_source(tail):
                if k <= l:
                    self.desc[e] = ("raw", tail)
                else:
                    self.desc[e] = ("free", e)
                    self.free.append(e)
            elif len(live_in[tail]) == 1:
                self.desc[e] = self.desc[live_in[tail][0]]
            else:
                self.desc[e] = ("free", e)
                self.free.append(e)
        for e in self.free:
            tail = net.edge[e].tail
            dom = self.K if net.is_source(tail) else self.Q ** len(live_in[tail])
            if dom > TABLE_BUDGET:
                raise BudgetExceeded(f"edge {e} has a domain of {dom} points")
        tuples = source_tuples(alphabet, k, len(srcs))
        self.T = tuples.shape[1]
        self.X = dict(zip(srcs, tuples))
        target = np.zeros(self.T, dtype=np.int64)
        for s in srcs:
            target = vec_add(alphabet, target, self.X[s], k)
        self.target = target
        self.candidates = [self._candidates(e, budget) for e in self.free]
        self.sizes = [len(c) for c in self.candidates]
        self.space_size = int(np.prod([float(s) for s in self.sizes])) if self.sizes else 1
        self.slot = {e: i for i, e in enumerate(self.free)}
        self.deps = {}
        for t in tgts:
            up = net.upstream(net.in_edges(t))
            self.deps[t] = [i for i, e in enumerate(self.free) if e in up]
        self.checks = _schedule(len(self.free), self.deps)
        self._memo = {}

    def _raw_sources(self, e):
        tail = self.net.edge[e].tail
        if self.net.is_source(tail) or self.k != self.l:
            return None
        out = []
        for f in self.live_in[tail]:
            d = self.desc[f]
            if d[0] != "raw" or d[1] in out:
                return None
            out.append(d[1])
        return out

    def _candidates(self, e, budget):
        tail = self.net.edge[e].tail
        n_points = self.K if self.net.is_source(tail) else self.Q ** len(self.live_in[tail])
        A = self._raw_sources(e)
        constraints = []
        if A is not None:
            for t in self.tgts:
                descs = [self.desc[f] for f in self.net.in_edges(t)]
                if ("free", e) not in descs:
                    continue
                if any(d[0] == "free" and d[1] != e for d in descs):
                    continue
                B = {d[1] for d in descs if d[0] == "raw"}
                if not set(self.srcs) <= set(A) | B:
                    return []
                constraints.append(B)
        if not constraints:
            no_conflict = np.zeros((n_points, n_points), dtype=bool)
            return _colorings(n_points, self.Q, no_conflict, [], budget)
        digits = vec_digits(np.arange(n_points), self.Q, len(A))
        conflict = np.zeros((n_points, n_points), dtype=bool)
        partitions = []
        for B in constraints:
            keep = [j for j, s in enumerate(A) if s in B]
            rest = [j for j, s in enumerate(A) if s not in B]
            slice_of = (np.zeros(n_points, dtype=np.int64) if not keep else
                        sum(digits[j] * self.Q ** i for i, j in enumerate(keep)))
            total = np.zeros(n_points, dtype=np.int64)
            for j in rest:
                total = vec_add(self.G, total, digits[j], self.k)
            same_slice = slice_of[:, None] == slice_of[None, :]
            conflict |= same_slice & (total[:, None] != total[None, :])
            partitions.append((slice_of, total))
        return _colorings(n_points, self.Q, conflict, partitions, budget)

    def _value(self, e, assignment, cache):
        if e in cache:
            return cache[e]
        d = self.desc[e]
        if d[0] == "zero":
            val = np.zeros(self.T, dtype=np.int64)
        elif d[0] == "raw":
            val = self.X[d[1]]
        elif d[1] != e:
            val = self._value(d[1], assignment, cache)
        else:
            tail = self.net.edge[e].tail
            table = self.candidates[self.slot[e]][assignment[self.slot[e]]]
            if self.net.is_source(tail):
                val = table[self.X[tail]]
            else:
                idx = np.zeros(self.T, dtype=np.int64)
                for j, f in enumerate(self.live_in[tail]):
                    idx = idx + self._value(f, assignment, cache) * self.Q ** j
                val = table[idx]
        cache[e] = val
        return val

    def decoder(self, t, assignment):
        cache = {}
        idx = np.zeros(self.T, dtype=np.int64)
        ins = self.net.in_edges(t)
        for j, f in enumerate(ins):
            idx = idx + self._value(f, assignment, cache) * self.Q ** j
        dec = np.full(self.Q ** len(ins), -1, dtype=np.int64)
        dec[idx] = self.target
        if not np.array_equal(dec[idx], self.target):
            return None
        dec[dec < 0] = 0
        return dec

    def check(self, t, assignment):
        key = (t,) + tuple(assignment[i] for i in self.deps[t])
        hit = self._memo.get(key)
        if hit is None:
            hit = self.decoder(t, assignment) is not None
            self._memo[key] = hit
        return hit

    def build(self, assignment) -> TableCode:
        net, Q = self.net, self.Q
        edges = {}
        for e in self.active:
            tail = net.edge[e].tail
            d = self.desc[e]
            if net.is_source(tail):
                edges[e] = (np.arange(self.K) if d[0] == "raw"
                            else self.candidates[self.slot[e]][assignment[self.slot[e]]])
                continue
            ins = net.in_edges(tail)
            full = vec_digits(np.arange(Q ** len(ins)), Q, len(ins))
            live = [ins.index(f) for f in self.live_in[tail]]
            if d == ("free", e):
                idx = sum(full[j] * Q ** i for i, j in enumerate(live))
                edges[e] = self.candidates[self.slot[e]][assignment[self.slot[e]]][idx]
            else:
                edges[e] = full[live[0]]
        decoders = {t: self.decoder(t, assignment) for t in self.tgts}
        return TableCode(self.k, self.l, self.G, edges, decoders)


def search_table(net: SumNetwork, alphabet, k: int = 1, l: int = 1,
                 budget: int = TABLE_SEARCH_BUDGET, sources=None, terminals=None,
                 jobs: int = 1) -> SearchOutcome:
    """Exhaustive search for a general (possibly nonlinear) (k, l) code.

    ``exhausted-none`` proves that no (k, l) code over ``alphabet`` exists.
    ``budget`` caps both the number of candidate functions generated for
    each free edge and the number of search nodes visited.
    """
    check(net)
    G = alphabet_make(alphabet)
    args = (net, G, k, l, sources, terminals, budget)
    try:
        status, assignment, nodes, problem = _run(_TableProblem, args, budget, jobs)
    except BudgetExceeded:
        # setup generated more candidate functions than the budget allows
        return _outcome(EXCEEDED, None, budget, budget, "table", net, G, k, l, 0)
    witness = None
    if status == FOUND:
        witness = problem.build(assignment)
        if not verify_table(net, witness, problem.srcs, problem.tgts):
            raise AssertionError("search produced a table code that does not verify")
    return _outcome(status, witness, nodes, budget, "table", net, G, k, l, problem.space_size)
