"""Fractional network codes for sum-networks and their verification.

A (k, l) code blocks k symbols at every source and sends l symbols over
every edge.  Row-vector convention throughout: a source message is a 1 x k
vector X_i, an edge carries the 1 x l vector ``y_e``, and

* a source edge carries ``X_i @ injection[i, e]``            (k x l)
* an internal edge carries ``sum y_f @ transition[f, e]``     (l x l)
  over the edges f entering its tail
* terminal t outputs ``sum y_e @ decoding[t, e]``              (l x k)
  over the edges e entering t.

Missing matrices are zero.  A linear code solves the network when every
terminal outputs ``sum_i X_i`` for every choice of messages; by linearity
this is the matrix identity ``sum_e A[i, e] @ decoding[t, e] == I_k`` for
every source i, where ``A`` is the global transfer matrix.

Table codes hold arbitrary functions.  Vectors in G^k are encoded as
integers little-endian in base |G|, and the argument of an edge or decoding
function is the concatenation of its in-edge values in edge-list order,
again little-endian (first in-edge least significant) in base |G|^l.

Code interchange document (JSON): ``kind`` ("linear" or "table"), ``k``,
``l``, ``alphabet`` (e.g. "gf4", "z2xz2"), then for linear codes the lists
``injection`` ({source, edge, matrix}), ``transition`` ({in, out, matrix})
and ``decoding`` ({terminal, edge, matrix}); for table codes the objects
``edges`` (edge id -> table) and ``decoders`` (terminal id -> table).
Entries are sorted by key and each sits on its own line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Alphabet, FMatrix, alphabet_make
from .netgraph import SumNetwork, check

TABLE_BUDGET = 2 ** 20
ENUMERATION_BUDGET = 2 ** 24


class CodeError(ValueError):
    """A code does not fit its network or is malformed."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured size limit."""


def rate(k: int, l: int) -> Fraction:
    """The rate k/l of a (k, l) code as an exact reduced fraction."""
    if k < 1 or l < 1:
        raise ValueError(f"block lengths must be positive, got ({k}, {l})")
    return Fraction(k, l)


Rate = Fraction


@dataclass(frozen=True, eq=False)
class LinearCode:
    k: int
    l: int
    field: Alphabet
    injection: dict = field(default_factory=dict)
    transition: dict = field(default_factory=dict)
    decoding: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.field.is_field:
            raise CodeError("linear codes need a field alphabet")
        for name, shape in (("injection", (self.k, self.l)),
                            ("transition", (self.l, self.l)),
                            ("decoding", (self.l, self.k))):
            mats = {}
            for key, mat in getattr(self, name).items():
                if not isinstance(mat, FMatrix):
                    mat = FMatrix(self.field, np.asarray(mat))
                if mat.field != self.field:
                    raise CodeError(f"{name}{key} is over {mat.field.name}")
                if mat.shape != shape:
                    raise CodeError(f"{name}{key} has shape {mat.shape}, expected {shape}")
                mats[tuple(key)] = mat
            object.__setattr__(self, name, mats)

    @property
    def rate(self) -> Fraction:
        return rate(self.k, self.l)

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return code_to_dict(self) == code_to_dict(other)


@dataclass(frozen=True, eq=False)
class TableCode:
    k: int
    l: int
    alphabet: Alphabet
    edges: dict = field(default_factory=dict)
    decoders: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("edges", "decoders"):
            tabs = {}
            for key, tab in getattr(self, name).items():
                tab = np.array(tab, dtype=np.int64)
                if tab.ndim != 1:
                    raise CodeError(f"table {key} must be one-dimensional")
                if tab.size > TABLE_BUDGET:
                    raise BudgetExceeded(f"table {key} has {tab.size} entries")
                tab.setflags(write=False)
                tabs[key] = tab
            object.__setattr__(self, name, tabs)

    @property
    def rate(self) -> Fraction:
        return rate(self.k, self.l)


# --- binding -------------------------------------------------------------

def check_binding(net: SumNetwork, code) -> None:
    """Raise CodeError unless every key of ``code`` names a real adjacency."""
    if isinstance(code, LinearCode):
        for s, e in code.injection:
            if s not in net.sources or e not in net.out_edges(s):
                raise CodeError(f"injection ({s}, {e}) is not a source out-edge")
        for f, e in code.transition:
            if f not in net.edge or e not in net.edge:
                raise CodeError(f"transition ({f}, {e}) names an unknown edge")
            v = net.edge[f].head
            if net.edge[e].tail != v or net.is_source(v):
                raise CodeError(f"transition ({f}, {e}) is not a consecutive pair")
        for t, e in code.decoding:
            if t not in net.terminals or e not in net.in_edges(t):
                raise CodeError(f"decoding ({t}, {e}) is not a terminal in-edge")
        return
    q = code.alphabet.order
    for e, tab in code.edges.items():
        if e not in net.edge:
            raise CodeError(f"table for unknown edge {e}")
        tail = net.edge[e].tail
        size = q ** code.k if net.is_source(tail) else q ** (code.l * len(net.in_edges(tail)))
        if tab.size != size:
            raise CodeError(f"table for {e} has {tab.size} entries, expected {size}")
        if tab.size and (tab.min() < 0 or tab.max() >= q ** code.l):
            raise CodeError(f"table for {e} has values outside G^l")
    for t, tab in code.decoders.items():
        if t not in net.terminals:
            raise CodeError(f"decoder for non-terminal {t}")
        size = q ** (code.l * len(net.in_edges(t)))
        if tab.size != size:
            raise CodeError(f"decoder for {t} has {tab.size} entries, expected {size}")
        if tab.size and (tab.min() < 0 or tab.max() >= q ** code.k):
            raise CodeError(f"decoder for {t} has values outside G^k")


# --- linear codes ----------------------------------------------------------

def transfer_arrays(net: SumNetwork, code: LinearCode, sources=None,
                    edges=None) -> dict:
    """Raw global transfer arrays ``{(source, edge): k x l array}``.

    ``edges`` restricts the computation to the given edges and their
    upstream closure.
    """
    F, k, l = code.field, code.k, code.l
    srcs = net.sources if sources is None else tuple(sources)
    wanted = None if edges is None else net.upstream(edges)
    zero = np.zeros((k, l), dtype=np.int64)
    A = {}
    for e in net.topo:
        if wanted is not None and e not in wanted:
            continue
        tail = net.edge[e].tail
        for s in srcs:
            if tail == s:
                inj = code.injection.get((s, e))
                A[s, e] = zero if inj is None else inj.data
                continue
            acc = zero
            for f in net.in_edges(tail):
                T = code.transition.get((f, e))
                if T is None:
                    continue
                Af = A[s, f]
                if not Af.any():
                    continue
                acc = F.add(acc, F.matmul(Af, T.data))
            A[s, e] = acc
    return A


def global_transfer(net: SumNetwork, code: LinearCode) -> dict:
    """Global transfer matrices ``{(source, edge): FMatrix k x l}``."""
    check(net)
    check_binding(net, code)
    return {key: FMatrix(code.field, a) for key, a in transfer_arrays(net, code).items()}


def terminal_product(net, code, A, s, t) -> np.ndarray:
    F = code.field
    acc = np.zeros((code.k, code.k), dtype=np.int64)
    for e in net.in_edges(t):
        D = code.decoding.get((t, e))
        if D is not None and A[s, e].any():
            acc = F.add(acc, F.matmul(A[s, e], D.data))
    return acc


def verify_linear(net: SumNetwork, code: LinearCode, sources=None, terminals=None) -> bool:
    """True iff every terminal recovers the sum of all source blocks.

    ``sources`` and ``terminals`` narrow the demand: only the listed
    sources are active (the rest are treated as absent) and only the listed
    terminals must decode.
    """
    check(net)
    check_binding(net, code)
    srcs = net.sources if sources is None else tuple(sources)
    tgts = net.terminals if terminals is None else tuple(terminals)
    edges = [e for t in tgts for e in net.in_edges(t)]
    A = transfer_arrays(net, code, srcs, edges)
    eye = np.eye(code.k, dtype=np.int64)
    for t in tgts:
        for s in srcs:
            if not np.array_equal(terminal_product(net, code, A, s, t), eye):
                return False
    return True


# --- table codes -------------------------------------------------------------

def vec_digits(idx, q: int, length: int) -> np.ndarray:
    """Little-endian base-q digits; shape ``(length,) + idx.shape``."""
    idx = np.asarray(idx, dtype=np.int64)
    out = np.empty((length,) + idx.shape, dtype=np.int64)
    for j in range(length):
        out[j] = idx % q
        idx = idx // q
    return out


def vec_index(digits, q: int) -> np.ndarray:
    digits = np.asarray(digits, dtype=np.int64)
    out = np.zeros(digits.shape[1:], dtype=np.int64)
    scale = 1
    for d in digits:
        out = out + scale * d
        scale *= q
    return out


def vec_add(G: Alphabet, a, b, length: int) -> np.ndarray:
    """Componentwise group sum of encoded vectors in G^length."""
    q = G.order
    if length == 1:
        return np.asarray(G.add(a, b))
    return vec_index(G.add(vec_digits(a, q, length), vec_digits(b, q, length)), q)


def source_tuples(G: Alphabet, k: int, m: int, budget: int = ENUMERATION_BUDGET):
    """All m-tuples of source blocks as an ``(m, K**m)`` array, K = |G|^k."""
    K = G.order ** k
    total = K ** m
    if total > budget:
        raise BudgetExceeded(f"{total} source tuples exceed the budget {budget}")
    idx = np.arange(total, dtype=np.int64)
    return vec_digits(idx, K, m) if m else np.zeros((0, 1), dtype=np.int64)


def evaluate_tables(net: SumNetwork, code: TableCode, X: dict) -> dict:
    """Edge values for every tuple; ``X`` maps each source to its message array."""
    Q = code.alphabet.order ** code.l
    ref = next(iter(X.values()))
    vals = {}
    for e in net.topo:
        tab = code.edges.get(e)
        tail = net.edge[e].tail
        if tab is None:
            vals[e] = np.zeros_like(ref)
        elif net.is_source(tail):
            vals[e] = tab[X[tail]]
        else:
            vals[e] = tab[_join(net.in_edges(tail), vals, Q, ref)]
    return vals


def _join(edges, vals, Q, ref):
    idx = np.zeros_like(ref)
    scale = 1
    for f in edges:
        idx = idx + scale * vals[f]
        scale *= Q
    return idx


def terminal_inputs(net: SumNetwork, code: TableCode, vals: dict, t: str, ref) -> np.ndarray:
    return _join(net.in_edges(t), vals, code.alphabet.order ** code.l, ref)


def verify_table(net: SumNetwork, code: TableCode, sources=None, terminals=None,
                 budget: int = ENUMERATION_BUDGET) -> bool:
    """Check a table code by running it on every tuple of source messages."""
    check(net)
    check_binding(net, code)
    G, k = code.alphabet, code.k
    srcs = net.sources if sources is None else tuple(sources)
    tgts = net.terminals if terminals is None else tuple(terminals)
    tuples = source_tuples(G, k, len(srcs), budget)
    ref = np.zeros(tuples.shape[1], dtype=np.int64)
    X = {s: ref for s in net.sources}
    X.update(zip(srcs, tuples))
    target = ref
    for s in srcs:
        target = vec_add(G, target, X[s], k)
    vals = evaluate_tables(net, code, X)
    for t in tgts:
        dec = code.decoders.get(t)
        out = ref if dec is None else dec[terminal_inputs(net, code, vals, t, ref)]
        if not np.array_equal(out, target):
            return False
    return True


def _tabulate(F: Alphabet, mats: list, in_len: int, out_len: int) -> np.ndarray:
    """Table of ``x -> x @ vstack(mats)`` over all encoded inputs."""
    q = F.order
    width = in_len * len(mats)
    size = q ** width
    if size > TABLE_BUDGET:
        raise BudgetExceeded(f"table of {size} entries exceeds {TABLE_BUDGET}")
    digits = vec_digits(np.arange(size), q, width).T
    if mats:
        M = np.concatenate(mats, axis=0)
    else:
        M = np.zeros((0, out_len), dtype=np.int64)
    return vec_index(F.matmul(digits, M).T, q)


def linearize(net: SumNetwork, code: LinearCode) -> TableCode:
    """Tabulate every linear map of ``code`` as an explicit function table."""
    check_binding(net, code)
    F, k, l = code.field, code.k, code.l
    edges, decoders = {}, {}
    for e in net.edges:
        if net.is_source(e.tail):
            mat = code.injection.get((e.tail, e.id))
            mats = [np.zeros((k, l), dtype=np.int64) if mat is None else mat.data]
            edges[e.id] = _tabulate(F, mats, k, l)
        else:
            mats = []
            for f in net.in_edges(e.tail):
                T = code.transition.get((f, e.id))
                mats.append(np.zeros((l, l), dtype=np.int64) if T is None else T.data)
            edges[e.id] = _tabulate(F, mats, l, l)
    for t in net.terminals:
        mats = []
        for f in net.in_edges(t):
            D = code.decoding.get((t, f))
            mats.append(np.zeros((l, k), dtype=np.int64) if D is None else D.data)
        decoders[t] = _tabulate(F, mats, l, k)
    return TableCode(k, l, F, edges, decoders)


# --- interchange format --------------------------------------------------------

def code_to_dict(code) -> dict:
    if isinstance(code, LinearCode):
        return {
            "kind": "linear",
            "k": code.k,
            "l": code.l,
            "alphabet": code.field.name,
            "injection": [
                {"source": s, "edge": e, "matrix": code.injection[s, e].tolist()}
                for s, e in sorted(code.injection)
            ],
            "transition": [
                {"in": f, "out": e, "matrix": code.transition[f, e].tolist()}
                for f, e in sorted(code.transition)
            ],
            "decoding": [
                {"terminal": t, "edge": e, "matrix": code.decoding[t, e].tolist()}
                for t, e in sorted(code.decoding)
            ],
        }
    return {
        "kind": "table",
        "k": code.k,
        "l": code.l,
        "alphabet": code.alphabet.name,
        "edges": {e: code.edges[e].tolist() for e in sorted(code.edges)},
        "decoders": {t: code.decoders[t].tolist() for t in sorted(code.decoders)},
    }


def code_from_dict(doc: dict):
    try:
        kind = doc["kind"]
        k, l = int(doc["k"]), int(doc["l"])
        alphabet = alphabet_make(doc["alphabet"])
        if kind == "linear":
            return LinearCode(
                k, l, alphabet,
                {(d["source"], d["edge"]): d["matrix"] for d in doc["injection"]},
                {(d["in"], d["out"]): d["matrix"] for d in doc["transition"]},
                {(d["terminal"], d["edge"]): d["matrix"] for d in doc["decoding"]},
            )
        if kind == "table":
            return TableCode(k, l, alphabet, dict(doc["edges"]), dict(doc["decoders"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise CodeError(f"malformed code document: {exc}") from exc
    raise CodeError(f"unknown code kind {doc.get('kind')!r}")


def dump_document(doc: dict) -> str:
    """One top-level key per line, one list or mapping entry per line."""
    lines = ["{"]
    items = list(doc.items())
    for i, (key, value) in enumerate(items):
        tail = "," if i < len(items) - 1 else ""
        if isinstance(value, list) and value:
            lines.append(f"  {json.dumps(key)}: [")
            for j, entry in enumerate(value):
                sep = "," if j < len(value) - 1 else ""
                lines.append(f"    {json.dumps(entry)}{sep}")
            lines.append(f"  ]{tail}")
        elif isinstance(value, dict) and value:
            lines.append(f"  {json.dumps(key)}: {{")
            sub = list(value.items())
            for j, (k2, v2) in enumerate(sub):
                sep = "," if j < len(sub) - 1 else ""
                lines.append(f"    {json.dumps(k2)}: {json.dumps(v2)}{sep}")
            lines.append(f"  }}{tail}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{tail}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps_code(code) -> str:
    return dump_document(code_to_dict(code))


def loads_code(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeError(f"not a JSON document: {exc}") from exc
    return code_from_dict(doc)
