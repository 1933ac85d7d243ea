"""Command-line interface.

Each subcommand writes one document to stdout and a short human summary to
stderr.  Exit codes: 0 success or found, 1 verified negative, 2 usage or
format error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import capacity, catalog
from .algebra import alphabet_make
from .codec import (
    BudgetExceeded,
    CodeError,
    LinearCode,
    dumps_code,
    loads_code,
    verify_linear,
    verify_table,
)
from .duality import DualityError, dual_code
from .netgraph import (
    NetworkError,
    dumps_network,
    loads_network,
    min_cut,
    min_cut_bound,
    min_cut_table,
    reverse_network,
)
from .schemes import SCHEMES, SchemeError, SlotSearchFailed
from .search import EXCEEDED, EXHAUSTED, search_linear, search_random_linear, search_table

OK, NEGATIVE, USAGE, EXCEEDED_EXIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def load_net(ref: str):
    """A catalog name, or a path to a network document."""
    if ref in catalog.names():
        return catalog.get(ref)
    if not os.path.exists(ref):
        raise UsageError(f"{ref!r} is neither a catalog name nor a file")
    return loads_network(_read(ref))


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _emit(out: str, note: str):
    sys.stdout.write(out)
    if note:
        print(note, file=sys.stderr)


def cmd_bound(args):
    rep = capacity.report(load_net(args.net))
    _emit(_json(rep.to_dict()), capacity.format_table([rep]).rstrip())
    return OK


def cmd_mincut(args):
    net = load_net(args.net)
    if args.pair:
        s, t = args.pair
        if s not in net.sources or t not in net.terminals:
            raise UsageError(f"{s} must be a source and {t} a terminal")
        value = min_cut(net, s, t)
        _emit(_json({"network": net.name, "source": s, "terminal": t, "min_cut": value}),
              f"min-cut {s} -> {t}: {value}")
        return OK
    table = min_cut_table(net)
    doc = {
        "network": net.name,
        "min_cut_bound": min_cut_bound(net),
        "pairs": [{"source": s, "terminal": t, "min_cut": c} for (s, t), c in table.items()],
    }
    _emit(_json(doc), f"min-cut bound of {net.name}: {doc['min_cut_bound']}")
    return OK


def cmd_verify(args):
    net = load_net(args.net)
    code = loads_code(_read(args.code))
    if isinstance(code, LinearCode):
        ok, kind = verify_linear(net, code), "linear"
    else:
        ok, kind = verify_table(net, code), "table"
    doc = {"network": net.name, "kind": kind, "k": code.k, "l": code.l,
           "rate": str(code.rate), "verified": ok}
    _emit(_json(doc), f"{kind} ({code.k},{code.l}) code on {net.name}: "
                      f"{'verified' if ok else 'does NOT verify'}")
    return OK if ok else NEGATIVE


def cmd_search(args):
    net = load_net(args.net)
    if args.seed is not None:
        if not args.linear:
            raise UsageError("--seed selects random linear sampling and needs --linear")
        trials = args.budget if args.budget is not None else 1000
        out = search_random_linear(net, args.alphabet, args.k, args.l, trials, args.seed)
    elif args.linear:
        budget = args.budget if args.budget is not None else 10 ** 9
        out = search_linear(net, args.alphabet, args.k, args.l, budget, jobs=args.jobs)
    else:
        budget = args.budget if args.budget is not None else 10 ** 7
        out = search_table(net, args.alphabet, args.k, args.l, budget, jobs=args.jobs)
    _emit(_json(out.to_dict()),
          f"{out.method} search on {net.name} over {out.alphabet}, ({args.k},{args.l}): "
          f"{out.status} after {out.candidates_examined} nodes")
    if out.status == EXHAUSTED:
        return NEGATIVE
    if out.status == EXCEEDED:
        return EXCEEDED_EXIT
    return OK


def cmd_scheme(args):
    net = load_net(args.net)
    code = SCHEMES[args.name](net, args.field, seed=args.seed, escalate=args.escalate)
    _emit(dumps_code(code), f"{args.name} scheme on {net.name}: verified ({code.k},{code.l}) "
                            f"code over {code.field.name}, rate {code.rate}")
    return OK


def cmd_reverse(args):
    rev = reverse_network(load_net(args.net))
    _emit(dumps_network(rev), f"reversed: {rev.name}")
    return OK


def cmd_dual(args):
    net = load_net(args.net)
    code = loads_code(_read(args.code))
    if not isinstance(code, LinearCode):
        raise UsageError("dual codes are defined for linear codes only")
    dual = dual_code(net, code)
    rev = reverse_network(net)
    _emit(dumps_code(dual), f"dual ({dual.k},{dual.l}) code verified on {rev.name}")
    return OK


def cmd_catalog(args):
    if args.action == "list":
        rows = [{"name": e.name, "m": e.network.m, "n": e.network.n,
                 "edges": len(e.network.edges), "confidence": e.confidence}
                for e in catalog.entries().values()]
        _emit(_json(rows), f"{len(rows)} catalog networks")
        return OK
    if not args.name:
        raise UsageError("catalog show needs a network name")
    try:
        net = catalog.get(args.name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    _emit(dumps_network(net), "")
    return OK


def _alphabet(text):
    try:
        alphabet_make(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    return text


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sumnet", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("bound", help="capacity bounds report")
    q.add_argument("net")
    q.set_defaults(func=cmd_bound)

    q = sub.add_parser("mincut", help="source-terminal min-cuts")
    q.add_argument("net")
    q.add_argument("--pair", nargs=2, metavar=("SOURCE", "TERMINAL"))
    q.set_defaults(func=cmd_mincut)

    q = sub.add_parser("verify", help="check a code file against a network")
    q.add_argument("net")
    q.add_argument("code")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("search", help="exhaustive or sampled code search")
    q.add_argument("net")
    q.add_argument("--alphabet", required=True, type=_alphabet)
    q.add_argument("--k", type=_positive, default=1)
    q.add_argument("--l", type=_positive, default=1)
    q.add_argument("--linear", action="store_true", help="search linear codes over a field")
    q.add_argument("--budget", type=_positive, help="node budget (trials when --seed is set)")
    q.add_argument("--seed", type=int, help="sample random linear codes with this seed")
    q.add_argument("--jobs", type=_positive, default=1)
    q.set_defaults(func=cmd_search)

    q = sub.add_parser("scheme", help="build a time-sharing code")
    q.add_argument("net")
    q.add_argument("--name", required=True, choices=sorted(SCHEMES))
    q.add_argument("--field", default="gf2", type=_alphabet)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--escalate", action="store_true",
                   help="allow larger fields of the same characteristic")
    q.set_defaults(func=cmd_scheme)

    q = sub.add_parser("reverse", help="reverse a network")
    q.add_argument("net")
    q.set_defaults(func=cmd_reverse)

    q = sub.add_parser("dual", help="dual of a linear code on the reverse network")
    q.add_argument("net")
    q.add_argument("code")
    q.set_defaults(func=cmd_dual)

    q = sub.add_parser("catalog", help="built-in networks")
    q.add_argument("action", choices=["list", "show"])
    q.add_argument("name", nargs="?")
    q.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (BudgetExceeded, SlotSearchFailed) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXCEEDED_EXIT
    except (UsageError, NetworkError, CodeError, DualityError, SchemeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
