"""Command line front end; every subcommand prints one JSON document."""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import suite
from .invariants import noether_k, top_degree_coinvariants
from .monomial import all_characters_module, build_heisenberg_module
from .parsing import ParseError, parse_group, parse_module_spec, parse_sequence
from .zerosum import (
    InfeasibleError,
    PreconditionError,
    cd_check,
    classify_maximal_zsf,
    davenport_search,
    factor_k,
    find_short_zero_sum,
    max_factorization,
    nullak_factor,
    separ_factor,
)
from ._search import BudgetExceeded


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _factorization_doc(f) -> dict:
    return {
        "blocks": [str(b) for b in f.factors],
        "remainder": str(f.remainder),
        "length": f.length,
    }


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, round((time.perf_counter() - t0) * 1000, 1)


def cmd_davenport(args) -> int:
    A = parse_group(args.group)
    r, ms = _timed(lambda: davenport_search(A, 1, budget=args.budget))
    _emit({"input": {"group": A.format()}, "result": r.value, "witness": str(r.witness), "elapsed_ms": ms})
    return 0


def cmd_davenport_k(args) -> int:
    A = parse_group(args.group)
    r, ms = _timed(lambda: davenport_search(A, args.k, budget=args.budget))
    _emit({"input": {"group": A.format(), "k": args.k}, "result": r.value, "witness": str(r.witness), "elapsed_ms": ms})
    return 0


def cmd_factor(args) -> int:
    A = parse_group(args.group)
    S = parse_sequence(args.seq, A)
    if args.k is None:
        f, ms = _timed(lambda: max_factorization(S))
    else:
        f, ms = _timed(lambda: factor_k(S, args.k))
    _emit({"input": {"group": A.format(), "seq": str(S), "k": args.k}, "result": _factorization_doc(f), "elapsed_ms": ms})
    return 0


def cmd_lemma(args) -> int:
    name = args.lemma
    doc: dict = {"lemma": name}
    t0 = time.perf_counter()
    if name == "zsf":
        found = classify_maximal_zsf(args.p)
        doc["input"] = {"p": args.p}
        doc["result"] = [str(s) for s in found]
        doc["pass"] = len(found) == args.p - 1 and all(len(s.support()) == 1 for s in found)
    else:
        A = parse_group(args.group)
        S = parse_sequence(args.seq, A)
        doc["input"] = {"group": A.format(), "seq": str(S)}
        if name == "cd":
            size, bound, ok = cd_check(S)
            doc["result"] = {"sigma_size": size, "bound": bound}
            doc["pass"] = ok
        elif name == "eta":
            X = find_short_zero_sum(S)
            doc["result"] = str(X)
            doc["witness"] = str(X)
            doc["pass"] = True
        elif name == "nullak":
            f = nullak_factor(S)
            doc["result"] = _factorization_doc(f)
            doc["pass"] = True
        elif name == "separ":
            T = parse_sequence(args.T, A) if args.T else None
            f = separ_factor(S, T)
            doc["input"]["T"] = str(T) if T is not None else "[]"
            doc["result"] = _factorization_doc(f) | {"case": f.case}
            doc["pass"] = True
        elif name == "hk":
            f = factor_k(S, args.k)
            doc["input"]["k"] = args.k
            doc["result"] = _factorization_doc(f)
            doc["pass"] = True
    doc["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 1)
    _emit(doc)
    return 0 if doc["pass"] else 1


def _module(args):
    if args.abelian:
        A = parse_group(args.abelian)
        return f"abelian {A.format()}", all_characters_module(A), None
    spec = parse_module_spec(args.module)
    return spec.format(), build_heisenberg_module(spec), None


def cmd_noether(args, k: int = 1) -> int:
    label, G, bound = _module(args)
    if args.bound is not None:
        bound = args.bound
    r = noether_k(G, k, args.dmax, bound=bound)
    doc = {"module": label} | r.as_dict()
    _emit(doc)
    return 0


def cmd_noether_k(args) -> int:
    return cmd_noether(args, args.k)


def cmd_hilbert_top(args) -> int:
    label, G, _ = _module(args)
    r = top_degree_coinvariants(G, args.dmax)
    _emit({"module": label} | r.as_dict())
    return 0


_CHECK_GROUPS = {
    "polar": "*polar*",
    "trukk": "property.trukk",
    "b1": "property.b1",
    "reduction": "reduction.*",
    "h3": "noether.h3*",
}


def _report(rep, args) -> int:
    _emit(rep.as_dict(timings=not getattr(args, "no_timings", False)))
    if sys.stderr.isatty():
        for r in rep.records:
            sys.stderr.write(f"{'PASS' if r.passed else 'FAIL'}  {r.id:32} {r.elapsed_ms:>10.1f} ms\n")
    return 0 if rep.passed else 1


def cmd_check(args) -> int:
    rep = suite.run_suite(_CHECK_GROUPS[args.which], jobs=1, seed=args.seed)
    return _report(rep, args)


def cmd_verify(args) -> int:
    rep = suite.run_suite(args.filter, jobs=args.jobs, seed=args.seed)
    return _report(rep, args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zsinv", description="Zero-sum constants and Noether numbers")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("davenport", help="Davenport constant by exhaustive search")
    p.add_argument("--group", required=True, help='cyclic factor orders, e.g. "3,3"')
    p.add_argument("--budget", type=int, default=64, help="largest group order searched")
    p.set_defaults(func=cmd_davenport)

    p = sub.add_parser("davenport-k", help="k-th Davenport constant")
    p.add_argument("--group", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--budget", type=int, default=64)
    p.set_defaults(func=cmd_davenport_k)

    p = sub.add_parser("factor", help="maximal factorization, or k blocks with -k")
    p.add_argument("--group", required=True)
    p.add_argument("--seq", required=True, help='e.g. "(1,0)^2 (0,1)"')
    p.add_argument("-k", type=int)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("lemma", help="constructive zero-sum lemmas")
    p.add_argument("lemma", choices=["cd", "eta", "zsf", "nullak", "separ", "hk"])
    p.add_argument("--group")
    p.add_argument("--seq")
    p.add_argument("--T", help="sequence to keep out of the first two blocks (separ)")
    p.add_argument("-p", type=int, help="prime for zsf")
    p.add_argument("-k", type=int, default=1, help="block count for hk")
    p.set_defaults(func=cmd_lemma)

    for name, func, help_ in (
        ("noether", cmd_noether, "Noether number with generator-degree table"),
        ("noether-k", cmd_noether_k, "k-th Noether number"),
        ("hilbert-top", cmd_hilbert_top, "top degree of the coinvariant algebra"),
    ):
        p = sub.add_parser(name, help=help_)
        m = p.add_mutually_exclusive_group(required=True)
        m.add_argument("--module", help='Heisenberg module, e.g. "p=3;V=[1:1]"')
        m.add_argument("--abelian", help="abelian group acting on all its nontrivial characters")
        p.add_argument("--dmax", type=int, required=True)
        if name != "hilbert-top":
            p.add_argument("--bound", type=int, help="known upper bound on the Noether number")
        if name == "noether-k":
            p.add_argument("-k", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("check", help="one family of invariant-theory checks")
    p.add_argument("which", choices=sorted(_CHECK_GROUPS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timings", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--filter", help="check id or glob pattern")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timings", action="store_true", help="omit elapsed times (for golden files)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except suite.UnknownCheck as exc:
        _emit({"error": str(exc.args[0])})
        return 2
    except (ParseError, PreconditionError, InfeasibleError, BudgetExceeded, ValueError) as exc:
        _emit({"error": f"{type(exc).__name__}: {exc}"})
        return 2


if __name__ == "__main__":
    sys.exit(main())
