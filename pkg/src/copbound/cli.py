"""Command line entry point.

Exit codes: 0 ok, 1 a violation or failed check, 2 a resource refusal.
Graph arguments accept a graph6 file, a family spec (``K5``, ``W6``,
``P_fam:3``, ``U(Ht:2)``, ...) or a literal graph6 string.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import decomp, gamesolver, guard, harness, minor, modelstate
from .graphcore import Graph, Graph6Error, generate, parse_graph6, read_graph6_file, write_graph6, write_graph6_file

OK, VIOLATION, REFUSAL = 0, 1, 2


def load_graph(arg: str) -> Graph:
    if os.path.isfile(arg):
        gs = read_graph6_file(arg)
        if not gs:
            raise SystemExit(f"{arg}: no graphs in file")
        return gs[0]
    try:
        return generate(arg)
    except ValueError:
        pass
    try:
        return parse_graph6(arg)
    except Graph6Error as e:
        raise SystemExit(f"cannot read graph {arg!r}: not a file, family spec or graph6 ({e})")


def _int_set(text: str) -> set[int]:
    return {int(x) for x in text.replace(" ", "").split(",") if x}


def _emit(args, payload: dict, table: list[str]):
    dest = getattr(args, "json", None)
    if dest == "-":
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    for line in table:
        print(line)
    if dest:
        with open(dest, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


def cmd_bound(args) -> int:
    H = load_graph(args.graph)
    limits = decomp.SearchLimits(free_bits=args.free_bits, extra_w=args.extra_w)
    try:
        if args.via:
            rep = decomp.bound_via_supergraph(H, load_graph(args.via), mode=args.mode, limits=limits)
        else:
            rep = decomp.optimize(H, mode=args.mode, limits=limits)
    except decomp.InfeasibleError as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return VIOLATION
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return VIOLATION
    payload = rep.to_json()
    payload["corollaries"] = decomp.corollary_bounds(H, limits) if not args.via else {}
    d = rep.decomposition
    table = [f"bound {rep.bound}  (indicator {rep.indicator}{', partial search' if rep.partial else ''})",
             f"h = {d.h}   W = {sorted(d.W)}"]
    for i, p in enumerate(d.paths):
        tag = " M" if i in d.M else ""
        pre = sorted(w for w, j in d.f.items() if j == i)
        table.append(f"  {i:3d} {p.kind:5s} {'-'.join(map(str, p.vertices)):30s} ell={rep.ell[i]}{tag}"
                     + (f"  f^-1={pre}" if pre else ""))
    for k, v in payload["corollaries"].items():
        table.append(f"  {k}: {v if v is not None else 'infeasible'}")
    _emit(args, payload, table)
    return OK


def cmd_copnumber(args) -> int:
    g = load_graph(args.graph)
    max_k = args.max_k or g.n
    try:
        found = None
        last = None
        for k in range(1, max_k + 1):
            last = gamesolver.solve(g, k, args.mem_cap)
            if last.win:
                found = k
                break
    except gamesolver.ResourceRefusal as e:
        print(f"refused: {e}", file=sys.stderr)
        return REFUSAL
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return VIOLATION
    payload = {"states": last.states, "rounds": last.rounds}
    if found is None:
        payload["exceeds_max"] = max_k
        table = [f"cop number > {max_k}"]
    else:
        payload["cop_number"] = found
        table = [f"cop number {found}  (states {last.states}, rounds {last.rounds})"]
    _emit(args, payload, table)
    return OK


def cmd_minor(args) -> int:
    H, G = load_graph(args.pattern), load_graph(args.host)
    res = minor.find_minor_model(H, G, budget=args.budget)
    _emit(args, res.to_json(), [f"{res.status} ({res.certificate or 'no certificate'}, "
                                f"{res.nodes_expanded} nodes)"]
          + ([f"  {v}: {sorted(b)}" for v, b in sorted(res.model.branch_sets.items())] if res.model else []))
    return REFUSAL if res.status == "budget-exhausted" else OK


def cmd_guard(args) -> int:
    g = load_graph(args.graph)
    R = _int_set(args.R)
    try:
        rep = guard.simulate_guard(g, R, args.u, args.v, robber=args.adversary, max_turns=args.max_turns,
                                   trials=args.trials, seed=args.seed,
                                   script=[int(x) for x in args.script.split(",")] if args.script else None)
    except guard.GuardPreconditionError as e:
        print(f"precondition: {e}", file=sys.stderr)
        return VIOLATION
    table = [f"path {'-'.join(map(str, rep.path.vertices))}",
             f"runs {rep.runs}  captures {rep.captures}  max stabilization turn {rep.max_stabilization_turn}",
             f"violations {len(rep.violations)}" + (f"  INVALID: {rep.invalid_reason}" if rep.invalid else "")]
    _emit(args, rep.to_json(), table)
    return VIOLATION if rep.violations else OK


def _load_state(path) -> modelstate.GameState:
    with open(path) as fh:
        return modelstate.GameState.from_json(json.load(fh))


def cmd_state_check(args) -> int:
    st = _load_state(args.state)
    viol = modelstate.validate_state(st)
    _emit(args, {"valid": not viol, "violations": [v.to_json() for v in viol]},
          ["valid state"] if not viol else [str(v) for v in viol])
    return VIOLATION if viol else OK


def cmd_state_extract(args) -> int:
    st = _load_state(args.state)
    try:
        model = modelstate.extract_minor(st)
    except modelstate.ExtractionError as e:
        print(f"cannot extract: {e}", file=sys.stderr)
        return VIOLATION
    _emit(args, {"model": model.to_json()},
          [f"{v}: {sorted(b)}" for v, b in sorted(model.branch_sets.items())])
    return OK


def _forbidden(args) -> list[Graph]:
    return [load_graph(args.graph)] + [load_graph(x) for x in (args.also or [])]


def cmd_corpus(args) -> int:
    try:
        corpus = harness.build_corpus(_forbidden(args), (args.n_min, args.n_max), args.count, args.seed)
    except minor.MinorSearchRefused as e:
        print(f"refused: {e}", file=sys.stderr)
        return REFUSAL
    if args.out:
        write_graph6_file(args.out, corpus.graphs)
    table = [write_graph6(g) for g in corpus.graphs]
    if corpus.warning:
        table.append(f"warning: {corpus.warning}")
    _emit(args, corpus.to_json(), table)
    return OK


def cmd_verify(args) -> int:
    forb = _forbidden(args)
    if args.corpus:
        graphs = read_graph6_file(args.corpus)
    else:
        graphs = harness.build_corpus(forb, (args.n_min, args.n_max), args.count, args.seed).graphs
    bound = None
    if args.via:
        bound = decomp.bound_via_supergraph(forb[0], load_graph(args.via))
    rep = harness.verify_bound(forb, graphs, bound=bound, workers=args.workers)
    table = [f"bound {rep.bound}  max cop number {rep.max_cop_number}  graphs {len(rep.corpus)}  "
             f"skipped {len(rep.skipped)}  {'OK' if rep.all_within_bound else 'EXCEEDED'}"
             + ("  (empty corpus)" if rep.empty else "")]
    _emit(args, rep.to_json(), table)
    return OK if rep.all_within_bound else VIOLATION


def cmd_regression(args) -> int:
    rows = harness.regression_suite()
    table = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:22s} {r.method:10s} {r.got} {r.relation} {r.expected}"
             for r in rows]
    _emit(args, {"rows": [r.to_json() for r in rows], "passed": all(r.passed for r in rows)}, table)
    return OK if all(r.passed for r in rows) else VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="copbound", description="Cop-number bounds for H-minor-free graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_json(sp):
        sp.add_argument("--json", nargs="?", const="-", metavar="PATH",
                        help="write JSON to PATH, or to stdout instead of the table when no PATH is given")
        return sp

    sp = with_json(sub.add_parser("bound", help="best decomposition bound for a forbidden graph"))
    sp.add_argument("graph")
    sp.add_argument("--mode", choices=("exhaustive", "greedy"), default="exhaustive")
    sp.add_argument("--via", metavar="HPRIME", help="bound through a supergraph containing H as a minor")
    sp.add_argument("--free-bits", type=int, default=12)
    sp.add_argument("--extra-w", type=int, default=2)
    sp.set_defaults(func=cmd_bound)

    sp = with_json(sub.add_parser("copnumber", help="exact cop number"))
    sp.add_argument("graph")
    sp.add_argument("--max-k", type=int)
    sp.add_argument("--mem-cap", type=int, metavar="BYTES",
                    help=f"label storage cap, one byte per state (env {gamesolver.MEM_CAP_ENV})")
    sp.set_defaults(func=cmd_copnumber)

    sp = with_json(sub.add_parser("minor", help="search for a minor model"))
    sp.add_argument("pattern")
    sp.add_argument("host")
    sp.add_argument("--budget", type=int, default=minor.DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_minor)

    sp = with_json(sub.add_parser("guard-sim", help="simulate single-cop path guarding"))
    sp.add_argument("graph")
    sp.add_argument("--R", required=True)
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--adversary", choices=guard.ADVERSARIES, default="exhaustive")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-turns", type=int)
    sp.add_argument("--script", help="robber start then moves, comma separated")
    sp.set_defaults(func=cmd_guard)

    sp = with_json(sub.add_parser("state-check", help="validate a game state snapshot"))
    sp.add_argument("state")
    sp.set_defaults(func=cmd_state_check)

    sp = with_json(sub.add_parser("state-extract", help="minor model from a complete state"))
    sp.add_argument("state")
    sp.set_defaults(func=cmd_state_extract)

    for name, fn, helptext in (("corpus", cmd_corpus, "seeded minor-free corpus"),
                               ("verify", cmd_verify, "exact cop numbers against the bound")):
        sp = with_json(sub.add_parser(name, help=helptext))
        sp.add_argument("graph")
        sp.add_argument("--also", action="append", help="further forbidden minors")
        sp.add_argument("--n-min", type=int, default=4)
        sp.add_argument("--n-max", type=int, default=10)
        sp.add_argument("--count", type=int, default=100)
        sp.add_argument("--seed", type=int, default=0)
        if name == "corpus":
            sp.add_argument("--out", help="graph6 file for the corpus")
        else:
            sp.add_argument("--corpus", help="graph6 file instead of generating")
            sp.add_argument("--via", metavar="HPRIME")
            sp.add_argument("--workers", type=int, default=1)
        sp.set_defaults(func=fn)

    sp = with_json(sub.add_parser("regression", help="reference bound table"))
    sp.set_defaults(func=cmd_regression)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
