"""Command-line entry point: ``lkncg <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import contextmanager
from dataclasses import asdict

from .bestresponse import ViewTooLarge, best_response, verify_lke
from .constructions import ParamError, TorusParams, build_cycle, build_open_torus, build_torus, heawood
from .dynamics import DEFAULT_ROUND_CAP, run, sweep, write_csv
from .game import GameConfig
from .generators import MaxAttemptsExceeded, gnp_connected, random_tree
from .graph import GraphFormatError, read_edgelist, view, write_edgelist

DOMAIN_ERRORS = (ParamError, GraphFormatError, ViewTooLarge, MaxAttemptsExceeded, ValueError,
                 IndexError, KeyError, OSError)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--variant", choices=["max", "sum"], default="max")
    p.add_argument("--output", "--out", "-o", dest="output", default="-")
    p.add_argument("--round-cap", type=int, default=DEFAULT_ROUND_CAP)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="lkncg", description="Local-knowledge network creation games")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="random starting network")
    gen.add_argument("kind", choices=["tree", "gnp"])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, default=0.1)
    gen.add_argument("--max-attempts", type=int, default=1000)

    con = sub.add_parser("construct", parents=[common], help="deterministic construction")
    con.add_argument("kind", choices=["cycle", "torus", "open-torus", "heawood"])
    con.add_argument("--n", type=int, default=10)
    con.add_argument("--d", type=int, default=2)
    con.add_argument("--ell", type=int, default=2)
    con.add_argument("--delta", type=_int_list, default=[3, 4])

    br = sub.add_parser("best-response", parents=[common], help="best response of one player")
    br.add_argument("graph")
    br.add_argument("--player", type=int, required=True)
    br.add_argument("--sum-cap", type=int, default=16)

    ver = sub.add_parser("verify", parents=[common], help="check the equilibrium condition")
    ver.add_argument("graph")
    ver.add_argument("--sum-cap", type=int, default=16)

    sim = sub.add_parser("simulate", parents=[common], help="one best-response dynamics run")
    sim.add_argument("graph")
    sim.add_argument("--rounds-out", help="write per-round statistics as JSON lines")
    sim.add_argument("--final-out", help="write the final network as an edge list")

    sw = sub.add_parser("sweep", parents=[common], help="grid of dynamics runs to CSV")
    sw.add_argument("--config", required=True)
    sw.add_argument("--repetitions", type=int)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--rounds-out", help="write per-round statistics as JSON lines")
    return parser


@contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _load_graph(path: str):
    if path == "-":
        return read_edgelist(sys.stdin)
    with open(path) as fh:
        return read_edgelist(fh)


def _config(args) -> GameConfig:
    return GameConfig(args.variant, args.alpha, args.k)


def _generate(args) -> int:
    if args.kind == "tree":
        g = random_tree(args.n, args.seed)
    else:
        g = gnp_connected(args.n, args.p, args.seed, args.max_attempts)
    with _open_out(args.output) as fh:
        write_edgelist(g, fh)
    return 0


def _construct(args) -> int:
    if args.kind == "cycle":
        g = build_cycle(args.n)
    elif args.kind == "heawood":
        g = heawood()
    else:
        params = TorusParams(d=args.d, ell=args.ell, delta=tuple(args.delta))
        g = build_torus(params) if args.kind == "torus" else build_open_torus(params)
    with _open_out(args.output) as fh:
        write_edgelist(g, fh)
    return 0


def _best_response(args) -> int:
    g = _load_graph(args.graph)
    cfg = _config(args)
    br = best_response(view(g, args.player, cfg.k), cfg, sum_cap=args.sum_cap)
    record = {
        "player": args.player,
        "endpoints": sorted(br.strategy),
        "cost": float(br.cost),
        "delta": float(br.delta_vs_current),
        "mode": "exact" if br.exact else "heuristic",
    }
    with _open_out(args.output) as fh:
        fh.write(json.dumps(record) + "\n")
    return 0


def _verify(args) -> int:
    g = _load_graph(args.graph)
    verdict = verify_lke(g, _config(args), sum_cap=args.sum_cap)
    with _open_out(args.output) as fh:
        if verdict.equilibrium:
            fh.write("EQUILIBRIUM\n")
        else:
            w = verdict.witness.as_record()
            w["delta"] = float(w["delta"])
            fh.write("NOT EQUILIBRIUM\n" + json.dumps(w) + "\n")
    return 0


def _simulate(args) -> int:
    g = _load_graph(args.graph)
    cfg = _config(args)
    trace = run(g, cfg, seed=args.seed, round_cap=args.round_cap)
    summary = {
        "variant": cfg.variant.value, "alpha": cfg.alpha, "k": cfg.k, "seed": args.seed,
        "status": trace.status.value, "rounds": trace.num_rounds, "changes": trace.total_changes,
        "cycle_start": trace.cycle_start, "final": asdict(trace.rounds[-1]),
    }
    with _open_out(args.output) as fh:
        fh.write(json.dumps(summary) + "\n")
    if args.rounds_out:
        with open(args.rounds_out, "w") as fh:
            for stats in trace.rounds:
                fh.write(json.dumps(asdict(stats)) + "\n")
    if args.final_out:
        with open(args.final_out, "w") as fh:
            write_edgelist(trace.final, fh)
    return 0


def _sweep(args) -> int:
    with open(args.config) as fh:
        grid = json.load(fh)
    result = sweep(grid, repetitions=args.repetitions, seed=args.seed, jobs=args.jobs,
                   with_rounds=bool(args.rounds_out))
    rows, records = result if args.rounds_out else (result, [])
    with _open_out(args.output) as fh:
        write_csv(rows, fh)
    if args.rounds_out:
        with open(args.rounds_out, "w") as fh:
            for rec in records:
                fh.write(json.dumps(rec) + "\n")
    return 0


COMMANDS = {
    "generate": _generate,
    "construct": _construct,
    "best-response": _best_response,
    "verify": _verify,
    "simulate": _simulate,
    "sweep": _sweep,
}


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the synopsis to stderr
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except DOMAIN_ERRORS as exc:
        print(f"lkncg {args.command}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
