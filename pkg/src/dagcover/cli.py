"""Command-line front end.

Subcommands mirror the library: params, skewness, tau, gh, consistent,
pipeline, sweep, census, catalog.  Graph arguments are file paths or
``-`` for stdin, in edge-list or JSON format.  Every randomized
subcommand requires an explicit --seed.  Exit codes: 0 success, 2
invalid input, 3 size/feasibility limit, 4 censored or bounds-only
result.  Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import graphio
from .covering import (
    consistent_sets,
    skew_witness_pipeline,
    tau_exact,
    tau_greedy,
    tau_lower_clique,
    union_copy_graph,
)
from .density import fractional_arboricity, maximal_density
from .digraph import (
    Digraph,
    make_directed_path,
    make_rooted_star,
    make_transitive_tournament,
    shortest_directed_cycle,
    topological_order,
)
from .errors import (
    DagCoverError,
    InfeasibleSizeError,
    InvalidInputError,
    SizeLimitError,
    UndefinedParameterError,
)
from .experiments import (
    SweepConfig,
    balanced_census,
    figure1_graph,
    rows_to_csv,
    rows_to_json,
    threshold_sweep,
)
from .skewness import skewness_exact, skewness_upper_random

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_LIMIT = 3
EXIT_PARTIAL = 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str) -> Digraph:
    return graphio.parse_graph(_read(path))


def _emit(obj: dict, fmt: str, text_lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(obj))
    else:
        for line in text_lines:
            print(line)


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def catalog_graph(name: str, args: Sequence[str]) -> Digraph:
    if name == "figure1":
        if args:
            raise InvalidInputError("catalog figure1 takes no arguments")
        return figure1_graph()
    if name == "Th":
        if len(args) != 1:
            raise InvalidInputError("catalog Th takes one argument: h")
        return make_transitive_tournament(int(args[0]))
    if name == "star":
        if len(args) not in (1, 2):
            raise InvalidInputError("catalog star takes h and optionally source|sink")
        source = True
        if len(args) == 2:
            if args[1] not in ("source", "sink"):
                raise InvalidInputError("star direction must be 'source' or 'sink'")
            source = args[1] == "source"
        return make_rooted_star(int(args[0]), source=source)
    if name == "path":
        if len(args) != 1:
            raise InvalidInputError("catalog path takes one argument: length")
        return make_directed_path(int(args[0]))
    raise InvalidInputError(f"unknown catalog entry {name!r}")


def _cmd_params(ns: argparse.Namespace) -> int:
    g = _load_graph(ns.graph)
    arb = fractional_arboricity(g)
    dens = maximal_density(g)
    obj = {"arboricity": arb.to_json_dict(), "density": dens.to_json_dict()}
    balance = "yes" if arb.totally_balanced else "no"
    _emit(
        obj,
        ns.format,
        [
            f"a = {_frac(arb.value)} (witness: {' '.join(map(str, arb.witness))})",
            f"rho = {_frac(dens.value)} (witness: {' '.join(map(str, dens.witness))})",
            f"totally balanced: {balance}",
        ],
    )
    return EXIT_OK


def _cmd_skewness(ns: argparse.Namespace) -> int:
    g = _load_graph(ns.graph)
    if ns.random:
        if ns.seed is None or ns.trials is None:
            raise InvalidInputError("--random requires --trials and --seed")
        value, coloring = skewness_upper_random(g, ns.trials, ns.seed)
        obj = {"skewness_upper": value, "coloring": coloring.to_lists()}
        _emit(obj, ns.format, [f"s <= {value}", f"coloring: {coloring.to_lists()}"])
        return EXIT_OK
    report = skewness_exact(g)
    _emit(
        report.to_json_dict(),
        ns.format,
        [
            f"s = {report.value}",
            f"coloring: {report.witness_coloring.to_lists()}",
            f"witness order: {' '.join(map(str, report.witness_order.order))}",
        ],
    )
    return EXIT_OK


def _cmd_tau(ns: argparse.Namespace) -> int:
    host = _load_graph(ns.host)
    pattern = _load_graph(ns.pattern)
    if ns.mode in ("greedy", "bounds") and ns.seed is None:
        raise InvalidInputError(f"--{ns.mode} requires --seed")
    if ns.mode == "greedy":
        sol = tau_greedy(host, pattern, ns.seed, cap=ns.cap)
        _emit(sol.to_json_dict(), ns.format, [f"tau <= {sol.size}"])
        return EXIT_OK
    if ns.mode == "bounds":
        lower = tau_lower_clique(host, pattern, ns.seed, cap=ns.cap)
        upper = tau_greedy(host, pattern, ns.seed, cap=ns.cap).size
        _emit(
            {"lower": lower, "upper": upper},
            ns.format,
            [f"{lower} <= tau <= {upper}"],
        )
        return EXIT_OK
    res = tau_exact(host, pattern, budget=ns.budget, cap=ns.cap)
    if not res.exact:
        _emit(
            {"lower": res.lower, "upper": res.upper, "exact": False},
            ns.format,
            [f"budget exceeded: {res.lower} <= tau <= {res.upper}"],
        )
        return EXIT_PARTIAL
    obj = res.solution.to_json_dict()
    obj["exact"] = True
    _emit(obj, ns.format, [f"tau = {res.value}"])
    return EXIT_OK


def _cmd_gh(ns: argparse.Namespace) -> int:
    host = _load_graph(ns.host)
    pattern = _load_graph(ns.pattern)
    gh, truncated = union_copy_graph(host, pattern, cap=ns.cap)
    order = topological_order(gh)
    cycle = None if order is not None else shortest_directed_cycle(gh)
    obj = {
        "gh": {"n": gh.n, "edges": [list(e) for e in gh.sorted_edges]},
        "dag": order is not None,
        "certificate": list(order.order) if order is not None else list(cycle),
        "truncated": truncated,
    }
    lines = [graphio.format_edge_list(gh).rstrip("\n")]
    if order is not None:
        lines.append(f"# dag: yes; covering order: {' '.join(map(str, order.order))}")
    else:
        lines.append(f"# dag: no; shortest cycle: {' '.join(map(str, cycle))}")
    if truncated:
        lines.append("# truncated: copy cap hit")
    _emit(obj, ns.format, lines)
    return EXIT_PARTIAL if truncated else EXIT_OK


def _cmd_consistent(ns: argparse.Namespace) -> int:
    perms = graphio.parse_permutations(_read(ns.perms))
    fam = consistent_sets(perms, ns.t)
    _emit(
        fam.to_json_dict(),
        ns.format,
        [" ".join(map(str, sorted(s))) for s in fam.sets],
    )
    return EXIT_OK


def _cmd_pipeline(ns: argparse.Namespace) -> int:
    host = _load_graph(ns.host)
    pattern = _load_graph(ns.pattern)
    perms = graphio.parse_permutations(_read(ns.perms))
    result = skew_witness_pipeline(host, pattern, perms)
    if result is None:
        _emit({"found": False}, ns.format, ["no consistent copy found"])
        return EXIT_OK
    copy, profile = result
    obj = {
        "found": True,
        "copy_edges": [list(e) for e in sorted(copy.edges)],
        "profile": list(profile),
    }
    _emit(
        obj,
        ns.format,
        [
            f"copy: {' '.join(f'{u}->{v}' for u, v in sorted(copy.edges))}",
            f"profile: {' '.join(map(str, profile))}",
        ],
    )
    return EXIT_OK


def _parse_sweep_config(text: str) -> SweepConfig:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"bad sweep config JSON: {exc}") from exc
    pattern_spec = obj.get("pattern")
    if isinstance(pattern_spec, dict):
        pattern = graphio.parse_graph_json(json.dumps(pattern_spec))
    elif isinstance(pattern_spec, str):
        parts = pattern_spec.split()
        pattern = catalog_graph(parts[0], parts[1:])
    else:
        raise InvalidInputError('sweep config needs "pattern" (graph object or catalog string)')
    try:
        a_star = Fraction(str(obj["a_star"]))
        return SweepConfig(
            pattern=pattern,
            a_star=a_star,
            n_values=tuple(int(n) for n in obj["n_values"]),
            samples=int(obj["samples"]),
            seed=int(obj["seed"]),
            mode=str(obj["mode"]),
            cap=int(obj.get("cap", 10**6)),
            perm_factor=float(obj.get("perm_factor", 1.0)),
        )
    except KeyError as exc:
        raise InvalidInputError(f"sweep config missing key: {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad sweep config value: {exc}") from exc


def _cmd_sweep(ns: argparse.Namespace) -> int:
    cfg = _parse_sweep_config(_read(ns.config))
    rows = threshold_sweep(cfg, jobs=ns.jobs)
    if ns.format == "json":
        print(rows_to_json(rows))
    else:
        sys.stdout.write(rows_to_csv(rows))
    if any(r.censored for r in rows):
        return EXIT_PARTIAL
    return EXIT_OK


def _cmd_census(ns: argparse.Namespace) -> int:
    result = balanced_census(ns.h, ns.samples, ns.seed)
    obj = result.to_json_dict()
    lines = [f"balanced fraction: {result.fraction}"]
    lines.extend(f"a = {k}: {v}" for k, v in obj["histogram"].items())
    _emit(obj, ns.format, lines)
    return EXIT_OK


def _cmd_catalog(ns: argparse.Namespace) -> int:
    g = catalog_graph(ns.name, ns.args)
    sys.stdout.write(graphio.format_edge_list(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dagcover",
        description="Covering numbers, density parameters and skewness of dag patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("params", help="fractional arboricity, maximal density, balance")
    p.add_argument("graph")
    add_format(p)
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser("skewness", help="exact skewness or a randomized upper bound")
    p.add_argument("graph")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true", default=True)
    group.add_argument("--random", action="store_true")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    add_format(p)
    p.set_defaults(func=_cmd_skewness)

    p = sub.add_parser("tau", help="covering number of a pattern in a host")
    p.add_argument("host")
    p.add_argument("pattern")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exact", dest="mode", action="store_const", const="exact")
    group.add_argument("--greedy", dest="mode", action="store_const", const="greedy")
    group.add_argument("--bounds", dest="mode", action="store_const", const="bounds")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--cap", type=int, default=10**6)
    add_format(p)
    p.set_defaults(func=_cmd_tau, mode="exact")

    p = sub.add_parser("gh", help="union of all copy edge sets, with dagness certificate")
    p.add_argument("host")
    p.add_argument("pattern")
    p.add_argument("--cap", type=int, default=10**6)
    add_format(p)
    p.set_defaults(func=_cmd_gh)

    p = sub.add_parser("consistent", help="blocks consistent with a permutation family")
    p.add_argument("perms")
    p.add_argument("--t", type=int, required=True, help="produce 2**t sets")
    add_format(p)
    p.set_defaults(func=_cmd_consistent)

    p = sub.add_parser("pipeline", help="copy covered at most s(H) by every permutation")
    p.add_argument("host")
    p.add_argument("pattern")
    p.add_argument("perms")
    add_format(p)
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("sweep", help="Monte Carlo threshold sweep (CSV to stdout)")
    p.add_argument("config")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("census", help="totally balanced fraction of random graphs")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    add_format(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("catalog", help="emit a named graph in edge-list format")
    p.add_argument("name", choices=("figure1", "Th", "star", "path"))
    p.add_argument("args", nargs="*")
    p.set_defaults(func=_cmd_catalog)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except (SizeLimitError, InfeasibleSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InvalidInputError, UndefinedParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except DagCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
