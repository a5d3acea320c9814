#!/usr/bin/env python3
"""twcanon - canonization and isomorphism for graphs of bounded tree width."""
import argparse
import logging
import sys

from pydantic import ValidationError

from config.settings import Settings
from container import Container
from domain.exceptions import TwCanonError
from domain.results import IsomorphismResult
from engine.canonizer import match_canons
from harness.selftest import run_selftest

logger = logging.getLogger("twcanon")

EXIT_OK = 0
EXIT_NON_ISOMORPHIC = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-k", type=int, default=None, help="treewidth bound (default: computed exactly)")
    common.add_argument("--format", choices=("auto", "graph6", "edgelist"), default="auto")
    common.add_argument("--small-factor", type=int, default=None)
    common.add_argument("--medium-factor", type=int, default=None)
    common.add_argument("--permutation-cap", type=int, default=None)
    common.add_argument("--oracle-limit", type=int, default=None)
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"), default="WARNING")

    parser = argparse.ArgumentParser(prog="twcanon", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    canon = commands.add_parser("canon", parents=[common], help="print the canon of a graph")
    canon.add_argument("file")
    canon.add_argument("--labeling", action="store_true", help="also print vertex -> position")

    iso = commands.add_parser("iso", parents=[common], help="decide isomorphism (exit 0 iso, 1 non-iso)")
    iso.add_argument("file1")
    iso.add_argument("file2")

    decompose = commands.add_parser("decompose", parents=[common], help="print a decomposition as JSON")
    decompose.add_argument("--stage", choices=("atoms", "bounded", "nested"), default="nested")
    decompose.add_argument("file")

    selftest = commands.add_parser("selftest", parents=[common], help="run the seeded property suites")
    selftest.add_argument("--size", type=int, default=20)
    selftest.add_argument("--seed", type=int, default=0)
    return parser


def settings_from(args: argparse.Namespace) -> Settings:
    overrides = {
        "small_factor": args.small_factor,
        "medium_factor": args.medium_factor,
        "permutation_cap": args.permutation_cap,
        "oracle_limit": args.oracle_limit,
    }
    return Settings(log_level=args.log_level, **{key: value for key, value in overrides.items() if value is not None})


def run_canon(args: argparse.Namespace, container: Container) -> int:
    graph = container.read_graph(args.file, args.format)
    result = container.run(graph, args.k, "canon")["canon"]
    print(container.emitter.emit_canon(result))
    if args.labeling:
        for v in graph.vertices:
            print(f"{v} -> {result.labeling[v]}")
    return EXIT_OK


def run_iso(args: argparse.Namespace, container: Container) -> int:
    first = container.read_graph(args.file1, args.format)
    second = container.read_graph(args.file2, args.format)
    if first.order != second.order or len(first.edge_colors) != len(second.edge_colors):
        logger.info("vertex or edge counts differ")
        print(container.emitter.emit_isomorphism(IsomorphismResult(isomorphic=False)))
        return EXIT_NON_ISOMORPHIC
    canon_first = container.run(first, args.k, "canon")["canon"]
    canon_second = container.run(second, args.k, "canon")["canon"]
    verdict = match_canons(first, second, canon_first, canon_second)
    print(container.emitter.emit_isomorphism(verdict))
    return EXIT_OK if verdict.isomorphic else EXIT_NON_ISOMORPHIC


def run_decompose(args: argparse.Namespace, container: Container) -> int:
    graph = container.read_graph(args.file, args.format)
    state = container.run(graph, args.k, args.stage)
    if args.stage == "atoms":
        outputs = state["clique_free"]
    elif args.stage == "bounded":
        outputs = [d for part in state["bounded"] for d in part]
    else:
        outputs = state["nested"]
    print(container.emitter.emit_decompositions(outputs))
    return EXIT_OK


def run_self_test(args: argparse.Namespace, container: Container) -> int:
    report = run_selftest(args.size, args.seed, container.settings)
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_NON_ISOMORPHIC


COMMANDS = {
    "canon": run_canon,
    "iso": run_iso,
    "decompose": run_decompose,
    "selftest": run_self_test,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="[%(levelname)s] %(name)s: %(message)s")
    try:
        container = Container(settings_from(args))
        return COMMANDS[args.command](args, container)
    except TwCanonError as e:
        print(f"twcanon: error: {e.message}", file=sys.stderr)
        return EXIT_ERROR
    except ValidationError as e:
        print(f"twcanon: error: invalid option: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
