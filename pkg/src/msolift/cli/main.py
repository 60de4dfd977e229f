import argparse
import logging
import sys
from typing import Optional, Sequence

from msolift.cli.commands import HANDLERS
from msolift.config import get_settings, override_settings
from msolift.errors import CapacityError, ConfigError, MsoliftError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CAPACITY = 2

GLOBAL_CAPS = ("jobs", "rank_cap", "universe_cap", "order_cap", "extension_cap", "lift_rank_cap")


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors by exception so they map to exit code 1."""

    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(message)


def _add_output(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="JSON output (default)")
    group.add_argument("--dot", action="store_true", help="DOT output")


def _add_formula(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--formula", help="file holding the formula text")
    group.add_argument("--sentence", help="name of a library sentence")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="msolift", description="Clique-separator decompositions and MSO type composition")
    parser.add_argument("--jobs", type=int, help="worker threads for refinement")
    parser.add_argument("--rank-cap", type=int)
    parser.add_argument("--universe-cap", type=int)
    parser.add_argument("--order-cap", type=int)
    parser.add_argument("--extension-cap", type=int)
    parser.add_argument("--lift-rank-cap", type=int)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("decompose", help="atom, component, single-step or 3-connected decomposition")
    p.add_argument("graph")
    p.add_argument("-k", type=int, help="treewidth bound (default: exact oracle)")
    p.add_argument("--trusted", action="store_true", help="skip the treewidth check")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--atoms", action="store_true", help="atom decomposition (default)")
    kind.add_argument("--components", action="store_true")
    kind.add_argument("--step", type=int, metavar="C", help="one decomposition step at level C")
    kind.add_argument("--three-connected", action="store_true")
    _add_output(p)

    p = sub.add_parser("improve", help="add edges between pairs joined by k+1 disjoint paths")
    p.add_argument("graph")
    p.add_argument("-k", type=int)
    p.add_argument("--closure", action="store_true", help="iterate to a fixpoint")
    p.add_argument("--edge-list", action="store_true", help="print the improved graph")

    p = sub.add_parser("segment", help="segmented atom decomposition")
    p.add_argument("graph")
    p.add_argument("-k", type=int)
    p.add_argument("--trusted", action="store_true")
    _add_output(p)

    p = sub.add_parser("otxx", help="ordered tree extension JSON")
    p.add_argument("structure")
    p.add_argument("-k", type=int)
    p.add_argument("--trusted", action="store_true")
    p.add_argument("--provider", choices=["input-id", "bfs", "coloring"], default="coloring")

    p = sub.add_parser("typecheck", help="rank-q type of a structure")
    p.add_argument("structure")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-c", type=int, default=1)
    p.add_argument("--order", help="comma-separated linear order of the universe")
    p.add_argument("--registry-out")
    _add_formula(p)

    p = sub.add_parser("equiv", help="rank-q equivalence of two structures")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-q", type=int, required=True)

    p = sub.add_parser("invariance", help="order invariance of a sentence on a structure")
    p.add_argument("structure")
    p.add_argument("--cap", type=int)
    _add_formula(p)

    p = sub.add_parser("modelcheck", help="decide an order-invariant sentence by type composition")
    p.add_argument("structure")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int)
    p.add_argument("--seed", type=int, help="random compatible order")
    p.add_argument("--scope", choices=["elements", "all"], default="elements", help="sets range over elements or everything")
    p.add_argument("--assume-invariant", action="store_true")
    p.add_argument("--trace", metavar="FILE")
    _add_formula(p)

    p = sub.add_parser("oracle", help="brute-force oracles")
    oracles = p.add_subparsers(dest="oracle", required=True, parser_class=_ArgumentParser)
    o = oracles.add_parser("treewidth")
    o.add_argument("graph")
    o = oracles.add_parser("minor")
    o.add_argument("graph")
    o.add_argument("pattern")
    o = oracles.add_parser("paths")
    o.add_argument("graph")
    o.add_argument("v", type=int)
    o.add_argument("w", type=int)
    return parser


def configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, get_settings().log_level.upper(), logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        updates = {name: getattr(args, name) for name in GLOBAL_CAPS if getattr(args, name) is not None}
        if updates:
            override_settings(**updates)
        configure_logging(args.verbose)
        output = HANDLERS[args.command](args)
    except UsageError as e:
        print(f"msolift: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except CapacityError as e:
        print(f"msolift: capacity exceeded: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except ConfigError as e:
        print(f"msolift: configuration error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except (MsoliftError, OSError) as e:
        print(f"msolift: {e}", file=sys.stderr)
        return EXIT_FAILURE
    print(output)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
