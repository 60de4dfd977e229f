"""One handler per subcommand. Handlers return the text for standard output."""

import logging
from argparse import Namespace
from typing import Optional

from msolift.cli.models import EquivResult, InvarianceReport, TypecheckReport
from msolift.compose.pipeline import run_lift
from msolift.config import get_settings
from msolift.core.decomposition import (
    TreeDecomposition,
    is_segmented,
    metrics,
    validate_decomposition,
)
from msolift.core.formats import (
    decomposition_to_dot,
    decomposition_to_model,
    format_edge_list,
    load_structure_file,
    metrics_to_model,
    report_to_model,
)
from msolift.core.models import DecompositionReport
from msolift.core.structures import Graph, Structure, gaifman
from msolift.decomp.atoms import atom_decomposition, components_decomposition, decompose_step
from msolift.decomp.connectivity import disjoint_paths, improve, improve_closure
from msolift.decomp.models import ImproveResult, OracleResult
from msolift.decomp.oracles import has_minor, treewidth_exact
from msolift.decomp.segment import segment
from msolift.decomp.triconnected import three_connected_decomposition
from msolift.errors import ContractError, DomainError
from msolift.logic.formulas import Formula
from msolift.logic.invariance import check_order_invariance
from msolift.logic.library import sentence
from msolift.logic.parser import format_formula, parse_formula
from msolift.otxx.build import BagOrderProvider, build_otxx
from msolift.otxx.models import dumps_otxx
from msolift.types.engine import cmso_type, mso_type
from msolift.types.models import describe_type, dump_registry
from msolift.types.registry import TypeRegistry
from msolift.types.semantics import satisfies
from msolift.types.witness import separating_sentence

logger = logging.getLogger(__name__)


def _graph(path: str) -> Graph:
    A = load_structure_file(path)
    return A if isinstance(A, Graph) else gaifman(A)


def _formula(args: Namespace, A: Structure) -> Optional[Formula]:
    if getattr(args, "sentence", None):
        try:
            return sentence(args.sentence, A.vocabulary)
        except KeyError:
            raise DomainError(f"Unknown library sentence {args.sentence!r}") from None
    if getattr(args, "formula", None):
        with open(args.formula) as f:
            return parse_formula(f.read(), A.vocabulary)
    return None


def _treewidth(G: Graph, k: Optional[int]) -> int:
    return treewidth_exact(G) if k is None else k


def _render(D: TreeDecomposition, A: Structure, args: Namespace, attributes=None) -> str:
    if args.dot:
        return decomposition_to_dot(D, attributes).rstrip("\n")
    report = DecompositionReport(
        decomposition=decomposition_to_model(D, attributes),
        validation=report_to_model(validate_decomposition(A, D)),
        metrics=metrics_to_model(metrics(D)),
        segmented=is_segmented(D) if args.command == "segment" else None,
    )
    return report.model_dump_json(indent=2)


def decompose(args: Namespace) -> str:
    G = _graph(args.graph)
    if args.three_connected:
        result = three_connected_decomposition(G)
        return _render(result.decomposition, G, args, result.attributes())
    if args.components:
        D = components_decomposition(G)
    elif args.step is not None:
        D = decompose_step(G, args.step)
    else:
        D = atom_decomposition(G, _treewidth(G, args.k), trusted=args.trusted, jobs=get_settings().jobs)
    logger.info("✓ decomposition with %d nodes", len(D.nodes))
    return _render(D, G, args)


def improve_command(args: Namespace) -> str:
    G = _graph(args.graph)
    k = _treewidth(G, args.k)
    improved = improve_closure(G, k) if args.closure else improve(G, k)
    if args.edge_list:
        return format_edge_list(improved).rstrip("\n")
    added = sorted(e for e in improved.edges - G.edges if e[0] < e[1])
    return ImproveResult(k=k, added=added).model_dump_json(indent=2)


def segment_command(args: Namespace) -> str:
    G = _graph(args.graph)
    D = atom_decomposition(G, _treewidth(G, args.k), trusted=args.trusted, jobs=get_settings().jobs)
    return _render(segment(D), G, args)


def otxx_command(args: Namespace) -> str:
    A = load_structure_file(args.structure)
    G = gaifman(A)
    k = _treewidth(G, args.k)
    S = segment(atom_decomposition(G, k, trusted=args.trusted, jobs=get_settings().jobs))
    providers = {
        "input-id": BagOrderProvider.input_id(),
        "bfs": BagOrderProvider.bfs(),
        "coloring": BagOrderProvider.coloring(k, G),
    }
    X = build_otxx(A, S, providers[args.provider], k + 1)
    return dumps_otxx(X)


def _order(text: Optional[str]) -> Optional[tuple[int, ...]]:
    if not text:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as e:
        raise DomainError(f"Malformed order {text!r}: {e}") from e


def typecheck(args: Namespace) -> str:
    A = load_structure_file(args.structure)
    registry = TypeRegistry()
    theta = cmso_type(A, (), args.q, args.c, _order(args.order), registry)
    phi = _formula(args, A)
    report = TypecheckReport(
        type_id=theta,
        description=describe_type(theta, registry),
        satisfies=satisfies(theta, phi, registry) if phi is not None else None,
    )
    if args.registry_out:
        with open(args.registry_out, "w") as f:
            f.write(dump_registry(registry))
    return report.model_dump_json(indent=2)


def equiv(args: Namespace) -> str:
    A = load_structure_file(args.first)
    B = load_structure_file(args.second)
    registry = TypeRegistry()
    theta_a = mso_type(A, (), args.q, registry=registry)
    theta_b = mso_type(B, (), args.q, registry=registry)
    if theta_a == theta_b:
        return EquivResult(equivalent=True).model_dump_json(indent=2)
    try:
        witness = format_formula(separating_sentence(theta_a, theta_b, registry))
    except ContractError as e:
        # different vocabularies: not comparable by a sentence
        witness = None
        logger.info("✗ no separating sentence: %s", e)
    return EquivResult(equivalent=False, separating_sentence=witness).model_dump_json(indent=2)


def invariance(args: Namespace) -> str:
    A = load_structure_file(args.structure)
    phi = _formula(args, A)
    if phi is None:
        raise ContractError("invariance needs --formula or --sentence")
    result = check_order_invariance(phi, A, args.cap)
    witness = [list(o) for o in result.witness] if result.witness else []
    return InvarianceReport(
        invariant=result.invariant, orders_checked=result.orders_checked, counterexample=witness
    ).model_dump_json(indent=2)


def modelcheck(args: Namespace) -> str:
    A = load_structure_file(args.structure)
    phi = _formula(args, A)
    if phi is None:
        raise ContractError("modelcheck needs --formula or --sentence")
    result = run_lift(
        A,
        phi,
        args.k,
        args.q,
        order_seed=args.seed,
        assume_invariant=args.assume_invariant,
        trace=bool(args.trace),
        scope=args.scope,
    )
    if args.trace:
        with open(args.trace, "w") as f:
            f.write(result.model_dump_json(indent=2))
    return "true" if result.verdict else "false"


def oracle(args: Namespace) -> str:
    G = _graph(args.graph)
    if args.oracle == "treewidth":
        result = OracleResult(oracle="treewidth", value=treewidth_exact(G))
    elif args.oracle == "minor":
        H = _graph(args.pattern)
        result = OracleResult(oracle="minor", value=int(has_minor(G, H)))
    else:
        result = OracleResult(oracle="paths", value=disjoint_paths(G, args.v, args.w))
    return result.model_dump_json(indent=2)


HANDLERS = {
    "decompose": decompose,
    "improve": improve_command,
    "segment": segment_command,
    "otxx": otxx_command,
    "typecheck": typecheck,
    "equiv": equiv,
    "invariance": invariance,
    "modelcheck": modelcheck,
    "oracle": oracle,
}