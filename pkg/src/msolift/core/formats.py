import json
from typing import Mapping, Optional

from pydantic import ValidationError

from msolift.core.decomposition import (
    DecompositionMetrics,
    NodeKind,
    TreeDecomposition,
    ValidationReport,
)
from msolift.core.models import (
    DecompositionModel,
    MetricsModel,
    RelationModel,
    StructureModel,
    ValidationReportModel,
    ViolationModel,
)
from msolift.core.structures import GRAPH_VOCABULARY, Graph, Structure, Vocabulary
from msolift.errors import DomainError


def structure_to_model(A: Structure) -> StructureModel:
    return StructureModel(
        universe=sorted(A.universe),
        relations={
            name: RelationModel(arity=arity, tuples=[list(t) for t in sorted(A.relations[name])])
            for name, arity in A.vocabulary.symbols
        },
    )


def structure_from_model(model: StructureModel, internal: bool = False) -> Structure:
    """internal=True admits reserved symbols (ordered and otxx structures)."""
    vocabulary = Vocabulary.from_mapping({n: r.arity for n, r in model.relations.items()}, internal=internal)
    relations = {n: [tuple(t) for t in r.tuples] for n, r in model.relations.items()}
    structure = Structure(vocabulary, frozenset(model.universe), relations)
    if vocabulary.symbols == GRAPH_VOCABULARY.symbols and _is_simple_graph(structure):
        return Graph(universe=structure.universe, relations=structure.relations)
    return structure


def _is_simple_graph(A: Structure) -> bool:
    edges = A.relations["E"]
    return all(v != w and (w, v) in edges for v, w in edges)


def dumps_structure(A: Structure) -> str:
    return structure_to_model(A).model_dump_json(indent=2)


def loads_structure(text: str) -> Structure:
    try:
        model = StructureModel.model_validate_json(text)
    except ValidationError as e:
        raise DomainError(f"Invalid structure JSON: {e}") from e
    return structure_from_model(model)


def parse_edge_list(text: str) -> Graph:
    """
    Edge-list text: first line "n m", then m lines "u v". Vertices are 0..n-1.
    Blank lines and lines starting with '#' are ignored.
    """
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise DomainError("Edge list must start with a line 'n m'")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as e:
        raise DomainError(f"Malformed edge list: {e}") from e
    if len(edges) != m:
        raise DomainError(f"Edge list declares {m} edges but has {len(edges)}")
    for v, w in edges:
        if not (0 <= v < n and 0 <= w < n):
            raise DomainError(f"Edge ({v},{w}) leaves vertex range 0..{n - 1}")
    return Graph.from_edges(range(n), edges)


def format_edge_list(G: Graph) -> str:
    edges = sorted(G.edges)
    vertices = sorted(G.vertices)
    if vertices != list(range(len(vertices))):
        raise DomainError("Edge-list format needs vertices 0..n-1")
    lines = [f"{len(vertices)} {len(edges)}"] + [f"{v} {w}" for v, w in edges]
    return "\n".join(lines) + "\n"


def load_structure_file(path: str) -> Structure:
    with open(path) as f:
        text = f.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return loads_structure(text)
    return parse_edge_list(text)


def decomposition_to_model(
    D: TreeDecomposition, attributes: Optional[Mapping[int, Mapping[str, str]]] = None
) -> DecompositionModel:
    return DecompositionModel(
        root=D.root,
        bags={t: sorted(D.bags[t]) for t in sorted(D.nodes)},
        children={t: list(D.children[t]) for t in sorted(D.nodes) if D.children[t]},
        kinds={t: D.kinds[t].value for t in sorted(D.kinds)},
        provenance=dict(sorted(D.provenance.items())),
        attributes={t: dict(a) for t, a in sorted((attributes or {}).items())},
    )


def decomposition_from_model(model: DecompositionModel) -> TreeDecomposition:
    try:
        kinds = {t: NodeKind(k) for t, k in model.kinds.items()}
    except ValueError as e:
        raise DomainError(f"Unknown node kind: {e}") from e
    return TreeDecomposition(
        root=model.root,
        bags={t: frozenset(b) for t, b in model.bags.items()},
        children={t: tuple(cs) for t, cs in model.children.items()},
        kinds=kinds,
        provenance=model.provenance,
    )


def dumps_decomposition(D: TreeDecomposition, attributes=None) -> str:
    return decomposition_to_model(D, attributes).model_dump_json(indent=2)


def loads_decomposition(text: str) -> TreeDecomposition:
    try:
        model = DecompositionModel.model_validate_json(text)
    except ValidationError as e:
        raise DomainError(f"Invalid decomposition JSON: {e}") from e
    return decomposition_from_model(model)


def report_to_model(report: ValidationReport) -> ValidationReportModel:
    return ValidationReportModel(
        ok=report.ok,
        violations=[
            ViolationModel(condition=v.condition, witness=list(v.witness), detail=v.detail)
            for v in report.violations
        ],
    )


def metrics_to_model(m: DecompositionMetrics) -> MetricsModel:
    return MetricsModel(width=m.width, adhesion=m.adhesion, empty=m.empty)


def decomposition_to_dot(
    D: TreeDecomposition, attributes: Optional[Mapping[int, Mapping[str, str]]] = None
) -> str:
    """DOT export; nodes are labelled with their bags, kinds and extra attributes become node attributes."""
    attributes = attributes or {}
    lines = ["digraph decomposition {"]
    for t in D.preorder():
        bag = ",".join(str(v) for v in sorted(D.bags[t]))
        attrs = {"label": f"{t}: {{{bag}}}"}
        if t in D.kinds:
            attrs["kind"] = D.kinds[t].value
        attrs.update(attributes.get(t, {}))
        rendered = ", ".join(f"{k}={json.dumps(str(v))}" for k, v in attrs.items())
        lines.append(f"  n{t} [{rendered}];")
    for t, u in D.edges():
        lines.append(f"  n{t} -> n{u};")
    lines.append("}")
    return "\n".join(lines) + "\n"
