"""
Model checking order-invariant sentences by type composition.

The structure is decomposed (improve, atom decomposition, segmentation),
merged into an otxx and profiled bottom-up: every node's profile is
composed from its local part and its children's profiles, and the sentence
is read off the type of the root profile.
"""

import logging
import random
from typing import Optional, Sequence

from msolift.compose.models import EngineStatsModel, LiftResult, TraceRecord
from msolift.compose.profiles import SCOPES, ProfileEngine, otxx_vocabulary
from msolift.config import get_settings
from msolift.core.decomposition import NodeKind
from msolift.core.structures import ORDER_SYMBOL, Structure, Vocabulary, gaifman
from msolift.decomp.atoms import atom_decomposition
from msolift.decomp.connectivity import improve
from msolift.decomp.oracles import treewidth_exact
from msolift.decomp.segment import segment
from msolift.errors import CapacityError, ContractError
from msolift.logic.formulas import Formula, free_variables, mentions_order, moduli, rank, symbols
from msolift.logic.invariance import check_order_invariance
from msolift.logic.transform import relativize, to_set_only
from msolift.otxx.build import BagOrderProvider, Otxx, build_otxx
from msolift.otxx.orders import block_order, is_compatible, random_compatible_order, sequences_of
from msolift.types.registry import TypeRegistry
from msolift.types.semantics import satisfies

logger = logging.getLogger(__name__)

ELEMENT_GUARD = "V_S"


def checked_treewidth(A: Structure, k: int) -> int:
    """
    Treewidth of the Gaifman graph, exact when the oracle can afford it and
    otherwise trusted to be k.

    Raises ContractError when the exact treewidth exceeds k.
    """
    G = gaifman(A)
    cap = get_settings().treewidth_oracle_cap
    if G.size > cap:
        logger.warning("✗ %d vertices exceed the treewidth oracle cap %d; trusting k=%d", G.size, cap, k)
        return k
    tw = treewidth_exact(G)
    if tw > k:
        raise ContractError(f"Treewidth {tw} exceeds k={k}")
    return tw


def otxx_of(A: Structure, k: int) -> tuple[Otxx, int]:
    """improve → atom_decomposition → segment → build_otxx with coloring bag orders."""
    tw = checked_treewidth(A, k)
    improved = improve(gaifman(A), tw)
    D = atom_decomposition(improved, tw, trusted=True)
    S = segment(D)
    X = build_otxx(A, S, BagOrderProvider.coloring(tw, improved), tw + 1)
    return X, tw


def _check_invariance(phi: Formula, A: Structure, assume_invariant: bool) -> bool:
    if assume_invariant or not mentions_order(phi):
        return False
    cap = get_settings().lift_order_cap
    if A.size > cap:
        raise CapacityError(
            f"Universe of size {A.size} is too large to verify order invariance (cap {cap}); pass assume_invariant",
            cap,
        )
    result = check_order_invariance(phi, A, cap)
    if not result.invariant:
        first, second = result.witness
        raise ContractError(f"Sentence is not order-invariant on the structure: orders {first} and {second} disagree")
    return True


_engines: dict[tuple, ProfileEngine] = {}


def lift_engine(q: int, c: int, vocabulary: Vocabulary, scope: str) -> ProfileEngine:
    """
    Shared profile engine per (q, c, vocabulary, scope).

    Engines of scope "elements" intern into a registry of their own: their
    types quantify over element sets only and must not mix with MSO types.
    """
    cap = get_settings().lift_rank_cap
    if q > cap:
        raise CapacityError(f"Rank {q} exceeds the lift rank cap {cap}", cap)
    key = (q, c, vocabulary.symbols, scope)
    engine = _engines.get(key)
    if engine is None:
        registry = None if scope == "all" else TypeRegistry()
        engine = _engines[key] = ProfileEngine(q, c, vocabulary, scope, registry)
    return engine


def run_lift(
    A: Structure,
    phi: Formula,
    k: int,
    q: Optional[int] = None,
    order_seed: Optional[int] = None,
    assume_invariant: bool = False,
    trace: bool = False,
    registry: Optional[TypeRegistry] = None,
    order: Optional[Sequence[int]] = None,
    scope: str = "elements",
) -> LiftResult:
    """
    Decide A ⊨ φ for an order-invariant sentence φ over A's vocabulary and <=.

    The order is `order` when given, a random compatible order when
    order_seed is given, and the block order otherwise. Profiles are composed
    along the block order with the same child sequences; the relativized
    sentence only reads the order on the elements, so for an invariant φ the
    verdict is that of every compatible order. q defaults to the rank of φ
    relativized to the elements.

    With scope "all" the profiles range over every set and theta_root is
    the type of the otxx under the block order, interned in `registry`.

    Raises ContractError when φ is not a sentence over the vocabulary, is not
    order-invariant, q is too small or the order is not compatible;
    CapacityError above any cap.
    """
    if free_variables(phi):
        raise ContractError(f"Not a sentence, free variables: {sorted(free_variables(phi))}")
    unknown = symbols(phi) - set(A.vocabulary.names) - {ORDER_SYMBOL}
    if unknown:
        raise ContractError(f"Symbols {sorted(unknown)} are not in the structure's vocabulary")
    if scope not in SCOPES:
        raise ContractError(f"Unknown scope {scope!r}")
    checked = _check_invariance(phi, A, assume_invariant)

    guarded = relativize(phi, ELEMENT_GUARD)
    needed = rank(to_set_only(guarded))
    if q is None:
        q = needed
    elif q < needed:
        raise ContractError(f"Rank {q} is below the rank {needed} of the relativized sentence")
    c = max(moduli(guarded), default=1)

    X, tw = otxx_of(A, k)
    if order is not None:
        order = tuple(order)
    elif order_seed is not None:
        order = random_compatible_order(X, random.Random(order_seed))
    else:
        order = block_order(X)
    if not is_compatible(X, order):
        raise ContractError("Order is not compatible with ⪯")
    sequences = sequences_of(X, order)
    composed_order = block_order(X, sequences)

    vocabulary = otxx_vocabulary(X)
    if scope == "elements":
        vocabulary = vocabulary.restrict(symbols(guarded) | {ELEMENT_GUARD})
    if registry is None:
        engine = lift_engine(q, c, vocabulary, scope)
    else:
        engine = ProfileEngine(q, c, vocabulary, scope, registry if scope == "all" else TypeRegistry())
    hits, misses = engine.stats.hits, engine.stats.misses

    profiles: dict[int, int] = {}
    records = []
    for t in X.tree.postorder():
        kind = X.tree.kind(t)
        sequence = X.sibling_sequence(t) if kind == NodeKind.B_NODE else sequences[t]
        composed = engine.compose(X, t, sequence, profiles)
        profiles[t] = composed.type_id
        if trace:
            records.append(
                TraceRecord(
                    node=t,
                    kind=kind.value,
                    local_key=composed.local_key,
                    partition=dict(composed.partition),
                    sequence=list(composed.sequence),
                    type_id=composed.type_id,
                    memo_hit=composed.hit,
                )
            )

    theta = engine.as_type(profiles[X.root])
    verdict = satisfies(theta, guarded, engine.registry)
    logger.info(
        "✓ lift verdict %s (q=%d, c=%d, %d nodes, %d memo hits)",
        verdict,
        q,
        c,
        len(X.nodes),
        engine.stats.hits - hits,
    )
    return LiftResult(
        verdict=verdict,
        theta_root=theta if scope == "all" else None,
        root_profile=profiles[X.root],
        scope=scope,
        q=q,
        c=c,
        treewidth=tw,
        order=list(order),
        composed_order=list(composed_order),
        invariance_checked=checked,
        trace=records if trace else None,
        stats=EngineStatsModel(
            hits=engine.stats.hits - hits,
            misses=engine.stats.misses - misses,
            profiles=len(engine),
            largest_local=engine.largest_local,
        ),
    )


def lift_modelcheck(
    A: Structure,
    phi: Formula,
    k: int,
    q: Optional[int] = None,
    order_seed: Optional[int] = None,
    assume_invariant: bool = False,
    scope: str = "elements",
) -> bool:
    return run_lift(A, phi, k, q, order_seed, assume_invariant, scope=scope).verdict
