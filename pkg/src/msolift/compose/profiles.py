"""
Anchored profiles: rank-q types composed from local parts.

The profile of a node t describes (X_t, ≤, I, P1..Pd) where I lists the
interface (t, then σ(t) in ⪯ order) as singleton variables and ≤ is the
block order. Rank 0 keeps the atomic facts a parent needs to glue parts:

    counts   per variable: size outside I capped at 2, residues mod 2..c
    nsubs    pairs (a, b) whose parts outside I are included
    members  pairs (j, a) with interface position j in P_a
    rels     relation atoms over variables that are singletons
    unary    sizes of unary relations outside I, residues mod 2..c
    marks    (a, "element") and (a, "top") for singletons outside I

Rank r > 0 adds the set of rank r-1 profiles reached by one more set. A
node's profile only looks at its local part (t, its children in sequence,
σ(t), its new bag elements) and at the profiles of its children, so no
subtree is ever typed as a whole.

Sets range over the whole universe (scope "all") or over the elements only
(scope "elements"). The second is exact for sentences relativized to V_S
and keeps the nodes out of every enumeration.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Mapping, NamedTuple, Optional, Sequence

from msolift.compose.engine import Composition, EngineStats, key_digest, local_key
from msolift.config import get_settings
from msolift.core.decomposition import NodeKind
from msolift.core.structures import ORDER_SYMBOL, Vocabulary
from msolift.errors import CapacityError, ContractError, DomainError
from msolift.otxx.build import Otxx
from msolift.otxx.orders import sequences_of
from msolift.otxx.replace import interface, local_structure
from msolift.types.engine import relation_atoms, unary_symbols
from msolift.types.registry import TypeId, TypeMeta, TypeRegistry, default_registry

logger = logging.getLogger(__name__)

ProfileId = int

SCOPES = ("all", "elements")

# cross-part atoms that can hold; every other atom spanning two parts is false
CROSSING_SYMBOLS = frozenset({ORDER_SYMBOL, "prec", "R_gamma"})


class Atoms(NamedTuple):
    counts: tuple[tuple[int, tuple[int, ...]], ...]
    nsubs: frozenset[tuple[int, int]]
    members: frozenset[tuple[int, int]]
    rels: frozenset[tuple[str, tuple[int, ...]]]
    unary: tuple[tuple[int, ...], ...]
    marks: frozenset[tuple[int, str]]

    @property
    def params(self) -> int:
        return len({j for j, _ in self.members})


@dataclass(frozen=True)
class LocalPart:
    """A node's local structure relabelled by position: t, children in sequence, σ(t), new bag elements."""

    key: tuple
    size: int
    nodes: int
    params: tuple[int, ...]
    interfaces: tuple[tuple[int, ...], ...]
    b_node: bool
    choosable: int
    relations: Mapping[str, frozenset[tuple[int, ...]]]
    unary: tuple[int, ...]

    @property
    def outer(self) -> int:
        mask = (1 << self.size) - 1
        for p in self.params:
            mask &= ~(1 << p)
        return mask


def otxx_vocabulary(X: Otxx) -> Vocabulary:
    """Vocabulary of X's structure with the order symbol."""
    return X.structure.vocabulary.extend({ORDER_SYMBOL: 2})


def local_part(X: Otxx, t: int, sequence: Sequence[int], vocabulary: Vocabulary, scope: str) -> LocalPart:
    sequence = tuple(sequence)
    sep = X.separator_sequence(t)
    fresh = tuple(v for v in X.bag_orders[t] if v not in X.sigma[t])
    positions = (t,) + sequence + sep + fresh
    index = {x: i for i, x in enumerate(positions)}
    local = local_structure(X, t)
    relations = {}
    for name, _ in vocabulary.symbols:
        if name == ORDER_SYMBOL:
            relations[name] = frozenset((i, j) for i in range(len(positions)) for j in range(i, len(positions)))
        elif name in local.vocabulary:
            relations[name] = frozenset(tuple(index[x] for x in tup) for tup in local.relations[name])
        else:
            raise ContractError(f"Symbol {name} is not in the otxx vocabulary")
    nodes = (1 << (1 + len(sequence))) - 1
    full = (1 << len(positions)) - 1
    unary = tuple(sum(1 << p for (p,) in relations[name]) for name in unary_symbols(vocabulary.symbols))
    return LocalPart(
        key=local_key(X, t, sequence),
        size=len(positions),
        nodes=nodes,
        params=tuple(index[x] for x in interface(X, t)),
        interfaces=tuple(tuple(index[x] for x in interface(X, u)) for u in sequence),
        b_node=X.tree.kind(t) == NodeKind.B_NODE,
        choosable=full if scope == "all" else full & ~nodes,
        relations=relations,
        unary=unary,
    )


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class ProfileEngine:
    """
    Profiles of one rank (q, c) over one vocabulary and scope.

    The vocabulary defaults to the full otxx vocabulary with <= and is fixed
    by the first otxx composed. Profiles of scope "all" over the full
    vocabulary convert to the types of types/engine.py.
    """

    def __init__(
        self,
        q: int,
        c: int = 1,
        vocabulary: Optional[Vocabulary] = None,
        scope: str = "all",
        registry: Optional[TypeRegistry] = None,
    ):
        if q < 0 or c < 1:
            raise DomainError(f"Invalid rank ({q},{c})")
        if scope not in SCOPES:
            raise DomainError(f"Unknown scope {scope!r}")
        cap = get_settings().lift_rank_cap
        if q > cap:
            raise CapacityError(f"Rank {q} exceeds the lift rank cap {cap}", cap)
        self.q = q
        self.c = c
        self.scope = scope
        self.vocabulary = vocabulary
        self.registry = registry or default_registry()
        self.moduli = tuple(range(2, c + 1))
        self.stats = EngineStats()
        self._ids: dict[tuple, ProfileId] = {}
        self._payloads: list[tuple] = []
        self._memo: dict[tuple, ProfileId] = {}
        self._groups: dict[ProfileId, dict[tuple[bool, ...], tuple[ProfileId, ...]]] = {}
        self._types: dict[tuple[ProfileId, int], TypeId] = {}
        self._largest_local = 0

    def __len__(self) -> int:
        return len(self._payloads)

    @property
    def largest_local(self) -> int:
        return self._largest_local

    def payload(self, profile: ProfileId) -> tuple:
        if not 0 <= profile < len(self._payloads):
            raise ContractError(f"Unknown profile {profile}")
        return self._payloads[profile]

    def atoms(self, profile: ProfileId) -> Atoms:
        return self.payload(profile)[1]

    def _vocabulary_for(self, X: Otxx) -> Vocabulary:
        if self.vocabulary is None:
            self.vocabulary = otxx_vocabulary(X)
        missing = set(self.vocabulary.names) - set(otxx_vocabulary(X).names)
        if missing:
            raise ContractError(f"Symbols {sorted(missing)} are not in the otxx vocabulary")
        return self.vocabulary

    def compose(self, X: Otxx, t: int, sequence: Sequence[int], children: Mapping[int, ProfileId]) -> Composition:
        """Profile of X_t from its local part and the profiles of its children taken in `sequence`."""
        sequence = tuple(sequence)
        kids = X.tree.children[t]
        if sorted(sequence) != sorted(kids):
            raise ContractError(f"Sequence {sequence} does not enumerate the children of {t}")
        missing = [u for u in kids if u not in children]
        if missing:
            raise ContractError(f"Profiles miss children {missing} of node {t}")
        if not kids and X.tree.kind(t) == NodeKind.A_NODE:
            raise ContractError(f"a-node {t} has no children")
        part = local_part(X, t, sequence, self._vocabulary_for(X), self.scope)
        for u in sequence:
            if len(self.atoms(children[u]).counts) != len(interface(X, u)):
                raise ContractError(f"Profile {children[u]} of child {u} is not a root profile of its interface")
        self._largest_local = max(self._largest_local, part.size)
        kid_ids = tuple(children[u] for u in sequence)
        hit = (part.key, (), kid_ids, self.q) in self._memo
        profile = self._profile(part, (), kid_ids, self.q)
        if hit:
            self.stats.hits += 1
        else:
            self.stats.misses += 1
            logger.debug("→ composed node %d (%d children) into profile %d", t, len(sequence), profile)
        return Composition(profile, key_digest(part.key), sequence, {u: children[u] for u in sequence}, hit=hit)

    def profiles(self, X: Otxx, sequences: Optional[Mapping[int, Sequence[int]]] = None) -> dict[int, ProfileId]:
        """Profile of every node, bottom-up; a-node children follow `sequences` (default by id)."""
        sequences = sequences or {}
        result: dict[int, ProfileId] = {}
        for t in X.tree.postorder():
            if X.tree.kind(t) == NodeKind.B_NODE:
                sequence = X.sibling_sequence(t)
            else:
                sequence = tuple(sequences.get(t, X.tree.children[t]))
            result[t] = self.compose(X, t, sequence, result).type_id
        return result

    def profile_of(self, X: Otxx, order: Optional[Sequence[int]] = None) -> ProfileId:
        """Root profile of X under the block order with the child sequences of `order`."""
        sequences = sequences_of(X, order) if order is not None else None
        return self.profiles(X, sequences)[X.root]

    def _intern(self, payload: tuple) -> ProfileId:
        profile = self._ids.get(payload)
        if profile is None:
            profile = self._ids[payload] = len(self._payloads)
            self._payloads.append(payload)
        return profile

    def _profile(self, part: LocalPart, sets: tuple[int, ...], kids: tuple[ProfileId, ...], r: int) -> ProfileId:
        key = (part.key, sets, kids, r)
        found = self._memo.get(key)
        if found is not None:
            return found
        atoms = self._atomic(part, sets, kids)
        if r == 0:
            payload = (0, atoms)
        else:
            reached = set()
            for S in _submasks(part.choosable):
                groups = [self._successors(kid, part.interfaces[i], S) for i, kid in enumerate(kids)]
                for combo in product(*groups):
                    reached.add(self._profile(part, sets + (S,), combo, r - 1))
            payload = (r, atoms, frozenset(reached))
        profile = self._intern(payload)
        self._memo[key] = profile
        return profile

    def _successors(self, kid: ProfileId, positions: tuple[int, ...], S: int) -> tuple[ProfileId, ...]:
        """Successors of a child profile whose new set meets the child's interface like S does."""
        groups = self._groups.get(kid)
        if groups is None:
            collected: dict[tuple[bool, ...], list[ProfileId]] = {}
            for nxt in sorted(self._payloads[kid][2]):
                atoms = self._payloads[nxt][1]
                new = len(atoms.counts) - 1
                signature = tuple((j, new) in atoms.members for j in range(len(positions)))
                collected.setdefault(signature, []).append(nxt)
            groups = self._groups[kid] = {sig: tuple(ids) for sig, ids in collected.items()}
        return groups.get(tuple(bool(S >> p & 1) for p in positions), ())

    def _atomic(self, part: LocalPart, sets: tuple[int, ...], kids: tuple[ProfileId, ...]) -> Atoms:
        params = len(part.params)
        masks = tuple(1 << p for p in part.params) + sets
        n = len(masks)
        outer = part.outer
        kid_atoms = [self._payloads[k][1] for k in kids]

        def child_var(i: int, a: int) -> Optional[int]:
            return None if a < params else len(part.interfaces[i]) + a - params

        counts = []
        located: dict[int, tuple[Optional[int], Optional[int]]] = {}
        for a, mask in enumerate(masks):
            size = (mask & outer).bit_count()
            residues = [size % m for m in self.moduli]
            inside = []
            for i, atoms in enumerate(kid_atoms):
                ca = child_var(i, a)
                if ca is None:
                    continue
                capped, kid_residues = atoms.counts[ca]
                size += capped
                residues = [(x + y) % m for x, y, m in zip(residues, kid_residues, self.moduli)]
                if capped:
                    inside.append((i, capped))
            counts.append((min(size, 2), tuple(residues)))
            if mask.bit_count() == 1 and not inside:
                located[a] = (mask.bit_length() - 1, None)
            elif mask == 0 and len(inside) == 1 and inside[0][1] == 1:
                located[a] = (None, inside[0][0])

        nsubs = set()
        for a in range(n):
            for b in range(n):
                if a == b or masks[a] & outer & ~masks[b]:
                    continue
                if all(self._kid_sub(atoms, child_var(i, a), child_var(i, b)) for i, atoms in enumerate(kid_atoms)):
                    nsubs.add((a, b))

        members = frozenset((j, a) for j, p in enumerate(part.params) for a in range(n) if masks[a] >> p & 1)

        singles = sorted(located)
        rels = set()
        for name, arity in self.vocabulary.symbols:
            for tup in product(singles, repeat=arity):
                if self._holds(part, name, tup, located, kid_atoms, child_var):
                    rels.add((name, tup))

        unary = []
        for u, mask in enumerate(part.unary):
            size = (mask & outer).bit_count()
            residues = [size % m for m in self.moduli]
            for atoms in kid_atoms:
                residues = [(x + y) % m for x, y, m in zip(residues, atoms.unary[u], self.moduli)]
            unary.append(tuple(residues))

        marks = set()
        for a, (p, i) in located.items():
            if i is None:
                if outer >> p & 1 and not part.nodes >> p & 1:
                    marks.update({(a, "element"), (a, "top")})
            elif (child_var(i, a), "element") in kid_atoms[i].marks:
                marks.add((a, "element"))

        return Atoms(tuple(counts), frozenset(nsubs), members, frozenset(rels), tuple(unary), frozenset(marks))

    @staticmethod
    def _kid_sub(atoms: Atoms, a: Optional[int], b: Optional[int]) -> bool:
        if a is None:
            return True
        if b is None:
            return atoms.counts[a][0] == 0
        return a == b or (a, b) in atoms.nsubs

    def _holds(self, part: LocalPart, name: str, tup, located, kid_atoms, child_var) -> bool:
        locs = [located[a] for a in tup]
        inside = {i for _, i in locs if i is not None}
        if not inside:
            return tuple(p for p, _ in locs) in part.relations[name]
        if len(inside) == 1:
            (i,) = inside
            positions = part.interfaces[i]
            mapped = []
            for a, (p, j) in zip(tup, locs):
                if j is not None:
                    mapped.append(child_var(i, a))
                elif p in positions:
                    mapped.append(positions.index(p))
                else:
                    break
            else:
                return (name, tuple(mapped)) in kid_atoms[i].rels
        if name not in CROSSING_SYMBOLS:
            return False
        return self._crossing(part, name, tup, locs, kid_atoms, child_var)

    def _crossing(self, part: LocalPart, name: str, tup, locs, kid_atoms, child_var) -> bool:
        (x, y), ((px, ix), (py, iy)) = tup, locs

        def is_element(a: int, p: Optional[int], i: Optional[int]) -> bool:
            if i is None:
                return not part.nodes >> p & 1
            return (child_var(i, a), "element") in kid_atoms[i].marks

        ex, ey = is_element(x, px, ix), is_element(y, py, iy)
        if name == ORDER_SYMBOL:
            return _order_key(px, ix, ex) <= _order_key(py, iy, ey)
        if name == "R_gamma":
            return ix is None and px == 0 and iy is not None and ey
        # prec
        if not ex:
            if ey:
                return True
            if ix is not None:
                return False
            if px == 0:
                return True
            return part.b_node and px - 1 < iy
        if not ey:
            return False
        if ix is None:
            return True
        if iy is None:
            return False
        return part.b_node and (child_var(ix, x), "top") in kid_atoms[ix].marks and ix < iy

    def as_type(self, profile: ProfileId, anchored: bool = False) -> TypeId:
        """
        The type of a root profile in this engine's registry.

        anchored keeps the interface as the leading set parameters; otherwise
        they are projected away and the result is the type of the sentence
        structure (X_t, ≤).
        """
        offset = 0 if anchored else self.atoms(profile).params
        return self._convert(profile, offset)

    def _convert(self, profile: ProfileId, offset: int) -> TypeId:
        cached = self._types.get((profile, offset))
        if cached is not None:
            return cached
        payload = self._payloads[profile]
        r, atoms = payload[0], payload[1]
        n = len(atoms.counts)
        header = self._header(atoms)
        exts = tuple(self._row(atoms, a, offset) for a in range(offset, n))
        if r == 0:
            converted = ("r0", header, exts)
        elif r == 1:
            choices = frozenset(self._row(self._payloads[s][1], n, offset) for s in payload[2])
            converted = ("r1", header, exts, choices)
        else:
            converted = ("q", r, frozenset(self._convert(s, offset) for s in payload[2]))
        meta = TypeMeta(q=r, c=self.c, arity=n - offset, vocabulary=self.vocabulary.symbols)
        type_id = self.registry.intern(converted, meta)
        self._types[(profile, offset)] = type_id
        return type_id

    def _header(self, atoms: Atoms) -> tuple:
        params = atoms.params
        bits = 0
        bit = 0
        for name, residues in zip(unary_symbols(self.vocabulary.symbols), atoms.unary):
            inner = sum(1 for j in range(params) if (name, (j,)) in atoms.rels)
            for m, residue in zip(self.moduli, residues):
                if (residue + inner) % m == 0:
                    bits |= 1 << bit
                bit += 1
        return (self.vocabulary.symbols, self.c, bits)

    def _row(self, atoms: Atoms, a: int, offset: int) -> tuple[int, bool, int, int]:
        def inner(x: int) -> frozenset[int]:
            return frozenset(j for j, b in atoms.members if b == x)

        def sub(x: int, y: int) -> bool:
            return x == y or ((x, y) in atoms.nsubs and inner(x) <= inner(y))

        bits = 0
        for i in range(offset, a):
            if sub(a, i):
                bits |= 1 << (2 * (i - offset))
            if sub(i, a):
                bits |= 1 << (2 * (i - offset) + 1)
        capped, residues = atoms.counts[a]
        size = len(inner(a))
        single = capped + size == 1
        rel = 0
        if single:
            for k, (name, indices) in enumerate(relation_atoms(self.vocabulary.symbols, a - offset)):
                if (name, tuple(offset + x for x in indices)) in atoms.rels:
                    rel |= 1 << k
        mods = 0
        for m, residue in zip(self.moduli, residues):
            if (residue + size) % m == 0:
                mods |= 1 << (m - 2)
        return bits, single, rel, mods


def _order_key(p: Optional[int], i: Optional[int], element: bool) -> tuple:
    """Position in the block order of a singleton in the local part (p) or inside child i."""
    if i is None:
        if p == 0:
            return (0,)
        return (2, p) if element else (1, p, 0)
    return (3, i) if element else (1, 1 + i, 1)
