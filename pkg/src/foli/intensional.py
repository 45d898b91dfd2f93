"""The concept domain and the two-step semantics.

A formula's meaning is a *concept*: a canonical term of a free algebra
whose generators are atom patterns (atoms up to renaming of variables) and
whose operations mirror the connectives - conjunction carries the join
spec, negation the complement, quantification the projected column.
Concepts are interned, so two formulas share a concept exactly when their
canonical structure coincides; structurally distinct concepts stay distinct
even when they are co-extensional in every world (that distinction is the
whole point).

An Extensionalization turns concepts into relations inside one world; it
is a homomorphism into the relational algebra, and composing it with the
concept map must give exactly the Tarskian extension (the commuting
diagram checked by `verify_diagram`).
"""

from __future__ import annotations

import threading

from .errors import (
    JoinSpecError,
    PositionOutOfRangeError,
    TupleMismatchError,
    UnknownSymbolError,
)
from .relalg import (
    Relation,
    TRUE,
    complement,
    identity_relation,
    natural_join,
    project_out,
    truth_lift,
)
from .syntax import (
    And,
    App,
    Atom,
    Eq,
    Exists,
    Formula,
    IDENTITY,
    Not,
    Top,
    atom_from_key,
    atom_key_arity,
    atom_key_text,
    canonical_atom_key,
    free_var_tuple,
    substitute,
)
from .tarski import Interpretation, extension, join_spec_for, quantifier_position
from .worlds import WorldSet


class Concept:
    """An element of the structured meaning domain; construct via factories.

    Arity -1 marks particulars (domain elements), 0 propositions, k >= 1
    k-ary concepts.  Instances are interned: equality is object identity.
    """

    __slots__ = ("kind", "arity", "payload")

    def __init__(self, kind: str, arity: int, payload: tuple):
        self.kind = kind
        self.arity = arity
        self.payload = payload

    def __repr__(self):
        return render_concept(self)


_intern_lock = threading.Lock()
_intern_table: dict = {}


def _interned(kind: str, arity: int, payload: tuple) -> Concept:
    key = (kind, arity, payload)
    with _intern_lock:
        hit = _intern_table.get(key)
        if hit is None:
            hit = Concept(kind, arity, payload)
            _intern_table[key] = hit
        return hit


#: The distinguished truth proposition and the identity concept.
TRUTH = _interned("truth", 0, ())
ID = _interned("id", 2, ())

_ID_KEY = (IDENTITY, (("v", 1), ("v", 2)))


def atom_concept(key) -> Concept:
    """The atomic concept of an atom pattern (canonical_atom_key output)."""
    if key == _ID_KEY:
        return ID
    return _interned("atom", atom_key_arity(key), (key,))


def particular(element: str) -> Concept:
    """A domain element viewed as a member of the meaning domain."""
    return _interned("particular", -1, (element,))


def conj(left: Concept, right: Concept, spec) -> Concept:
    """Conjunction concept; arity follows the join-spec arithmetic."""
    spec = frozenset(spec)
    k, j = left.arity, right.arity
    if _spec_valid(spec, k, j):
        arity = k + j - len(spec)
    else:
        arity = k + j
    return _interned("conj", arity, (left, right, tuple(sorted(spec))))


def _spec_valid(spec, k: int, j: int) -> bool:
    firsts = [i for i, _ in spec]
    seconds = [jj for _, jj in spec]
    return (
        len(set(firsts)) == len(firsts)
        and len(set(seconds)) == len(seconds)
        and all(1 <= i <= k and 1 <= jj <= j for i, jj in spec)
    )


def neg(sub: Concept) -> Concept:
    return _interned("neg", sub.arity, (sub,))


def exists(sub: Concept, position: int) -> Concept:
    """Quantification concept; drops a column when the position is real."""
    if 1 <= position <= sub.arity:
        arity = sub.arity - 1
    else:
        arity = sub.arity
    return _interned("exists", arity, (sub, position))


def concept_of(phi: Formula) -> Concept:
    """The meaning map: structural recursion over the core connectives.

    Atoms map to atom patterns (so alphabetic variants share a concept,
    while distinct predicate symbols never do), the identity atom between
    two distinct variables maps to the identity concept, and composite
    formulas map through the algebra operations with specs and positions
    read off the free-variable tuples.
    """
    if isinstance(phi, Top):
        return TRUTH
    if isinstance(phi, (Atom, Eq)):
        return atom_concept(canonical_atom_key(phi))
    if isinstance(phi, And):
        return conj(
            concept_of(phi.left),
            concept_of(phi.right),
            join_spec_for(phi.left, phi.right),
        )
    if isinstance(phi, Not):
        return neg(concept_of(phi.sub))
    if isinstance(phi, Exists):
        return exists(concept_of(phi.body), quantifier_position(phi.var, phi.body))
    raise TypeError(f"not a core formula: {phi!r}")


def render_concept(u: Concept) -> str:
    """Canonical prefix notation, e.g. conj{(2,3),(4,1)}(atom(p(v1)),...)."""
    if u.kind == "truth":
        return "truth"
    if u.kind == "id":
        return "id"
    if u.kind == "particular":
        return f"particular({u.payload[0]})"
    if u.kind == "atom":
        return f"atom({atom_key_text(u.payload[0])})"
    if u.kind == "conj":
        left, right, spec = u.payload
        pairs = ",".join(f"({i},{j})" for i, j in spec)
        return f"conj{{{pairs}}}({render_concept(left)}, {render_concept(right)})"
    if u.kind == "neg":
        return f"neg({render_concept(u.payload[0])})"
    sub, position = u.payload
    return f"exists{position}({render_concept(sub)})"


class Extensionalization:
    """The extension map of one world: concepts to relations.

    Identity always maps to the diagonal and the truth proposition to the
    arity-0 truth; particulars map to themselves (rigid objects).  Results
    are memoized per instance, which is safe because concepts are interned
    and worlds immutable.
    """

    def __init__(self, world: Interpretation):
        self.world = world
        self._memo: dict = {}

    def relation(self, u: Concept):
        hit = self._memo.get(u)
        if hit is None:
            hit = self._compute(u)
            self._memo[u] = hit
        return hit

    def _compute(self, u: Concept):
        if u.kind == "truth":
            return TRUE
        if u.kind == "id":
            return identity_relation(self.world.domain)
        if u.kind == "particular":
            return u.payload[0]
        if u.kind == "atom":
            key = u.payload[0]
            symbol = key[0]
            if symbol != IDENTITY and symbol not in self.world.signature.predicates:
                raise UnknownSymbolError(
                    f"atom pattern {atom_key_text(key)!r} outside this "
                    f"world's signature"
                )
            return extension(self.world, atom_from_key(key))
        if u.kind == "conj":
            left, right, spec = u.payload
            lrel = self.relation(left)
            rrel = self.relation(right)
            if spec and not _spec_valid(frozenset(spec), lrel.arity, rrel.arity):
                raise JoinSpecError(
                    f"spec {list(spec)} invalid for arities "
                    f"({lrel.arity},{rrel.arity})"
                )
            return natural_join(lrel, rrel, frozenset(spec))
        if u.kind == "neg":
            return complement(self.relation(u.payload[0]), self.world.domain)
        sub, position = u.payload
        return project_out(self.relation(sub), position)


def verify_diagram(phi: Formula, world: Interpretation) -> bool:
    """Meaning then extension equals direct extension, exactly."""
    via_concepts = Extensionalization(world).relation(concept_of(phi))
    direct = extension(world, phi)
    return via_concepts == direct


def intension(phi: Formula, ws: WorldSet) -> dict:
    """The map from each world (by canonical index) to phi's extension there."""
    return {index: extension(world, phi) for index, world in ws.indexed()}


def _check_same_tuple(phi: Formula, psi: Formula) -> None:
    if free_var_tuple(phi) != free_var_tuple(psi):
        raise TupleMismatchError(
            f"free-variable tuples differ: {free_var_tuple(phi)} "
            f"vs {free_var_tuple(psi)}"
        )


def intensionally_equal(phi: Formula, psi: Formula, ws: WorldSet) -> bool:
    """Equal extensions at every world of the set."""
    _check_same_tuple(phi, psi)
    return all(
        extension(world, phi) == extension(world, psi) for world in ws.worlds
    )


def diamond_intension(phi: Formula, ws: WorldSet) -> Relation:
    """The constant value of the possibility operator's intension: the
    union of phi's extensions across every world."""
    arity = len(free_var_tuple(phi))
    rows = set()
    for world in ws.worlds:
        rows |= extension(world, phi).tuples
    return Relation(arity, frozenset(rows))


def intensionally_equivalent(phi: Formula, psi: Formula, ws: WorldSet) -> bool:
    """Equal world-union extensions (equality of possibility intensions)."""
    _check_same_tuple(phi, psi)
    return diamond_intension(phi, ws) == diamond_intension(psi, ws)


def subconcept_extension(
    phi: Formula, position: int, constant_name: str, world: Interpretation
):
    """Both routes to the extension of phi with one variable pinned.

    Left: substitute the constant, take the concept, extensionalize.
    Right: filter the concept's relation on the pinned column, then project
    it away (or lift to a truth value when it was the only column).
    Returns (left, right, equal).
    """
    fv = free_var_tuple(phi)
    n = len(fv)
    if not 1 <= position <= n:
        raise PositionOutOfRangeError(
            f"position {position} outside 1..{n} for tuple {fv}"
        )
    if world.signature.functions.get(constant_name) != 0:
        raise UnknownSymbolError(f"{constant_name!r} is not a declared constant")
    h = Extensionalization(world)
    substituted = h.relation(
        concept_of(substitute(phi, fv[position - 1], App(constant_name)))
    )
    pinned = world.constant(constant_name)
    base = h.relation(concept_of(phi))
    filtered = Relation(
        n, frozenset(t for t in base.tuples if t[position - 1] == pinned)
    )
    if n >= 2:
        routed = project_out(filtered, position)
    else:
        routed = truth_lift(filtered)
    return substituted, routed, substituted == routed
