"""Kripke semantics: assignment-worlds for quantifiers, generalized frames,
and the intensionally enriched evaluator over a world set.

Three evaluators live here.

* `holds_at` works on an AssignmentModel, where the possible worlds are the
  variable assignments themselves and each quantifier is a diamond whose
  accessibility relates assignments differing at most on its variable.
  This is the modal reading of plain first-order quantification; the
  adequacy theorem says it agrees with Tarskian truth.

* `frame_holds_at` is the generalized multi-modal evaluator over explicit
  frames: named diamonds, per-world interpretation tables, an assignment
  carried along unchanged.  It subsumes the propositional case (nullary
  predicates, empty assignment) and the quantifier case via frames whose
  worlds carry assignments.

* `enriched_holds_at` evaluates over a WorldSet: each model of the
  assumption set is one explicit world, quantifiers stay first-order, and
  extra named diamonds move between worlds (the default relation "dia" is
  total, the S5 possibility operator).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Union

from .errors import (
    PreconditionError,
    UndeclaredModalityError,
    VariableOutsideModelError,
)
from .relalg import Relation
from .report import Report
from .syntax import (
    And,
    Atom,
    Eq,
    Exists,
    Formula,
    Not,
    free_var_tuple,
    ground,
    variables,
)
from .tarski import Interpretation, satisfies
from .worlds import WorldSet


# ---------------------------------------------------------------------------
# modal formulas: the core syntax plus named diamonds


@dataclass(frozen=True)
class Diamond:
    name: str
    body: "ModalFormula"


ModalFormula = Union[Formula, Diamond]


def box(name: str, body: ModalFormula) -> ModalFormula:
    return Not(Diamond(name, Not(body)))


def modal_free_var_tuple(phi: ModalFormula) -> tuple:
    """Leftmost-occurrence free-variable tuple, transparent to diamonds."""
    order: list[str] = []

    def walk(f, bound):
        if isinstance(f, Diamond):
            walk(f.body, bound)
        elif isinstance(f, And):
            walk(f.left, bound)
            walk(f.right, bound)
        elif isinstance(f, Not):
            walk(f.sub, bound)
        elif isinstance(f, Exists):
            walk(f.body, bound | {f.var})
        elif isinstance(f, (Atom, Eq)):
            for v in free_var_tuple(f):
                if v not in bound and v not in order:
                    order.append(v)

    walk(phi, frozenset())
    return tuple(order)


def strip_modalities(phi: ModalFormula) -> Formula:
    """Erase every diamond; used by the actual-world reduction check."""
    if isinstance(phi, Diamond):
        return strip_modalities(phi.body)
    if isinstance(phi, And):
        return And(strip_modalities(phi.left), strip_modalities(phi.right))
    if isinstance(phi, Not):
        return Not(strip_modalities(phi.sub))
    if isinstance(phi, Exists):
        return Exists(phi.var, strip_modalities(phi.body))
    return phi


def strip_quantifiers(phi: Formula) -> Formula:
    """Erase every quantifier; used by the empty-vocabulary reduction check."""
    if isinstance(phi, Exists):
        return strip_quantifiers(phi.body)
    if isinstance(phi, And):
        return And(strip_quantifiers(phi.left), strip_quantifiers(phi.right))
    if isinstance(phi, Not):
        return Not(strip_quantifiers(phi.sub))
    return phi


def quantifiers_as_diamonds(phi: Formula) -> ModalFormula:
    """Rewrite each (exists x) into a diamond named after its variable."""
    if isinstance(phi, Exists):
        return Diamond(phi.var, quantifiers_as_diamonds(phi.body))
    if isinstance(phi, And):
        return And(
            quantifiers_as_diamonds(phi.left), quantifiers_as_diamonds(phi.right)
        )
    if isinstance(phi, Not):
        return Not(quantifiers_as_diamonds(phi.sub))
    return phi


# ---------------------------------------------------------------------------
# assignment-worlds: the modal reading of quantification


@dataclass
class AssignmentModel:
    """A rigid Kripke model whose worlds are assignments of the variables.

    Accessibility for variable x relates assignments that agree everywhere
    except possibly at x, an equivalence relation (the S5 pattern).  Tables
    are those of one interpretation, identical at every world.
    """

    base: Interpretation
    variables: tuple

    def worlds(self) -> Iterator[dict]:
        for values in product(self.base.domain, repeat=len(self.variables)):
            yield dict(zip(self.variables, values))

    def world_count(self) -> int:
        return len(self.base.domain) ** len(self.variables)


def assignment_model(interp: Interpretation, names) -> AssignmentModel:
    """Build the assignment-worlds model over the given variable set."""
    return AssignmentModel(interp, tuple(sorted(set(names))))


def base_interpretation(model: AssignmentModel) -> Interpretation:
    """Inverse of assignment_model up to the variable set."""
    return model.base


def accessibility(model: AssignmentModel, var: str) -> frozenset:
    """The relation for (exists var), materialized over world value-tuples."""
    if var not in model.variables:
        raise VariableOutsideModelError(f"variable {var!r} not carried by model")
    pos = model.variables.index(var)
    worlds = [tuple(w[v] for v in model.variables) for w in model.worlds()]
    pairs = set()
    for w1 in worlds:
        for w2 in worlds:
            if all(w1[i] == w2[i] for i in range(len(w1)) if i != pos):
                pairs.add((w1, w2))
    return frozenset(pairs)


class _AssignmentEvaluator:
    """Shared-cache evaluator: results keyed by (subformula, world values)."""

    def __init__(self, model: AssignmentModel):
        self.model = model
        self.cache: dict = {}

    def run(self, world: Mapping[str, str], phi: Formula) -> bool:
        # keyed structurally: formulas are frozen values, and fresh ground
        # instances of one pattern then share entries
        key = (phi, tuple(world[v] for v in self.model.variables))
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        value = self._eval(world, phi)
        self.cache[key] = value
        return value

    def _eval(self, world, phi) -> bool:
        base = self.model.base
        if isinstance(phi, (Atom, Eq)):
            return satisfies(base, world, phi)
        if isinstance(phi, And):
            return self.run(world, phi.left) and self.run(world, phi.right)
        if isinstance(phi, Not):
            return not self.run(world, phi.sub)
        if isinstance(phi, Exists):
            # search the accessibility class of this world: vary the
            # quantified variable, keep every other coordinate
            if phi.var not in self.model.variables:
                raise VariableOutsideModelError(
                    f"variable {phi.var!r} not carried by model"
                )
            variant = dict(world)
            for d in base.domain:
                variant[phi.var] = d
                if self.run(variant, phi.body):
                    return True
            return False
        return True  # Top


def _check_model_covers(model: AssignmentModel, phi: Formula) -> None:
    extra = variables(phi) - set(model.variables)
    if extra:
        raise VariableOutsideModelError(
            f"formula uses variables outside the model: {sorted(extra)}"
        )


def holds_at(model: AssignmentModel, world: Mapping[str, str], phi: Formula) -> bool:
    """Satisfaction at one assignment-world."""
    _check_model_covers(model, phi)
    return _AssignmentEvaluator(model).run(world, phi)


def holds_everywhere(model: AssignmentModel, phi: Formula) -> bool:
    """Truth in the assignment-worlds model: satisfied at every world."""
    _check_model_covers(model, phi)
    evaluator = _AssignmentEvaluator(model)
    return all(evaluator.run(w, phi) for w in model.worlds())


def world_extension(
    model: AssignmentModel, world: Mapping[str, str], phi: Formula
) -> Relation:
    """Extension of phi computed inside one world: the value-tuples whose
    ground instance holds there.  The intension-constancy property says
    this does not depend on the world and equals the Tarskian extension."""
    _check_model_covers(model, phi)
    fv = free_var_tuple(phi)
    evaluator = _AssignmentEvaluator(model)
    rows = []
    for values in product(model.base.domain, repeat=len(fv)):
        grounded = ground(phi, dict(zip(fv, values)))
        if evaluator.run(world, grounded):
            rows.append(values)
    return Relation(len(fv), frozenset(rows))


# ---------------------------------------------------------------------------
# generalized frames


@dataclass
class KripkeFrame:
    """Explicit worlds with named accessibility relations.

    Worlds may carry their own variable assignments (`assignments`), which
    shadow the ambient assignment during atom evaluation; that is how the
    quantifier-as-diamond frames are expressed.
    """

    worlds: tuple
    relations: dict
    assignments: dict | None = None

    def __post_init__(self):
        world_set = set(self.worlds)
        if len(world_set) != len(self.worlds):
            raise PreconditionError("duplicate world names in frame")
        for name, pairs in self.relations.items():
            for w1, w2 in pairs:
                if w1 not in world_set or w2 not in world_set:
                    raise PreconditionError(
                        f"relation {name!r} mentions unknown world ({w1!r},{w2!r})"
                    )


def frame_holds_at(
    frame: KripkeFrame,
    tables: Mapping[str, Interpretation],
    world,
    assignment: Mapping[str, str],
    phi: ModalFormula,
) -> bool:
    """The generalized multi-modal satisfaction relation.

    Atoms read the tables of the current world; diamonds follow their named
    relation.  The language here is quantifier-free (quantifiers belong to
    the assignment-worlds reading; encode them as diamonds first).
    """
    if isinstance(phi, (Atom, Eq)):
        local = frame.assignments.get(world, {}) if frame.assignments else {}
        effective = {**assignment, **local}
        return satisfies(tables[world], effective, phi)
    if isinstance(phi, And):
        return frame_holds_at(
            frame, tables, world, assignment, phi.left
        ) and frame_holds_at(frame, tables, world, assignment, phi.right)
    if isinstance(phi, Not):
        return not frame_holds_at(frame, tables, world, assignment, phi.sub)
    if isinstance(phi, Diamond):
        pairs = frame.relations.get(phi.name)
        if pairs is None:
            raise UndeclaredModalityError(
                f"no accessibility relation named {phi.name!r}"
            )
        return any(
            frame_holds_at(frame, tables, w2, assignment, phi.body)
            for (w1, w2) in pairs
            if w1 == world
        )
    if isinstance(phi, Exists):
        raise PreconditionError(
            "the generalized evaluator takes quantifier-free modal formulas; "
            "rewrite quantifiers with quantifiers_as_diamonds over an "
            "assignment frame"
        )
    return True  # Top


def is_rigid(frame: KripkeFrame, tables: Mapping[str, Interpretation]) -> bool:
    """All worlds share identical tables (the Kripke-model condition)."""
    interps = [tables[w] for w in frame.worlds]
    return all(m == interps[0] for m in interps[1:])


def assignment_frame(model: AssignmentModel):
    """Express an AssignmentModel as an explicit frame plus tables.

    World names are the assignment value-tuples rendered as text; each
    variable contributes one relation named after itself.
    """
    var_order = model.variables
    value_tuples = list(product(model.base.domain, repeat=len(var_order)))
    names = ["g(" + ",".join(values) + ")" for values in value_tuples]
    assignments = {
        name: dict(zip(var_order, values))
        for name, values in zip(names, value_tuples)
    }
    relations = {}
    for pos, var in enumerate(var_order):
        pairs = set()
        for n1, t1 in zip(names, value_tuples):
            for n2, t2 in zip(names, value_tuples):
                if all(t1[i] == t2[i] for i in range(len(t1)) if i != pos):
                    pairs.add((n1, n2))
        relations[var] = frozenset(pairs)
    frame = KripkeFrame(tuple(names), relations, assignments)
    tables = {name: model.base for name in names}
    return frame, tables


# ---------------------------------------------------------------------------
# the enriched evaluator over a world set


def total_relation(ws: WorldSet) -> frozenset:
    return frozenset(
        (i, j) for i in range(len(ws)) for j in range(len(ws))
    )


def default_world_relations(ws: WorldSet) -> dict:
    """The built-in S5 possibility operator over the whole world set."""
    return {"dia": total_relation(ws)}


def world_relations_from_frame(ws: WorldSet, frame: KripkeFrame) -> dict:
    """Rebase a frame's relations onto a world set by canonical labels.

    Frame worlds must be labels of the set (w0, w1, ...); the result maps
    each relation name to position pairs usable by the enriched evaluator,
    with the built-in "dia" still available unless shadowed.
    """
    label_to_pos = {f"w{index}": pos for pos, index in enumerate(ws.indices)}
    out = default_world_relations(ws)
    for name, pairs in frame.relations.items():
        rebased = set()
        for w1, w2 in pairs:
            if w1 not in label_to_pos or w2 not in label_to_pos:
                raise PreconditionError(
                    f"frame world ({w1!r},{w2!r}) is not a label of this "
                    f"world set"
                )
            rebased.add((label_to_pos[w1], label_to_pos[w2]))
        out[name] = frozenset(rebased)
    return out


def enriched_holds_at(
    ws: WorldSet,
    position: int,
    assignment: Mapping[str, str],
    phi: ModalFormula,
    relations: Mapping[str, frozenset] | None = None,
    inner_frame: KripkeFrame | None = None,
    inner_tables: Mapping[str, Interpretation] | None = None,
    inner_world=None,
) -> bool:
    """Satisfaction at a generalized world (model, inner world, assignment).

    Atoms read the tables of the world-set member (they do not depend on
    the inner world: world-set members interpret every symbol rigidly).
    Quantifiers vary the assignment; diamonds naming an inner-frame
    relation move the inner world; other diamonds move between world-set
    members, the name "dia" defaulting to the total relation.
    """
    world = ws.worlds[position]
    if isinstance(phi, (Atom, Eq)):
        return satisfies(world, assignment, phi)
    if isinstance(phi, And):
        return enriched_holds_at(
            ws, position, assignment, phi.left, relations, inner_frame,
            inner_tables, inner_world,
        ) and enriched_holds_at(
            ws, position, assignment, phi.right, relations, inner_frame,
            inner_tables, inner_world,
        )
    if isinstance(phi, Not):
        return not enriched_holds_at(
            ws, position, assignment, phi.sub, relations, inner_frame,
            inner_tables, inner_world,
        )
    if isinstance(phi, Exists):
        variant = dict(assignment)
        for d in world.domain:
            variant[phi.var] = d
            if enriched_holds_at(
                ws, position, variant, phi.body, relations, inner_frame,
                inner_tables, inner_world,
            ):
                return True
        return False
    if isinstance(phi, Diamond):
        if inner_frame is not None and phi.name in inner_frame.relations:
            pairs = inner_frame.relations[phi.name]
            return any(
                enriched_holds_at(
                    ws, position, assignment, phi.body, relations,
                    inner_frame, inner_tables, u2,
                )
                for (u1, u2) in pairs
                if u1 == inner_world
            )
        table = relations if relations is not None else default_world_relations(ws)
        pairs = table.get(phi.name)
        if pairs is None:
            raise UndeclaredModalityError(
                f"no accessibility relation named {phi.name!r}"
            )
        return any(
            enriched_holds_at(
                ws, p2, assignment, phi.body, relations, inner_frame,
                inner_tables, inner_world,
            )
            for (p1, p2) in pairs
            if p1 == position
        )
    return True  # Top


def enriched_true(
    ws: WorldSet,
    phi: ModalFormula,
    relations: Mapping[str, frozenset] | None = None,
) -> bool:
    """Truth over all generalized worlds; vacuous on an empty world set."""
    fv = modal_free_var_tuple(phi)
    for position in range(len(ws)):
        domain = ws.worlds[position].domain
        for values in product(domain, repeat=len(fv)):
            if not enriched_holds_at(
                ws, position, dict(zip(fv, values)), phi, relations
            ):
                return False
    return True


def enriched_world_relation(
    ws: WorldSet,
    position: int,
    phi: ModalFormula,
    relations: Mapping[str, frozenset] | None = None,
) -> Relation:
    """Per-world extension of a modal formula under the enriched semantics."""
    fv = modal_free_var_tuple(phi)
    domain = ws.worlds[position].domain
    rows = []
    for values in product(domain, repeat=len(fv)):
        if enriched_holds_at(ws, position, dict(zip(fv, values)), phi, relations):
            rows.append(values)
    return Relation(len(fv), frozenset(rows))


# ---------------------------------------------------------------------------
# the reduction checks


def reduction_check(kind: str, corpus, *, frame=None, tables=None, interp=None):
    """Check that a degenerate modal setting collapses to plain evaluation.

    kind "actual-world": a one-world reflexive propositional frame; every
    diamond acts as the identity, so modal evaluation must agree with the
    diamond-stripped formula evaluated classically.

    kind "empty-vocabulary": only nullary predicates and no functions; the
    assignment-worlds model over a formula's (necessarily vacuous)
    quantified variables must agree, at every world, with the
    quantifier-stripped formula evaluated classically.
    """
    report = Report(command=f"reduction {kind}")
    if kind == "actual-world":
        if frame is None or tables is None:
            raise PreconditionError("actual-world reduction needs frame and tables")
        if len(frame.worlds) != 1:
            raise PreconditionError("actual-world reduction needs exactly one world")
        hub = frame.worlds[0]
        loop = frozenset({(hub, hub)})
        for name, pairs in frame.relations.items():
            if pairs != loop:
                raise PreconditionError(
                    f"relation {name!r} must be the reflexive loop on {hub!r}"
                )
        for i, phi in enumerate(corpus):
            modal = frame_holds_at(frame, tables, hub, {}, phi)
            plain = satisfies(tables[hub], {}, strip_modalities(phi))
            report.add(
                f"formula-{i}",
                modal == plain,
                detail=f"modal={modal} plain={plain}",
            )
    elif kind == "empty-vocabulary":
        if interp is None:
            raise PreconditionError(
                "empty-vocabulary reduction needs an interpretation"
            )
        sig = interp.signature
        if any(arity != 0 for arity in sig.predicates.values()) or sig.functions:
            raise PreconditionError(
                "empty-vocabulary reduction needs a purely propositional signature"
            )
        for i, phi in enumerate(corpus):
            model = assignment_model(interp, variables(phi))
            plain = satisfies(interp, {}, strip_quantifiers(phi))
            agree = all(
                holds_at(model, w, phi) == plain for w in model.worlds()
            )
            report.add(f"formula-{i}", agree, detail=f"plain={plain}")
    else:
        raise PreconditionError(f"unknown reduction kind {kind!r}")
    report.counts["formulas"] = len(report.checks)
    return report
