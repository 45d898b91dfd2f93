"""Tarskian semantics over a finite domain.

An interpretation fixes a domain, a relation per predicate and a total map
per function; the identity predicate is always the diagonal.  `satisfies`
is the plain recursive satisfaction relation (quantifiers search the
domain); `extension` maps a formula to the relation of satisfying
value-tuples under the formula's free-variable ordering, and is also
available as a compiled algebra expression whose evaluation goes through
the relational operators instead - the two routes must agree on every
formula, which is one of the theorems the test suite checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping

from . import kernel
from .errors import (
    ArityMismatchError,
    ElementNotInDomainError,
    PartialFunctionError,
    UnassignedVariableError,
    UnknownSymbolError,
)
from .relalg import (
    Relation,
    TRUE,
    complement,
    identity_relation,
    natural_join,
    project_out,
)
from .syntax import (
    And,
    Atom,
    Eq,
    Exists,
    Formula,
    Not,
    Signature,
    Term,
    Top,
    Var,
    free_var_tuple,
    is_element_literal,
    literal_element,
)

Assignment = Mapping[str, str]


@dataclass(eq=True)
class Interpretation:
    """One possible world: total tables for every declared symbol."""

    domain: tuple
    signature: Signature
    predicates: dict
    functions: dict

    @classmethod
    def make(cls, domain, signature: Signature, predicates=None, functions=None):
        dom = tuple(sorted(set(domain)))
        if not dom:
            raise ElementNotInDomainError("domain must be non-empty")
        preds = dict(predicates or {})
        fns = dict(functions or {})
        for name, arity in signature.predicates.items():
            rel = preds.get(name)
            if rel is None:
                raise UnknownSymbolError(f"no extension given for predicate {name!r}")
            if rel.arity != arity:
                raise ArityMismatchError(
                    f"extension of {name!r} has arity {rel.arity}, declared {arity}"
                )
            for t in rel.tuples:
                for e in t:
                    if e not in dom:
                        raise ElementNotInDomainError(
                            f"tuple {t!r} of {name!r} uses element {e!r} "
                            f"outside domain {dom}"
                        )
        for name in preds:
            if name not in signature.predicates:
                raise UnknownSymbolError(f"undeclared predicate {name!r}")
        for name, arity in signature.functions.items():
            graph = fns.get(name)
            if graph is None:
                raise UnknownSymbolError(f"no graph given for function {name!r}")
            expected = set(product(dom, repeat=arity))
            given = set(graph)
            if given != expected:
                missing = sorted(expected - given)
                extra = sorted(given - expected)
                if missing:
                    raise PartialFunctionError(
                        f"function {name!r} undefined on {missing[:3]}..."
                        if len(missing) > 3
                        else f"function {name!r} undefined on {missing}"
                    )
                raise ElementNotInDomainError(
                    f"function {name!r} defined on foreign tuples {extra}"
                )
            for args, value in graph.items():
                if value not in dom:
                    raise ElementNotInDomainError(
                        f"function {name!r} maps {args!r} to {value!r} "
                        f"outside domain {dom}"
                    )
        for name in fns:
            if name not in signature.functions:
                raise UnknownSymbolError(f"undeclared function {name!r}")
        return cls(dom, signature, preds, fns)

    def constant(self, name: str) -> str:
        return self.functions[name][()]


def eval_term(term: Term, interp: Interpretation, assignment: Assignment) -> str:
    """The unique value of a term under the assignment."""
    if isinstance(term, Var):
        try:
            return assignment[term.name]
        except KeyError:
            raise UnassignedVariableError(
                f"variable {term.name!r} has no assigned value"
            ) from None
    if is_element_literal(term):
        element = literal_element(term)
        if element not in interp.domain:
            raise ElementNotInDomainError(
                f"literal {term.fn!r} denotes no domain element"
            )
        return element
    graph = interp.functions.get(term.fn)
    if graph is None:
        raise UnknownSymbolError(f"uninterpreted function {term.fn!r}")
    args = tuple(eval_term(t, interp, assignment) for t in term.args)
    return graph[args]


def satisfies(interp: Interpretation, assignment: Assignment, phi: Formula) -> bool:
    """The inductive satisfaction relation; quantifiers search the domain."""
    if isinstance(phi, Atom):
        rel = interp.predicates.get(phi.pred)
        if rel is None:
            raise UnknownSymbolError(f"uninterpreted predicate {phi.pred!r}")
        values = tuple(eval_term(t, interp, assignment) for t in phi.args)
        return values in rel.tuples
    if isinstance(phi, Eq):
        return eval_term(phi.left, interp, assignment) == eval_term(
            phi.right, interp, assignment
        )
    if isinstance(phi, And):
        return satisfies(interp, assignment, phi.left) and satisfies(
            interp, assignment, phi.right
        )
    if isinstance(phi, Not):
        return not satisfies(interp, assignment, phi.sub)
    if isinstance(phi, Exists):
        for d in interp.domain:
            variant = dict(assignment)
            variant[phi.var] = d
            if satisfies(interp, variant, phi.body):
                return True
        return False
    return True  # Top


@lru_cache(maxsize=4096)
def _cached_program(phi: Formula, domain: tuple):
    return kernel.lower_formula(phi, domain)


def extension(interp: Interpretation, phi: Formula) -> Relation:
    """The relation of satisfying value-tuples, columns in free-var order."""
    program = _cached_program(phi, interp.domain)
    tables = kernel.lower_tables(interp, program)
    rows = kernel.eval_rows(program, tables)
    dom = program.domain
    return Relation(
        len(program.free_slots),
        frozenset(tuple(dom[i] for i in row) for row in rows),
    )


def truth(interp: Interpretation, phi: Formula) -> bool:
    """True iff satisfied by every assignment.

    For a sentence this is the usual notion; an open formula is true iff
    its extension is all of D^k.
    """
    ext = extension(interp, phi)
    if ext.arity == 0:
        return bool(ext.tuples)
    return len(ext.tuples) == len(interp.domain) ** ext.arity


# ---------------------------------------------------------------------------
# the algebra route: formulas compiled to relational expressions


@dataclass(frozen=True)
class TruthLeaf:
    pass


@dataclass(frozen=True)
class IdentityLeaf:
    pass


@dataclass(frozen=True)
class AtomLeaf:
    formula: Formula  # an Atom or Eq, evaluated directly against the tables


@dataclass(frozen=True)
class JoinNode:
    left: "AlgebraExpr"
    right: "AlgebraExpr"
    spec: frozenset


@dataclass(frozen=True)
class ComplementNode:
    sub: "AlgebraExpr"


@dataclass(frozen=True)
class ProjectNode:
    sub: "AlgebraExpr"
    position: int


AlgebraExpr = object


def join_spec_for(left: Formula, right: Formula) -> frozenset:
    """Column pairs joined when conjoining two formulas: shared free vars."""
    lt = free_var_tuple(left)
    rt = free_var_tuple(right)
    lpos = {v: i + 1 for i, v in enumerate(lt)}
    return frozenset((lpos[v], j + 1) for j, v in enumerate(rt) if v in lpos)


def quantifier_position(var: str, body: Formula) -> int:
    """1-based column of the quantified variable, 0 when it is not free."""
    fv = free_var_tuple(body)
    return fv.index(var) + 1 if var in fv else 0


def compile_to_algebra(phi: Formula) -> AlgebraExpr:
    """Lower a formula to a relational expression mirroring its shape.

    Evaluating the expression against any interpretation's base tables must
    give the same relation as `extension`; conjunction becomes a join whose
    spec is fixed by the free-variable tuples, negation a complement, and
    quantification a column projection.
    """
    if isinstance(phi, Top):
        return TruthLeaf()
    if isinstance(phi, Eq):
        if (
            isinstance(phi.left, Var)
            and isinstance(phi.right, Var)
            and phi.left.name != phi.right.name
        ):
            return IdentityLeaf()
        return AtomLeaf(phi)
    if isinstance(phi, Atom):
        return AtomLeaf(phi)
    if isinstance(phi, And):
        return JoinNode(
            compile_to_algebra(phi.left),
            compile_to_algebra(phi.right),
            join_spec_for(phi.left, phi.right),
        )
    if isinstance(phi, Not):
        return ComplementNode(compile_to_algebra(phi.sub))
    if isinstance(phi, Exists):
        return ProjectNode(
            compile_to_algebra(phi.body), quantifier_position(phi.var, phi.body)
        )
    raise TypeError(f"not a core formula: {phi!r}")


def atom_extension(interp: Interpretation, phi: Formula) -> Relation:
    """Extension of a single atom, by direct search over its free variables."""
    fv = free_var_tuple(phi)
    rows = []
    for values in product(interp.domain, repeat=len(fv)):
        if satisfies(interp, dict(zip(fv, values)), phi):
            rows.append(values)
    return Relation(len(fv), frozenset(rows))


def evaluate_algebra(expr: AlgebraExpr, interp: Interpretation) -> Relation:
    if isinstance(expr, TruthLeaf):
        return TRUE
    if isinstance(expr, IdentityLeaf):
        return identity_relation(interp.domain)
    if isinstance(expr, AtomLeaf):
        return atom_extension(interp, expr.formula)
    if isinstance(expr, JoinNode):
        return natural_join(
            evaluate_algebra(expr.left, interp),
            evaluate_algebra(expr.right, interp),
            expr.spec,
        )
    if isinstance(expr, ComplementNode):
        return complement(evaluate_algebra(expr.sub, interp), interp.domain)
    if isinstance(expr, ProjectNode):
        return project_out(evaluate_algebra(expr.sub, interp), expr.position)
    raise TypeError(f"not an algebra expression: {expr!r}")
