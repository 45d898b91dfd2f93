"""Enumeration of all interpretations over a finite signature and domain.

This materializes the quantification "for every interpretation" at desk
scale: consequence here is always relative to one fixed finite signature
and domain, not full first-order consequence.  The enumeration order is
canonical and reproducible: symbols in declaration order (predicates before
functions, first symbol most significant), each predicate extension runs
through a binary counter over its lexicographically sorted tuple list (bit
i of the counter is tuple i, least significant bit first), and each
function through a base-|D| counter over its sorted argument tuples.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .errors import GuardExceededError, OpenFormulaError
from .relalg import Relation
from .syntax import Formula, Signature, check_formula, free_var_tuple
from .tarski import Interpretation, satisfies, truth

DEFAULT_GUARD = 10**6

#: Environment variable overriding the default enumeration guard.
GUARD_ENV_VAR = "FOLI_GUARD"


def guard_limit(explicit=None) -> int:
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(GUARD_ENV_VAR)
    return int(env) if env else DEFAULT_GUARD


def space_size(sig: Signature, domain: Sequence[str]) -> int:
    """Number of interpretations of the signature over the domain."""
    n = len(set(domain))
    count = 1
    for arity in sig.predicates.values():
        count *= 2 ** (n**arity)
    for arity in sig.functions.values():
        count *= n ** (n**arity)
    return count


def enumerate_interpretations(
    sig: Signature, domain: Sequence[str], guard=None
) -> Iterator[Interpretation]:
    """Every interpretation exactly once, in canonical order."""
    dom = tuple(sorted(set(domain)))
    limit = guard_limit(guard)
    count = space_size(sig, dom)
    if count > limit:
        raise GuardExceededError(count, limit)

    pred_choices = []
    for name, arity in sig.predicates.items():
        tuples = sorted(product(dom, repeat=arity))
        pred_choices.append((name, arity, tuples))
    fn_choices = []
    for name, arity in sig.functions.items():
        args = sorted(product(dom, repeat=arity))
        fn_choices.append((name, args))

    pred_ranges = [range(2 ** len(t)) for _, _, t in pred_choices]
    fn_ranges = [range(len(dom) ** len(args)) for _, args in fn_choices]

    for masks in product(*pred_ranges, *fn_ranges):
        predicates = {}
        for (name, arity, tuples), mask in zip(pred_choices, masks):
            rows = frozenset(
                tuples[i] for i in range(len(tuples)) if mask >> i & 1
            )
            predicates[name] = Relation(arity, rows)
        functions = {}
        for (name, args), mask in zip(fn_choices, masks[len(pred_choices):]):
            graph = {}
            for i, arg in enumerate(args):
                digit = (mask // len(dom) ** i) % len(dom)
                graph[arg] = dom[digit]
            functions[name] = graph
        yield Interpretation.make(dom, sig, predicates, functions)


@dataclass
class WorldSet:
    """The models of a sentence set, tagged with canonical world indices."""

    signature: Signature
    domain: tuple
    gamma: tuple
    worlds: tuple
    indices: tuple
    total: int

    def __len__(self) -> int:
        return len(self.worlds)

    def __iter__(self):
        return iter(self.worlds)

    def indexed(self):
        return zip(self.indices, self.worlds)

    def label(self, position: int) -> str:
        return f"w{self.indices[position]}"


def models_of(
    gamma: Sequence[Formula], sig: Signature, domain: Sequence[str], guard=None
) -> WorldSet:
    """Filter the full enumeration down to the models of every sentence."""
    gamma = tuple(gamma)
    for phi in gamma:
        check_formula(phi, sig)
        fv = free_var_tuple(phi)
        if fv:
            raise OpenFormulaError(
                f"assumption has free variables {fv}; sentences required"
            )
    dom = tuple(sorted(set(domain)))
    worlds = []
    indices = []
    for index, interp in enumerate(
        enumerate_interpretations(sig, dom, guard=guard)
    ):
        if all(truth(interp, phi) for phi in gamma):
            worlds.append(interp)
            indices.append(index)
    return WorldSet(
        signature=sig,
        domain=dom,
        gamma=gamma,
        worlds=tuple(worlds),
        indices=tuple(indices),
        total=space_size(sig, dom),
    )


def entails(
    gamma: Sequence[Formula],
    phi: Formula,
    sig: Signature,
    domain: Sequence[str],
    guard=None,
) -> bool:
    """Logical consequence over the fixed world space (the global inference)."""
    return find_countermodel(gamma, phi, sig, domain, guard=guard) is None


def find_countermodel(
    gamma: Sequence[Formula],
    phi: Formula,
    sig: Signature,
    domain: Sequence[str],
    guard=None,
):
    """First model of gamma falsifying phi, as (canonical index, world)."""
    check_formula(phi, sig)
    ws = models_of(gamma, sig, domain, guard=guard)
    for index, world in ws.indexed():
        if not truth(world, phi):
            return index, world
    return None


def locally_infers(
    gamma: Sequence[Formula], phi: Formula, world: Interpretation
) -> bool:
    """Inference inside one world: every assignment satisfying all of gamma
    also satisfies phi.  For sentences this reduces to: if the world models
    gamma then phi is true in it, vacuously true otherwise."""
    names = set()
    for psi in gamma:
        names.update(free_var_tuple(psi))
    names.update(free_var_tuple(phi))
    order = sorted(names)
    for values in product(world.domain, repeat=len(order)):
        g = dict(zip(order, values))
        if all(satisfies(world, g, psi) for psi in gamma) and not satisfies(
            world, g, phi
        ):
            return False
    return True
