"""Seeded random corpora: formulas, sentences, relations, interpretations.

Everything is driven by one `random.Random` so runs are reproducible from a
seed.  Defaults follow the verification configuration: depth up to 5,
uniform connective choice, a three-variable pool, term depth up to 2.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Sequence

from .kripke import Diamond
from .relalg import Relation
from .syntax import (
    And,
    App,
    Atom,
    Eq,
    Exists,
    Formula,
    Not,
    Signature,
    TOP,
    Var,
    forall,
    free_var_tuple,
)
from .tarski import Interpretation

DEFAULT_VARIABLES = ("x", "y", "z")
DEFAULT_MAX_DEPTH = 5
DEFAULT_MAX_TERM_DEPTH = 2


def _as_rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


class FormulaGen:
    """Random core formulas over a signature, uniformly weighted connectives."""

    def __init__(
        self,
        seed_or_rng,
        sig: Signature,
        variables: Sequence[str] = DEFAULT_VARIABLES,
        max_depth: int = DEFAULT_MAX_DEPTH,
        max_term_depth: int = DEFAULT_MAX_TERM_DEPTH,
    ):
        self.rng = _as_rng(seed_or_rng)
        self.sig = sig
        self.variables = tuple(variables)
        self.max_depth = max_depth
        self.max_term_depth = max_term_depth
        self._fns = sorted(sig.functions)
        self._preds = sorted(sig.predicates)

    def term(self, depth: int = 0):
        kinds = ["var"]
        constants = [f for f in self._fns if self.sig.functions[f] == 0]
        if constants:
            kinds.append("const")
        proper = [f for f in self._fns if self.sig.functions[f] > 0]
        if proper and depth < self.max_term_depth:
            kinds.append("app")
        kind = self.rng.choice(kinds)
        if kind == "var":
            return Var(self.rng.choice(self.variables))
        if kind == "const":
            return App(self.rng.choice(constants), ())
        name = self.rng.choice(proper)
        arity = self.sig.functions[name]
        return App(name, tuple(self.term(depth + 1) for _ in range(arity)))

    def atom(self) -> Formula:
        kinds = []
        if self._preds:
            kinds.append("pred")
        kinds.append("eq")
        if self.rng.choice(kinds) == "pred":
            name = self.rng.choice(self._preds)
            arity = self.sig.predicates[name]
            return Atom(name, tuple(self.term() for _ in range(arity)))
        return Eq(self.term(), self.term())

    def formula(self, depth: int | None = None) -> Formula:
        if depth is None:
            depth = self.max_depth
        if depth <= 0:
            return self.atom() if self.rng.random() < 0.8 else TOP
        kind = self.rng.choice(["atom", "eq", "top", "and", "not", "exists"])
        if kind == "atom":
            return self.atom()
        if kind == "eq":
            return Eq(self.term(), self.term())
        if kind == "top":
            return TOP
        if kind == "and":
            return And(self.formula(depth - 1), self.formula(depth - 1))
        if kind == "not":
            return Not(self.formula(depth - 1))
        return Exists(self.rng.choice(self.variables), self.formula(depth - 1))

    def open_formula(self, min_free: int = 1) -> Formula:
        while True:
            phi = self.formula()
            if len(free_var_tuple(phi)) >= min_free:
                return phi

    def sentence(self) -> Formula:
        phi = self.formula()
        for name in reversed(free_var_tuple(phi)):
            if self.rng.random() < 0.5:
                phi = Exists(name, phi)
            else:
                phi = forall(name, phi)
        return phi

    def propositional(
        self,
        diamonds: Sequence[str] = (),
        vacuous_quantifiers: bool = False,
        depth: int | None = None,
    ):
        """Formulas over nullary predicates only, optionally with diamonds
        or vacuously quantified variables (never used inside atoms)."""
        if depth is None:
            depth = self.max_depth
        nullary = [p for p in self._preds if self.sig.predicates[p] == 0]
        if not nullary:
            raise ValueError("propositional corpus needs nullary predicates")
        kinds = ["atom", "top", "and", "not"]
        if diamonds:
            kinds.append("dia")
        if vacuous_quantifiers:
            kinds.append("exists")
        if depth <= 0:
            return Atom(self.rng.choice(nullary), ())
        kind = self.rng.choice(kinds)
        if kind == "atom":
            return Atom(self.rng.choice(nullary), ())
        if kind == "top":
            return TOP
        if kind == "and":
            return And(
                self.propositional(diamonds, vacuous_quantifiers, depth - 1),
                self.propositional(diamonds, vacuous_quantifiers, depth - 1),
            )
        if kind == "not":
            return Not(self.propositional(diamonds, vacuous_quantifiers, depth - 1))
        if kind == "dia":
            return Diamond(
                self.rng.choice(list(diamonds)),
                self.propositional(diamonds, vacuous_quantifiers, depth - 1),
            )
        return Exists(
            self.rng.choice(self.variables),
            self.propositional(diamonds, vacuous_quantifiers, depth - 1),
        )


def random_relation(rng, domain: Sequence[str], max_arity: int = 3) -> Relation:
    rng = _as_rng(rng)
    arity = rng.randint(0, max_arity)
    rows = [t for t in product(sorted(domain), repeat=arity) if rng.random() < 0.5]
    return Relation(arity, frozenset(rows))


def random_interpretation(rng, sig: Signature, domain: Sequence[str]) -> Interpretation:
    rng = _as_rng(rng)
    dom = tuple(sorted(set(domain)))
    predicates = {}
    for name, arity in sig.predicates.items():
        rows = [t for t in product(dom, repeat=arity) if rng.random() < 0.5]
        predicates[name] = Relation(arity, frozenset(rows))
    functions = {}
    for name, arity in sig.functions.items():
        functions[name] = {
            args: rng.choice(dom) for args in product(dom, repeat=arity)
        }
    return Interpretation.make(dom, sig, predicates, functions)
