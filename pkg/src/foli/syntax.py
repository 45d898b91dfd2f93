"""Core first-order syntax.

Terms are variables and applications (constants are nullary applications);
formulas are built from predicate atoms, identity atoms, conjunction,
negation, existential quantification, and the truth constant.  Everything
else (disjunction, implication, equivalence, universal and unique-existence
quantifiers) is expanded into this core at construction time, so the
semantic evaluators only ever see six node kinds.

All nodes are immutable and hashable; operations here are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .errors import (
    ArityMismatchError,
    CaptureError,
    MissingAssignmentError,
    NotAnAtomError,
    SyntaxDeclarationError,
    UnknownSymbolError,
)

#: The built-in identity predicate.  It is never declared in a signature.
IDENTITY = "="

#: Prefix of auto-generated constants denoting domain elements in ground
#: formulas.  The concrete grammar cannot produce identifiers with it.
ELEMENT_PREFIX = "@"

#: Names the grammar claims for itself; signatures may not declare them.
RESERVED_WORDS = frozenset(
    {"exists", "forall", "exists1", "true", "false", "pred", "fn", "axiom", "domain"}
)


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class App:
    """Function application; ``args == ()`` makes this a constant."""

    fn: str
    args: tuple["Term", ...] = ()

    def __repr__(self):
        if not self.args:
            return self.fn
        return f"{self.fn}({', '.join(map(repr, self.args))})"


Term = Union[Var, App]


def constant(name: str) -> App:
    return App(name, ())


def element_literal(element: str) -> App:
    """The auto-generated constant denoting a specific domain element."""
    return App(ELEMENT_PREFIX + element, ())


def is_element_literal(term: Term) -> bool:
    return isinstance(term, App) and term.fn.startswith(ELEMENT_PREFIX)


def literal_element(term: App) -> str:
    return term.fn[len(ELEMENT_PREFIX):]


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True, slots=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True, slots=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Top:
    pass


Formula = Union[Atom, Eq, And, Not, Exists, Top]

TOP = Top()
BOTTOM = Not(TOP)


def disjunction(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def implication(left: Formula, right: Formula) -> Formula:
    # left -> right expands to ~(left & ~right)
    return Not(And(left, Not(right)))


def equivalence(left: Formula, right: Formula) -> Formula:
    return And(implication(left, right), implication(right, left))


def forall(var: str, body: Formula) -> Formula:
    return Not(Exists(var, Not(body)))


def exists_unique(var: str, body: Formula) -> Formula:
    """There is exactly one witness: a witness exists and any two coincide."""
    other = fresh_variable(var, variables(body) | {var})
    both = And(body, substitute(body, var, Var(other)))
    unique = forall(var, forall(other, implication(both, Eq(Var(var), Var(other)))))
    return And(Exists(var, body), unique)


def fresh_variable(base: str, avoid: set[str]) -> str:
    candidate = base + "_"
    while candidate in avoid:
        candidate += "_"
    return candidate


# ---------------------------------------------------------------------------
# signatures


@dataclass
class Signature:
    """Declared predicate and function symbols with their arities.

    Nullary functions are constants; nullary predicates are propositional
    letters.  The identity predicate is built in and never declared.
    """

    predicates: dict[str, int]
    functions: dict[str, int]

    def __post_init__(self):
        seen: set[str] = set()
        for kind, table in (("pred", self.predicates), ("fn", self.functions)):
            for name, arity in table.items():
                if not _valid_symbol(name):
                    raise SyntaxDeclarationError(f"invalid symbol name {name!r}")
                if name in seen:
                    raise SyntaxDeclarationError(f"duplicate symbol {name!r}")
                if not isinstance(arity, int) or arity < 0:
                    raise SyntaxDeclarationError(
                        f"bad arity for {kind} {name!r}: {arity!r}"
                    )
                seen.add(name)

    @staticmethod
    def empty() -> "Signature":
        return Signature({}, {})

    def pred_arity(self, name: str) -> int:
        if name == IDENTITY:
            return 2
        return self.predicates[name]

    def fn_arity(self, name: str) -> int:
        return self.functions[name]

    def is_constant(self, name: str) -> bool:
        return self.functions.get(name) == 0


def _valid_symbol(name: str) -> bool:
    return (
        name.isidentifier()
        and name not in RESERVED_WORDS
        and name != IDENTITY
        and not name.startswith(ELEMENT_PREFIX)
    )


def check_formula(phi: Formula, sig: Signature) -> None:
    """Raise if an atom or application disagrees with the signature."""
    for sub in subformulas(phi):
        if isinstance(sub, Atom):
            if sub.pred not in sig.predicates:
                raise UnknownSymbolError(f"undeclared predicate {sub.pred!r}")
            if len(sub.args) != sig.predicates[sub.pred]:
                raise ArityMismatchError(
                    f"predicate {sub.pred} expects {sig.predicates[sub.pred]} "
                    f"arguments, got {len(sub.args)}"
                )
            for t in sub.args:
                _check_term(t, sig)
        elif isinstance(sub, Eq):
            _check_term(sub.left, sig)
            _check_term(sub.right, sig)


def _check_term(t: Term, sig: Signature) -> None:
    if isinstance(t, App) and not is_element_literal(t):
        if t.fn not in sig.functions:
            raise UnknownSymbolError(f"undeclared function {t.fn!r}")
        if len(t.args) != sig.functions[t.fn]:
            raise ArityMismatchError(
                f"function {t.fn} expects {sig.functions[t.fn]} arguments, "
                f"got {len(t.args)}"
            )
        for a in t.args:
            _check_term(a, sig)


# ---------------------------------------------------------------------------
# traversal and the free-variable tuple


def subformulas(phi: Formula) -> Iterator[Formula]:
    """Yield phi and every subformula, preorder, left to right."""
    stack = [phi]
    while stack:
        f = stack.pop()
        yield f
        if isinstance(f, And):
            stack.append(f.right)
            stack.append(f.left)
        elif isinstance(f, Not):
            stack.append(f.sub)
        elif isinstance(f, Exists):
            stack.append(f.body)


def term_variables(term: Term) -> set[str]:
    if isinstance(term, Var):
        return {term.name}
    out: set[str] = set()
    for a in term.args:
        out |= term_variables(a)
    return out


def free_var_tuple(phi: Formula) -> tuple[str, ...]:
    """Free variables ordered by leftmost free occurrence in the formula.

    This ordering is what fixes the column order of a formula's extension,
    so it must be deterministic and is recomputed on the written formula.
    """
    order: list[str] = []

    def scan_term(t: Term, bound: frozenset[str]) -> None:
        if isinstance(t, Var):
            if t.name not in bound and t.name not in order:
                order.append(t.name)
        else:
            for a in t.args:
                scan_term(a, bound)

    def walk(f: Formula, bound: frozenset[str]) -> None:
        if isinstance(f, Atom):
            for t in f.args:
                scan_term(t, bound)
        elif isinstance(f, Eq):
            scan_term(f.left, bound)
            scan_term(f.right, bound)
        elif isinstance(f, And):
            walk(f.left, bound)
            walk(f.right, bound)
        elif isinstance(f, Not):
            walk(f.sub, bound)
        elif isinstance(f, Exists):
            walk(f.body, bound | {f.var})

    walk(phi, frozenset())
    return tuple(order)


def variables(phi: Formula) -> set[str]:
    """All variable names occurring in phi, free or bound, binders included."""
    out: set[str] = set()
    for sub in subformulas(phi):
        if isinstance(sub, Atom):
            for t in sub.args:
                out |= term_variables(t)
        elif isinstance(sub, Eq):
            out |= term_variables(sub.left) | term_variables(sub.right)
        elif isinstance(sub, Exists):
            out.add(sub.var)
    return out


def is_sentence(phi: Formula) -> bool:
    return not free_var_tuple(phi)


# ---------------------------------------------------------------------------
# substitution and grounding


def substitute(phi: Formula, name: str, replacement: Term) -> Formula:
    """Replace every free occurrence of ``name`` by ``replacement``.

    Raises CaptureError if a replaced occurrence sits under a quantifier
    binding one of the replacement's variables.
    """
    tvars = term_variables(replacement)

    def sub_term(t: Term, bound: frozenset[str]) -> Term:
        if isinstance(t, Var):
            if t.name != name:
                return t
            captured = bound & tvars
            if captured:
                raise CaptureError(
                    f"substituting {replacement!r} for {name} would capture "
                    f"{sorted(captured)}"
                )
            return replacement
        if any(name in term_variables(a) for a in t.args):
            return App(t.fn, tuple(sub_term(a, bound) for a in t.args))
        return t

    def walk(f: Formula, bound: frozenset[str]) -> Formula:
        if isinstance(f, Atom):
            return Atom(f.pred, tuple(sub_term(t, bound) for t in f.args))
        if isinstance(f, Eq):
            return Eq(sub_term(f.left, bound), sub_term(f.right, bound))
        if isinstance(f, And):
            return And(walk(f.left, bound), walk(f.right, bound))
        if isinstance(f, Not):
            return Not(walk(f.sub, bound))
        if isinstance(f, Exists):
            if f.var == name:
                return f
            return Exists(f.var, walk(f.body, bound | {f.var}))
        return f

    if name not in free_var_tuple(phi):
        return phi
    return walk(phi, frozenset())


def ground(phi: Formula, assignment: Mapping[str, str]) -> Formula:
    """The sentence phi/g: every free variable replaced by its element literal."""
    free = free_var_tuple(phi)
    missing = [v for v in free if v not in assignment]
    if missing:
        raise MissingAssignmentError(f"no value for variable(s) {missing}")
    out = phi
    for v in free:
        out = substitute(out, v, element_literal(assignment[v]))
    return out


# ---------------------------------------------------------------------------
# canonical atom keys

AtomKey = tuple


def canonical_atom_key(phi: Formula) -> AtomKey:
    """Key identifying an atom pattern up to injective variable renaming.

    Variables are renumbered by first occurrence; constants and function
    structure are kept verbatim, so p(x,y) and p(u,v) share a key while
    p(x,x) does not.
    """
    if not isinstance(phi, (Atom, Eq)):
        raise NotAnAtomError(f"not an atom: {phi!r}")
    numbering: dict[str, int] = {}

    def skel(t: Term):
        if isinstance(t, Var):
            idx = numbering.setdefault(t.name, len(numbering) + 1)
            return ("v", idx)
        return ("f", t.fn, tuple(skel(a) for a in t.args))

    if isinstance(phi, Atom):
        return (phi.pred, tuple(skel(t) for t in phi.args))
    return (IDENTITY, (skel(phi.left), skel(phi.right)))


def atom_key_arity(key: AtomKey) -> int:
    """Number of distinct variables in the key = arity of its concept."""
    seen: set[int] = set()

    def scan(s):
        if s[0] == "v":
            seen.add(s[1])
        else:
            for a in s[2]:
                scan(a)

    for s in key[1]:
        scan(s)
    return len(seen)


def atom_from_key(key: AtomKey) -> Formula:
    """Rebuild a representative atom (variables named v1, v2, ...)."""

    def build(s) -> Term:
        if s[0] == "v":
            return Var(f"v{s[1]}")
        return App(s[1], tuple(build(a) for a in s[2]))

    symbol, skeletons = key
    terms = tuple(build(s) for s in skeletons)
    if symbol == IDENTITY:
        return Eq(terms[0], terms[1])
    return Atom(symbol, terms)


def atom_key_text(key: AtomKey) -> str:
    """Readable one-line form of a key, used in concept rendering."""

    def text(s) -> str:
        if s[0] == "v":
            return f"v{s[1]}"
        if not s[2]:
            return s[1]
        return f"{s[1]}({','.join(text(a) for a in s[2])})"

    symbol, skeletons = key
    if symbol == IDENTITY:
        return f"{text(skeletons[0])}={text(skeletons[1])}"
    if not skeletons:
        return symbol
    return f"{symbol}({','.join(text(s) for s in skeletons)})"
