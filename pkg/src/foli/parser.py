"""Concrete text syntax.

Formula grammar (whitespace-insensitive, comments start with ``#``):

    formula := quant | iff
    quant   := ("exists" | "forall" | "exists1") IDENT "." formula
    iff     := imp ("<->" imp)*
    imp     := or ("->" or)*          (right associative)
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | "(" formula ")" | atom | "true" | "false"
    atom    := IDENT "(" term ("," term)* ")" | term "=" term
             | IDENT                  (a declared arity-0 predicate)
    term    := IDENT | IDENT "(" term ("," term)* ")"

Derived connectives are expanded at parse time, so the result is always a
core formula.  Undeclared bare identifiers in term position are variables;
declared arity-0 functions are constants.

File formats: ``.sig`` holds ``pred name/arity;`` / ``fn name/arity;``
declarations, ``.fol`` holds declarations plus named ``axiom`` sentences
and an optional ``domain`` line, ``.model`` and ``.frame`` are JSON (with
``#`` comment lines allowed).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    ArityMismatchError,
    ModelFormatError,
    OpenFormulaError,
    ParseError,
    SyntaxDeclarationError,
    UnknownSymbolError,
)
from .kripke import KripkeFrame
from .relalg import Relation
from .syntax import (
    And,
    App,
    Atom,
    BOTTOM,
    Eq,
    Exists,
    Formula,
    Not,
    RESERVED_WORDS,
    Signature,
    TOP,
    Term,
    Top,
    Var,
    disjunction,
    equivalence,
    exists_unique,
    forall,
    free_var_tuple,
    implication,
    is_element_literal,
    literal_element,
)
from .tarski import Interpretation

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><->|->|[()~&|=.,])"
    r"|(?P<bad>\S))"
)


@dataclass
class _Token:
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    for lineno, line in enumerate(text.splitlines() or [""], start=1):
        if line.lstrip().startswith("#"):
            continue
        pos = 0
        while pos < len(line):
            m = _TOKEN_RE.match(line, pos)
            if m is None or m.end() == pos:
                break
            if m.group("bad"):
                raise ParseError(
                    f"unexpected character {m.group('bad')!r}",
                    lineno,
                    m.start("bad") + 1,
                )
            word = m.group("ident") or m.group("op")
            start = m.start("ident") if m.group("ident") else m.start("op")
            tokens.append(_Token(word, lineno, start + 1))
            pos = m.end()
    return tokens


class _FormulaParser:
    def __init__(self, tokens: list[_Token], sig: Signature):
        self.tokens = tokens
        self.sig = sig
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos].text if self.pos < len(self.tokens) else None

    def where(self):
        if self.pos < len(self.tokens):
            t = self.tokens[self.pos]
            return t.line, t.column
        if self.tokens:
            t = self.tokens[-1]
            return t.line, t.column + len(t.text)
        return 1, 1

    def fail(self, message: str):
        line, column = self.where()
        raise ParseError(message, line, column)

    def take(self, expected: str | None = None) -> str:
        word = self.peek()
        if word is None:
            self.fail("unexpected end of input")
        if expected is not None and word != expected:
            self.fail(f"expected {expected!r}, found {word!r}")
        self.pos += 1
        return word

    # grammar rules, lowest precedence first

    def formula(self) -> Formula:
        if self.peek() in ("exists", "forall", "exists1"):
            return self.quantified()
        return self.iff()

    def quantified(self) -> Formula:
        keyword = self.take()
        name = self.take()
        if not name.isidentifier() or name in RESERVED_WORDS:
            self.fail(f"expected a variable name after {keyword!r}")
        if name in self.sig.predicates or name in self.sig.functions:
            self.fail(f"quantified name {name!r} is a declared symbol")
        self.take(".")
        body = self.formula()
        if keyword == "exists":
            return Exists(name, body)
        if keyword == "forall":
            return forall(name, body)
        return exists_unique(name, body)

    def iff(self) -> Formula:
        out = self.imp()
        while self.peek() == "<->":
            self.take()
            out = equivalence(out, self.imp())
        return out

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return implication(left, self.imp())
        return left

    def disj(self) -> Formula:
        out = self.conj()
        while self.peek() == "|":
            self.take()
            out = disjunction(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.unary()
        while self.peek() == "&":
            self.take()
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        word = self.peek()
        if word is None:
            self.fail("unexpected end of input")
        if word == "~":
            self.take()
            return Not(self.unary())
        if word == "(":
            self.take()
            inner = self.formula()
            self.take(")")
            return inner
        if word in ("exists", "forall", "exists1"):
            return self.quantified()
        if word == "true":
            self.take()
            return TOP
        if word == "false":
            self.take()
            return BOTTOM
        return self.atom_or_identity()

    def atom_or_identity(self) -> Formula:
        word = self.peek()
        if word is None or not word.isidentifier():
            self.fail(f"expected an atom, found {word!r}")
        # predicate atom with arguments?
        if word in self.sig.predicates:
            arity = self.sig.predicates[word]
            self.take()
            if arity == 0:
                if self.peek() == "(":
                    self.fail(f"propositional letter {word!r} takes no arguments")
                return Atom(word, ())
            self.take("(")
            args = [self.term()]
            while self.peek() == ",":
                self.take()
                args.append(self.term())
            self.take(")")
            if len(args) != arity:
                self.fail(
                    f"predicate {word!r} expects {arity} arguments, got {len(args)}"
                )
            return Atom(word, tuple(args))
        # otherwise it must be a term, optionally followed by "="
        left = self.term()
        if self.peek() == "=":
            self.take()
            right = self.term()
            return Eq(left, right)
        self.fail(f"unknown predicate {word!r}")

    def term(self) -> Term:
        word = self.peek()
        if word is None or not word.isidentifier():
            self.fail(f"expected a term, found {word!r}")
        if word in RESERVED_WORDS:
            self.fail(f"keyword {word!r} cannot appear in a term")
        if word in self.sig.predicates:
            self.fail(f"predicate {word!r} used in term position")
        self.take()
        if word in self.sig.functions:
            arity = self.sig.functions[word]
            if arity == 0:
                return App(word, ())
            self.take("(")
            args = [self.term()]
            while self.peek() == ",":
                self.take()
                args.append(self.term())
            self.take(")")
            if len(args) != arity:
                self.fail(
                    f"function {word!r} expects {arity} arguments, got {len(args)}"
                )
            return App(word, tuple(args))
        if self.peek() == "(":
            self.fail(f"undeclared function {word!r}")
        return Var(word)


def parse_formula(text: str, sig: Signature) -> Formula:
    parser = _FormulaParser(_tokenize(text), sig)
    out = parser.formula()
    if parser.peek() is not None:
        parser.fail(f"trailing input {parser.peek()!r}")
    return out


# ---------------------------------------------------------------------------
# rendering (inverse of parse_formula on core formulas)


def render(phi: Formula) -> str:
    """Concrete syntax; parse_formula(render(phi)) is structurally phi."""
    return _render(phi, top=True)


def _render(phi: Formula, top: bool = False) -> str:
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, Atom):
        if not phi.args:
            return phi.pred
        return f"{phi.pred}({', '.join(render_term(t) for t in phi.args)})"
    if isinstance(phi, Eq):
        return f"{render_term(phi.left)} = {render_term(phi.right)}"
    if isinstance(phi, Not):
        return f"~{_wrap(phi.sub)}"
    if isinstance(phi, And):
        return f"{_wrap(phi.left)} & {_wrap(phi.right)}"
    if isinstance(phi, Exists):
        if isinstance(phi.body, And):
            body = f"({_render(phi.body)})"
        else:
            body = _render(phi.body, top=True)
        text = f"exists {phi.var}. {body}"
        return text if top else f"({text})"
    raise TypeError(f"not a core formula: {phi!r}")


def _wrap(phi: Formula) -> str:
    if isinstance(phi, (And, Eq)):
        return f"({_render(phi)})"
    return _render(phi)  # Exists self-parenthesizes when not at top level


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if is_element_literal(t):
        return "@" + literal_element(t)
    if not t.args:
        return t.fn
    return f"{t.fn}({', '.join(render_term(a) for a in t.args)})"


# ---------------------------------------------------------------------------
# signature and theory files


def parse_signature(text: str) -> Signature:
    """Parse ``pred name/arity;`` and ``fn name/arity;`` declarations."""
    predicates: dict[str, int] = {}
    functions: dict[str, int] = {}
    for lineno, column, statement in _statements(text):
        words = statement.split()
        if len(words) != 2 or words[0] not in ("pred", "fn"):
            raise ParseError(
                f"expected 'pred name/arity' or 'fn name/arity', got "
                f"{statement!r}",
                lineno,
                column,
            )
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*/\s*(\d+)", words[1])
        if m is None:
            raise ParseError(f"bad declaration {words[1]!r}", lineno, column)
        name, arity = m.group(1), int(m.group(2))
        if name in predicates or name in functions:
            raise SyntaxDeclarationError(f"duplicate symbol {name!r}")
        if words[0] == "pred":
            predicates[name] = arity
        else:
            functions[name] = arity
    return Signature(predicates, functions)


def _statements(text: str):
    """Non-empty ';'-or-newline separated statements with positions."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0]
        column = 1
        for chunk in stripped.split(";"):
            if chunk.strip():
                yield lineno, column + len(chunk) - len(chunk.lstrip()), chunk.strip()
            column += len(chunk) + 1


@dataclass
class Theory:
    """A parsed ``.fol`` file: signature, named sentences, optional domain."""

    signature: Signature
    axioms: list = field(default_factory=list)  # (name, Formula) pairs
    domain: tuple | None = None

    @property
    def sentences(self) -> tuple:
        return tuple(phi for _, phi in self.axioms)


def parse_theory(text: str, sig: Signature | None = None) -> Theory:
    """Parse declarations, ``axiom [name:] formula`` lines and ``domain``.

    A base signature may be supplied (e.g. from a ``.sig`` file); inline
    declarations extend it.  Axioms must be sentences.
    """
    predicates = dict(sig.predicates) if sig else {}
    functions = dict(sig.functions) if sig else {}
    pending: list[tuple[int, int, str]] = []
    domain: tuple | None = None
    auto = 0

    for lineno, column, statement in _statements(text):
        words = statement.split(None, 1)
        head = words[0]
        if head in ("pred", "fn"):
            if len(words) != 2:
                raise ParseError(f"bad declaration {statement!r}", lineno, column)
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*/\s*(\d+)", words[1])
            if m is None:
                raise ParseError(f"bad declaration {words[1]!r}", lineno, column)
            name, arity = m.group(1), int(m.group(2))
            if name in predicates or name in functions:
                raise SyntaxDeclarationError(f"duplicate symbol {name!r}")
            (predicates if head == "pred" else functions)[name] = arity
        elif head == "domain":
            if len(words) != 2:
                raise ParseError("domain line lists element names", lineno, column)
            names = [w.strip() for w in re.split(r"[,\s]+", words[1]) if w.strip()]
            domain = tuple(sorted(set(names)))
        elif head == "axiom":
            if len(words) != 2:
                raise ParseError("axiom line needs a formula", lineno, column)
            pending.append((lineno, column, words[1]))
        else:
            raise ParseError(
                f"expected pred/fn/domain/axiom, got {head!r}", lineno, column
            )

    signature = Signature(predicates, functions)
    theory = Theory(signature=signature, domain=domain)
    for lineno, column, body in pending:
        name = None
        m = re.match(r"([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.*)$", body)
        if m and m.group(1) not in ("exists", "forall", "exists1", "true", "false"):
            name, body = m.group(1), m.group(2)
        if name is None:
            auto += 1
            name = f"ax{auto}"
        phi = parse_formula(body, signature)
        fv = free_var_tuple(phi)
        if fv:
            raise OpenFormulaError(
                f"axiom {name!r} has free variables {fv} (line {lineno})"
            )
        theory.axioms.append((name, phi))
    return theory


# ---------------------------------------------------------------------------
# interpretation files (.model, JSON with # comments)


def load_json_data(text: str) -> dict:
    """JSON with full-line # comments, as used by .model and .frame files."""
    lines = [
        line for line in text.splitlines() if not line.lstrip().startswith("#")
    ]
    try:
        data = json.loads("\n".join(lines) or "{}")
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ModelFormatError("top level must be a JSON object")
    return data


def parse_interpretation(data, sig: Signature) -> Interpretation:
    """Build a total interpretation from structured data.

    Relations are arrays of arrays, constants bare element names, and
    functions of arity >= 1 nested maps, innermost value the result.
    """
    if isinstance(data, str):
        data = load_json_data(data)
    if "domain" not in data:
        raise ModelFormatError("missing 'domain' entry")
    domain = data["domain"]
    if not isinstance(domain, list) or not all(isinstance(e, str) for e in domain):
        raise ModelFormatError("'domain' must be a list of element names")
    known = set(domain)

    predicates = {}
    functions = {}
    for name, value in data.items():
        if name == "domain":
            continue
        if name in sig.predicates:
            predicates[name] = _relation_from(name, sig.predicates[name], value)
        elif name in sig.functions:
            functions[name] = _graph_from(name, sig.functions[name], value, known)
        else:
            raise UnknownSymbolError(f"undeclared symbol {name!r} in model")
    return Interpretation.make(domain, sig, predicates, functions)


def _relation_from(name: str, arity: int, value) -> Relation:
    if not isinstance(value, list):
        raise ModelFormatError(f"extension of {name!r} must be a list of tuples")
    rows = []
    for row in value:
        if not isinstance(row, list) or not all(isinstance(e, str) for e in row):
            raise ModelFormatError(f"tuple {row!r} of {name!r} must list elements")
        if len(row) != arity:
            raise ArityMismatchError(
                f"tuple {row!r} of {name!r} has length {len(row)}, "
                f"declared arity {arity}"
            )
        rows.append(tuple(row))
    return Relation(arity, frozenset(rows))


def _graph_from(name: str, arity: int, value, domain: set) -> dict:
    if arity == 0:
        if not isinstance(value, str):
            raise ModelFormatError(f"constant {name!r} must name an element")
        return {(): value}
    graph = {}

    def walk(node, prefix):
        if len(prefix) == arity:
            if not isinstance(node, str):
                raise ModelFormatError(
                    f"function {name!r} value at {prefix!r} must be an element"
                )
            graph[prefix] = node
            return
        if not isinstance(node, dict):
            raise ModelFormatError(
                f"function {name!r} must nest maps to depth {arity}"
            )
        for key, sub in node.items():
            walk(sub, prefix + (key,))

    walk(value, ())
    return graph


def format_interpretation(interp: Interpretation) -> dict:
    """Inverse of parse_interpretation, as a JSON-ready object."""
    out: dict = {"domain": list(interp.domain)}
    for name in interp.signature.predicates:
        out[name] = [list(t) for t in interp.predicates[name].sorted_tuples()]
    for name, arity in interp.signature.functions.items():
        graph = interp.functions[name]
        if arity == 0:
            out[name] = graph[()]
        else:
            nested: dict = {}
            for args in sorted(graph):
                node = nested
                for key in args[:-1]:
                    node = node.setdefault(key, {})
                node[args[-1]] = graph[args]
            out[name] = nested
    return out


# ---------------------------------------------------------------------------
# frame files (.frame, JSON with # comments)


def parse_frame(data, sig: Signature | None = None, base_dir=None):
    """Load a Kripke frame: worlds, named relations, optional world models.

    Returns (frame, tables) where tables maps world names to
    interpretations when the file carries models (requires sig).  A model
    entry is either an inline object or a path to a .model file, resolved
    against base_dir.
    """
    if isinstance(data, str):
        data = load_json_data(data)
    worlds = data.get("worlds")
    if not isinstance(worlds, list) or not all(isinstance(w, str) for w in worlds):
        raise ModelFormatError("'worlds' must be a list of world names")
    relations = {}
    for name, pairs in (data.get("relations") or {}).items():
        if not isinstance(pairs, list):
            raise ModelFormatError(f"relation {name!r} must list world pairs")
        rel = set()
        for pair in pairs:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ModelFormatError(f"bad pair {pair!r} in relation {name!r}")
            rel.add((pair[0], pair[1]))
        relations[name] = frozenset(rel)
    frame = KripkeFrame(tuple(worlds), relations)
    tables = None
    if "models" in data:
        if sig is None:
            raise ModelFormatError("frame carries models but no signature given")
        tables = {}
        for world, model in data["models"].items():
            if world not in frame.worlds:
                raise ModelFormatError(f"model given for unknown world {world!r}")
            if isinstance(model, str):
                path = Path(base_dir or ".") / model
                try:
                    model = load_json_data(path.read_text(encoding="utf-8"))
                except OSError as exc:
                    raise ModelFormatError(
                        f"cannot read referenced model {model!r}: {exc}"
                    ) from exc
            tables[world] = parse_interpretation(model, sig)
    return frame, tables
