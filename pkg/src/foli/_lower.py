"""Lowering of formulas and interpretations to the flat kernel format.

The kernel evaluates a formula against an interpretation for many variable
assignments.  To keep that loop free of Python object traffic, formulas are
flattened into parallel integer arrays (postorder, root last) and
interpretations into byte/int blobs:

* predicate tables: one byte per argument tuple, tuples encoded in base
  |D| with the first argument most significant;
* function tables: one int (element index) per argument tuple, same coding.

The same lowered program works for every interpretation over the same
domain size, so tables can be swapped under a fixed program.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from .errors import ElementNotInDomainError, UnknownSymbolError
from .syntax import (
    And,
    Atom,
    Eq,
    Exists,
    Formula,
    IDENTITY,
    Not,
    Top,
    Var,
    free_var_tuple,
    is_element_literal,
    literal_element,
    variables,
)

# formula node kinds
N_TOP = 0
N_ATOM = 1
N_EQ = 2
N_AND = 3
N_NOT = 4
N_EXISTS = 5

# term node kinds
T_VAR = 0
T_FUNC = 1
T_ELEM = 2


@dataclass
class Program:
    """A lowered formula, independent of any particular interpretation."""

    domain: tuple
    nvars: int
    var_names: tuple
    free_slots: array
    kinds: array
    a: array
    b: array
    c: array
    tkind: array
    ta: array
    targ_start: array
    targ_len: array
    targs: array
    atom_args: array
    pred_slots: tuple  # (name, arity) per predicate slot
    func_slots: tuple  # (name, arity) per function slot
    root: int


@dataclass
class Tables:
    """One interpretation's tables in the slot order of a Program."""

    domain_size: int
    pred_blob: bytes
    pred_off: array
    func_blob: array
    func_off: array


def lower_formula(phi: Formula, domain) -> Program:
    dom = tuple(sorted(domain))
    elem_index = {e: i for i, e in enumerate(dom)}

    var_names = []
    var_slot: dict[str, int] = {}
    for v in sorted(variables(phi)):
        var_slot[v] = len(var_names)
        var_names.append(v)

    pred_slot: dict[tuple, int] = {}
    pred_slots: list[tuple] = []
    func_slot: dict[tuple, int] = {}
    func_slots: list[tuple] = []

    kinds, a, b, c = array("i"), array("i"), array("i"), array("i")
    tkind, ta = array("i"), array("i")
    targ_start, targ_len, targs = array("i"), array("i"), array("i")
    atom_args = array("i")

    def term(t) -> int:
        if isinstance(t, Var):
            tkind.append(T_VAR)
            ta.append(var_slot[t.name])
            targ_start.append(0)
            targ_len.append(0)
        elif is_element_literal(t):
            elem = literal_element(t)
            if elem not in elem_index:
                raise ElementNotInDomainError(
                    f"element literal {t.fn!r} outside domain {dom}"
                )
            tkind.append(T_ELEM)
            ta.append(elem_index[elem])
            targ_start.append(0)
            targ_len.append(0)
        else:
            children = [term(x) for x in t.args]
            key = (t.fn, len(t.args))
            slot = func_slot.get(key)
            if slot is None:
                slot = func_slot[key] = len(func_slots)
                func_slots.append(key)
            tkind.append(T_FUNC)
            ta.append(slot)
            targ_start.append(len(targs))
            targ_len.append(len(children))
            targs.extend(children)
        return len(tkind) - 1

    def node(f: Formula) -> int:
        if isinstance(f, Top):
            kinds.append(N_TOP)
            a.append(0)
            b.append(0)
            c.append(0)
        elif isinstance(f, Atom):
            children = [term(t) for t in f.args]
            key = (f.pred, len(f.args))
            slot = pred_slot.get(key)
            if slot is None:
                slot = pred_slot[key] = len(pred_slots)
                pred_slots.append(key)
            start = len(atom_args)
            atom_args.extend(children)
            kinds.append(N_ATOM)
            a.append(slot)
            b.append(start)
            c.append(len(children))
        elif isinstance(f, Eq):
            lt = term(f.left)
            rt = term(f.right)
            kinds.append(N_EQ)
            a.append(lt)
            b.append(rt)
            c.append(0)
        elif isinstance(f, And):
            ln = node(f.left)
            rn = node(f.right)
            kinds.append(N_AND)
            a.append(ln)
            b.append(rn)
            c.append(0)
        elif isinstance(f, Not):
            sn = node(f.sub)
            kinds.append(N_NOT)
            a.append(sn)
            b.append(0)
            c.append(0)
        elif isinstance(f, Exists):
            sn = node(f.body)
            kinds.append(N_EXISTS)
            a.append(var_slot[f.var])
            b.append(sn)
            c.append(0)
        else:
            raise TypeError(f"not a core formula node: {f!r}")
        return len(kinds) - 1

    root = node(phi)
    free_slots = array("i", (var_slot[v] for v in free_var_tuple(phi)))
    return Program(
        domain=dom,
        nvars=len(var_names),
        var_names=tuple(var_names),
        free_slots=free_slots,
        kinds=kinds,
        a=a,
        b=b,
        c=c,
        tkind=tkind,
        ta=ta,
        targ_start=targ_start,
        targ_len=targ_len,
        targs=targs,
        atom_args=atom_args,
        pred_slots=tuple(pred_slots),
        func_slots=tuple(func_slots),
        root=root,
    )


def lower_tables(interp, program: Program) -> Tables:
    """Pack one interpretation's tables in the program's slot order."""
    dom = program.domain
    if tuple(interp.domain) != dom:
        raise ElementNotInDomainError(
            f"interpretation domain {interp.domain} differs from program domain {dom}"
        )
    n = len(dom)
    elem_index = {e: i for i, e in enumerate(dom)}

    pred_parts = []
    pred_off = array("i")
    offset = 0
    for name, arity in program.pred_slots:
        size = n**arity
        table = bytearray(size)
        if name == IDENTITY:
            rel_tuples = [(d, d) for d in dom]
        else:
            rel = interp.predicates.get(name)
            if rel is None or rel.arity != arity:
                raise UnknownSymbolError(
                    f"interpretation has no {arity}-ary predicate {name!r}"
                )
            rel_tuples = rel.tuples
        for t in rel_tuples:
            idx = 0
            for e in t:
                idx = idx * n + elem_index[e]
            table[idx] = 1
        pred_parts.append(bytes(table))
        pred_off.append(offset)
        offset += size

    func_blob = array("i")
    func_off = array("i")
    offset = 0
    for name, arity in program.func_slots:
        graph = interp.functions.get(name)
        if graph is None:
            raise UnknownSymbolError(
                f"interpretation has no {arity}-ary function {name!r}"
            )
        func_off.append(offset)
        for args in _sorted_tuples(dom, arity):
            func_blob.append(elem_index[graph[args]])
        offset += n**arity

    return Tables(
        domain_size=n,
        pred_blob=b"".join(pred_parts),
        pred_off=pred_off,
        func_blob=func_blob,
        func_off=func_off,
    )


def _sorted_tuples(dom, arity):
    from itertools import product

    return product(dom, repeat=arity)
