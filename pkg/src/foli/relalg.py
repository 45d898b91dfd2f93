"""Arity-tagged finite relations and the extensional algebra over them.

The carrier is the set of all k-ary relations over a fixed domain.  At arity
zero there are exactly two values, the empty relation (falsity) and the
singleton of the empty tuple (truth), so truth values live inside the same
algebra.  Operations: natural join keyed by explicit column pairs,
complement within D^k, single-column projection, the truth lift, and the
join-induced partial order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .errors import ArityMismatchError, ForeignElementError, JoinSpecError

#: A join specification: a set of 1-based (left column, right column) pairs.
JoinSpec = frozenset


@dataclass(frozen=True)
class Relation:
    """A finite set of equal-length tuples of domain elements."""

    arity: int
    tuples: frozenset

    def __post_init__(self):
        if self.arity < 0:
            raise ArityMismatchError(f"negative arity {self.arity}")
        for t in self.tuples:
            if len(t) != self.arity:
                raise ArityMismatchError(
                    f"tuple {t!r} has length {len(t)}, relation arity {self.arity}"
                )

    @classmethod
    def of(cls, arity: int, rows: Iterable[Sequence[str]]) -> "Relation":
        return cls(arity, frozenset(tuple(r) for r in rows))

    @classmethod
    def empty(cls, arity: int) -> "Relation":
        return cls(arity, frozenset())

    def __bool__(self) -> bool:
        return bool(self.tuples)

    def __len__(self) -> int:
        return len(self.tuples)

    def sorted_tuples(self) -> list[tuple]:
        return sorted(self.tuples)


#: The two arity-0 values: truth {()} and falsity {}.
TRUE = Relation(0, frozenset({()}))
FALSE = Relation(0, frozenset())


def check_join_spec(spec: JoinSpec, left_arity: int, right_arity: int) -> None:
    """Validate a non-empty spec against the operand arities."""
    firsts = [i for i, _ in spec]
    seconds = [j for _, j in spec]
    if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
        raise JoinSpecError(f"join columns repeat in {sorted(spec)}")
    for i, j in spec:
        if not (1 <= i <= left_arity):
            raise JoinSpecError(
                f"left column {i} out of range 1..{left_arity}"
            )
        if not (1 <= j <= right_arity):
            raise JoinSpecError(
                f"right column {j} out of range 1..{right_arity}"
            )


def natural_join(left: Relation, right: Relation, spec: JoinSpec) -> Relation:
    """Join on the given column pairs; empty spec is the cartesian product.

    Result columns: all of the left operand's, then the right operand's
    columns that are not join targets, keeping their original order.  The
    result arity is k + j - |spec|.
    """
    if not spec:
        rows = frozenset(t1 + t2 for t1 in left.tuples for t2 in right.tuples)
        return Relation(left.arity + right.arity, rows)

    check_join_spec(spec, left.arity, right.arity)
    pairs = sorted(spec)
    joined_right = {j for _, j in spec}
    kept = [j - 1 for j in range(1, right.arity + 1) if j not in joined_right]

    index: dict[tuple, list[tuple]] = {}
    for t2 in right.tuples:
        key = tuple(t2[j - 1] for _, j in pairs)
        index.setdefault(key, []).append(t2)

    rows = set()
    for t1 in left.tuples:
        key = tuple(t1[i - 1] for i, _ in pairs)
        for t2 in index.get(key, ()):
            rows.add(t1 + tuple(t2[j] for j in kept))
    return Relation(left.arity + right.arity - len(spec), frozenset(rows))


def complement(rel: Relation, domain: Sequence[str]) -> Relation:
    """D^k minus the relation, at the same arity."""
    dom = set(domain)
    for t in rel.tuples:
        foreign = [e for e in t if e not in dom]
        if foreign:
            raise ForeignElementError(
                f"tuple {t!r} mentions elements outside the domain: {foreign}"
            )
    full = frozenset(product(sorted(dom), repeat=rel.arity))
    return Relation(rel.arity, full - rel.tuples)


def truth_lift(rel: Relation) -> Relation:
    """Collapse any relation to truth iff it is non-empty."""
    return TRUE if rel.tuples else FALSE


def project_out(rel: Relation, column: int) -> Relation:
    """Drop the given 1-based column.

    With a single column left the result collapses to a truth value; out of
    range positions (including 0) leave the relation unchanged.
    """
    k = rel.arity
    if 1 <= column <= k and k >= 2:
        rows = frozenset(t[: column - 1] + t[column:] for t in rel.tuples)
        return Relation(k - 1, rows)
    if column == k == 1:
        return truth_lift(rel)
    return rel


def identity_relation(domain: Sequence[str]) -> Relation:
    """The diagonal binary relation over the domain."""
    return Relation(2, frozenset((d, d) for d in domain))


def _results_match(candidate: Relation, target: Relation) -> bool:
    # Empty relations compare equal at any arity: the underlying set of all
    # relations shares a single empty set across arities.
    if not target.tuples and not candidate.tuples:
        return True
    return candidate.arity == target.arity and candidate.tuples == target.tuples


def leq(left: Relation, right: Relation) -> bool:
    """The join-induced order: some join of the two gives back the left one.

    The search ranges over every valid spec, including the empty one.  Bottom
    is the empty relation, top is the arity-0 truth value.
    """
    k, j = left.arity, right.arity
    for size in range(0, min(k, j) + 1):
        for firsts in combinations(range(1, k + 1), size):
            for seconds in permutations(range(1, j + 1), size):
                spec = frozenset(zip(firsts, seconds))
                if _results_match(natural_join(left, right, spec), left):
                    return True
    return False


def extensionally_equivalent(
    left: Relation, perm: Sequence[int], right: Relation
) -> bool:
    """True iff permuting the right relation's columns yields the left one.

    ``perm`` is 1-based: output column i of a permuted tuple is input column
    perm[i-1].
    """
    if left.arity != right.arity:
        raise ArityMismatchError(
            f"arities differ: {left.arity} vs {right.arity}"
        )
    if sorted(perm) != list(range(1, left.arity + 1)):
        raise ArityMismatchError(f"not a permutation of 1..{left.arity}: {perm}")
    permuted = frozenset(tuple(t[p - 1] for p in perm) for t in right.tuples)
    return permuted == left.tuples


def format_tuple(t: tuple) -> str:
    return "(" + ",".join(t) + ")"


def format_relation(rel: Relation) -> str:
    """Stable one-line form: t / f at arity 0, a sorted set literal otherwise."""
    if rel.arity == 0:
        return "t" if rel.tuples else "f"
    return "{" + ",".join(format_tuple(t) for t in rel.sorted_tuples()) + "}"
