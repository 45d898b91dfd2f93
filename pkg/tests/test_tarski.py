from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from foli.errors import UnassignedVariableError
from foli.gen import FormulaGen, random_interpretation
from foli.relalg import (
    FALSE,
    Relation,
    TRUE,
    extensionally_equivalent,
    identity_relation,
)
from foli.syntax import (
    And,
    App,
    Atom,
    Eq,
    Exists,
    Not,
    Signature,
    TOP,
    Var,
    free_var_tuple,
)
from foli.tarski import (
    AtomLeaf,
    ComplementNode,
    IdentityLeaf,
    JoinNode,
    ProjectNode,
    TruthLeaf,
    compile_to_algebra,
    eval_term,
    evaluate_algebra,
    extension,
    satisfies,
    truth,
)

GEN_SIG = Signature({"p": 1, "q": 2, "r": 0}, {"c": 0, "f": 1})


def brute_force_extension(interp, phi) -> Relation:
    """Independent oracle: enumerate assignments through `satisfies` only."""
    fv = free_var_tuple(phi)
    rows = set()
    for values in product(interp.domain, repeat=len(fv)):
        if satisfies(interp, dict(zip(fv, values)), phi):
            rows.add(values)
    return Relation(len(fv), frozenset(rows))


class TestEvalTerm:
    def test_variable(self, m1):
        assert eval_term(Var("x"), m1, {"x": "a"}) == "a"

    def test_constant(self, m1):
        assert eval_term(App("c"), m1, {}) == "a"

    def test_function_composition(self, sig_m1):
        sig = Signature({"p": 1}, {"c": 0, "f": 1})
        from foli.tarski import Interpretation

        world = Interpretation.make(
            ("a", "b"),
            sig,
            predicates={"p": Relation.empty(1)},
            functions={"c": {(): "a"}, "f": {("a",): "b", ("b",): "a"}},
        )
        assert eval_term(App("f", (App("c"),)), world, {}) == "b"

    def test_unassigned_variable(self, m1):
        with pytest.raises(UnassignedVariableError):
            eval_term(Var("x"), m1, {})


class TestSatisfies:
    def test_atom_membership(self, m1):
        assert satisfies(m1, {"x": "a"}, Atom("p", (Var("x"),)))
        assert not satisfies(m1, {"x": "b"}, Atom("p", (Var("x"),)))

    def test_contradiction_unsatisfiable(self, m1):
        phi = Exists("x", And(Atom("p", (Var("x"),)), Not(Atom("p", (Var("x"),)))))
        assert not satisfies(m1, {}, phi)

    def test_identity_diagonal(self, m1):
        assert satisfies(m1, {"x": "a", "y": "a"}, Eq(Var("x"), Var("y")))
        assert not satisfies(m1, {"x": "a", "y": "b"}, Eq(Var("x"), Var("y")))


class TestExtension:
    def test_fixture_conjunction(self, m1):
        phi = And(Atom("p", (Var("x"),)), Atom("q", (Var("x"), Var("y"))))
        assert extension(m1, phi) == brute_force_extension(m1, phi)
        assert extension(m1, phi) == Relation.of(2, [("a", "b")])

    def test_truth_constant(self, m1):
        assert extension(m1, TOP) == TRUE
        assert extension(m1, Not(TOP)) == FALSE

    def test_negated_atom(self, m1):
        phi = Not(Atom("p", (Var("x"),)))
        assert extension(m1, phi) == Relation.of(1, [("b",)])

    def test_identity_atom(self, m1):
        assert extension(m1, Eq(Var("x"), Var("y"))) == identity_relation(
            m1.domain
        )

    @given(st.integers(0, 10**6))
    @settings(max_examples=120, deadline=None)
    def test_matches_satisfaction_oracle(self, seed):
        gen = FormulaGen(seed, GEN_SIG)
        world = random_interpretation(seed + 1, GEN_SIG, ("a", "b"))
        phi = gen.formula()
        assert extension(world, phi) == brute_force_extension(world, phi)

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_membership_law(self, seed):
        gen = FormulaGen(seed, GEN_SIG)
        world = random_interpretation(seed + 1, GEN_SIG, ("a", "b"))
        phi = gen.formula()
        fv = free_var_tuple(phi)
        ext = extension(world, phi)
        for values in product(world.domain, repeat=len(fv)):
            g = dict(zip(fv, values))
            assert satisfies(world, g, phi) == (values in ext.tuples)


class TestTruth:
    def test_existential(self, m1):
        assert truth(m1, Exists("x", Atom("p", (Var("x"),))))

    def test_open_formula_requires_full_extension(self, m1):
        assert not truth(m1, Atom("p", (Var("x"),)))

    def test_reflexive_identity(self, m1):
        assert truth(m1, Eq(Var("x"), Var("x")))


class TestCompileToAlgebra:
    def test_join_spec_from_worked_example(self):
        left = Atom("P5", tuple(Var(n) for n in ("xi", "xj", "xk", "xl", "xm")))
        right = Atom("P4", tuple(Var(n) for n in ("xl", "yi", "xj", "yj")))
        expr = compile_to_algebra(And(left, right))
        assert isinstance(expr, JoinNode)
        assert expr.spec == frozenset({(4, 1), (2, 3)})

    def test_quantifier_projects_position(self):
        body = Atom("P5", tuple(Var(n) for n in ("xi", "xj", "xk", "xl", "xm")))
        expr = compile_to_algebra(Exists("xk", body))
        assert isinstance(expr, ProjectNode)
        assert expr.position == 3

    def test_vacuous_quantifier_projects_zero(self):
        expr = compile_to_algebra(Exists("w", Atom("p", (Var("x"),))))
        assert isinstance(expr, ProjectNode)
        assert expr.position == 0

    def test_negation_complements(self):
        expr = compile_to_algebra(Not(Atom("p", (Var("x"),))))
        assert isinstance(expr, ComplementNode)

    def test_leaves(self):
        assert isinstance(compile_to_algebra(TOP), TruthLeaf)
        assert isinstance(compile_to_algebra(Eq(Var("x"), Var("y"))), IdentityLeaf)
        assert isinstance(compile_to_algebra(Eq(Var("x"), Var("x"))), AtomLeaf)

    @given(st.integers(0, 10**6))
    @settings(max_examples=120, deadline=None)
    def test_algebra_route_agrees_with_direct(self, seed):
        gen = FormulaGen(seed, GEN_SIG)
        world = random_interpretation(seed + 1, GEN_SIG, ("a", "b"))
        phi = gen.formula()
        assert evaluate_algebra(compile_to_algebra(phi), world) == extension(
            world, phi
        )

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_commuted_conjunction_is_column_permutation(self, seed):
        gen = FormulaGen(seed, GEN_SIG)
        world = random_interpretation(seed + 1, GEN_SIG, ("a", "b"))
        left, right = gen.formula(3), gen.formula(3)
        one = extension(world, And(left, right))
        two = extension(world, And(right, left))
        t1 = free_var_tuple(And(left, right))
        t2 = free_var_tuple(And(right, left))
        assert sorted(t1) == sorted(t2)
        perm = tuple(t2.index(name) + 1 for name in t1)
        assert extensionally_equivalent(one, perm, two)
